#include "gridbench/navigation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace gridbench {

void validate(const NavPath& path, const NavConfig& config) {
  const int count = static_cast<int>(path.steps.size());
  if (count < config.min_steps || count > config.max_steps) {
    throw std::invalid_argument("path has " + std::to_string(count) + " steps, outside [" +
                                std::to_string(config.min_steps) + ", " + std::to_string(config.max_steps) + "]");
  }
  check_steps(path.steps, path.dimensionality);
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& step = path.steps[i];
    if (step.length < config.min_length || step.length > config.max_length) {
      throw std::invalid_argument("step length " + std::to_string(step.length) + " out of range");
    }
    if (!config.allow_repeats && i > 0 && path.steps[i - 1].direction == step.direction) {
      throw std::invalid_argument("consecutive steps share direction '" + std::string(to_string(step.direction)) +
                                  "'");
    }
  }
}

NavPath generate_path(const NavConfig& config, Rng& rng, int step_count) {
  if (step_count < 1) throw std::invalid_argument("step_count must be positive");
  std::vector<MoveDirection> options;
  for (MoveDirection d : kAllDirections) {
    if (valid_for(d, config.dimensionality)) options.push_back(d);
  }

  NavPath path{{}, config.mode, config.dimensionality};
  path.steps.reserve(static_cast<std::size_t>(step_count));
  std::vector<MoveDirection> choices;
  for (int i = 0; i < step_count; ++i) {
    choices = options;
    if (!config.allow_repeats && !path.steps.empty()) {
      std::erase(choices, path.steps.back().direction);
    }
    const MoveDirection direction = choices[rng.index(choices.size())];
    path.steps.push_back({direction, rng.uniform_int(config.min_length, config.max_length)});
  }
  return path;
}

NavPath generate_path(const NavConfig& config, Rng& rng) {
  return generate_path(config, rng, rng.uniform_int(config.min_steps, config.max_steps));
}

NavInstance make_instance(NavPath path, std::uint64_t seed) {
  PathResult run = execute_path(kOriginPose, path.steps, path.mode);
  return {std::move(path), std::move(run.intermediates), run.final.position, seed};
}

std::vector<NavInstance> generate_batch(const NavConfig& config, std::uint64_t seed, std::size_t size) {
  std::vector<NavInstance> batch;
  batch.reserve(size);
  const int span = config.max_steps - config.min_steps + 1;
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t record_seed = derive_seed(seed, 0, i);
    Rng rng(record_seed);
    const int count = config.min_steps + static_cast<int>(i % static_cast<std::size_t>(span));
    batch.push_back(make_instance(generate_path(config, rng, count), record_seed));
  }
  return batch;
}

Coordinate follower_gold(const NavPath& path) {
  return execute_path(kOriginPose, path.steps, path.mode).final.position;
}

std::vector<Step> instructor_gold(std::span<const Coordinate> waypoints, FrameMode mode, Dimensionality dim) {
  if (waypoints.empty() || waypoints.front() != Coordinate{}) {
    throw MalformedPathError("waypoints must start at the origin");
  }
  std::vector<Step> steps;
  Heading heading = kOriginPose.heading;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const Coordinate delta = waypoints[i] - waypoints[i - 1];
    const int changed = (delta.x != 0) + (delta.y != 0) + (delta.z != 0);
    if (changed != 1) {
      throw MalformedPathError("leg " + std::to_string(i) + " changes " + std::to_string(changed) +
                               " axes; expected exactly one");
    }
    if (delta.z != 0 && dim == Dimensionality::TwoD) {
      throw MalformedPathError("leg " + std::to_string(i) + " moves vertically in a 2D path");
    }
    const int length = std::abs(delta.x + delta.y + delta.z);
    const Coordinate unit{delta.x / length, delta.y / length, delta.z / length};

    if (delta.z != 0) {
      steps.push_back({delta.z > 0 ? MoveDirection::Up : MoveDirection::Down, length});
      continue;
    }
    MoveDirection direction = MoveDirection::Forward;
    for (MoveDirection candidate : kHorizontalDirections) {
      const Coordinate axis =
          mode == FrameMode::Cardinal ? cardinal_axis(candidate) : world_axis(heading, candidate);
      if (axis == unit) {
        direction = candidate;
        break;
      }
    }
    if (mode == FrameMode::Egocentric) heading = rotate(heading, direction);
    steps.push_back({direction, length});
  }
  return steps;
}

Heading compass_heading(Compass c) {
  switch (c) {
    case Compass::North: return Heading::PlusY;
    case Compass::East: return Heading::PlusX;
    case Compass::South: return Heading::MinusY;
    case Compass::West: return Heading::MinusX;
  }
  return Heading::PlusY;
}

Compass heading_compass(Heading h) {
  switch (h) {
    case Heading::PlusY: return Compass::North;
    case Heading::PlusX: return Compass::East;
    case Heading::MinusY: return Compass::South;
    case Heading::MinusX: return Compass::West;
  }
  return Compass::North;
}

std::string_view to_string(Compass c) {
  switch (c) {
    case Compass::North: return "North";
    case Compass::East: return "East";
    case Compass::South: return "South";
    case Compass::West: return "West";
  }
  return "?";
}

std::optional<Compass> parse_compass(std::string_view s) {
  for (Compass c : {Compass::North, Compass::East, Compass::South, Compass::West}) {
    const std::string_view name = to_string(c);
    if (name.size() == s.size() && std::equal(name.begin(), name.end(), s.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
        })) {
      return c;
    }
  }
  return std::nullopt;
}

std::vector<Step> card2ego(std::span<const CardinalStep> steps) {
  std::vector<Step> out;
  out.reserve(steps.size());
  Heading facing = Heading::PlusY;
  for (const CardinalStep& step : steps) {
    const Heading target = compass_heading(step.compass);
    for (MoveDirection d : kHorizontalDirections) {
      if (rotate(facing, d) == target) {
        out.push_back({d, step.length});
        break;
      }
    }
    facing = target;
  }
  return out;
}

std::vector<CardinalStep> ego_to_compass(std::span<const Step> steps) {
  std::vector<CardinalStep> out;
  out.reserve(steps.size());
  Heading facing = Heading::PlusY;
  for (const Step& step : steps) {
    if (is_vertical(step.direction)) throw std::invalid_argument("compass paths are horizontal only");
    facing = rotate(facing, step.direction);
    out.push_back({heading_compass(facing), step.length});
  }
  return out;
}

NavScore score_follower(const std::optional<Coordinate>& predicted, const Coordinate& gold) {
  if (!predicted) return {0.0, euclidean_distance(kOriginPose.position, gold)};
  return {*predicted == gold ? 1.0 : 0.0, euclidean_distance(*predicted, gold)};
}

NavScore score_instructor(const std::optional<std::vector<Step>>& predicted, const NavInstance& gold) {
  const NavScore unparseable{0.0, euclidean_distance(kOriginPose.position, gold.final)};
  if (!predicted) return unparseable;
  try {
    check_steps(*predicted, gold.path.dimensionality);
  } catch (const std::invalid_argument&) {
    return unparseable;
  }
  const Coordinate endpoint = execute_path(kOriginPose, *predicted, gold.path.mode).final.position;
  return {*predicted == gold.path.steps ? 1.0 : 0.0, euclidean_distance(endpoint, gold.final)};
}

}  // namespace gridbench
