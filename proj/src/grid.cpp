#include "gridbench/grid.hpp"

#include <cmath>
#include <sstream>

namespace gridbench {

namespace {

// Clockwise order seen from above.
constexpr std::array<Heading, 4> kClockwise{Heading::PlusY, Heading::PlusX, Heading::MinusY, Heading::MinusX};

int clockwise_index(Heading h) {
  for (std::size_t i = 0; i < kClockwise.size(); ++i) {
    if (kClockwise[i] == h) return static_cast<int>(i);
  }
  return 0;
}

int quarter_turns(MoveDirection d) {
  switch (d) {
    case MoveDirection::Right: return 1;
    case MoveDirection::Backward: return 2;
    case MoveDirection::Left: return 3;
    default: return 0;
  }
}

}  // namespace

Coordinate heading_vector(Heading h) {
  switch (h) {
    case Heading::PlusX: return {1, 0, 0};
    case Heading::MinusX: return {-1, 0, 0};
    case Heading::PlusY: return {0, 1, 0};
    case Heading::MinusY: return {0, -1, 0};
  }
  return {};
}

Heading rotate(Heading heading, MoveDirection direction) {
  return kClockwise[static_cast<std::size_t>((clockwise_index(heading) + quarter_turns(direction)) % 4)];
}

Coordinate world_axis(Heading heading, MoveDirection direction) {
  if (direction == MoveDirection::Up) return {0, 0, 1};
  if (direction == MoveDirection::Down) return {0, 0, -1};
  return heading_vector(rotate(heading, direction));
}

Coordinate cardinal_axis(MoveDirection direction) {
  switch (direction) {
    case MoveDirection::Left: return {-1, 0, 0};
    case MoveDirection::Right: return {1, 0, 0};
    case MoveDirection::Forward: return {0, 1, 0};
    case MoveDirection::Backward: return {0, -1, 0};
    case MoveDirection::Up: return {0, 0, 1};
    case MoveDirection::Down: return {0, 0, -1};
  }
  return {};
}

Pose apply_step_cardinal(const Pose& pose, const Step& step) {
  if (step.length < 1) throw std::invalid_argument("step length must be at least 1");
  return {pose.position + cardinal_axis(step.direction) * step.length, pose.heading};
}

Pose apply_step_egocentric(const Pose& pose, const Step& step) {
  if (step.length < 1) throw std::invalid_argument("step length must be at least 1");
  const Heading heading = rotate(pose.heading, step.direction);
  return {pose.position + world_axis(pose.heading, step.direction) * step.length, heading};
}

Pose apply_step(const Pose& pose, const Step& step, FrameMode mode) {
  return mode == FrameMode::Cardinal ? apply_step_cardinal(pose, step) : apply_step_egocentric(pose, step);
}

PathResult execute_path(const Pose& start, std::span<const Step> steps, FrameMode mode) {
  PathResult result{start, {}};
  result.intermediates.reserve(steps.size());
  for (const Step& step : steps) {
    result.final = apply_step(result.final, step, mode);
    result.intermediates.push_back(result.final.position);
  }
  return result;
}

double euclidean_distance(const Coordinate& a, const Coordinate& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void check_steps(std::span<const Step> steps, Dimensionality dim) {
  for (const Step& step : steps) {
    if (step.length < 1) throw std::invalid_argument("step length must be at least 1");
    if (!valid_for(step.direction, dim)) {
      throw std::invalid_argument("vertical step '" + std::string(to_string(step.direction)) + "' in a 2D path");
    }
  }
}

std::string_view to_string(Dimensionality d) { return d == Dimensionality::TwoD ? "2d" : "3d"; }

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::PlusX: return "+x";
    case Heading::MinusX: return "-x";
    case Heading::PlusY: return "+y";
    case Heading::MinusY: return "-y";
  }
  return "?";
}

std::string_view to_string(MoveDirection d) {
  switch (d) {
    case MoveDirection::Left: return "left";
    case MoveDirection::Right: return "right";
    case MoveDirection::Forward: return "forward";
    case MoveDirection::Backward: return "backward";
    case MoveDirection::Up: return "up";
    case MoveDirection::Down: return "down";
  }
  return "?";
}

std::string_view to_string(FrameMode m) { return m == FrameMode::Cardinal ? "cardinal" : "egocentric"; }

std::string to_string(const Coordinate& c, Dimensionality dim) {
  std::ostringstream out;
  out << '(' << c.x << ", " << c.y;
  if (dim == Dimensionality::ThreeD) out << ", " << c.z;
  out << ')';
  return out.str();
}

std::string_view axis_phrase(Heading h) {
  switch (h) {
    case Heading::PlusX: return "positive x";
    case Heading::MinusX: return "negative x";
    case Heading::PlusY: return "positive y";
    case Heading::MinusY: return "negative y";
  }
  return "?";
}

std::optional<Dimensionality> parse_dimensionality(std::string_view s) {
  if (s == "2d" || s == "2D") return Dimensionality::TwoD;
  if (s == "3d" || s == "3D") return Dimensionality::ThreeD;
  return std::nullopt;
}

std::optional<Heading> parse_heading(std::string_view s) {
  for (Heading h : kAllHeadings) {
    if (to_string(h) == s) return h;
  }
  return std::nullopt;
}

std::optional<MoveDirection> parse_move_direction(std::string_view s) {
  for (MoveDirection d : kAllDirections) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

std::optional<FrameMode> parse_frame_mode(std::string_view s) {
  if (s == "cardinal" || s == "card") return FrameMode::Cardinal;
  if (s == "egocentric" || s == "ego") return FrameMode::Egocentric;
  return std::nullopt;
}

}  // namespace gridbench
