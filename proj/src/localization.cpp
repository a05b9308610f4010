#include "gridbench/localization.hpp"

#include <algorithm>
#include <bit>

namespace gridbench {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Left: return "left";
    case Relation::Right: return "right";
    case Relation::Front: return "front";
    case Relation::Back: return "back";
    case Relation::Above: return "above";
    case Relation::Below: return "below";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view s) {
  for (Relation r : kAllRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

Relation opposite(Relation r) {
  switch (r) {
    case Relation::Left: return Relation::Right;
    case Relation::Right: return Relation::Left;
    case Relation::Front: return Relation::Back;
    case Relation::Back: return Relation::Front;
    case Relation::Above: return Relation::Below;
    case Relation::Below: return Relation::Above;
  }
  return r;
}

int RelationSet::size() const { return std::popcount(bits_); }

bool RelationSet::consistent() const {
  for (Relation r : kAllRelations) {
    if (contains(r) && contains(opposite(r))) return false;
  }
  return true;
}

std::vector<Relation> RelationSet::items() const {
  std::vector<Relation> out;
  for (Relation r : kAllRelations) {
    if (contains(r)) out.push_back(r);
  }
  return out;
}

std::string to_string(RelationSet set) {
  std::string out = "{";
  for (Relation r : set.items()) {
    if (out.size() > 1) out += ", ";
    out += to_string(r);
  }
  return out + "}";
}

std::string_view to_string(BlockColor c) {
  switch (c) {
    case BlockColor::Red: return "red";
    case BlockColor::Orange: return "orange";
    case BlockColor::Yellow: return "yellow";
    case BlockColor::Green: return "green";
    case BlockColor::Blue: return "blue";
    case BlockColor::Purple: return "purple";
  }
  return "?";
}

std::optional<BlockColor> parse_color(std::string_view s) {
  for (BlockColor c : kAllColors) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(OLMode m) { return m == OLMode::Egocentric ? "egocentric" : "allocentric"; }
std::string_view to_string(Adjacency a) { return a == Adjacency::Adjacent ? "adjacent" : "random"; }
std::string_view to_string(HeadingPolicy p) {
  switch (p) {
    case HeadingPolicy::SampledHorizontal: return "sampled";
    case HeadingPolicy::FixedPlusY: return "plus-y";
    case HeadingPolicy::FaceReference: return "face-reference";
  }
  return "?";
}

std::optional<OLMode> parse_ol_mode(std::string_view s) {
  if (s == "egocentric" || s == "ego") return OLMode::Egocentric;
  if (s == "allocentric" || s == "allo") return OLMode::Allocentric;
  return std::nullopt;
}

std::optional<Adjacency> parse_adjacency(std::string_view s) {
  if (s == "adjacent" || s == "adj") return Adjacency::Adjacent;
  if (s == "random" || s == "rand") return Adjacency::Random;
  return std::nullopt;
}

std::optional<HeadingPolicy> parse_heading_policy(std::string_view s) {
  for (HeadingPolicy p : {HeadingPolicy::SampledHorizontal, HeadingPolicy::FixedPlusY, HeadingPolicy::FaceReference}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

void validate(const OLConfig& config) {
  if (config.half_width < 1) throw std::invalid_argument("half_width must be at least 1");
  if (config.distractor_count < 0) throw std::invalid_argument("distractor_count must be nonnegative");
  if (config.mode == OLMode::Egocentric && config.heading_policy != HeadingPolicy::SampledHorizontal) {
    throw std::invalid_argument("egocentric scenes sample the viewer heading");
  }
  if (config.mode == OLMode::Allocentric && config.heading_policy == HeadingPolicy::SampledHorizontal) {
    throw std::invalid_argument("allocentric scenes face +Y or the reference block");
  }
  const int named = 1 + (config.mode == OLMode::Allocentric ? 1 : 0) + config.distractor_count;
  if (named > static_cast<int>(kAllColors.size())) {
    throw std::invalid_argument("scene needs " + std::to_string(named) + " distinct colors; only 6 exist");
  }
}

std::vector<ColoredBlock> OLScene::blocks() const {
  std::vector<ColoredBlock> out;
  if (reference) out.push_back(*reference);
  out.push_back(target);
  out.insert(out.end(), distractors.begin(), distractors.end());
  return out;
}

namespace {

Coordinate random_cell(Rng& rng, int half_width, Dimensionality dim) {
  Coordinate c{rng.uniform_int(-half_width, half_width), rng.uniform_int(-half_width, half_width), 0};
  if (dim == Dimensionality::ThreeD) c.z = rng.uniform_int(-half_width, half_width);
  return c;
}

bool in_bounds(const Coordinate& c, int half_width) {
  auto ok = [&](int v) { return v >= -half_width && v <= half_width; };
  return ok(c.x) && ok(c.y) && ok(c.z);
}

// Target near `anchor` per the adjacency policy; never equal to any of `taken`.
Coordinate sample_target(const OLConfig& config, Rng& rng, const Coordinate& anchor,
                         std::span<const Coordinate> taken) {
  for (;;) {
    Coordinate c;
    if (config.adjacency == Adjacency::Adjacent) {
      Coordinate offset{rng.uniform_int(-1, 1), rng.uniform_int(-1, 1), 0};
      if (config.dimensionality == Dimensionality::ThreeD) offset.z = rng.uniform_int(-1, 1);
      c = anchor + offset;
      if (!in_bounds(c, config.half_width)) continue;
    } else {
      c = random_cell(rng, config.half_width, config.dimensionality);
    }
    if (c == anchor) continue;
    if (std::find(taken.begin(), taken.end(), c) != taken.end()) continue;
    return c;
  }
}

int sign(int v) { return (v > 0) - (v < 0); }

int dot(const Coordinate& a, const Coordinate& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

}  // namespace

OLScene generate_scene(const OLConfig& config, Rng& rng) {
  validate(config);
  std::vector<BlockColor> colors(kAllColors.begin(), kAllColors.end());
  rng.shuffle(colors);
  std::size_t next_color = 0;

  OLScene scene;
  scene.mode = config.mode;
  scene.half_width = config.half_width;
  std::vector<Coordinate> taken;

  if (config.mode == OLMode::Egocentric) {
    scene.viewer.position = random_cell(rng, config.half_width, config.dimensionality);
    scene.viewer.heading = kAllHeadings[rng.index(kAllHeadings.size())];
    taken.push_back(scene.viewer.position);
    scene.target = {colors[next_color++], sample_target(config, rng, scene.viewer.position, {})};
    scene.gold = relation_oracle_ego(scene.viewer, scene.target.position);
  } else {
    scene.viewer = kOriginPose;
    Coordinate reference;
    do {
      reference = random_cell(rng, config.half_width, config.dimensionality);
    } while (reference.x == 0 && reference.y == 0);
    if (config.heading_policy == HeadingPolicy::FaceReference) {
      scene.viewer.heading = heading_toward(scene.viewer.position, reference);
    }
    scene.reference = ColoredBlock{colors[next_color++], reference};
    taken.push_back(scene.viewer.position);
    scene.target = {colors[next_color++], sample_target(config, rng, reference, taken)};
    taken.push_back(reference);
    scene.gold = relation_oracle_allo(scene.viewer, reference, scene.target.position);
  }
  taken.push_back(scene.target.position);

  for (int i = 0; i < config.distractor_count; ++i) {
    Coordinate c;
    for (;;) {
      c = random_cell(rng, config.half_width, config.dimensionality);
      const bool clash = std::find(taken.begin(), taken.end(), c) != taken.end();
      const bool reference_share =
          config.allow_reference_overlap && scene.reference && c == scene.reference->position;
      if (!clash || (reference_share && c != scene.target.position)) break;
    }
    taken.push_back(c);
    scene.distractors.push_back({colors[next_color++], c});
  }
  return scene;
}

RelationSet relation_oracle_ego(const Pose& viewer, const Coordinate& target) {
  const Coordinate delta = target - viewer.position;
  if (delta == Coordinate{}) throw DegenerateSceneError("target coincides with the viewer");
  RelationSet out;
  if (delta.z != 0) out.insert(delta.z > 0 ? Relation::Above : Relation::Below);
  for (const Coordinate axis : {Coordinate{1, 0, 0}, Coordinate{0, 1, 0}}) {
    const int component = sign(dot(delta, axis));
    if (component == 0) continue;
    for (MoveDirection d : kHorizontalDirections) {
      if (dot(world_axis(viewer.heading, d), axis) == component) {
        switch (d) {
          case MoveDirection::Left: out.insert(Relation::Left); break;
          case MoveDirection::Right: out.insert(Relation::Right); break;
          case MoveDirection::Forward: out.insert(Relation::Front); break;
          default: out.insert(Relation::Back); break;
        }
        break;
      }
    }
  }
  return out;
}

RelationSet relation_oracle_allo_doubled(Heading heading, const Coordinate& reference2, const Coordinate& target2) {
  const Coordinate delta = target2 - reference2;
  if (delta == Coordinate{}) throw DegenerateSceneError("target coincides with the reference");
  RelationSet out;
  if (delta.z != 0) out.insert(delta.z > 0 ? Relation::Above : Relation::Below);
  const int lateral = dot(delta, world_axis(heading, MoveDirection::Right));
  if (lateral != 0) out.insert(lateral > 0 ? Relation::Right : Relation::Left);
  // Lower along the heading axis means nearer a viewer looking down it.
  const int depth = dot(delta, heading_vector(heading));
  if (depth != 0) out.insert(depth < 0 ? Relation::Front : Relation::Back);
  return out;
}

RelationSet relation_oracle_allo(const Pose& viewer, const Coordinate& reference, const Coordinate& target) {
  return relation_oracle_allo_doubled(viewer.heading, reference * 2, target * 2);
}

Heading heading_toward(const Coordinate& viewer, const Coordinate& reference) {
  const Coordinate delta = reference - viewer;
  if (delta.x == 0 && delta.y == 0) {
    throw DegenerateSceneError("reference has no horizontal offset from the viewer");
  }
  Heading best = kAllHeadings.front();
  int best_projection = dot(delta, heading_vector(best));
  for (Heading h : kAllHeadings) {
    const int projection = dot(delta, heading_vector(h));
    if (projection > best_projection) {
      best = h;
      best_projection = projection;
    }
  }
  return best;
}

double spatial_overlap(RelationSet predicted, RelationSet gold) {
  const int uni = predicted.unite(gold).size();
  if (uni == 0) return 100.0;
  return 100.0 * predicted.intersect(gold).size() / uni;
}

}  // namespace gridbench
