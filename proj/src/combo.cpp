#include "gridbench/combo.hpp"

#include <algorithm>

namespace gridbench {

namespace {

// Bounding boxes grown by `margin` cells intersect.
bool near(const Shape& a, const Shape& b, int margin) {
  const Coordinate amax = a.max_corner();
  const Coordinate bmax = b.max_corner();
  return a.anchor.x - margin <= bmax.x && b.anchor.x - margin <= amax.x && a.anchor.y - margin <= bmax.y &&
         b.anchor.y - margin <= amax.y && a.anchor.z - margin <= bmax.z && b.anchor.z - margin <= amax.z;
}

bool near(const Coordinate& c, const Shape& s, int margin) {
  return near(Shape{ShapeKind::Row, {1, 1, 1}, c}, s, margin);
}

}  // namespace

RelationSet combo_gold(Heading heading, const Shape& target, const Shape& reference) {
  return relation_oracle_allo_doubled(heading, doubled_center(to_blocks(reference)), doubled_center(to_blocks(target)));
}

ComboInstance assemble_combo(NavPath path, Shape target, Shape reference, std::vector<ColoredBlock> distractors) {
  if (target.kind == reference.kind) throw std::invalid_argument("combo structures must have distinct kinds");
  if (path.mode != FrameMode::Egocentric) throw std::invalid_argument("combo paths are egocentric");
  ComboInstance c;
  c.final = execute_path(kOriginPose, path.steps, path.mode).final;
  c.path = std::move(path);
  c.gold = combo_gold(c.final.heading, target, reference);
  c.blocks = to_blocks(target);
  const auto ref_blocks = to_blocks(reference);
  c.blocks.insert(c.blocks.end(), ref_blocks.begin(), ref_blocks.end());
  c.blocks.insert(c.blocks.end(), distractors.begin(), distractors.end());
  c.target = std::move(target);
  c.reference = std::move(reference);
  c.distractors = std::move(distractors);
  return c;
}

ComboInstance generate_combo(const ComboConfig& config, Rng& rng) {
  if (config.max_steps < 1) throw std::invalid_argument("combo paths need at least one step");
  NavConfig nav;
  nav.mode = FrameMode::Egocentric;
  nav.dimensionality = Dimensionality::TwoD;
  nav.min_steps = 1;
  nav.max_steps = config.max_steps;
  nav.allow_repeats = true;
  NavPath path = generate_path(nav, rng, rng.uniform_int(1, config.max_steps));
  path.dimensionality = Dimensionality::ThreeD;

  const std::size_t first = rng.index(kAllShapeKinds.size());
  std::size_t second = rng.index(kAllShapeKinds.size() - 1);
  if (second >= first) ++second;

  auto place = [&](ShapeKind kind) {
    Shape s = random_shape(kind, kAllColors[rng.index(kAllColors.size())], rng);
    const int hw = config.half_width;
    s.anchor = {rng.uniform_int(-hw, hw - s.dims.dx + 1), rng.uniform_int(-hw, hw - s.dims.dy + 1),
                rng.uniform_int(-hw, hw - s.dims.dz + 1)};
    return s;
  };
  Shape target = place(kAllShapeKinds[first]);
  Shape reference = place(kAllShapeKinds[second]);
  // Keep a one-cell gap so the two structures read as separate groups.
  while (near(target, reference, 1)) reference = place(kAllShapeKinds[second]);

  std::vector<ColoredBlock> distractors;
  std::vector<Coordinate> used;
  while (static_cast<int>(distractors.size()) < config.distractors) {
    const int hw = config.half_width;
    const Coordinate c{rng.uniform_int(-hw, hw), rng.uniform_int(-hw, hw), rng.uniform_int(-hw, hw)};
    if (near(c, target, 1) || near(c, reference, 1)) continue;
    if (std::find(used.begin(), used.end(), c) != used.end()) continue;
    used.push_back(c);
    distractors.push_back({kAllColors[rng.index(kAllColors.size())], c});
  }

  ComboInstance combo = assemble_combo(std::move(path), std::move(target), std::move(reference), std::move(distractors));
  rng.shuffle(combo.blocks);
  return combo;
}

}  // namespace gridbench
