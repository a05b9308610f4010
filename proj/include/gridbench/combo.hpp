#pragma once

#include <vector>

#include "gridbench/localization.hpp"
#include "gridbench/navigation.hpp"
#include "gridbench/rng.hpp"
#include "gridbench/structure.hpp"

namespace gridbench {

struct ComboConfig {
  int max_steps = 8;
  int distractors = 8;
  int half_width = 20;
};

// Navigate egocentrically, then say where one structure is relative to
// another from the final pose.
struct ComboInstance {
  NavPath path;
  Pose final;
  Shape target;     // "where is the <target kind> ..."
  Shape reference;  // "... relative to the <reference kind>"
  std::vector<ColoredBlock> distractors;
  std::vector<ColoredBlock> blocks;  // presentation order
  RelationSet gold;
};

// Relation of the target structure's bounding-box center to the reference's,
// for a viewer with the given heading. Throws DegenerateSceneError when the
// centers coincide.
RelationSet combo_gold(Heading heading, const Shape& target, const Shape& reference);

// Builds an instance from explicit parts; blocks are listed target,
// reference, distractors. Throws std::invalid_argument when the two shapes
// share a kind.
ComboInstance assemble_combo(NavPath path, Shape target, Shape reference, std::vector<ColoredBlock> distractors);

ComboInstance generate_combo(const ComboConfig& config, Rng& rng);

}  // namespace gridbench
