#pragma once

#include <span>
#include <string>
#include <vector>

#include "gridbench/combo.hpp"
#include "gridbench/localization.hpp"
#include "gridbench/navigation.hpp"
#include "gridbench/structure.hpp"
#include "gridbench/task.hpp"

namespace gridbench {

// "First, you move 7 steps to your right. You then move 5 steps forward. ..."
std::string describe_moves(std::span<const Step> steps);

// Gold answers as a model is asked to write them.
std::string follower_answer(const Coordinate& c, Dimensionality dim);
std::string instructor_answer(std::span<const Step> steps);
std::string ol_answer(const OLScene& scene);
std::string shape_noun(ShapeKind k);  // "row", "plane", ...
std::string structure_answer(const Structure& s);
std::string combo_answer(const ComboInstance& c);

// Step-by-step reasoning that ends in the tagged gold answer. Used for the
// one-shot exemplars and for optional training traces.
std::string explain_follower(const NavPath& path);
std::string explain_instructor(const NavInstance& instance);
std::string explain_card2ego(std::span<const CardinalStep> steps);
std::string explain_ol(const OLScene& scene, Dimensionality dim = Dimensionality::ThreeD);
std::string explain_structure(const Structure& s);
std::string explain_combo(const ComboInstance& c);

// Prompt renderers. OneWithReasoning uses a fixed worked exemplar and
// ignores `exemplars`; FewNoReasoning lists every exemplar with its bare
// answer; Zero uses none.
std::string follower_prompt(const NavPath& path, ShotMode shots, std::span<const NavPath> exemplars = {});
std::string instructor_prompt(const NavInstance& instance, ShotMode shots,
                              std::span<const NavInstance> exemplars = {});
std::string card2ego_prompt(std::span<const CardinalStep> steps, ShotMode shots,
                            std::span<const std::vector<CardinalStep>> exemplars = {});
// `listing` is the block presentation order (default: scene.blocks()).
std::string ol_prompt(const OLScene& scene, ShotMode shots, std::span<const OLScene> exemplars = {},
                      std::span<const ColoredBlock> listing = {},
                      Dimensionality dim = Dimensionality::ThreeD);
std::string structure_prompt(const Structure& s, BlockFormat format, ShotMode shots,
                             std::span<const Structure> exemplars = {});
std::string combo_prompt(const ComboInstance& c);

}  // namespace gridbench
