#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "gridbench/task.hpp"

namespace gridbench {

// Distribution report for a single-task dataset: direction shares, path
// lengths and step lengths for navigation; relation counts and per-relation
// shares for localization; block counts, shapes, colors and relations for
// structures. Empty input gives an empty object. Throws
// std::invalid_argument when records of different tasks are mixed.
nlohmann::json dataset_stats(std::span<const TaskRecord> records);

std::string render_stats(const nlohmann::json& stats);

}  // namespace gridbench
