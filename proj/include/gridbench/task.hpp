#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gridbench/grid.hpp"
#include "gridbench/localization.hpp"
#include "gridbench/navigation.hpp"
#include "gridbench/structure.hpp"

namespace gridbench {

enum class Task { NavFollower, NavInstructor, Card2Ego, OLEgo, OLAllo, StructDesc, Combo };

inline constexpr std::array<Task, 7> kAllTasks{Task::NavFollower, Task::NavInstructor, Task::Card2Ego, Task::OLEgo,
                                               Task::OLAllo,      Task::StructDesc,    Task::Combo};

enum class ShotMode { Zero, OneWithReasoning, FewNoReasoning };

std::string_view to_string(Task t);
std::string_view to_string(ShotMode s);
std::optional<Task> parse_task(std::string_view s);
std::optional<ShotMode> parse_shot_mode(std::string_view s);

// One-shot with reasoning for navigation and localization, three plain
// exemplars for structures, zero-shot for the combination task.
ShotMode default_shots(Task t);
// Throws std::invalid_argument when `shots` is not offered for `t`.
void check_shots(Task t, ShotMode shots);

// Everything needed to regenerate a dataset. Fields that do not apply to a
// task are ignored by it but still recorded.
struct TaskSpec {
  Task task = Task::NavFollower;
  ShotMode shots = ShotMode::OneWithReasoning;
  std::uint64_t seed = 0;

  FrameMode mode = FrameMode::Egocentric;
  Dimensionality dimensionality = Dimensionality::TwoD;

  Adjacency adjacency = Adjacency::Adjacent;
  int distractors = 4;
  HeadingPolicy heading_policy = HeadingPolicy::SampledHorizontal;
  int half_width = 20;

  BlockFormat format = BlockFormat::Dict;
  std::optional<StructureStyle> style;  // empty: cycle simple, cohesive, composite

  int combo_max_steps = 8;
  int combo_distractors = 8;

  bool with_reasoning = false;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

// Spec for `task` with that task's usual defaults filled in.
TaskSpec default_spec(Task task, std::uint64_t seed = 0);

struct RecordConfig {
  TaskSpec spec;
  std::size_t index = 0;
  std::uint64_t seed = 0;  // derived per-record seed
  friend bool operator==(const RecordConfig&, const RecordConfig&) = default;
};

using GoldValue = std::variant<Coordinate, std::vector<Step>, RelationSet, StructureTerms>;

struct Gold {
  GoldValue value;
  std::string text;  // gold answer rendered in the requested answer format
  friend bool operator==(const Gold&, const Gold&) = default;
};

struct TaskRecord {
  std::string id;
  Task task = Task::NavFollower;
  RecordConfig config;
  std::string prompt;
  Gold gold;
  nlohmann::json metadata = nlohmann::json::object();
  nlohmann::json instance = nlohmann::json::object();
  std::optional<std::string> reasoning;

  friend bool operator==(const TaskRecord&, const TaskRecord&) = default;
};

// JSON mapping. Readers throw std::invalid_argument on missing or
// ill-typed fields.
nlohmann::json to_json(const Coordinate& c);
Coordinate coordinate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Step& s);
Step step_from_json(const nlohmann::json& j);
nlohmann::json to_json(std::span<const Step> steps);
std::vector<Step> steps_from_json(const nlohmann::json& j);
nlohmann::json to_json(RelationSet r);
RelationSet relations_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StructureTerms& t);
StructureTerms terms_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ColoredBlock& b);
ColoredBlock block_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Shape& s);
Shape shape_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TaskSpec& s);
TaskSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Gold& g);
Gold gold_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TaskRecord& r);
TaskRecord record_from_json(const nlohmann::json& j);

}  // namespace gridbench
