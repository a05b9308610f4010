#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gridbench/parsing.hpp"
#include "gridbench/task.hpp"

namespace gridbench {

// One model output. A failed request keeps its id and carries `error`
// instead of text.
struct Generation {
  std::string id;
  std::string text;
  std::optional<std::string> error;

  friend bool operator==(const Generation&, const Generation&) = default;
};

nlohmann::json to_json(const Generation& g);
Generation generation_from_json(const nlohmann::json& j);
void write_generations(std::span<const Generation> generations, std::ostream& out);
void write_generations(std::span<const Generation> generations, const std::filesystem::path& path);
// Throws DatasetLoadError naming the bad line.
std::vector<Generation> read_generations(std::istream& in);
std::vector<Generation> read_generations(const std::filesystem::path& path);

class OrphanGenerationError : public std::runtime_error {
 public:
  explicit OrphanGenerationError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

inline constexpr const char* kNotApplicable = "n/a";

struct RecordScore {
  std::string id;
  Task task = Task::NavFollower;
  bool parsed = false;  // an answer could be extracted
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> keys;  // breakdown key -> cell label
};

struct BreakdownCell {
  std::string label;
  std::size_t count = 0;
  std::map<std::string, double> means;
};

struct TaskSummary {
  std::size_t count = 0;
  std::size_t unparsed = 0;
  std::map<std::string, double> means;
  // breakdown key -> cells in label order
  std::map<std::string, std::vector<BreakdownCell>> breakdowns;
};

struct ScoreReport {
  std::vector<RecordScore> records;  // dataset order
  std::map<Task, TaskSummary> tasks;
};

inline const std::vector<std::string> kDefaultBreakdownKeys{"heading", "path_length"};

// Scores one record; `text` empty means no usable generation.
RecordScore score_record(const TaskRecord& record, const std::optional<std::string>& text,
                         const SynonymTable& table = SynonymTable::defaults());

// Generations whose id is not in the dataset raise OrphanGenerationError.
// Records without a generation, or whose generation carries an error,
// score as unparseable.
ScoreReport score_dataset(std::span<const Generation> generations, std::span<const TaskRecord> records,
                          const std::vector<std::string>& breakdown_keys = kDefaultBreakdownKeys,
                          const SynonymTable& table = SynonymTable::defaults());

nlohmann::json to_json(const ScoreReport& report);
std::string render_table(const ScoreReport& report);

// Gold answer text for a record, as a perfect model would write it.
std::string gold_generation_text(const TaskRecord& record);

}  // namespace gridbench
