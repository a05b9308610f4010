#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <iosfwd>
#include <span>

#include "gridbench/combo.hpp"
#include "gridbench/task.hpp"

namespace gridbench {

class DatasetLoadError : public std::runtime_error {
 public:
  DatasetLoadError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GoldMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument for unusable specs (bad shot mode, too many
// distractors, ...).
void check_spec(const TaskSpec& spec);

// Record `index` of the dataset described by `spec`. Depends only on
// (spec, index), so records can be produced in any order.
TaskRecord generate_record(const TaskSpec& spec, std::size_t index);

std::vector<TaskRecord> generate_dataset(const TaskSpec& spec, std::size_t size);

// Rebuilds the gold answer from the record's stored instance with the
// owning oracle. Throws GoldMismatchError when it disagrees.
void verify_gold(const TaskRecord& record);

// One JSON object per line, keys sorted. Every record is verified first.
void write_dataset(std::span<const TaskRecord> records, std::ostream& out);
void write_dataset(std::span<const TaskRecord> records, const std::filesystem::path& path);

// Throws DatasetLoadError naming the 1-based line of the first bad record.
std::vector<TaskRecord> read_dataset(std::istream& in);
std::vector<TaskRecord> read_dataset(const std::filesystem::path& path);

// Per-task views of a record's stored instance.
NavPath nav_path_of(const TaskRecord& record);
NavInstance nav_instance_of(const TaskRecord& record);  // ego 2D instance for Card2Ego
std::vector<CardinalStep> compass_path_of(const TaskRecord& record);
OLScene scene_of(const TaskRecord& record);
std::vector<ColoredBlock> listing_of(const TaskRecord& record);
Structure structure_of(const TaskRecord& record);
ComboInstance combo_of(const TaskRecord& record);

}  // namespace gridbench
