#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gridbench/grid.hpp"
#include "gridbench/localization.hpp"
#include "gridbench/vocabulary.hpp"

namespace gridbench {

struct AnswerSpan {
  enum class Source { TaggedSpan, WholeText };
  std::string raw;
  Source source = Source::WholeText;
};

// Contents of the last [ANS]...[/ANS] pair, trimmed; the whole text when no
// pair is present.
AnswerSpan extract_ans_span(std::string_view text);

// Surface forms per canonical term. Matching is case-insensitive on word
// tokens; a form that is a single capital letter (the "O" ring) only matches
// itself. Colors and shapes also accept plural forms.
struct SynonymTable {
  std::map<Relation, std::vector<std::string>> relations;
  std::map<BlockColor, std::vector<std::string>> colors;
  std::map<ShapeKind, std::vector<std::string>> shapes;
  // Words that turn a row/line mention into a column.
  std::vector<std::string> vertical_modifiers;
  // Instruction parsing uses its own direction table, disjoint from relations.
  std::map<MoveDirection, std::vector<std::string>> directions;
  std::map<int, std::vector<std::string>> number_words;

  static const SynonymTable& defaults();
  static SynonymTable from_json(const nlohmann::json& j);
  static SynonymTable load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  // Throws std::invalid_argument when a surface form sits in two buckets of
  // the same category.
  void check_injective() const;
};

std::optional<Coordinate> parse_coordinate(std::string_view span);

std::optional<std::vector<Step>> parse_instructions(std::string_view span,
                                                    const SynonymTable& table = SynonymTable::defaults());

RelationSet extract_relations(std::string_view text, const SynonymTable& table = SynonymTable::defaults());

int count_color_terms(std::string_view text, BlockColor color, const SynonymTable& table = SynonymTable::defaults());

std::set<int> extract_numbers(std::string_view text, const SynonymTable& table = SynonymTable::defaults());

ShapeCounts extract_shape_mentions(std::string_view text, const SynonymTable& table = SynonymTable::defaults());

// Canonical renderings consumed by the parsers above.
std::string render_instructions(std::span<const Step> steps);

enum class Perspective { Viewer, Reference };

// Viewer: "in front of me, to my right, and above me".
// Reference: "to the left of, in front of, and below".
std::string render_relations(RelationSet set, Perspective perspective);

}  // namespace gridbench
