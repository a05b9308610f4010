#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gridbench/localization.hpp"
#include "gridbench/parsing.hpp"
#include "gridbench/rng.hpp"
#include "gridbench/vocabulary.hpp"

namespace gridbench {

class InvalidCompositeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { X, Y, Z };

struct SolidColor {
  BlockColor color = BlockColor::Red;
  friend bool operator==(const SolidColor&, const SolidColor&) = default;
};

// First floor(extent/2) cells along `axis` get `first`, the rest `second`.
struct HalvesColor {
  BlockColor first = BlockColor::Red;
  BlockColor second = BlockColor::Blue;
  Axis axis = Axis::X;
  friend bool operator==(const HalvesColor&, const HalvesColor&) = default;
};

// Colors alternate by the parity of the cell index along the longest axis.
struct AlternatingColor {
  BlockColor even = BlockColor::Red;
  BlockColor odd = BlockColor::Blue;
  friend bool operator==(const AlternatingColor&, const AlternatingColor&) = default;
};

using ColorScheme = std::variant<SolidColor, HalvesColor, AlternatingColor>;

struct Dims {
  int dx = 1;
  int dy = 1;
  int dz = 1;
  friend bool operator==(const Dims&, const Dims&) = default;
  int extent(Axis a) const { return a == Axis::X ? dx : (a == Axis::Y ? dy : dz); }
  int volume() const { return dx * dy * dz; }
};

struct Shape {
  ShapeKind kind = ShapeKind::Row;
  Dims dims;
  Coordinate anchor;  // minimum corner
  bool hollow = false;
  ColorScheme colors = SolidColor{};

  Coordinate max_corner() const { return anchor + Coordinate{dims.dx - 1, dims.dy - 1, dims.dz - 1}; }
};

inline constexpr int kMaxShapeExtent = 10;

// Throws std::invalid_argument when dims do not fit the kind's definition.
void validate(const Shape& shape);

// One block per prism cell (only the rim for a hollow plane), ordered by x,
// then y, then z.
std::vector<ColoredBlock> to_blocks(const Shape& shape);

enum class StructureStyle { Simple, Cohesive, Composite };

std::string_view to_string(StructureStyle s);
std::optional<StructureStyle> parse_structure_style(std::string_view s);

struct StructureTerms {
  RelationSet relations;
  std::map<BlockColor, int> colors;
  ShapeCounts shapes{};
  std::set<int> numbers;

  friend bool operator==(const StructureTerms&, const StructureTerms&) = default;
};

// Relation of shape `subject` to shape `object` as used in a composite
// description.
struct ShapeLink {
  std::size_t subject = 0;
  std::size_t object = 0;
  Relation relation = Relation::Front;
};

struct Structure {
  StructureStyle style = StructureStyle::Simple;
  std::vector<Shape> shapes;
  std::vector<ColoredBlock> blocks;
  std::vector<ShapeLink> links;
  std::string gold_description;
  StructureTerms gold_terms;
  std::uint64_t variant = 0;  // description template choice
};

struct StructureConfig {
  int min_blocks = 2;
  int max_blocks = 199;
};

Structure generate_structure(StructureStyle style, Rng& rng, const StructureConfig& config = {});

// Random single-colored shape of the given kind anchored at the origin.
Shape random_shape(ShapeKind kind, BlockColor color, Rng& rng);

// Builds a structure from already placed shapes: voxelizes, derives the
// composite links and renders the gold description. `variant` picks among
// the description templates.
Structure assemble_structure(StructureStyle style, std::vector<Shape> shapes, std::uint64_t variant = 0);

// Relations between composite shapes along the axis on which they touch,
// computed on bounding-box centers for a viewer at the origin facing +Y.
// Shapes 1 and 2 are each related to shape 0.
std::vector<ShapeLink> composite_relations(std::span<const Shape> shapes);

// Doubled bounding-box center (min + max) of a block set.
Coordinate doubled_center(std::span<const ColoredBlock> blocks);

enum class BlockFormat { Plain, Dict, Set, Text };

std::string_view to_string(BlockFormat f);
std::optional<BlockFormat> parse_block_format(std::string_view s);

std::string serialize(std::span<const ColoredBlock> blocks, BlockFormat format);

// Inverse of serialize. Dict also accepts ':' in place of '='. Throws
// std::invalid_argument on malformed input.
std::vector<ColoredBlock> parse_blocks(std::string_view text, BlockFormat format);

// Partial credit for naming one shape kind when another was meant.
class ShapeCreditTable {
 public:
  ShapeCreditTable();
  double credit(ShapeKind a, ShapeKind b) const;
  void set(ShapeKind a, ShapeKind b, double value);  // symmetric

  static const ShapeCreditTable& defaults();

 private:
  std::array<std::array<double, 5>, 5> credit_{};
};

StructureTerms terms_from_text(std::string_view text, const SynonymTable& table = SynonymTable::defaults());

double color_overlap(std::string_view predicted_text, const StructureTerms& gold,
                     const SynonymTable& table = SynonymTable::defaults());

double shape_overlap(std::string_view predicted_text, const StructureTerms& gold,
                     const SynonymTable& table = SynonymTable::defaults(),
                     const ShapeCreditTable& credit = ShapeCreditTable::defaults());

// Count form, usable without text.
double shape_overlap(const ShapeCounts& predicted, const ShapeCounts& gold,
                     const ShapeCreditTable& credit = ShapeCreditTable::defaults());

double numeric_overlap(std::string_view predicted_text, const StructureTerms& gold,
                       const SynonymTable& table = SynonymTable::defaults());

struct StructureScore {
  double spatial = 0.0;
  double color = 0.0;
  double shape = 0.0;
  double numeric = 0.0;
};

StructureScore score_structure(std::string_view predicted_text, const StructureTerms& gold,
                               const SynonymTable& table = SynonymTable::defaults());

}  // namespace gridbench
