#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridbench/grid.hpp"
#include "gridbench/rng.hpp"

namespace gridbench {

class DegenerateSceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Relation : std::uint8_t { Left, Right, Front, Back, Above, Below };

inline constexpr std::array<Relation, 6> kAllRelations{Relation::Left,  Relation::Right, Relation::Front,
                                                       Relation::Back,  Relation::Above, Relation::Below};

std::string_view to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view s);
Relation opposite(Relation r);

// Set of spatial relations. Oracle outputs never hold both members of an
// opposing pair; predictions extracted from free text may.
class RelationSet {
 public:
  RelationSet() = default;
  RelationSet(std::initializer_list<Relation> relations) {
    for (Relation r : relations) insert(r);
  }

  void insert(Relation r) { bits_ |= bit(r); }
  bool contains(Relation r) const { return (bits_ & bit(r)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  bool consistent() const;  // no opposing pair
  std::vector<Relation> items() const;
  std::uint8_t bits() const { return bits_; }

  RelationSet intersect(RelationSet other) const { return from_bits(bits_ & other.bits_); }
  RelationSet unite(RelationSet other) const { return from_bits(bits_ | other.bits_); }

  friend bool operator==(RelationSet, RelationSet) = default;

 private:
  static std::uint8_t bit(Relation r) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r)); }
  static RelationSet from_bits(std::uint8_t bits) {
    RelationSet s;
    s.bits_ = bits;
    return s;
  }
  std::uint8_t bits_ = 0;
};

std::string to_string(RelationSet set);

enum class BlockColor { Red, Orange, Yellow, Green, Blue, Purple };

inline constexpr std::array<BlockColor, 6> kAllColors{BlockColor::Red,   BlockColor::Orange, BlockColor::Yellow,
                                                      BlockColor::Green, BlockColor::Blue,   BlockColor::Purple};

std::string_view to_string(BlockColor c);
std::optional<BlockColor> parse_color(std::string_view s);

struct ColoredBlock {
  BlockColor color = BlockColor::Red;
  Coordinate position;

  friend bool operator==(const ColoredBlock&, const ColoredBlock&) = default;
};

enum class OLMode { Egocentric, Allocentric };
enum class Adjacency { Adjacent, Random };
enum class HeadingPolicy { SampledHorizontal, FixedPlusY, FaceReference };

std::string_view to_string(OLMode m);
std::string_view to_string(Adjacency a);
std::string_view to_string(HeadingPolicy p);
std::optional<OLMode> parse_ol_mode(std::string_view s);
std::optional<Adjacency> parse_adjacency(std::string_view s);
std::optional<HeadingPolicy> parse_heading_policy(std::string_view s);

struct OLConfig {
  OLMode mode = OLMode::Egocentric;
  Adjacency adjacency = Adjacency::Adjacent;
  int distractor_count = 4;
  HeadingPolicy heading_policy = HeadingPolicy::SampledHorizontal;
  int half_width = 20;  // every coordinate component lies in [-half_width, half_width]
  Dimensionality dimensionality = Dimensionality::ThreeD;
  // Allocentric only: let distractors share the reference block's cell.
  bool allow_reference_overlap = false;
};

// Throws std::invalid_argument on mode/heading-policy mismatch or when the
// scene would need more distinct colors than exist.
void validate(const OLConfig& config);

struct OLScene {
  Pose viewer;
  ColoredBlock target;
  std::optional<ColoredBlock> reference;  // empty: the viewer is the reference
  std::vector<ColoredBlock> distractors;
  int half_width = 20;
  OLMode mode = OLMode::Egocentric;
  RelationSet gold;

  Coordinate reference_position() const { return reference ? reference->position : viewer.position; }
  // Every block mentioned in the prompt, in presentation order.
  std::vector<ColoredBlock> blocks() const;
};

OLScene generate_scene(const OLConfig& config, Rng& rng);

// Target relative to the viewer's own body frame.
RelationSet relation_oracle_ego(const Pose& viewer, const Coordinate& target);

// Target relative to a reference, seen from the viewer: Left/Right along the
// viewer's right axis, Front when the target is nearer the viewer along the
// heading axis, Above/Below by height.
RelationSet relation_oracle_allo(const Pose& viewer, const Coordinate& reference, const Coordinate& target);

// Same oracle on doubled coordinates, for comparing bounding-box centers that
// may fall on half cells.
RelationSet relation_oracle_allo_doubled(Heading heading, const Coordinate& reference2, const Coordinate& target2);

// Axis-aligned heading that looks most directly at `reference`; ties prefer
// +Y, +X, -Y, -X in that order.
Heading heading_toward(const Coordinate& viewer, const Coordinate& reference);

// 100 * |P n G| / |P u G|; 100 when both are empty.
double spatial_overlap(RelationSet predicted, RelationSet gold);

}  // namespace gridbench
