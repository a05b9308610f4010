#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace gridbench {

// Row: horizontal line one block high. Column: vertical line. Tower: prism
// with every extent > 1 that is not a cube. Plane: prism exactly one block
// thick. Cube: equal extents > 1.
enum class ShapeKind { Row, Column, Tower, Plane, Cube };

inline constexpr std::array<ShapeKind, 5> kAllShapeKinds{ShapeKind::Row, ShapeKind::Column, ShapeKind::Tower,
                                                         ShapeKind::Plane, ShapeKind::Cube};

constexpr std::string_view to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Row: return "row";
    case ShapeKind::Column: return "column";
    case ShapeKind::Tower: return "tower";
    case ShapeKind::Plane: return "plane";
    case ShapeKind::Cube: return "cube";
  }
  return "?";
}

constexpr std::optional<ShapeKind> parse_shape_kind(std::string_view s) {
  for (ShapeKind k : kAllShapeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

// Per-kind mention counts, indexed by ShapeKind.
using ShapeCounts = std::array<int, 5>;

constexpr int& at(ShapeCounts& counts, ShapeKind k) { return counts[static_cast<std::size_t>(k)]; }
constexpr int at(const ShapeCounts& counts, ShapeKind k) { return counts[static_cast<std::size_t>(k)]; }

}  // namespace gridbench
