#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridbench {

struct Coordinate {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr auto operator<=>(const Coordinate&, const Coordinate&) = default;

  friend constexpr Coordinate operator+(Coordinate a, Coordinate b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Coordinate operator-(Coordinate a, Coordinate b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Coordinate operator*(Coordinate a, int k) { return {a.x * k, a.y * k, a.z * k}; }
};

enum class Dimensionality { TwoD, ThreeD };

// Horizontal facing of an embodied agent. There are no vertical headings.
enum class Heading { PlusX, MinusX, PlusY, MinusY };

enum class MoveDirection { Left, Right, Forward, Backward, Up, Down };

// Cardinal: directions are fixed to the grid axes. Egocentric: horizontal
// moves turn the agent first, so directions are relative to its heading.
enum class FrameMode { Cardinal, Egocentric };

struct Step {
  MoveDirection direction = MoveDirection::Forward;
  int length = 1;

  friend constexpr bool operator==(const Step&, const Step&) = default;
};

struct Pose {
  Coordinate position;
  Heading heading = Heading::PlusY;

  friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

inline constexpr Pose kOriginPose{{0, 0, 0}, Heading::PlusY};

inline constexpr std::array<Heading, 4> kAllHeadings{Heading::PlusY, Heading::PlusX, Heading::MinusY,
                                                     Heading::MinusX};
inline constexpr std::array<MoveDirection, 4> kHorizontalDirections{
    MoveDirection::Left, MoveDirection::Right, MoveDirection::Forward, MoveDirection::Backward};
inline constexpr std::array<MoveDirection, 6> kAllDirections{MoveDirection::Left,    MoveDirection::Right,
                                                             MoveDirection::Forward, MoveDirection::Backward,
                                                             MoveDirection::Up,      MoveDirection::Down};

constexpr bool is_vertical(MoveDirection d) { return d == MoveDirection::Up || d == MoveDirection::Down; }

constexpr bool valid_for(MoveDirection d, Dimensionality dim) {
  return dim == Dimensionality::ThreeD || !is_vertical(d);
}

// Unit vector of a heading in world coordinates.
Coordinate heading_vector(Heading h);

// New heading after moving in `direction`: Right turns 90 degrees clockwise
// seen from above (+Y -> +X -> -Y -> -X), Left is the inverse, Backward is a
// half turn, Forward/Up/Down keep the heading.
Heading rotate(Heading heading, MoveDirection direction);

// World displacement of a unit step in `direction` for an agent facing `heading`.
Coordinate world_axis(Heading heading, MoveDirection direction);

// Fixed-frame displacement: Left=-X, Right=+X, Forward=+Y, Backward=-Y, Up=+Z, Down=-Z.
Coordinate cardinal_axis(MoveDirection direction);

Pose apply_step_cardinal(const Pose& pose, const Step& step);
Pose apply_step_egocentric(const Pose& pose, const Step& step);
Pose apply_step(const Pose& pose, const Step& step, FrameMode mode);

struct PathResult {
  Pose final;
  std::vector<Coordinate> intermediates;  // position after each step
};

PathResult execute_path(const Pose& start, std::span<const Step> steps, FrameMode mode);

double euclidean_distance(const Coordinate& a, const Coordinate& b);

// Throws std::invalid_argument when a step has length < 1 or uses Up/Down in 2D.
void check_steps(std::span<const Step> steps, Dimensionality dim);

std::string_view to_string(Dimensionality d);
std::string_view to_string(Heading h);
std::string_view to_string(MoveDirection d);
std::string_view to_string(FrameMode m);
std::string to_string(const Coordinate& c, Dimensionality dim = Dimensionality::ThreeD);

// Natural-language axis name, e.g. "negative y".
std::string_view axis_phrase(Heading h);

std::optional<Dimensionality> parse_dimensionality(std::string_view s);
std::optional<Heading> parse_heading(std::string_view s);
std::optional<MoveDirection> parse_move_direction(std::string_view s);
std::optional<FrameMode> parse_frame_mode(std::string_view s);

}  // namespace gridbench
