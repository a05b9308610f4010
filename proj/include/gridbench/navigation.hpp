#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gridbench/grid.hpp"
#include "gridbench/rng.hpp"

namespace gridbench {

class MalformedPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NavPath {
  std::vector<Step> steps;
  FrameMode mode = FrameMode::Egocentric;
  Dimensionality dimensionality = Dimensionality::TwoD;

  friend bool operator==(const NavPath&, const NavPath&) = default;
};

struct NavConfig {
  Dimensionality dimensionality = Dimensionality::TwoD;
  FrameMode mode = FrameMode::Egocentric;
  int min_steps = 1;
  int max_steps = 4;
  int min_length = 1;
  int max_length = 10;
  // When false, no two consecutive steps share a direction.
  bool allow_repeats = false;
};

struct NavInstance {
  NavPath path;
  std::vector<Coordinate> intermediates;
  Coordinate final;
  std::uint64_t seed = 0;
};

enum class Compass { North, East, South, West };

struct CardinalStep {
  Compass compass = Compass::North;
  int length = 1;

  friend bool operator==(const CardinalStep&, const CardinalStep&) = default;
};

struct NavScore {
  double accuracy = 0.0;
  double distance = 0.0;
};

// Throws std::invalid_argument if the path breaks the step-count, length,
// repeat or dimensionality rules of `config`.
void validate(const NavPath& path, const NavConfig& config = {});

NavPath generate_path(const NavConfig& config, Rng& rng);
NavPath generate_path(const NavConfig& config, Rng& rng, int step_count);

// Stratified batch: step counts cycle through [min_steps, max_steps], so a
// batch of 4k paths with 1-4 steps has exactly k paths of each count.
std::vector<NavInstance> generate_batch(const NavConfig& config, std::uint64_t seed, std::size_t size);

NavInstance make_instance(NavPath path, std::uint64_t seed);

Coordinate follower_gold(const NavPath& path);

// `waypoints` starts at the origin and lists the position after every leg.
// Each leg must change exactly one axis; for Egocentric mode the direction is
// recovered against the evolving heading.
std::vector<Step> instructor_gold(std::span<const Coordinate> waypoints, FrameMode mode, Dimensionality dim);

Heading compass_heading(Compass c);
Compass heading_compass(Heading h);
std::string_view to_string(Compass c);
std::optional<Compass> parse_compass(std::string_view s);

// Egocentric instructions for a traveller that starts facing North and turns
// to face each compass direction it moves in.
std::vector<Step> card2ego(std::span<const CardinalStep> steps);

// Compass form of a horizontal egocentric path executed from North (+Y).
std::vector<CardinalStep> ego_to_compass(std::span<const Step> steps);

NavScore score_follower(const std::optional<Coordinate>& predicted, const Coordinate& gold);

// Exact match on canonical steps; distance between the gold endpoint and the
// endpoint of executing the prediction in the gold's frame. Predictions that
// cannot be executed score as unparseable.
NavScore score_instructor(const std::optional<std::vector<Step>>& predicted, const NavInstance& gold);

}  // namespace gridbench
