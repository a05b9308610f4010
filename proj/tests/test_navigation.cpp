#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "gridbench/navigation.hpp"

using namespace gridbench;

namespace {
using D = MoveDirection;

// Independent fixed-frame oracle: a plain sum over a lookup table.
Coordinate vector_sum(const std::vector<Step>& steps) {
  static const std::map<D, Coordinate> unit{{D::Left, {-1, 0, 0}},   {D::Right, {1, 0, 0}},
                                            {D::Forward, {0, 1, 0}}, {D::Backward, {0, -1, 0}},
                                            {D::Up, {0, 0, 1}},      {D::Down, {0, 0, -1}}};
  Coordinate c;
  for (const Step& s : steps) c = c + unit.at(s.direction) * s.length;
  return c;
}

NavInstance instance(std::vector<Step> steps, FrameMode mode, Dimensionality dim) {
  return make_instance(NavPath{std::move(steps), mode, dim}, 0);
}
}  // namespace

TEST_CASE("stratified batch has equal step-count buckets and respects path rules") {
  NavConfig config;
  const auto batch = generate_batch(config, 2024, 100);
  REQUIRE(batch.size() == 100);
  std::map<std::size_t, int> counts;
  double total = 0;
  int steps = 0;
  for (const NavInstance& inst : batch) {
    counts[inst.path.steps.size()]++;
    CHECK_NOTHROW(validate(inst.path, config));
    for (std::size_t i = 1; i < inst.path.steps.size(); ++i) {
      CHECK(inst.path.steps[i].direction != inst.path.steps[i - 1].direction);
    }
    for (const Step& s : inst.path.steps) {
      total += s.length;
      ++steps;
    }
  }
  CHECK(counts == std::map<std::size_t, int>{{1, 25}, {2, 25}, {3, 25}, {4, 25}});

  // Step length mean over a larger sample.
  Rng rng(5);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) sum += generate_path(config, rng, 1).steps[0].length;
  CHECK(sum / 1000 >= 5.0);
  CHECK(sum / 1000 <= 6.0);
}

TEST_CASE("generation is deterministic and 2d paths stay horizontal") {
  NavConfig config;
  config.dimensionality = Dimensionality::TwoD;
  const auto a = generate_batch(config, 7, 40);
  const auto b = generate_batch(config, 7, 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].path == b[i].path);
    for (const Step& s : a[i].path.steps) CHECK_FALSE(is_vertical(s.direction));
  }
}

TEST_CASE("validate rejects broken paths") {
  NavConfig config;
  CHECK_THROWS_AS(validate(NavPath{{}, FrameMode::Cardinal, Dimensionality::TwoD}, config), std::invalid_argument);
  CHECK_THROWS_AS(validate(NavPath{{{D::Up, 2}}, FrameMode::Cardinal, Dimensionality::TwoD}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(NavPath{{{D::Left, 2}, {D::Left, 3}}, FrameMode::Cardinal, Dimensionality::TwoD}, config),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(NavPath{{{D::Left, 11}}, FrameMode::Cardinal, Dimensionality::TwoD}, config),
                  std::invalid_argument);
}

TEST_CASE("follower gold") {
  const std::vector<Step> steps{{D::Right, 7}, {D::Forward, 5}, {D::Up, 10}, {D::Backward, 5}};
  CHECK(follower_gold({steps, FrameMode::Egocentric, Dimensionality::ThreeD}) == Coordinate{7, 0, 10});
  // Fixed frame: the forward and backward legs cancel.
  CHECK(follower_gold({steps, FrameMode::Cardinal, Dimensionality::ThreeD}) == Coordinate{7, 0, 10});
  for (FrameMode m : {FrameMode::Cardinal, FrameMode::Egocentric}) {
    CHECK(follower_gold({{{D::Forward, 6}}, m, Dimensionality::TwoD}) == Coordinate{0, 6, 0});
  }
}

TEST_CASE("cardinal follower gold matches the vector-sum oracle") {
  NavConfig config;
  config.mode = FrameMode::Cardinal;
  config.dimensionality = Dimensionality::ThreeD;
  for (const NavInstance& inst : generate_batch(config, 31, 2000)) {
    CHECK(follower_gold(inst.path) == vector_sum(inst.path.steps));
  }
}

TEST_CASE("instructor gold") {
  const std::vector<Coordinate> ego{{0, 0, 0}, {0, 7, 0}, {0, -1, 0}, {-4, -1, 0}};
  CHECK(instructor_gold(ego, FrameMode::Egocentric, Dimensionality::TwoD) ==
        std::vector<Step>{{D::Forward, 7}, {D::Backward, 8}, {D::Right, 4}});
  const std::vector<Coordinate> single{{0, 0, 0}, {0, 5, 0}};
  CHECK(instructor_gold(single, FrameMode::Egocentric, Dimensionality::TwoD) == std::vector<Step>{{D::Forward, 5}});
  const std::vector<Coordinate> card{{0, 0, 0}, {3, 0, 0}, {3, 1, 0}, {3, -1, 0}};
  CHECK(instructor_gold(card, FrameMode::Cardinal, Dimensionality::TwoD) ==
        std::vector<Step>{{D::Right, 3}, {D::Forward, 1}, {D::Backward, 2}});

  const std::vector<Coordinate> diagonal{{0, 0, 0}, {1, 1, 0}};
  CHECK_THROWS_AS(instructor_gold(diagonal, FrameMode::Cardinal, Dimensionality::TwoD), MalformedPathError);
  const std::vector<Coordinate> still{{0, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(instructor_gold(still, FrameMode::Cardinal, Dimensionality::TwoD), MalformedPathError);
  const std::vector<Coordinate> offset_start{{1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(instructor_gold(offset_start, FrameMode::Cardinal, Dimensionality::TwoD), MalformedPathError);
}

TEST_CASE("instructor round trip") {
  for (FrameMode mode : {FrameMode::Cardinal, FrameMode::Egocentric}) {
    for (Dimensionality dim : {Dimensionality::TwoD, Dimensionality::ThreeD}) {
      NavConfig config;
      config.mode = mode;
      config.dimensionality = dim;
      for (const NavInstance& inst : generate_batch(config, 77, 1000)) {
        std::vector<Coordinate> waypoints{Coordinate{}};
        waypoints.insert(waypoints.end(), inst.intermediates.begin(), inst.intermediates.end());
        CHECK(instructor_gold(waypoints, mode, dim) == inst.path.steps);
      }
    }
  }
}

TEST_CASE("card2ego") {
  using C = Compass;
  CHECK(card2ego(std::vector<CardinalStep>{{C::West, 2}, {C::North, 3}, {C::East, 1}}) ==
        std::vector<Step>{{D::Left, 2}, {D::Right, 3}, {D::Right, 1}});
  CHECK(card2ego(std::vector<CardinalStep>{{C::West, 3}, {C::East, 8}, {C::South, 1}, {C::South, 10}}) ==
        std::vector<Step>{{D::Left, 3}, {D::Backward, 8}, {D::Right, 1}, {D::Forward, 10}});
  CHECK(card2ego(std::vector<CardinalStep>{{C::North, 4}}) == std::vector<Step>{{D::Forward, 4}});
  CHECK(to_string(C::South) == "South");
  CHECK(parse_compass("west") == C::West);
}

TEST_CASE("card2ego endpoints agree with compass moves") {
  Rng rng(3);
  const std::array<Compass, 4> all{Compass::North, Compass::East, Compass::South, Compass::West};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<CardinalStep> path;
    Coordinate compass_end;
    for (int i = rng.uniform_int(1, 6); i > 0; --i) {
      const CardinalStep s{all[rng.index(4)], rng.uniform_int(1, 10)};
      path.push_back(s);
      compass_end = compass_end + heading_vector(compass_heading(s.compass)) * s.length;
    }
    const auto ego = card2ego(path);
    CHECK(execute_path(kOriginPose, ego, FrameMode::Egocentric).final.position == compass_end);
    CHECK(ego_to_compass(ego) == path);
  }
}

TEST_CASE("follower scoring") {
  const NavScore exact = score_follower(Coordinate{7, 0, 10}, {7, 0, 10});
  CHECK(exact.accuracy == 1.0);
  CHECK(exact.distance == 0.0);
  const NavScore flipped = score_follower(Coordinate{7, 0, -10}, {7, 0, 10});
  CHECK(flipped.accuracy == 0.0);
  CHECK(flipped.distance == doctest::Approx(20.0));
  const NavScore none = score_follower(std::nullopt, {20, 20, 20});
  CHECK(none.accuracy == 0.0);
  CHECK(none.distance == doctest::Approx(34.64).epsilon(1e-3));
  CHECK(score_follower(Coordinate{1, 2, 3}, {4, 5, 6}).distance ==
        score_follower(Coordinate{4, 5, 6}, {1, 2, 3}).distance);
}

TEST_CASE("instructor scoring") {
  const NavInstance gold =
      instance({{D::Forward, 7}, {D::Backward, 8}, {D::Right, 4}}, FrameMode::Egocentric, Dimensionality::TwoD);
  CHECK(gold.final == Coordinate{-4, -1, 0});
  const NavScore exact = score_instructor(gold.path.steps, gold);
  CHECK(exact.accuracy == 1.0);
  CHECK(exact.distance == 0.0);

  // The mistaken chain ends at (0, 4): hand execution gives forward to
  // (0,7), turn around to (0,-1), turn around again to (0,3), then one more.
  const NavScore wrong = score_instructor(
      std::vector<Step>{{D::Forward, 7}, {D::Backward, 8}, {D::Backward, 4}, {D::Forward, 1}}, gold);
  CHECK(wrong.accuracy == 0.0);
  CHECK(wrong.distance == doctest::Approx(std::sqrt(41.0)));

  const NavScore off_by_one =
      score_instructor(std::vector<Step>{{D::Forward, 7}, {D::Backward, 8}, {D::Right, 6}}, gold);
  CHECK(off_by_one.accuracy == 0.0);
  CHECK(off_by_one.distance == doctest::Approx(2.0));

  const NavScore unparseable = score_instructor(std::nullopt, gold);
  CHECK(unparseable.accuracy == 0.0);
  CHECK(unparseable.distance == doctest::Approx(std::sqrt(17.0)));
  const NavScore vertical_in_2d = score_instructor(std::vector<Step>{{D::Up, 3}}, gold);
  CHECK(vertical_in_2d.distance == doctest::Approx(std::sqrt(17.0)));
}
