#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gridbench/dataset.hpp"
#include "gridbench/prompts.hpp"
#include "gridbench/scoring.hpp"
#include "gridbench/stats.hpp"

using namespace gridbench;
using R = Relation;
using D = MoveDirection;

namespace {

std::string dump(std::span<const TaskRecord> records) {
  std::ostringstream out;
  write_dataset(records, out);
  return out.str();
}

std::vector<TaskRecord> load(const std::string& text) {
  std::istringstream in(text);
  return read_dataset(in);
}

std::vector<Generation> gold_generations(std::span<const TaskRecord> records) {
  std::vector<Generation> out;
  for (const auto& r : records) out.push_back({r.id, gold_generation_text(r), std::nullopt});
  return out;
}

// A spread of specs covering every task and the main knobs.
std::vector<TaskSpec> spec_matrix() {
  std::vector<TaskSpec> out;
  for (Task t : {Task::NavFollower, Task::NavInstructor}) {
    for (FrameMode m : {FrameMode::Cardinal, FrameMode::Egocentric}) {
      for (Dimensionality d : {Dimensionality::TwoD, Dimensionality::ThreeD}) {
        TaskSpec s = default_spec(t, 11);
        s.mode = m;
        s.dimensionality = d;
        out.push_back(s);
      }
    }
  }
  out.push_back(default_spec(Task::Card2Ego, 12));
  for (Adjacency a : {Adjacency::Adjacent, Adjacency::Random}) {
    TaskSpec ego = default_spec(Task::OLEgo, 13);
    ego.adjacency = a;
    out.push_back(ego);
    TaskSpec allo = default_spec(Task::OLAllo, 14);
    allo.adjacency = a;
    out.push_back(allo);
  }
  TaskSpec facing = default_spec(Task::OLAllo, 15);
  facing.heading_policy = HeadingPolicy::FaceReference;
  out.push_back(facing);
  TaskSpec flat = default_spec(Task::OLEgo, 16);
  flat.dimensionality = Dimensionality::TwoD;
  out.push_back(flat);
  for (BlockFormat f : {BlockFormat::Plain, BlockFormat::Dict, BlockFormat::Set, BlockFormat::Text}) {
    TaskSpec s = default_spec(Task::StructDesc, 17);
    s.format = f;
    out.push_back(s);
  }
  out.push_back(default_spec(Task::Combo, 18));
  return out;
}

bool perfect(const TaskSummary& s) {
  for (const auto& [metric, value] : s.means) {
    if (metric == "distance" ? value != 0.0 : (metric == "accuracy" ? value != 1.0 : value != 100.0)) return false;
  }
  return s.unparsed == 0;
}

// Viewer-frame vectors, written out per heading.
Coordinate ahead_of(Heading h) {
  switch (h) {
    case Heading::PlusY: return {0, 1, 0};
    case Heading::PlusX: return {1, 0, 0};
    case Heading::MinusY: return {0, -1, 0};
    case Heading::MinusX: return {-1, 0, 0};
  }
  return {};
}

Coordinate right_of(Heading h) {
  switch (h) {
    case Heading::PlusY: return {1, 0, 0};
    case Heading::PlusX: return {0, -1, 0};
    case Heading::MinusY: return {-1, 0, 0};
    case Heading::MinusX: return {0, 1, 0};
  }
  return {};
}

Coordinate box_center2(const std::vector<ColoredBlock>& blocks) {
  Coordinate lo = blocks.front().position, hi = lo;
  for (const auto& b : blocks) {
    lo = {std::min(lo.x, b.position.x), std::min(lo.y, b.position.y), std::min(lo.z, b.position.z)};
    hi = {std::max(hi.x, b.position.x), std::max(hi.y, b.position.y), std::max(hi.z, b.position.z)};
  }
  return lo + hi;
}

int dot(const Coordinate& a, const Coordinate& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Target seen from behind the viewer's shoulder: nearer along the heading
// means in front of the reference.
RelationSet independent_combo_gold(Heading h, const Coordinate& ref2, const Coordinate& target2) {
  const Coordinate d = target2 - ref2;
  RelationSet out;
  if (dot(d, right_of(h)) > 0) out.insert(R::Right);
  if (dot(d, right_of(h)) < 0) out.insert(R::Left);
  if (dot(d, ahead_of(h)) < 0) out.insert(R::Front);
  if (dot(d, ahead_of(h)) > 0) out.insert(R::Back);
  if (d.z > 0) out.insert(R::Above);
  if (d.z < 0) out.insert(R::Below);
  return out;
}

ComboInstance fixture_combo() {
  const NavPath path{{{D::Right, 5},
                      {D::Backward, 10},
                      {D::Left, 5},
                      {D::Left, 2},
                      {D::Backward, 3},
                      {D::Forward, 3},
                      {D::Backward, 1},
                      {D::Left, 6}},
                     FrameMode::Egocentric,
                     Dimensionality::ThreeD};
  // Row centered on (0, 8, -5); 6 x 5 platform centered on (2.5, 10, 8).
  Shape row{ShapeKind::Row, {1, 5, 1}, {0, 6, -5}, false, SolidColor{BlockColor::Red}};
  Shape plane{ShapeKind::Plane, {6, 5, 1}, {0, 8, 8}, false, SolidColor{BlockColor::Blue}};
  std::vector<ColoredBlock> distractors{{BlockColor::Red, {-10, 9, -5}}, {BlockColor::Red, {-12, 11, -4}}};
  return assemble_combo(path, row, plane, distractors);
}

}  // namespace

TEST_CASE("dataset round trip is field for field") {
  for (TaskSpec spec : spec_matrix()) {
    for (ShotMode shots : {ShotMode::Zero, ShotMode::OneWithReasoning, ShotMode::FewNoReasoning}) {
      if (spec.task == Task::Combo && shots != ShotMode::Zero) continue;
      spec.shots = shots;
      spec.with_reasoning = shots == ShotMode::OneWithReasoning;
      const auto records = generate_dataset(spec, 12);
      const std::string text = dump(records);
      CHECK(std::count(text.begin(), text.end(), '\n') == 12);
      const auto back = load(text);
      REQUIRE(back.size() == records.size());
      for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == records[i]);
      CHECK(dump(back) == text);
    }
  }
}

TEST_CASE("dataset files") {
  const auto records = generate_dataset(default_spec(Task::NavFollower, 5), 100);
  const std::string text = dump(records);
  CHECK(std::count(text.begin(), text.end(), '\n') == 100);

  SUBCASE("empty set gives an empty file") {
    CHECK(dump({}).empty());
    CHECK(load("").empty());
  }
  SUBCASE("a corrupt line is reported by number") {
    std::istringstream in(text);
    std::string line, corrupted;
    for (int n = 1; std::getline(in, line); ++n) corrupted += (n == 7 ? line.substr(0, line.size() / 2) : line) + "\n";
    try {
      load(corrupted);
      FAIL("expected a load error");
    } catch (const DatasetLoadError& e) {
      CHECK(e.line() == 7);
      CHECK(std::string(e.what()).rfind("line 7:", 0) == 0);
    }
  }
  SUBCASE("a record missing a field is reported") {
    auto j = to_json(records[0]);
    j.erase("gold");
    try {
      load(to_json(records[1]).dump() + "\n" + j.dump() + "\n");
      FAIL("expected a load error");
    } catch (const DatasetLoadError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("keys are written sorted") {
    const std::string first = text.substr(0, text.find('\n'));
    CHECK(first.find("\"config\"") < first.find("\"gold\""));
    CHECK(first.find("\"gold\"") < first.find("\"id\""));
    CHECK(first.find("\"metadata\"") < first.find("\"prompt\""));
  }
}

TEST_CASE("generation is deterministic and order independent") {
  for (const TaskSpec& spec : spec_matrix()) {
    const auto a = generate_dataset(spec, 10);
    const auto b = generate_dataset(spec, 10);
    CHECK(dump(a) == dump(b));
    CHECK(generate_record(spec, 7) == a[7]);
    std::set<std::string> ids;
    for (const auto& r : a) ids.insert(r.id);
    CHECK(ids.size() == a.size());
  }
  TaskSpec other = default_spec(Task::OLEgo, 13);
  other.seed = 14;
  CHECK(generate_record(other, 0).prompt != generate_record(default_spec(Task::OLEgo, 13), 0).prompt);
}

TEST_CASE("navigation datasets agree with the batch generator") {
  TaskSpec spec = default_spec(Task::NavFollower, 99);
  spec.dimensionality = Dimensionality::ThreeD;
  const auto records = generate_dataset(spec, 40);
  NavConfig config;
  config.dimensionality = Dimensionality::ThreeD;
  const auto batch = generate_batch(config, 99, 40);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(nav_path_of(records[i]).steps == batch[i].path.steps);
    CHECK(std::get<Coordinate>(records[i].gold.value) == batch[i].final);
  }
}

TEST_CASE("gold is verified at write time") {
  for (const TaskSpec& spec : spec_matrix()) {
    auto records = generate_dataset(spec, 3);
    CHECK_NOTHROW(verify_gold(records[0]));
    TaskRecord& r = records[1];
    std::visit(
        [](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Coordinate>) {
            v.x += 1;
          } else if constexpr (std::is_same_v<T, std::vector<Step>>) {
            v.front().length += 1;
          } else if constexpr (std::is_same_v<T, RelationSet>) {
            v.insert(v.contains(R::Above) ? R::Below : R::Above);
          } else {
            v.numbers.insert(1000);
          }
        },
        r.gold.value);
    CHECK_THROWS_AS(verify_gold(r), GoldMismatchError);
    CHECK_THROWS_AS(dump(records), GoldMismatchError);
  }
}

TEST_CASE("few-shot exemplars come from a disjoint seed stream") {
  TaskSpec spec = default_spec(Task::StructDesc, 21);
  const auto records = generate_dataset(spec, 30);
  std::set<std::uint64_t> record_seeds, exemplar_seeds;
  for (const auto& r : records) {
    record_seeds.insert(r.config.seed);
    REQUIRE(r.metadata.contains("exemplar_seeds"));
    CHECK(r.metadata.at("exemplar_seeds").size() == 3);
    for (const auto& s : r.metadata.at("exemplar_seeds")) exemplar_seeds.insert(s.get<std::uint64_t>());
  }
  CHECK(exemplar_seeds.size() == 90);
  for (auto s : exemplar_seeds) CHECK_FALSE(record_seeds.contains(s));

  // The listed exemplars are the structures those seeds produce.
  const TaskRecord& r = records[4];
  Rng rng(r.metadata.at("exemplar_seeds")[0].get<std::uint64_t>());
  const Structure ex = generate_structure(structure_of(r).style, rng);
  CHECK(r.prompt.find(structure_answer(ex)) != std::string::npos);
}

TEST_CASE("metadata") {
  const auto nav = generate_record(default_spec(Task::NavInstructor, 3), 2);
  CHECK(nav.metadata.at("path_length") == 3);
  CHECK(nav.metadata.at("heading").is_null());
  CHECK(nav.metadata.at("mode") == "egocentric");
  CHECK(nav.metadata.at("dimensionality") == "2d");
  CHECK(nav.metadata.at("seed") == nav.config.seed);

  const auto ol = generate_record(default_spec(Task::OLEgo, 3), 0);
  CHECK(ol.metadata.at("heading") == std::string(to_string(scene_of(ol).viewer.heading)));
  CHECK(ol.metadata.at("adjacency") == "adjacent");
  CHECK(ol.metadata.at("path_length").is_null());

  TaskSpec st = default_spec(Task::StructDesc, 3);
  st.format = BlockFormat::Text;
  const auto s = generate_record(st, 2);
  CHECK(s.metadata.at("format") == "text");
  CHECK(s.metadata.at("style") == "composite");
}

TEST_CASE("self-scoring is perfect for every task family") {
  std::set<Task> seen;
  for (const TaskSpec& spec : spec_matrix()) {
    const auto records = generate_dataset(spec, 60);
    const ScoreReport report = score_dataset(gold_generations(records), records);
    REQUIRE(report.tasks.size() == 1);
    const TaskSummary& summary = report.tasks.begin()->second;
    CHECK(summary.count == 60);
    INFO(to_string(spec.task));
    CHECK(perfect(summary));
    for (const auto& s : report.records) {
      if (s.metrics.count("spatial") && s.metrics.at("spatial") != 100.0) {
        const auto& r = *std::find_if(records.begin(), records.end(), [&](const auto& x) { return x.id == s.id; });
        FAIL_CHECK(r.gold.text);
      }
    }
    seen.insert(spec.task);
  }
  CHECK(seen.size() == kAllTasks.size());
}

TEST_CASE("breakdowns partition the records") {
  const auto nav = generate_dataset(default_spec(Task::NavFollower, 8), 100);
  const auto ol = generate_dataset(default_spec(Task::OLEgo, 8), 100);
  std::vector<TaskRecord> mixed = nav;
  mixed.insert(mixed.end(), ol.begin(), ol.end());
  const ScoreReport report = score_dataset(gold_generations(mixed), mixed);

  const auto& lengths = report.tasks.at(Task::NavFollower).breakdowns.at("path_length");
  REQUIRE(lengths.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(lengths[i].label == std::to_string(i + 1));
    CHECK(lengths[i].count == 25);
  }
  const auto& nav_headings = report.tasks.at(Task::NavFollower).breakdowns.at("heading");
  REQUIRE(nav_headings.size() == 1);
  CHECK(nav_headings[0].label == kNotApplicable);

  const auto& headings = report.tasks.at(Task::OLEgo).breakdowns.at("heading");
  CHECK(headings.size() == 4);
  std::size_t total = 0;
  for (const auto& c : headings) total += c.count;
  CHECK(total == 100);

  const auto json = to_json(report);
  CHECK(json.at("records").size() == 200);
  CHECK(json.at("tasks").at("nav_follower").at("means").at("accuracy") == 1.0);
  const std::string table = render_table(report);
  CHECK(table.find("path_length=4") != std::string::npos);
  CHECK(table.find("nav_follower (n=100, unparsed=0)") != std::string::npos);
}

TEST_CASE("spatial overlap worked examples as a dataset") {
  TaskSpec spec = default_spec(Task::OLEgo, 31);
  std::vector<TaskRecord> pool;
  for (std::size_t i = 0; pool.size() < 5; ++i) {
    TaskRecord r = generate_record(spec, i);
    if (std::get<RelationSet>(r.gold.value) == RelationSet{R::Front, R::Left}) pool.push_back(r);
  }
  const std::vector<std::string> answers{
      "the block is [ANS] to my right [/ANS]",
      "the block is [ANS] in front of me and above me [/ANS]",
      "the block is [ANS] in front of me [/ANS]",
      "the block is [ANS] above me, in front of me and to my left [/ANS]",
      "the block is [ANS] in front of me and to my left [/ANS]",
  };
  std::vector<Generation> gens;
  for (std::size_t i = 0; i < 5; ++i) gens.push_back({pool[i].id, answers[i], std::nullopt});
  const ScoreReport report = score_dataset(gens, pool);
  const std::vector<double> expected{0.0, 33.33, 50.0, 66.67, 100.0};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::round(report.records[i].metrics.at("spatial") * 100) / 100 == doctest::Approx(expected[i]));
  }
  CHECK(report.tasks.at(Task::OLEgo).means.at("spatial") == doctest::Approx((0 + 100.0 / 3 + 50 + 200.0 / 3 + 100) / 5));
}

TEST_CASE("missing, failed and orphan generations") {
  const auto records = generate_dataset(default_spec(Task::NavFollower, 4), 4);
  auto gens = gold_generations(records);

  SUBCASE("orphans are listed") {
    gens.push_back({"nope-1", "x", std::nullopt});
    gens.push_back({"nope-2", "x", std::nullopt});
    try {
      score_dataset(gens, records);
      FAIL("expected orphan error");
    } catch (const OrphanGenerationError& e) {
      CHECK(e.ids() == std::vector<std::string>{"nope-1", "nope-2"});
      CHECK(std::string(e.what()).find("nope-2") != std::string::npos);
    }
  }
  SUBCASE("errors and gaps score as unparseable") {
    gens[1].error = "timeout";
    gens.pop_back();
    const ScoreReport report = score_dataset(gens, records);
    CHECK(report.tasks.at(Task::NavFollower).unparsed == 2);
    CHECK(report.records[1].metrics.at("accuracy") == 0.0);
    CHECK(report.records[3].metrics.at("accuracy") == 0.0);
    const NavScore unparsed = score_follower(std::nullopt, std::get<Coordinate>(records[1].gold.value));
    CHECK(report.records[1].metrics.at("distance") == unparsed.distance);
    CHECK(report.tasks.at(Task::NavFollower).means.at("accuracy") == 0.5);
  }
  SUBCASE("generations file round trip") {
    gens[2].error = "HTTP status 500";
    gens[2].text.clear();
    std::stringstream io;
    write_generations(gens, io);
    CHECK(read_generations(io) == gens);
  }
}

TEST_CASE("prompt contents") {
  TaskSpec follower = default_spec(Task::NavFollower, 1);
  follower.dimensionality = Dimensionality::ThreeD;
  const std::string ego = generate_record(follower, 0).prompt;
  CHECK(ego.find("you must turn to face that direction") != std::string::npos);
  CHECK(ego.find("[ANS] (x, y, z) [/ANS]") != std::string::npos);
  CHECK(ego.find("Let's start with an example") != std::string::npos);
  follower.mode = FrameMode::Cardinal;
  CHECK(generate_record(follower, 0).prompt.find("you must turn to face") == std::string::npos);

  TaskSpec allo = default_spec(Task::OLAllo, 1);
  allo.shots = ShotMode::Zero;
  const std::string allo_prompt = generate_record(allo, 0).prompt;
  CHECK(allo_prompt.find("directly in front of the blue cylinder") != std::string::npos);
  CHECK(allo_prompt.find("Here is an example") == std::string::npos);

  TaskSpec st = default_spec(Task::StructDesc, 1);
  st.format = BlockFormat::Set;
  const TaskRecord r = generate_record(st, 0);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = r.prompt.find("Description: [ANS]", pos)) != std::string::npos; ++pos) ++count;
  CHECK(count == 3);
  const std::string instance = serialize(structure_of(r).blocks, BlockFormat::Set);
  const auto at = r.prompt.rfind(instance);
  REQUIRE(at != std::string::npos);
  CHECK(at > r.prompt.rfind("Description: [ANS]"));
  CHECK(r.prompt.find(structure_of(r).gold_description) == std::string::npos);

  // Each listed block is in the prompt exactly once.
  const TaskRecord ol = generate_record(default_spec(Task::OLEgo, 2), 0);
  const std::string question = ol.prompt.substr(ol.prompt.rfind("Now let's try"));
  for (const auto& b : scene_of(ol).blocks()) {
    CHECK(question.find(to_string(b.position)) != std::string::npos);
  }
}

TEST_CASE("shot modes") {
  CHECK_THROWS_AS(generate_record([] {
    TaskSpec s = default_spec(Task::Combo, 1);
    s.shots = ShotMode::FewNoReasoning;
    return s;
  }(), 0), std::invalid_argument);
  CHECK(default_shots(Task::StructDesc) == ShotMode::FewNoReasoning);
  CHECK(default_shots(Task::NavFollower) == ShotMode::OneWithReasoning);
}

TEST_CASE("combination fixture") {
  const ComboInstance c = fixture_combo();
  CHECK(c.final == Pose{{-8, 1, 0}, Heading::PlusY});
  CHECK(box_center2(to_blocks(c.target)) == Coordinate{0, 16, -10});
  CHECK(box_center2(to_blocks(c.reference)) == Coordinate{5, 20, 16});
  CHECK(c.gold == RelationSet{R::Left, R::Front, R::Below});
  CHECK(spatial_overlap(extract_relations(extract_ans_span(combo_answer(c)).raw), c.gold) == 100.0);
  const std::string prompt = combo_prompt(c);
  CHECK(prompt.find("where is the row relative to the plane given your point of view?") != std::string::npos);
  CHECK(prompt.find("You move 5 steps to your right") == std::string::npos);
  CHECK(prompt.find("First, you move 5 steps to your right.") != std::string::npos);

  CHECK_THROWS_AS(assemble_combo(c.path, c.target, c.target, {}), std::invalid_argument);
  // Both centered on (1, 9, -5).
  Shape cube{ShapeKind::Cube, {3, 3, 3}, {0, 8, -6}, false, SolidColor{BlockColor::Green}};
  Shape row{ShapeKind::Row, {3, 1, 1}, {0, 9, -5}, false, SolidColor{BlockColor::Green}};
  CHECK_THROWS_AS(assemble_combo(c.path, row, cube, {}), DegenerateSceneError);
}

TEST_CASE("combination gold ignores block order") {
  const auto records = generate_dataset(default_spec(Task::Combo, 41), 40);
  Rng rng(5);
  for (const auto& r : records) {
    const ComboInstance c = combo_of(r);
    CHECK(c.target.kind != c.reference.kind);
    CHECK(c.path.steps.size() >= 1);
    CHECK(c.path.steps.size() <= 8);
    CHECK(c.final == execute_path(kOriginPose, c.path.steps, FrameMode::Egocentric).final);
    CHECK(c.gold == independent_combo_gold(c.final.heading, box_center2(to_blocks(c.reference)),
                                           box_center2(to_blocks(c.target))));
    std::vector<ColoredBlock> blocks = c.blocks;
    for (int k = 0; k < 5; ++k) {
      rng.shuffle(blocks);
      TaskRecord shuffled = r;
      shuffled.instance["blocks"] = nlohmann::json::array();
      for (const auto& b : blocks) shuffled.instance["blocks"].push_back(to_json(b));
      CHECK(combo_of(shuffled).gold == c.gold);
      CHECK_NOTHROW(verify_gold(shuffled));
    }
  }
}

TEST_CASE("dataset statistics") {
  CHECK(dataset_stats({}).empty());

  const auto nav = generate_dataset(default_spec(Task::NavFollower, 77), 100);
  const auto s = dataset_stats(nav);
  for (const char* k : {"1", "2", "3", "4"}) CHECK(s.at("path_lengths").at("counts").at(k) == 25);
  const double mean = s.at("step_length").at("mean").get<double>();
  CHECK(mean >= 5.0);
  CHECK(mean <= 6.0);
  std::size_t steps = 0;
  for (const auto& r : nav) steps += nav_path_of(r).steps.size();
  CHECK(s.at("step_length").at("count") == steps);
  CHECK(s.at("directions").at("counts").size() == 4);
  CHECK(s.at("direction_changes").at("transitions") == 150);
  std::size_t turns = 0;
  for (const auto& r : nav) {
    const auto& st = nav_path_of(r).steps;
    for (std::size_t i = 1; i < st.size(); ++i) turns += st[i].direction != MoveDirection::Forward;
  }
  CHECK(s.at("direction_changes").at("non_forward") == turns);

  const auto ol = generate_dataset(default_spec(Task::OLAllo, 77), 200);
  const auto o = dataset_stats(ol);
  std::size_t total = 0;
  for (const auto& [k, v] : o.at("relation_counts").at("counts").items()) {
    CHECK((k == "1" || k == "2" || k == "3"));
    total += v.get<std::size_t>();
  }
  CHECK(total == 200);

  const auto st = dataset_stats(generate_dataset(default_spec(Task::StructDesc, 77), 120));
  CHECK(st.at("shapes").at("counts").size() == 5);
  CHECK(st.at("colors").at("counts").size() == 6);
  CHECK(st.at("block_count").at("min").get<double>() >= 2);
  CHECK(st.at("block_count").at("max").get<double>() <= 199);

  const auto c2e = dataset_stats(generate_dataset(default_spec(Task::Card2Ego, 77), 40));
  CHECK(c2e.contains("compass_directions"));
  CHECK(dataset_stats(generate_dataset(default_spec(Task::Combo, 77), 10)).contains("shape_pairs"));

  std::vector<TaskRecord> mixed{nav[0], ol[0]};
  CHECK_THROWS_AS(dataset_stats(mixed), std::invalid_argument);
  CHECK(render_stats(s).find("path_lengths:") != std::string::npos);
}
