#include "gridbench/dataset.hpp"

#include <fstream>
#include <sstream>

#include "gridbench/combo.hpp"
#include "gridbench/prompts.hpp"

namespace gridbench {

using nlohmann::json;

namespace {

constexpr std::uint64_t kRecordStream = 0;
constexpr std::uint64_t kExemplarStream = 1;
constexpr std::size_t kFewShotCount = 3;

NavConfig nav_config(const TaskSpec& spec) {
  NavConfig c;
  c.mode = spec.mode;
  c.dimensionality = spec.dimensionality;
  return c;
}

NavConfig card2ego_config() {
  NavConfig c;
  c.mode = FrameMode::Egocentric;
  c.dimensionality = Dimensionality::TwoD;
  return c;
}

OLConfig ol_config(const TaskSpec& spec) {
  OLConfig c;
  c.mode = spec.task == Task::OLEgo ? OLMode::Egocentric : OLMode::Allocentric;
  c.adjacency = spec.adjacency;
  c.distractor_count = spec.distractors;
  c.heading_policy = spec.heading_policy;
  c.half_width = spec.half_width;
  c.dimensionality = spec.dimensionality;
  return c;
}

ComboConfig combo_config(const TaskSpec& spec) {
  ComboConfig c;
  c.max_steps = spec.combo_max_steps;
  c.distractors = spec.combo_distractors;
  c.half_width = spec.half_width;
  return c;
}

// Same stratification as generate_batch: step counts cycle min..max.
int stratified_count(const NavConfig& c, std::size_t index) {
  const int span = c.max_steps - c.min_steps + 1;
  return c.min_steps + static_cast<int>(index % static_cast<std::size_t>(span));
}

StructureStyle style_for(const TaskSpec& spec, std::size_t index) {
  if (spec.style) return *spec.style;
  static constexpr std::array<StructureStyle, 3> cycle{StructureStyle::Simple, StructureStyle::Cohesive,
                                                       StructureStyle::Composite};
  return cycle[index % cycle.size()];
}

std::vector<std::uint64_t> exemplar_seeds(const TaskSpec& spec, std::size_t index) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < kFewShotCount; ++k) {
    seeds.push_back(derive_seed(spec.seed, kExemplarStream, index * kFewShotCount + k));
  }
  return seeds;
}

json pose_json(const Pose& p) { return {{"position", to_json(p.position)}, {"heading", to_string(p.heading)}}; }

Pose pose_from_json(const json& j) {
  const auto h = parse_heading(j.at("heading").get<std::string>());
  if (!h) throw std::invalid_argument("bad heading " + j.at("heading").dump());
  return {coordinate_from_json(j.at("position")), *h};
}

json blocks_json(std::span<const ColoredBlock> blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back(to_json(b));
  return out;
}

std::vector<ColoredBlock> blocks_from_json(const json& j) {
  std::vector<ColoredBlock> out;
  for (const auto& b : j) out.push_back(block_from_json(b));
  return out;
}

json compass_json(std::span<const CardinalStep> steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back({{"direction", to_string(s.compass)}, {"length", s.length}});
  return out;
}

std::vector<CardinalStep> compass_from_json(const json& j) {
  std::vector<CardinalStep> out;
  for (const auto& s : j) {
    const auto c = parse_compass(s.at("direction").get<std::string>());
    if (!c) throw std::invalid_argument("bad compass direction " + s.dump());
    out.push_back({*c, s.at("length").get<int>()});
  }
  return out;
}

json shapes_json(std::span<const Shape> shapes) {
  json out = json::array();
  for (const auto& s : shapes) out.push_back(to_json(s));
  return out;
}

json scene_json(const OLScene& s, std::span<const ColoredBlock> listing) {
  json j{{"viewer", pose_json(s.viewer)},
         {"target", to_json(s.target)},
         {"distractors", blocks_json(s.distractors)},
         {"half_width", s.half_width},
         {"mode", to_string(s.mode)},
         {"listing", blocks_json(listing)}};
  if (s.reference) j["reference"] = to_json(*s.reference);
  return j;
}

json structure_json(const Structure& s) {
  return {{"style", to_string(s.style)},
          {"shapes", shapes_json(s.shapes)},
          {"variant", s.variant},
          {"description", s.gold_description}};
}

Structure structure_from_json(const json& j) {
  const auto style = parse_structure_style(j.at("style").get<std::string>());
  if (!style) throw std::invalid_argument("bad structure style " + j.at("style").dump());
  std::vector<Shape> shapes;
  for (const auto& s : j.at("shapes")) shapes.push_back(shape_from_json(s));
  return assemble_structure(*style, std::move(shapes), j.at("variant").get<std::uint64_t>());
}

json combo_json(const ComboInstance& c) {
  return {{"steps", to_json(std::span<const Step>(c.path.steps))},
          {"final", pose_json(c.final)},
          {"target", to_json(c.target)},
          {"reference", to_json(c.reference)},
          {"distractors", blocks_json(c.distractors)},
          {"blocks", blocks_json(c.blocks)}};
}

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

struct Built {
  std::string prompt;
  Gold gold;
  json instance;
  std::optional<std::string> heading;
  std::optional<int> path_length;
  std::optional<std::string> reasoning;
  std::vector<std::uint64_t> exemplar_seeds;
};

Built build_nav(const TaskSpec& spec, std::size_t index, Rng& rng) {
  const NavConfig cfg = nav_config(spec);
  const NavPath path = generate_path(cfg, rng, stratified_count(cfg, index));
  const NavInstance inst = make_instance(path, 0);
  Built b;
  b.path_length = static_cast<int>(path.steps.size());
  b.instance = {{"steps", to_json(std::span<const Step>(path.steps))}};
  if (spec.shots == ShotMode::FewNoReasoning) b.exemplar_seeds = exemplar_seeds(spec, index);

  if (spec.task == Task::NavFollower) {
    std::vector<NavPath> exemplars;
    for (auto seed : b.exemplar_seeds) {
      Rng ex(seed);
      exemplars.push_back(generate_path(cfg, ex));
    }
    b.prompt = follower_prompt(path, spec.shots, exemplars);
    b.gold = {inst.final, follower_answer(inst.final, spec.dimensionality)};
    if (spec.with_reasoning) b.reasoning = explain_follower(path);
  } else {
    std::vector<NavInstance> exemplars;
    for (auto seed : b.exemplar_seeds) {
      Rng ex(seed);
      exemplars.push_back(make_instance(generate_path(cfg, ex), seed));
    }
    b.instance["waypoints"] = json::array();
    for (const auto& c : inst.intermediates) b.instance["waypoints"].push_back(to_json(c));
    b.prompt = instructor_prompt(inst, spec.shots, exemplars);
    b.gold = {path.steps, instructor_answer(path.steps)};
    if (spec.with_reasoning) b.reasoning = explain_instructor(inst);
  }
  return b;
}

Built build_card2ego(const TaskSpec& spec, std::size_t index, Rng& rng) {
  const NavConfig cfg = card2ego_config();
  const NavPath ego = generate_path(cfg, rng, stratified_count(cfg, index));
  const std::vector<CardinalStep> compass = ego_to_compass(ego.steps);
  Built b;
  b.path_length = static_cast<int>(compass.size());
  b.instance = {{"compass", compass_json(compass)}};
  if (spec.shots == ShotMode::FewNoReasoning) b.exemplar_seeds = exemplar_seeds(spec, index);
  std::vector<std::vector<CardinalStep>> exemplars;
  for (auto seed : b.exemplar_seeds) {
    Rng ex(seed);
    exemplars.push_back(ego_to_compass(generate_path(cfg, ex).steps));
  }
  const std::vector<Step> gold = card2ego(compass);
  b.prompt = card2ego_prompt(compass, spec.shots, exemplars);
  b.gold = {gold, instructor_answer(gold)};
  if (spec.with_reasoning) b.reasoning = explain_card2ego(compass);
  return b;
}

Built build_ol(const TaskSpec& spec, std::size_t index, Rng& rng) {
  const OLConfig cfg = ol_config(spec);
  const OLScene scene = generate_scene(cfg, rng);
  std::vector<ColoredBlock> listing = scene.blocks();
  rng.shuffle(listing);
  Built b;
  b.heading = std::string(to_string(scene.viewer.heading));
  b.instance = scene_json(scene, listing);
  if (spec.shots == ShotMode::FewNoReasoning) b.exemplar_seeds = exemplar_seeds(spec, index);
  std::vector<OLScene> exemplars;
  for (auto seed : b.exemplar_seeds) {
    Rng ex(seed);
    exemplars.push_back(generate_scene(cfg, ex));
  }
  b.prompt = ol_prompt(scene, spec.shots, exemplars, listing, spec.dimensionality);
  b.gold = {scene.gold, ol_answer(scene)};
  if (spec.with_reasoning) b.reasoning = explain_ol(scene, spec.dimensionality);
  return b;
}

Built build_structure(const TaskSpec& spec, std::size_t index, Rng& rng) {
  const StructureStyle style = style_for(spec, index);
  const Structure s = generate_structure(style, rng);
  Built b;
  b.instance = structure_json(s);
  if (spec.shots == ShotMode::FewNoReasoning) b.exemplar_seeds = exemplar_seeds(spec, index);
  std::vector<Structure> exemplars;
  for (auto seed : b.exemplar_seeds) {
    Rng ex(seed);
    exemplars.push_back(generate_structure(style, ex));
  }
  b.prompt = structure_prompt(s, spec.format, spec.shots, exemplars);
  b.gold = {s.gold_terms, structure_answer(s)};
  if (spec.with_reasoning) b.reasoning = explain_structure(s);
  return b;
}

Built build_combo(const TaskSpec& spec, Rng& rng) {
  const ComboInstance c = generate_combo(combo_config(spec), rng);
  Built b;
  b.heading = std::string(to_string(c.final.heading));
  b.path_length = static_cast<int>(c.path.steps.size());
  b.instance = combo_json(c);
  b.prompt = combo_prompt(c);
  b.gold = {c.gold, combo_answer(c)};
  if (spec.with_reasoning) b.reasoning = explain_combo(c);
  return b;
}

std::string record_id(const TaskSpec& spec, std::size_t index) {
  std::ostringstream id;
  id << to_string(spec.task) << '-' << spec.seed << '-';
  id.width(5);
  id.fill('0');
  id << index;
  return id.str();
}

json metadata_for(const TaskSpec& spec, std::uint64_t record_seed, const Built& b, const json& instance) {
  const bool nav = spec.task == Task::NavFollower || spec.task == Task::NavInstructor;
  const bool ol = spec.task == Task::OLEgo || spec.task == Task::OLAllo;
  json m{{"seed", record_seed},
         {"heading", nullable(b.heading)},
         {"path_length", b.path_length ? json(*b.path_length) : json(nullptr)},
         {"shots", to_string(spec.shots)}};
  m["mode"] = nav ? json(to_string(spec.mode))
                  : (spec.task == Task::Card2Ego || spec.task == Task::Combo ? json("egocentric") : json(nullptr));
  m["dimensionality"] = to_string(spec.task == Task::Card2Ego ? Dimensionality::TwoD
                                                              : (spec.task == Task::StructDesc || spec.task == Task::Combo
                                                                     ? Dimensionality::ThreeD
                                                                     : spec.dimensionality));
  m["adjacency"] = ol ? json(to_string(spec.adjacency)) : json(nullptr);
  m["format"] = spec.task == Task::StructDesc ? json(to_string(spec.format)) : json(nullptr);
  m["style"] = spec.task == Task::StructDesc ? instance.at("style") : json(nullptr);
  if (!b.exemplar_seeds.empty()) m["exemplar_seeds"] = b.exemplar_seeds;
  return m;
}

void expect(bool ok, const TaskRecord& r, const std::string& what) {
  if (!ok) throw GoldMismatchError(r.id + ": " + what);
}

}  // namespace

void check_spec(const TaskSpec& spec) {
  check_shots(spec.task, spec.shots);
  switch (spec.task) {
    case Task::OLEgo:
    case Task::OLAllo: validate(ol_config(spec)); break;
    case Task::Combo:
      if (spec.combo_max_steps < 1) throw std::invalid_argument("combo needs at least one step");
      if (spec.combo_distractors < 0) throw std::invalid_argument("negative distractor count");
      break;
    default: break;
  }
  if (spec.half_width < 1) throw std::invalid_argument("half_width must be positive");
}

TaskRecord generate_record(const TaskSpec& spec, std::size_t index) {
  check_spec(spec);
  const std::uint64_t seed = derive_seed(spec.seed, kRecordStream, index);
  Rng rng(seed);
  Built b;
  switch (spec.task) {
    case Task::NavFollower:
    case Task::NavInstructor: b = build_nav(spec, index, rng); break;
    case Task::Card2Ego: b = build_card2ego(spec, index, rng); break;
    case Task::OLEgo:
    case Task::OLAllo: b = build_ol(spec, index, rng); break;
    case Task::StructDesc: b = build_structure(spec, index, rng); break;
    case Task::Combo: b = build_combo(spec, rng); break;
  }
  TaskRecord r;
  r.id = record_id(spec, index);
  r.task = spec.task;
  r.config = {spec, index, seed};
  r.prompt = std::move(b.prompt);
  r.gold = std::move(b.gold);
  r.metadata = metadata_for(spec, seed, b, b.instance);
  r.instance = std::move(b.instance);
  r.reasoning = std::move(b.reasoning);
  return r;
}

std::vector<TaskRecord> generate_dataset(const TaskSpec& spec, std::size_t size) {
  std::vector<TaskRecord> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back(generate_record(spec, i));
  return out;
}

NavPath nav_path_of(const TaskRecord& r) {
  const TaskSpec& s = r.config.spec;
  return {steps_from_json(r.instance.at("steps")), s.mode, s.dimensionality};
}

NavInstance nav_instance_of(const TaskRecord& r) {
  if (r.task == Task::Card2Ego) {
    return make_instance(NavPath{card2ego(compass_path_of(r)), FrameMode::Egocentric, Dimensionality::TwoD},
                         r.config.seed);
  }
  return make_instance(nav_path_of(r), r.config.seed);
}

std::vector<CardinalStep> compass_path_of(const TaskRecord& r) { return compass_from_json(r.instance.at("compass")); }

OLScene scene_of(const TaskRecord& r) {
  const json& j = r.instance;
  OLScene s;
  s.viewer = pose_from_json(j.at("viewer"));
  s.target = block_from_json(j.at("target"));
  if (j.contains("reference")) s.reference = block_from_json(j.at("reference"));
  s.distractors = blocks_from_json(j.at("distractors"));
  s.half_width = j.at("half_width").get<int>();
  const auto mode = parse_ol_mode(j.at("mode").get<std::string>());
  if (!mode) throw std::invalid_argument("bad OL mode " + j.at("mode").dump());
  s.mode = *mode;
  s.gold = s.mode == OLMode::Egocentric ? relation_oracle_ego(s.viewer, s.target.position)
                                        : relation_oracle_allo(s.viewer, s.reference->position, s.target.position);
  return s;
}

std::vector<ColoredBlock> listing_of(const TaskRecord& r) { return blocks_from_json(r.instance.at("listing")); }

Structure structure_of(const TaskRecord& r) { return structure_from_json(r.instance); }

ComboInstance combo_of(const TaskRecord& r) {
  const json& j = r.instance;
  NavPath path{steps_from_json(j.at("steps")), FrameMode::Egocentric, Dimensionality::ThreeD};
  ComboInstance c = assemble_combo(std::move(path), shape_from_json(j.at("target")), shape_from_json(j.at("reference")),
                                   blocks_from_json(j.at("distractors")));
  // Keep the presentation order that was shown to the model.
  c.blocks = blocks_from_json(j.at("blocks"));
  return c;
}

void verify_gold(const TaskRecord& r) {
  try {
    switch (r.task) {
      case Task::NavFollower: {
        const Coordinate c = follower_gold(nav_path_of(r));
        expect(r.gold.value == GoldValue{c}, r, "follower endpoint");
        expect(r.gold.text == follower_answer(c, r.config.spec.dimensionality), r, "follower answer text");
        break;
      }
      case Task::NavInstructor: {
        const NavInstance inst = nav_instance_of(r);
        const auto waypoints = inst.intermediates;
        std::vector<Coordinate> full{Coordinate{}};
        full.insert(full.end(), waypoints.begin(), waypoints.end());
        const auto steps = instructor_gold(full, inst.path.mode, inst.path.dimensionality);
        expect(r.gold.value == GoldValue{steps}, r, "instructor steps");
        std::vector<Coordinate> stored;
        for (const auto& w : r.instance.at("waypoints")) stored.push_back(coordinate_from_json(w));
        expect(stored == waypoints, r, "instructor waypoints");
        break;
      }
      case Task::Card2Ego: {
        const auto compass = compass_path_of(r);
        const auto steps = card2ego(compass);
        expect(r.gold.value == GoldValue{steps}, r, "card2ego steps");
        expect(ego_to_compass(steps) == compass, r, "card2ego inverse");
        break;
      }
      case Task::OLEgo:
      case Task::OLAllo: {
        const OLScene s = scene_of(r);
        expect(r.gold.value == GoldValue{s.gold}, r, "localization relations");
        expect(r.gold.text == ol_answer(s), r, "localization answer text");
        break;
      }
      case Task::StructDesc: {
        const Structure s = structure_of(r);
        expect(r.gold.value == GoldValue{s.gold_terms}, r, "structure terms");
        expect(s.gold_description == r.instance.at("description").get<std::string>(), r, "structure description");
        expect(r.gold.text == structure_answer(s), r, "structure answer text");
        break;
      }
      case Task::Combo: {
        const ComboInstance c = combo_of(r);
        expect(c.final == pose_from_json(r.instance.at("final")), r, "combo final pose");
        expect(r.gold.value == GoldValue{c.gold}, r, "combo relations");
        break;
      }
    }
  } catch (const GoldMismatchError&) {
    throw;
  } catch (const std::exception& e) {
    throw GoldMismatchError(r.id + ": cannot rebuild instance: " + e.what());
  }
}

void write_dataset(std::span<const TaskRecord> records, std::ostream& out) {
  for (const auto& r : records) {
    verify_gold(r);
    out << to_json(r).dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing dataset");
}

void write_dataset(std::span<const TaskRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_dataset(records, out);
}

std::vector<TaskRecord> read_dataset(std::istream& in) {
  std::vector<TaskRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DatasetLoadError(number, e.what());
    }
  }
  return out;
}

std::vector<TaskRecord> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_dataset(in);
}

}  // namespace gridbench
