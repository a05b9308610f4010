#include "gridbench/task.hpp"

namespace gridbench {

using nlohmann::json;

namespace {

template <typename T>
T require(std::optional<T> value, std::string_view what, const json& j) {
  if (!value) throw std::invalid_argument("unknown " + std::string(what) + " " + j.dump());
  return *value;
}

std::string str(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

std::string_view to_string(Task t) {
  switch (t) {
    case Task::NavFollower: return "nav_follower";
    case Task::NavInstructor: return "nav_instructor";
    case Task::Card2Ego: return "card2ego";
    case Task::OLEgo: return "ol_ego";
    case Task::OLAllo: return "ol_allo";
    case Task::StructDesc: return "struct_desc";
    case Task::Combo: return "combo";
  }
  return "?";
}

std::string_view to_string(ShotMode s) {
  switch (s) {
    case ShotMode::Zero: return "zero";
    case ShotMode::OneWithReasoning: return "one";
    case ShotMode::FewNoReasoning: return "few";
  }
  return "?";
}

std::optional<Task> parse_task(std::string_view s) {
  for (Task t : kAllTasks) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<ShotMode> parse_shot_mode(std::string_view s) {
  for (ShotMode m : {ShotMode::Zero, ShotMode::OneWithReasoning, ShotMode::FewNoReasoning}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

ShotMode default_shots(Task t) {
  switch (t) {
    case Task::StructDesc: return ShotMode::FewNoReasoning;
    case Task::Combo: return ShotMode::Zero;
    default: return ShotMode::OneWithReasoning;
  }
}

void check_shots(Task t, ShotMode shots) {
  if (t == Task::Combo && shots != ShotMode::Zero) {
    throw std::invalid_argument("the combo task is zero-shot only");
  }
}

TaskSpec default_spec(Task task, std::uint64_t seed) {
  TaskSpec s;
  s.task = task;
  s.seed = seed;
  s.shots = default_shots(task);
  switch (task) {
    case Task::NavFollower:
    case Task::NavInstructor:
      s.mode = FrameMode::Egocentric;
      s.dimensionality = Dimensionality::TwoD;
      break;
    case Task::Card2Ego:
      s.mode = FrameMode::Egocentric;
      s.dimensionality = Dimensionality::TwoD;
      break;
    case Task::OLEgo:
      s.dimensionality = Dimensionality::ThreeD;
      s.heading_policy = HeadingPolicy::SampledHorizontal;
      break;
    case Task::OLAllo:
      s.dimensionality = Dimensionality::ThreeD;
      s.heading_policy = HeadingPolicy::FixedPlusY;
      break;
    case Task::StructDesc:
      s.dimensionality = Dimensionality::ThreeD;
      break;
    case Task::Combo:
      s.mode = FrameMode::Egocentric;
      s.dimensionality = Dimensionality::ThreeD;
      break;
  }
  return s;
}

json to_json(const Coordinate& c) { return json::array({c.x, c.y, c.z}); }

Coordinate coordinate_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("coordinate must be [x, y, z]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

json to_json(const Step& s) { return {{"direction", to_string(s.direction)}, {"length", s.length}}; }

Step step_from_json(const json& j) {
  return {require(parse_move_direction(str(j, "direction")), "direction", j), j.at("length").get<int>()};
}

json to_json(std::span<const Step> steps) {
  json out = json::array();
  for (const Step& s : steps) out.push_back(to_json(s));
  return out;
}

std::vector<Step> steps_from_json(const json& j) {
  std::vector<Step> out;
  for (const json& s : j) out.push_back(step_from_json(s));
  return out;
}

json to_json(RelationSet r) {
  json out = json::array();
  for (Relation rel : r.items()) out.push_back(to_string(rel));
  return out;
}

RelationSet relations_from_json(const json& j) {
  RelationSet out;
  for (const json& r : j) out.insert(require(parse_relation(r.get<std::string>()), "relation", r));
  return out;
}

json to_json(const StructureTerms& t) {
  json colors = json::object();
  for (const auto& [c, n] : t.colors) colors[std::string(to_string(c))] = n;
  json shapes = json::object();
  for (ShapeKind k : kAllShapeKinds) {
    if (at(t.shapes, k) > 0) shapes[std::string(to_string(k))] = at(t.shapes, k);
  }
  return {{"relations", to_json(t.relations)}, {"colors", colors}, {"shapes", shapes}, {"numbers", t.numbers}};
}

StructureTerms terms_from_json(const json& j) {
  StructureTerms t;
  t.relations = relations_from_json(j.at("relations"));
  for (const auto& [name, n] : j.at("colors").items()) {
    t.colors[require(parse_color(name), "color", name)] = n.get<int>();
  }
  for (const auto& [name, n] : j.at("shapes").items()) {
    at(t.shapes, require(parse_shape_kind(name), "shape", name)) = n.get<int>();
  }
  t.numbers = j.at("numbers").get<std::set<int>>();
  return t;
}

json to_json(const ColoredBlock& b) { return {{"color", to_string(b.color)}, {"position", to_json(b.position)}}; }

ColoredBlock block_from_json(const json& j) {
  return {require(parse_color(str(j, "color")), "color", j), coordinate_from_json(j.at("position"))};
}

namespace {

std::string_view axis_name(Axis a) { return a == Axis::X ? "x" : (a == Axis::Y ? "y" : "z"); }

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("unknown axis " + s);
}

}  // namespace

json to_json(const Shape& s) {
  json colors;
  if (const auto* solid = std::get_if<SolidColor>(&s.colors)) {
    colors = {{"scheme", "solid"}, {"color", to_string(solid->color)}};
  } else if (const auto* h = std::get_if<HalvesColor>(&s.colors)) {
    colors = {{"scheme", "halves"}, {"first", to_string(h->first)}, {"second", to_string(h->second)},
              {"axis", axis_name(h->axis)}};
  } else {
    const auto& a = std::get<AlternatingColor>(s.colors);
    colors = {{"scheme", "alternating"}, {"even", to_string(a.even)}, {"odd", to_string(a.odd)}};
  }
  return {{"kind", to_string(s.kind)},
          {"dims", json::array({s.dims.dx, s.dims.dy, s.dims.dz})},
          {"anchor", to_json(s.anchor)},
          {"hollow", s.hollow},
          {"colors", colors}};
}

Shape shape_from_json(const json& j) {
  Shape s;
  s.kind = require(parse_shape_kind(str(j, "kind")), "shape", j);
  const json& d = j.at("dims");
  s.dims = {d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()};
  s.anchor = coordinate_from_json(j.at("anchor"));
  s.hollow = j.at("hollow").get<bool>();
  const json& c = j.at("colors");
  const std::string scheme = str(c, "scheme");
  auto color = [&](const char* key) { return require(parse_color(str(c, key)), "color", c); };
  if (scheme == "solid") {
    s.colors = SolidColor{color("color")};
  } else if (scheme == "halves") {
    s.colors = HalvesColor{color("first"), color("second"), parse_axis(str(c, "axis"))};
  } else if (scheme == "alternating") {
    s.colors = AlternatingColor{color("even"), color("odd")};
  } else {
    throw std::invalid_argument("unknown color scheme " + scheme);
  }
  validate(s);
  return s;
}

json to_json(const TaskSpec& s) {
  return {{"task", to_string(s.task)},
          {"shots", to_string(s.shots)},
          {"seed", s.seed},
          {"mode", to_string(s.mode)},
          {"dimensionality", to_string(s.dimensionality)},
          {"adjacency", to_string(s.adjacency)},
          {"distractors", s.distractors},
          {"heading_policy", to_string(s.heading_policy)},
          {"half_width", s.half_width},
          {"format", to_string(s.format)},
          {"style", s.style ? json(to_string(*s.style)) : json(nullptr)},
          {"combo_max_steps", s.combo_max_steps},
          {"combo_distractors", s.combo_distractors},
          {"with_reasoning", s.with_reasoning}};
}

TaskSpec spec_from_json(const json& j) {
  TaskSpec s;
  s.task = require(parse_task(str(j, "task")), "task", j);
  s.shots = require(parse_shot_mode(str(j, "shots")), "shot mode", j);
  s.seed = j.at("seed").get<std::uint64_t>();
  s.mode = require(parse_frame_mode(str(j, "mode")), "mode", j);
  s.dimensionality = require(parse_dimensionality(str(j, "dimensionality")), "dimensionality", j);
  s.adjacency = require(parse_adjacency(str(j, "adjacency")), "adjacency", j);
  s.distractors = j.at("distractors").get<int>();
  s.heading_policy = require(parse_heading_policy(str(j, "heading_policy")), "heading policy", j);
  s.half_width = j.at("half_width").get<int>();
  s.format = require(parse_block_format(str(j, "format")), "format", j);
  if (!j.at("style").is_null()) s.style = require(parse_structure_style(str(j, "style")), "style", j);
  s.combo_max_steps = j.at("combo_max_steps").get<int>();
  s.combo_distractors = j.at("combo_distractors").get<int>();
  s.with_reasoning = j.at("with_reasoning").get<bool>();
  return s;
}

json to_json(const Gold& g) {
  json value;
  std::string kind;
  if (const auto* c = std::get_if<Coordinate>(&g.value)) {
    kind = "coordinate";
    value = to_json(*c);
  } else if (const auto* s = std::get_if<std::vector<Step>>(&g.value)) {
    kind = "steps";
    value = to_json(std::span<const Step>(*s));
  } else if (const auto* r = std::get_if<RelationSet>(&g.value)) {
    kind = "relations";
    value = to_json(*r);
  } else {
    kind = "terms";
    value = to_json(std::get<StructureTerms>(g.value));
  }
  return {{"kind", kind}, {"value", value}, {"text", g.text}};
}

Gold gold_from_json(const json& j) {
  Gold g;
  g.text = str(j, "text");
  const std::string kind = str(j, "kind");
  const json& v = j.at("value");
  if (kind == "coordinate") {
    g.value = coordinate_from_json(v);
  } else if (kind == "steps") {
    g.value = steps_from_json(v);
  } else if (kind == "relations") {
    g.value = relations_from_json(v);
  } else if (kind == "terms") {
    g.value = terms_from_json(v);
  } else {
    throw std::invalid_argument("unknown gold kind " + kind);
  }
  return g;
}

json to_json(const TaskRecord& r) {
  json config = to_json(r.config.spec);
  config["index"] = r.config.index;
  config["record_seed"] = r.config.seed;
  json out = {{"id", r.id},          {"task", to_string(r.task)}, {"config", config},
              {"prompt", r.prompt},  {"gold", to_json(r.gold)},   {"metadata", r.metadata},
              {"instance", r.instance}};
  if (r.reasoning) out["reasoning"] = *r.reasoning;
  return out;
}

TaskRecord record_from_json(const json& j) {
  try {
    if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
    TaskRecord r;
    r.id = str(j, "id");
    r.task = require(parse_task(str(j, "task")), "task", j.at("task"));
    const json& config = j.at("config");
    r.config.spec = spec_from_json(config);
    r.config.index = config.at("index").get<std::size_t>();
    r.config.seed = config.at("record_seed").get<std::uint64_t>();
    r.prompt = str(j, "prompt");
    r.gold = gold_from_json(j.at("gold"));
    r.metadata = j.at("metadata");
    r.instance = j.at("instance");
    if (j.contains("reasoning")) r.reasoning = str(j, "reasoning");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace gridbench
