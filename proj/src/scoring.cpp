#include "gridbench/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gridbench/dataset.hpp"
#include "gridbench/structure.hpp"

namespace gridbench {

using nlohmann::json;

namespace {

std::string cell_label(const json& metadata, const std::string& key) {
  if (!metadata.contains(key) || metadata.at(key).is_null()) return kNotApplicable;
  const json& v = metadata.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// Numeric labels sort by value, "n/a" goes last.
bool label_less(const std::string& a, const std::string& b) {
  if (a == b) return false;
  if (a == kNotApplicable) return false;
  if (b == kNotApplicable) return true;
  const bool na = !a.empty() && a.find_first_not_of("-0123456789") == std::string::npos;
  const bool nb = !b.empty() && b.find_first_not_of("-0123456789") == std::string::npos;
  if (na && nb) return std::stol(a) < std::stol(b);
  if (na != nb) return na;
  return a < b;
}

std::map<std::string, double> mean_of(const std::vector<const RecordScore*>& scores) {
  std::map<std::string, double> sums;
  for (const RecordScore* s : scores) {
    for (const auto& [k, v] : s->metrics) sums[k] += v;
  }
  for (auto& [k, v] : sums) v /= static_cast<double>(scores.size());
  return sums;
}

std::string fixed(double v, int precision = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

void nav_metrics(RecordScore& s, const NavScore& n) {
  s.metrics["accuracy"] = n.accuracy;
  s.metrics["distance"] = n.distance;
}

}  // namespace

json to_json(const Generation& g) {
  json j{{"id", g.id}, {"text", g.text}};
  j["error"] = g.error ? json(*g.error) : json(nullptr);
  return j;
}

Generation generation_from_json(const json& j) {
  try {
    Generation g;
    g.id = j.at("id").get<std::string>();
    g.text = j.value("text", std::string());
    if (j.contains("error") && !j.at("error").is_null()) g.error = j.at("error").get<std::string>();
    return g;
  } catch (const json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

void write_generations(std::span<const Generation> generations, std::ostream& out) {
  for (const auto& g : generations) out << to_json(g).dump() << '\n';
  if (!out) throw std::runtime_error("failed writing generations");
}

void write_generations(std::span<const Generation> generations, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_generations(generations, out);
}

std::vector<Generation> read_generations(std::istream& in) {
  std::vector<Generation> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(generation_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DatasetLoadError(number, e.what());
    }
  }
  return out;
}

std::vector<Generation> read_generations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_generations(in);
}

OrphanGenerationError::OrphanGenerationError(std::vector<std::string> ids)
    : std::runtime_error([&] {
        std::string msg = "generations with no matching record:";
        for (const auto& id : ids) msg += " " + id;
        return msg;
      }()),
      ids_(std::move(ids)) {}

RecordScore score_record(const TaskRecord& r, const std::optional<std::string>& text, const SynonymTable& table) {
  RecordScore s;
  s.id = r.id;
  s.task = r.task;
  const AnswerSpan span = text ? extract_ans_span(*text) : AnswerSpan{};
  switch (r.task) {
    case Task::NavFollower: {
      const auto& gold = std::get<Coordinate>(r.gold.value);
      std::optional<Coordinate> predicted;
      if (text) predicted = parse_coordinate(span.raw);
      // A 2D answer never names z.
      s.parsed = predicted.has_value();
      nav_metrics(s, score_follower(predicted, gold));
      break;
    }
    case Task::NavInstructor:
    case Task::Card2Ego: {
      std::optional<std::vector<Step>> predicted;
      if (text) predicted = parse_instructions(span.raw, table);
      s.parsed = predicted.has_value();
      nav_metrics(s, score_instructor(predicted, nav_instance_of(r)));
      break;
    }
    case Task::OLEgo:
    case Task::OLAllo:
    case Task::Combo: {
      const RelationSet gold = std::get<RelationSet>(r.gold.value);
      const RelationSet predicted = text ? extract_relations(span.raw, table) : RelationSet{};
      s.parsed = text.has_value() && !predicted.empty();
      s.metrics["spatial"] = spatial_overlap(predicted, gold);
      break;
    }
    case Task::StructDesc: {
      const auto& gold = std::get<StructureTerms>(r.gold.value);
      const StructureScore st = score_structure(text ? span.raw : std::string(), gold, table);
      s.parsed = text.has_value() && !span.raw.empty();
      s.metrics["spatial"] = st.spatial;
      s.metrics["color"] = st.color;
      s.metrics["shape"] = st.shape;
      s.metrics["numeric"] = st.numeric;
      break;
    }
  }
  return s;
}

ScoreReport score_dataset(std::span<const Generation> generations, std::span<const TaskRecord> records,
                          const std::vector<std::string>& breakdown_keys, const SynonymTable& table) {
  std::unordered_map<std::string, const TaskRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  std::unordered_map<std::string, const Generation*> outputs;
  std::vector<std::string> orphans;
  for (const auto& g : generations) {
    if (!by_id.contains(g.id)) {
      orphans.push_back(g.id);
      continue;
    }
    outputs[g.id] = &g;
  }
  if (!orphans.empty()) throw OrphanGenerationError(std::move(orphans));

  ScoreReport report;
  for (const auto& r : records) {
    std::optional<std::string> text;
    if (auto it = outputs.find(r.id); it != outputs.end() && !it->second->error) text = it->second->text;
    RecordScore s = score_record(r, text, table);
    for (const auto& key : breakdown_keys) s.keys[key] = cell_label(r.metadata, key);
    report.records.push_back(std::move(s));
  }

  std::map<Task, std::vector<const RecordScore*>> per_task;
  for (const auto& s : report.records) per_task[s.task].push_back(&s);
  for (const auto& [task, scores] : per_task) {
    TaskSummary summary;
    summary.count = scores.size();
    summary.unparsed = static_cast<std::size_t>(
        std::count_if(scores.begin(), scores.end(), [](const RecordScore* s) { return !s->parsed; }));
    summary.means = mean_of(scores);
    for (const auto& key : breakdown_keys) {
      std::map<std::string, std::vector<const RecordScore*>> cells;
      for (const RecordScore* s : scores) cells[s->keys.at(key)].push_back(s);
      std::vector<BreakdownCell> out;
      for (const auto& [label, members] : cells) out.push_back({label, members.size(), mean_of(members)});
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return label_less(a.label, b.label); });
      summary.breakdowns[key] = std::move(out);
    }
    report.tasks[task] = std::move(summary);
  }
  return report;
}

json to_json(const ScoreReport& report) {
  json records = json::array();
  for (const auto& s : report.records) {
    records.push_back({{"id", s.id},
                       {"task", to_string(s.task)},
                       {"parsed", s.parsed},
                       {"metrics", s.metrics},
                       {"keys", s.keys}});
  }
  json tasks = json::object();
  for (const auto& [task, summary] : report.tasks) {
    json breakdowns = json::object();
    for (const auto& [key, cells] : summary.breakdowns) {
      json arr = json::array();
      for (const auto& c : cells) arr.push_back({{"label", c.label}, {"count", c.count}, {"means", c.means}});
      breakdowns[key] = arr;
    }
    tasks[std::string(to_string(task))] = {
        {"count", summary.count}, {"unparsed", summary.unparsed}, {"means", summary.means}, {"breakdowns", breakdowns}};
  }
  return {{"records", records}, {"tasks", tasks}};
}

std::string render_table(const ScoreReport& report) {
  std::ostringstream out;
  auto row = [&](const std::vector<std::string>& cols, const std::vector<std::size_t>& widths) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i == 0 ? "" : "  ");
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(widths[i])) << cols[i];
      } else {
        out << std::right << std::setw(static_cast<int>(widths[i])) << cols[i];
      }
    }
    out << '\n';
  };
  auto table = [&](const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
    }
    for (const auto& r : rows) row(r, widths);
  };

  for (const auto& [task, summary] : report.tasks) {
    std::vector<std::string> metrics;
    for (const auto& [k, v] : summary.means) metrics.push_back(k);
    out << to_string(task) << " (n=" << summary.count << ", unparsed=" << summary.unparsed << ")\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"cell", "n"};
    header.insert(header.end(), metrics.begin(), metrics.end());
    rows.push_back(header);
    std::vector<std::string> all{"all", std::to_string(summary.count)};
    for (const auto& m : metrics) all.push_back(fixed(summary.means.at(m)));
    rows.push_back(all);
    for (const auto& [key, cells] : summary.breakdowns) {
      for (const auto& c : cells) {
        std::vector<std::string> r{key + "=" + c.label, std::to_string(c.count)};
        for (const auto& m : metrics) r.push_back(fixed(c.means.at(m)));
        rows.push_back(r);
      }
    }
    table(rows);
    out << '\n';
  }
  return out.str();
}

std::string gold_generation_text(const TaskRecord& record) { return record.gold.text; }

}  // namespace gridbench
