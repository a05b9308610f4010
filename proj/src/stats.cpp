#include "gridbench/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "gridbench/dataset.hpp"

namespace gridbench {

using nlohmann::json;

namespace {

class Histogram {
 public:
  void add(const std::string& key, std::size_t n = 1) {
    counts_[key] += n;
    total_ += n;
  }
  json counts() const { return counts_; }
  json shares() const {
    json out = json::object();
    for (const auto& [k, v] : counts_) out[k] = total_ == 0 ? 0.0 : static_cast<double>(v) / static_cast<double>(total_);
    return out;
  }
  json both() const { return {{"counts", counts()}, {"shares", shares()}}; }

 private:
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

struct Summary {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
  void add(double v) {
    min = n == 0 ? v : std::min(min, v);
    max = n == 0 ? v : std::max(max, v);
    sum += v;
    ++n;
  }
  json to_json() const {
    return {{"count", n}, {"mean", n == 0 ? 0.0 : sum / static_cast<double>(n)}, {"min", min}, {"max", max}};
  }
};

void add_relations(const RelationSet& gold, Histogram& sizes, Histogram& relations) {
  sizes.add(std::to_string(gold.size()));
  for (Relation r : gold.items()) relations.add(std::string(to_string(r)));
}

json nav_stats(std::span<const TaskRecord> records) {
  Histogram directions, lengths, compass;
  Summary step_length;
  // Steps after the first that are not Forward, i.e. a turn for an
  // egocentric walker.
  std::size_t transitions = 0, non_forward = 0;
  for (const auto& r : records) {
    const NavInstance inst = nav_instance_of(r);
    lengths.add(std::to_string(inst.path.steps.size()));
    for (std::size_t i = 1; i < inst.path.steps.size(); ++i) {
      ++transitions;
      non_forward += inst.path.steps[i].direction != MoveDirection::Forward;
    }
    for (const Step& s : inst.path.steps) {
      directions.add(std::string(to_string(s.direction)));
      step_length.add(s.length);
    }
    if (r.task == Task::Card2Ego) {
      for (const auto& c : compass_path_of(r)) compass.add(std::string(to_string(c.compass)));
    }
  }
  json out{{"directions", directions.both()},
           {"path_lengths", lengths.both()},
           {"step_length", step_length.to_json()},
           {"direction_changes",
            {{"transitions", transitions},
             {"non_forward", non_forward},
             {"share", transitions == 0 ? 0.0 : static_cast<double>(non_forward) / static_cast<double>(transitions)}}}};
  if (!records.empty() && records.front().task == Task::Card2Ego) out["compass_directions"] = compass.both();
  return out;
}

json ol_stats(std::span<const TaskRecord> records) {
  Histogram sizes, relations, headings;
  for (const auto& r : records) {
    add_relations(std::get<RelationSet>(r.gold.value), sizes, relations);
    headings.add(r.metadata.value("heading", std::string("n/a")));
  }
  return {{"relation_counts", sizes.both()}, {"relations", relations.both()}, {"headings", headings.both()}};
}

json structure_stats(std::span<const TaskRecord> records) {
  Histogram shapes, colors, relations, styles;
  Summary blocks;
  for (const auto& r : records) {
    const Structure s = structure_of(r);
    blocks.add(static_cast<double>(s.blocks.size()));
    styles.add(std::string(to_string(s.style)));
    for (const Shape& shape : s.shapes) shapes.add(std::string(to_string(shape.kind)));
    std::map<BlockColor, std::size_t> per_color;
    for (const auto& b : s.blocks) ++per_color[b.color];
    for (const auto& [c, n] : per_color) colors.add(std::string(to_string(c)));
    for (Relation rel : s.gold_terms.relations.items()) relations.add(std::string(to_string(rel)));
  }
  return {{"block_count", blocks.to_json()},
          {"styles", styles.both()},
          {"shapes", shapes.both()},
          {"colors", colors.both()},
          {"relations", relations.both()}};
}

json combo_stats(std::span<const TaskRecord> records) {
  Histogram sizes, relations, lengths, kinds, headings;
  for (const auto& r : records) {
    const ComboInstance c = combo_of(r);
    add_relations(c.gold, sizes, relations);
    lengths.add(std::to_string(c.path.steps.size()));
    kinds.add(std::string(to_string(c.target.kind)) + "/" + std::string(to_string(c.reference.kind)));
    headings.add(std::string(to_string(c.final.heading)));
  }
  return {{"relation_counts", sizes.both()},
          {"relations", relations.both()},
          {"path_lengths", lengths.both()},
          {"shape_pairs", kinds.both()},
          {"headings", headings.both()}};
}

void render(const json& j, const std::string& indent, std::ostringstream& out) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << indent << k << ":\n";
      render(v, indent + "  ", out);
    } else if (v.is_number_float()) {
      out << indent << k << ": " << std::fixed << std::setprecision(3) << v.get<double>() << '\n';
    } else {
      out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

}  // namespace

json dataset_stats(std::span<const TaskRecord> records) {
  if (records.empty()) return json::object();
  const Task task = records.front().task;
  for (const auto& r : records) {
    if (r.task != task) throw std::invalid_argument("stats need a single-task dataset; found " +
                                                    std::string(to_string(task)) + " and " +
                                                    std::string(to_string(r.task)));
  }
  json out;
  switch (task) {
    case Task::NavFollower:
    case Task::NavInstructor:
    case Task::Card2Ego: out = nav_stats(records); break;
    case Task::OLEgo:
    case Task::OLAllo: out = ol_stats(records); break;
    case Task::StructDesc: out = structure_stats(records); break;
    case Task::Combo: out = combo_stats(records); break;
  }
  out["task"] = to_string(task);
  out["records"] = records.size();
  return out;
}

std::string render_stats(const json& stats) {
  std::ostringstream out;
  render(stats, "", out);
  return out.str();
}

}  // namespace gridbench
