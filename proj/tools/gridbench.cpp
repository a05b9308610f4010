#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "gridbench/dataset.hpp"
#include "gridbench/eval.hpp"
#include "gridbench/scoring.hpp"
#include "gridbench/stats.hpp"

using namespace gridbench;

namespace {

// Options shared by `gen` and `render`; unset options keep the task's
// defaults.
struct SpecOptions {
  std::string task = "nav_follower";
  std::uint64_t seed = 0;
  std::string shots, mode, dim, format, style, adjacency, heading_policy;
  int distractors = 4;
  int half_width = 20;
  int max_steps = 8;
  bool with_reasoning = false;
  CLI::Option* distractors_opt = nullptr;
  CLI::Option* half_width_opt = nullptr;
  CLI::Option* max_steps_opt = nullptr;

  void attach(CLI::App* app) {
    std::vector<std::string> tasks;
    for (Task t : kAllTasks) tasks.emplace_back(to_string(t));
    app->add_option("-t,--task", task, "task family")->check(CLI::IsMember(tasks));
    app->add_option("--seed", seed, "dataset seed");
    app->add_option("--shots", shots, "prompting mode")->check(CLI::IsMember({"zero", "one", "few"}));
    app->add_option("--mode", mode, "navigation frame")->check(CLI::IsMember({"cardinal", "egocentric"}));
    app->add_option("--dim", dim, "dimensionality")->check(CLI::IsMember({"2d", "3d"}));
    app->add_option("--format,--representation", format, "block serialization for structures")
        ->check(CLI::IsMember({"plain", "dict", "set", "text"}));
    app->add_option("--style", style, "structure style (default: cycle all three)")
        ->check(CLI::IsMember({"simple", "cohesive", "composite"}));
    app->add_option("--adjacency", adjacency, "distractor placement")->check(CLI::IsMember({"adjacent", "random"}));
    app->add_option("--heading-policy", heading_policy, "viewer heading for localization")
        ->check(CLI::IsMember({"sampled", "plus-y", "face-reference"}));
    distractors_opt = app->add_option("--distractors", distractors, "distractor blocks per scene");
    half_width_opt = app->add_option("--half-width", half_width, "coordinates lie in [-w, w]");
    max_steps_opt = app->add_option("--max-steps", max_steps, "longest combo path");
    app->add_flag("--with-reasoning", with_reasoning, "attach a worked reasoning trace to each record");
  }

  TaskSpec build() const {
    TaskSpec s = default_spec(*parse_task(task), seed);
    if (!shots.empty()) s.shots = *parse_shot_mode(shots);
    if (!mode.empty()) s.mode = *parse_frame_mode(mode);
    if (!dim.empty()) s.dimensionality = *parse_dimensionality(dim);
    if (!format.empty()) s.format = *parse_block_format(format);
    if (!style.empty()) s.style = parse_structure_style(style);
    if (!adjacency.empty()) s.adjacency = *parse_adjacency(adjacency);
    if (!heading_policy.empty()) s.heading_policy = *parse_heading_policy(heading_policy);
    if (distractors_opt->count() > 0) {
      s.distractors = distractors;
      s.combo_distractors = distractors;
    }
    if (half_width_opt->count() > 0) s.half_width = half_width;
    if (max_steps_opt->count() > 0) s.combo_max_steps = max_steps;
    s.with_reasoning = with_reasoning;
    check_spec(s);
    return s;
  }
};

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

void emit_dataset(const std::vector<TaskRecord>& records, const std::string& path) {
  if (path.empty() || path == "-") {
    write_dataset(records, std::cout);
  } else {
    write_dataset(records, std::filesystem::path(path));
    std::cerr << "wrote " << records.size() << " records to " << path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid spatial-reasoning task generator, evaluator and scorer"};
  app.require_subcommand(1);

  SpecOptions gen_opts;
  std::size_t gen_size = 100;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a dataset");
  gen_opts.attach(gen);
  gen->add_option("-n,--size", gen_size, "number of records");
  gen->add_option("-o,--output", gen_out, "output JSONL (default stdout)");

  std::string stats_in;
  bool stats_json = false;
  auto* stats = app.add_subcommand("stats", "distribution report for a dataset");
  stats->add_option("-i,--input", stats_in, "dataset JSONL")->required()->check(CLI::ExistingFile);
  stats->add_flag("--json", stats_json, "print JSON instead of text");

  SpecOptions render_opts;
  std::string render_in, render_id;
  std::size_t render_index = 0;
  bool render_gold = false;
  auto* render = app.add_subcommand("render", "print one record's prompt");
  render_opts.attach(render);
  render->add_option("-i,--input", render_in, "read the record from a dataset instead of generating it")
      ->check(CLI::ExistingFile);
  render->add_option("--index", render_index, "record index");
  render->add_option("--id", render_id, "record id (with --input)");
  render->add_flag("--gold", render_gold, "also print the gold answer and reasoning");

  std::string eval_in, eval_config, eval_out;
  auto* eval = app.add_subcommand("eval", "query a model for every record");
  eval->add_option("-i,--input", eval_in, "dataset JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("-c,--config", eval_config, "client config JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("-o,--output", eval_out, "generations JSONL")->required();

  std::string score_gens, score_data, score_report, score_table;
  std::vector<std::string> score_keys = kDefaultBreakdownKeys;
  auto* score = app.add_subcommand("score", "score generations against a dataset");
  score->add_option("-g,--generations", score_gens, "generations JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("-d,--dataset", score_data, "dataset JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("-r,--report", score_report, "JSON report path")->required();
  score->add_option("--table", score_table, "text table path (default stdout)");
  score->add_option("--breakdown", score_keys, "metadata keys to break down by")->delimiter(',');

  std::size_t combo_size = 100;
  std::uint64_t combo_seed = 0;
  int combo_steps = 8, combo_distractors = 8;
  std::string combo_out;
  auto* combo = app.add_subcommand("combo", "generate a navigation + structure localization set");
  combo->add_option("-n,--size", combo_size, "number of records");
  combo->add_option("--seed", combo_seed, "dataset seed");
  combo->add_option("--max-steps", combo_steps, "longest path");
  combo->add_option("--distractors", combo_distractors, "distractor blocks");
  combo->add_option("-o,--output", combo_out, "output JSONL (default stdout)");

  std::string gold_in, gold_out;
  auto* gold = app.add_subcommand("gold", "write gold answers as a generations file");
  gold->add_option("-i,--input", gold_in, "dataset JSONL")->required()->check(CLI::ExistingFile);
  gold->add_option("-o,--output", gold_out, "generations JSONL (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      emit_dataset(generate_dataset(gen_opts.build(), gen_size), gen_out);
    } else if (stats->parsed()) {
      const auto report = dataset_stats(read_dataset(std::filesystem::path(stats_in)));
      std::cout << (stats_json ? report.dump(2) + "\n" : render_stats(report));
    } else if (render->parsed()) {
      TaskRecord record;
      if (!render_in.empty()) {
        const auto records = read_dataset(std::filesystem::path(render_in));
        auto it = records.end();
        if (!render_id.empty()) {
          it = std::find_if(records.begin(), records.end(), [&](const TaskRecord& r) { return r.id == render_id; });
        } else if (render_index < records.size()) {
          it = records.begin() + static_cast<std::ptrdiff_t>(render_index);
        }
        if (it == records.end()) throw std::invalid_argument("no such record");
        record = *it;
      } else {
        TaskSpec spec = render_opts.build();
        spec.with_reasoning = spec.with_reasoning || render_gold;
        record = generate_record(spec, render_index);
      }
      std::cout << record.prompt << '\n';
      if (render_gold) {
        std::cout << "\n--- gold: " << record.gold.text << '\n';
        if (record.reasoning) std::cout << "--- reasoning:\n" << *record.reasoning << '\n';
      }
    } else if (eval->parsed()) {
      const auto config = ModelClientConfig::load(eval_config);
      const auto records = read_dataset(std::filesystem::path(eval_in));
      const auto gens = run_eval(records, config);
      write_generations(gens, std::filesystem::path(eval_out));
      const auto failed = std::count_if(gens.begin(), gens.end(), [](const Generation& g) { return g.error; });
      std::cerr << "wrote " << gens.size() << " generations (" << failed << " failed) to " << eval_out << '\n';
    } else if (score->parsed()) {
      const auto report = score_dataset(read_generations(std::filesystem::path(score_gens)),
                                        read_dataset(std::filesystem::path(score_data)), score_keys);
      write_or_print(score_report, to_json(report).dump(2) + "\n");
      write_or_print(score_table, render_table(report));
    } else if (combo->parsed()) {
      TaskSpec spec = default_spec(Task::Combo, combo_seed);
      spec.combo_max_steps = combo_steps;
      spec.combo_distractors = combo_distractors;
      check_spec(spec);
      emit_dataset(generate_dataset(spec, combo_size), combo_out);
    } else if (gold->parsed()) {
      const auto records = read_dataset(std::filesystem::path(gold_in));
      std::vector<Generation> gens;
      for (const auto& r : records) gens.push_back({r.id, gold_generation_text(r), std::nullopt});
      if (gold_out.empty()) {
        write_generations(gens, std::cout);
      } else {
        write_generations(gens, std::filesystem::path(gold_out));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
