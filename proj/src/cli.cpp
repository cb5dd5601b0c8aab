#include "gga/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gga/config_json.hpp"
#include "gga/document.hpp"
#include "gga/errors.hpp"
#include "gga/experiments.hpp"
#include "gga/io.hpp"

namespace gga::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandSpec {
  std::string subcommand;
  std::string config_path;
  std::string output_dir = ".";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

Document resolve(const CommandSpec& cmd) {
  json j = load_json(cmd.config_path);
  for (const auto& o : cmd.overrides) apply_override(j, o);
  if (cmd.seed) apply_override(j, "core.seed=" + std::to_string(*cmd.seed));
  if (cmd.jobs) apply_override(j, "experiment.jobs=" + std::to_string(*cmd.jobs));
  return document_from_json(j);
}

EnsembleOptions ensemble_options(const Document& doc) {
  EnsembleOptions o;
  o.n_runs = doc.experiment.n_runs;
  o.base_seed = doc.evolution.seed;
  o.jobs = doc.experiment.jobs;
  return o;
}

std::optional<ChaseSpec> chase_for(const Document& doc) {
  if (doc.objective.name != "perturbed_rastrigin") return std::nullopt;
  ChaseSpec chase;
  chase.perturbation_center = perturbation_from_json(doc.objective.params).center;
  chase.radius = doc.experiment.chase_radius;
  return chase;
}

json label_counts(const EnsembleResult& ens) {
  std::map<std::string, int> counts{{"PerturbationPeak", 0}, {"RastriginPeak", 0}, {"Neither", 0}};
  for (ChaseLabel l : ens.final_labels()) ++counts[std::string(to_string(l))];
  return counts;
}

json ensemble_summary(const EnsembleResult& ens) {
  json s = {{"variant", std::string(to_string(ens.variant))},
            {"n_runs", ens.n_runs},
            {"base_seed", ens.base_seed},
            {"final_mean_best_fitness", ens.final_mean()},
            {"final_stderr_best_fitness", ens.final_stderr()}};
  if (!ens.labels.empty()) s["final_labels"] = label_counts(ens);
  return s;
}

void write_summary(const fs::path& dir, const Document& doc, json results) {
  json summary = {{"config", to_json(doc)}, {"results", std::move(results)}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
}

int do_run(const CommandSpec& cmd, std::ostream& out) {
  const Document doc = resolve(cmd);
  EnsembleOptions opts = ensemble_options(doc);
  opts.chase = chase_for(doc);
  const EnsembleResult ens = run_ensemble(doc.evolution, doc.make_objective(), opts);

  const fs::path dir(cmd.output_dir);
  write_history_csv(ens, dir / "history.csv");
  json results = ensemble_summary(ens);
  results["config_digest"] = config_digest(doc.evolution);
  write_summary(dir, doc, results);
  out << to_string(ens.variant) << " on " << doc.objective.name << ": " << ens.n_runs
      << " runs, final mean best fitness " << format_number(ens.final_mean()) << " +/- "
      << format_number(ens.final_stderr()) << "\n";
  return kOk;
}

int do_sweep(const CommandSpec& cmd, std::ostream& out) {
  const Document doc = resolve(cmd);
  if (doc.objective.name != "perturbed_rastrigin")
    throw ConfigError("sweep requires objective.name = perturbed_rastrigin");
  if (doc.experiment.lambda_grid.empty()) throw ConfigError("experiment.lambda_grid is empty");
  EnsembleOptions opts = ensemble_options(doc);
  opts.chase = chase_for(doc);
  const BifurcationReport report =
      bifurcation_sweep(doc.evolution, perturbation_from_json(doc.objective.params),
                        doc.experiment.lambda_grid, opts);

  const fs::path dir(cmd.output_dir);
  write_bifurcation_csv(report, dir / "bifurcation.csv");
  json points = json::array();
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i)
    points.push_back({{"lambda", report.lambda_grid[i]},
                      {"switch_fraction", report.switch_fraction[i]},
                      {"stderr", report.standard_error(i)},
                      {"final_mean_best_fitness", report.ensembles[i].final_mean()}});
  json results = {{"variant", std::string(to_string(doc.evolution.variant))},
                  {"bifurcation_lambda", report.bifurcation_lambda
                                             ? json(*report.bifurcation_lambda)
                                             : json(nullptr)},
                  {"non_decreasing_within_2se", switch_fraction_non_decreasing(report)},
                  {"points", points}};
  write_summary(dir, doc, results);
  out << "bifurcation lambda: "
      << (report.bifurcation_lambda ? format_number(*report.bifurcation_lambda) : "none") << "\n";
  return kOk;
}

int do_compare(const CommandSpec& cmd, std::ostream& out) {
  const Document doc = resolve(cmd);
  EnsembleOptions opts = ensemble_options(doc);
  opts.chase = chase_for(doc);
  const ComparisonTable table =
      compare_variants(doc.make_objective(), doc.experiment.variants, doc.evolution, opts);

  const fs::path dir(cmd.output_dir);
  std::string csv = "variant,mean_final_best_fitness,stderr_final_best_fitness,n_runs\n";
  json rows = json::array();
  for (const auto& row : table.rows) {
    const std::string name(to_string(row.variant));
    csv += name + "," + format_number(row.final_mean()) + "," +
           format_number(row.final_stderr()) + "," + std::to_string(row.n_runs) + "\n";
    write_history_csv(row, dir / ("history_" + name + ".csv"));
    rows.push_back(ensemble_summary(row));
  }
  write_text(dir / "compare.csv", csv);
  json tests = json::array();
  for (const auto& t : table.tests)
    tests.push_back({{"a", std::string(to_string(t.a))},
                     {"b", std::string(to_string(t.b))},
                     {"z", t.z},
                     {"a_greater_at_99", t.a_greater}});
  write_summary(dir, doc, {{"variants", rows}, {"pairwise", tests}});
  out << csv;
  return kOk;
}

int do_meta(const CommandSpec& cmd, std::ostream& out) {
  const Document doc = resolve(cmd);
  MetaConfig meta = doc.experiment.meta;
  meta.jobs = doc.experiment.jobs;
  const MetaResult r = meta_optimize(doc.evolution, meta, doc.evolution.seed);

  const fs::path dir(cmd.output_dir);
  CsvTable outer;
  outer.header = {"generation", "best_meta_fitness", "mean_meta_fitness"};
  for (const auto& rec : r.outer_history.records)
    outer.rows.push_back({static_cast<double>(rec.t), rec.best_fitness, rec.mean_fitness});
  write_text(dir / "meta_history.csv", outer.to_string());

  json results = {{"p_f0", r.best.p_f0},
                  {"p_m0", r.best.p_m0},
                  {"a_f", r.best.a_f},
                  {"a_m", r.best.a_m},
                  {"inner_mean_final_best_fitness", r.inner.mean},
                  {"inner_stderr", r.inner.std_error}};
  write_summary(dir, doc, results);
  out << "p_f0=" << format_number(r.best.p_f0) << " p_m0=" << format_number(r.best.p_m0)
      << " a_f=" << format_number(r.best.a_f) << " a_m=" << format_number(r.best.a_m) << "\n";
  return kOk;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Gender genetic algorithms with lifetime learning"};
  app.require_subcommand(0, 1);
  bool dump_defaults = false;
  app.add_flag("--dump-defaults", dump_defaults, "Print the default configuration and exit");

  CommandSpec cmd;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", cmd.config_path, "Configuration document (JSON)")->required();
    sub->add_option("-o,--output", cmd.output_dir, "Output directory");
    sub->add_option("--set", cmd.overrides, "Override, e.g. engine.variant=GGA")
        ->allow_extra_args(false);
    sub->add_option("--seed", cmd.seed, "Override core.seed");
    sub->add_option("-j,--jobs", cmd.jobs, "Maximum concurrent runs")
        ->check(CLI::PositiveNumber);
  };
  for (const char* name : {"run", "sweep", "compare", "meta"}) {
    static const std::map<std::string, std::string> help{
        {"run", "Ensemble of one variant on one objective"},
        {"sweep", "Bifurcation sweep over the perturbation decay rate"},
        {"compare", "Ensemble per variant with pairwise tests"},
        {"meta", "Meta-optimize the mutation schedule"}};
    add_common(app.add_subcommand(name, help.at(name)));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (dump_defaults) {
    out << defaults_json().dump(2) << "\n";
    return kOk;
  }
  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << app.help();
    return kUsage;
  }
  cmd.subcommand = subs.front()->get_name();

  try {
    std::error_code ec;
    fs::create_directories(cmd.output_dir, ec);
    if (ec) {
      err << "error: cannot create output directory '" << cmd.output_dir << "': " << ec.message()
          << "\n";
      return kIo;
    }
    if (cmd.subcommand == "run") return do_run(cmd, out);
    if (cmd.subcommand == "sweep") return do_sweep(cmd, out);
    if (cmd.subcommand == "compare") return do_compare(cmd, out);
    return do_meta(cmd, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kEvaluation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace gga::cli
