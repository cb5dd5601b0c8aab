#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "gga/cli.hpp"
#include "gga/document.hpp"
#include "gga/errors.hpp"
#include "gga/io.hpp"

using namespace gga;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("gga_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int invoke(std::vector<std::string> args, std::string* out_text = nullptr,
           std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

fs::path small_config(const fs::path& dir) {
  const fs::path p = dir / "c.json";
  write_text(p, R"({
  "core": {"population_size": 20, "max_generation": 15},
  "objective": {"name": "perturbed_rastrigin", "params": {"decay": 0.5}},
  "experiment": {"n_runs": 6, "lambda_grid": [0.1, 1.2]}
})");
  return p;
}

}  // namespace

TEST_CASE("run writes history and summary; reruns are byte-identical") {
  TempDir tmp("run");
  const auto cfg = small_config(tmp.path);
  const auto a = tmp.path / "a", b = tmp.path / "b";
  REQUIRE(invoke({"run", "--config", cfg.string(), "--seed", "42", "-o", a.string()}) == 0);
  REQUIRE(invoke({"run", "--config", cfg.string(), "--seed", "42", "-o", b.string(), "--jobs",
                  "3"}) == 0);
  const std::string ha = read_text(a / "history.csv");
  CHECK(ha == read_text(b / "history.csv"));

  const CsvTable table = CsvTable::parse(ha);
  CHECK(table.header == std::vector<std::string>{"generation", "mean_best_fitness",
                                                 "stderr_best_fitness", "mean_best_x",
                                                 "mean_best_y"});
  REQUIRE(table.rows.size() == 16);
  for (std::size_t t = 0; t < 16; ++t) CHECK(table.rows[t][0] == static_cast<double>(t));
  CHECK(table.to_string() == ha);
  CHECK(ha.back() == '\n');
  CHECK(std::count(ha.begin(), ha.end(), '\n') == 17);

  const auto summary = load_json(a / "summary.json");
  CHECK(summary["config"]["core"]["seed"] == 42);
  CHECK(summary["results"]["variant"] == "BGGA");
}

TEST_CASE("override reaches the summary") {
  TempDir tmp("override");
  const auto cfg = small_config(tmp.path);
  REQUIRE(invoke({"run", "-c", cfg.string(), "-o", tmp.path.string(), "--set",
                  "engine.variant=GGA"}) == 0);
  CHECK(load_json(tmp.path / "summary.json")["results"]["variant"] == "GGA");
}

TEST_CASE("sweep writes the bifurcation table") {
  TempDir tmp("sweep");
  const auto cfg = small_config(tmp.path);
  REQUIRE(invoke({"sweep", "-c", cfg.string(), "-o", tmp.path.string()}) == 0);
  const std::string text = read_text(tmp.path / "bifurcation.csv");
  const CsvTable t = CsvTable::parse(text);
  CHECK(t.header == std::vector<std::string>{"lambda", "switch_fraction", "n_runs"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] < t.rows[1][0]);
  CHECK(t.rows[0][2] == 6);
  CHECK(t.to_string() == text);
  CHECK(load_json(tmp.path / "summary.json")["results"].contains("bifurcation_lambda"));
}

TEST_CASE("compare and meta subcommands") {
  TempDir tmp("cmpmeta");
  const auto cfg = small_config(tmp.path);
  std::string out;
  REQUIRE(invoke({"compare", "-c", cfg.string(), "-o", tmp.path.string()}, &out) == 0);
  CHECK(out.find("BGGA,") != std::string::npos);
  CHECK(fs::exists(tmp.path / "history_LGGA.csv"));
  REQUIRE(invoke({"meta", "-c", cfg.string(), "-o", tmp.path.string(), "--set",
                  "experiment.meta.inner_runs=2", "--set", "experiment.meta.generations=2",
                  "--set", "experiment.meta.population_size=4"}) == 0);
  CHECK(load_json(tmp.path / "summary.json")["results"].contains("a_m"));
}

TEST_CASE("diagnostics and exit codes") {
  TempDir tmp("errors");
  std::string err;
  CHECK(invoke({"run", "-c", (tmp.path / "missing.json").string()}, nullptr, &err) ==
        cli::kConfig);
  CHECK(err.find("missing.json") != std::string::npos);

  const auto cfg = small_config(tmp.path);
  CHECK(invoke({"run", "-c", cfg.string(), "-o", tmp.path.string(), "--set",
                "operators.mutaton_sigma=0.1"},
               nullptr, &err) == cli::kConfig);
  CHECK(err.find("mutaton_sigma") != std::string::npos);

  CHECK(invoke({"launch"}) == cli::kUsage);
  CHECK(invoke({}) == cli::kUsage);

  std::string defaults;
  CHECK(invoke({"--dump-defaults"}, &defaults) == 0);
  const auto j = nlohmann::json::parse(defaults);
  CHECK(j["objective"]["params"]["amplitude"] == 2.0);
  CHECK_NOTHROW(document_from_json(j));
}

TEST_CASE("apply_override") {
  nlohmann::json j = nlohmann::json::object();
  apply_override(j, "engine.variant=LGGA");
  apply_override(j, "core.population_size=12");
  apply_override(j, "experiment.lambda_grid=[0.2,0.4]");
  CHECK(j["engine"]["variant"] == "LGGA");
  CHECK(j["core"]["population_size"] == 12);
  CHECK(j["experiment"]["lambda_grid"].size() == 2);
  CHECK_THROWS_AS(apply_override(j, "novalue"), ConfigError);
}
