// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. `--smoke` runs the ensemble criteria at 50 runs instead of 500.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "gga/cli.hpp"
#include "gga/engine.hpp"
#include "gga/experiments.hpp"
#include "gga/io.hpp"
#include "gga/learning.hpp"
#include "oracles.hpp"

using namespace gga;

namespace {

int failures = 0;
int full_runs = 500;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

RealVector pt(double x, double y) { return RealVector{{x, y}}; }

double rel_matrix_error(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, a.norm());
}

// 1. One Newton step lands on the optimum of random concave quadratics.
void newton_exactness() {
  const auto start = Clock::now();
  RandomSource rng(101);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix b(2, 2);
    for (int i = 0; i < 4; ++i) b(i / 2, i % 2) = -1 + 2 * rng.uniform();
    const Matrix a = b * b.transpose() + 0.05 * Matrix::Identity(2, 2);
    const RealVector m = pt(-5 + 10 * rng.uniform(), -5 + 10 * rng.uniform());
    const RealVector x = pt(-5 + 10 * rng.uniform(), -5 + 10 * rng.uniform());
    const ObjectiveSpec f = concave_quadratic(m, a);
    const NewtonResult r = newton_step(x, derivatives(f, x, 0, 1, 1e-5));
    worst = std::max(worst, r.stepped ? (r.point - m).norm() : INFINITY);
  }
  const double secs = seconds_since(start);
  report("C1", "Newton exactness", worst < 1e-9 && secs < 1.0,
         fmt("max error %.3e (< 1e-9), %.3f s (< 1 s)", worst, secs));
}

// 2. Rastrigin value, high-precision agreement, grid maximum.
void rastrigin_correctness() {
  const auto start = Clock::now();
  const bool origin = rastrigin(pt(0, 0)) == 0.0;
  RandomSource rng(202);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -5.12 + 10.24 * rng.uniform(), y = -5.12 + 10.24 * rng.uniform();
    const long double ref = oracle::rastrigin_ld(x, y);
    const double err = static_cast<double>(std::fabs(rastrigin(pt(x, y)) - ref) /
                                           std::max(1.0L, std::fabs(ref)));
    worst = std::max(worst, err);
  }
  double best = -INFINITY;
  int bi = -1, bj = -1;
  for (int i = 0; i <= 1000; ++i)
    for (int j = 0; j <= 1000; ++j) {
      const double v = rastrigin(pt(-5.12 + 0.01024 * i, -5.12 + 0.01024 * j));
      if (v > best) best = v, bi = i, bj = j;
    }
  const double secs = seconds_since(start);
  const bool pass = origin && worst <= 1e-12 && bi == 500 && bj == 500 && secs < 10.0;
  report("C2", "Rastrigin correctness", pass,
         fmt("f(0,0)==0: %.0f, max rel err %.3e (<= 1e-12), grid argmax index (%.0f, %.0f)",
             origin, worst, bi, bj) +
             fmt(", %.2f s (< 10 s)", secs));
}

// 3. Analytic derivatives vs central differences for the three fields.
void derivative_consistency() {
  const auto start = Clock::now();
  PerturbationParams p;
  p.decay = 0.6;
  const ObjectiveSpec rast = static_rastrigin();
  const ObjectiveSpec dyn = dynamic_objective(p);
  ObjectiveSpec bump;
  bump.dimension = 2;
  bump.evaluate = [p](const RealVector& x, int t, int tm) { return perturbation(x, t, tm, p); };
  bump.gradient = [p](const RealVector& x, int t, int tm) -> RealVector {
    return perturbation_grad(x, t, tm, p);
  };
  bump.hessian = [p](const RealVector& x, int t, int tm) -> Matrix {
    return perturbation_hess(x, t, tm, p);
  };

  RandomSource rng(303);
  double worst_g = 0, worst_h = 0;
  for (const ObjectiveSpec* f : std::vector<const ObjectiveSpec*>{&rast, &bump, &dyn}) {
    for (int i = 0; i < 100; ++i) {
      const RealVector x = pt(-1.5 + 3 * rng.uniform(), -0.5 + 2.5 * rng.uniform());
      const int t = static_cast<int>(rng.index(16));
      const RealVector g = (*f->gradient)(x, t, 15);
      const Matrix h = (*f->hessian)(x, t, 15);
      worst_g = std::max(worst_g, (g - fd_gradient(*f, x, t, 15, 1e-6)).norm() /
                                      std::max(1.0, g.norm()));
      worst_h = std::max(worst_h, rel_matrix_error(h, fd_hessian(*f, x, t, 15, 1e-4)));
    }
  }
  const double secs = seconds_since(start);
  report("C3", "Derivative consistency", worst_g < 1e-5 && worst_h < 1e-3 && secs < 1.0,
         fmt("gradient rel %.3e (< 1e-5), Hessian rel %.3e (< 1e-3), %.3f s", worst_g, worst_h,
             secs));
}

// 4. Mutation schedule law with the meta-learned parameters.
void schedule_law() {
  const MutationSchedule s{0.37, 0.36, 4.55, 3.57};
  double worst = 0;
  bool decreasing = true;
  for (int t = 0; t <= 15; ++t) {
    const MutationRates r = mutation_rates(t, 15, s);
    worst = std::max(worst, std::abs(r.p_f - 0.37 * std::exp(-4.55 * t / 15.0)));
    worst = std::max(worst, std::abs(r.p_m - 0.36 * std::exp(-3.57 * t / 15.0)));
    if (t > 0) {
      const MutationRates prev = mutation_rates(t - 1, 15, s);
      decreasing = decreasing && r.p_f < prev.p_f && r.p_m < prev.p_m;
    }
  }
  report("C4", "Schedule law", worst <= 1e-12 && decreasing,
         fmt("max abs deviation %.3e (<= 1e-12), strictly decreasing %.0f", worst, decreasing));
}

// 5. Gender split, roulette chi-square, crossover collinearity.
void operator_statistics() {
  EvolutionConfig c;
  c.population_size = 10000;
  RandomSource rng(505);
  Population pop = init_population(c, rng);
  assign_genders(pop, 0.5, rng);
  const double frac = static_cast<double>(pop.male_count()) / 10000.0;

  const SelectionWeights w{{0.25, 0.25, 0.5}};
  std::vector<long> counts(3, 0);
  for (int i = 0; i < 100000; ++i) ++counts[select_male(w, rng)];
  const double chi = oracle::chi_square(counts, w.probabilities);

  bool exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const RealVector x = pt(-5 + 10 * rng.uniform(), -5 + 10 * rng.uniform());
    const RealVector y = pt(-5 + 10 * rng.uniform(), -5 + 10 * rng.uniform());
    const std::vector<double> l{rng.uniform_open(0, 1), rng.uniform_open(0, 1)};
    for (CrossoverForm form : {CrossoverForm::Extrapolate, CrossoverForm::Convex}) {
      const RealVector z = blend(x, y, l, form);
      const double sign = form == CrossoverForm::Extrapolate ? 1.0 : -1.0;
      for (int k = 0; k < 2; ++k) exact = exact && (z[k] == x[k] + sign * l[k] * (x[k] - y[k]));
    }
  }
  report("C5", "Operator statistics",
         std::abs(frac - 0.5) <= 0.015 && chi < oracle::kChi2Df2At99 && exact,
         fmt("male fraction %.4f (0.5 +/- 0.015), chi2 %.3f (< %.3f), collinearity exact %.0f",
             frac, chi, oracle::kChi2Df2At99, exact));
}

bool same_records(const RunHistory& a, const RunHistory& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.best_fitness != y.best_fitness || x.best_point != y.best_point ||
        x.mean_fitness != y.mean_fitness || x.male_count != y.male_count)
      return false;
  }
  return true;
}

// 6. BGGA with learning disabled reproduces GGA bit for bit.
void variant_reduction() {
  bool all = true;
  PerturbationParams p;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EvolutionConfig bgga;
    bgga.variant = Variant::BGGA;
    bgga.learning_enabled = false;
    EvolutionConfig gga = bgga;
    gga.variant = Variant::GGA;
    RandomSource r1(seed), r2(seed);
    std::vector<RealVector> g1, g2;
    const RunHistory a = evolve(bgga, dynamic_objective(p), r1, [&](const Population& pop, auto&) {
      for (const auto& i : pop.members) g1.push_back(i.genotype);
    });
    const RunHistory b = evolve(gga, dynamic_objective(p), r2, [&](const Population& pop, auto&) {
      for (const auto& i : pop.members) g2.push_back(i.genotype);
    });
    all = all && same_records(a, b) && g1 == g2 && a.records.size() == 16;
  }
  report("C6", "Variant reduction", all, fmt("10 seeds x 15 generations bit-identical: %.0f", all));
}

// 7. Baldwin never writes back; Lamarck always does.
void baldwin_lamarck() {
  PerturbationParams p;
  std::size_t baldwin_steps = 0, baldwin_violations = 0, lamarck_checked = 0,
              lamarck_violations = 0;
  for (Variant v : {Variant::BGGA, Variant::LGGA}) {
    EvolutionConfig c;
    c.variant = v;
    RandomSource rng(707);
    evolve(c, dynamic_objective(p), rng, [&](const Population& pop, auto&) {
      for (const auto& ind : pop.members) {
        if (v == Variant::BGGA) {
          if (*ind.learned_fitness > *ind.raw_fitness) {
            ++baldwin_steps;
            if (ind.genotype == *ind.learned_phenotype) ++baldwin_violations;
          }
        } else {
          ++lamarck_checked;
          if (ind.genotype != *ind.learned_phenotype) ++lamarck_violations;
        }
      }
    });
  }
  report("C7", "Baldwin immutability / Lamarck write-back",
         baldwin_steps > 0 && baldwin_violations == 0 && lamarck_violations == 0,
         fmt("BGGA steps %.0f with %.0f write-backs; LGGA %.0f individuals with %.0f mismatches",
             static_cast<double>(baldwin_steps), static_cast<double>(baldwin_violations),
             static_cast<double>(lamarck_checked), static_cast<double>(lamarck_violations)));
}

// 8. Static Rastrigin: BGGA beats plain GA; BGGA vs LGGA recorded only.
void static_superiority() {
  const auto start = Clock::now();
  EvolutionConfig shared;
  EnsembleOptions o;
  o.n_runs = full_runs;
  o.base_seed = 808;
  const std::vector<Variant> variants{Variant::BGGA, Variant::GA, Variant::LGGA};
  const ComparisonTable t = compare_variants(static_rastrigin(), variants, shared, o);
  const auto& bgga = t.rows[0];
  const auto& ga = t.rows[1];
  const auto& lgga = t.rows[2];
  const double z = z_statistic({bgga.final_mean(), bgga.final_stderr()},
                               {ga.final_mean(), ga.final_stderr()});
  const double z_bl = z_statistic({bgga.final_mean(), bgga.final_stderr()},
                                  {lgga.final_mean(), lgga.final_stderr()});
  const double secs = seconds_since(start);
  report("C8", "Static superiority ordering", z > kZ99 && secs < 120.0,
         fmt("BGGA %.5f vs GA %.5f, z = %.2f (> 2.326)", bgga.final_mean(), ga.final_mean(), z) +
             fmt("; BGGA-LGGA z = %.2f (recorded), n=%.0f, %.1f s", z_bl, full_runs, secs));
}

// 9. Dynamic tracking and bifurcation on the perturbed landscape.
void dynamic_bifurcation() {
  const auto start = Clock::now();
  PerturbationParams base;
  base.amplitude = 2.0;
  base.sigma2 = 1.0 / 40.0;
  base.center = pt(0, 1);
  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i) grid.push_back(0.1 * i);
  EnsembleOptions o;
  o.n_runs = full_runs;
  o.base_seed = 909;

  auto majority = [](const EnsembleResult& e, ChaseLabel want) {
    std::size_t n = 0;
    for (ChaseLabel l : e.final_labels()) n += l == want ? 1 : 0;
    return 2 * n > e.final_labels().size();
  };

  std::optional<double> star[2];
  bool tracking = true, monotone = true;
  std::string detail;
  int idx = 0;
  for (Variant v : {Variant::BGGA, Variant::LGGA}) {
    EvolutionConfig c;
    c.variant = v;
    const BifurcationReport r = bifurcation_sweep(c, base, grid, o);
    const bool low = majority(r.ensembles.front(), ChaseLabel::PerturbationPeak);
    const bool high = majority(r.ensembles.back(), ChaseLabel::RastriginPeak);
    tracking = tracking && low && high;
    monotone = monotone && switch_fraction_non_decreasing(r, 2.0);
    star[idx++] = r.bifurcation_lambda;
    detail += std::string(to_string(v)) + " switch fractions [";
    for (std::size_t i = 0; i < r.switch_fraction.size(); ++i)
      detail += (i ? " " : "") + fmt("%.3f", r.switch_fraction[i]);
    detail += "] lambda* " + (r.bifurcation_lambda ? fmt("%.1f", *r.bifurcation_lambda) : "none") +
              "; ";
  }
  const bool ordered = star[0] && star[1] && *star[0] <= *star[1] + 1e-12;
  const double secs = seconds_since(start);
  const double budget = full_runs >= 500 ? 900.0 : 120.0;
  report("C9a", "Tracking: lambda=0.1 -> perturbation peak, lambda=1.2 -> Rastrigin peak",
         tracking, detail);
  report("C9b", "Switch fraction non-decreasing within 2 SE", monotone, "see C9a fractions");
  report("C9c", "lambda*(BGGA) <= lambda*(LGGA)", ordered && secs < budget,
         fmt("%.1f s (budget %.0f s)", secs, budget));
}

// 10. Meta-optimized schedule performs at least as well as the reference one.
void meta_sanity() {
  EvolutionConfig inner;
  inner.variant = Variant::GGA;
  MetaConfig meta;
  const MetaResult r = meta_optimize(inner, meta, 1010);
  const auto& b = meta.box;
  const auto in = [](double v, const Interval& iv) { return v >= iv.lo && v <= iv.hi; };
  const bool inside = in(r.best.p_f0, b.p_f0) && in(r.best.p_m0, b.p_m0) &&
                      in(r.best.a_f, b.a_f) && in(r.best.a_m, b.a_m);
  // Both schedules re-evaluated with the same fresh inner ensemble.
  const std::uint64_t eval_seed = 4242;
  const MeanStderr found = evaluate_schedule(inner, r.best, meta.inner_runs, eval_seed);
  const MeanStderr paper =
      evaluate_schedule(inner, {0.37, 0.36, 4.55, 3.57}, meta.inner_runs, eval_seed);
  const double combined = std::hypot(found.std_error, paper.std_error);
  const bool good = found.mean >= paper.mean - 2.0 * combined;
  report("C10", "Meta-optimization sanity", inside && good,
         fmt("found (%.3f, %.3f, %.3f, %.3f)", r.best.p_f0, r.best.p_m0, r.best.a_f, r.best.a_m) +
             fmt(" -> %.5f; reference -> %.5f; threshold %.5f", found.mean, paper.mean,
                 paper.mean - 2.0 * combined));
}

// 11. CLI `run` output is byte-identical across invocations and job counts.
void cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gga_acceptance_c11";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_text(dir / "c.json",
             "{\"objective\": {\"name\": \"perturbed_rastrigin\"}, \"experiment\": {\"n_runs\": 64}}");
  std::ostringstream sink;
  auto run = [&](const std::string& sub, const std::string& jobs) {
    return cli::parse_and_dispatch({"run", "--config", (dir / "c.json").string(), "--seed", "42",
                                    "--jobs", jobs, "-o", (dir / sub).string()},
                                   sink, sink);
  };
  const bool ok = run("a", "1") == 0 && run("b", "1") == 0 && run("c", "8") == 0;
  const std::string a = ok ? read_text(dir / "a" / "history.csv") : "";
  const bool same = ok && !a.empty() && a == read_text(dir / "b" / "history.csv") &&
                    a == read_text(dir / "c" / "history.csv");
  fs::remove_all(dir);
  report("C11", "End-to-end determinism", same,
         fmt("two --jobs 1 runs and one --jobs 8 run byte-identical: %.0f", same));
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--smoke") == 0) full_runs = 50;

  newton_exactness();
  rastrigin_correctness();
  derivative_consistency();
  schedule_law();
  operator_statistics();
  variant_reduction();
  baldwin_lamarck();
  static_superiority();
  dynamic_bifurcation();
  meta_sanity();
  cli_determinism();

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
