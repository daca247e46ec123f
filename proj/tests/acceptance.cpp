// Acceptance gate: one criterion per line, [PASS]/[FAIL], measured values
// inline. Run with no arguments for all twelve criteria, or pass criterion
// numbers to run a subset. --cli=PATH points at the rsc binary (criterion 12
// shells out to it). Exit code 0 iff every requested criterion passed.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rsc/collapse.hpp"
#include "rsc/complex.hpp"
#include "rsc/constants.hpp"
#include "rsc/harness.hpp"
#include "rsc/homology.hpp"
#include "rsc/rng.hpp"
#include "rsc/sampler.hpp"
#include "rsc/treeproc.hpp"
#include "test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;
std::string g_cli;

std::string fm(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

void report(const std::string& id, bool pass, double budget_s,
            double elapsed_s, const std::string& detail) {
  bool ok = pass;
  std::string line = detail;
  if (budget_s > 0.0 && elapsed_s >= budget_s) {
    ok = false;
    line += " [over budget: limit " + fm(budget_s) + "s]";
  }
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL",
              id.c_str(), line.c_str(), elapsed_s);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Threshold constants against their golden values, +-0.002.
void criterion_1() {
  const auto t0 = Clock::now();
  struct Row {
    const char* name;
    double got, want;
  };
  const Row rows[] = {{"c_2", rsc::solve_c_d(2), 2.783},
                      {"gamma_2", rsc::solve_gamma_d(2).gamma_d, 2.455},
                      {"gamma_3", rsc::solve_gamma_d(3).gamma_d, 3.089},
                      {"gamma_4", rsc::solve_gamma_d(4).gamma_d, 3.508},
                      {"gamma_100", rsc::solve_gamma_d(100).gamma_d, 7.555}};
  bool ok = true;
  std::ostringstream out;
  out << "golden constants within 0.002:";
  for (const Row& r : rows) {
    ok = ok && std::fabs(r.got - r.want) <= 0.002;
    out << ' ' << r.name << '=' << fm(r.got);
  }
  report("1", ok, 1.0, seconds_since(t0), out.str());
}

// 2. c_{d,2} = c_d to 1e-8 and gamma_d < c_d < d+1 for d = 2..10.
void criterion_2() {
  const auto t0 = Clock::now();
  bool ok = true;
  double max_gap = 0.0;
  for (std::int32_t d = 2; d <= 10; ++d) {
    const double c_d = rsc::solve_c_d(d);
    const double c_d2 = rsc::solve_c_d_ell(d, 2);
    const double gamma = rsc::solve_gamma_d(d).gamma_d;
    max_gap = std::max(max_gap, std::fabs(c_d2 - c_d));
    ok = ok && std::fabs(c_d2 - c_d) <= 1e-8 && gamma < c_d && c_d < d + 1;
  }
  report("2", ok, 1.0, seconds_since(t0),
         "c_{d,2} = c_d and gamma_d < c_d < d+1 for d=2..10 (max |c_{d,2}-c_d|=" +
             fm(max_gap) + ")");
}

// 3. Tree generating functions at z = 1/e, truncation 1e7.
void criterion_3() {
  const auto t0 = Clock::now();
  const std::int64_t terms = 10'000'000;
  const rsc::TreeGF gf = rsc::tree_gf(std::exp(-1.0), terms);
  const double residual = rsc::tilde_c1_residual(1.0, terms);
  const bool ok = gf.tail_bound <= 1e-3 &&
                  std::fabs(gf.r - 1.0) <= gf.tail_bound &&
                  std::fabs(gf.t - 0.5) <= gf.tail_bound &&
                  std::fabs(residual) <= gf.tail_bound;
  report("3", ok, 30.0, seconds_since(t0),
         "R(1/e)=" + fm(gf.r) + " T(1/e)=" + fm(gf.t) + " residual(1)=" +
             fm(residual) + " within tail bound " + fm(gf.tail_bound));
}

// 4. Collapse-probability recursion and its Monte Carlo estimator.
void criterion_4() {
  const auto t0 = Clock::now();
  bool monotone = true;
  rsc::SplitMix64 rng(4040);
  for (int rep = 0; rep < 100; ++rep) {
    const auto d = static_cast<std::int32_t>(1 + rng.next_below(6));
    const double gamma = 6.0 * rng.next_unit();
    const rsc::RhoCurve curve = rsc::rho_recursion(d, gamma, 40);
    for (std::size_t k = 1; k < curve.values.size(); ++k)
      monotone = monotone && curve.values[k] >= curve.values[k - 1] - 1e-12;
  }

  bool bracket = true;
  for (std::int32_t d : {2, 3, 4}) {
    const double gamma_d = rsc::solve_gamma_d(d).gamma_d;
    const double below = rsc::rho_recursion(d, gamma_d - 0.1, 1).fixed_point;
    const double above = rsc::rho_recursion(d, gamma_d + 0.1, 1).fixed_point;
    bracket = bracket && std::fabs(below - 1.0) <= 1e-6 && above < 1.0 - 1e-3;
  }

  int mc_ok = 0, mc_rows = 0;
  for (const double gamma : {1.0, 2.0, 3.0}) {
    const rsc::RhoCurve curve = rsc::rho_recursion(2, gamma, 5);
    for (std::int32_t k = 0; k <= 5; ++k) {
      const std::uint64_t seed =
          rsc::derive_trial_seed(404, static_cast<std::uint64_t>(mc_rows));
      const rsc::RhoEstimate est = rsc::estimate_rho(2, k, gamma, 10000, seed);
      const double rho = curve.values[static_cast<std::size_t>(k)];
      const double se = std::sqrt(rho * (1.0 - rho) / 10000.0);
      ++mc_rows;
      if (std::fabs(est.estimate - rho) <= 3.0 * se) ++mc_ok;
    }
  }

  std::ostringstream out;
  out << "recursion monotone (100 curves): " << (monotone ? "yes" : "NO")
      << "; fixed point brackets gamma_d (d=2,3,4): " << (bracket ? "yes" : "NO")
      << "; tree MC within 3se: " << mc_ok << "/" << mc_rows;
  report("4", monotone && bracket && mc_ok == mc_rows, 60.0,
         seconds_since(t0), out.str());
}

// 5. Homology invariants over 500 sampled complexes, primes {2,3,5}.
void criterion_5() {
  const auto t0 = Clock::now();
  const std::int64_t cap = rsc::binomial(24, 2);  // faces below the top level
  bool ok = true;
  std::int64_t dense_checked = 0;
  int idx = 0;
  for (const double c : {1.0, 2.0, 3.0, 4.0}) {
    for (int rep = 0; rep < 125; ++rep, ++idx) {
      const std::uint64_t seed =
          rsc::derive_trial_seed(505, static_cast<std::uint64_t>(idx));
      const rsc::Complex y =
          rsc::sample_complex(rsc::SampleParams::with_c(25, 2, c, seed));
      const rsc::TrialRecord r = rsc::measure(y, {2, 3, 5});
      for (std::size_t i = 0; i < 3; ++i) {
        const std::int64_t h = r.h_top[i];
        ok = ok && h >= r.homology_lb;
        ok = ok && h >= r.f_d - cap;
        ok = ok && h - r.h_below[i] == r.f_d - cap;
        if (r.collapsible) ok = ok && h == 0;
        if (r.num_boundaries > 0) ok = ok && h >= 1;
      }
      if (r.f_d <= 60) {
        ++dense_checked;
        for (const std::int32_t p : {2, 3, 5}) {
          const auto m = rsc::boundary_matrix(y, rsc::FieldPrime(p));
          ok = ok && rsc::rank_mod_p(m) == testsup::dense_boundary_rank(y, p);
        }
      }
    }
  }
  report("5", ok, 120.0, seconds_since(t0),
         "bounds, Euler identity, collapse/boundary implications on 500 "
         "complexes (dense-oracle rank cross-checked on " +
             std::to_string(dense_checked) + " with f_d<=60)");
}

// 6. Sequential peeling reaches the simultaneous-round core in any order.
void criterion_6() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const std::uint64_t seed =
        rsc::derive_trial_seed(606, static_cast<std::uint64_t>(rep));
    const rsc::Complex y =
        rsc::sample_complex(rsc::SampleParams::with_c(20, 2, 3.0, seed));
    const auto base = rsc::core(y).core.simplices;
    for (int o = 0; o < 10; ++o) {
      const std::uint64_t order =
          rsc::derive_trial_seed(6060, static_cast<std::uint64_t>(rep * 10 + o));
      ok = ok && rsc::core_sequential(y, order).core.simplices == base;
    }
  }

  // every complex on 5 vertices with at most 5 triangles
  std::vector<std::vector<std::int32_t>> all;
  auto tri = rsc::first_combination(3);
  do {
    all.push_back(tri);
  } while (rsc::next_combination(tri, 5));
  std::int64_t checked = 0;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    if (__builtin_popcount(mask) > 5) continue;
    std::vector<std::vector<std::int32_t>> simplices;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask & (1u << i)) simplices.push_back(all[i]);
    const rsc::Complex y{5, 2, simplices};
    const auto base = rsc::core(y).core.simplices;
    ok = ok && rsc::core_sequential(y, 1).core.simplices == base;
    ok = ok && rsc::core_sequential(y, 2).core.simplices == base;
    ++checked;
  }
  report("6", ok, 60.0, seconds_since(t0),
         "core independent of peeling order (100 samples x 10 orders, " +
             std::to_string(checked) + " exhaustive small complexes)");
}

// 7. Sample means of f_d, isolated faces, alpha_j against exact formulas.
void criterion_7() {
  const auto t0 = Clock::now();
  const std::int32_t n = 40, d = 2;
  const double p = 2.5 / n;
  const std::int64_t trials = 2000;
  const rsc::ExpectedCounts e = rsc::expected_counts(n, d, p);
  const double want[5] = {e.f_d, e.isolated, e.alpha[0], e.alpha[1],
                          e.alpha[2]};
  double sum[5] = {0}, sumsq[5] = {0};
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::uint64_t seed =
        rsc::derive_trial_seed(707, static_cast<std::uint64_t>(t));
    const rsc::Complex y =
        rsc::sample_complex(rsc::SampleParams::with_p(n, d, p, seed));
    const rsc::CocycleCounts cc = rsc::cocycle_counts(y);
    const double got[5] = {static_cast<double>(y.simplices.size()),
                           static_cast<double>(cc.isolated),
                           static_cast<double>(cc.alpha[0]),
                           static_cast<double>(cc.alpha[1]),
                           static_cast<double>(cc.alpha[2])};
    for (int i = 0; i < 5; ++i) {
      sum[i] += got[i];
      sumsq[i] += got[i] * got[i];
    }
  }
  bool ok = true;
  double max_z = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double mean = sum[i] / static_cast<double>(trials);
    const double var =
        (sumsq[i] / static_cast<double>(trials) - mean * mean) /
        static_cast<double>(trials - 1) * static_cast<double>(trials);
    const double se = std::sqrt(var / static_cast<double>(trials));
    const double z = std::fabs(mean - want[i]) / se;
    max_z = std::max(max_z, z);
    ok = ok && z <= 4.0;
  }
  report("7", ok, 60.0, seconds_since(t0),
         "means of f_d, isolated, alpha_0..2 match exact formulas over 2000 "
         "trials (max |z|=" +
             fm(max_z) + ")");
}

// 8. Finite-n threshold sweep at n = 75.
void criterion_8() {
  const auto t0 = Clock::now();
  rsc::SweepConfig cfg;
  cfg.d = 2;
  cfg.n_values = {75};
  cfg.c_values = {2.0, 2.2, 2.455, 2.7, 3.0};
  cfg.trials = 400;
  cfg.master_seed = 808;
  cfg.primes = {2};
  cfg.jobs = 0;
  const auto records = rsc::run_trials(cfg);
  std::vector<rsc::SweepRow> rows;
  for (std::size_t start = 0; start < records.size(); start += 400)
    rows.push_back(rsc::aggregate(
        {records.begin() + static_cast<std::ptrdiff_t>(start),
         records.begin() + static_cast<std::ptrdiff_t>(start + 400)}));

  const rsc::SweepRow& lo = rows.front();   // c = 2.0
  const rsc::SweepRow& hi = rows.back();    // c = 3.0
  const bool cond = lo.has_conditional && hi.has_conditional;
  const double gap =
      cond ? lo.pr_collapse_given_F - hi.pr_collapse_given_F : -1.0;
  const bool a_ok = cond && gap >= 0.3;
  const bool b_ok = hi.has_homology && hi.pr_hd_nonzero[0] >= 0.9;
  const bool c_ok = cond && lo.pr_collapse_given_F > 0.5 &&
                    hi.pr_collapse_given_F < 0.5;
  std::ostringstream out;
  out << "n=75 sweep: cgF(2.0)=" << fm(lo.pr_collapse_given_F) << " cgF(3.0)="
      << fm(hi.pr_collapse_given_F) << " (gap " << fm(gap)
      << " >= 0.3), Pr[H_2!=0](3.0)=" << fm(hi.pr_hd_nonzero[0])
      << " >= 0.9, curve crosses 0.5";
  report("8", a_ok && b_ok && c_ok, 900.0, seconds_since(t0), out.str());
}

// 9. Pr[no boundary copy] at the collapsibility threshold density.
void criterion_9() {
  const auto t0 = Clock::now();
  rsc::SweepConfig cfg;
  cfg.d = 2;
  cfg.n_values = {100};
  cfg.c_values = {2.455};
  cfg.trials = 2000;
  cfg.master_seed = 909;
  cfg.skip_collapse = true;
  cfg.skip_homology = true;
  cfg.jobs = 0;
  const auto records = rsc::run_trials(cfg);
  std::int64_t hits = 0;
  for (const auto& r : records) hits += r.in_F ? 1 : 0;
  const double phat = static_cast<double>(hits) / 2000.0;
  report("9", std::fabs(phat - 0.220) <= 0.06, 600.0, seconds_since(t0),
         "Pr[F] at n=100, c=2.455: " + fm(phat) + " vs limit 0.220 (+-0.06)");
}

// 10. Acyclicity probability of the sparse random graph.
void criterion_10() {
  const auto t0 = Clock::now();
  const rsc::AcyclicCheck chk =
      rsc::acyclic_probability_check(2000, 0.5, 2000, 1010, 0);
  report("10", std::fabs(chk.estimate - 0.9665) <= 0.03, 120.0,
         seconds_since(t0),
         "Pr[acyclic] at n=2000, c=0.5: " + fm(chk.estimate) +
             " vs 0.9665 (+-0.03)");
}

// 11. One-simplex-at-a-time process at n = 30, 50 runs. Split into the two
// claims; (b) is reported exactly as measured.
void criterion_11() {
  const auto t0 = Clock::now();
  const int runs = 50;
  int collapsible_before = 0, covered = 0;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed =
        rsc::derive_trial_seed(1111, static_cast<std::uint64_t>(r));
    const rsc::HittingTimeRecord rec = rsc::hitting_time(30, 2, seed);
    // recompute the pre-hitting prefix independently of the record
    const rsc::ProcessStream stream = rsc::sample_stream(30, 2, rec.seed);
    if (rec.m_first_core >= 1 &&
        rsc::core(stream.prefix(rec.m_first_core - 1)).collapsible)
      ++collapsible_before;
    if (rec.core_covered_by_boundaries) ++covered;
  }
  const double elapsed = seconds_since(t0);
  report("11a", collapsible_before == runs, 600.0, elapsed,
         "prefix one step before the first nonempty core is collapsible in " +
             std::to_string(collapsible_before) + "/" + std::to_string(runs) +
             " runs (need 100%)");
  const bool b_ok = covered >= (9 * runs + 9) / 10;
  report("11b", b_ok, 600.0, elapsed,
         "first core covered by boundary copies in " + std::to_string(covered) +
             "/" + std::to_string(runs) + " runs (need >=90%)");
  if (!b_ok) {
    std::printf(
        "#   the first core typically appears while boundary copies are still "
        "rare: the limiting\n"
        "#   probability that any copy exists at the collapsibility threshold "
        "is 1-exp(-gamma_2^4/24)\n"
        "#   ~= 0.78, already below the 0.90 bar, and coverage of the whole "
        "core is rarer still;\n"
        "#   finite-n rates at n=30 sit near 0.6. The 0.90 target is not "
        "attainable for this statistic.\n");
  }
}

// 12. Same seed, different --jobs: byte-identical CSVs from the CLI.
void criterion_12() {
  const auto t0 = Clock::now();
  if (g_cli.empty()) {
    report("12", false, 0.0, seconds_since(t0),
           "needs --cli=PATH to the rsc binary");
    return;
  }
  const std::string work =
      "/tmp/rsc_acceptance_" + std::to_string(::getpid());
  [[maybe_unused]] int sys = std::system(("mkdir -p " + work).c_str());
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string args =
      " sweep --d 2 --n 18 --c 2.2,2.8 --trials 40 --seed 2025";
  bool ok = true;
  std::string first_trials, first_summary;
  int variant = 0;
  for (const char* jobs : {" --jobs 1", " --jobs 4"}) {
    const std::string trials = work + "/trials" + std::to_string(variant);
    const std::string summary = work + "/summary" + std::to_string(variant);
    const std::string cmd = g_cli + args + jobs + " --out " + trials +
                            " --summary " + summary + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    if (variant == 0) {
      first_trials = slurp(trials);
      first_summary = slurp(summary);
      ok = ok && !first_trials.empty() && !first_summary.empty();
    } else {
      ok = ok && slurp(trials) == first_trials &&
           slurp(summary) == first_summary;
    }
    ++variant;
  }
  sys = std::system(("rm -rf " + work).c_str());
  report("12", ok, 0.0, seconds_since(t0),
         "sweep CSVs byte-identical for --jobs 1 vs --jobs 4");
}

void run_criterion(int k) {
  try {
    switch (k) {
      case 1: criterion_1(); break;
      case 2: criterion_2(); break;
      case 3: criterion_3(); break;
      case 4: criterion_4(); break;
      case 5: criterion_5(); break;
      case 6: criterion_6(); break;
      case 7: criterion_7(); break;
      case 8: criterion_8(); break;
      case 9: criterion_9(); break;
      case 10: criterion_10(); break;
      case 11: criterion_11(); break;
      case 12: criterion_12(); break;
      default:
        ++g_failures;
        std::printf("[FAIL] criterion %d: no such criterion\n", k);
    }
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] criterion %d: exception: %s\n", k, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--cli=", 0) == 0)
      g_cli = arg.substr(6);
    else
      wanted.push_back(std::atoi(arg.c_str()));
  }
  if (wanted.empty())
    for (int k = 1; k <= 12; ++k) wanted.push_back(k);
  for (const int k : wanted) run_criterion(k);
  std::printf("acceptance: %d criterion line(s) failed\n", g_failures);
  return g_failures > 0 ? 1 : 0;
}
