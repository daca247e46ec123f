#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsc/collapse.hpp"
#include "rsc/complex_io.hpp"
#include "rsc/constants.hpp"
#include "rsc/harness.hpp"
#include "rsc/homology.hpp"
#include "rsc/rng.hpp"
#include "rsc/sampler.hpp"
#include "rsc/treeproc.hpp"
#include "rsc/version.hpp"

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

template <class Seq, class Render>
std::string join(const Seq& xs, Render render) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += render(xs[i]);
  }
  return out;
}

std::string join_ints(const std::vector<std::int32_t>& xs) {
  return join(xs, [](std::int32_t x) { return std::to_string(x); });
}

std::string echo_head(const std::string& mode) {
  return std::string("# rsc ") + rsc::kVersion + " " + mode;
}

struct ConstantsArgs {
  std::vector<std::int32_t> d;
  double tol = 1e-10;
  std::int64_t terms = 1000000;
};

void run_constants(const ConstantsArgs& a) {
  std::cout << echo_head("constants") << " d=" << join_ints(a.d)
            << " tol=" << fmt(a.tol) << " terms=" << a.terms << '\n';
  std::cout << "d,c_d,gamma_d,x_star,c_d_1,c_d_2\n";
  for (const std::int32_t d : a.d) {
    const rsc::ThresholdReport r = rsc::threshold_report(d, a.tol);
    std::cout << r.d << ',' << fmt(r.c_d) << ',' << fmt(r.gamma_d) << ','
              << fmt(r.x_star) << ',' << fmt(r.c_d_1) << ',' << fmt(r.c_d_2)
              << '\n';
  }
  const double z = std::exp(-1.0);
  const rsc::TreeGF gf = rsc::tree_gf(z, a.terms);
  const double residual = rsc::tilde_c1_residual(1.0, a.terms);
  std::cout << "check,value,reference,tail_bound\n"
            << "R_at_inv_e," << fmt(gf.r) << ",1," << fmt(gf.tail_bound)
            << '\n'
            << "T_at_inv_e," << fmt(gf.t) << ",0.5," << fmt(gf.tail_bound)
            << '\n'
            << "tilde_c1_residual_at_1," << fmt(residual) << ",0,"
            << fmt(gf.tail_bound) << '\n';
}

struct SampleArgs {
  std::int32_t n = 0, d = 2;
  double c = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_sample(const SampleArgs& a) {
  const rsc::Complex y =
      rsc::sample_complex(rsc::SampleParams::with_c(a.n, a.d, a.c, a.seed));
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error(a.out + ": cannot open for writing");
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << echo_head("sample") << " n=" << a.n << " d=" << a.d
      << " c=" << fmt(a.c) << " seed=" << a.seed << '\n';
  rsc::write_complex(out, y);
  if (!a.out.empty() && !file) throw std::runtime_error(a.out + ": write failed");
}

struct AnalyzeArgs {
  std::string in;
  std::vector<std::int32_t> primes = {2, 3, 5};
};

void run_analyze(const AnalyzeArgs& a) {
  const rsc::Complex y = rsc::read_complex_file(a.in);
  const rsc::TrialRecord r = rsc::measure(y, a.primes);
  std::cout << echo_head("analyze") << " in=" << a.in
            << " primes=" << join_ints(a.primes) << '\n';
  std::cout << "n " << r.n << '\n'
            << "d " << r.d << '\n'
            << "f_d " << r.f_d << '\n'
            << "num_boundaries " << r.num_boundaries << '\n'
            << "in_F " << (r.in_F ? 1 : 0) << '\n'
            << "isolated " << r.isolated << '\n';
  for (std::size_t j = 0; j < r.alpha.size(); ++j)
    std::cout << "alpha_" << j << ' ' << r.alpha[j] << '\n';
  std::cout << "u " << r.cocycle_lb << '\n'
            << "v " << r.homology_lb << '\n'
            << "collapsible " << (r.collapsible ? 1 : 0) << '\n'
            << "rounds " << r.rounds << '\n'
            << "core_size " << r.core_size << '\n';
  for (std::size_t i = 0; i < r.primes.size(); ++i)
    std::cout << "h_d_p" << r.primes[i] << ' ' << r.h_top[i] << '\n'
              << "h_dm1_p" << r.primes[i] << ' ' << r.h_below[i] << '\n';
}

struct SweepArgs {
  rsc::SweepConfig config;
  std::string out, summary, out_json, summary_json;
};

void run_sweep(const SweepArgs& a) {
  const auto records = rsc::run_trials(a.config);
  std::vector<rsc::SweepRow> rows;
  const std::size_t per_point = static_cast<std::size_t>(a.config.trials);
  for (std::size_t start = 0; start < records.size(); start += per_point)
    rows.push_back(rsc::aggregate(std::vector<rsc::TrialRecord>(
        records.begin() + static_cast<std::ptrdiff_t>(start),
        records.begin() + static_cast<std::ptrdiff_t>(start + per_point))));

  const auto to_file = [](const std::string& path, const auto& writer) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error(path + ": cannot open for writing");
    writer(file);
    file.flush();
    if (!file) throw std::runtime_error(path + ": write failed");
  };

  bool wrote = false;
  if (!a.out.empty()) {
    to_file(a.out, [&](std::ostream& s) {
      rsc::write_trials_csv(s, a.config, records);
    });
    wrote = true;
  }
  if (!a.out_json.empty()) {
    to_file(a.out_json, [&](std::ostream& s) {
      rsc::write_trials_json(s, a.config, records);
    });
    wrote = true;
  }
  if (!a.summary.empty()) {
    to_file(a.summary, [&](std::ostream& s) {
      rsc::write_summary_csv(s, a.config, rows);
    });
    wrote = true;
  }
  if (!a.summary_json.empty()) {
    to_file(a.summary_json, [&](std::ostream& s) {
      rsc::write_summary_json(s, a.config, rows);
    });
    wrote = true;
  }
  if (!wrote) rsc::write_summary_csv(std::cout, a.config, rows);
}

struct TreeArgs {
  std::int32_t d = 2, k = 0;
  double gamma = 1.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  std::int32_t jobs = 0;
};

void run_tree(const TreeArgs& a) {
  const rsc::RhoCurve curve = rsc::rho_recursion(a.d, a.gamma, a.k);
  std::vector<rsc::RhoEstimate> est(static_cast<std::size_t>(a.k) + 1);
  rsc::parallel_map(a.k + 1, a.jobs, [&](std::int64_t row) {
    est[static_cast<std::size_t>(row)] = rsc::estimate_rho(
        a.d, static_cast<std::int32_t>(row), a.gamma, a.trials,
        rsc::derive_trial_seed(a.seed, static_cast<std::uint64_t>(row)));
  });

  std::cout << echo_head("tree") << " d=" << a.d << " k=" << a.k
            << " gamma=" << fmt(a.gamma) << " trials=" << a.trials
            << " seed=" << a.seed << '\n';
  std::cout << "k,rho_analytic,rho_estimate,se,abs_z\n";
  for (std::int32_t row = 0; row <= a.k; ++row) {
    const auto& e = est[static_cast<std::size_t>(row)];
    const double analytic = curve.values[static_cast<std::size_t>(row)];
    const double gap = std::fabs(e.estimate - analytic);
    const double z = e.std_error > 0.0
                         ? gap / e.std_error
                         : (gap == 0.0 ? 0.0 : INFINITY);
    std::cout << row << ',' << fmt(analytic) << ',' << fmt(e.estimate) << ','
              << fmt(e.std_error) << ',' << fmt(z) << '\n';
  }
  std::cout << "# fixed_point=" << fmt(curve.fixed_point)
            << " converged=" << (curve.converged ? 1 : 0)
            << " iterations=" << curve.iterations << '\n';
}

struct HittingArgs {
  std::int32_t n = 0, d = 2;
  std::int64_t runs = 1;
  std::uint64_t seed = 0;
  double jump_threshold = 0.01;
  std::int32_t jobs = 0;
};

void run_hitting(const HittingArgs& a) {
  std::vector<rsc::HittingTimeRecord> records(
      static_cast<std::size_t>(a.runs));
  rsc::parallel_map(a.runs, a.jobs, [&](std::int64_t r) {
    records[static_cast<std::size_t>(r)] = rsc::hitting_time(
        a.n, a.d, rsc::derive_trial_seed(a.seed, static_cast<std::uint64_t>(r)),
        a.jump_threshold);
  });
  std::cout << echo_head("hitting") << " n=" << a.n << " d=" << a.d
            << " runs=" << a.runs << " seed=" << a.seed
            << " jump_threshold=" << fmt(a.jump_threshold) << '\n';
  rsc::write_hitting_csv(std::cout, records);
}

struct AcyclicArgs {
  std::int32_t n = 0;
  double c = 0.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  std::int32_t jobs = 0;
};

void run_acyclic(const AcyclicArgs& a) {
  const rsc::AcyclicCheck check =
      rsc::acyclic_probability_check(a.n, a.c, a.trials, a.seed, a.jobs);
  std::cout << echo_head("acyclic") << " n=" << a.n << " c=" << fmt(a.c)
            << " trials=" << a.trials << " seed=" << a.seed << '\n';
  std::cout << "estimate,std_error,reference,abs_error\n"
            << fmt(check.estimate) << ',' << fmt(check.std_error) << ','
            << fmt(check.reference) << ','
            << fmt(std::fabs(check.estimate - check.reference)) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random d-complex laboratory: sampling, peeling, homology"};
  app.set_version_flag("--version", std::string("rsc ") + rsc::kVersion);
  app.require_subcommand(1);

  ConstantsArgs constants_args;
  auto* constants = app.add_subcommand(
      "constants", "threshold constants and series checks");
  constants->add_option("--d", constants_args.d, "dimensions")
      ->required()
      ->delimiter(',');
  constants->add_option("--tol", constants_args.tol, "bisection tolerance");
  constants->add_option("--terms", constants_args.terms,
                        "series truncation index");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "draw one complex");
  sample->add_option("--n", sample_args.n, "vertices")->required();
  sample->add_option("--d", sample_args.d, "dimension")->required();
  sample->add_option("--c", sample_args.c, "density, p = c/n")->required();
  sample->add_option("--seed", sample_args.seed, "rng seed")->required();
  sample->add_option("--out", sample_args.out, "output file (default stdout)");

  AnalyzeArgs analyze_args;
  auto* analyze =
      app.add_subcommand("analyze", "measure a complex from a file");
  analyze->add_option("--in", analyze_args.in, "complex file")->required();
  analyze->add_option("--primes", analyze_args.primes, "homology primes")
      ->delimiter(',');

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo grid experiment");
  sweep->add_option("--d", sweep_args.config.d, "dimension")->required();
  sweep->add_option("--n", sweep_args.config.n_values, "vertex counts")
      ->required()
      ->delimiter(',');
  sweep->add_option("--c", sweep_args.config.c_values, "density grid")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", sweep_args.config.trials, "trials per point")
      ->required();
  sweep->add_option("--seed", sweep_args.config.master_seed, "master seed")
      ->required();
  sweep->add_option("--primes", sweep_args.config.primes, "homology primes")
      ->delimiter(',')
      ->check(CLI::IsMember({2, 3, 5}));
  sweep->add_flag("--skip-collapse", sweep_args.config.skip_collapse,
                  "skip peeling");
  sweep->add_flag("--skip-homology", sweep_args.config.skip_homology,
                  "skip rank computations");
  sweep->add_option("--jobs", sweep_args.config.jobs,
                    "worker threads (0 = all)");
  sweep->add_option("--out", sweep_args.out, "per-trial CSV file");
  sweep->add_option("--summary", sweep_args.summary, "summary CSV file");
  sweep->add_option("--out-json", sweep_args.out_json, "per-trial JSON file");
  sweep->add_option("--summary-json", sweep_args.summary_json,
                    "summary JSON file");

  TreeArgs tree_args;
  auto* tree =
      app.add_subcommand("tree", "rho estimates vs the recursion");
  tree->add_option("--d", tree_args.d, "dimension")->required();
  tree->add_option("--k", tree_args.k, "max pruning depth")->required();
  tree->add_option("--gamma", tree_args.gamma, "Poisson mean")->required();
  tree->add_option("--trials", tree_args.trials, "trees per row")->required();
  tree->add_option("--seed", tree_args.seed, "master seed")->required();
  tree->add_option("--jobs", tree_args.jobs, "worker threads (0 = all)");

  HittingArgs hitting_args;
  auto* hitting =
      app.add_subcommand("hitting", "core hitting time experiment");
  hitting->add_option("--n", hitting_args.n, "vertices")->required();
  hitting->add_option("--d", hitting_args.d, "dimension")->required();
  hitting->add_option("--runs", hitting_args.runs, "independent runs")
      ->required();
  hitting->add_option("--seed", hitting_args.seed, "master seed")->required();
  hitting->add_option("--jump-threshold", hitting_args.jump_threshold,
                      "giant-core fraction of all possible simplices");
  hitting->add_option("--jobs", hitting_args.jobs, "worker threads (0 = all)");

  AcyclicArgs acyclic_args;
  auto* acyclic =
      app.add_subcommand("acyclic", "graph forest probability check");
  acyclic->add_option("--n", acyclic_args.n, "vertices")->required();
  acyclic->add_option("--c", acyclic_args.c, "density, p = c/n")->required();
  acyclic->add_option("--trials", acyclic_args.trials, "trials")->required();
  acyclic->add_option("--seed", acyclic_args.seed, "master seed")->required();
  acyclic->add_option("--jobs", acyclic_args.jobs, "worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*constants) run_constants(constants_args);
    if (*sample) run_sample(sample_args);
    if (*analyze) run_analyze(analyze_args);
    if (*sweep) run_sweep(sweep_args);
    if (*tree) run_tree(tree_args);
    if (*hitting) run_hitting(hitting_args);
    if (*acyclic) run_acyclic(acyclic_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
