#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

// Runs body(0), ..., body(count-1) across `jobs` threads (0 = one per
// hardware thread). Callers write into per-index slots, so results never
// depend on the thread count. The first exception thrown wins and is
// rethrown after all workers stop.
void parallel_map(std::int64_t count, std::int32_t jobs,
                  const std::function<void(std::int64_t)>& body);

/**
 * Everything measured about one sampled complex. Collapse and homology
 * blocks are optional (skippable for speed); their fields are meaningful
 * only when the matching *_done flag is set. h_top/h_below run parallel
 * to `primes`.
 */
struct TrialRecord {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::int32_t n = 0;
  std::int32_t d = 0;
  double c = 0.0;

  std::int64_t f_d = 0;
  bool in_F = false;  // no boundary-of-a-(d+1)-simplex copy present
  std::int64_t num_boundaries = 0;

  std::int64_t isolated = 0;
  std::vector<std::int64_t> alpha;
  std::int64_t cocycle_lb = 0;   // u
  std::int64_t homology_lb = 0;  // v, can be negative

  bool collapse_done = false;
  bool collapsible = false;
  std::int32_t rounds = 0;
  std::int64_t core_size = 0;

  bool homology_done = false;
  std::vector<std::int32_t> primes;
  std::vector<std::int64_t> h_top;
  std::vector<std::int64_t> h_below;
};

struct SweepConfig {
  std::int32_t d = 2;
  std::vector<std::int32_t> n_values;
  std::vector<double> c_values;
  std::int64_t trials = 100;
  std::uint64_t master_seed = 0;
  std::vector<std::int32_t> primes = {2, 3, 5};
  bool skip_collapse = false;
  bool skip_homology = false;
  std::int32_t jobs = 1;  // 0 = all hardware threads; never affects results
};

// Measures a given complex: face counts, boundary copies, degree-profile
// bounds, then optionally peeling and homology. Identification fields
// (trial, seed, c) are left for the caller.
TrialRecord measure(const Complex& y, const std::vector<std::int32_t>& primes,
                    bool skip_collapse = false, bool skip_homology = false);

// One full pipeline trial at (n, c): the sample seed is
// derive_trial_seed(master_seed, trial), identical at every grid point so
// points share common random numbers.
TrialRecord run_trial(const SweepConfig& config, std::int32_t n, double c,
                      std::int64_t trial);

// All trials of one grid point, in trial order regardless of jobs.
std::vector<TrialRecord> run_point(const SweepConfig& config, std::int32_t n,
                                   double c);

// Whole grid, n-major then c, trials in order within each point.
std::vector<TrialRecord> run_trials(const SweepConfig& config);

/** Exact finite-n expectations of the degree-profile statistics. */
struct ExpectedCounts {
  double f_d = 0.0;
  double isolated = 0.0;
  std::vector<double> alpha;  // j = 0..d, same indexing as CocycleCounts
};

ExpectedCounts expected_counts(std::int32_t n, std::int32_t d, double p);

/**
 * Point estimates for one grid point. Conditional collapsibility uses only
 * the in_F trials; with none, has_conditional stays false. Homology rates
 * run parallel to `primes` and exist only when the records carry homology.
 */
struct SweepRow {
  std::int32_t n = 0;
  std::int32_t d = 0;
  double c = 0.0;
  std::int64_t trials = 0;

  double pr_F = 0.0;
  double se_F = 0.0;
  double pr_F_limit = 0.0;  // exp(-c^{d+2}/(d+2)!)

  bool has_conditional = false;
  std::int64_t in_F_count = 0;
  double pr_collapse_given_F = 0.0;
  double se_cgF = 0.0;

  bool has_homology = false;
  std::vector<std::int32_t> primes;
  std::vector<double> pr_hd_nonzero;
  std::vector<double> se_hd;

  double mean_v = 0.0;
};

// Records must be nonempty and share one (n, d, c) point.
SweepRow aggregate(const std::vector<TrialRecord>& records);

double pr_F_limit(std::int32_t d, double c);

// CSV and JSON writers. Layouts are fixed: a comment line echoing version
// and parameters (jobs excluded, so outputs are byte-identical for any job
// count), then the header row, then data. Skipped measurements leave their
// fields empty (null in JSON).
void write_trials_csv(std::ostream& out, const SweepConfig& config,
                      const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const SweepConfig& config,
                       const std::vector<SweepRow>& rows);
void write_trials_json(std::ostream& out, const SweepConfig& config,
                       const std::vector<TrialRecord>& records);
void write_summary_json(std::ostream& out, const SweepConfig& config,
                        const std::vector<SweepRow>& rows);

// The parameter-echo comment line shared by the writers, without trailing
// newline.
std::string sweep_echo(const SweepConfig& config);

/**
 * One run of the one-simplex-at-a-time experiment: feed a random ordering
 * of all d-simplices and watch the peeling core appear. m_first_core is
 * found by binary search (a nonempty core stays nonempty as simplices are
 * added), m_jump by linear scan from there.
 */
struct HittingTimeRecord {
  std::int32_t n = 0;
  std::int32_t d = 0;
  std::uint64_t seed = 0;
  std::int64_t m_first_core = 0;
  std::int64_t core_size_at_first = 0;
  bool core_covered_by_boundaries = false;
  std::int64_t m_jump = 0;
  double jump_threshold = 0.0;
};

// Requires n >= d+2 (smaller skeletons never develop a core).
HittingTimeRecord hitting_time(std::int32_t n, std::int32_t d,
                               std::uint64_t seed,
                               double jump_threshold = 0.01);

void write_hitting_csv(std::ostream& out,
                       const std::vector<HittingTimeRecord>& records);

/** Monte Carlo Pr[a sparse random graph is a forest] vs the closed form. */
struct AcyclicCheck {
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;  // sqrt(1-c) * exp(c/2 + c^2/4)
  std::int64_t trials = 0;
};

// Requires 0 <= c < 1 (the reference diverges at 1) and n >= 2. Forest
// detection runs the d = 1 peeling: a graph collapses iff it has no cycle.
AcyclicCheck acyclic_probability_check(std::int32_t n, double c,
                                       std::int64_t trials,
                                       std::uint64_t seed,
                                       std::int32_t jobs = 1);

}  // namespace rsc
