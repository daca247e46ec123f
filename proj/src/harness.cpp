#include "rsc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "rsc/collapse.hpp"
#include "rsc/homology.hpp"
#include "rsc/rng.hpp"
#include "rsc/sampler.hpp"
#include "rsc/version.hpp"

namespace rsc {

namespace {

std::int32_t resolve_jobs(std::int32_t jobs, std::int64_t count) {
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = hw == 0 ? 1 : static_cast<std::int32_t>(hw);
  }
  if (count < jobs) jobs = static_cast<std::int32_t>(count);
  return std::max(jobs, 1);
}

}  // namespace

void parallel_map(std::int64_t count, std::int32_t jobs,
                  const std::function<void(std::int64_t)>& body) {
  jobs = resolve_jobs(jobs, count);
  if (jobs == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::int32_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int index_of_prime(const std::vector<std::int32_t>& primes, std::int32_t p) {
  const auto it = std::find(primes.begin(), primes.end(), p);
  return it == primes.end() ? -1 : static_cast<int>(it - primes.begin());
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

void check_config(const SweepConfig& config) {
  if (config.d < 1) throw std::invalid_argument("sweep: d must be >= 1");
  if (config.trials < 1)
    throw std::invalid_argument("sweep: trials must be >= 1");
  if (config.n_values.empty())
    throw std::invalid_argument("sweep: no n values");
  if (config.c_values.empty())
    throw std::invalid_argument("sweep: no c values");
  for (const double c : config.c_values)
    if (!(c >= 0.0)) throw std::invalid_argument("sweep: c must be >= 0");
  if (!config.skip_homology && config.primes.empty())
    throw std::invalid_argument("sweep: homology requested with no primes");
}

}  // namespace

TrialRecord measure(const Complex& y, const std::vector<std::int32_t>& primes,
                    bool skip_collapse, bool skip_homology) {
  TrialRecord rec;
  rec.n = y.n;
  rec.d = y.d;
  rec.f_d = y.simplex_count();

  const auto boundaries = find_boundaries(y);
  rec.num_boundaries = static_cast<std::int64_t>(boundaries.size());
  rec.in_F = boundaries.empty();

  const CocycleCounts cc = cocycle_counts(y);
  rec.isolated = cc.isolated;
  rec.alpha = cc.alpha;
  rec.cocycle_lb = cc.cocycle_lb;
  rec.homology_lb = cc.homology_lb;

  if (!skip_collapse) {
    const CoreResult r = core(y);
    rec.collapse_done = true;
    rec.collapsible = r.collapsible;
    rec.rounds = r.rounds;
    rec.core_size = r.core.simplex_count();
  }

  if (!skip_homology) {
    rec.homology_done = true;
    rec.primes = primes;
    rec.h_top.reserve(primes.size());
    rec.h_below.reserve(primes.size());
    for (const std::int32_t p : primes) {
      const HomologySummary s = betti(y, FieldPrime(p));
      rec.h_top.push_back(s.h_top);
      rec.h_below.push_back(s.h_below);
    }
  }
  return rec;
}

TrialRecord run_trial(const SweepConfig& config, std::int32_t n, double c,
                      std::int64_t trial) {
  const std::uint64_t seed =
      derive_trial_seed(config.master_seed, static_cast<std::uint64_t>(trial));
  const Complex y = sample_complex(SampleParams::with_c(n, config.d, c, seed));
  TrialRecord rec = measure(y, config.primes, config.skip_collapse,
                            config.skip_homology);
  rec.trial = trial;
  rec.seed = seed;
  rec.c = c;
  return rec;
}

std::vector<TrialRecord> run_point(const SweepConfig& config, std::int32_t n,
                                   double c) {
  check_config(config);
  std::vector<TrialRecord> records(config.trials);
  parallel_map(config.trials, config.jobs, [&](std::int64_t t) {
    records[static_cast<std::size_t>(t)] = run_trial(config, n, c, t);
  });
  return records;
}

std::vector<TrialRecord> run_trials(const SweepConfig& config) {
  check_config(config);
  std::vector<TrialRecord> all;
  all.reserve(static_cast<std::size_t>(config.trials) *
              config.n_values.size() * config.c_values.size());
  for (const std::int32_t n : config.n_values)
    for (const double c : config.c_values) {
      auto point = run_point(config, n, c);
      all.insert(all.end(), std::make_move_iterator(point.begin()),
                 std::make_move_iterator(point.end()));
    }
  return all;
}

ExpectedCounts expected_counts(std::int32_t n, std::int32_t d, double p) {
  if (d < 1 || n < d + 1)
    throw std::invalid_argument("expected_counts: need n >= d+1, d >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("expected_counts: p outside [0,1]");
  const double q = 1.0 - p;
  const double choices = static_cast<double>(binomial(n, d + 1));
  ExpectedCounts e;
  e.f_d = choices * p;
  e.isolated = static_cast<double>(binomial(n, d)) * std::pow(q, n - d);
  // A facet of a present simplex stays free iff none of the other n-d-1
  // extensions is present.
  const double facet_free = std::pow(q, n - d - 1);
  e.alpha.resize(static_cast<std::size_t>(d) + 1, 0.0);
  for (std::int32_t j = 0; j <= d; ++j)
    e.alpha[static_cast<std::size_t>(j)] =
        choices * static_cast<double>(binomial(d + 1, j)) * p *
        std::pow(facet_free, d + 1 - j) * std::pow(1.0 - facet_free, j);
  return e;
}

double pr_F_limit(std::int32_t d, double c) {
  double factorial = 1.0;
  for (std::int32_t k = 2; k <= d + 2; ++k) factorial *= k;
  return std::exp(-std::pow(c, d + 2) / factorial);
}

SweepRow aggregate(const std::vector<TrialRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("aggregate: empty record set");
  const TrialRecord& head = records.front();
  for (const auto& r : records)
    if (r.n != head.n || r.d != head.d || r.c != head.c)
      throw std::invalid_argument("aggregate: records from multiple points");

  SweepRow row;
  row.n = head.n;
  row.d = head.d;
  row.c = head.c;
  row.trials = static_cast<std::int64_t>(records.size());
  const double t = static_cast<double>(row.trials);

  std::int64_t in_F = 0, collapsible_in_F = 0;
  double v_sum = 0.0;
  for (const auto& r : records) {
    if (r.in_F) {
      ++in_F;
      if (r.collapse_done && r.collapsible) ++collapsible_in_F;
    }
    v_sum += static_cast<double>(r.homology_lb);
  }
  row.pr_F = static_cast<double>(in_F) / t;
  row.se_F = std::sqrt(row.pr_F * (1.0 - row.pr_F) / t);
  row.pr_F_limit = pr_F_limit(head.d, head.c);
  row.mean_v = v_sum / t;

  row.in_F_count = in_F;
  if (head.collapse_done && in_F > 0) {
    row.has_conditional = true;
    const double count = static_cast<double>(in_F);
    row.pr_collapse_given_F = static_cast<double>(collapsible_in_F) / count;
    row.se_cgF = std::sqrt(row.pr_collapse_given_F *
                           (1.0 - row.pr_collapse_given_F) / count);
  }

  if (head.homology_done) {
    row.has_homology = true;
    row.primes = head.primes;
    for (std::size_t i = 0; i < row.primes.size(); ++i) {
      std::int64_t nonzero = 0;
      for (const auto& r : records)
        if (r.h_top[i] != 0) ++nonzero;
      const double rate = static_cast<double>(nonzero) / t;
      row.pr_hd_nonzero.push_back(rate);
      row.se_hd.push_back(std::sqrt(rate * (1.0 - rate) / t));
    }
  }
  return row;
}

std::string sweep_echo(const SweepConfig& config) {
  std::string line = "# rsc ";
  line += kVersion;
  line += " sweep d=" + std::to_string(config.d);
  line += " n=" + join(config.n_values,
                       [](std::int32_t n) { return std::to_string(n); });
  line += " c=" + join(config.c_values, fmt);
  line += " trials=" + std::to_string(config.trials);
  line += " seed=" + std::to_string(config.master_seed);
  line += " primes=" + join(config.primes,
                            [](std::int32_t p) { return std::to_string(p); });
  line += " skip_collapse=";
  line += config.skip_collapse ? '1' : '0';
  line += " skip_homology=";
  line += config.skip_homology ? '1' : '0';
  return line;
}

void write_trials_csv(std::ostream& out, const SweepConfig& config,
                      const std::vector<TrialRecord>& records) {
  out << sweep_echo(config) << '\n';
  out << "trial,seed,n,d,c,f_d,in_F,collapsible,rounds,core_size,"
         "num_boundaries,h_d_p2,h_d_p3,h_d_p5,h_dm1_p2,u,v\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.d << ','
        << fmt(r.c) << ',' << r.f_d << ',' << (r.in_F ? 1 : 0) << ',';
    if (r.collapse_done)
      out << (r.collapsible ? 1 : 0) << ',' << r.rounds << ',' << r.core_size;
    else
      out << ",,";
    out << ',' << r.num_boundaries << ',';
    for (const std::int32_t p : {2, 3, 5}) {
      const int i = r.homology_done ? index_of_prime(r.primes, p) : -1;
      if (i >= 0) out << r.h_top[static_cast<std::size_t>(i)];
      out << ',';
    }
    {
      const int i = r.homology_done ? index_of_prime(r.primes, 2) : -1;
      if (i >= 0) out << r.h_below[static_cast<std::size_t>(i)];
    }
    out << ',' << r.cocycle_lb << ',' << r.homology_lb << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SweepConfig& config,
                       const std::vector<SweepRow>& rows) {
  out << sweep_echo(config) << '\n';
  out << "n,c,trials,pr_F,se_F,pr_F_limit,pr_collapse_given_F,se_cgF,"
         "pr_hd_nonzero_p2,se_hd,mean_v\n";
  for (const auto& row : rows) {
    out << row.n << ',' << fmt(row.c) << ',' << row.trials << ','
        << fmt(row.pr_F) << ',' << fmt(row.se_F) << ','
        << fmt(row.pr_F_limit) << ',';
    if (row.has_conditional)
      out << fmt(row.pr_collapse_given_F) << ',' << fmt(row.se_cgF);
    else
      out << ',';
    out << ',';
    const int i = row.has_homology ? index_of_prime(row.primes, 2) : -1;
    if (i >= 0)
      out << fmt(row.pr_hd_nonzero[static_cast<std::size_t>(i)]) << ','
          << fmt(row.se_hd[static_cast<std::size_t>(i)]);
    else
      out << ',';
    out << ',' << fmt(row.mean_v) << '\n';
  }
}

namespace {

nlohmann::json config_json(const SweepConfig& config) {
  return nlohmann::json{{"d", config.d},
                        {"n", config.n_values},
                        {"c", config.c_values},
                        {"trials", config.trials},
                        {"seed", config.master_seed},
                        {"primes", config.primes},
                        {"skip_collapse", config.skip_collapse},
                        {"skip_homology", config.skip_homology}};
}

}  // namespace

void write_trials_json(std::ostream& out, const SweepConfig& config,
                       const std::vector<TrialRecord>& records) {
  nlohmann::json doc;
  doc["tool"] = "rsc";
  doc["version"] = kVersion;
  doc["params"] = config_json(config);
  auto& rows = doc["trials"] = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"trial", r.trial}, {"seed", r.seed},   {"n", r.n},
                     {"d", r.d},         {"c", r.c},         {"f_d", r.f_d},
                     {"in_F", r.in_F},   {"u", r.cocycle_lb},
                     {"v", r.homology_lb},
                     {"num_boundaries", r.num_boundaries}};
    if (r.collapse_done) {
      j["collapsible"] = r.collapsible;
      j["rounds"] = r.rounds;
      j["core_size"] = r.core_size;
    } else {
      j["collapsible"] = nullptr;
      j["rounds"] = nullptr;
      j["core_size"] = nullptr;
    }
    for (const std::int32_t p : {2, 3, 5}) {
      const int i = r.homology_done ? index_of_prime(r.primes, p) : -1;
      const std::string key = "h_d_p" + std::to_string(p);
      if (i >= 0)
        j[key] = r.h_top[static_cast<std::size_t>(i)];
      else
        j[key] = nullptr;
    }
    {
      const int i = r.homology_done ? index_of_prime(r.primes, 2) : -1;
      if (i >= 0)
        j["h_dm1_p2"] = r.h_below[static_cast<std::size_t>(i)];
      else
        j["h_dm1_p2"] = nullptr;
    }
    rows.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

void write_summary_json(std::ostream& out, const SweepConfig& config,
                        const std::vector<SweepRow>& rows) {
  nlohmann::json doc;
  doc["tool"] = "rsc";
  doc["version"] = kVersion;
  doc["params"] = config_json(config);
  auto& arr = doc["summary"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j{{"n", row.n},
                     {"c", row.c},
                     {"trials", row.trials},
                     {"pr_F", row.pr_F},
                     {"se_F", row.se_F},
                     {"pr_F_limit", row.pr_F_limit},
                     {"mean_v", row.mean_v}};
    if (row.has_conditional) {
      j["pr_collapse_given_F"] = row.pr_collapse_given_F;
      j["se_cgF"] = row.se_cgF;
    } else {
      j["pr_collapse_given_F"] = nullptr;
      j["se_cgF"] = nullptr;
    }
    const int i = row.has_homology ? index_of_prime(row.primes, 2) : -1;
    if (i >= 0) {
      j["pr_hd_nonzero_p2"] = row.pr_hd_nonzero[static_cast<std::size_t>(i)];
      j["se_hd"] = row.se_hd[static_cast<std::size_t>(i)];
    } else {
      j["pr_hd_nonzero_p2"] = nullptr;
      j["se_hd"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

HittingTimeRecord hitting_time(std::int32_t n, std::int32_t d,
                               std::uint64_t seed, double jump_threshold) {
  if (d < 1 || n < d + 2)
    throw std::invalid_argument("hitting_time: need n >= d+2, d >= 1");
  if (!(jump_threshold > 0.0 && jump_threshold <= 1.0))
    throw std::invalid_argument("hitting_time: threshold outside (0,1]");

  const ProcessStream stream(n, d, seed);
  const std::int64_t total = stream.total();
  const auto core_size_at = [&](std::int64_t m) {
    return core(stream.prefix(m)).core.simplex_count();
  };

  // Least m whose prefix has a nonempty core. Cores only grow along the
  // stream, so the predicate is monotone; the full skeleton always has one.
  std::int64_t lo = 1, hi = total;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (core_size_at(mid) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }

  HittingTimeRecord rec;
  rec.n = n;
  rec.d = d;
  rec.seed = seed;
  rec.jump_threshold = jump_threshold;
  rec.m_first_core = lo;

  const Complex first = stream.prefix(lo);
  const Complex first_core = core(first).core;
  rec.core_size_at_first = first_core.simplex_count();

  const auto boundaries = find_boundaries(first);
  rec.core_covered_by_boundaries = true;
  for (const auto& simplex : first_core.simplices) {
    bool covered = false;
    for (const auto& b : boundaries)
      if (std::includes(b.begin(), b.end(), simplex.begin(), simplex.end())) {
        covered = true;
        break;
      }
    if (!covered) {
      rec.core_covered_by_boundaries = false;
      break;
    }
  }

  const double jump_at = jump_threshold * static_cast<double>(total);
  std::int64_t m = lo;
  while (static_cast<double>(core_size_at(m)) < jump_at) ++m;
  rec.m_jump = m;
  return rec;
}

void write_hitting_csv(std::ostream& out,
                       const std::vector<HittingTimeRecord>& records) {
  out << "n,d,seed,m_first_core,core_size_at_first,"
         "core_covered_by_boundaries,m_jump,jump_threshold\n";
  for (const auto& r : records)
    out << r.n << ',' << r.d << ',' << r.seed << ',' << r.m_first_core << ','
        << r.core_size_at_first << ','
        << (r.core_covered_by_boundaries ? 1 : 0) << ',' << r.m_jump << ','
        << fmt(r.jump_threshold) << '\n';
}

AcyclicCheck acyclic_probability_check(std::int32_t n, double c,
                                       std::int64_t trials,
                                       std::uint64_t seed,
                                       std::int32_t jobs) {
  if (n < 2) throw std::invalid_argument("acyclic: need n >= 2");
  if (!(c >= 0.0 && c < 1.0))
    throw std::invalid_argument("acyclic: need 0 <= c < 1");
  if (trials < 1) throw std::invalid_argument("acyclic: trials must be >= 1");

  std::vector<char> forest(static_cast<std::size_t>(trials), 0);
  parallel_map(trials, jobs, [&](std::int64_t t) {
    const Complex g = sample_complex(SampleParams::with_c(
        n, 1, c, derive_trial_seed(seed, static_cast<std::uint64_t>(t))));
    forest[static_cast<std::size_t>(t)] = core(g).collapsible ? 1 : 0;
  });

  AcyclicCheck out;
  out.trials = trials;
  std::int64_t hits = 0;
  for (const char f : forest) hits += f;
  out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  out.std_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) /
                static_cast<double>(trials));
  out.reference = std::sqrt(1.0 - c) * std::exp(c / 2.0 + c * c / 4.0);
  return out;
}

}  // namespace rsc
