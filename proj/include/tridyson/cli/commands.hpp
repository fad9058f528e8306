#pragma once

// Subcommands behind the `tridyson` tool. Each returns a JSON report; the caller
// writes it out. Per-path work fans out to a worker pool, results are gathered
// by index so the output never depends on the thread count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tridyson/cli/config.hpp"
#include "tridyson/diagnostics.hpp"
#include "tridyson/dyson.hpp"
#include "tridyson/gbe.hpp"
#include "tridyson/identities.hpp"

#ifndef TRIDYSON_VERSION
#define TRIDYSON_VERSION "0.0.0"
#endif

namespace tridyson::cli {

using json = nlohmann::ordered_json;

struct RunOptions {
  std::optional<std::string> out_dir;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the config's seed
};

struct CommandResult {
  json report;
  bool passed = true;
  std::vector<std::string> files;  // written relative to out_dir
};

/// Runs fn(0..count-1) on `threads` workers; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Infinite or NaN values become null in JSON.
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
inline json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

inline json check(const std::string& name, bool passed, json values) {
  json j;
  j["name"] = name;
  j["passed"] = passed;
  j["values"] = std::move(values);
  return j;
}

inline void finish(CommandResult& r, const std::string& command) {
  r.passed = true;
  for (const auto& c : r.report["checks"]) r.passed = r.passed && c["passed"].get<bool>();
  json head;
  head["command"] = command;
  head["version"] = TRIDYSON_VERSION;
  head["passed"] = r.passed;
  head.update(r.report);
  r.report = std::move(head);
}

inline Config with_seed(Config c, const RunOptions& o) {
  if (o.seed) c.set("seed", std::to_string(*o.seed));
  return c;
}

inline std::vector<MinorRange> extra_ranges(const Config& c, std::size_t n) {
  if (!c.has("ranges")) return {};
  auto r = c.get_ranges("ranges");
  for (const auto& x : r)
    if (!x.valid_for(n) || x.empty())
      throw ConfigError("ranges: invalid minor range " + std::to_string(x.p) + ":" + std::to_string(x.q));
  return r;
}

// ---------------------------------------------------------------------------
// simulate

inline std::string trajectory_csv(const MatrixPath& path, const EigenPathSet& eigs,
                                  const std::vector<MinorRange>& extra) {
  std::string out = "t";
  const std::size_t n = path.config.n;
  for (std::size_t i = 1; i <= n; ++i) out += ",lambda_" + std::to_string(i);
  for (const auto& r : extra)
    for (int k = 1; k <= r.size(); ++k)
      out += ",lambda_" + std::to_string(r.p) + "_" + std::to_string(r.q) + "_" + std::to_string(k);
  out += "\n";
  for (std::size_t m = 0; m < eigs.size(); ++m) {
    out += format_double(eigs.times[m]);
    for (double x : eigs.spectra[m].full().values) out += "," + format_double(x);
    for (const auto& r : extra)
      for (double x : eigs.spectra[m].at(r).values) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

inline CommandResult cmd_simulate(const Config& raw, const RunOptions& opts) {
  if (!opts.out_dir) throw ConfigError("simulate needs --out DIR");
  const Config c = with_seed(raw, opts);
  const SdeConfig sc = sde_config(c);
  const std::size_t paths = c.get_uint("paths");
  const double tol = c.get_double_or("tol", 1e-13);
  const auto extra = extra_ranges(c, sc.n);

  std::vector<std::string> csv(paths);
  std::vector<json> summary(paths);
  parallel_for(paths, opts.threads, [&](std::size_t p) {
    const auto path = simulate_matrix_path(sc, p);
    const auto eigs = eigen_paths(path, extra, tol);
    csv[p] = trajectory_csv(path, eigs, extra);
    json s;
    s["path"] = p;
    s["retained_times"] = path.size();
    s["stopped_at"] = opt_num(path.stopped_at);
    summary[p] = std::move(s);
  });

  CommandResult r;
  std::filesystem::create_directories(*opts.out_dir);
  for (std::size_t p = 0; p < paths; ++p) {
    const std::string name = "path_" + std::to_string(p) + ".csv";
    std::ofstream(std::filesystem::path(*opts.out_dir) / name, std::ios::binary) << csv[p];
    r.files.push_back(name);
  }
  r.report["paths"] = summary;
  r.report["checks"] = json::array();
  finish(r, "simulate");
  return r;
}

// ---------------------------------------------------------------------------
// verify-sde

inline CommandResult cmd_verify_sde(const Config& raw, const RunOptions& opts) {
  const Config c = with_seed(raw, opts);
  const SdeConfig sc = sde_config(c);
  const std::size_t paths = c.get_uint("paths");
  const double tol = c.get_double_or("tol", 1e-13);
  const double disc_tol = c.get_double_or("discrepancy_tol", 0.05);
  const std::size_t n = sc.n;
  auto ranges = drift_ranges(n);
  for (const auto& r : extra_ranges(c, n))
    if (std::find(ranges.begin(), ranges.end(), r) == ranges.end()) ranges.push_back(r);

  std::vector<PathDiagnostics> diag(paths);
  std::vector<IntegratedPath> integ(paths);
  std::vector<ConvergencePair> conv(paths);
  const bool can_halve = sc.scheme == Scheme::kEulerMaruyama;
  parallel_for(paths, opts.threads, [&](std::size_t p) {
    const auto path = simulate_matrix_path(sc, p);
    const auto eigs = eigen_paths(path, ranges, tol);
    diag[p] = diagnose_path(path, eigs);
    integ[p] = integrate_sde_path(path, eigs, eigs.spectra.front().full());
    if (can_halve) conv[p] = halving_study(sc, p, ranges, tol);
  });

  double iden = 0, coef_d = 0, coef_o = 0, fmin = INFINITY, fmax = -INFINITY, qmin = INFINITY,
         qmax = -INFINITY, disc = 0, mismatch = 0;
  std::size_t interlace_fail = 0, errors = 0, truncated = 0, improved = 0;
  json per_path = json::array();
  for (std::size_t p = 0; p < paths; ++p) {
    const auto& d = diag[p];
    iden = std::max(iden, d.max_iden_residual);
    coef_d = std::max(coef_d, d.max_coef_diag);
    coef_o = std::max(coef_o, d.max_coef_off);
    fmin = std::min(fmin, d.min_fsum_fraction);
    fmax = std::max(fmax, d.max_fsum_fraction);
    qmin = std::min(qmin, d.min_qv_rate);
    qmax = std::max(qmax, d.max_qv_rate);
    mismatch = std::max(mismatch, d.max_qv_mismatch);
    disc = std::max(disc, integ[p].max_discrepancy());
    interlace_fail += d.interlacing.passed() ? 0 : 1;
    errors += d.error ? 1 : 0;
    truncated += d.stopped_at ? 1 : 0;
    improved += conv[p].improved() ? 1 : 0;
    json j;
    j["path"] = p;
    j["retained_times"] = d.retained;
    j["stopped_at"] = opt_num(d.stopped_at);
    j["error"] = d.error ? json(*d.error) : json(nullptr);
    j["max_iden_residual"] = num(d.max_iden_residual);
    j["max_discrepancy"] = num(integ[p].max_discrepancy());
    j["integration_stopped"] = integ[p].stopped_reason ? json(*integ[p].stopped_reason) : json(nullptr);
    if (can_halve) {
      j["discrepancy_dt"] = num(conv[p].coarse);
      j["discrepancy_half_dt"] = num(conv[p].fine);
    }
    per_path.push_back(std::move(j));
  }

  json checks = json::array();
  checks.push_back(check("evaluable", errors == 0, {{"paths_with_collided_spectrum", errors}}));
  checks.push_back(check("iden_residual", iden <= 1e-8, {{"max", num(iden)}, {"limit", 1e-8}}));
  checks.push_back(check("coef_bound", coef_d < 1 + 1e-10 && coef_o < 1 + 1e-10,
                         {{"max_diag", num(coef_d)}, {"max_off", num(coef_o)}, {"limit", 1 + 1e-10}}));
  checks.push_back(check("f_sum_fraction", fmin >= -1e-10 && fmax <= 1 + 1e-10,
                         {{"min", num(fmin)}, {"max", num(fmax)}}));
  checks.push_back(check("qv_rate_range", qmin >= -1e-10 && qmax <= 2 + 1e-10 && mismatch <= 1e-9,
                         {{"min", num(qmin)}, {"max", num(qmax)}, {"max_rel_mismatch", num(mismatch)}}));
  checks.push_back(check("interlacing", interlace_fail == 0, {{"paths_failing", interlace_fail}}));
  checks.push_back(check("pathwise_discrepancy", disc <= disc_tol,
                         {{"max", num(disc)}, {"limit", disc_tol}}));

  // Realized quadratic variations against the integrated rates, pooled over paths.
  json qv = json::array();
  bool qv_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<double> diffs;
      double real = 0, integrated = 0;
      for (const auto& d : diag) {
        if (d.error) continue;
        real += d.realized(i, j, n);
        integrated += d.integrated(i, j, n);
        diffs.push_back(d.realized(i, j, n) - d.integrated(i, j, n));
      }
      if (diffs.empty()) continue;
      const auto est = MomentEstimate::of(diffs);
      bool ok;
      json e{{"i", i + 1}, {"j", j + 1}, {"realized_mean", num(real / diffs.size())},
             {"integrated_mean", num(integrated / diffs.size())}};
      if (i == j) {
        const double rel = std::abs(real - integrated) / std::max(std::abs(integrated), 1e-300);
        ok = rel <= 0.10;
        e["relative_error"] = num(rel);
      } else {
        ok = diffs.size() < 2 || est.z(0.0) <= 3.0;
        e["z"] = num(est.z(0.0));
      }
      e["passed"] = ok;
      qv_ok = qv_ok && ok;
      qv.push_back(std::move(e));
    }
  checks.push_back(check("quadratic_variation", qv_ok, qv));

  CommandResult r;
  r.report["paths"] = paths;
  r.report["truncated_paths"] = truncated;
  if (can_halve) r.report["halving_improved_paths"] = improved;
  r.report["checks"] = std::move(checks);
  r.report["per_path"] = std::move(per_path);
  finish(r, "verify-sde");
  return r;
}

// ---------------------------------------------------------------------------
// verify-identities

inline json to_json(const IdentityReport& rep) {
  json j;
  j["name"] = rep.name;
  j["mode"] = rep.mode;
  j["instances"] = rep.instances;
  j["failures"] = rep.failures;
  j["counterexamples"] = rep.counterexamples;
  json m = json::object();
  for (const auto& [k, v] : rep.metrics) m[k] = num(v);
  j["metrics"] = std::move(m);
  return j;
}

inline CommandResult cmd_verify_identities(const Config& raw, const RunOptions& opts) {
  const Config c = with_seed(raw, opts);
  IdentitySuiteOptions o;
  o.count = c.get_uint_or("count", 100);
  o.max_size = c.get_uint_or("max_size", 7);
  o.seed = c.get_uint_or("seed", 0);
  if (o.max_size < 3) throw ConfigError("max_size must be >= 3");

  using Runner = IdentityReport (*)(const IdentitySuiteOptions&);
  const Runner runners[] = {run_prop_derif, run_lemma_3_1, run_lemma_3_2_scope, run_det1,
                            run_lemma_3_3,  run_lemma_a2,  run_lemma_a3,        run_lemma_a4,
                            run_lemma_a5,   run_lemma_a1,  run_lemma_a6};
  constexpr std::size_t kCount = std::size(runners);
  std::vector<IdentityReport> reports(kCount);
  parallel_for(kCount, opts.threads, [&](std::size_t i) { reports[i] = runners[i](o); });

  json checks = json::array(), details = json::array();
  for (const auto& rep : reports) {
    json values{{"instances", rep.instances}, {"failures", rep.failures}};
    bool ok = rep.passed();
    if (rep.name == "lemma_3_2_scope") {
      const auto it = rep.metrics.find("literal_counterexamples");
      const double lit = it == rep.metrics.end() ? 0.0 : it->second;
      values["literal_counterexamples"] = lit;
      ok = ok && lit >= 1;
    }
    checks.push_back(check(rep.name, ok, values));
    details.push_back(to_json(rep));
  }
  CommandResult r;
  r.report["count"] = o.count;
  r.report["max_size"] = o.max_size;
  r.report["seed"] = o.seed;
  r.report["checks"] = std::move(checks);
  r.report["identities"] = std::move(details);
  finish(r, "verify-identities");
  return r;
}

// ---------------------------------------------------------------------------
// collision-study

struct CollisionRow {
  double alpha = 0;
  std::size_t paths = 0, absorbed = 0, collided = 0, collided_any = 0;
  double min_gap = INFINITY;
};

inline CommandResult cmd_collision_study(const Config& raw, const RunOptions& opts) {
  const Config c = with_seed(raw, opts);
  const std::size_t n = c.get_uint("n");
  const auto grid = c.get_list("alpha_grid");
  const std::size_t paths = c.get_uint("paths");
  const double eps = c.get_double_or("eps_col", 1e-7);
  const double tol = c.get_double_or("tol", 1e-13);
  if (grid.empty()) throw ConfigError("alpha_grid is empty");

  std::vector<CollisionRow> rows(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Config cg = c;
    std::string alpha;
    for (std::size_t k = 0; k + 1 < n; ++k) alpha += (k ? "," : "") + format_double(grid[g]);
    cg.set("alpha", alpha.empty() ? "1" : alpha);
    SdeConfig sc = sde_config(cg);
    sc.seed = splitmix64(sc.seed + g);  // separate stream family per grid point
    std::vector<CollisionReport> reps(paths);
    parallel_for(paths, opts.threads, [&](std::size_t p) {
      const auto path = simulate_matrix_path(sc, p);
      const auto eigs = eigen_paths(path, all_ranges(n), tol);
      reps[p] = detect_collisions(eigs, path.stopped_at, {eps, std::nullopt});
    });
    CollisionRow& row = rows[g];
    row.alpha = grid[g];
    row.paths = paths;
    for (const auto& rep : reps) {
      row.absorbed += rep.t_0 ? 1 : 0;
      row.collided += rep.t_col ? 1 : 0;
      row.collided_any += rep.t_col_all ? 1 : 0;
      row.min_gap = std::min(row.min_gap, rep.min_gap);
    }
  }

  std::string csv = "alpha,paths,absorbed,absorbed_fraction,collided,collided_all_ranges,min_gap\n";
  json table = json::array();
  bool ok = true;
  for (const auto& row : rows) {
    const double frac = static_cast<double>(row.absorbed) / static_cast<double>(row.paths);
    csv += format_double(row.alpha) + "," + std::to_string(row.paths) + "," +
           std::to_string(row.absorbed) + "," + format_double(frac) + "," +
           std::to_string(row.collided) + "," + std::to_string(row.collided_any) + "," +
           format_double(row.min_gap) + "\n";
    table.push_back({{"alpha", row.alpha}, {"paths", row.paths}, {"absorbed", row.absorbed},
                     {"absorbed_fraction", frac}, {"collided", row.collided},
                     {"collided_all_ranges", row.collided_any}, {"min_gap", num(row.min_gap)}});
    if (row.alpha >= 2.0) ok = ok && row.absorbed == 0 && row.collided_any == 0;
  }

  CommandResult r;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    std::ofstream(std::filesystem::path(*opts.out_dir) / "collisions.csv", std::ios::binary) << csv;
    r.files.push_back("collisions.csv");
  }
  r.report["table"] = table;
  r.report["checks"] = json::array({check("no_events_for_alpha_ge_2", ok, table)});
  finish(r, "collision-study");
  return r;
}

// ---------------------------------------------------------------------------
// gbe

inline CommandResult cmd_gbe(const Config& raw, const RunOptions& opts) {
  const Config c = with_seed(raw, opts);
  GbeConfig g;
  g.n = c.get_uint("n");
  g.beta = c.get_double("beta");
  g.samples = c.get_uint("samples");
  g.seed = c.get_uint("seed");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto trace = trace_moment_check(g);
  const auto slice = time_slice_check(g.n, g.beta, g.samples, g.seed);

  json comps = json::array();
  for (const auto& x : slice.comparisons)
    comps.push_back({{"entry", x.entry}, {"moment", x.moment}, {"process", num(x.process)},
                     {"ensemble", num(x.ensemble)}, {"z", num(x.z)}});
  json checks = json::array();
  checks.push_back(check("trace_square_moment", trace.passed(),
                         {{"expected", trace.expected}, {"mean", num(trace.estimate.mean)},
                          {"std_error", num(trace.estimate.std_error)}, {"z", num(trace.z)},
                          {"z_limit", trace.z_limit}}));
  checks.push_back(check("time_slice", slice.passed(),
                         {{"z_limit", slice.z_limit}, {"failures", slice.failures()}, {"comparisons", comps}}));
  CommandResult r;
  r.report["n"] = g.n;
  r.report["beta"] = g.beta;
  r.report["samples"] = g.samples;
  r.report["checks"] = std::move(checks);
  finish(r, "gbe");
  return r;
}

// ---------------------------------------------------------------------------
// output

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// report.json and manifest.txt in `dir`.
inline void write_outputs(const std::string& dir, const std::string& command, const Config& config,
                          const RunOptions& opts, CommandResult& r, const std::string& started) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir);
  std::ofstream(base / "report.json", std::ios::binary) << r.report.dump(2) << "\n";
  r.files.push_back("report.json");

  const Config resolved = with_seed(config, opts);
  std::ofstream m(base / "manifest.txt", std::ios::binary);
  m << "tool = tridyson " << TRIDYSON_VERSION << "\n";
  m << "command = " << command << "\n";
  m << "seed = " << (resolved.has("seed") ? resolved.raw("seed") : "0") << "\n";
  m << "threads = " << opts.threads << "\n";
  m << "started = " << started << "\n";
  m << "finished = " << utc_now() << "\n";
  m << "[config]\n";
  for (const auto& [k, v] : resolved.values()) m << k << " = " << v << "\n";
  m << "[outputs]\n";
  for (const auto& f : r.files) m << f << "\n";
}

inline CommandResult run_command(const std::string& command, const Config& config,
                                 const RunOptions& opts) {
  if (command == "simulate") return cmd_simulate(config, opts);
  if (command == "verify-sde") return cmd_verify_sde(config, opts);
  if (command == "verify-identities") return cmd_verify_identities(config, opts);
  if (command == "collision-study") return cmd_collision_study(config, opts);
  if (command == "gbe") return cmd_gbe(config, opts);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace tridyson::cli
