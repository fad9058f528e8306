// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "tridyson/diagnostics.hpp"
#include "tridyson/dyson.hpp"
#include "tridyson/gbe.hpp"
#include "tridyson/identities.hpp"

using namespace tridyson;

namespace {

constexpr std::uint64_t kSeed = 0;

struct Outcome {
  bool passed = false;
  std::string summary;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SdeConfig make(std::size_t n, double alpha, double x0, double dt, double t_end) {
  SdeConfig c;
  c.n = n;
  c.alpha.assign(n - 1, alpha);
  c.x0.assign(n - 1, x0);
  c.dt = dt;
  c.t_end = t_end;
  c.seed = kSeed;
  return c;
}

// 1. exact identity suite
Outcome identities() {
  IdentitySuiteOptions o{100, 7, kSeed};
  bool ok = true;
  std::string s;
  for (const auto& r : run_identity_suite(o)) {
    bool good = r.passed() && r.instances >= 100;
    if (r.name == "lemma_3_2_scope") good = good && r.metrics.at("literal_counterexamples") >= 1;
    ok = ok && good;
    s += r.name + "=" + std::to_string(r.failures) + "/" + std::to_string(r.instances) + " ";
    if (!r.passed()) std::printf("    %s counterexample: %s\n", r.name.c_str(), r.counterexamples.front().c_str());
  }
  return {ok, "failures/instances " + s};
}

// 2 and 5 share the same paths.
struct IdenScan {
  double max_residual = 0, max_coef = 0, fmin = INFINITY, fmax = -INFINITY;
  std::size_t errors = 0;
};

IdenScan iden_scan() {
  static const IdenScan scan = [] {
    IdenScan s;
    const auto c = make(5, 2.0, 1.0, 1e-3, 0.5);
    for (std::uint64_t p = 0; p < 20; ++p) {
      const auto path = simulate_matrix_path(c, p);
      const auto d = diagnose_path(path, eigen_paths(path, drift_ranges(5)));
      s.errors += d.error ? 1 : 0;
      s.max_residual = std::max(s.max_residual, d.max_iden_residual);
      s.max_coef = std::max({s.max_coef, d.max_coef_diag, d.max_coef_off});
      s.fmin = std::min(s.fmin, d.min_fsum_fraction);
      s.fmax = std::max(s.fmax, d.max_fsum_fraction);
    }
    return s;
  }();
  return scan;
}

Outcome iden_residual() {
  const auto s = iden_scan();
  return {s.errors == 0 && s.max_residual <= 1e-8, "max relative residual " + fmt("%.3e", s.max_residual)};
}

// 3. integrated SDE against diagonalization, and dt halving
Outcome pathwise() {
  const auto c = make(3, 3.0, 1.0, 2e-4, 0.25);
  double worst = 0;
  int improved = 0;
  bool stopped = false;
  for (std::uint64_t p = 0; p < 20; ++p) {
    const auto r = halving_study(c, p, drift_ranges(3));
    worst = std::max(worst, r.coarse);
    improved += r.improved();
    stopped = stopped || r.coarse_stop || r.fine_stop;
    std::printf("    seed %2llu  dt %.4e  dt/2 %.4e%s\n", static_cast<unsigned long long>(p), r.coarse, r.fine,
                r.improved() ? "" : "  (not improved)");
  }
  return {!stopped && worst <= 0.05 && improved >= 18,
          "max discrepancy " + fmt("%.4f", worst) + ", improved in " + std::to_string(improved) + "/20"};
}

// 4. quadratic variations
Outcome quadratic_variation() {
  bool ok = true;
  std::string s;
  {
    const std::size_t n = 3;
    const auto c = make(n, 3.0, 1.0, 2e-4, 0.25);
    std::vector<PathDiagnostics> ds;
    for (std::uint64_t p = 0; p < 50; ++p) {
      const auto path = simulate_matrix_path(c, p);
      ds.push_back(diagnose_path(path, eigen_paths(path, drift_ranges(n))));
      ok = ok && !ds.back().error;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double real = 0, integ = 0;
      for (const auto& d : ds) {
        real += d.realized(i, i, n);
        integ += d.integrated(i, i, n);
      }
      const double rel = std::abs(real - integ) / integ;
      ok = ok && rel <= 0.10;
      s += "rel" + std::to_string(i + 1) + "=" + fmt("%.3f", rel) + " ";
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<double> diff;
        for (const auto& d : ds) diff.push_back(d.realized(i, j, n) - d.integrated(i, j, n));
        const double z = MomentEstimate::of(diff).z(0.0);
        ok = ok && z <= 3.0;
        s += "z" + std::to_string(i + 1) + std::to_string(j + 1) + "=" + fmt("%.2f", z) + " ";
      }
  }
  {
    const auto c = make(2, 3.0, 1.0, 2e-4, 0.25);
    double q11 = 0, q12 = 0;
    for (std::uint64_t p = 0; p < 50; ++p) {
      const auto path = simulate_matrix_path(c, p);
      const auto d = diagnose_path(path, eigen_paths(path, drift_ranges(2)));
      q11 += d.realized(0, 0, 2) / 50;
      q12 += d.realized(0, 1, 2) / 50;
    }
    const double ratio = q11 / (2 * c.t_end);
    ok = ok && ratio >= 0.9 && ratio <= 1.1 && std::abs(q12) <= 0.05 * c.t_end;
    s += "n2 ratio=" + fmt("%.4f", ratio) + " cross=" + fmt("%.2e", q12);
  }
  return {ok, s};
}

// 5. diffusion coefficient bound
Outcome coef_bound() {
  const auto s = iden_scan();
  const bool ok = s.errors == 0 && s.max_coef < 1 + 1e-10 && s.fmin >= -1e-10 && s.fmax <= 1 + 1e-10;
  return {ok, "max normalized coefficient " + fmt("%.6f", s.max_coef) + ", F fraction in [" +
                  fmt("%.3e", s.fmin) + ", " + fmt("%.6f", s.fmax) + "]"};
}

// 6. non-collision and the absorbing contrast
Outcome non_collision() {
  const auto c = make(4, 2.0, 1.0, 1e-3, 1.0);
  std::size_t collisions = 0, absorptions = 0, interlace = 0;
  double min_gap = INFINITY;
  for (std::uint64_t p = 0; p < 100; ++p) {
    const auto path = simulate_matrix_path(c, p);
    const auto eigs = eigen_paths(path, all_ranges(4));
    const auto rep = detect_collisions(eigs, path.stopped_at, {1e-7, 1e-6});
    collisions += rep.t_col_all ? 1 : 0;
    absorptions += rep.t_0 ? 1 : 0;
    min_gap = std::min(min_gap, rep.min_gap);
    interlace += check_path_interlacing(path, eigs).passed() ? 0 : 1;
  }
  const auto d = make(2, 0.5, 0.1, 1e-3, 1.0);
  std::size_t absorbed = 0;
  for (std::uint64_t p = 0; p < 1000; ++p) absorbed += simulate_matrix_path(d, p).stopped_at ? 1 : 0;
  const double frac = absorbed / 1000.0;
  return {collisions == 0 && absorptions == 0 && interlace == 0 && frac > 0.05,
          "collisions " + std::to_string(collisions) + ", absorptions " + std::to_string(absorptions) +
              ", interlacing failures " + std::to_string(interlace) + ", min gap " + fmt("%.3e", min_gap) +
              "; alpha=0.5 absorbed fraction " + fmt("%.3f", frac)};
}

// 7. ensemble moments
Outcome gbe_moments() {
  bool ok = true;
  std::string s;
  for (auto [n, beta] : {std::pair<std::size_t, double>{3, 0.5}, {4, 1.0}, {4, 2.0}}) {
    const auto r = trace_moment_check({n, beta, 10000, kSeed});
    ok = ok && r.passed();
    s += "z(" + std::to_string(n) + "," + fmt("%g", beta) + ")=" + fmt("%.2f", r.z) + " ";
  }
  const auto t = time_slice_check(3, 1.0, 10000, kSeed);
  double zmax = 0;
  for (const auto& c : t.comparisons) zmax = std::max(zmax, c.z);
  ok = ok && t.passed();
  return {ok, s + "time slice max z=" + fmt("%.2f", zmax) + " failures " + std::to_string(t.failures())};
}

// 8. eigensolver
Outcome eigensolver() {
  const double tol = 1e-12;
  Engine eng = make_stream(kSeed, 8, StreamTag::kIdentities);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::size_t bad = 0, checked = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto h = random_tridiag(size(eng), eng, -10.0, 10.0);
    const auto s = eigenvalues(h, tol);
    for (std::size_t i = 0; i < s.size(); ++i, ++checked)
      if (sturm_count(h, s[i] - 2 * tol) > static_cast<int>(i) ||
          sturm_count(h, s[i] + 2 * tol) < static_cast<int>(i) + 1)
        ++bad;
  }
  double err = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    SymTridiag<double> h(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0));
    const auto s = eigenvalues(h, tol);
    for (std::size_t k = 1; k <= n; ++k)
      err = std::max(err, std::abs(s[n - k] - 2 * std::cos(k * std::numbers::pi / (n + 1.0))));
  }
  return {bad == 0 && err <= 1e-10, std::to_string(bad) + "/" + std::to_string(checked) +
                                        " bracket failures, closed-form error " + fmt("%.2e", err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact identity suite", identities},
      {"iden residual along paths", iden_residual},
      {"pathwise SDE vs diagonalization", pathwise},
      {"quadratic variations", quadratic_variation},
      {"diffusion coefficient bound", coef_bound},
      {"non-collision and absorption contrast", non_collision},
      {"beta ensemble moments", gbe_moments},
      {"eigensolver bracketing", eigensolver},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto o = criteria[k].second();
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.summary.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
