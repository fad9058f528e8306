#pragma once

// Matrix-valued paths H(t) (Brownian diagonal, Bessel off-diagonal), eigenvalue
// paths of their principal minors, and evaluators for every term of the
// eigenvalue SDE: drift, diffusion coefficients, quadratic variations, the
// minor products F^{k,l}, and the difference-product identity.
//
// Eigenvalue indices i, j are 0-based; matrix positions k, l and minor ranges
// are 1-based.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tridyson/eig.hpp"
#include "tridyson/sde.hpp"
#include "tridyson/tridiag.hpp"

namespace tridyson {

class CollisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Matrix paths

struct MatrixPath {
  SdeConfig config;
  std::vector<double> times;
  std::vector<SymTridiag<double>> matrices;
  NoiseGrid noise;
  std::optional<double> stopped_at;  // absorption time T_0 when a Bessel entry hit 0

  [[nodiscard]] std::size_t size() const { return times.size(); }
};

/// H(t) on the grid driven by the given noise. Diagonal entries are
/// diag0_k + sqrt(2) B_k(t); off-diagonals are Bessel paths. When an entry with
/// alpha < 2 is absorbed the path stops at the last grid time before T_0.
inline MatrixPath simulate_matrix_path(const SdeConfig& config, NoiseGrid noise,
                                       std::uint64_t path_index = 0) {
  config.validate();
  const std::size_t n = config.n;
  const std::size_t steps = noise.steps();
  if (noise.n() != n) throw std::invalid_argument("noise grid size does not match config.n");
  const double dt = noise.dt();

  MatrixPath path;
  path.config = config;
  path.config.dt = dt;
  path.times.reserve(steps + 1);
  path.matrices.reserve(steps + 1);

  std::vector<double> diag = config.diag0.empty() ? std::vector<double>(n, 0.0) : config.diag0;
  std::vector<BesselState> bessel(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) bessel[k].value = config.x0[k];
  auto snapshot = [&] {
    std::vector<double> off(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) off[k] = bessel[k].value;
    return SymTridiag<double>(diag, std::move(off));
  };

  std::optional<Engine> exact_eng;
  if (config.scheme == Scheme::kExactSquaredBessel)
    exact_eng.emplace(make_stream(config.seed, path_index, StreamTag::kExactBessel));

  path.times.push_back(0.0);
  path.matrices.push_back(snapshot());
  const double sqrt2 = std::sqrt(2.0);
  for (std::size_t m = 0; m < steps; ++m) {
    const double t = static_cast<double>(m) * dt;
    for (std::size_t k = 0; k < n; ++k) diag[k] += sqrt2 * noise.diag(m, k);
    std::optional<double> absorbed_at;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (config.scheme == Scheme::kEulerMaruyama) {
        bessel[k] = bessel_step(bessel[k], config.alpha[k], dt, noise.off(m, k), t);
        if (bessel[k].absorbed) {
          const double tau = *bessel[k].absorption_time;
          absorbed_at = absorbed_at ? std::min(*absorbed_at, tau) : tau;
        }
      } else {
        bessel[k] = bessel_step_exact(bessel[k], config.alpha[k], dt, *exact_eng);
      }
    }
    if (absorbed_at) {
      path.stopped_at = absorbed_at;
      break;
    }
    path.times.push_back(static_cast<double>(m + 1) * dt);
    path.matrices.push_back(snapshot());
  }
  path.noise = std::move(noise);
  return path;
}

inline MatrixPath simulate_matrix_path(const SdeConfig& config, std::uint64_t path_index) {
  return simulate_matrix_path(config, make_noise(config, path_index), path_index);
}

// ---------------------------------------------------------------------------
// Minor spectra

/// Spectra of a set of principal minors of one matrix.
class MinorSpectra {
 public:
  MinorSpectra() = default;
  explicit MinorSpectra(std::size_t n) : n_(n), table_((n + 2) * (n + 2)) {}

  [[nodiscard]] std::size_t n() const { return n_; }

  void set(MinorRange r, Spectrum s) { table_.at(index(r)) = std::move(s); }

  [[nodiscard]] bool has(MinorRange r) const {
    return r.empty() || (r.valid_for(n_) && table_[index(r)].has_value());
  }

  /// Spectrum of H^{p,q}; the empty minor has no eigenvalues.
  [[nodiscard]] const Spectrum& at(MinorRange r) const {
    static const Spectrum kEmpty{};
    if (r.empty()) return kEmpty;
    const auto& s = table_.at(index(r));
    if (!s) throw std::out_of_range("minor spectrum not tracked");
    return *s;
  }

  [[nodiscard]] const Spectrum& full() const { return at({1, static_cast<int>(n_)}); }

  /// f^{p,q}(lambda) = prod_r (lambda - lambda_r^{p,q}); 1 for the empty minor.
  [[nodiscard]] double charpoly(MinorRange r, double lambda) const {
    if (r.empty()) return 1.0;
    double v = 1.0;
    for (double root : at(r).values) v *= lambda - root;
    return v;
  }

 private:
  [[nodiscard]] std::size_t index(MinorRange r) const {
    if (!r.valid_for(n_)) throw std::out_of_range("minor range invalid for this matrix");
    return static_cast<std::size_t>(r.p) * (n_ + 2) + static_cast<std::size_t>(r.q);
  }
  std::size_t n_ = 0;
  std::vector<std::optional<Spectrum>> table_;
};

/// Every leading minor (1,q) and trailing minor (p,n), including the full matrix.
/// These are all the ranges the drift, diffusion and quadratic-variation formulas use.
inline std::vector<MinorRange> drift_ranges(std::size_t n) {
  const int nn = static_cast<int>(n);
  std::vector<MinorRange> r;
  for (int q = 1; q <= nn; ++q) r.push_back({1, q});
  for (int p = 2; p <= nn; ++p) r.push_back({p, nn});
  return r;
}

/// Every non-empty contiguous minor (p,q).
inline std::vector<MinorRange> all_ranges(std::size_t n) {
  const int nn = static_cast<int>(n);
  std::vector<MinorRange> r;
  for (int p = 1; p <= nn; ++p)
    for (int q = p; q <= nn; ++q) r.push_back({p, q});
  return r;
}

inline MinorSpectra minor_spectra(const SymTridiag<double>& h, std::span<const MinorRange> ranges,
                                  double tol = 1e-13) {
  MinorSpectra s(h.size());
  s.set({1, static_cast<int>(h.size())}, eigenvalues(h, tol));
  for (const auto& r : ranges) {
    if (r.empty() || s.has(r)) continue;
    s.set(r, eigenvalues(minor(h, r), tol));
  }
  return s;
}

struct EigenPathSet {
  std::vector<MinorRange> ranges;
  std::vector<double> times;
  std::vector<MinorSpectra> spectra;

  [[nodiscard]] std::size_t size() const { return times.size(); }
};

/// Spectra of the full matrix and every requested minor at each retained time.
inline EigenPathSet eigen_paths(const MatrixPath& path, std::vector<MinorRange> ranges,
                                double tol = 1e-13) {
  const int n = static_cast<int>(path.config.n);
  for (const auto& r : ranges)
    if (!r.valid_for(path.config.n)) throw std::out_of_range("requested minor range is invalid");
  if (std::find(ranges.begin(), ranges.end(), MinorRange{1, n}) == ranges.end())
    ranges.insert(ranges.begin(), MinorRange{1, n});
  EigenPathSet set;
  set.ranges = ranges;
  set.times = path.times;
  set.spectra.reserve(path.size());
  for (const auto& h : path.matrices) set.spectra.push_back(minor_spectra(h, ranges, tol));
  return set;
}

// ---------------------------------------------------------------------------
// Per-time evaluators

/// State needed to evaluate the eigenvalue SDE coefficients at one time:
/// the full spectrum, the minor spectra, and the Bessel values X_k.
struct EigenState {
  std::span<const double> eigenvalues;  // ascending, size n
  const MinorSpectra* minors = nullptr;
  std::span<const double> bessel;       // size n-1

  [[nodiscard]] std::size_t n() const { return eigenvalues.size(); }
  [[nodiscard]] double f(MinorRange r, double lambda) const { return minors->charpoly(r, lambda); }
};

inline EigenState make_state(const SymTridiag<double>& h, const MinorSpectra& spectra) {
  return {spectra.full().values, &spectra, h.offdiag()};
}

namespace detail {

inline void require_simple(const EigenState& s) {
  const auto& ev = s.eigenvalues;
  const double scale = ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  for (std::size_t j = 1; j < ev.size(); ++j)
    if (!(ev[j] - ev[j - 1] > floor))
      throw CollisionError("spectrum is not simple (gap " + std::to_string(ev[j] - ev[j - 1]) + ")");
}

inline double diff_product(const EigenState& s, std::size_t i) {
  double p = 1.0;
  for (std::size_t j = 0; j < s.n(); ++j)
    if (j != i) p *= s.eigenvalues[i] - s.eigenvalues[j];
  return p;
}

inline double coulomb_sum(const EigenState& s, std::size_t i) {
  double c = 0.0;
  for (std::size_t j = 0; j < s.n(); ++j)
    if (j != i) c += 1.0 / (s.eigenvalues[i] - s.eigenvalues[j]);
  return c;
}

/// The four minors whose characteristic polynomials multiply into F^{k,l}.
inline std::array<MinorRange, 4> f_kl_ranges(int n, int k, int l) {
  return {MinorRange{1, k - 1}, MinorRange{k + 1, n}, MinorRange{1, l - 1}, MinorRange{l + 1, n}};
}

}  // namespace detail

/// F^{k,l}(lambda) = f^{1,k-1} f^{k+1,n} f^{1,l-1} f^{l+1,n} at lambda, for l - k > 1.
inline double f_kl(const MinorSpectra& spectra, int k, int l, double lambda) {
  const int n = static_cast<int>(spectra.n());
  if (l - k <= 1) throw std::domain_error("F^{k,l} needs l - k > 1");
  if (k < 1 || l > n) throw std::out_of_range("F^{k,l} index out of range");
  double v = 1.0;
  for (const auto& r : detail::f_kl_ranges(n, k, l)) v *= spectra.charpoly(r, lambda);
  return v;
}

/// Sum of F^{k,l}(lambda) over all pairs with l - k > 1 (0 when n <= 2).
inline double f_sum(const MinorSpectra& spectra, double lambda) {
  const int n = static_cast<int>(spectra.n());
  double s = 0.0;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 2; l <= n; ++l) s += f_kl(spectra, k, l, lambda);
  return s;
}

/// d/dlambda F^{k,l}. Uses F * sum 1/(lambda - root) when lambda is separated
/// from every root by more than `delta`; otherwise the product rule with the
/// vanishing factor dropped analytically.
inline double f_kl_derivative(const MinorSpectra& spectra, int k, int l, double lambda,
                              double delta) {
  const int n = static_cast<int>(spectra.n());
  if (l - k <= 1) throw std::domain_error("F^{k,l} needs l - k > 1");
  std::vector<double> roots;
  for (const auto& r : detail::f_kl_ranges(n, k, l)) {
    const auto& v = spectra.at(r).values;
    roots.insert(roots.end(), v.begin(), v.end());
  }
  double min_sep = std::numeric_limits<double>::infinity();
  for (double r : roots) min_sep = std::min(min_sep, std::abs(lambda - r));
  if (min_sep > delta) {
    double prod = 1.0, logd = 0.0;
    for (double r : roots) {
      prod *= lambda - r;
      logd += 1.0 / (lambda - r);
    }
    return prod * logd;
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < roots.size(); ++a) {
    double term = 1.0;
    for (std::size_t b = 0; b < roots.size(); ++b)
      if (b != a) term *= lambda - roots[b];
    sum += term;
  }
  return sum;
}

/// dt-coefficient of d lambda_i in the eigenvalue SDE:
///   2 sum_{j!=i} 1/(l_i - l_j)
///   + sum_k (alpha_k - 2) f^{1,k-1} f^{k+2,n} / P
///   + 2/P^2 [ (sum_{j!=i} 2/(l_i - l_j)) sum F^{k,l} - sum dF^{k,l}/dlambda ],
/// with P = prod_{j!=i} (l_i - l_j) and every f, F evaluated at l_i.
inline double drift_at(const EigenState& s, std::span<const double> alpha, std::size_t i) {
  detail::require_simple(s);
  const int n = static_cast<int>(s.n());
  if (alpha.size() + 1 != s.n()) throw std::invalid_argument("alpha needs n-1 entries");
  for (double x : s.bessel)
    if (!(x > 0.0)) throw std::domain_error("drift needs positive Bessel values");
  const double li = s.eigenvalues[i];
  const double p = detail::diff_product(s, i);
  const double coulomb = detail::coulomb_sum(s, i);

  double drift = 2.0 * coulomb;
  for (int k = 1; k <= n - 1; ++k)
    drift += (alpha[k - 1] - 2.0) * s.f({1, k - 1}, li) * s.f({k + 2, n}, li) / p;

  if (n >= 3) {
    const double diameter = s.eigenvalues.back() - s.eigenvalues.front();
    const double delta = 1e-8 * diameter;
    double fs = 0.0, dfs = 0.0;
    for (int k = 1; k <= n; ++k)
      for (int l = k + 2; l <= n; ++l) {
        fs += f_kl(*s.minors, k, l, li);
        dfs += f_kl_derivative(*s.minors, k, l, li, delta);
      }
    drift += 2.0 / (p * p) * (2.0 * coulomb * fs - dfs);
  }
  return drift;
}

/// Martingale coefficients of d lambda_i: `diag[k]` multiplies dB_k and `off[k]`
/// multiplies dB_{k,k+1} (0-based storage).
struct DiffusionCoeffs {
  std::vector<double> diag;
  std::vector<double> off;

  /// The bounded quantities |f f / P| and |sqrt(2) X_k f f / P|, i.e. diag/sqrt(2) and off/sqrt(2).
  [[nodiscard]] DiffusionCoeffs normalized() const {
    DiffusionCoeffs c = *this;
    const double inv = 1.0 / std::sqrt(2.0);
    for (auto& x : c.diag) x *= inv;
    for (auto& x : c.off) x *= inv;
    return c;
  }
  [[nodiscard]] double sum_squares() const {
    double s = 0.0;
    for (double x : diag) s += x * x;
    for (double x : off) s += x * x;
    return s;
  }
};

inline DiffusionCoeffs diffusion_coeffs_at(const EigenState& s, std::size_t i) {
  detail::require_simple(s);
  const int n = static_cast<int>(s.n());
  const double li = s.eigenvalues[i];
  const double p = detail::diff_product(s, i);
  DiffusionCoeffs c;
  c.diag.resize(s.n());
  c.off.resize(s.n() - 1);
  const double sqrt2 = std::sqrt(2.0);
  for (int k = 1; k <= n; ++k)
    c.diag[k - 1] = sqrt2 * s.f({1, k - 1}, li) * s.f({k + 1, n}, li) / p;
  for (int k = 1; k <= n - 1; ++k)
    c.off[k - 1] = 2.0 * s.bessel[k - 1] * s.f({1, k - 1}, li) * s.f({k + 2, n}, li) / p;
  return c;
}

/// 2 sum F^{k,l}(l_i) / prod_{j!=i}(l_i - l_j)^2, which lies in [0, 1].
inline double f_sum_fraction(const EigenState& s, std::size_t i) {
  detail::require_simple(s);
  const double p = detail::diff_product(s, i);
  return 2.0 * f_sum(*s.minors, s.eigenvalues[i]) / (p * p);
}

/// d<lambda_i, lambda_j>/dt. Diagonal: 2(1 - 2 sum F / P_i^2). Off-diagonal:
/// -4 sum_{l-k>1} det((l_i I - H)_{k|l}) det((l_j I - H)_{l|k}) / (P_i P_j).
inline double qv_rate_at(const EigenState& s, const SymTridiag<double>& h, std::size_t i,
                         std::size_t j) {
  detail::require_simple(s);
  if (i == j) return 2.0 * (1.0 - f_sum_fraction(s, i));
  const int n = static_cast<int>(s.n());
  const double li = s.eigenvalues[i], lj = s.eigenvalues[j];
  double sum = 0.0;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 2; l <= n; ++l)
      sum += deleted_minor_det(h, li, k, l) * deleted_minor_det(h, lj, l, k);
  return -4.0 * sum / (detail::diff_product(s, i) * detail::diff_product(s, j));
}

/// Same rate as the inner product of the two diffusion-coefficient vectors.
inline double qv_rate_from_coeffs(const EigenState& s, std::size_t i, std::size_t j) {
  const auto ci = diffusion_coeffs_at(s, i);
  const auto cj = diffusion_coeffs_at(s, j);
  double r = 0.0;
  for (std::size_t k = 0; k < ci.diag.size(); ++k) r += ci.diag[k] * cj.diag[k];
  for (std::size_t k = 0; k < ci.off.size(); ++k) r += ci.off[k] * cj.off[k];
  return r;
}

/// Relative residual |LHS - RHS| / max(1, |LHS|) of
///   prod_{j!=i}(l_i - l_j)^2 = sum_k (f^{1,k-1} f^{k+1,n})^2
///                            + 2 sum_k X_k^2 (f^{1,k-1} f^{k+2,n})^2 + 2 sum F^{k,l}.
inline double iden_residual_at(const EigenState& s, std::size_t i) {
  const int n = static_cast<int>(s.n());
  const double li = s.eigenvalues[i];
  const double p = detail::diff_product(s, i);
  const double lhs = p * p;
  double rhs = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double t = s.f({1, k - 1}, li) * s.f({k + 1, n}, li);
    rhs += t * t;
  }
  for (int k = 1; k <= n - 1; ++k) {
    const double t = s.bessel[k - 1] * s.f({1, k - 1}, li) * s.f({k + 2, n}, li);
    rhs += 2.0 * t * t;
  }
  rhs += 2.0 * f_sum(*s.minors, li);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

// ---------------------------------------------------------------------------
// Collisions

struct CollisionOptions {
  double relative_eps = 1e-7;         // eps_col = relative_eps * spectral diameter
  std::optional<double> absolute_eps; // overrides the relative threshold when set
};

struct CollisionReport {
  std::map<MinorRange, double> per_range;      // first time the minor's min gap < eps_col
  std::optional<double> t_col_all;             // over every tracked range
  std::optional<double> t_col;                 // over ranges with q - p > 1
  std::optional<double> t_0;                   // Bessel absorption time
  std::optional<double> t_col_0;               // min(t_col, t_0)
  double min_gap = std::numeric_limits<double>::infinity();  // over all ranges and times

  [[nodiscard]] bool any_event() const { return t_col_all.has_value() || t_0.has_value(); }
};

namespace detail {
inline std::optional<double> opt_min(std::optional<double> a, std::optional<double> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}
}  // namespace detail

inline CollisionReport detect_collisions(const EigenPathSet& eigs, std::optional<double> t_0,
                                         const CollisionOptions& opts = {}) {
  CollisionReport rep;
  rep.t_0 = t_0;
  for (std::size_t m = 0; m < eigs.size(); ++m) {
    const auto& snap = eigs.spectra[m];
    const double eps = opts.absolute_eps ? *opts.absolute_eps
                                         : opts.relative_eps * snap.full().diameter();
    for (const auto& r : eigs.ranges) {
      if (r.size() < 2) continue;
      const double gap = snap.at(r).min_gap();
      rep.min_gap = std::min(rep.min_gap, gap);
      if (gap < eps && !rep.per_range.contains(r)) rep.per_range[r] = eigs.times[m];
    }
  }
  for (const auto& [r, t] : rep.per_range) {
    rep.t_col_all = detail::opt_min(rep.t_col_all, t);
    if (r.q - r.p > 1) rep.t_col = detail::opt_min(rep.t_col, t);
  }
  rep.t_col_0 = detail::opt_min(rep.t_col, rep.t_0);
  return rep;
}

/// Interlacing of every tracked minor against its one-smaller tracked minors,
/// at every retained time. Strictness is only required when the off-diagonal
/// entries inside the larger minor all exceed `offdiag_floor`.
struct PathInterlacingReport {
  std::size_t comparisons = 0;
  std::size_t weak_failures = 0;
  std::size_t strict_failures = 0;
  std::size_t strict_skipped = 0;
  double min_margin = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool passed() const { return weak_failures == 0 && strict_failures == 0; }
};

inline PathInterlacingReport check_path_interlacing(const MatrixPath& path,
                                                    const EigenPathSet& eigs,
                                                    double offdiag_floor = 1e-10) {
  PathInterlacingReport rep;
  for (std::size_t m = 0; m < eigs.size(); ++m) {
    const auto& snap = eigs.spectra[m];
    const auto& h = path.matrices[m];
    for (const auto& outer : eigs.ranges) {
      if (outer.size() < 2) continue;
      bool coupled = true;
      for (int k = outer.p; k < outer.q; ++k) coupled &= h.b(k) > offdiag_floor;
      for (MinorRange inner : {MinorRange{outer.p, outer.q - 1}, MinorRange{outer.p + 1, outer.q}}) {
        if (!snap.has(inner)) continue;
        const auto& so = snap.at(outer);
        auto r = check_interlacing(so, snap.at(inner), coupled, default_gap_tol(so));
        ++rep.comparisons;
        rep.min_margin = std::min(rep.min_margin, r.min_margin);
        if (!r.weak) ++rep.weak_failures;
        if (coupled && !r.strict) ++rep.strict_failures;
        if (!coupled) ++rep.strict_skipped;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pathwise SDE integration

struct IntegratedPath {
  std::vector<double> times;
  std::vector<std::vector<double>> eigenvalues;  // integrated spectra, one per retained time
  std::vector<double> discrepancy;               // max_i |integrated - diagonalized| per time
  std::optional<std::string> stopped_reason;

  [[nodiscard]] double max_discrepancy() const {
    double d = 0.0;
    for (double x : discrepancy) d = std::max(d, x);
    return d;
  }
};

/// Euler-Maruyama integration of the eigenvalue SDE with the path's own noise.
/// The eigenvalues are the integrated state; every proper minor spectrum that
/// enters the coefficients is read from `eigs` (direct diagonalization), since the
/// eigenvalues alone do not form a Markov system. Stops early if the integrated
/// spectrum stops being simple or the coefficients cannot be evaluated.
inline IntegratedPath integrate_sde_path(const MatrixPath& path, const EigenPathSet& eigs,
                                         const Spectrum& start) {
  const std::size_t n = path.config.n;
  if (path.size() == 0 || eigs.spectra.size() != path.size())
    throw std::invalid_argument("eigenvalue paths do not match the matrix path");
  if (start.size() != n) throw std::invalid_argument("start spectrum has the wrong size");
  if (start.min_gap() <= 0.0) throw CollisionError("start spectrum is not simple");
  const double dt = path.noise.dt();
  IntegratedPath out;
  std::vector<double> lam = start.values;
  out.times.push_back(path.times.front());
  out.eigenvalues.push_back(lam);
  auto discrepancy = [&](std::size_t m) {
    double d = 0.0;
    const auto& ref = eigs.spectra[m].full().values;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(lam[i] - ref[i]));
    return d;
  };
  out.discrepancy.push_back(discrepancy(0));

  std::vector<double> next(n);
  for (std::size_t m = 0; m + 1 < path.size(); ++m) {
    EigenState s{lam, &eigs.spectra[m], path.matrices[m].offdiag()};
    try {
      for (std::size_t i = 0; i < n; ++i) {
        double dl = drift_at(s, path.config.alpha, i) * dt;
        const auto c = diffusion_coeffs_at(s, i);
        for (std::size_t k = 0; k < n; ++k) dl += c.diag[k] * path.noise.diag(m, k);
        for (std::size_t k = 0; k + 1 < n; ++k) dl += c.off[k] * path.noise.off(m, k);
        next[i] = lam[i] + dl;
      }
    } catch (const std::domain_error& e) {
      out.stopped_reason = e.what();
      break;
    }
    if (!std::is_sorted(next.begin(), next.end())) {
      out.stopped_reason = "integrated eigenvalues crossed";
      break;
    }
    lam = next;
    out.times.push_back(path.times[m + 1]);
    out.eigenvalues.push_back(lam);
    out.discrepancy.push_back(discrepancy(m + 1));
  }
  return out;
}

}  // namespace tridyson
