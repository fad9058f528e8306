#pragma once

// Sturm-sequence bisection eigensolver for symmetric tridiagonal matrices,
// characteristic-polynomial derivatives and interlacing checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tridyson/tridiag.hpp"

namespace tridyson {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues in ascending order together with the absolute tolerance used.
struct Spectrum {
  std::vector<double> values;
  double tol = 0.0;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values[i]; }
  [[nodiscard]] double diameter() const {
    return values.empty() ? 0.0 : values.back() - values.front();
  }
  /// Smallest gap between consecutive eigenvalues; +inf for fewer than two.
  [[nodiscard]] double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) g = std::min(g, values[i] - values[i - 1]);
    return g;
  }
};

struct GershgorinBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline GershgorinBounds gershgorin(const SymTridiag<double>& h) {
  const std::size_t n = h.size();
  GershgorinBounds g{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(h.offdiag()[i - 1]);
    if (i + 1 < n) r += std::abs(h.offdiag()[i]);
    g.lower = std::min(g.lower, h.diag()[i] - r);
    g.upper = std::max(g.upper, h.diag()[i] + r);
  }
  return g;
}

/// Number of eigenvalues strictly below lambda.
///
/// Counts negative pivots d_k of the LDL^T factorization of H - lambda I, i.e.
/// ratios of consecutive leading minors, which avoids overflow. An exactly zero
/// pivot means lambda is an eigenvalue of the leading block and is nudged positive.
inline int sturm_count(const SymTridiag<double>& h, double lambda) {
  const std::size_t n = h.size();
  int count = 0;
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double b2 = k == 0 ? 0.0 : h.offdiag()[k - 1] * h.offdiag()[k - 1];
    d = (h.diag()[k] - lambda) - (k == 0 ? 0.0 : b2 / d);
    if (d == 0.0) d = std::numeric_limits<double>::min() * 4.0;
    if (d < 0.0) ++count;
  }
  return count;
}

inline constexpr int kMaxBisectionIterations = 200;

/// All eigenvalues by bisection on the Sturm count, each bracketed to width < tol.
inline Spectrum eigenvalues(const SymTridiag<double>& h, double tol = 1e-13) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalue tolerance must be positive");
  const std::size_t n = h.size();
  Spectrum s{{}, tol};
  if (n == 0) return s;
  if (n == 1) {
    s.values = {h.diag()[0]};
    return s;
  }
  const auto g = gershgorin(h);
  const double pad = tol + 4.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::abs(g.lower), std::abs(g.upper));
  s.values.resize(n);
  double floor = g.lower - pad;  // every later eigenvalue is >= the previous one
  for (std::size_t i = 0; i < n; ++i) {
    double lo = floor;
    double hi = g.upper + pad;
    int it = 0;
    while (hi - lo >= tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval at machine resolution
      if (++it > kMaxBisectionIterations)
        throw ConvergenceError("bisection did not converge for eigenvalue " + std::to_string(i));
      if (sturm_count(h, mid) > static_cast<int>(i))
        hi = mid;
      else
        lo = mid;
    }
    s.values[i] = 0.5 * (lo + hi);
    floor = lo;
  }
  return s;
}

/// f(lambda), f'(lambda), f''(lambda) of a characteristic polynomial.
struct CharpolyDerivs {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Derivatives from the product form f(lambda) = prod_j (lambda - lambda_j).
inline CharpolyDerivs charpoly_derivs_at(const Spectrum& eigs, double lambda) {
  CharpolyDerivs r{1.0, 0.0, 0.0};
  for (double root : eigs.values) {
    const double x = lambda - root;
    r.d2 = r.d2 * x + 2.0 * r.d1;
    r.d1 = r.d1 * x + r.f;
    r.f *= x;
  }
  return r;
}

/// Derivatives from minor determinants:
/// f' = sum_k det((lambda I - H)_{k|k}), f'' = 2 sum_{k<l} det((lambda I - H)_{kl|kl}).
inline CharpolyDerivs charpoly_derivs_from_minors(const SymTridiag<double>& h, double lambda) {
  const int n = static_cast<int>(h.size());
  CharpolyDerivs r{charpoly_eval(h, lambda), 0.0, 0.0};
  for (int k = 1; k <= n; ++k) r.d1 += deleted_minor_det(h, lambda, k, k);
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l) r.d2 += 2.0 * pair_deleted_principal_det(h, lambda, k, l);
  return r;
}

struct InterlacingReport {
  bool weak = false;    // lambda_k <= eta_k <= lambda_{k+1} for all k
  bool strict = false;  // same with margins > gap_tol
  double min_margin = std::numeric_limits<double>::infinity();
  bool strict_requested = false;

  [[nodiscard]] bool passed() const { return strict_requested ? strict : weak; }
};

/// Interlacing of an (n-1)-sized spectrum inside an n-sized one.
inline InterlacingReport check_interlacing(const Spectrum& outer, const Spectrum& inner,
                                           bool strict, double gap_tol) {
  if (inner.size() + 1 != outer.size())
    throw std::invalid_argument("interlacing needs inner size = outer size - 1 (got " +
                                std::to_string(inner.size()) + " vs " +
                                std::to_string(outer.size()) + ")");
  InterlacingReport r;
  r.strict_requested = strict;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    r.min_margin = std::min({r.min_margin, inner[k] - outer[k], outer[k + 1] - inner[k]});
  }
  r.weak = r.min_margin >= 0.0;
  r.strict = r.min_margin > gap_tol;
  return r;
}

/// Default strictness margin for floating-point spectra.
inline double default_gap_tol(const Spectrum& outer) {
  return 1e-12 * std::max(outer.diameter(), 1e-300);
}

/// Interlacing of a minor's spectrum checked through Sturm counts of the full matrix:
/// exactly k+1 eigenvalues of h lie below the k-th minor eigenvalue. Unlike the margin
/// test this still resolves gaps far below the spectral scale (weakly coupled blocks).
inline bool sturm_separates(const SymTridiag<double>& h, const Spectrum& inner) {
  if (inner.size() + 1 != h.size()) throw std::invalid_argument("sturm_separates: size mismatch");
  for (std::size_t k = 0; k < inner.size(); ++k)
    if (sturm_count(h, inner[k]) != static_cast<int>(k) + 1) return false;
  return true;
}

}  // namespace tridyson
