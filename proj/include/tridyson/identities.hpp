#pragma once

// Randomized certification of the determinant identities behind the eigenvalue
// SDE. Polynomial identities in lambda are compared coefficient by coefficient
// over exact rationals; derivatives with respect to matrix entries are exact
// finite differences, since det(lambda I - H) is affine in each diagonal entry
// and quadratic in each symmetric off-diagonal pair.
//
// Diagonal entries are parametrized directly as a_k (the Brownian coordinate is
// x_k = a_k / sqrt(2)), so every sqrt(2) enters only squared: (df/dx_k)^2 = 2 (df/da_k)^2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tridyson/dense.hpp"
#include "tridyson/eig.hpp"
#include "tridyson/rational.hpp"
#include "tridyson/rng.hpp"
#include "tridyson/tridiag.hpp"

namespace tridyson {

struct IdentityReport {
  std::string name;
  std::string mode = "exact";  // "exact" or "float"
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // first few failing instances, printable
  std::map<std::string, double> metrics;

  static constexpr std::size_t kMaxCounterexamples = 5;

  IdentityReport() = default;
  explicit IdentityReport(std::string n, std::string m = "exact")
      : name(std::move(n)), mode(std::move(m)) {}

  [[nodiscard]] bool passed() const { return failures == 0; }

  /// Records one instance; `detail` is kept when the instance fails.
  void record(bool ok, const std::string& detail) {
    ++instances;
    if (ok) return;
    ++failures;
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(detail);
  }

  void merge(const IdentityReport& o) {
    instances += o.instances;
    failures += o.failures;
    for (const auto& c : o.counterexamples)
      if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(c);
    for (const auto& [k, v] : o.metrics) {
      if (k.starts_with("max_"))
        metrics[k] = std::max(metrics[k], v);
      else
        metrics[k] += v;
    }
  }
};

// ---------------------------------------------------------------------------
// Random instances: numerators uniform in [-20, 20], denominators in [1, 10].

inline Rational random_rational(Engine& eng, bool nonzero = false) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 10);
  for (;;) {
    Rational r = make_rational(num(eng), den(eng));
    if (!nonzero || sgn(r) != 0) return r;
  }
}

inline RationalTridiag random_rational_tridiag(std::size_t n, Engine& eng,
                                               bool nonzero_off = false) {
  std::vector<Rational> d(n), o(n > 0 ? n - 1 : 0);
  for (auto& x : d) x = random_rational(eng);
  for (auto& x : o) x = random_rational(eng, nonzero_off);
  return {std::move(d), std::move(o)};
}

inline Matrix<Rational> random_rational_matrix(std::size_t rows, std::size_t cols, Engine& eng) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(eng);
  return m;
}

inline Matrix<Rational> random_symmetric_rational(std::size_t n, Engine& eng) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_rational(eng);
  return m;
}

inline SymTridiag<double> random_tridiag(std::size_t n, Engine& eng, double lo = -10.0,
                                         double hi = 10.0, bool nonzero_off = false) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> d(n), o(n > 0 ? n - 1 : 0);
  for (auto& x : d) x = u(eng);
  for (auto& x : o) {
    do x = u(eng);
    while (nonzero_off && std::abs(x) < 1e-3);
  }
  return {std::move(d), std::move(o)};
}

namespace detail {

template <class M>
std::string describe(const M& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

/// Dense lambda*I - H over rational polynomials.
inline Matrix<RationalPoly> shifted_poly(const RationalTridiag& h) {
  const std::size_t n = h.size();
  Matrix<RationalPoly> m(n, n);
  const auto x = RationalPoly::variable();
  for (std::size_t i = 0; i < n; ++i) m(i, i) = x - RationalPoly(h.diag()[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = RationalPoly(Rational(-h.offdiag()[i]));
  return m;
}

/// det((lambda I - H) with the given 1-based rows and columns removed).
inline RationalPoly deleted_det(const Matrix<RationalPoly>& a, std::vector<int> rows,
                                std::vector<int> cols) {
  std::vector<std::size_t> r, c;
  for (int k : rows) r.push_back(static_cast<std::size_t>(k - 1));
  for (int k : cols) c.push_back(static_cast<std::size_t>(k - 1));
  return dense_det(a.without(r, c));
}

inline RationalTridiag with_diag(const RationalTridiag& h, int k, const Rational& v) {
  auto d = h.diag();
  d[k - 1] = v;
  return {std::move(d), h.offdiag()};
}

inline RationalTridiag with_off(const RationalTridiag& h, int k, const Rational& v) {
  auto o = h.offdiag();
  o[k - 1] = v;
  return {h.diag(), std::move(o)};
}

/// df/da_k as a polynomial in lambda (f is affine in a_k).
inline RationalPoly dfda(const RationalTridiag& h, int k) {
  return charpoly(with_diag(h, k, Rational(h.a(k) + 1))) - charpoly(h);
}

/// Second difference of f in a_k (zero when f is affine in a_k).
inline RationalPoly d2fda2(const RationalTridiag& h, int k) {
  return charpoly(with_diag(h, k, Rational(h.a(k) + 2))) -
         RationalPoly(2L) * charpoly(with_diag(h, k, Rational(h.a(k) + 1))) + charpoly(h);
}

/// df/db_k (f is quadratic in b_k, so the central difference is exact).
inline RationalPoly dfdb(const RationalTridiag& h, int k) {
  return RationalPoly(make_rational(1, 2)) * (charpoly(with_off(h, k, Rational(h.b(k) + 1))) -
                                              charpoly(with_off(h, k, Rational(h.b(k) - 1))));
}

inline RationalPoly d2fdb2(const RationalTridiag& h, int k) {
  return charpoly(with_off(h, k, Rational(h.b(k) + 1))) - RationalPoly(2L) * charpoly(h) +
         charpoly(with_off(h, k, Rational(h.b(k) - 1)));
}

class Failures {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) list_.push_back(what);
  }
  [[nodiscard]] bool ok() const { return list_.empty(); }
  [[nodiscard]] std::string join() const {
    std::string s;
    for (const auto& x : list_) s += (s.empty() ? "" : "; ") + x;
    return s;
  }

 private:
  std::vector<std::string> list_;
};

}  // namespace detail

/// Derivatives of f(lambda) = det(lambda I - H) in lambda, a_k and b_k against minor determinants.
inline IdentityReport check_prop_derif(const RationalTridiag& h) {
  IdentityReport rep{"prop_derif"};
  const int n = static_cast<int>(h.size());
  const auto a = detail::shifted_poly(h);
  const RationalPoly f = charpoly(h);
  detail::Failures fails;
  fails.check(f == dense_det(a), "continuant != dense det");

  RationalPoly sum1;
  for (int k = 1; k <= n; ++k) sum1 += detail::deleted_det(a, {k}, {k});
  fails.check(f.derivative() == sum1, "f_lambda != sum_k det(A_{k|k})");

  RationalPoly sum2;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l) sum2 += detail::deleted_det(a, {k, l}, {k, l});
  fails.check(f.derivative().derivative() == RationalPoly(2L) * sum2,
              "f_lambdalambda != 2 sum det(A_{kl|kl})");

  for (int k = 1; k <= n; ++k) {
    fails.check(detail::dfda(h, k) == -detail::deleted_det(a, {k}, {k}),
                "df/da_" + std::to_string(k) + " != -det(A_{k|k})");
    fails.check(detail::d2fda2(h, k).is_zero(), "f not affine in a_" + std::to_string(k));
  }
  for (int k = 1; k < n; ++k) {
    const RationalPoly pair = detail::deleted_det(a, {k, k + 1}, {k, k + 1});
    const RationalPoly dfb = detail::dfdb(h, k);
    fails.check(dfb == RationalPoly(2L) * detail::deleted_det(a, {k}, {k + 1}),
                "df/db_" + std::to_string(k) + " != 2 det(A_{k|k+1})");
    fails.check(dfb == RationalPoly(Rational(-2 * h.b(k))) * pair,
                "df/db_" + std::to_string(k) + " != -2 b_k det(A_{k,k+1|k,k+1})");
    fails.check(detail::d2fdb2(h, k) == RationalPoly(-2L) * pair,
                "d2f/db_" + std::to_string(k) + "^2 != -2 det(A_{k,k+1|k,k+1})");
  }
  rep.record(fails.ok(), fails.join() + " for H: " + detail::describe(h));
  return rep;
}

/// First derivatives of det A in a diagonal entry and in a symmetric off-diagonal pair.
inline IdentityReport check_lemma_3_1(const Matrix<Rational>& a) {
  IdentityReport rep{"lemma_3_1"};
  const std::size_t n = a.rows();
  detail::Failures fails;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<Rational> up = a;
    up(k, k) += 1;
    const Rational deriv = dense_det(up) - dense_det(a);
    fails.check(deriv == dense_det(a.without({k}, {k})),
                "d det/d a_" + std::to_string(k + 1) + std::to_string(k + 1));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      Matrix<Rational> up = a, down = a;
      up(k, l) += 1;
      up(l, k) += 1;
      down(k, l) -= 1;
      down(l, k) -= 1;
      const Rational deriv = (dense_det(up) - dense_det(down)) / 2;
      const Rational sign = ((k + l) % 2 == 0) ? 1 : -1;  // (-1)^{k+l} is the same 0- or 1-based
      fails.check(deriv == sign * 2 * dense_det(a.without({k}, {l})),
                  "d det/d a_" + std::to_string(k + 1) + std::to_string(l + 1));
    }
  rep.record(fails.ok(), fails.join() + " for A: " + detail::describe(a));
  return rep;
}

/// Tridiagonal A (not necessarily symmetric) with a zero pattern at k0 (1-based, 2 <= k0 <= n-1).
/// Under the strengthened hypothesis a_{k0,k0-1} = a_{k0,k0} = a_{k0+1,k0} = 0 the
/// determinant must vanish; under the literal one (a_{k0,k0-1} = a_{k0,k0} = 0) a nonzero
/// determinant is counted in metrics["literal_counterexamples"], not as a failure.
inline IdentityReport check_lemma_3_2_scope(const Matrix<Rational>& a, int k0) {
  IdentityReport rep{"lemma_3_2_scope"};
  const std::size_t k = static_cast<std::size_t>(k0 - 1);
  const bool literal = is_zero(a(k, k - 1)) && is_zero(a(k, k));
  const bool strengthened = literal && is_zero(a(k + 1, k));
  if (!literal) throw std::invalid_argument("instance does not satisfy the lemma's hypothesis");
  const Rational det = dense_det(a);
  if (strengthened) {
    rep.record(is_zero(det), "det != 0 under the strengthened hypothesis for A: " + detail::describe(a));
    rep.metrics["strengthened_instances"] = 1;
  } else {
    rep.metrics["literal_instances"] = 1;
    rep.metrics["literal_counterexamples"] = is_zero(det) ? 0 : 1;
  }
  return rep;
}

/// det((lambda I - H)_{k|k+1}) = -b_k det((lambda I - H)_{k,k+1|k,k+1}) for every k.
inline IdentityReport check_det1(const RationalTridiag& h) {
  IdentityReport rep{"det1"};
  const int n = static_cast<int>(h.size());
  const auto a = detail::shifted_poly(h);
  detail::Failures fails;
  for (int k = 1; k < n; ++k) {
    const RationalPoly lhs = detail::deleted_det(a, {k}, {k + 1});
    const RationalPoly rhs = RationalPoly(Rational(-h.b(k))) * detail::deleted_det(a, {k, k + 1}, {k, k + 1});
    fails.check(lhs == rhs, "k=" + std::to_string(k));
  }
  rep.record(fails.ok(), fails.join() + " for H: " + detail::describe(h));
  return rep;
}

/// f_lambda^2 - (1/2) grad f . grad f = -f Lap f + 2 sum_{l-k>1} det(A_{k|k}) det(A_{l|l}),
/// with the gradient over (x_k, b_k) and a_k = sqrt(2) x_k.
inline IdentityReport check_lemma_3_3(const RationalTridiag& h) {
  IdentityReport rep{"lemma_3_3"};
  const int n = static_cast<int>(h.size());
  const auto a = detail::shifted_poly(h);
  const RationalPoly f = charpoly(h);
  const RationalPoly fl = f.derivative();

  RationalPoly grad_sq;  // grad f . grad f
  RationalPoly lap;      // Laplacian of f
  for (int k = 1; k <= n; ++k) {
    const RationalPoly d = detail::dfda(h, k);
    grad_sq += RationalPoly(2L) * d * d;
    lap += RationalPoly(2L) * detail::d2fda2(h, k);
  }
  for (int k = 1; k < n; ++k) {
    const RationalPoly d = detail::dfdb(h, k);
    grad_sq += d * d;
    lap += detail::d2fdb2(h, k);
  }
  const RationalPoly lhs = fl * fl - RationalPoly(make_rational(1, 2)) * grad_sq;

  std::vector<RationalPoly> principal(n + 1);
  for (int k = 1; k <= n; ++k) principal[k] = detail::deleted_det(a, {k}, {k});
  RationalPoly cross;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 2; l <= n; ++l) cross += principal[k] * principal[l];
  const RationalPoly rhs = -(f * lap) + RationalPoly(2L) * cross;
  rep.record(lhs == rhs, "key identity mismatch for H: " + detail::describe(h));
  return rep;
}

/// Coefficients of det(lambda I - A) against signed sums of principal minors.
inline IdentityReport check_lemma_a2(const Matrix<Rational>& a) {
  IdentityReport rep{"lemma_a2"};
  const std::size_t n = a.rows();
  Matrix<RationalPoly> shifted(n, n);
  const auto x = RationalPoly::variable();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      shifted(i, j) = (i == j ? x : RationalPoly{}) - RationalPoly(a(i, j));
  const RationalPoly f = dense_det(shifted);

  std::vector<Rational> minor_sums(n + 1, Rational(0));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    minor_sums[idx.size()] += dense_det(a.select(idx, idx));
  }
  detail::Failures fails;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational expected = (k % 2 == 0 ? 1 : -1) * minor_sums[k];
    fails.check(f.coeff(n - k) == expected, "coefficient of lambda^" + std::to_string(n - k));
  }
  fails.check(f.coeff(n) == 1, "not monic");
  rep.record(fails.ok(), fails.join() + " for A: " + detail::describe(a));
  return rep;
}

/// Twice cofactor expansion along rows k < l (1-based), term by term.
inline Rational twice_cofactor_expansion(const Matrix<Rational>& a, int k, int l) {
  const int n = static_cast<int>(a.rows());
  auto e = [&](int r, int c) -> const Rational& { return a(r - 1, c - 1); };
  auto m2 = [&](int r1, int r2, int c1, int c2) {
    return dense_det(a.without({std::size_t(r1 - 1), std::size_t(r2 - 1)},
                               {std::size_t(c1 - 1), std::size_t(c2 - 1)}));
  };
  auto pm = [](int e) { return Rational(e % 2 == 0 ? 1 : -1); };
  Rational det = e(k, k) * dense_det(a.without({std::size_t(k - 1)}, {std::size_t(k - 1)}));
  det -= e(k, l) * e(l, k) * m2(k, l, l, k);
  for (int q = 1; q <= n; ++q) {
    if (q == k || q == l) continue;
    det += (q < l ? pm(k + q - 1) : pm(k + q)) * e(k, l) * e(l, q) * m2(k, l, l, q);
  }
  for (int p = 1; p <= n; ++p) {
    if (p == k || p == l) continue;
    det += (p > k ? pm(l + p - 1) : pm(l + p)) * e(k, p) * e(l, k) * m2(k, l, p, k);
  }
  for (int p = 1; p <= n; ++p) {
    if (p == k || p == l) continue;
    for (int q = 1; q <= n; ++q) {
      if (q == k || q == p) continue;
      const Rational sign = p > q ? pm(k + l + p + q - 1) : pm(k + l + p + q);
      det += sign * e(k, p) * e(l, q) * m2(k, l, p, q);
    }
  }
  return det;
}

inline IdentityReport check_lemma_a3(const Matrix<Rational>& a) {
  IdentityReport rep{"lemma_a3"};
  const int n = static_cast<int>(a.rows());
  const Rational det = dense_det(a);
  detail::Failures fails;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      fails.check(twice_cofactor_expansion(a, k, l) == det,
                  "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ")");
  rep.record(fails.ok(), fails.join() + " for A: " + detail::describe(a));
  return rep;
}

namespace detail {
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != r) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}
}  // namespace detail

/// Cauchy-Binet for C = A B over every pair of equal-size row/column index sets.
inline IdentityReport check_lemma_a4(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  IdentityReport rep{"lemma_a4"};
  const Matrix<Rational> c = a * b;
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  detail::Failures fails;
  for (std::size_t r = 1; r <= std::min({m, k, n}); ++r) {
    const auto rows = detail::subsets_of_size(m, r);
    const auto mids = detail::subsets_of_size(k, r);
    const auto cols = detail::subsets_of_size(n, r);
    std::vector<std::vector<Rational>> da(rows.size(), std::vector<Rational>(mids.size()));
    std::vector<std::vector<Rational>> db(mids.size(), std::vector<Rational>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t g = 0; g < mids.size(); ++g) da[i][g] = dense_det(a.select(rows[i], mids[g]));
    for (std::size_t g = 0; g < mids.size(); ++g)
      for (std::size_t j = 0; j < cols.size(); ++j) db[g][j] = dense_det(b.select(mids[g], cols[j]));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        Rational sum = 0;
        for (std::size_t g = 0; g < mids.size(); ++g) sum += da[i][g] * db[g][j];
        fails.check(sum == dense_det(c.select(rows[i], cols[j])), "r=" + std::to_string(r));
      }
  }
  rep.record(fails.ok(), fails.join() + " for A: " + detail::describe(a) + " B: " + detail::describe(b));
  return rep;
}

/// Sylvester: |A| |A_{ij|kl}| = |A_{i|k}| |A_{j|l}| - |A_{i|l}| |A_{j|k}| for i < j, k < l.
inline IdentityReport check_lemma_a5(const Matrix<Rational>& a) {
  IdentityReport rep{"lemma_a5"};
  const std::size_t n = a.rows();
  const Rational det = dense_det(a);
  std::vector<std::vector<Rational>> cof(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) cof[i][k] = dense_det(a.without({i}, {k}));
  detail::Failures fails;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const Rational lhs = det * dense_det(a.without({i, j}, {k, l}));
          const Rational rhs = cof[i][k] * cof[j][l] - cof[i][l] * cof[j][k];
          if (lhs != rhs)
            fails.check(false, "(i,j,k,l)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   "," + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
        }
  rep.record(fails.ok(), fails.join() + " for A: " + detail::describe(a));
  return rep;
}

/// f''(l_i)/f'(l_i) = 2 sum_{j!=i} 1/(l_i - l_j), with f', f'' from minor determinants.
/// The error is measured relative to 2 sum_j |1/(l_i - l_j)|, the magnitude of the terms.
inline IdentityReport check_lemma_a1(const SymTridiag<double>& h, double rel_tol = 1e-8) {
  IdentityReport rep{"lemma_a1", "float"};
  const auto eigs = eigenvalues(h, 1e-14);
  double worst = 0.0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const auto d = charpoly_derivs_from_minors(h, eigs[i]);
    double rhs = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < eigs.size(); ++j)
      if (j != i) {
        rhs += 2.0 / (eigs[i] - eigs[j]);
        scale += 2.0 / std::abs(eigs[i] - eigs[j]);
      }
    worst = std::max(worst, std::abs(d.d2 / d.d1 - rhs) / std::max(scale, 1e-300));
  }
  rep.metrics["max_relative_error"] = worst;
  rep.record(worst <= rel_tol, "relative error " + std::to_string(worst) + " for H: " + detail::describe(h));
  return rep;
}

/// Strict interlacing of the (n-1) leading minor when every off-diagonal is nonzero.
inline IdentityReport check_lemma_a6(const SymTridiag<double>& h) {
  IdentityReport rep{"lemma_a6", "float"};
  const auto outer = eigenvalues(h, 1e-14);
  const auto inner = eigenvalues(minor(h, {1, static_cast<int>(h.size()) - 1}), 1e-14);
  const auto r = check_interlacing(outer, inner, true, default_gap_tol(outer));
  const bool ok = r.passed() || (r.min_margin >= -default_gap_tol(outer) && sturm_separates(h, inner));
  if (!r.passed()) rep.metrics["below_margin_resolution"] += 1;
  rep.record(ok, "margin " + std::to_string(r.min_margin) + " for H: " + detail::describe(h));
  return rep;
}

// ---------------------------------------------------------------------------
// Randomized suite

struct IdentitySuiteOptions {
  std::size_t count = 100;     // instances per identity
  std::size_t max_size = 7;    // largest matrix dimension
  std::uint64_t seed = 0;
};

namespace detail {
inline std::size_t random_size(Engine& eng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, std::max(lo, hi))(eng);
}

/// Random tridiagonal (general, not symmetric) rational matrix with a_{k0,k0-1} = a_{k0,k0} = 0, and also a_{k0+1,k0} = 0 when strengthened.
inline Matrix<Rational> lemma_3_2_instance(std::size_t n, int k0, bool strengthened, Engine& eng) {
  Matrix<Rational> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = random_rational(eng, true);
    if (i + 1 < n) {
      a(i, i + 1) = random_rational(eng, true);
      a(i + 1, i) = random_rational(eng, true);
    }
  }
  const std::size_t k = static_cast<std::size_t>(k0 - 1);
  a(k, k - 1) = 0;
  a(k, k) = 0;
  if (strengthened) a(k + 1, k) = 0;
  return a;
}
}  // namespace detail

/// Fixed literal-hypothesis instance with nonzero determinant.
inline Matrix<Rational> lemma_3_2_literal_counterexample() {
  return Matrix<Rational>{{1, 1, 0}, {0, 0, 1}, {0, 1, 2}};
}

inline IdentityReport run_prop_derif(const IdentitySuiteOptions& o) {
  IdentityReport total{"prop_derif"};
  Engine eng = make_stream(o.seed, 1, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_prop_derif(random_rational_tridiag(detail::random_size(eng, 1, o.max_size), eng)));
  return total;
}

inline IdentityReport run_lemma_3_1(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_3_1"};
  Engine eng = make_stream(o.seed, 2, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_lemma_3_1(random_symmetric_rational(detail::random_size(eng, 2, o.max_size), eng)));
  return total;
}

inline IdentityReport run_lemma_3_2_scope(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_3_2_scope"};
  Engine eng = make_stream(o.seed, 3, StreamTag::kIdentities);
  total.merge(check_lemma_3_2_scope(lemma_3_2_literal_counterexample(), 2));
  for (std::size_t s = 0; s < o.count; ++s) {
    const std::size_t n = detail::random_size(eng, 3, std::max<std::size_t>(o.max_size, 3));
    const int k0 = static_cast<int>(detail::random_size(eng, 2, n - 1));
    total.merge(check_lemma_3_2_scope(detail::lemma_3_2_instance(n, k0, true, eng), k0));
    total.merge(check_lemma_3_2_scope(detail::lemma_3_2_instance(n, k0, false, eng), k0));
  }
  return total;
}

inline IdentityReport run_det1(const IdentitySuiteOptions& o) {
  IdentityReport total{"det1"};
  Engine eng = make_stream(o.seed, 4, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_det1(random_rational_tridiag(detail::random_size(eng, 2, o.max_size), eng)));
  return total;
}

inline IdentityReport run_lemma_3_3(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_3_3"};
  Engine eng = make_stream(o.seed, 5, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_lemma_3_3(random_rational_tridiag(detail::random_size(eng, 1, o.max_size), eng)));
  return total;
}

inline IdentityReport run_lemma_a2(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a2"};
  Engine eng = make_stream(o.seed, 6, StreamTag::kIdentities);
  const std::size_t hi = std::min<std::size_t>(o.max_size, 6);
  for (std::size_t s = 0; s < o.count; ++s) {
    const std::size_t n = detail::random_size(eng, 1, hi);
    total.merge(check_lemma_a2(random_rational_matrix(n, n, eng)));
  }
  return total;
}

inline IdentityReport run_lemma_a3(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a3"};
  Engine eng = make_stream(o.seed, 7, StreamTag::kIdentities);
  const std::size_t hi = std::min<std::size_t>(o.max_size, 6);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_lemma_a3(random_symmetric_rational(detail::random_size(eng, 2, hi), eng)));
  return total;
}

inline IdentityReport run_lemma_a4(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a4"};
  Engine eng = make_stream(o.seed, 8, StreamTag::kIdentities);
  const std::size_t hi = std::min<std::size_t>(o.max_size, 5);
  for (std::size_t s = 0; s < o.count; ++s) {
    const std::size_t m = detail::random_size(eng, 1, hi), k = detail::random_size(eng, 1, hi),
                      n = detail::random_size(eng, 1, hi);
    total.merge(check_lemma_a4(random_rational_matrix(m, k, eng), random_rational_matrix(k, n, eng)));
  }
  return total;
}

inline IdentityReport run_lemma_a5(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a5"};
  Engine eng = make_stream(o.seed, 9, StreamTag::kIdentities);
  const std::size_t hi = std::min<std::size_t>(o.max_size, 6);
  for (std::size_t s = 0; s < o.count; ++s) {
    const std::size_t n = detail::random_size(eng, 2, hi);
    total.merge(check_lemma_a5(random_rational_matrix(n, n, eng)));
  }
  return total;
}

inline IdentityReport run_lemma_a1(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a1", "float"};
  Engine eng = make_stream(o.seed, 10, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_lemma_a1(random_tridiag(detail::random_size(eng, 2, o.max_size), eng, -10, 10, true)));
  return total;
}

inline IdentityReport run_lemma_a6(const IdentitySuiteOptions& o) {
  IdentityReport total{"lemma_a6", "float"};
  Engine eng = make_stream(o.seed, 11, StreamTag::kIdentities);
  for (std::size_t s = 0; s < o.count; ++s)
    total.merge(check_lemma_a6(random_tridiag(detail::random_size(eng, 2, o.max_size), eng, -10, 10, true)));
  return total;
}

/// Every identity in the suite, in a fixed order.
inline std::vector<IdentityReport> run_identity_suite(const IdentitySuiteOptions& o) {
  return {run_prop_derif(o), run_lemma_3_1(o), run_lemma_3_2_scope(o), run_det1(o),
          run_lemma_3_3(o),  run_lemma_a2(o),  run_lemma_a3(o),        run_lemma_a4(o),
          run_lemma_a5(o),   run_lemma_a1(o),  run_lemma_a6(o)};
}

}  // namespace tridyson
