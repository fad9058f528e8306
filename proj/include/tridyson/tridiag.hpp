#pragma once

// Symmetric tridiagonal matrices, contiguous principal minors, continuants and
// determinants of row/column-deleted minors of lambda*I - H.
//
// Index conventions: matrix positions (k, l) and minor ranges (p, q) are
// 1-based, matching the usual H^{p,q} notation; dense matrices are 0-based.

#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tridyson/dense.hpp"
#include "tridyson/rational.hpp"

namespace tridyson {

/// Contiguous principal minor rows/cols p..q (1-based, inclusive).
/// p == q + 1 is the empty minor, whose characteristic polynomial is 1.
struct MinorRange {
  int p = 1;
  int q = 0;

  [[nodiscard]] int size() const { return q - p + 1; }
  [[nodiscard]] bool empty() const { return q < p; }
  [[nodiscard]] bool valid_for(std::size_t n) const {
    return p >= 1 && q <= static_cast<int>(n) && p <= q + 1;
  }
  friend bool operator==(const MinorRange&, const MinorRange&) = default;
  friend auto operator<=>(const MinorRange&, const MinorRange&) = default;
  friend std::ostream& operator<<(std::ostream& os, const MinorRange& r) {
    return os << "(" << r.p << "," << r.q << ")";
  }
};

/// Symmetric tridiagonal matrix stored as diagonal a_1..a_n and off-diagonal b_1..b_{n-1}.
template <class T>
class SymTridiag {
 public:
  using value_type = T;

  /// The empty (0x0) matrix.
  SymTridiag() = default;

  SymTridiag(std::vector<T> diag, std::vector<T> offdiag)
      : diag_(std::move(diag)), off_(std::move(offdiag)) {
    const std::size_t expected_off = diag_.empty() ? 0 : diag_.size() - 1;
    if (off_.size() != expected_off)
      throw std::invalid_argument("off-diagonal length must be n-1 (n=" +
                                  std::to_string(diag_.size()) + ", got " +
                                  std::to_string(off_.size()) + ")");
    if constexpr (std::is_floating_point_v<T>) {
      for (const T& x : diag_)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite diagonal entry");
      for (const T& x : off_)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite off-diagonal entry");
    }
  }

  [[nodiscard]] std::size_t size() const { return diag_.size(); }
  [[nodiscard]] bool empty() const { return diag_.empty(); }
  [[nodiscard]] const std::vector<T>& diag() const { return diag_; }
  [[nodiscard]] const std::vector<T>& offdiag() const { return off_; }

  /// 1-based accessors a_k and b_k.
  [[nodiscard]] const T& a(int k) const { return diag_.at(k - 1); }
  [[nodiscard]] const T& b(int k) const { return off_.at(k - 1); }

  [[nodiscard]] Matrix<T> to_dense() const {
    const std::size_t n = size();
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag_[i];
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off_[i];
    return m;
  }

  /// Dense lambda*I - H.
  [[nodiscard]] Matrix<T> shifted_dense(const T& lambda) const {
    Matrix<T> m = to_dense();
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = T((i == j ? lambda : T(0)) - m(i, j));
    return m;
  }

  friend bool operator==(const SymTridiag& x, const SymTridiag& y) {
    return x.diag_ == y.diag_ && x.off_ == y.off_;
  }

  friend std::ostream& operator<<(std::ostream& os, const SymTridiag& h) {
    os << "diag=[";
    for (std::size_t i = 0; i < h.diag_.size(); ++i) os << (i ? "," : "") << h.diag_[i];
    os << "] offdiag=[";
    for (std::size_t i = 0; i < h.off_.size(); ++i) os << (i ? "," : "") << h.off_[i];
    return os << "]";
  }

 private:
  std::vector<T> diag_;
  std::vector<T> off_;
};

using RationalTridiag = SymTridiag<Rational>;

/// Principal sub-block H^{p,q}.
template <class T>
SymTridiag<T> minor(const SymTridiag<T>& h, MinorRange r) {
  if (!r.valid_for(h.size()))
    throw std::out_of_range("invalid minor range (" + std::to_string(r.p) + "," +
                            std::to_string(r.q) + ") for n=" + std::to_string(h.size()));
  if (r.empty()) return {};
  std::vector<T> d(h.diag().begin() + (r.p - 1), h.diag().begin() + r.q);
  std::vector<T> o(h.offdiag().begin() + (r.p - 1), h.offdiag().begin() + (r.q - 1));
  return SymTridiag<T>(std::move(d), std::move(o));
}

/// A real number held as mantissa * 2^exponent, so continuants of large
/// matrices do not overflow before they are combined.
struct ScaledReal {
  double mantissa = 1.0;
  long exponent = 0;

  [[nodiscard]] double value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }
};

namespace detail {
inline constexpr double kRescaleAbove = 0x1p+400;
inline constexpr int kRescaleShift = 400;
}  // namespace detail

/// Leading continuants f_k = det(lambda*I_k - H^{1,k}) over a sub-range, with rescaling.
/// Element k of the result is f_k for the k-th leading minor of H^{r}.
inline std::vector<ScaledReal> leading_continuants_scaled(const SymTridiag<double>& h,
                                                          double lambda) {
  const std::size_t n = h.size();
  std::vector<ScaledReal> out;
  out.reserve(n + 1);
  double prev = 1.0;  // f_{k-1} * 2^{-exp}
  double prev2 = 0.0; // f_{k-2} * 2^{-exp}
  long exp = 0;
  out.push_back({1.0, 0});
  for (std::size_t k = 0; k < n; ++k) {
    const double b2 = k == 0 ? 0.0 : h.offdiag()[k - 1] * h.offdiag()[k - 1];
    double cur = (lambda - h.diag()[k]) * prev - b2 * prev2;
    prev2 = prev;
    prev = cur;
    if (std::abs(cur) > detail::kRescaleAbove || std::abs(prev2) > detail::kRescaleAbove) {
      prev = std::ldexp(prev, -detail::kRescaleShift);
      prev2 = std::ldexp(prev2, -detail::kRescaleShift);
      exp += detail::kRescaleShift;
    }
    out.push_back({prev, exp});
  }
  return out;
}

/// Leading continuants (f_0, f_1, ..., f_n), f_0 = 1, via
/// f_k = (lambda - a_k) f_{k-1} - b_{k-1}^2 f_{k-2}.
template <class T>
std::vector<T> leading_continuants(const SymTridiag<T>& h, const T& lambda) {
  if constexpr (std::is_floating_point_v<T>) {
    auto scaled = leading_continuants_scaled(h, lambda);
    std::vector<T> out;
    out.reserve(scaled.size());
    for (const auto& s : scaled) out.push_back(s.value());
    return out;
  } else {
    const std::size_t n = h.size();
    std::vector<T> f;
    f.reserve(n + 1);
    f.push_back(T(1));
    for (std::size_t k = 0; k < n; ++k) {
      T cur = (lambda - h.diag()[k]) * f[k];
      if (k > 0) cur -= h.offdiag()[k - 1] * h.offdiag()[k - 1] * f[k - 1];
      f.push_back(cur);
    }
    return f;
  }
}

/// det(lambda*I - H); 1 for the empty matrix.
template <class T>
T charpoly_eval(const SymTridiag<T>& h, const T& lambda) {
  if constexpr (std::is_floating_point_v<T>) {
    return leading_continuants_scaled(h, lambda).back().value();
  } else {
    return leading_continuants(h, lambda).back();
  }
}

/// Characteristic polynomial of the minor H^{p,q} evaluated at lambda.
template <class T>
T minor_charpoly(const SymTridiag<T>& h, MinorRange r, const T& lambda) {
  return charpoly_eval(minor(h, r), lambda);
}

/// Exact characteristic polynomial det(lambda*I - H) as a polynomial in lambda.
inline RationalPoly charpoly(const RationalTridiag& h) {
  const auto x = RationalPoly::variable();
  RationalPoly prev2(0L), prev(1L);
  for (std::size_t k = 0; k < h.size(); ++k) {
    RationalPoly cur = (x - RationalPoly(h.diag()[k])) * prev;
    if (k > 0) cur -= RationalPoly(Rational(h.offdiag()[k - 1] * h.offdiag()[k - 1])) * prev2;
    prev2 = prev;
    prev = cur;
  }
  return prev;
}

/// det((lambda*I - H)_{k|l}): remove row k and column l (1-based).
///
/// Tridiagonal structure makes the deleted minor block-triangular, so for k <= l
///   det = prod_{m=k}^{l-1} (-b_m) * f^{1,k-1}(lambda) * f^{l+1,n}(lambda),
/// which covers k == l (block product) and l == k+1 (-b_k f^{1,k-1} f^{k+2,n}).
/// The case k > l follows from symmetry. See deleted_minor_det_dense for the oracle.
template <class T>
T deleted_minor_det(const SymTridiag<T>& h, const T& lambda, int k, int l) {
  const int n = static_cast<int>(h.size());
  if (k < 1 || k > n || l < 1 || l > n)
    throw std::out_of_range("deleted minor index out of range");
  if (k > l) std::swap(k, l);
  T coupling(1);
  for (int m = k; m < l; ++m) coupling *= T(-h.b(m));
  if (is_zero(coupling)) return T(0);
  return T(coupling * minor_charpoly(h, {1, k - 1}, lambda) * minor_charpoly(h, {l + 1, n}, lambda));
}

/// Same quantity by dense elimination on the explicit deleted minor.
template <class T>
T deleted_minor_det_dense(const SymTridiag<T>& h, const T& lambda, int k, int l) {
  const int n = static_cast<int>(h.size());
  if (k < 1 || k > n || l < 1 || l > n)
    throw std::out_of_range("deleted minor index out of range");
  return dense_det(h.shifted_dense(lambda).without({std::size_t(k - 1)}, {std::size_t(l - 1)}));
}

/// det((lambda*I - H)_{kl|kl}) for k < l: principal minor with two rows/cols removed.
/// Block diagonal: f^{1,k-1} * f^{k+1,l-1} * f^{l+1,n}.
template <class T>
T pair_deleted_principal_det(const SymTridiag<T>& h, const T& lambda, int k, int l) {
  const int n = static_cast<int>(h.size());
  if (k < 1 || l > n || k >= l) throw std::out_of_range("pair-deleted minor needs 1 <= k < l <= n");
  return T(minor_charpoly(h, {1, k - 1}, lambda) * minor_charpoly(h, {k + 1, l - 1}, lambda) *
           minor_charpoly(h, {l + 1, n}, lambda));
}

}  // namespace tridyson
