#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tridyson {

/// Arbitrary-precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Ring helpers used by the generic elimination routines.
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline Rational exact_div(const Rational& a, const Rational& b) { return Rational(a / b); }

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the leading coefficient is nonzero.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(const T& constant) : c_{constant} { trim(); }  // NOLINT: implicit by design of ring ops
  Polynomial(long constant) : Polynomial(T(constant)) {}     // NOLINT

  /// The monomial `lambda`.
  static Polynomial variable() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
  [[nodiscard]] T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  [[nodiscard]] T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = T(acc * x + *it);
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(c_[k] * T(static_cast<long>(k)));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = T(-x);
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial{}, *this};
    std::vector<T> rem = c_;
    std::vector<T> quot(c_.size() - d.c_.size() + 1, T(0));
    const T& lead = d.c_.back();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
      T q = rem[k + d.c_.size() - 1] / lead;
      quot[k] = q;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      if (p.c_[k] == 0) continue;
      if (!first) os << " + ";
      os << "(" << p.c_[k] << ")";
      if (k > 0) os << "*x^" << k;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;

template <class T>
bool is_zero(const Polynomial<T>& p) {
  return p.is_zero();
}

/// Division known to be exact (Bareiss pivots); throws if a remainder appears.
template <class T>
Polynomial<T> exact_div(const Polynomial<T>& a, const Polynomial<T>& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

}  // namespace tridyson
