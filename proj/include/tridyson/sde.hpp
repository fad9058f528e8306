#pragma once

// Driving noise and one-step integrators for the Brownian diagonal and the
// Bessel off-diagonal coordinates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tridyson/rng.hpp"

namespace tridyson {

enum class Scheme { kEulerMaruyama, kExactSquaredBessel };

inline std::string_view to_string(Scheme s) {
  return s == Scheme::kEulerMaruyama ? "euler_maruyama" : "exact_squared_bessel";
}

inline Scheme parse_scheme(std::string_view s) {
  if (s == "euler_maruyama") return Scheme::kEulerMaruyama;
  if (s == "exact_squared_bessel") return Scheme::kExactSquaredBessel;
  throw std::invalid_argument("unknown scheme '" + std::string(s) +
                              "' (expected euler_maruyama or exact_squared_bessel)");
}

/// Full description of one matrix-path experiment.
struct SdeConfig {
  std::size_t n = 2;
  std::vector<double> alpha;  // Bessel dimensions, length n-1
  std::vector<double> x0;     // Bessel starts, length n-1
  std::vector<double> diag0;  // optional initial diagonal; empty means zeros
  double dt = 1e-3;
  double t_end = 1.0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kEulerMaruyama;

  [[nodiscard]] std::size_t steps() const {
    return static_cast<std::size_t>(std::llround(t_end / dt));
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (alpha.size() != n - 1)
      throw std::invalid_argument("alpha needs n-1 = " + std::to_string(n - 1) + " entries");
    if (x0.size() != n - 1)
      throw std::invalid_argument("x0 needs n-1 = " + std::to_string(n - 1) + " entries");
    if (!diag0.empty() && diag0.size() != n)
      throw std::invalid_argument("diag0 needs n entries when given");
    for (double a : alpha)
      if (!(a > 0.0)) throw std::invalid_argument("alpha entries must be positive");
    for (double x : x0)
      if (!(x >= 0.0)) throw std::invalid_argument("x0 entries must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("t_end must be >= dt");
  }
};

/// Brownian increments on a uniform grid: dB_k (n per step) and dB_{k,k+1} (n-1 per step).
class NoiseGrid {
 public:
  NoiseGrid() = default;
  NoiseGrid(std::size_t steps, std::size_t n, double dt)
      : steps_(steps), n_(n), dt_(dt), diag_(steps * n, 0.0),
        off_(steps * (n > 0 ? n - 1 : 0), 0.0) {}

  [[nodiscard]] std::size_t steps() const { return steps_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] double dt() const { return dt_; }

  /// Increment of B_k over step m (k 0-based).
  double& diag(std::size_t m, std::size_t k) { return diag_[m * n_ + k]; }
  [[nodiscard]] double diag(std::size_t m, std::size_t k) const { return diag_[m * n_ + k]; }
  /// Increment of B_{k,k+1} over step m (k 0-based).
  double& off(std::size_t m, std::size_t k) { return off_[m * (n_ - 1) + k]; }
  [[nodiscard]] double off(std::size_t m, std::size_t k) const { return off_[m * (n_ - 1) + k]; }

  [[nodiscard]] const std::vector<double>& diag_data() const { return diag_; }
  [[nodiscard]] const std::vector<double>& off_data() const { return off_; }

  friend bool operator==(const NoiseGrid&, const NoiseGrid&) = default;

 private:
  std::size_t steps_ = 0;
  std::size_t n_ = 0;
  double dt_ = 0.0;
  std::vector<double> diag_;
  std::vector<double> off_;
};

/// Noise for path `path_index`: a deterministic function of (config.seed, path_index).
inline NoiseGrid make_noise(const SdeConfig& config, std::uint64_t path_index) {
  config.validate();
  NoiseGrid g(config.steps(), config.n, config.dt);
  Engine eng = make_stream(config.seed, path_index, StreamTag::kNoise);
  std::normal_distribution<double> normal(0.0, std::sqrt(config.dt));
  for (std::size_t m = 0; m < g.steps(); ++m) {
    for (std::size_t k = 0; k < config.n; ++k) g.diag(m, k) = normal(eng);
    for (std::size_t k = 0; k + 1 < config.n; ++k) g.off(m, k) = normal(eng);
  }
  return g;
}

/// Same Brownian paths on a grid with twice the step: increments summed pairwise.
inline NoiseGrid coarsen(const NoiseGrid& fine) {
  if (fine.steps() % 2 != 0) throw std::invalid_argument("coarsen needs an even step count");
  NoiseGrid g(fine.steps() / 2, fine.n(), 2.0 * fine.dt());
  for (std::size_t m = 0; m < g.steps(); ++m) {
    for (std::size_t k = 0; k < fine.n(); ++k)
      g.diag(m, k) = fine.diag(2 * m, k) + fine.diag(2 * m + 1, k);
    for (std::size_t k = 0; k + 1 < fine.n(); ++k)
      g.off(m, k) = fine.off(2 * m, k) + fine.off(2 * m + 1, k);
  }
  return g;
}

/// Brownian-bridge refinement: a grid with half the step whose pairwise sums are `coarse`.
inline NoiseGrid refine(const NoiseGrid& coarse, std::uint64_t seed, std::uint64_t path_index) {
  NoiseGrid g(coarse.steps() * 2, coarse.n(), 0.5 * coarse.dt());
  Engine eng = make_stream(seed, path_index, StreamTag::kRefine);
  std::normal_distribution<double> normal(0.0, 0.5 * std::sqrt(coarse.dt()));
  auto split = [&](double total, double& first, double& second) {
    first = 0.5 * total + normal(eng);
    second = total - first;
  };
  for (std::size_t m = 0; m < coarse.steps(); ++m) {
    for (std::size_t k = 0; k < coarse.n(); ++k)
      split(coarse.diag(m, k), g.diag(2 * m, k), g.diag(2 * m + 1, k));
    for (std::size_t k = 0; k + 1 < coarse.n(); ++k)
      split(coarse.off(m, k), g.off(2 * m, k), g.off(2 * m + 1, k));
  }
  return g;
}

/// One Bessel coordinate; once absorbed at 0 it stays there.
struct BesselState {
  double value = 0.0;
  bool absorbed = false;
  std::optional<double> absorption_time;
};

class AbsorbedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Euler-Maruyama step of dX = dW + (alpha-1)/(2X) dt started at time t.
///
/// The drift uses 1/max(X, sqrt(dt)). For alpha < 2 a step reaching <= 0 absorbs,
/// with the absorption time linearly interpolated inside the step; for alpha >= 2
/// such a step is reflected to |X'|.
inline BesselState bessel_step(const BesselState& x, double alpha, double dt, double dW,
                               double t = 0.0) {
  if (x.absorbed) throw AbsorbedError("bessel_step on an absorbed state");
  const double floor = std::sqrt(dt);
  const double next = x.value + dW + 0.5 * (alpha - 1.0) * dt / std::max(x.value, floor);
  BesselState out{next, false, std::nullopt};
  if (next <= 0.0) {
    if (alpha < 2.0) {
      const double frac = x.value > 0.0 ? x.value / (x.value - next) : 0.0;
      out.value = 0.0;
      out.absorbed = true;
      out.absorption_time = t + frac * dt;
    } else {
      out.value = std::abs(next);
    }
  }
  return out;
}

/// Exact transition of the Bessel process over dt: X'^2/dt is noncentral
/// chi-square with alpha degrees of freedom and noncentrality X^2/dt, sampled as a
/// Poisson mixture of gammas. The state never absorbs under this scheme.
inline BesselState bessel_step_exact(const BesselState& x, double alpha, double dt, Engine& eng) {
  if (x.absorbed) throw AbsorbedError("bessel_step_exact on an absorbed state");
  const double noncentrality = x.value * x.value / dt;
  long j = 0;
  if (noncentrality > 0.0) j = std::poisson_distribution<long>(0.5 * noncentrality)(eng);
  const double shape = 0.5 * alpha + static_cast<double>(j);
  const double chi2 = std::gamma_distribution<double>(shape, 2.0)(eng);
  return {std::sqrt(dt * chi2), false, std::nullopt};
}

}  // namespace tridyson
