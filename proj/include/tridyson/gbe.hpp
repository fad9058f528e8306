#pragma once

// Gaussian beta ensemble in tridiagonal form and moment checks, including the
// comparison with the time-1 slice of the matrix process started from zero.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tridyson/dyson.hpp"
#include "tridyson/eig.hpp"
#include "tridyson/rng.hpp"
#include "tridyson/sde.hpp"
#include "tridyson/tridiag.hpp"

namespace tridyson {

struct GbeConfig {
  std::size_t n = 2;
  double beta = 2.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("gbe: n must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("gbe: beta must be positive");
    if (samples < 1) throw std::invalid_argument("gbe: samples must be >= 1");
  }
};

/// Sample `index`: diagonal N(0,2)/sqrt(beta), off-diagonal k chi_{(n-k) beta}/sqrt(beta).
inline SymTridiag<double> sample_gbe(const GbeConfig& c, std::uint64_t index) {
  c.validate();
  Engine eng = make_stream(c.seed, index, StreamTag::kGbe);
  const double scale = 1.0 / std::sqrt(c.beta);
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0));
  std::vector<double> d(c.n), o(c.n - 1);
  for (auto& x : d) x = normal(eng) * scale;
  for (std::size_t k = 1; k < c.n; ++k) {
    const double shape = 0.5 * static_cast<double>(c.n - k) * c.beta;
    o[k - 1] = std::sqrt(std::gamma_distribution<double>(shape, 2.0)(eng)) * scale;
  }
  return {std::move(d), std::move(o)};
}

/// Sample mean with its standard error.
struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;

  static MomentEstimate of(const std::vector<double>& xs) {
    MomentEstimate m;
    m.count = xs.size();
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
      double ss = 0.0;
      for (double x : xs) ss += (x - m.mean) * (x - m.mean);
      m.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    }
    return m;
  }

  /// |mean - target| in units of the standard error.
  [[nodiscard]] double z(double target) const {
    return std::abs(mean - target) / std::max(std_error, 1e-300);
  }
};

inline double trace_square(const SymTridiag<double>& h) {
  double s = 0.0;
  for (double a : h.diag()) s += a * a;
  for (double b : h.offdiag()) s += 2.0 * b * b;
  return s;
}

inline double expected_trace_square(std::size_t n, double beta) {
  const double nn = static_cast<double>(n);
  return 2.0 * nn / beta + nn * (nn - 1.0);
}

struct TraceMomentReport {
  std::size_t n = 0;
  double beta = 0.0;
  double expected = 0.0;
  MomentEstimate estimate;
  double z = 0.0;
  double z_limit = 3.0;

  [[nodiscard]] bool passed() const { return z <= z_limit; }
};

inline TraceMomentReport trace_moment_check(const GbeConfig& c, double z_limit = 3.0) {
  std::vector<double> xs(c.samples);
  for (std::size_t s = 0; s < c.samples; ++s) xs[s] = trace_square(sample_gbe(c, s));
  TraceMomentReport r{c.n, c.beta, expected_trace_square(c.n, c.beta), MomentEstimate::of(xs)};
  r.z = r.estimate.z(r.expected);
  r.z_limit = z_limit;
  return r;
}

/// Monte Carlo E[(lambda_2 - lambda_1)^2] for n = 2.
inline MomentEstimate gap_square_n2(const GbeConfig& c) {
  if (c.n != 2) throw std::invalid_argument("gap_square_n2 needs n = 2");
  std::vector<double> xs(c.samples);
  for (std::size_t s = 0; s < c.samples; ++s) {
    const auto e = eigenvalues(sample_gbe(c, s));
    xs[s] = (e[1] - e[0]) * (e[1] - e[0]);
  }
  return MomentEstimate::of(xs);
}

struct EntryComparison {
  std::string entry;  // "d1", "o2", ...
  int moment = 1;     // 1 or 2
  double process = 0.0;
  double ensemble = 0.0;
  double z = 0.0;
};

struct TimeSliceReport {
  std::size_t n = 0;
  double beta = 0.0;
  std::size_t samples = 0;
  double z_limit = 4.0;
  std::vector<EntryComparison> comparisons;

  [[nodiscard]] std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : comparisons)
      if (!(c.z <= z_limit)) ++f;
    return f;
  }
  [[nodiscard]] bool passed() const { return failures() == 0; }
};

/// (H(1) - H(0)) / sqrt(beta) with x0 = 0, alpha = ((n-1) beta, ..., beta) and exact
/// Bessel transitions, against sample_gbe: first two moments of every entry,
/// two-sample z-scores.
inline TimeSliceReport time_slice_check(std::size_t n, double beta, std::size_t samples,
                                        std::uint64_t seed, double z_limit = 4.0) {
  GbeConfig gc{n, beta, samples, seed};
  gc.validate();
  SdeConfig sc;
  sc.n = n;
  sc.alpha.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) sc.alpha[k - 1] = static_cast<double>(n - k) * beta;
  sc.x0.assign(n - 1, 0.0);
  sc.dt = 1.0;
  sc.t_end = 1.0;
  sc.seed = seed;
  sc.scheme = Scheme::kExactSquaredBessel;

  const std::size_t entries = 2 * n - 1;
  std::vector<std::vector<double>> proc(entries, std::vector<double>(samples));
  std::vector<std::vector<double>> ens(entries, std::vector<double>(samples));
  const double scale = 1.0 / std::sqrt(beta);
  auto entry = [n](const SymTridiag<double>& h, std::size_t e) {
    return e < n ? h.diag()[e] : h.offdiag()[e - n];
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const auto path = simulate_matrix_path(sc, s);
    const auto& h0 = path.matrices.front();
    const auto& h1 = path.matrices.back();
    const auto g = sample_gbe(gc, s);
    for (std::size_t e = 0; e < entries; ++e) {
      proc[e][s] = (entry(h1, e) - entry(h0, e)) * scale;
      ens[e][s] = entry(g, e);
    }
  }

  TimeSliceReport rep{n, beta, samples, z_limit, {}};
  for (std::size_t e = 0; e < entries; ++e) {
    const std::string name = e < n ? "d" + std::to_string(e + 1) : "o" + std::to_string(e - n + 1);
    for (int moment = 1; moment <= 2; ++moment) {
      std::vector<double> a = proc[e], b = ens[e];
      if (moment == 2) {
        for (auto& x : a) x *= x;
        for (auto& x : b) x *= x;
      }
      const auto ma = MomentEstimate::of(a), mb = MomentEstimate::of(b);
      const double se = std::hypot(ma.std_error, mb.std_error);
      rep.comparisons.push_back({name, moment, ma.mean, mb.mean,
                                 std::abs(ma.mean - mb.mean) / std::max(se, 1e-300)});
    }
  }
  return rep;
}

}  // namespace tridyson
