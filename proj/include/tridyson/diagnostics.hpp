#pragma once

// Per-path scans of the eigenvalue SDE terms along a simulated matrix path.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tridyson/dyson.hpp"

namespace tridyson {

struct PathDiagnostics {
  std::size_t retained = 0;  // grid times scanned
  std::optional<double> stopped_at;
  std::optional<std::string> error;  // first failure to evaluate (collided spectrum)

  double max_iden_residual = 0.0;
  double max_coef_diag = 0.0;  // max |f f / P|
  double max_coef_off = 0.0;   // max |sqrt(2) X f f / P|
  double min_fsum_fraction = std::numeric_limits<double>::infinity();
  double max_fsum_fraction = -std::numeric_limits<double>::infinity();
  double min_qv_rate = std::numeric_limits<double>::infinity();
  double max_qv_rate = -std::numeric_limits<double>::infinity();
  double max_qv_mismatch = 0.0;  // |qv_rate_at - sum of squared coefficients| / 2

  // n x n row-major: sum of dlambda_i dlambda_j, and the left-point integral of the rate.
  std::vector<double> realized_qv;
  std::vector<double> integrated_qv;

  PathInterlacingReport interlacing;

  [[nodiscard]] double realized(std::size_t i, std::size_t j, std::size_t n) const {
    return realized_qv[i * n + j];
  }
  [[nodiscard]] double integrated(std::size_t i, std::size_t j, std::size_t n) const {
    return integrated_qv[i * n + j];
  }
};

inline PathDiagnostics diagnose_path(const MatrixPath& path, const EigenPathSet& eigs) {
  const std::size_t n = path.config.n;
  PathDiagnostics d;
  d.stopped_at = path.stopped_at;
  d.realized_qv.assign(n * n, 0.0);
  d.integrated_qv.assign(n * n, 0.0);
  d.interlacing = check_path_interlacing(path, eigs);
  const double dt = path.noise.dt();

  for (std::size_t m = 0; m < eigs.size(); ++m) {
    const auto& h = path.matrices[m];
    const auto state = make_state(h, eigs.spectra[m]);
    try {
      for (std::size_t i = 0; i < n; ++i) {
        d.max_iden_residual = std::max(d.max_iden_residual, iden_residual_at(state, i));
        const auto c = diffusion_coeffs_at(state, i).normalized();
        for (double x : c.diag) d.max_coef_diag = std::max(d.max_coef_diag, std::abs(x));
        for (double x : c.off) d.max_coef_off = std::max(d.max_coef_off, std::abs(x));
        const double frac = f_sum_fraction(state, i);
        d.min_fsum_fraction = std::min(d.min_fsum_fraction, frac);
        d.max_fsum_fraction = std::max(d.max_fsum_fraction, frac);
        const double rate = qv_rate_at(state, h, i, i);
        d.min_qv_rate = std::min(d.min_qv_rate, rate);
        d.max_qv_rate = std::max(d.max_qv_rate, rate);
        d.max_qv_mismatch =
            std::max(d.max_qv_mismatch, std::abs(rate - qv_rate_from_coeffs(state, i, i)) / 2.0);
        if (m + 1 < eigs.size()) {
          for (std::size_t j = 0; j < n; ++j) {
            const double r = i == j ? rate : qv_rate_at(state, h, i, j);
            d.integrated_qv[i * n + j] += r * dt;
          }
        }
      }
    } catch (const std::domain_error& e) {
      d.error = "t=" + std::to_string(eigs.times[m]) + ": " + e.what();
      break;
    }
    if (m + 1 < eigs.size()) {
      const auto& a = eigs.spectra[m].full().values;
      const auto& b = eigs.spectra[m + 1].full().values;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          d.realized_qv[i * n + j] += (b[i] - a[i]) * (b[j] - a[j]);
    }
    ++d.retained;
  }
  return d;
}

/// Max integrated-vs-diagonalized discrepancy at the path's dt and at dt/2 on
/// Brownian-bridge refined noise.
struct ConvergencePair {
  double coarse = 0.0;
  double fine = 0.0;
  std::optional<std::string> coarse_stop;
  std::optional<std::string> fine_stop;

  [[nodiscard]] bool improved() const { return fine < coarse; }
};

inline ConvergencePair halving_study(const SdeConfig& config, std::uint64_t path_index,
                                     const std::vector<MinorRange>& ranges, double tol = 1e-13) {
  ConvergencePair out;
  auto run = [&](NoiseGrid noise, double& disc, std::optional<std::string>& stop) {
    const auto path = simulate_matrix_path(config, std::move(noise), path_index);
    const auto eigs = eigen_paths(path, ranges, tol);
    const auto integ = integrate_sde_path(path, eigs, eigs.spectra.front().full());
    disc = integ.max_discrepancy();
    stop = integ.stopped_reason;
  };
  NoiseGrid coarse = make_noise(config, path_index);
  NoiseGrid fine = refine(coarse, config.seed, path_index);
  run(std::move(coarse), out.coarse, out.coarse_stop);
  run(std::move(fine), out.fine, out.fine_stop);
  return out;
}

}  // namespace tridyson
