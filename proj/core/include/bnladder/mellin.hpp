#pragma once

// Mellin transforms of f_theta on the critical line s = 1/2 + it and the
// Gaussian Mellin multiplier psi_W(t) = eps + exp(-(t/W)^2).

#include <complex>
#include <cstddef>

#include "bnladder/fractional.hpp"

namespace bnladder {

/// Parameters of the Gaussian multiplier.
struct SmoothingParams {
  double W = 5.0;
  double epsilon = 1e-6;

  /// Throws DomainError unless W > 0 and epsilon >= 0.
  void validate() const;

  /// epsilon > 0: psi is bounded below, so T_psi is invertible. epsilon == 0
  /// is accepted numerically but falls outside that regime.
  bool invertible() const noexcept { return epsilon > 0.0; }

  friend bool operator==(const SmoothingParams&, const SmoothingParams&) = default;
};

/// psi_W(t) = epsilon + exp(-(t/W)^2); even, with values in [epsilon, epsilon + 1].
double psi(double t, const SmoothingParams& params) noexcept;

/// M[f_theta](1/2 + it) = zeta(s) (theta - theta^s) / s.
std::complex<double> mellin_closed(const ThetaParam& theta, double t);

/// Same, with theta given only through log(theta) (theta may underflow).
std::complex<double> mellin_closed_from_log(double log_theta, double t);

/// Same, reusing a precomputed zeta(1/2 + it).
std::complex<double> mellin_closed_from_log(double log_theta, double t, std::complex<double> zeta_value) noexcept;

struct MellinEstimate {
  std::complex<double> value;
  double error_estimate = 0.0;
  /// Bound on the (0, x_min] contribution for hard-cutoff evaluations.
  double tail_bound = 0.0;
  std::size_t pieces = 0;
};

/// Direct numerical integral of f_theta(x) x^{s-1} over (0, 1] at s = 1/2 + it.
/// Independent of zeta; used to cross-validate mellin_closed.
MellinEstimate mellin_direct(const ThetaParam& theta, double t, const QuadratureConfig& quad);

}  // namespace bnladder
