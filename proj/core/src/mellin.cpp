#include "bnladder/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bnladder/error.hpp"
#include "bnladder/zeta.hpp"

namespace bnladder {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// n^{-s} at s = 1/2 + it.
cplx pow_neg_s(double n, double t) noexcept {
  const double phase = t * std::log(n);
  const double mag = 1.0 / std::sqrt(n);
  return {mag * std::cos(phase), -mag * std::sin(phase)};
}

// x^s at s = 1/2 + it.
cplx pow_s(double x, double t) noexcept {
  const double phase = t * std::log(x);
  const double mag = std::sqrt(x);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

// theta = 1/q: f is (n mod q)/q on (1/(n+1), 1/n], so
//   M(s) = (1/s) sum_n c(n) (n^{-s} - (n+1)^{-s}).
// Terms n < N are summed directly (N a multiple of q). The remainder splits
// into the period mean, cbar * N^{-s}, plus the zero-mean part, which two
// Abel summations reduce to Dbar * (N^{-s} - (N+1)^{-s}) with an error of
// order q * |s(s+1)(s+2)| * N^{-5/2}.
MellinEstimate mellin_direct_periodic(std::uint64_t q, double t, const QuadratureConfig& quad) {
  MellinEstimate out;
  if (q == 1) {
    out.value = 0.0;
    return out;
  }
  const cplx s(0.5, t);
  const double qd = static_cast<double>(q);

  std::vector<double> c(static_cast<std::size_t>(q));
  for (std::uint64_t r = 0; r < q; ++r) {
    c[static_cast<std::size_t>(r)] = static_cast<double>(r) / qd;
  }
  const double cbar = (qd - 1.0) / (2.0 * qd);

  // D(N + r) = sum_{k<r} (c(k) - cbar) over one period (N = 0 mod q).
  std::vector<double> partial(static_cast<std::size_t>(q));
  double acc = 0.0;
  for (std::uint64_t r = 0; r < q; ++r) {
    partial[static_cast<std::size_t>(r)] = acc;
    acc += c[static_cast<std::size_t>(r)] - cbar;
  }
  double dbar = 0.0;
  for (const double d : partial) dbar += d;
  dbar /= qd;
  double e_max = 0.0;
  double e_acc = 0.0;
  for (std::uint64_t r = 1; r <= q; ++r) {
    e_acc += partial[static_cast<std::size_t>(r % q)] - dbar;
    e_max = std::max(e_max, std::abs(e_acc));
  }
  e_max = std::max(e_max, 1.0 / qd);

  const double growth = std::abs(s * (s + 1.0) * (s + 2.0));
  const double target = 0.1 * quad.abs_tol;
  double n_needed = std::pow(0.4 * e_max * growth / target, 0.4);
  n_needed = std::max(n_needed, 64.0 * qd);
  const double n_cut = std::ceil(n_needed / qd) * qd;
  if (n_cut > static_cast<double>(quad.max_subdivisions)) {
    throw ConvergenceError("mellin_direct: " + std::to_string(n_cut) + " pieces needed at t = " +
                           std::to_string(t) + ", limit is " + std::to_string(quad.max_subdivisions));
  }
  const auto n_end = static_cast<std::uint64_t>(n_cut);

  cplx sum = 0.0;
  cplx prev = 1.0;  // 1^{-s}
  std::uint64_t r = 1 % q;
  for (std::uint64_t n = 1; n < n_end; ++n) {
    const cplx next = pow_neg_s(static_cast<double>(n + 1), t);
    if (r != 0) {
      sum += (static_cast<double>(r) / qd) * (prev - next);
    }
    prev = next;
    if (++r == q) r = 0;
  }
  const cplx n_pow = prev;  // N^{-s}
  const cplx n1_pow = pow_neg_s(n_cut + 1.0, t);
  sum += cbar * n_pow + dbar * (n_pow - n1_pow);

  out.value = sum / s;
  out.pieces = static_cast<std::size_t>(n_end);
  out.error_estimate = (0.4 * e_max * growth * std::pow(n_cut, -2.5) +
                        4.0 * kEps * std::sqrt(n_cut)) / std::abs(s);
  out.tail_bound = 0.0;
  return out;
}

MellinEstimate mellin_direct_hard_cutoff(const ThetaParam& theta, double t, const QuadratureConfig& quad) {
  const std::size_t expected = static_cast<std::size_t>((1.0 + theta.value()) / quad.x_min) + 2;
  if (expected > quad.max_subdivisions) {
    throw ConvergenceError("mellin_direct: about " + std::to_string(expected) +
                           " breakpoint pieces needed above x_min, limit is " +
                           std::to_string(quad.max_subdivisions));
  }
  const cplx s(0.5, t);
  const std::vector<double> bp = breakpoints(theta, quad.x_min);
  cplx sum = 0.0;
  double left = quad.x_min;
  cplx left_pow = pow_s(left, t);
  for (const double right : bp) {
    const cplx right_pow = pow_s(right, t);
    sum += eval_f(theta, 0.5 * (left + right)) * (right_pow - left_pow);
    left = right;
    left_pow = right_pow;
  }
  MellinEstimate out;
  out.value = sum / s;
  out.pieces = bp.size();
  out.error_estimate = 4.0 * kEps * static_cast<double>(bp.size());
  out.tail_bound = 4.0 * std::sqrt(quad.x_min);
  return out;
}

}  // namespace

void SmoothingParams::validate() const {
  if (!(W > 0.0) || !std::isfinite(W)) {
    throw DomainError("smoothing width W must be a positive finite number");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("smoothing floor epsilon must be finite and >= 0");
  }
}

double psi(double t, const SmoothingParams& params) noexcept {
  const double u = t / params.W;
  return params.epsilon + std::exp(-u * u);
}

std::complex<double> mellin_closed_from_log(double log_theta, double t, std::complex<double> zeta_value) noexcept {
  const cplx s(0.5, t);
  const double theta = std::exp(log_theta);
  const double root = std::exp(0.5 * log_theta);
  const double phase = t * log_theta;
  const cplx theta_s(root * std::cos(phase), root * std::sin(phase));
  return zeta_value * (theta - theta_s) / s;
}

std::complex<double> mellin_closed_from_log(double log_theta, double t) {
  if (log_theta == 0.0) {
    return 0.0;
  }
  return mellin_closed_from_log(log_theta, t, zeta_half(t));
}

std::complex<double> mellin_closed(const ThetaParam& theta, double t) {
  return mellin_closed_from_log(theta.log_value(), t);
}

MellinEstimate mellin_direct(const ThetaParam& theta, double t, const QuadratureConfig& quad) {
  quad.validate();
  if (!std::isfinite(t)) {
    throw DomainError("mellin_direct: t must be finite");
  }
  if (const auto q = theta.reciprocal_denominator(); q && *q <= quad.max_subdivisions / 64) {
    return mellin_direct_periodic(*q, t, quad);
  }
  return mellin_direct_hard_cutoff(theta, t, quad);
}

}  // namespace bnladder
