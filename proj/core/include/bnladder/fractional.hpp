#pragma once

// Beurling-Nyman functions f_theta(x) = {theta/x} - theta*{1/x} on (0, 1]
// and their direct x-space L^2 inner products.
//
// Between consecutive breakpoints (points theta/n and 1/n) f_theta is
// constant, equal to theta*floor(1/x) - floor(theta/x). Inner products are
// therefore sums over breakpoint pieces. For reciprocal parameters
// theta = 1/q the piece values repeat with period q in n = floor(1/x), and
// the whole series is summed exactly through digamma differences; other
// parameters use a hard cutoff at x_min with the tail bound 4*x_min.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace bnladder {

/// Fractional part with the floor convention: frac(-0.25) == 0.75.
double frac(double x) noexcept;

/// Parameter theta in (0, 1]. Remembers whether theta is exactly 1/q for a
/// positive integer q, which unlocks exact breakpoint arithmetic.
class ThetaParam {
 public:
  /// Throws DomainError unless 0 < value <= 1. Values within 1e-14 relative
  /// of 1/q are recognised as reciprocals.
  explicit ThetaParam(double value);

  /// theta = 1/q exactly (q >= 1).
  static ThetaParam reciprocal(std::uint64_t q);

  double value() const noexcept { return value_; }
  /// log(theta); -log(q) for reciprocals.
  double log_value() const noexcept;
  std::optional<std::uint64_t> reciprocal_denominator() const noexcept { return denominator_; }

 private:
  ThetaParam(double value, std::optional<std::uint64_t> q) noexcept
      : value_(value), denominator_(q) {}

  double value_;
  std::optional<std::uint64_t> denominator_;
};

/// Tolerances and cutoffs shared by every integral in the library.
struct QuadratureConfig {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  /// Lower cutoff for hard-cutoff x-integrals; default abs_tol / 8.
  double x_min = 1.25e-9;
  std::size_t max_subdivisions = 1'000'000;
  /// Spectral truncation for integrands without Gaussian weight.
  double t_max_raw = 2000.0;
  /// Selects T_max for Gaussian-weighted spectral integrands.
  double gaussian_tail_tol = 1e-10;

  /// Default config with abs_tol = rel_tol = tol and x_min = tol / 8.
  static QuadratureConfig with_tolerance(double tol);

  /// Throws DomainError naming the first violated precondition.
  void validate() const;
};

/// Result of a direct x-space integral.
struct IntegralEstimate {
  double value = 0.0;
  /// Rounding/summation error estimate (excludes the tail).
  double error_estimate = 0.0;
  /// Bound on the discarded (0, x_min] contribution; 0 when summed exactly.
  double tail_bound = 0.0;
  std::size_t pieces = 0;
  bool exact_tail = false;
};

/// f_theta(x); throws DomainError unless 0 < x <= 1.
double eval_f(const ThetaParam& theta, double x);

/// Every theta/n and 1/n in (x_min, 1], ascending, duplicates merged.
std::vector<double> breakpoints(const ThetaParam& theta, double x_min);

/// <f_a, f_b> over (0, 1]. Symmetric in its arguments.
IntegralEstimate inner_direct(const ThetaParam& a, const ThetaParam& b, const QuadratureConfig& quad);

/// ||f_theta||_2.
double l2_norm(const ThetaParam& theta, const QuadratureConfig& quad);

/// Largest period for which reciprocal inner products are summed exactly;
/// longer periods fall back to the hard cutoff.
inline constexpr std::uint64_t kMaxExactPeriod = std::uint64_t{1} << 24;

/// Exact inner products for reciprocal parameters whose denominators all
/// divide `period`. Stores digamma(i / period) for i = 1..period+1 so that a
/// whole Gram window shares one table; read-only after construction.
class PeriodicInnerTable {
 public:
  explicit PeriodicInnerTable(std::uint64_t period);

  std::uint64_t period() const noexcept { return period_; }

  /// <f_{1/qa}, f_{1/qb}>; qa and qb must divide period().
  IntegralEstimate inner(std::uint64_t qa, std::uint64_t qb) const;

 private:
  std::uint64_t period_;
  std::vector<double> digamma_;
};

}  // namespace bnladder
