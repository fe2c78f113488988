#include "bnladder/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

#include "bnladder/error.hpp"

namespace bnladder {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDedupRelTol = 1e-14;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::size_t estimated_piece_count(double theta, double x_min) {
  return static_cast<std::size_t>((1.0 + theta) / x_min) + 2;
}

IntegralEstimate inner_hard_cutoff(const ThetaParam& a, const ThetaParam& b, const QuadratureConfig& quad) {
  if (4.0 * quad.x_min > quad.abs_tol) {
    throw DomainError("hard-cutoff tail bound 4*x_min = " + std::to_string(4.0 * quad.x_min) +
                      " exceeds abs_tol = " + std::to_string(quad.abs_tol));
  }
  const std::size_t expected =
      estimated_piece_count(a.value(), quad.x_min) + estimated_piece_count(b.value(), quad.x_min);
  if (expected > quad.max_subdivisions) {
    throw ConvergenceError("inner_direct: about " + std::to_string(expected) +
                           " breakpoint pieces needed above x_min, limit is " +
                           std::to_string(quad.max_subdivisions));
  }

  const std::vector<double> pa = breakpoints(a, quad.x_min);
  const std::vector<double> pb = breakpoints(b, quad.x_min);
  std::vector<double> merged;
  merged.reserve(pa.size() + pb.size());
  std::merge(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](double u, double v) { return std::abs(u - v) <= kDedupRelTol * v; }),
               merged.end());

  CompensatedSum sum;
  double left = quad.x_min;
  for (const double right : merged) {
    const double mid = 0.5 * (left + right);
    sum.add(eval_f(a, mid) * eval_f(b, mid) * (right - left));
    left = right;
  }

  IntegralEstimate out;
  out.value = sum.value();
  out.pieces = merged.size();
  out.error_estimate = 4.0 * kEps * static_cast<double>(merged.size()) * std::max(1.0, std::abs(out.value));
  out.tail_bound = 4.0 * quad.x_min;
  out.exact_tail = false;
  return out;
}

}  // namespace

double frac(double x) noexcept { return x - std::floor(x); }

ThetaParam::ThetaParam(double value) : value_(value) {
  if (!(value > 0.0) || !(value <= 1.0)) {
    throw DomainError("theta must satisfy 0 < theta <= 1, got " + std::to_string(value));
  }
  const double q = std::round(1.0 / value);
  if (q >= 1.0 && q < 9.0e15 && std::abs(q * value - 1.0) <= kDedupRelTol) {
    denominator_ = static_cast<std::uint64_t>(q);
    value_ = 1.0 / q;
  }
}

ThetaParam ThetaParam::reciprocal(std::uint64_t q) {
  if (q == 0) {
    throw DomainError("reciprocal theta needs q >= 1");
  }
  return ThetaParam(1.0 / static_cast<double>(q), q);
}

double ThetaParam::log_value() const noexcept {
  if (denominator_) {
    return -std::log(static_cast<double>(*denominator_));
  }
  return std::log(value_);
}

QuadratureConfig QuadratureConfig::with_tolerance(double tol) {
  QuadratureConfig q;
  q.abs_tol = tol;
  q.rel_tol = tol;
  q.x_min = tol / 8.0;
  return q;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("abs_tol must be a positive finite number");
  }
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("rel_tol must be a positive finite number");
  }
  if (!(x_min > 0.0) || !(x_min < 1.0)) {
    throw DomainError("x_min must lie in (0, 1)");
  }
  if (max_subdivisions == 0) {
    throw DomainError("max_subdivisions must be positive");
  }
  if (!(t_max_raw > 0.0) || !std::isfinite(t_max_raw)) {
    throw DomainError("t_max_raw must be a positive finite number");
  }
  if (!(gaussian_tail_tol > 0.0) || !(gaussian_tail_tol < 1.0)) {
    throw DomainError("gaussian_tail_tol must lie in (0, 1)");
  }
}

double eval_f(const ThetaParam& theta, double x) {
  if (!(x > 0.0) || !(x <= 1.0)) {
    throw DomainError("f_theta is defined on (0, 1], got x = " + std::to_string(x));
  }
  const double th = theta.value();
  return frac(th / x) - th * frac(1.0 / x);
}

std::vector<double> breakpoints(const ThetaParam& theta, double x_min) {
  if (!(x_min > 0.0) || !(x_min < 1.0)) {
    throw DomainError("breakpoints: x_min must lie in (0, 1)");
  }
  const double n_max = std::floor(1.0 / x_min);
  std::vector<double> out;

  if (const auto q = theta.reciprocal_denominator()) {
    // Breakpoints are 1/m for m in {n} u {q n}; merge the integer sets exactly.
    std::vector<std::uint64_t> ms;
    const auto limit = static_cast<std::uint64_t>(n_max);
    ms.reserve(static_cast<std::size_t>(limit) + static_cast<std::size_t>(limit / *q) + 1);
    for (std::uint64_t n = 1; n <= limit; ++n) {
      ms.push_back(n);
    }
    for (std::uint64_t n = 1; n <= limit / *q; ++n) {
      ms.push_back(*q * n);
    }
    std::sort(ms.begin(), ms.end(), std::greater<>());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    out.reserve(ms.size());
    for (const std::uint64_t m : ms) {
      const double x = 1.0 / static_cast<double>(m);
      if (x > x_min) {
        out.push_back(x);
      }
    }
    return out;
  }

  const double th = theta.value();
  for (double n = 1.0; n <= n_max; n += 1.0) {
    const double x = 1.0 / n;
    if (x > x_min) out.push_back(x);
    const double y = th / n;
    if (y > x_min) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double u, double v) { return std::abs(u - v) <= kDedupRelTol * v; }),
            out.end());
  return out;
}

PeriodicInnerTable::PeriodicInnerTable(std::uint64_t period) : period_(period) {
  if (period == 0) {
    throw DomainError("PeriodicInnerTable: period must be positive");
  }
  digamma_.resize(static_cast<std::size_t>(period) + 2);
  const double p = static_cast<double>(period);
  digamma_[0] = 0.0;  // unused
  for (std::uint64_t i = 1; i <= period + 1; ++i) {
    digamma_[static_cast<std::size_t>(i)] = boost::math::digamma(static_cast<double>(i) / p);
  }
}

IntegralEstimate PeriodicInnerTable::inner(std::uint64_t qa, std::uint64_t qb) const {
  if (qa == 0 || qb == 0 || period_ % qa != 0 || period_ % qb != 0) {
    throw DomainError("PeriodicInnerTable: denominators must divide the table period");
  }
  // f_{1/q} equals (n mod q)/q on (1/(n+1), 1/n]. With L = lcm(qa, qb):
  //   <f_a, f_b> = sum_{r=1}^{L-1} c(r) * sum_{m>=0} [1/(r+mL) - 1/(r+1+mL)]
  //              = sum_r c(r) * (digamma((r+1)/L) - digamma(r/L)) / L.
  const std::uint64_t lcm = std::lcm(qa, qb);
  const std::uint64_t stride = period_ / lcm;
  const double inv_l = 1.0 / static_cast<double>(lcm);
  const double inv_ab = 1.0 / (static_cast<double>(qa) * static_cast<double>(qb));

  CompensatedSum sum;
  std::uint64_t ra = 1 % qa;
  std::uint64_t rb = 1 % qb;
  for (std::uint64_t r = 1; r < lcm; ++r) {
    if (ra != 0 && rb != 0) {
      const double c = static_cast<double>(ra) * static_cast<double>(rb) * inv_ab;
      const double w = digamma_[static_cast<std::size_t>((r + 1) * stride)] -
                       digamma_[static_cast<std::size_t>(r * stride)];
      sum.add(c * w);
    }
    if (++ra == qa) ra = 0;
    if (++rb == qb) rb = 0;
  }

  IntegralEstimate out;
  out.value = sum.value() * inv_l;
  out.pieces = static_cast<std::size_t>(lcm);
  out.error_estimate = 8.0 * kEps * std::max(1.0, std::abs(out.value)) *
                       std::sqrt(static_cast<double>(lcm) + 1.0);
  out.tail_bound = 0.0;
  out.exact_tail = true;
  return out;
}

IntegralEstimate inner_direct(const ThetaParam& a, const ThetaParam& b, const QuadratureConfig& quad) {
  quad.validate();
  const auto qa = a.reciprocal_denominator();
  const auto qb = b.reciprocal_denominator();
  if (qa && qb) {
    if (*qa == 1 || *qb == 1) {
      IntegralEstimate zero;
      zero.exact_tail = true;
      return zero;
    }
    const std::uint64_t lcm = std::lcm(*qa, *qb);
    if (lcm <= kMaxExactPeriod) {
      return PeriodicInnerTable(lcm).inner(*qa, *qb);
    }
  }
  return inner_hard_cutoff(a, b, quad);
}

double l2_norm(const ThetaParam& theta, const QuadratureConfig& quad) {
  return std::sqrt(std::max(0.0, inner_direct(theta, theta, quad).value));
}

}  // namespace bnladder
