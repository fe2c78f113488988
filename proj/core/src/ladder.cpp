#include "bnladder/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bnladder/error.hpp"

namespace bnladder {

namespace {

// Below this, theta would be subnormal and lose relative accuracy.
const double kMinLogTheta = std::log(std::numeric_limits<double>::min());

double log_magnitude(long long dj, long long dk) noexcept {
  return static_cast<double>(dj) * kLog2 + static_cast<double>(dk) * kLog3;
}

}  // namespace

std::optional<std::uint64_t> LadderPoint::denominator() const noexcept {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t q = 1;
  for (int i = 0; i < index.j; ++i) {
    if (q > kMax / 2) return std::nullopt;
    q *= 2;
  }
  for (int i = 0; i < index.k; ++i) {
    if (q > kMax / 3) return std::nullopt;
    q *= 3;
  }
  return q;
}

ThetaParam LadderPoint::theta_param() const {
  if (!representable()) {
    throw OverflowError("theta_(" + std::to_string(index.j) + "," + std::to_string(index.k) +
                        ") underflows double precision; only its logarithm is available");
  }
  if (const auto q = denominator()) {
    return ThetaParam::reciprocal(*q);
  }
  return ThetaParam(theta);
}

void IndexWindow::validate() const {
  if (j_max < 0 || k_max < 0) {
    throw DomainError("index window bounds must be nonnegative");
  }
}

LadderPoint theta_of(LadderIndex index) {
  LadderPoint p;
  p.index = index;
  p.log_theta = 0.0 - log_magnitude(index.j, index.k);
  if (p.log_theta < kMinLogTheta) {
    p.theta = 0.0;
    return p;
  }
  // 3^k is exact in double for k <= 33; ldexp applies 2^{-j} exactly.
  const double three_k = index.k <= 33 ? std::pow(3.0, index.k) : std::exp(index.k * kLog3);
  p.theta = std::ldexp(1.0 / three_k, -index.j);
  return p;
}

std::vector<LadderPoint> ladder_points(const IndexWindow& window) {
  window.validate();
  std::vector<LadderPoint> out;
  out.reserve(window.size());
  for (std::size_t p = 0; p < window.size(); ++p) {
    out.push_back(theta_of(window.at(p)));
  }
  return out;
}

int distance(LadderIndex a, LadderIndex b) noexcept { return std::abs(a.j - b.j) + std::abs(a.k - b.k); }

Displacement lambda_mu(LadderIndex a, LadderIndex b) noexcept {
  return {log_magnitude(static_cast<long long>(b.j) - a.j, static_cast<long long>(b.k) - a.k),
          -log_magnitude(static_cast<long long>(a.j) + b.j, static_cast<long long>(a.k) + b.k)};
}

std::vector<LadderIndex> shell(LadderIndex center, int r, const IndexWindow& window) {
  if (!window.contains(center)) {
    throw DomainError("shell: center lies outside the window");
  }
  if (r < 0) {
    throw DomainError("shell: radius must be nonnegative");
  }
  std::vector<LadderIndex> out;
  const int j_lo = std::max(0, center.j - r);
  const int j_hi = std::min(window.j_max, center.j + r);
  for (int j = j_lo; j <= j_hi; ++j) {
    const int rest = r - std::abs(j - center.j);
    const int k_minus = center.k - rest;
    const int k_plus = center.k + rest;
    if (k_minus >= 0 && k_minus <= window.k_max) {
      out.push_back({j, k_minus});
    }
    if (rest > 0 && k_plus >= 0 && k_plus <= window.k_max) {
      out.push_back({j, k_plus});
    }
  }
  return out;
}

InjectivityReport check_injectivity(const IndexWindow& window) {
  window.validate();
  InjectivityReport report;
  report.points = window.size();
  std::vector<double> logs;
  logs.reserve(window.size());
  for (std::size_t p = 0; p < window.size(); ++p) {
    const LadderIndex idx = window.at(p);
    logs.push_back(log_magnitude(idx.j, idx.k));
  }
  std::sort(logs.begin(), logs.end());
  if (logs.size() < 2) {
    return report;
  }
  report.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < logs.size(); ++i) {
    const double gap = logs[i] - logs[i - 1];
    report.min_gap = std::min(report.min_gap, gap);
    if (!(gap > 0.0)) {
      report.injective = false;
    }
  }
  return report;
}

DisplacementGapReport displacement_gaps(const IndexWindow& window) {
  window.validate();
  DisplacementGapReport report;
  report.min_lambda_ratio = std::numeric_limits<double>::infinity();
  report.min_mu_ratio = std::numeric_limits<double>::infinity();
  const std::size_t n = window.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const LadderIndex a = window.at(p);
      const LadderIndex b = window.at(q);
      const double d = distance(a, b);
      const Displacement disp = lambda_mu(a, b);
      const double lr = std::abs(disp.lambda) / d;
      const double mr = std::abs(disp.mu) / d;
      ++report.pairs;
      report.min_lambda_ratio = std::min(report.min_lambda_ratio, lr);
      report.min_mu_ratio = std::min(report.min_mu_ratio, mr);
      if (std::abs(disp.lambda) < kLog2 * d) {
        ++report.lambda_violations;
        if ((b.j - a.j) * (b.k - a.k) < 0) {
          ++report.lambda_violations_mixed_sign;
        }
      }
      if (std::abs(disp.mu) < kLog2 * d * (1.0 - 1e-15)) {
        ++report.mu_violations;
      }
    }
  }
  if (report.pairs == 0) {
    report.min_lambda_ratio = 0.0;
    report.min_mu_ratio = 0.0;
  }
  return report;
}

}  // namespace bnladder
