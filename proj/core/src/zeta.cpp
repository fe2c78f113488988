#include "bnladder/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bnladder/error.hpp"
#include "bnladder/zeta_fixtures.hpp"

namespace bnladder {

namespace {

// log(k+1) and (k+1)^{-1/2} for every term index the cap can require.
struct TermTables {
  std::vector<double> log_k;
  std::vector<double> inv_sqrt_k;

  TermTables() {
    const std::size_t n = zeta_half_terms(kZetaTCap);
    log_k.resize(n);
    inv_sqrt_k.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double m = static_cast<double>(k + 1);
      log_k[k] = std::log(m);
      inv_sqrt_k[k] = 1.0 / std::sqrt(m);
    }
  }
};

const TermTables& term_tables() {
  static const TermTables tables;
  return tables;
}

// CVZ weights w_k = sum_{i>k} |b_i| / sum_i |b_i|, k = 0..n-1, where b_i are
// the coefficients generated by Algorithm 1 of Cohen-Villegas-Zagier. The
// |b_i| reach (3+sqrt 8)^n, so they are accumulated as mantissa/exponent
// pairs and only normalised at the end.
std::vector<double> acceleration_weights(std::size_t n) {
  constexpr double kScale = 1e-200;
  constexpr double kRescaleAt = 1e200;
  std::vector<double> mant(n + 1);
  std::vector<int> expo(n + 1);
  double m = 1.0;
  int e = 0;
  const auto nd = static_cast<double>(n);
  mant[0] = m;
  expo[0] = e;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto id = static_cast<double>(i);
    m *= (nd + id - 1.0) * (nd - id + 1.0) / ((id - 0.5) * id);
    if (m > kRescaleAt) {
      m *= kScale;
      ++e;
    }
    mant[i] = m;
    expo[i] = e;
  }
  const int e_max = *std::max_element(expo.begin(), expo.end());
  std::vector<double> mag(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const int shift = expo[i] - e_max;
    mag[i] = shift == 0 ? mant[i] : (shift == -1 ? mant[i] * kScale : 0.0);
  }
  std::vector<double> w(n);
  double suffix = 0.0;
  for (std::size_t i = n; i >= 1; --i) {
    suffix += mag[i];
    w[i - 1] = suffix;
  }
  const double total = suffix + mag[0];
  for (double& x : w) {
    x /= total;
  }
  return w;
}

}  // namespace

std::size_t zeta_half_terms(double t) noexcept {
  return static_cast<std::size_t>(std::ceil(1.3 * std::abs(t))) + 60;
}

std::complex<double> zeta_half(double t, double t_cap) {
  if (!std::isfinite(t) || std::abs(t) > t_cap || std::abs(t) > kZetaTCap) {
    throw AccuracyCapError("zeta_half: |t| = " + std::to_string(std::abs(t)) +
                           " exceeds the validated cap " + std::to_string(std::min(t_cap, kZetaTCap)));
  }
  const std::size_t n = zeta_half_terms(t);
  const std::vector<double> w = acceleration_weights(n);
  const TermTables& tables = term_tables();

  // eta(s) = sum_k (-1)^k (k+1)^{-s}, (k+1)^{-s} = (k+1)^{-1/2} e^{-it log(k+1)}.
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = t * tables.log_k[k];
    const double mag = w[k] * tables.inv_sqrt_k[k];
    const double term_re = mag * std::cos(phase);
    const double term_im = -mag * std::sin(phase);
    if (k % 2 == 0) {
      re += term_re;
      im += term_im;
    } else {
      re -= term_re;
      im -= term_im;
    }
  }
  const std::complex<double> eta(re, im);
  const double phase2 = t * std::numbers::ln2;
  const std::complex<double> two_pow(std::numbers::sqrt2 * std::cos(phase2), -std::numbers::sqrt2 * std::sin(phase2));
  return eta / (1.0 - two_pow);
}

std::span<const ZetaOraclePoint> zeta_oracle_grid() noexcept { return fixtures::kZetaHalfGrid; }

ZetaSelfcheckReport zeta_selfcheck(std::span<const ZetaOraclePoint> grid, double threshold) {
  ZetaSelfcheckReport report;
  report.threshold = threshold;
  report.rows.reserve(grid.size());
  for (const ZetaOraclePoint& p : grid) {
    ZetaSelfcheckRow row;
    row.t = p.t;
    row.expected = {p.re, p.im};
    row.computed = zeta_half(p.t);
    row.deviation = std::abs(row.computed - row.expected) / std::max(std::abs(row.expected), 1e-3);
    report.max_deviation = std::max(report.max_deviation, row.deviation);
    report.rows.push_back(row);
  }
  report.passed = !grid.empty() && report.max_deviation < threshold;
  return report;
}

ZetaSelfcheckReport zeta_selfcheck() { return zeta_selfcheck(zeta_oracle_grid()); }

}  // namespace bnladder
