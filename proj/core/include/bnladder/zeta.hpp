#pragma once

// Riemann zeta on the critical line, zeta(1/2 + it).
//
// Evaluated through the alternating Dirichlet eta series with the
// Cohen-Rodriguez Villegas-Zagier acceleration, then
// zeta(s) = eta(s) / (1 - 2^{1-s}); the divisor has no zeros on Re(s) = 1/2.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bnladder {

/// Beyond this |t| the eta route is not validated and zeta_half refuses.
inline constexpr double kZetaTCap = 1.0e4;

/// Number of accelerated eta terms used at ordinate t.
std::size_t zeta_half_terms(double t) noexcept;

/// zeta(1/2 + it). Throws AccuracyCapError if |t| > t_cap.
std::complex<double> zeta_half(double t, double t_cap = kZetaTCap);

/// Stored high-precision reference value.
struct ZetaOraclePoint {
  double t;
  double re;
  double im;
};

/// The compiled-in reference grid (see zeta_fixtures.hpp).
std::span<const ZetaOraclePoint> zeta_oracle_grid() noexcept;

struct ZetaSelfcheckRow {
  double t;
  std::complex<double> computed;
  std::complex<double> expected;
  /// |computed - expected| / max(|expected|, 1e-3).
  double deviation;
};

struct ZetaSelfcheckReport {
  std::vector<ZetaSelfcheckRow> rows;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Compares zeta_half against `grid`; passes when every deviation < threshold.
ZetaSelfcheckReport zeta_selfcheck(std::span<const ZetaOraclePoint> grid, double threshold = 1e-9);

/// zeta_selfcheck against the compiled-in grid.
ZetaSelfcheckReport zeta_selfcheck();

}  // namespace bnladder
