#pragma once

// The dyadic-triadic ladder theta_{j,k} = 2^{-j} 3^{-k}.
//
// Every logarithmic quantity is formed from the integer coordinates times
// log 2 and log 3, never from a floating theta, so it stays exact after
// theta itself underflows.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bnladder/fractional.hpp"

namespace bnladder {

inline constexpr double kLog2 = 0.69314718055994530942;
inline constexpr double kLog3 = 1.09861228866810969140;

/// Lattice coordinates (j, k), both nonnegative.
struct LadderIndex {
  int j = 0;
  int k = 0;

  friend auto operator<=>(const LadderIndex&, const LadderIndex&) = default;
};

/// A ladder index with its parameter.
struct LadderPoint {
  LadderIndex index;
  /// 2^{-j} 3^{-k}, or 0 when that is below the normal double range.
  double theta = 1.0;
  /// -(j log 2 + k log 3).
  double log_theta = 0.0;

  bool representable() const noexcept { return theta > 0.0; }

  /// 2^j 3^k when it fits in 64 bits.
  std::optional<std::uint64_t> denominator() const noexcept;

  /// The x-space parameter. Throws OverflowError when theta underflowed.
  ThetaParam theta_param() const;
};

/// The rectangle {0..j_max} x {0..k_max}, enumerated row-major (j outer).
struct IndexWindow {
  int j_max = 0;
  int k_max = 0;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(j_max + 1) * static_cast<std::size_t>(k_max + 1);
  }
  bool contains(LadderIndex idx) const noexcept {
    return idx.j >= 0 && idx.k >= 0 && idx.j <= j_max && idx.k <= k_max;
  }
  std::size_t position(LadderIndex idx) const noexcept {
    return static_cast<std::size_t>(idx.j) * static_cast<std::size_t>(k_max + 1) + static_cast<std::size_t>(idx.k);
  }
  LadderIndex at(std::size_t pos) const noexcept {
    const auto width = static_cast<std::size_t>(k_max + 1);
    return {static_cast<int>(pos / width), static_cast<int>(pos % width)};
  }
  int diameter() const noexcept { return j_max + k_max; }

  /// Throws DomainError on negative bounds.
  void validate() const;

  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

/// theta_{j,k} with exact log. Never throws; see LadderPoint::representable.
LadderPoint theta_of(LadderIndex index);

/// Every point of the window in row-major order.
std::vector<LadderPoint> ladder_points(const IndexWindow& window);

/// Manhattan distance |j - j'| + |k - k'|.
int distance(LadderIndex a, LadderIndex b) noexcept;

/// lambda = log(theta_a / theta_b), mu = log(theta_a theta_b).
struct Displacement {
  double lambda = 0.0;
  double mu = 0.0;
};

Displacement lambda_mu(LadderIndex a, LadderIndex b) noexcept;

/// Indices of `window` at distance exactly r from `center`, row-major order.
std::vector<LadderIndex> shell(LadderIndex center, int r, const IndexWindow& window);

struct InjectivityReport {
  std::size_t points = 0;
  bool injective = true;
  /// Smallest |delta(j log 2 + k log 3)| over distinct pairs; 0 for a single point.
  double min_gap = 0.0;
};

InjectivityReport check_injectivity(const IndexWindow& window);

/// Empirical lower constants for |lambda| >= c d and |mu| >= c d over all
/// distinct pairs of a window, against c = log 2.
struct DisplacementGapReport {
  std::size_t pairs = 0;
  double min_lambda_ratio = 0.0;  ///< min |lambda| / d
  double min_mu_ratio = 0.0;      ///< min |mu| / d
  std::size_t lambda_violations = 0;  ///< pairs with |lambda| < log2 * d
  std::size_t mu_violations = 0;
  /// Violations whose index difference has components of opposite sign.
  std::size_t lambda_violations_mixed_sign = 0;
};

DisplacementGapReport displacement_gaps(const IndexWindow& window);

}  // namespace bnladder
