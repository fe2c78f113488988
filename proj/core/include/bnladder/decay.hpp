#pragma once

// Off-diagonal decay of Gram matrices against ladder distance: shell
// statistics, envelopes, power-law exponent fits, row tail sums and the
// Schur bound for finite sections.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bnladder/gram.hpp"
#include "bnladder/ladder.hpp"

namespace bnladder {

struct ShellStats {
  int r = 0;
  std::size_t count = 0;
  double mean_abs = 0.0;
  double max_abs = 0.0;
  double sum_abs = 0.0;
};

struct ShellOptions {
  /// Restrict to row `center`; otherwise all ordered pairs.
  std::optional<LadderIndex> center;
  /// Drop pairs involving (0,0), whose row is identically zero. Ignored for a
  /// one-point window, which has nothing else.
  bool exclude_zero_row = true;
};

/// One entry per distance that has at least one counted pair, ascending r.
std::vector<ShellStats> shell_stats(const GramMatrix& g, const ShellOptions& options = {});

struct Envelopes {
  std::vector<double> shell;  ///< max |entry| at distance exactly n
  std::vector<double> tail;   ///< max |entry| at distance >= n
};

/// Both envelopes for n = 0..diameter.
Envelopes envelopes(const GramMatrix& g);

struct FitRange {
  int r_lo = 1;
  int r_hi = 1;
};

/// [1, max(1, diameter / 2)].
FitRange default_fit_range(const IndexWindow& window) noexcept;

/// Negated OLS slope of log(mean_abs) against log(1 + c r) over shells in
/// range with mean_abs > 0. Throws DegenerateFitError with fewer than 3 such
/// shells or a constant abscissa.
double fit_exponent(const std::vector<ShellStats>& shells, FitRange range, double c = kLog2);

/// Sum of |G[center][q]| over q at distance >= B.
double tail_sum(const GramMatrix& g, LadderIndex center, int B);

/// max over centers of tail_sum: Schur's bound on ||G - G^(B)||.
double schur_truncation_bound(const GramMatrix& g, int B);

/// G - G^(B): the entries at distance >= B, zeros elsewhere.
Eigen::MatrixXd truncation_residual(const GramMatrix& g, int B);

struct OpnormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  /// True when the all-ones start had a near-zero Rayleigh quotient and the
  /// heaviest row's basis vector was used instead.
  bool fallback_start = false;
};

/// Power iteration for the spectral norm of a symmetric matrix.
OpnormEstimate power_iteration_norm(const Eigen::MatrixXd& m, std::size_t iters = 200);

/// power_iteration_norm(truncation_residual(g, B), iters).
OpnormEstimate opnorm_residual(const GramMatrix& g, int B, std::size_t iters = 200);

struct DecayReport {
  IndexWindow window;
  GramKind kind;
  GramMethod method = GramMethod::Direct;
  bool exclude_zero_row = true;
  std::vector<ShellStats> shells;
  std::vector<double> envelope_shell;
  std::vector<double> envelope_tail;
  double fitted_exponent = 0.0;
  double c = kLog2;
  FitRange fit_range;
  DisplacementGapReport lambda_gap_report;
  /// Whether envelope_shell happens to be nonincreasing, and where it rises.
  bool shell_sup_monotone = true;
  std::vector<int> shell_sup_increases;
  std::vector<std::string> warnings;
};

/// Throws DegenerateFitError when the window has too few shells to fit.
DecayReport decay_report(const GramMatrix& g, std::optional<FitRange> fit_range = std::nullopt,
                         bool exclude_zero_row = true);

struct TruncationReport {
  int B = 1;
  double schur_bound = 0.0;
  double empirical_opnorm = 0.0;
  bool opnorm_converged = true;
  /// T_B for every row, row-major window order.
  std::vector<double> tail_sums;
};

struct TruncationSummary {
  IndexWindow window;
  GramKind kind;
  std::vector<TruncationReport> reports;
  /// Negated slope of log schur_bound against log(1 + B) over B with a
  /// positive bound; empty with fewer than two such B.
  std::optional<double> fit_exponent_tail;
  std::vector<std::string> warnings;
};

/// Throws DomainError unless every B >= 1.
TruncationSummary truncation_summary(const GramMatrix& g, const std::vector<int>& b_list,
                                     std::size_t iters = 200);

// Serialization (decay_io.cpp).

/// Header `r,count,mean_abs,max_abs,sum_abs`.
std::string shells_to_csv(const std::vector<ShellStats>& shells);
std::string decay_report_to_json(const DecayReport& report);
std::string truncation_summary_to_json(const TruncationSummary& summary);

}  // namespace bnladder
