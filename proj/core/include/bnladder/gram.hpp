#pragma once

// Gram matrices of ladder functions, raw and Mellin-smoothed, by direct
// x-space summation or by critical-line spectral integration.
//
// Spectral entries use the Parseval form
//   <f_a, f_b> = (1/pi) int_0^inf Re[ M_a(1/2+it) conj(M_b(1/2+it)) ] dt,
// where the real part factors as K(t) * P_ab(t) with the shared kernel
// K = |zeta(1/2+it)|^2 / (1/4 + t^2) and the trigonometric polynomial
//   P_ab = th_a th_b - th_a sqrt(th_b) cos(t l_b) - th_b sqrt(th_a) cos(t l_a)
//          + sqrt(th_a th_b) cos(t (l_a - l_b)),        l = log(1/theta).

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bnladder/fractional.hpp"
#include "bnladder/ladder.hpp"
#include "bnladder/mellin.hpp"

namespace bnladder {

/// Raw, or smoothed by the multiplier psi_W.
struct GramKind {
  std::optional<SmoothingParams> smoothing;

  static GramKind raw() noexcept { return {}; }
  static GramKind smoothed(SmoothingParams p) noexcept { return {p}; }
  bool is_raw() const noexcept { return !smoothing.has_value(); }

  friend bool operator==(const GramKind&, const GramKind&) = default;
};

/// Direct: x-space sums (raw only). Spectral: critical-line integrals, with
/// the eps^2 piece of a smoothed entry taken from x-space. Hybrid: direct for
/// raw entries, spectral otherwise.
enum class GramMethod { Direct, Spectral, Hybrid };

const char* to_string(GramMethod m) noexcept;
GramMethod gram_method_from_string(const std::string& s);

/// One spectral inner product with its error budget.
struct SpectralEstimate {
  double value = 0.0;
  /// Panel quadrature error estimate (already divided by pi).
  double quad_error = 0.0;
  /// Raw: bound-based size of the (T, inf) contribution. Smoothed: bound on
  /// the Gaussian pieces beyond T.
  double tail_bound = 0.0;
  /// Raw only: the tail correction added to value (from the twisted second
  /// moment of zeta), and an estimate of what it leaves unexplained.
  double tail_correction = 0.0;
  double tail_residual = 0.0;
  double t_max = 0.0;
  std::size_t panels = 0;
  bool raw = false;

  /// quad_error + tail_residual (raw) or quad_error + tail_bound (smoothed).
  double total_error() const noexcept;
};

/// psi^2 (if smoothing) * M_a * conj(M_b) at 1/2 + it.
std::complex<double> spectral_product(const LadderPoint& a, const LadderPoint& b, double t,
                                      const std::optional<SmoothingParams>& smoothing);

/// Spectral inner product of f_a and f_b (or of their smoothed versions).
SpectralEstimate inner_spectral(const LadderPoint& a, const LadderPoint& b,
                                const std::optional<SmoothingParams>& smoothing,
                                const QuadratureConfig& quad);

/// Smallest T (to within 1%) with exp(-(T/W)^2) * max_{[0,2T]} K * factor * 2T
/// <= gaussian_tail_tol, where factor bounds (sqrt(th_a)+th_a)(sqrt(th_b)+th_b).
double gaussian_t_max(const SmoothingParams& params, double factor, const QuadratureConfig& quad);

/// Component split of spectral entries, kept for reporting.
struct SpectralComponents {
  /// sqrt(th_a th_b) int K w cos(t lambda): the lambda-frequency part.
  Eigen::MatrixXd i1;
  /// The remaining terms with sign flipped, so entry = i1 - i2.
  Eigen::MatrixXd i2;
  /// The two-term display sqrt(th_a th_b) (cos t lambda - cos t mu) integrated
  /// against the same kernel and weight.
  Eigen::MatrixXd displayed;
};

struct GramMatrix {
  IndexWindow window;
  GramKind kind;
  GramMethod method = GramMethod::Direct;
  QuadratureConfig quad;
  Eigen::MatrixXd entries;
  /// Per-entry error estimate (quadrature plus tail).
  Eigen::MatrixXd errors;
  /// Spectral integration range used for the non-x-space part (0 if none).
  double t_max = 0.0;
  std::optional<SpectralComponents> components;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries.rows()); }
  double at(LadderIndex a, LadderIndex b) const {
    return entries(static_cast<Eigen::Index>(window.position(a)),
                   static_cast<Eigen::Index>(window.position(b)));
  }
};

struct GramBuildOptions {
  /// Worker threads for entry evaluation; 0 picks hardware concurrency.
  unsigned threads = 1;
  /// Also fill GramMatrix::components for spectral builds.
  bool keep_components = false;
};

/// Throws DomainError for Direct with a smoothed kind; ConvergenceError (with
/// the offending index pair) when an entry fails.
GramMatrix build_gram(const IndexWindow& window, const GramKind& kind, GramMethod method,
                      const QuadratureConfig& quad, const GramBuildOptions& options = {});

/// Smallest eigenvalue (self-adjoint solver).
double min_eigenvalue(const GramMatrix& g);

/// Entries divided by sqrt(G_pp G_qq); `valid` is false (and the entry 0)
/// where either diagonal vanishes.
struct NormalizedGram {
  Eigen::MatrixXd entries;
  std::vector<std::vector<bool>> valid;
};

NormalizedGram normalize(const GramMatrix& g);

struct CrossValidationReport {
  IndexWindow window;
  double max_discrepancy = 0.0;
  LadderIndex worst_a;
  LadderIndex worst_b;
  /// Largest per-entry spectral error estimate.
  double max_spectral_error = 0.0;
  /// Max |displayed-form value - direct value| over pairs.
  double displayed_form_discrepancy = 0.0;
  double t_max = 0.0;
};

/// Raw/Direct against Raw/Spectral on the same window.
CrossValidationReport cross_validate(const IndexWindow& window, const QuadratureConfig& quad,
                                     const GramBuildOptions& options = {});

// Serialization (gram_io.cpp).

/// Header `j,k,j2,k2,value,err_estimate`, one line per unordered pair (p <= q).
std::string gram_to_csv(const GramMatrix& g);
/// As above with a trailing `normalized` column (1/0) and normalized values.
std::string normalized_gram_to_csv(const GramMatrix& g);
/// {window, kind, method, smoothing, quad, t_max, entries, errors, warnings}.
std::string gram_to_json(const GramMatrix& g);
/// Dense JSON of the normalized matrix with its validity mask.
std::string normalized_gram_to_json(const GramMatrix& g);
/// Inverse of gram_to_json; bit-exact on entries and errors.
GramMatrix gram_from_json(const std::string& text);

}  // namespace bnladder
