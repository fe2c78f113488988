#include "bnladder/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bnladder/error.hpp"

namespace bnladder {

namespace {

void check_radius(int B) {
  if (B < 1) {
    throw DomainError("truncation radius B must be a positive integer, got " + std::to_string(B));
  }
}

double entry(const GramMatrix& g, std::size_t p, std::size_t q) {
  return g.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
}

// OLS slope of y on x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw DegenerateFitError("fit abscissa has zero variance");
  }
  return sxy / sxx;
}

}  // namespace

std::vector<ShellStats> shell_stats(const GramMatrix& g, const ShellOptions& options) {
  const IndexWindow& w = g.window;
  const std::size_t n = w.size();
  const bool exclude = options.exclude_zero_row && n > 1;
  std::vector<ShellStats> acc(static_cast<std::size_t>(w.diameter()) + 1);
  for (std::size_t r = 0; r < acc.size(); ++r) acc[r].r = static_cast<int>(r);

  auto add = [&](std::size_t p, std::size_t q) {
    if (exclude && (p == 0 || q == 0)) return;
    const int d = distance(w.at(p), w.at(q));
    const double v = std::abs(entry(g, p, q));
    ShellStats& s = acc[static_cast<std::size_t>(d)];
    ++s.count;
    s.sum_abs += v;
    s.max_abs = std::max(s.max_abs, v);
  };

  if (options.center) {
    if (!w.contains(*options.center)) {
      throw DomainError("shell_stats: center lies outside the window");
    }
    const std::size_t p = w.position(*options.center);
    for (std::size_t q = 0; q < n; ++q) add(p, q);
  } else {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) add(p, q);
    }
  }

  std::vector<ShellStats> out;
  for (ShellStats& s : acc) {
    if (s.count == 0) continue;
    s.mean_abs = s.sum_abs / static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

Envelopes envelopes(const GramMatrix& g) {
  const IndexWindow& w = g.window;
  const std::size_t n = w.size();
  Envelopes e;
  e.shell.assign(static_cast<std::size_t>(w.diameter()) + 1, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      const auto d = static_cast<std::size_t>(distance(w.at(p), w.at(q)));
      e.shell[d] = std::max(e.shell[d], std::abs(entry(g, p, q)));
    }
  }
  e.tail = e.shell;
  for (std::size_t i = e.tail.size(); i-- > 1;) {
    e.tail[i - 1] = std::max(e.tail[i - 1], e.tail[i]);
  }
  return e;
}

FitRange default_fit_range(const IndexWindow& window) noexcept {
  return {1, std::max(1, window.diameter() / 2)};
}

double fit_exponent(const std::vector<ShellStats>& shells, FitRange range, double c) {
  if (!(c > 0.0)) {
    throw DomainError("fit_exponent: c must be positive");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const ShellStats& s : shells) {
    if (s.r < range.r_lo || s.r > range.r_hi || !(s.mean_abs > 0.0)) continue;
    x.push_back(std::log1p(c * s.r));
    y.push_back(std::log(s.mean_abs));
  }
  if (x.size() < 3) {
    std::ostringstream os;
    os << "fit_exponent: " << x.size() << " usable shells in r = [" << range.r_lo << ", " << range.r_hi
       << "], need at least 3";
    throw DegenerateFitError(os.str());
  }
  return -ols_slope(x, y);
}

double tail_sum(const GramMatrix& g, LadderIndex center, int B) {
  check_radius(B);
  if (!g.window.contains(center)) {
    throw DomainError("tail_sum: center lies outside the window");
  }
  const std::size_t p = g.window.position(center);
  double sum = 0.0;
  for (std::size_t q = 0; q < g.window.size(); ++q) {
    if (distance(center, g.window.at(q)) >= B) {
      sum += std::abs(entry(g, p, q));
    }
  }
  return sum;
}

double schur_truncation_bound(const GramMatrix& g, int B) {
  check_radius(B);
  double best = 0.0;
  for (std::size_t p = 0; p < g.window.size(); ++p) {
    best = std::max(best, tail_sum(g, g.window.at(p), B));
  }
  return best;
}

Eigen::MatrixXd truncation_residual(const GramMatrix& g, int B) {
  check_radius(B);
  const std::size_t n = g.window.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.entries.rows(), g.entries.cols());
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (distance(g.window.at(p), g.window.at(q)) >= B) {
        r(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = entry(g, p, q);
      }
    }
  }
  return r;
}

OpnormEstimate power_iteration_norm(const Eigen::MatrixXd& m, std::size_t iters) {
  if (iters == 0) {
    throw DomainError("power iteration needs at least one step");
  }
  OpnormEstimate out;
  const Eigen::Index n = m.rows();
  const double scale = m.cwiseAbs().maxCoeff();
  if (n == 0 || scale == 0.0) {
    return out;
  }
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  const double rayleigh = v.dot(m * v);
  if (std::abs(rayleigh) <= 1e-12 * scale) {
    // Row 0 may be identically zero here, so take the heaviest row instead.
    Eigen::Index heaviest = 0;
    m.rowwise().norm().maxCoeff(&heaviest);
    v = Eigen::VectorXd::Unit(n, heaviest);
    out.fallback_start = true;
  }
  double prev = 0.0;
  double est = 0.0;
  out.converged = false;
  for (std::size_t k = 0; k < iters; ++k) {
    const Eigen::VectorXd w = m * v;
    est = w.norm();
    out.iterations = k + 1;
    if (est == 0.0) {
      out.converged = true;
      break;
    }
    v = w / est;
    if (k > 0 && std::abs(est - prev) <= 1e-14 * est) {
      out.converged = true;
      break;
    }
    prev = est;
  }
  if (!out.converged) {
    out.converged = std::abs(est - prev) <= 1e-8 * est;
  }
  out.value = est;
  return out;
}

OpnormEstimate opnorm_residual(const GramMatrix& g, int B, std::size_t iters) {
  return power_iteration_norm(truncation_residual(g, B), iters);
}

DecayReport decay_report(const GramMatrix& g, std::optional<FitRange> fit_range, bool exclude_zero_row) {
  DecayReport r;
  r.window = g.window;
  r.kind = g.kind;
  r.method = g.method;
  r.exclude_zero_row = exclude_zero_row;
  r.shells = shell_stats(g, {std::nullopt, exclude_zero_row});
  const Envelopes e = envelopes(g);
  r.envelope_shell = e.shell;
  r.envelope_tail = e.tail;
  r.fit_range = fit_range.value_or(default_fit_range(g.window));
  if (r.fit_range.r_lo < 0 || r.fit_range.r_hi < r.fit_range.r_lo) {
    throw DomainError("fit range must satisfy 0 <= r_lo <= r_hi");
  }
  r.fitted_exponent = fit_exponent(r.shells, r.fit_range, r.c);
  r.lambda_gap_report = displacement_gaps(g.window);
  for (std::size_t n = 1; n < e.shell.size(); ++n) {
    if (e.shell[n] > e.shell[n - 1]) {
      r.shell_sup_monotone = false;
      r.shell_sup_increases.push_back(static_cast<int>(n));
    }
  }
  if (r.fit_range.r_hi > g.window.diameter() / 2) {
    r.warnings.push_back("fit range extends past half the window diameter; outer shells are depleted by the boundary");
  }
  r.warnings.push_back("tail quantities are limited to the finite window");
  for (const auto& w : g.warnings) r.warnings.push_back("gram: " + w);
  return r;
}

TruncationSummary truncation_summary(const GramMatrix& g, const std::vector<int>& b_list, std::size_t iters) {
  TruncationSummary s;
  s.window = g.window;
  s.kind = g.kind;
  for (const int B : b_list) check_radius(B);
  std::vector<double> x;
  std::vector<double> y;
  for (const int B : b_list) {
    TruncationReport t;
    t.B = B;
    t.tail_sums.reserve(g.window.size());
    for (std::size_t p = 0; p < g.window.size(); ++p) {
      t.tail_sums.push_back(tail_sum(g, g.window.at(p), B));
    }
    t.schur_bound = t.tail_sums.empty() ? 0.0 : *std::max_element(t.tail_sums.begin(), t.tail_sums.end());
    const OpnormEstimate op = opnorm_residual(g, B, iters);
    t.empirical_opnorm = op.value;
    t.opnorm_converged = op.converged;
    if (!op.converged) {
      s.warnings.push_back("power iteration did not converge to 1e-8 for B = " + std::to_string(B));
    }
    if (t.schur_bound > 0.0) {
      x.push_back(std::log1p(static_cast<double>(B)));
      y.push_back(std::log(t.schur_bound));
    }
    s.reports.push_back(std::move(t));
  }
  if (x.size() >= 2) {
    try {
      s.fit_exponent_tail = -ols_slope(x, y);
    } catch (const DegenerateFitError&) {
      s.fit_exponent_tail.reset();
    }
  }
  s.warnings.push_back("tail sums are limited to the finite window");
  return s;
}

}  // namespace bnladder
