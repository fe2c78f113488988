#include "bnladder/gram.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "bnladder/error.hpp"
#include "bnladder/quadrature.hpp"
#include "bnladder/zeta.hpp"

namespace bnladder {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();

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

std::string pair_label(LadderIndex a, LadderIndex b) {
  std::ostringstream os;
  os << "(" << a.j << "," << a.k << ")-(" << b.j << "," << b.k << ")";
  return os.str();
}

// Runs fn(begin, end) over [0, count) split into contiguous blocks. Results
// are written by index, so the outcome does not depend on the split.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double kernel(double t) {
  const cplx z = zeta_half(t);
  return std::norm(z) / (0.25 + t * t);
}

struct Node {
  LadderIndex index;
  double theta = 0.0;
  double root = 0.0;  // sqrt(theta)
  double l = 0.0;     // log(1/theta)
};

Node make_node(const LadderPoint& p) {
  return {p.index, std::exp(p.log_theta), std::exp(0.5 * p.log_theta), -p.log_theta};
}

// sqrt(th_a)+th_a times the same for b: bounds |P_ab|.
double envelope_factor(const Node& a, const Node& b) noexcept {
  return (a.root + a.theta) * (b.root + b.theta);
}

double trig_poly(const Node& a, const Node& b, double ca, double sa, double cb, double sb) noexcept {
  return a.theta * b.theta - a.theta * b.root * cb - b.theta * a.root * ca +
         a.root * b.root * (ca * cb + sa * sb);
}

struct Weight {
  std::optional<SmoothingParams> smoothing;

  // psi^2 - eps^2 for smoothed integrals, 1 for raw ones.
  double operator()(double t) const noexcept {
    if (!smoothing) return 1.0;
    const double u = t / smoothing->W;
    const double g = std::exp(-u * u);
    return 2.0 * smoothing->epsilon * g + g * g;
  }
};

struct PairJob {
  std::size_t a;
  std::size_t b;
};

struct PairIntegral {
  double value = 0.0;  // (1/pi) int_0^T K w P
  double error = 0.0;
  double lambda_part = 0.0;  // (1/pi) int K w cos(t lambda)
  double mu_part = 0.0;      // (1/pi) int K w cos(t mu)
};

struct PanelGrid {
  double t_max = 0.0;
  std::size_t panels = 0;
  double width = 0.0;
};

PanelGrid make_grid(const std::vector<Node>& nodes, const std::vector<PairJob>& jobs, double t_max,
                    const QuadratureConfig& quad) {
  double omega = 0.0;
  for (const auto& job : jobs) {
    omega = std::max(omega, nodes[job.a].l + nodes[job.b].l);
  }
  // zeta itself oscillates at about log(t / 2 pi).
  omega += std::log(std::max(t_max, 2.0 * kPi) / (2.0 * kPi)) + 1.0;
  PanelGrid g;
  g.t_max = t_max;
  g.panels = static_cast<std::size_t>(std::ceil(t_max * omega / kPi));
  g.panels = std::max<std::size_t>(g.panels, 1);
  if (g.panels > quad.max_subdivisions) {
    std::ostringstream os;
    os << "spectral integration over [0, " << t_max << "] needs " << g.panels
       << " panels, limit is max_subdivisions = " << quad.max_subdivisions;
    throw ConvergenceError(os.str());
  }
  g.width = t_max / static_cast<double>(g.panels);
  return g;
}

// (1/pi) int_0^T K(t) w(t) P_ab(t) dt for every job, on a uniform panel grid
// sized to the fastest oscillation. K*w is tabulated once at all panel nodes;
// a panel whose Gauss-Kronrod error exceeds its share of the budget is
// re-integrated adaptively for that pair with fresh zeta evaluations.
std::vector<PairIntegral> integrate_pairs(const std::vector<Node>& nodes, const std::vector<PairJob>& jobs,
                                          double t_max, const Weight& weight, const QuadratureConfig& quad,
                                          unsigned threads, bool components) {
  std::vector<PairIntegral> out(jobs.size());
  if (jobs.empty()) return out;
  const PanelGrid grid = make_grid(nodes, jobs, t_max, quad);
  constexpr std::size_t kN = quad::kPanelNodes;

  auto panel_of = [&](std::size_t i) {
    return quad::Panel{grid.width * static_cast<double>(i), grid.width * static_cast<double>(i + 1)};
  };

  std::vector<double> kw(grid.panels * kN);
  parallel_for(grid.panels, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const quad::Panel p = panel_of(i);
      for (std::size_t m = 0; m < kN; ++m) {
        const double t = p.node(m);
        kw[i * kN + m] = kernel(t) * weight(t);
      }
    }
  });

  const double panel_budget = 0.1 * quad.abs_tol * kPi / static_cast<double>(grid.panels);
  const double half = 0.5 * grid.width;

  parallel_for(jobs.size(), threads, [&](std::size_t begin, std::size_t end) {
    const std::size_t n = nodes.size();
    std::vector<double> cs(n * kN);
    std::vector<double> sn(n * kN);
    std::vector<CompensatedSum> value(end - begin);
    std::vector<CompensatedSum> lam(end - begin);
    std::vector<CompensatedSum> mu(end - begin);
    std::vector<double> err(end - begin, 0.0);
    std::array<double, kN> f{};
    for (std::size_t i = 0; i < grid.panels; ++i) {
      const quad::Panel panel = panel_of(i);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t m = 0; m < kN; ++m) {
          const double arg = panel.node(m) * nodes[p].l;
          cs[p * kN + m] = std::cos(arg);
          sn[p * kN + m] = std::sin(arg);
        }
      }
      const double* kwp = &kw[i * kN];
      for (std::size_t jn = begin; jn < end; ++jn) {
        const Node& a = nodes[jobs[jn].a];
        const Node& b = nodes[jobs[jn].b];
        const double* ca = &cs[jobs[jn].a * kN];
        const double* sa = &sn[jobs[jn].a * kN];
        const double* cb = &cs[jobs[jn].b * kN];
        const double* sb = &sn[jobs[jn].b * kN];
        for (std::size_t m = 0; m < kN; ++m) {
          f[m] = kwp[m] * trig_poly(a, b, ca[m], sa[m], cb[m], sb[m]);
        }
        quad::PanelEstimate est = quad::estimate_panel(f, half);
        if (est.error > panel_budget) {
          auto integrand = [&](double t) {
            const double xa = t * a.l;
            const double xb = t * b.l;
            return kernel(t) * weight(t) *
                   trig_poly(a, b, std::cos(xa), std::sin(xa), std::cos(xb), std::sin(xb));
          };
          const auto refined = quad::integrate_adaptive(integrand, panel, panel_budget, 0.0, 4096);
          if (!refined.converged) {
            throw ConvergenceError("spectral panel [" + std::to_string(panel.a) + ", " +
                                   std::to_string(panel.b) + "] did not converge for pair " +
                                   pair_label(a.index, b.index));
          }
          est = {refined.value, refined.error};
        }
        value[jn - begin].add(est.value);
        err[jn - begin] += est.error;
        if (components) {
          double sl = 0.0;
          double sm = 0.0;
          for (std::size_t m = 0; m < kN; ++m) {
            const double w = quad::kKronrodWeights[m] * kwp[m];
            sl += w * (ca[m] * cb[m] + sa[m] * sb[m]);
            sm += w * (ca[m] * cb[m] - sa[m] * sb[m]);
          }
          lam[jn - begin].add(sl * half);
          mu[jn - begin].add(sm * half);
        }
      }
    }
    for (std::size_t jn = begin; jn < end; ++jn) {
      PairIntegral& r = out[jn];
      r.value = value[jn - begin].value() / kPi;
      r.error = err[jn - begin] / kPi + 4.0 * kEps * std::abs(r.value);
      r.lambda_part = lam[jn - begin].value() / kPi;
      r.mu_part = mu[jn - begin].value() / kPi;
    }
  });
  return out;
}

// Mean of |zeta(1/2+it)|^2 (h/k)^{it} for coprime h, k is
// (hk)^{-1/2} (log(t / (2 pi h k)) + 2 gamma). Integrated against t^{-2} over
// (T, inf) this gives the main part of the truncated raw tail. Each cosine
// term of P_ab is such a twist with log(hk) read off the exponents.
struct RawTail {
  double correction = 0.0;
  double bound = 0.0;
  double residual = 0.0;
};

RawTail raw_tail(const Node& a, const Node& b, double t) {
  const double base = std::log(t / (2.0 * kPi)) + 1.0 + 2.0 * kEulerGamma;
  auto term = [&](double coef, double log_hk) {
    return coef * std::exp(-0.5 * log_hk) * (base - log_hk) / t;
  };
  const int dj = std::abs(a.index.j - b.index.j);
  const int dk = std::abs(a.index.k - b.index.k);
  const double log_hk_ab = dj * kLog2 + dk * kLog3;
  RawTail out;
  out.correction = (term(a.theta * b.theta, 0.0) - term(a.theta * b.root, b.l) -
                    term(b.theta * a.root, a.l) + term(a.root * b.root, log_hk_ab)) / kPi;
  const double factor = envelope_factor(a, b);
  out.bound = factor * base / (kPi * t);
  out.residual = 2.0 * factor * std::log(t) / (kPi * t * std::sqrt(t));
  return out;
}

// Running maximum of K on [0, x], sampled at step 0.05 with a 10% margin.
class KernelMax {
 public:
  double upto(double x) {
    while (covered_ < x) {
      covered_ += kStep;
      max_ = std::max(max_, kernel(covered_));
    }
    return 1.1 * max_;
  }

 private:
  static constexpr double kStep = 0.05;
  double covered_ = 0.0;
  double max_ = kernel(0.0);
};

double gaussian_condition(double t, const SmoothingParams& params, double factor, KernelMax& km) {
  const double u = t / params.W;
  return std::exp(-u * u) * km.upto(2.0 * t) * factor * 2.0 * t;
}

double gaussian_tail_bound(double t, const SmoothingParams& params, double factor, double kmax) {
  const double u = t / params.W;
  return (1.0 + 2.0 * params.epsilon) * kmax * factor * params.W * params.W / (2.0 * t) *
         std::exp(-u * u) / kPi;
}

void check_zeta_range(double t_max, const char* what) {
  if (t_max > kZetaTCap) {
    std::ostringstream os;
    os << what << " = " << t_max << " exceeds the validated zeta range |t| <= " << kZetaTCap;
    throw DomainError(os.str());
  }
}

double direct_inner(const PeriodicInnerTable* table, const LadderPoint& a, const LadderPoint& b,
                    const QuadratureConfig& quad, double* error) {
  const auto qa = a.denominator();
  const auto qb = b.denominator();
  try {
    if (table && qa && qb) {
      const IntegralEstimate e = table->inner(*qa, *qb);
      *error = e.error_estimate;
      return e.value;
    }
    const IntegralEstimate e = inner_direct(a.theta_param(), b.theta_param(), quad);
    *error = e.error_estimate + e.tail_bound;
    return e.value;
  } catch (const ConvergenceError& ex) {
    throw ConvergenceError(std::string(ex.what()) + " [pair " + pair_label(a.index, b.index) + "]");
  } catch (const OverflowError& ex) {
    throw OverflowError(std::string(ex.what()) + " [pair " + pair_label(a.index, b.index) + "]");
  }
}

std::optional<std::uint64_t> window_period(const IndexWindow& w) {
  const auto q = theta_of({w.j_max, w.k_max}).denominator();
  if (q && *q <= kMaxExactPeriod) return q;
  return std::nullopt;
}

}  // namespace

const char* to_string(GramMethod m) noexcept {
  switch (m) {
    case GramMethod::Direct:
      return "direct";
    case GramMethod::Spectral:
      return "spectral";
    case GramMethod::Hybrid:
      return "hybrid";
  }
  return "direct";
}

GramMethod gram_method_from_string(const std::string& s) {
  if (s == "direct") return GramMethod::Direct;
  if (s == "spectral") return GramMethod::Spectral;
  if (s == "hybrid") return GramMethod::Hybrid;
  throw DomainError("unknown Gram method '" + s + "' (expected direct, spectral or hybrid)");
}

double SpectralEstimate::total_error() const noexcept {
  return quad_error + (raw ? tail_residual : tail_bound);
}

std::complex<double> spectral_product(const LadderPoint& a, const LadderPoint& b, double t,
                                      const std::optional<SmoothingParams>& smoothing) {
  if (a.log_theta == 0.0 || b.log_theta == 0.0) {
    return 0.0;
  }
  const cplx z = zeta_half(t);
  const cplx ma = mellin_closed_from_log(a.log_theta, t, z);
  const cplx mb = mellin_closed_from_log(b.log_theta, t, z);
  double w = 1.0;
  if (smoothing) {
    const double p = psi(t, *smoothing);
    w = p * p;
  }
  return w * ma * std::conj(mb);
}

double gaussian_t_max(const SmoothingParams& params, double factor, const QuadratureConfig& quad) {
  params.validate();
  quad.validate();
  KernelMax km;
  double hi = params.W;
  while (gaussian_condition(hi, params, factor, km) > quad.gaussian_tail_tol) {
    hi *= 2.0;
    check_zeta_range(2.0 * hi, "Gaussian truncation search point");
  }
  if (hi == params.W) return hi;
  double lo = 0.5 * hi;
  while (hi - lo > 0.01 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_condition(mid, params, factor, km) > quad.gaussian_tail_tol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

SpectralEstimate inner_spectral(const LadderPoint& a, const LadderPoint& b,
                                const std::optional<SmoothingParams>& smoothing,
                                const QuadratureConfig& quad) {
  quad.validate();
  SpectralEstimate out;
  if (a.log_theta == 0.0 || b.log_theta == 0.0) {
    return out;
  }
  const std::vector<Node> nodes{make_node(a), make_node(b)};
  const std::vector<PairJob> jobs{{0, 1}};
  if (!smoothing) {
    check_zeta_range(quad.t_max_raw, "t_max_raw");
    const PairIntegral r = integrate_pairs(nodes, jobs, quad.t_max_raw, Weight{}, quad, 1, false)[0];
    const RawTail tail = raw_tail(nodes[0], nodes[1], quad.t_max_raw);
    out.value = r.value + tail.correction;
    out.quad_error = r.error;
    out.tail_bound = tail.bound;
    out.tail_correction = tail.correction;
    out.tail_residual = tail.residual;
    out.t_max = quad.t_max_raw;
    out.raw = true;
    out.panels = make_grid(nodes, jobs, quad.t_max_raw, quad).panels;
    return out;
  }
  smoothing->validate();
  const double factor = envelope_factor(nodes[0], nodes[1]);
  const double t_max = gaussian_t_max(*smoothing, factor, quad);
  const PairIntegral r = integrate_pairs(nodes, jobs, t_max, Weight{smoothing}, quad, 1, false)[0];
  KernelMax km;
  out.value = r.value;
  out.quad_error = r.error;
  out.tail_bound = gaussian_tail_bound(t_max, *smoothing, factor, km.upto(2.0 * t_max));
  out.t_max = t_max;
  out.panels = make_grid(nodes, jobs, t_max, quad).panels;
  const double eps2 = smoothing->epsilon * smoothing->epsilon;
  if (eps2 > 0.0) {
    const IntegralEstimate d = inner_direct(a.theta_param(), b.theta_param(), quad);
    out.value += eps2 * d.value;
    out.quad_error += eps2 * (d.error_estimate + d.tail_bound);
  }
  return out;
}

GramMatrix build_gram(const IndexWindow& window, const GramKind& kind, GramMethod method,
                      const QuadratureConfig& quad, const GramBuildOptions& options) {
  window.validate();
  quad.validate();
  if (kind.smoothing) {
    kind.smoothing->validate();
  }
  if (method == GramMethod::Direct && !kind.is_raw()) {
    throw DomainError("method Direct is only valid for Raw Gram matrices");
  }

  GramMatrix g;
  g.window = window;
  g.kind = kind;
  g.method = method;
  g.quad = quad;
  const std::size_t n = window.size();
  const auto ni = static_cast<Eigen::Index>(n);
  g.entries = Eigen::MatrixXd::Zero(ni, ni);
  g.errors = Eigen::MatrixXd::Zero(ni, ni);

  const std::vector<LadderPoint> points = ladder_points(window);
  // (0,0) carries f_1 = 0: its row and column stay exactly zero.
  std::vector<PairJob> jobs;
  for (std::size_t p = 1; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      jobs.push_back({p, q});
    }
  }

  const bool spectral = method == GramMethod::Spectral || (method == GramMethod::Hybrid && !kind.is_raw());
  std::vector<double> value(jobs.size(), 0.0);
  std::vector<double> error(jobs.size(), 0.0);

  // x-space part: the whole entry (raw, non-spectral) or the eps^2 piece.
  const double eps2 = kind.smoothing ? kind.smoothing->epsilon * kind.smoothing->epsilon : 0.0;
  const double direct_scale = spectral ? eps2 : 1.0;
  if (direct_scale > 0.0 && !jobs.empty()) {
    std::optional<PeriodicInnerTable> table;
    if (const auto period = window_period(window)) {
      table.emplace(*period);
    }
    const PeriodicInnerTable* tp = table ? &*table : nullptr;
    parallel_for(jobs.size(), options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double e = 0.0;
        const double v = direct_inner(tp, points[jobs[i].a], points[jobs[i].b], quad, &e);
        value[i] = direct_scale * v;
        error[i] = direct_scale * e;
      }
    });
  }

  std::vector<PairIntegral> integrals;
  if (spectral && !jobs.empty()) {
    std::vector<Node> nodes;
    nodes.reserve(n);
    for (const auto& p : points) nodes.push_back(make_node(p));
    if (kind.is_raw()) {
      check_zeta_range(quad.t_max_raw, "t_max_raw");
      g.t_max = quad.t_max_raw;
      integrals = integrate_pairs(nodes, jobs, g.t_max, Weight{}, quad, options.threads, options.keep_components);
      double worst_residual = 0.0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const RawTail tail = raw_tail(nodes[jobs[i].a], nodes[jobs[i].b], g.t_max);
        value[i] += integrals[i].value + tail.correction;
        error[i] += integrals[i].error + tail.residual;
        worst_residual = std::max(worst_residual, tail.residual);
      }
      if (worst_residual > quad.abs_tol) {
        std::ostringstream os;
        os << "raw spectral tail residual estimate " << worst_residual << " exceeds abs_tol " << quad.abs_tol
           << " at t_max_raw = " << g.t_max;
        g.warnings.push_back(os.str());
      }
    } else {
      double factor = 0.0;
      for (const auto& job : jobs) {
        factor = std::max(factor, envelope_factor(nodes[job.a], nodes[job.b]));
      }
      g.t_max = gaussian_t_max(*kind.smoothing, factor, quad);
      integrals = integrate_pairs(nodes, jobs, g.t_max, Weight{kind.smoothing}, quad, options.threads,
                             options.keep_components);
      KernelMax km;
      const double kmax = km.upto(2.0 * g.t_max);
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        value[i] += integrals[i].value;
        error[i] += integrals[i].error + gaussian_tail_bound(g.t_max, *kind.smoothing,
                                                        envelope_factor(nodes[jobs[i].a], nodes[jobs[i].b]), kmax);
      }
    }
  }
  if (kind.smoothing && !kind.smoothing->invertible()) {
    g.warnings.push_back("epsilon = 0: the smoothing multiplier is not bounded below");
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto p = static_cast<Eigen::Index>(jobs[i].a);
    const auto q = static_cast<Eigen::Index>(jobs[i].b);
    g.entries(p, q) = value[i];
    g.entries(q, p) = value[i];
    g.errors(p, q) = error[i];
    g.errors(q, p) = error[i];
  }

  if (options.keep_components && spectral) {
    SpectralComponents c;
    c.i1 = Eigen::MatrixXd::Zero(ni, ni);
    c.i2 = Eigen::MatrixXd::Zero(ni, ni);
    c.displayed = Eigen::MatrixXd::Zero(ni, ni);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto p = static_cast<Eigen::Index>(jobs[i].a);
      const auto q = static_cast<Eigen::Index>(jobs[i].b);
      const double rr = std::exp(0.5 * (points[jobs[i].a].log_theta + points[jobs[i].b].log_theta));
      const double i1 = rr * integrals[i].lambda_part;
      const double i2 = i1 - g.entries(p, q);
      const double disp = rr * (integrals[i].lambda_part - integrals[i].mu_part);
      c.i1(p, q) = c.i1(q, p) = i1;
      c.i2(p, q) = c.i2(q, p) = i2;
      c.displayed(p, q) = c.displayed(q, p) = disp;
    }
    g.components = std::move(c);
  }
  return g;
}

double min_eigenvalue(const GramMatrix& g) {
  if (g.entries.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

NormalizedGram normalize(const GramMatrix& g) {
  const Eigen::Index n = g.entries.rows();
  NormalizedGram out;
  out.entries = Eigen::MatrixXd::Zero(n, n);
  out.valid.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  Eigen::VectorXd root(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    root(p) = g.entries(p, p) > 0.0 ? std::sqrt(g.entries(p, p)) : 0.0;
  }
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      if (root(p) > 0.0 && root(q) > 0.0) {
        out.entries(p, q) = p == q ? 1.0 : g.entries(p, q) / (root(p) * root(q));
        out.valid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = true;
      }
    }
  }
  return out;
}

CrossValidationReport cross_validate(const IndexWindow& window, const QuadratureConfig& quad,
                                     const GramBuildOptions& options) {
  GramBuildOptions opts = options;
  opts.keep_components = true;
  const GramMatrix direct = build_gram(window, GramKind::raw(), GramMethod::Direct, quad, opts);
  const GramMatrix spectral = build_gram(window, GramKind::raw(), GramMethod::Spectral, quad, opts);
  CrossValidationReport r;
  r.window = window;
  r.t_max = spectral.t_max;
  const Eigen::Index n = direct.entries.rows();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p; q < n; ++q) {
      const double d = std::abs(direct.entries(p, q) - spectral.entries(p, q));
      if (d > r.max_discrepancy) {
        r.max_discrepancy = d;
        r.worst_a = window.at(static_cast<std::size_t>(p));
        r.worst_b = window.at(static_cast<std::size_t>(q));
      }
      r.max_spectral_error = std::max(r.max_spectral_error, spectral.errors(p, q));
      if (spectral.components) {
        r.displayed_form_discrepancy = std::max(
            r.displayed_form_discrepancy, std::abs(spectral.components->displayed(p, q) - direct.entries(p, q)));
      }
    }
  }
  return r;
}

}  // namespace bnladder
