#pragma once

// 7/15-point Gauss-Kronrod panels with QUADPACK-style error estimates, plus
// an adaptive bisection driver built on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace bnladder::quad {

inline constexpr std::size_t kPanelNodes = 15;

/// Kronrod abscissae on [-1, 1], ascending. Odd positions carry the 7-point Gauss rule.
inline constexpr std::array<double, kPanelNodes> kNodes{
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr std::array<double, kPanelNodes> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr std::array<double, kPanelNodes> kGaussWeights{
    0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082, 0.0};

struct Panel {
  double a = 0.0;
  double b = 0.0;

  double center() const noexcept { return 0.5 * (a + b); }
  double half() const noexcept { return 0.5 * (b - a); }
  double node(std::size_t i) const noexcept { return center() + half() * kNodes[i]; }
};

struct PanelEstimate {
  double value = 0.0;  ///< Kronrod result
  double error = 0.0;  ///< QUADPACK error estimate
};

/// Estimate from integrand values at the 15 panel nodes.
inline PanelEstimate estimate_panel(std::span<const double, kPanelNodes> f, double half) noexcept {
  double resk = 0.0;
  double resg = 0.0;
  double resabs = 0.0;
  for (std::size_t i = 0; i < kPanelNodes; ++i) {
    resk += kKronrodWeights[i] * f[i];
    resg += kGaussWeights[i] * f[i];
    resabs += kKronrodWeights[i] * std::abs(f[i]);
  }
  const double mean = 0.5 * resk;
  double resasc = 0.0;
  for (std::size_t i = 0; i < kPanelNodes; ++i) {
    resasc += kKronrodWeights[i] * std::abs(f[i] - mean);
  }
  const double h = std::abs(half);
  resk *= half;
  resabs *= h;
  resasc *= h;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {resk, err};
}

template <class F>
PanelEstimate integrate_panel(F&& f, const Panel& p) {
  std::array<double, kPanelNodes> v{};
  for (std::size_t i = 0; i < kPanelNodes; ++i) {
    v[i] = f(p.node(i));
  }
  return estimate_panel(v, p.half());
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

/// Global adaptive bisection: repeatedly splits the panel with the largest
/// error until the total error is below max(abs_tol, rel_tol * |value|) or the
/// panel budget is exhausted (converged == false).
template <class F>
AdaptiveResult integrate_adaptive(F&& f, const Panel& whole, double abs_tol, double rel_tol,
                                  std::size_t max_panels) {
  struct Item {
    Panel panel;
    PanelEstimate est;
    bool operator<(const Item& o) const noexcept { return est.error < o.est.error; }
  };
  std::priority_queue<Item> heap;
  Item first{whole, integrate_panel(f, whole)};
  double value = first.est.value;
  double error = first.est.error;
  heap.push(first);
  std::size_t panels = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (panels + 1 > max_panels) {
      return {value, error, panels, false};
    }
    const Item worst = heap.top();
    heap.pop();
    const double mid = worst.panel.center();
    Item left{{worst.panel.a, mid}, integrate_panel(f, Panel{worst.panel.a, mid})};
    Item right{{mid, worst.panel.b}, integrate_panel(f, Panel{mid, worst.panel.b})};
    value += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed drift from the incremental updates.
  double v = 0.0;
  double e = 0.0;
  while (!heap.empty()) {
    v += heap.top().est.value;
    e += heap.top().est.error;
    heap.pop();
  }
  return {v, e, panels, true};
}

}  // namespace bnladder::quad
