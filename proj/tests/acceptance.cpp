// Acceptance suite: one PASS/FAIL line per criterion.
//   bnladder_acceptance            run all ten
//   bnladder_acceptance --only N   run criterion N
// Exit status is 0 when every criterion run passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bnladder/decay.hpp"
#include "bnladder/fractional.hpp"
#include "bnladder/gram.hpp"
#include "bnladder/ladder.hpp"
#include "bnladder/mellin.hpp"
#include "bnladder/zeta.hpp"
#include "cli.hpp"
#include "selfcheck.hpp"

using namespace bnladder;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool gram_structure_ok(const GramMatrix& g, std::string& why) {
  const Eigen::Index n = g.entries.rows();
  for (Eigen::Index q = 0; q < n; ++q) {
    if (g.entries(0, q) != 0.0 || g.entries(q, 0) != 0.0) {
      why = "nonzero (0,0) row";
      return false;
    }
  }
  if ((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    why = "asymmetric";
    return false;
  }
  const double lmin = min_eigenvalue(g);
  if (lmin < -static_cast<double>(n) * 1e-8) {
    why = "min eigenvalue " + fmt(lmin);
    return false;
  }
  return true;
}

Outcome mellin_closed_form() {
  const auto t0 = Clock::now();
  const QuadratureConfig quad;
  double worst = 0.0;
  for (const std::uint64_t q : {2, 3, 6, 12}) {
    for (const double t : {0.0, 1.0, 5.0, 20.0}) {
      const ThetaParam th = ThetaParam::reciprocal(q);
      const auto c = mellin_closed(th, t);
      const auto d = mellin_direct(th, t, quad).value;
      worst = std::max(worst, std::abs(c - d) / std::max(1.0, std::abs(c)));
    }
  }
  const double s = seconds_since(t0);
  return {worst < 1e-6 && s < 10.0, "max relative gap " + fmt(worst) + ", " + fmt(s) + " s"};
}

Outcome parseval_consistency() {
  const auto t0 = Clock::now();
  const auto r = cross_validate({3, 3}, QuadratureConfig{});
  const double s = seconds_since(t0);
  return {r.max_discrepancy < 1e-4 && s < 60.0,
          "max |direct - spectral| " + fmt(r.max_discrepancy) + " (spectral error estimate " +
              fmt(r.max_spectral_error) + "), " + fmt(s) + " s"};
}

Outcome norm_bounds() {
  const QuadratureConfig quad;
  const IndexWindow w{6, 6};
  double max_norm = 0.0;
  std::size_t sampled = 0;
  for (const auto& p : ladder_points(w)) {
    max_norm = std::max(max_norm, l2_norm(p.theta_param(), quad));
    ++sampled;
  }
  for (std::uint64_t q = 1; q <= 64; ++q) {
    max_norm = std::max(max_norm, l2_norm(ThetaParam::reciprocal(q), quad));
    ++sampled;
  }
  const QuadratureConfig loose = QuadratureConfig::with_tolerance(1e-4);
  for (const double theta : {0.95, 0.7, 0.41, 0.29, 0.13}) {
    max_norm = std::max(max_norm, l2_norm(ThetaParam(theta), loose));
    ++sampled;
  }
  const auto raw = build_gram(w, GramKind::raw(), GramMethod::Direct, quad);
  const auto sm = build_gram(w, GramKind::smoothed({5.0, 1e-6}), GramMethod::Spectral, quad);
  const double max_entry = std::max(raw.entries.cwiseAbs().maxCoeff(), sm.entries.cwiseAbs().maxCoeff());
  return {max_norm <= 2.0 + 1e-8 && max_entry <= 4.0 + 1e-6,
          std::to_string(sampled) + " norms, max " + fmt(max_norm) + "; max |entry| " + fmt(max_entry)};
}

Outcome structural_identities() {
  const QuadratureConfig quad;
  std::vector<GramMatrix> grams;
  grams.push_back(build_gram({0, 0}, GramKind::raw(), GramMethod::Direct, quad));
  grams.push_back(build_gram({6, 6}, GramKind::raw(), GramMethod::Direct, quad));
  grams.push_back(build_gram({8, 8}, GramKind::raw(), GramMethod::Direct, quad));
  grams.push_back(build_gram({3, 3}, GramKind::raw(), GramMethod::Spectral, quad));
  grams.push_back(build_gram({6, 6}, GramKind::smoothed({5.0, 1e-6}), GramMethod::Spectral, quad));
  grams.push_back(build_gram({4, 4}, GramKind::smoothed({2.0, 0.0}), GramMethod::Hybrid, quad));
  for (const auto& g : grams) {
    std::string why;
    if (!gram_structure_ok(g, why)) {
      return {false, std::to_string(g.window.j_max) + "x" + std::to_string(g.window.k_max) + " " +
                         to_string(g.method) + ": " + why};
    }
  }
  return {true, std::to_string(grams.size()) + " Gram matrices: zero row, exact symmetry, PSD"};
}

Outcome zeta_oracle() {
  const auto t0 = Clock::now();
  const auto rep = zeta_selfcheck();
  const double z = std::abs(zeta_half(14.134725141734695));
  const double s = seconds_since(t0);
  return {rep.passed && z < 1e-8 && s < 1.0,
          "max deviation " + fmt(rep.max_deviation) + " over " + std::to_string(rep.rows.size()) +
              " points, |zeta(first zero)| " + fmt(z) + ", " + fmt(s) + " s"};
}

Outcome envelope_mechanics() {
  const auto g = build_gram({6, 6}, GramKind::smoothed({5.0, 1e-6}), GramMethod::Spectral, QuadratureConfig{});
  const Envelopes e = envelopes(g);
  for (std::size_t n = 1; n < e.tail.size(); ++n) {
    if (!(e.tail[n] <= e.tail[n - 1])) return {false, "envelope_tail rises at n = " + std::to_string(n)};
  }
  for (std::size_t p = 0; p < g.size(); ++p) {
    double prev = tail_sum(g, g.window.at(p), 1);
    for (int b = 2; b <= g.window.diameter() + 1; ++b) {
      const double v = tail_sum(g, g.window.at(p), b);
      if (!(v <= prev)) return {false, "tail_sum rises at row " + std::to_string(p) + ", B = " + std::to_string(b)};
      prev = v;
    }
  }
  std::ostringstream os;
  for (int b = 1; b <= 4; ++b) {
    const double bound = schur_truncation_bound(g, b);
    const auto norm = opnorm_residual(g, b);
    os << (b > 1 ? "; " : "") << "B=" << b << " " << fmt(bound) << " >= " << fmt(norm.value);
    if (!(bound >= norm.value) || !norm.converged) return {false, os.str()};
  }
  return {true, os.str()};
}

Outcome planted_exponents() {
  double worst = 0.0;
  for (const double m : {1.0, 2.0, 3.0, 5.0}) {
    std::vector<ShellStats> shells;
    for (int r = 1; r <= 7; ++r) {
      const double v = std::pow(1.0 + kLog2 * r, -m);
      shells.push_back({r, 1, v, v, v});
    }
    worst = std::max(worst, std::abs(fit_exponent(shells, {1, 7}) - m));
  }
  return {worst < 1e-10, "max |m_hat - m| " + fmt(worst)};
}

Outcome decay_steepening() {
  const auto t0 = Clock::now();
  const QuadratureConfig quad;
  const IndexWindow w{8, 8};
  const FitRange range{1, 7};
  const auto raw = build_gram(w, GramKind::raw(), GramMethod::Direct, quad);
  const auto sm = build_gram(w, GramKind::smoothed({5.0, 1e-6}), GramMethod::Spectral, quad);
  const double m_raw = decay_report(raw, range).fitted_exponent;
  const double m_sm = decay_report(sm, range).fitted_exponent;
  const double s = seconds_since(t0);
  return {m_sm > m_raw && s < 900.0,
          "m_hat smoothed " + fmt(m_sm) + " vs raw " + fmt(m_raw) + ", " + fmt(s) + " s"};
}

Outcome shell_counts() {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (int n = 0; n <= 12; ++n) {
    for (int m = 0; m <= 12; ++m) {
      const IndexWindow w{n, m};
      for (std::size_t p = 0; p < w.size(); ++p) {
        for (int r = 1; r <= w.diameter(); ++r) {
          const auto s = shell(w.at(p), r, w);
          ++checked;
          if (s.size() > static_cast<std::size_t>(4 * r)) {
            return {false, "window " + std::to_string(n) + "x" + std::to_string(m) + ", r = " + std::to_string(r)};
          }
        }
      }
    }
  }
  const double s = seconds_since(t0);
  return {s < 5.0, std::to_string(checked) + " (window, center, r) triples, " + fmt(s) + " s"};
}

Outcome negative_control() {
  const std::size_t n = cli::oracle_constant_count();
  std::size_t caught = 0;
  std::string missed;
  for (std::size_t i = 0; i < n; ++i) {
    cli::SelfcheckOptions o;
    o.perturb_oracle = i;
    o.skip_cross_validation = true;
    if (!cli::run_selfcheck(o).passed()) {
      ++caught;
    } else if (missed.empty()) {
      missed = " (first missed index " + std::to_string(i) + ")";
    }
  }
  // The full command, cross-validation included, must report failure too.
  std::ostringstream out, err;
  const char* argv[] = {"bnladder", "selfcheck", "--perturb-oracle", "0"};
  const int code = cli::run(4, argv, out, err);
  return {caught == n && code == cli::kSelfcheckFailed,
          std::to_string(caught) + "/" + std::to_string(n) + " perturbations caught" + missed +
              "; selfcheck exit code " + std::to_string(code)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"mellin closed form vs direct", mellin_closed_form},
      {"Parseval consistency 3x3", parseval_consistency},
      {"norm and entry bounds 6x6", norm_bounds},
      {"structural identities", structural_identities},
      {"zeta oracle", zeta_oracle},
      {"envelope mechanics 6x6 smoothed", envelope_mechanics},
      {"planted exponent recovery", planted_exponents},
      {"decay steepening 8x8", decay_steepening},
      {"shell counts up to 12x12", shell_counts},
      {"negative control", negative_control},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: bnladder_acceptance [--only N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be 1.." << criteria.size() << "\n";
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].name
              << "): " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
