#include "selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bnladder/decay.hpp"
#include "bnladder/fractional.hpp"
#include "bnladder/gram.hpp"
#include "bnladder/ladder.hpp"
#include "bnladder/mellin.hpp"
#include "bnladder/zeta.hpp"

namespace bnladder::cli {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::vector<ZetaOraclePoint> oracle_grid(const SelfcheckOptions& o) {
  const auto base = zeta_oracle_grid();
  std::vector<ZetaOraclePoint> grid(base.begin(), base.end());
  if (o.perturb_oracle) {
    const std::size_t i = *o.perturb_oracle;
    if (i >= oracle_constant_count()) {
      throw std::out_of_range("oracle constant index out of range");
    }
    ZetaOraclePoint& p = grid[i / 3];
    double* field = i % 3 == 0 ? &p.t : (i % 3 == 1 ? &p.re : &p.im);
    *field += o.perturb_amount;
  }
  return grid;
}

CheckGroup zeta_group(const std::vector<ZetaOraclePoint>& grid) {
  CheckGroup g{"zeta_oracle", {}};
  const ZetaSelfcheckReport rep = zeta_selfcheck(grid);
  g.checks.push_back({"grid_within_1e-9", rep.passed, "max deviation " + num(rep.max_deviation)});
  // The grid carries the first nontrivial zero; its stored ordinate must hit it.
  const auto zero = std::min_element(grid.begin(), grid.end(), [](const auto& a, const auto& b) {
    return std::hypot(a.re, a.im) < std::hypot(b.re, b.im);
  });
  const double z = std::abs(zeta_half(zero->t));
  g.checks.push_back({"first_zero_below_1e-8", z < 1e-8, "|zeta| = " + num(z) + " at t = " + num(zero->t)});
  return g;
}

CheckGroup mellin_group() {
  CheckGroup g{"mellin_closed_vs_direct", {}};
  const QuadratureConfig quad;
  double worst = 0.0;
  for (const std::uint64_t q : {2, 3, 6, 12}) {
    const ThetaParam th = ThetaParam::reciprocal(q);
    for (const double t : {0.0, 1.0, 5.0, 20.0}) {
      const auto closed = mellin_closed(th, t);
      const auto direct = mellin_direct(th, t, quad).value;
      worst = std::max(worst, std::abs(closed - direct) / std::max(1.0, std::abs(closed)));
    }
  }
  g.checks.push_back({"relative_gap_below_1e-6", worst < 1e-6, "max relative gap " + num(worst)});
  return g;
}

CheckGroup cross_validation_group() {
  CheckGroup g{"gram_cross_validation", {}};
  const CrossValidationReport r = cross_validate({3, 3}, QuadratureConfig{});
  g.checks.push_back({"raw_direct_vs_spectral_3x3", r.max_discrepancy < 1e-4,
                      "max discrepancy " + num(r.max_discrepancy)});
  const CrossValidationReport r0 = cross_validate({0, 0}, QuadratureConfig{});
  g.checks.push_back({"window_0x0_zero", r0.max_discrepancy == 0.0, ""});
  return g;
}

CheckGroup identity_group(const std::vector<ZetaOraclePoint>& grid) {
  CheckGroup g{"identities", {}};
  auto check = [&](std::string name, bool ok, std::string detail = "") {
    g.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const QuadratureConfig quad;

  check("frac_examples", frac(2.5) == 0.5 && frac(3.0) == 0.0 && frac(-0.25) == 0.75);
  check("f_1_vanishes", eval_f(ThetaParam(1.0), 0.7) == 0.0);
  check("f_half_at_0.4", std::abs(eval_f(ThetaParam(0.5), 0.4)) < 1e-15);
  check("f_half_at_0.3", std::abs(eval_f(ThetaParam(0.5), 0.3) - 0.5) < 1e-12);
  {
    const auto bp = breakpoints(ThetaParam(1.0), 0.3);
    check("breakpoints_theta_1", bp.size() == 3 && std::abs(bp[0] - 1.0 / 3.0) < 1e-15 && bp[1] == 0.5 && bp[2] == 1.0);
  }
  {
    const auto pts = ladder_points({1, 1});
    std::vector<double> th;
    for (const auto& p : pts) th.push_back(p.theta);
    std::sort(th.begin(), th.end());
    check("ladder_1x1", th.size() == 4 && std::abs(th[0] - 1.0 / 6.0) < 1e-16 && std::abs(th[1] - 1.0 / 3.0) < 1e-16 &&
                            th[2] == 0.5 && th[3] == 1.0);
    check("ladder_3x2_injective", check_injectivity({3, 2}).injective);
  }
  {
    bool ok = true;
    for (int n = 0; n <= 12 && ok; ++n) {
      const IndexWindow w{n, n};
      for (std::size_t p = 0; p < w.size() && ok; ++p) {
        std::size_t tiled = 0;
        for (int r = 0; r <= w.diameter(); ++r) {
          const auto s = shell(w.at(p), r, w);
          tiled += s.size();
          if (r > 0 && s.size() > static_cast<std::size_t>(4 * r)) ok = false;
        }
        if (tiled != w.size()) ok = false;
      }
    }
    check("shell_counts_at_most_4r", ok);
  }
  {
    const GramMatrix gm = build_gram({2, 2}, GramKind::raw(), GramMethod::Direct, quad);
    bool zero_row = true;
    for (Eigen::Index q = 0; q < gm.entries.cols(); ++q) {
      zero_row = zero_row && gm.entries(0, q) == 0.0 && gm.entries(q, 0) == 0.0;
    }
    check("gram_zero_row", zero_row);
    check("gram_symmetric", (gm.entries - gm.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const std::string csv = gram_to_csv(gm);
    check("gram_pair_count", std::count(csv.begin(), csv.end(), '\n') == 46, "header plus 45 pairs");
    const NormalizedGram ng = normalize(gm);
    bool diag = true;
    for (Eigen::Index p = 1; p < ng.entries.rows(); ++p) diag = diag && ng.entries(p, p) == 1.0;
    check("normalized_diagonal_one", diag);
    check("gram_psd", min_eigenvalue(gm) >= -static_cast<double>(gm.size()) * 1e-8);
  }
  {
    const LadderPoint one = theta_of({0, 0});
    const LadderPoint half = theta_of({1, 0});
    check("spectral_product_theta_1", spectral_product(one, half, 3.0, std::nullopt) == std::complex<double>(0.0));
    const auto zero_pt = std::find_if(grid.begin(), grid.end(), [](const auto& p) { return p.t == 0.0; });
    const double zeta_half_0 = zero_pt != grid.end() ? zero_pt->re : std::nan("");
    const double expected = std::pow(2.0 * zeta_half_0 * (0.5 - std::sqrt(0.5)), 2);
    const double got = spectral_product(half, half, 0.0, SmoothingParams{5.0, 0.0}).real();
    check("spectral_product_oracle", std::abs(got - expected) < 1e-12 * std::abs(expected),
          "computed " + num(got) + ", oracle " + num(expected));
    check("mellin_theta_1_zero", std::abs(mellin_closed(ThetaParam(1.0), 7.0)) == 0.0);
  }
  {
    GramMatrix syn;
    syn.window = {1, 0};
    syn.entries = Eigen::MatrixXd::Zero(2, 2);
    syn.entries(0, 0) = 3.0;
    syn.entries(1, 1) = 1.0;
    const double n3 = power_iteration_norm(syn.entries).value;
    check("opnorm_diag_3_1", std::abs(n3 - 3.0) < 1e-12, num(n3));
    check("opnorm_zero", power_iteration_norm(Eigen::MatrixXd::Zero(3, 3)).value == 0.0);
  }
  {
    bool ok = true;
    for (const double m : {0.0, 1.0, 2.0, 3.0, 5.0}) {
      std::vector<ShellStats> shells;
      for (int r = 1; r <= 7; ++r) {
        const double v = std::pow(1.0 + kLog2 * r, -m);
        shells.push_back({r, 1, v, v, v});
      }
      ok = ok && std::abs(fit_exponent(shells, {1, 7}) - m) < 1e-10;
    }
    check("planted_exponents", ok);
  }
  {
    const GramMatrix gm = build_gram({2, 2}, GramKind::raw(), GramMethod::Direct, quad);
    const Envelopes e = envelopes(gm);
    bool mono = true;
    for (std::size_t n = 1; n < e.tail.size(); ++n) mono = mono && e.tail[n] <= e.tail[n - 1];
    check("envelope_tail_nonincreasing", mono);
    check("tail_beyond_diameter_zero", schur_truncation_bound(gm, gm.window.diameter() + 1) == 0.0);
    const GramMatrix g0 = build_gram({0, 0}, GramKind::raw(), GramMethod::Direct, quad);
    const Envelopes e0 = envelopes(g0);
    check("envelopes_0x0", e0.shell == std::vector<double>{0.0} && e0.tail == std::vector<double>{0.0});
  }
  return g;
}

}  // namespace

bool CheckGroup::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool SelfcheckSummary::passed() const noexcept {
  return std::all_of(groups.begin(), groups.end(), [](const CheckGroup& g) { return g.passed(); });
}

std::string SelfcheckSummary::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  nlohmann::json groups_json = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : g.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    groups_json.push_back({{"name", g.name}, {"passed", g.passed()}, {"checks", std::move(checks)}});
  }
  j["groups"] = std::move(groups_json);
  return j.dump(1) + "\n";
}

std::size_t oracle_constant_count() noexcept { return 3 * zeta_oracle_grid().size(); }

SelfcheckSummary run_selfcheck(const SelfcheckOptions& options) {
  const std::vector<ZetaOraclePoint> grid = oracle_grid(options);
  SelfcheckSummary s;
  s.groups.push_back(zeta_group(grid));
  s.groups.push_back(mellin_group());
  if (!options.skip_cross_validation) {
    s.groups.push_back(cross_validation_group());
  }
  s.groups.push_back(identity_group(grid));
  return s;
}

}  // namespace bnladder::cli
