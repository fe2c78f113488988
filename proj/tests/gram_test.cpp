#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "bnladder/error.hpp"
#include "bnladder/fractional.hpp"
#include "bnladder/gram.hpp"
#include "bnladder/mellin.hpp"
#include "bnladder/zeta.hpp"

namespace bnladder {
namespace {

constexpr SmoothingParams kW5{5.0, 1e-6};

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

const GramMatrix& smoothed_4x4() {
  static const GramMatrix g = build_gram({4, 4}, GramKind::smoothed(kW5), GramMethod::Spectral, QuadratureConfig{});
  return g;
}

TEST(SpectralProduct, Examples) {
  const LadderPoint one = theta_of({0, 0});
  const LadderPoint half = theta_of({1, 0});
  const LadderPoint third = theta_of({0, 1});
  EXPECT_EQ(spectral_product(one, half, 2.5, std::nullopt), std::complex<double>(0.0));
  EXPECT_EQ(spectral_product(half, one, 2.5, kW5), std::complex<double>(0.0));

  const auto sq = spectral_product(third, third, 0.0, std::nullopt);
  EXPECT_NEAR(sq.real(), std::norm(mellin_closed(ThetaParam(1.0 / 3.0), 0.0)), 1e-14);
  EXPECT_GE(sq.real(), 0.0);
  EXPECT_EQ(sq.imag(), 0.0);

  const double expected = std::pow(2.0 * -1.4603545088095868 * (0.5 - std::sqrt(0.5)), 2);
  EXPECT_NEAR(spectral_product(half, half, 0.0, SmoothingParams{5.0, 0.0}).real(), expected, 1e-12);
}

TEST(SpectralProduct, SmoothingMultipliesByPsiSquared) {
  const LadderPoint a = theta_of({1, 0});
  const LadderPoint b = theta_of({2, 1});
  for (const double t : {0.0, 3.0, 11.0}) {
    const auto raw = spectral_product(a, b, t, std::nullopt);
    const auto sm = spectral_product(a, b, t, kW5);
    EXPECT_LT(std::abs(sm - raw * std::pow(psi(t, kW5), 2)), 1e-15);
  }
}

TEST(InnerSpectral, Examples) {
  const QuadratureConfig quad;
  EXPECT_EQ(inner_spectral(theta_of({0, 0}), theta_of({1, 1}), std::nullopt, quad).value, 0.0);
  EXPECT_EQ(inner_spectral(theta_of({2, 0}), theta_of({0, 0}), kW5, quad).value, 0.0);

  const LadderPoint half = theta_of({1, 0});
  const auto raw = inner_spectral(half, half, std::nullopt, quad);
  EXPECT_NEAR(raw.value, inner_direct(ThetaParam(0.5), ThetaParam(0.5), quad).value, 1e-4);
  EXPECT_TRUE(raw.raw);
  EXPECT_EQ(raw.t_max, quad.t_max_raw);
}

TEST(InnerSpectral, SmoothedAgreesWithTighterQuadrature) {
  const SmoothingParams p{5.0, 0.0};
  const auto a = theta_of({1, 0});
  const auto b = theta_of({0, 1});
  const auto v = inner_spectral(a, b, p, QuadratureConfig{});
  EXPECT_LE(std::abs(v.value), 4.0);
  QuadratureConfig tight = QuadratureConfig::with_tolerance(1e-11);
  tight.gaussian_tail_tol = 1e-13;
  const auto ref = inner_spectral(a, b, p, tight);
  EXPECT_NEAR(v.value, ref.value, 1e-8);
  EXPECT_LE(v.total_error(), 1e-7);
}

TEST(InnerSpectral, SymmetricInArguments) {
  const auto a = theta_of({2, 1});
  const auto b = theta_of({0, 3});
  const QuadratureConfig quad;
  EXPECT_NEAR(inner_spectral(a, b, kW5, quad).value, inner_spectral(b, a, kW5, quad).value, 1e-14);
}

TEST(GaussianTMax, FrozenValueAndGrowth) {
  const QuadratureConfig quad;
  const double t5 = gaussian_t_max(kW5, 4.0, quad);
  EXPECT_NEAR(t5, 27.81, 0.3);
  EXPECT_LT(t5, gaussian_t_max({10.0, 1e-6}, 4.0, quad));
  QuadratureConfig tighter = quad;
  tighter.gaussian_tail_tol = 1e-14;
  EXPECT_LT(t5, gaussian_t_max(kW5, 4.0, tighter));
}

TEST(BuildGram, EmptyWindow) {
  const auto g = build_gram({0, 0}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.entries(0, 0), 0.0);
}

TEST(BuildGram, DirectAgreesWithSpectral2x2) {
  const QuadratureConfig quad;
  const auto d = build_gram({2, 2}, GramKind::raw(), GramMethod::Direct, quad);
  const auto s = build_gram({2, 2}, GramKind::raw(), GramMethod::Spectral, quad);
  EXPECT_LT(max_abs_diff(d.entries, s.entries), 1e-4);
  // The reported per-entry error should cover the discrepancy.
  for (Eigen::Index p = 0; p < d.entries.rows(); ++p) {
    for (Eigen::Index q = 0; q < d.entries.cols(); ++q) {
      EXPECT_LE(std::abs(d.entries(p, q) - s.entries(p, q)), s.errors(p, q) + 1e-9);
    }
  }
}

TEST(BuildGram, Smoothed4x4Structure) {
  const GramMatrix& g = smoothed_4x4();
  EXPECT_EQ(max_abs_diff(g.entries, g.entries.transpose()), 0.0);
  for (Eigen::Index q = 0; q < g.entries.cols(); ++q) {
    EXPECT_EQ(g.entries(0, q), 0.0);
    EXPECT_EQ(g.entries(q, 0), 0.0);
  }
  EXPECT_GE(min_eigenvalue(g), -static_cast<double>(g.size()) * 1e-8);
  EXPECT_GT(g.t_max, 0.0);
}

TEST(BuildGram, EntriesBoundedByFour) {
  const auto raw = build_gram({6, 6}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  EXPECT_LE(raw.entries.cwiseAbs().maxCoeff(), 4.0);
  const GramMatrix& sm = smoothed_4x4();
  EXPECT_LE(sm.entries.cwiseAbs().maxCoeff(), 4.0 * std::pow(1.0 + kW5.epsilon, 2));
}

TEST(BuildGram, DiagonalIsSquaredNorm) {
  const QuadratureConfig quad;
  const auto g = build_gram({3, 3}, GramKind::raw(), GramMethod::Direct, quad);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto pt = theta_of(g.window.at(p));
    const double n = l2_norm(pt.theta_param(), quad);
    EXPECT_NEAR(g.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)), n * n, 1e-14);
  }
}

TEST(BuildGram, SmoothedBelowRawOnDiagonal) {
  // psi <= 1 + eps pointwise, so smoothed norms cannot exceed raw ones by more than that factor.
  const QuadratureConfig quad;
  const auto raw = build_gram({4, 4}, GramKind::raw(), GramMethod::Direct, quad);
  const GramMatrix& sm = smoothed_4x4();
  for (Eigen::Index p = 1; p < raw.entries.rows(); ++p) {
    EXPECT_LE(sm.entries(p, p), raw.entries(p, p) * std::pow(1.0 + kW5.epsilon, 2) + 1e-9);
  }
}

TEST(BuildGram, DirectRejectsSmoothed) {
  EXPECT_THROW(build_gram({2, 2}, GramKind::smoothed(kW5), GramMethod::Direct, QuadratureConfig{}), DomainError);
}

TEST(BuildGram, RejectsBadInputs) {
  EXPECT_THROW(build_gram({-1, 2}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{}), DomainError);
  EXPECT_THROW(build_gram({1, 1}, GramKind::smoothed({0.0, 1e-6}), GramMethod::Spectral, QuadratureConfig{}),
               DomainError);
  QuadratureConfig bad;
  bad.t_max_raw = 2.0 * kZetaTCap;
  EXPECT_THROW(build_gram({1, 1}, GramKind::raw(), GramMethod::Spectral, bad), DomainError);
}

TEST(BuildGram, HybridSplitsByKind) {
  const QuadratureConfig quad;
  const auto d = build_gram({3, 2}, GramKind::raw(), GramMethod::Direct, quad);
  const auto h = build_gram({3, 2}, GramKind::raw(), GramMethod::Hybrid, quad);
  EXPECT_EQ(max_abs_diff(d.entries, h.entries), 0.0);
  const auto s = build_gram({2, 2}, GramKind::smoothed(kW5), GramMethod::Spectral, quad);
  const auto hs = build_gram({2, 2}, GramKind::smoothed(kW5), GramMethod::Hybrid, quad);
  EXPECT_EQ(max_abs_diff(s.entries, hs.entries), 0.0);
}

TEST(BuildGram, DeterministicAndThreadIndependent) {
  const QuadratureConfig quad;
  const auto a = build_gram({3, 3}, GramKind::smoothed(kW5), GramMethod::Spectral, quad, {1, false});
  const auto b = build_gram({3, 3}, GramKind::smoothed(kW5), GramMethod::Spectral, quad, {1, false});
  const auto c = build_gram({3, 3}, GramKind::smoothed(kW5), GramMethod::Spectral, quad, {3, false});
  EXPECT_EQ(gram_to_json(a), gram_to_json(b));
  EXPECT_EQ(gram_to_json(a), gram_to_json(c));
}

TEST(BuildGram, ComponentsRecombine) {
  const auto g = build_gram({2, 2}, GramKind::smoothed(kW5), GramMethod::Spectral, QuadratureConfig{}, {1, true});
  ASSERT_TRUE(g.components.has_value());
  EXPECT_LT(max_abs_diff(g.components->i1 - g.components->i2, g.entries), 1e-6);
}

TEST(BuildGram, EpsilonZeroWarns) {
  const auto g = build_gram({1, 1}, GramKind::smoothed({5.0, 0.0}), GramMethod::Spectral, QuadratureConfig{});
  EXPECT_FALSE(g.warnings.empty());
}

TEST(BuildGram, LargeWindowUsesExactSums) {
  const auto g = build_gram({8, 8}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  EXPECT_EQ(g.size(), 81u);
  EXPECT_LT(g.errors.maxCoeff(), 1e-10);
}

TEST(SmoothingLimit, ConvergesToRawAsWGrows) {
  const QuadratureConfig quad;
  const auto raw = build_gram({3, 3}, GramKind::raw(), GramMethod::Direct, quad);
  double prev = std::numeric_limits<double>::infinity();
  for (const double w : {5.0, 20.0, 80.0}) {
    const auto sm = build_gram({3, 3}, GramKind::smoothed({w, 0.0}), GramMethod::Spectral, quad);
    const double gap = max_abs_diff(sm.entries, raw.entries);
    EXPECT_LT(gap, prev) << "W = " << w;
    prev = gap;
  }
}

TEST(CrossValidate, Windows) {
  const QuadratureConfig quad;
  EXPECT_EQ(cross_validate({0, 0}, quad).max_discrepancy, 0.0);
  const auto r3 = cross_validate({3, 3}, quad);
  EXPECT_LT(r3.max_discrepancy, 1e-4);
  const auto r5 = cross_validate({5, 5}, quad);
  EXPECT_LT(r5.max_discrepancy, 1e-3);
}

TEST(Normalize, UnitDiagonalAndMask) {
  const auto g = build_gram({2, 2}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  const auto n = normalize(g);
  EXPECT_FALSE(n.valid[0][0]);
  EXPECT_EQ(n.entries(0, 3), 0.0);
  for (Eigen::Index p = 1; p < n.entries.rows(); ++p) {
    EXPECT_EQ(n.entries(p, p), 1.0);
    for (Eigen::Index q = 1; q < n.entries.cols(); ++q) EXPECT_LE(std::abs(n.entries(p, q)), 1.0 + 1e-12);
  }
}

TEST(GramMethod, StringRoundTrip) {
  for (const auto m : {GramMethod::Direct, GramMethod::Spectral, GramMethod::Hybrid}) {
    EXPECT_EQ(gram_method_from_string(to_string(m)), m);
  }
  EXPECT_THROW(gram_method_from_string("fast"), DomainError);
}

TEST(GramIo, CsvPairCount) {
  const auto g = build_gram({2, 2}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  const std::string csv = gram_to_csv(g);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 46);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,k,j2,k2,value,err_estimate");
  const auto g0 = build_gram({0, 0}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  EXPECT_EQ(gram_to_csv(g0), "j,k,j2,k2,value,err_estimate\n0,0,0,0,0,0\n");
}

TEST(GramIo, JsonRoundTripIsBitExact) {
  const GramMatrix& g = smoothed_4x4();
  const GramMatrix back = gram_from_json(gram_to_json(g));
  EXPECT_EQ(back.window, g.window);
  EXPECT_EQ(back.kind, g.kind);
  EXPECT_EQ(back.method, g.method);
  EXPECT_EQ(back.t_max, g.t_max);
  EXPECT_TRUE((back.entries.array() == g.entries.array()).all());
  EXPECT_TRUE((back.errors.array() == g.errors.array()).all());
  EXPECT_EQ(gram_to_json(back), gram_to_json(g));
}

TEST(GramIo, NormalizedOutputs) {
  const auto g = build_gram({1, 1}, GramKind::raw(), GramMethod::Direct, QuadratureConfig{});
  const std::string csv = normalized_gram_to_csv(g);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_NE(normalized_gram_to_json(g).find("valid"), std::string::npos);
}

TEST(GramIo, RejectsMalformedJson) {
  EXPECT_ANY_THROW(gram_from_json("{}"));
  EXPECT_ANY_THROW(gram_from_json("not json"));
}

}  // namespace
}  // namespace bnladder
