#include <cmath>

#include <gtest/gtest.h>

#include "bnladder/error.hpp"
#include "bnladder/mellin.hpp"
#include "bnladder/zeta.hpp"

namespace bnladder {
namespace {

constexpr double kZetaHalfAtZero = -1.4603545088095868;

double rel_gap(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(a));
}

TEST(MellinClosed, ThetaOneVanishes) {
  for (const double t : {0.0, 2.0, 50.0}) EXPECT_EQ(std::abs(mellin_closed(ThetaParam(1.0), t)), 0.0);
}

TEST(MellinClosed, HalfAtZero) {
  const auto m = mellin_closed(ThetaParam(0.5), 0.0);
  EXPECT_NEAR(m.real(), 2.0 * kZetaHalfAtZero * (0.5 - std::sqrt(0.5)), 1e-12);
  EXPECT_NEAR(m.imag(), 0.0, 1e-15);
}

TEST(MellinClosed, Reflection) {
  for (const double t : {0.5, 3.0, 40.0}) {
    EXPECT_LT(std::abs(mellin_closed(ThetaParam(0.5), -t) - std::conj(mellin_closed(ThetaParam(0.5), t))), 1e-13);
  }
}

TEST(MellinClosed, FromLogAgrees) {
  const ThetaParam th = ThetaParam::reciprocal(12);
  for (const double t : {0.0, 1.0, 9.0}) {
    EXPECT_LT(std::abs(mellin_closed(th, t) - mellin_closed_from_log(std::log(1.0 / 12.0), t)), 1e-14);
    EXPECT_LT(std::abs(mellin_closed(th, t) - mellin_closed_from_log(std::log(1.0 / 12.0), t, zeta_half(t))), 1e-14);
  }
}

TEST(MellinClosed, FromLogHandlesUnderflow) {
  // theta = e^{-800} is not a double; the transform tends to -zeta(s) theta^s / s -> 0.
  const auto m = mellin_closed_from_log(-800.0, 3.0);
  EXPECT_TRUE(std::isfinite(m.real()));
  EXPECT_LT(std::abs(m), 1e-100);
}

TEST(MellinClosed, ModulusBound) {
  for (const double theta : {0.5, 1.0 / 6.0}) {
    for (double t = 0.0; t < 300.0; t += 3.7) {
      const double bound =
          std::abs(zeta_half(t)) * (std::sqrt(theta) + theta) / std::abs(std::complex<double>(0.5, t));
      EXPECT_LE(std::abs(mellin_closed(ThetaParam(theta), t)), bound * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST(MellinDirect, MatchesClosedForm) {
  const QuadratureConfig quad;
  for (const std::uint64_t q : {2, 3, 6, 12}) {
    for (const double t : {0.0, 1.0, 5.0, 20.0}) {
      const ThetaParam th = ThetaParam::reciprocal(q);
      EXPECT_LT(rel_gap(mellin_closed(th, t), mellin_direct(th, t, quad).value), 1e-6) << q << " " << t;
    }
  }
}

TEST(MellinDirect, Examples) {
  const QuadratureConfig quad;
  EXPECT_LT(std::abs(mellin_direct(ThetaParam(1.0), 2.0, quad).value), quad.abs_tol);
  EXPECT_LT(std::abs(mellin_direct(ThetaParam(0.5), 0.0, quad).value - mellin_closed(ThetaParam(0.5), 0.0)), 1e-6);
  EXPECT_LT(std::abs(mellin_direct(ThetaParam(1.0 / 3.0), 5.0, quad).value -
                     mellin_closed(ThetaParam(1.0 / 3.0), 5.0)),
            1e-6);
}

TEST(MellinDirect, GenericThetaWithLooseTolerance) {
  const QuadratureConfig quad = QuadratureConfig::with_tolerance(1e-4);
  const auto r = mellin_direct(ThetaParam(0.7), 2.0, quad);
  EXPECT_GT(r.tail_bound, 0.0);
  EXPECT_LT(std::abs(r.value - mellin_closed(ThetaParam(0.7), 2.0)), 1e-3);
}

TEST(Psi, Examples) {
  EXPECT_DOUBLE_EQ(psi(0.0, {5.0, 1e-6}), 1.0 + 1e-6);
  EXPECT_NEAR(psi(7.0, {7.0, 0.0}), std::exp(-1.0), 1e-16);
  EXPECT_EQ(psi(-3.0, {5.0, 0.01}), psi(3.0, {5.0, 0.01}));
}

TEST(Psi, RangeAndMonotone) {
  const SmoothingParams p{5.0, 1e-3};
  double prev = psi(0.0, p);
  for (double t = 0.1; t < 100.0; t += 0.1) {
    const double v = psi(t, p);
    EXPECT_GE(v, p.epsilon);
    EXPECT_LE(v, 1.0 + p.epsilon);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(SmoothingParams, Validation) {
  EXPECT_NO_THROW((SmoothingParams{5.0, 0.0}.validate()));
  EXPECT_THROW((SmoothingParams{0.0, 1e-6}.validate()), DomainError);
  EXPECT_THROW((SmoothingParams{-1.0, 1e-6}.validate()), DomainError);
  EXPECT_THROW((SmoothingParams{5.0, -1e-6}.validate()), DomainError);
  EXPECT_TRUE((SmoothingParams{5.0, 1e-6}.invertible()));
  EXPECT_FALSE((SmoothingParams{5.0, 0.0}.invertible()));
}

}  // namespace
}  // namespace bnladder
