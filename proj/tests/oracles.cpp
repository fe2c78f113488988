#include "oracles.hpp"

#include <cmath>
#include <numeric>

namespace oracle {

namespace {

double f(double theta, double x) {
  const double a = theta / x;
  const double b = 1.0 / x;
  return (a - std::floor(a)) - theta * (b - std::floor(b));
}

}  // namespace

double reciprocal_inner(std::uint64_t qa, std::uint64_t qb, std::uint64_t n_max) {
  const std::uint64_t period = std::lcm(qa, qb);
  n_max -= n_max % period;
  const double scale = 1.0 / static_cast<double>(qa * qb);
  long double sum = 0.0L;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto c = static_cast<long double>((n % qa) * (n % qb));
    sum += c / (static_cast<long double>(n) * static_cast<long double>(n + 1));
  }
  // sum_{n > N} c(n)/(n(n+1)) ~ mean(c)/N up to O(period/N^2).
  long double mean = 0.0L;
  for (std::uint64_t r = 0; r < period; ++r) mean += static_cast<long double>((r % qa) * (r % qb));
  mean /= static_cast<long double>(period);
  sum += mean / static_cast<long double>(n_max);
  return static_cast<double>(sum) * scale;
}

double midpoint_inner(double theta_a, double theta_b, std::uint64_t n) {
  const double h = 1.0 / static_cast<double>(n);
  long double sum = 0.0L;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h;
    sum += f(theta_a, x) * f(theta_b, x);
  }
  return static_cast<double>(sum) * h;
}

std::complex<double> zeta_em(double t) {
  using C = std::complex<double>;
  constexpr int N = 60;
  // B_2k / (2k)!
  static constexpr double kB[] = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -5.284190138687493e-10,
      1.3382536530684679e-11,
      -3.3896802963225827e-13,
      8.586062056277845e-15,
      -2.174868698558062e-16,
      5.5090028283602295e-18,
      -1.3954464685812522e-19,
  };
  const C s(0.5, t);
  C sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logn = std::log(static_cast<double>(N));
  const C npow = std::exp(-s * logn);
  sum += npow * static_cast<double>(N) / (s - 1.0) + 0.5 * npow;
  // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  C rising = s;
  C power = npow / static_cast<double>(N);
  for (int k = 1; k <= 12; ++k) {
    sum += kB[k - 1] * rising * power;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= static_cast<double>(N) * static_cast<double>(N);
  }
  return sum;
}

}  // namespace oracle
