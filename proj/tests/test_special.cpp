#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meander/special.hpp"

using namespace meander;

TEST_CASE("normal cdf basics") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  for (double x : {0.1, 0.46875, 0.5, 1.0, 2.7, 6.0, 11.0}) {
    CHECK(std::fabs(norm_cdf(x) + norm_cdf(-x) - 1.0) < 1e-12);
  }
}

TEST_CASE("normal cdf against quadrature oracle") {
  // independent oracle: adaptive Simpson of the Gaussian density
  auto phi_quad = [](double x) {
    return 0.5 + simpson_auto([](double u) { return norm_pdf(u); }, 0.0, x, 1e-13, 128);
  };
  for (double x : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    CHECK(std::fabs(norm_cdf(x) - phi_quad(x)) < 1e-10);
  }
  // frozen oracle value
  CHECK(norm_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
}

TEST_CASE("two_phi_minus_one small-argument expansion") {
  const double c = std::sqrt(2.0 / 3.14159265358979323846);
  for (double x : {1e-9, 1e-6, 1e-4}) {
    const double series = c * (x - x * x * x / 6.0);
    CHECK(two_phi_minus_one(x) == doctest::Approx(series).epsilon(1e-10));
  }
}

TEST_CASE("srw_cdf equals direct binomial sums") {
  // oracle: sum the n-step walk pmf directly from Pascal's recursion
  for (int n : {1, 2, 3, 7, 12, 31}) {
    std::vector<double> pmf(2 * n + 1, 0.0);  // index x+n
    pmf[n] = 1.0;
    for (int s = 0; s < n; ++s) {
      std::vector<double> nxt(2 * n + 1, 0.0);
      for (int i = 0; i < 2 * n + 1; ++i) {
        if (pmf[i] == 0.0) continue;
        if (i > 0) nxt[i - 1] += 0.5 * pmf[i];
        if (i < 2 * n) nxt[i + 1] += 0.5 * pmf[i];
      }
      pmf.swap(nxt);
    }
    for (long long x = -n - 1; x <= n + 1; ++x) {
      double cdf = 0.0;
      for (long long y = -n; y <= std::min<long long>(x, n); ++y) cdf += pmf[y + n];
      CHECK(std::fabs(srw_cdf(n, x) - cdf) < 1e-12);
    }
  }
}

TEST_CASE("incomplete gamma and chi-square tail") {
  // Q(1/2, x/2) = erfc(sqrt(x/2))
  for (double x : {0.1, 1.0, 2.5, 7.0}) {
    CHECK(inc_gamma_q(0.5, x / 2.0) ==
          doctest::Approx(erfc_cody(std::sqrt(x / 2.0))).epsilon(1e-10));
  }
  // Q(1, x) = e^{-x}
  for (double x : {0.3, 1.0, 4.0})
    CHECK(inc_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
}

TEST_CASE("singular time quadrature") {
  // int_0^T w^{-1/2} dw = 2 sqrt(T)
  const double T = 0.7;
  const double v = integrate_sqrt_singular_at_zero(
      [&](double w) { return 1.0 / std::sqrt(w); }, T, 2048);
  CHECK(v == doctest::Approx(2.0 * std::sqrt(T)).epsilon(1e-8));
  // and with a smooth factor: int_0^T w^{-1/2} cos(w) dw
  const double v2 = integrate_sqrt_singular_at_zero(
      [&](double w) { return std::cos(w) / std::sqrt(w); }, T, 2048);
  const double oracle = simpson_auto(
      [&](double u) { return 2.0 * std::cos(u * u); }, 0.0, std::sqrt(T), 1e-12, 256);
  CHECK(v2 == doctest::Approx(oracle).epsilon(1e-9));
}
