#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "meander/discrete.hpp"
#include "meander/special.hpp"
#include "meander/walks.hpp"

using namespace meander;

namespace {

// Independent oracle: brute-force enumeration of all 2^n step sequences of a
// whole-line walk from 0.
double brute_whole_line(int n, long long target) {
  long long hits = 0;
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    long long s = 0;
    for (int i = 0; i < n; ++i) s += (mask >> i & 1) ? 1 : -1;
    if (s == target) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(1LL << n);
}

}  // namespace

TEST_CASE("whole-line kernel basics") {
  KernelWorkspace ws(64);
  CHECK(ws.whole_line(0, 0) == 1.0);
  CHECK(ws.whole_line(3, 2) == 0.0);  // parity mismatch
  CHECK(ws.whole_line(2, 0) == doctest::Approx(0.5).epsilon(1e-15));
  for (int n : {1, 4, 9, 14}) {
    for (long long x = -n; x <= n; ++x)
      CHECK(ws.whole_line(n, x) == doctest::Approx(brute_whole_line(n, x)).epsilon(1e-13));
  }
  // normalization at every horizon
  for (int n = 0; n <= 64; ++n) {
    double total = ws.whole_line(n, 0);
    for (long long x = 1; x <= n; ++x) total += 2.0 * ws.whole_line(n, x);
    CHECK(std::fabs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("alpha-boundary kernels") {
  KernelWorkspace ws(128);
  CHECK(ws.alpha_kernel(1, 0, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ws.alpha_kernel(2, 1, 1, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ws.alpha_kernel(1, 0, 1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(ws.alpha_kernel(1, 0, 1, 1.5), std::domain_error);

  // boundary condition: p_{n+1}(x,0) = alpha p_n(x,1)
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (int n = 0; n <= 100; ++n)
      for (long long x : {0, 1, 2, 3, 5, 11, 40}) {
        const double lhs = ws.alpha_kernel(n + 1, x, 0, alpha);
        const double rhs = alpha * ws.alpha_kernel(n, x, 1, alpha);
        CHECK(std::fabs(lhs - rhs) < 1e-12);
      }

  // interior heat equation: p_{n+1}(x,y) = (p_n(x,y-1)+p_n(x,y+1))/2
  for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (int n = 0; n <= 100; n += 7)
      for (long long x : {0, 2, 9})
        for (long long y = 1; y <= n + 1; ++y) {
          const double lhs = ws.alpha_kernel(n + 1, x, y, alpha);
          const double rhs = 0.5 * (ws.alpha_kernel(n, x, y - 1, alpha) +
                                    ws.alpha_kernel(n, x, y + 1, alpha));
          CHECK(std::fabs(lhs - rhs) < 1e-12);
        }

  // half-kernel symmetry
  for (int n = 0; n <= 100; n += 9)
    for (long long x = 0; x <= 20; ++x)
      for (long long y = 0; y <= 20; ++y)
        CHECK(std::fabs(ws.half_kernel(n, x, y) - ws.half_kernel(n, y, x)) < 1e-12);
}

TEST_CASE("survival mass") {
  KernelWorkspace ws(256);
  for (long long x : {0, 1, 5, 200}) CHECK(ws.psi(x, 0) == 1.0);

  // enumeration oracle
  CHECK(ws.psi(0, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ws.psi(1, 2) == doctest::Approx(0.75).epsilon(1e-15));
  for (int n = 0; n <= 14; ++n)
    for (long long x = 0; x <= 6; ++x) {
      const double mass =
          static_cast<double>(count_paths(x, n)) / std::pow(2.0, n);
      CHECK(ws.psi(x, n) == doctest::Approx(mass).epsilon(1e-13));
    }

  // cdf identity psi = F_n(x) + F_n(x+1) - 1
  for (int n : {3, 17, 64, 200})
    for (long long x = 0; x <= n; ++x) {
      const double cdf = srw_cdf(n, x) + srw_cdf(n, x + 1) - 1.0;
      CHECK(std::fabs(ws.psi(x, n) - cdf) < 1e-12);
      CHECK(std::fabs(ws.psi(x, n) - psi_bincdf(x, n)) < 1e-12);
    }

  // monotone in x, bounded by 1, positive
  for (int n = 1; n <= 200; ++n)
    for (long long x = 0; x < 200; ++x) {
      CHECK(ws.psi(x, n) <= ws.psi(x + 1, n));
      CHECK(ws.psi(x, n) > 0.0);
      CHECK(ws.psi(x, n) <= 1.0);
    }
}

TEST_CASE("conditioned transitions") {
  KernelWorkspace ws(200);
  for (long long x : {0, 1, 7}) CHECK(ws.cond(0, 50, x, x) == doctest::Approx(1.0));
  CHECK(ws.cond(1, 2, 0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ws.cond(1, 2, 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ws.cond(1, 2, 1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(ws.cond(3, 2, 0, 1), std::domain_error);

  // normalization over the stated grid
  for (int N = 0; N <= 200; N += 13)
    for (int n = 0; n <= N; n += 7)
      for (long long x = 0; x <= N; x += 11) {
        const ArrayXd row = ws.cond_row(n, N, x);
        CHECK(std::fabs(row.sum() - 1.0) < 1e-12);
      }

  // Chapman-Kolmogorov on a sampled grid
  for (int N : {20, 60, 100})
    for (int m : {1, 2, 5, 17})
      for (int n : {1, 3, 20}) {
        if (m + n > N) continue;
        for (long long x : {0, 1, 6, 23}) {
          const ArrayXd first = ws.cond_row(m, N, x);
          const ArrayXd direct = ws.cond_row(m + n, N, x);
          for (long long z = 0; z < direct.size(); z += 3) {
            double conv = 0.0;
            for (long long y = 0; y < first.size(); ++y)
              if (first[y] != 0.0) conv += first[y] * ws.cond(n, N - m, y, z);
            CHECK(std::fabs(conv - direct[z]) < 1e-10);
          }
        }
      }

  // monotone one-step probabilities (Lemma mono)
  for (int n = 1; n <= 200; ++n) {
    double prev_up = 1.0;
    for (long long x = 0; x <= 200; ++x) {
      const double up = ws.up_prob(x, n);
      CHECK(up >= 0.5);
      CHECK(up <= prev_up + 1e-15);
      prev_up = up;
    }
  }
}

TEST_CASE("mass asymptotics toward (x+1)sqrt(2/pi)") {
  const ArrayXd p = whole_line_row(10000);
  const ArrayXd psi = psi_row_from(p);
  const double c = std::sqrt(2.0 / 3.14159265358979323846);
  for (long long x = 0; x <= 20; ++x) {
    const double ratio = std::sqrt(10000.0) * psi[x] / ((x + 1.0) * c);
    CHECK(std::fabs(ratio - 1.0) < 0.05);
  }
}

TEST_CASE("bound audits") {
  KernelWorkspace ws(64);
  AuditGrid g;
  g.x_max = 24;
  g.n_max = 48;
  g.N_max = 48;

  SUBCASE("psi envelope is finite and at least 1") {
    const auto rep = audit_bound(ws, "mass", g, 2);
    CHECK(rep.worst_ratio >= 1.0);
    CHECK(std::isfinite(rep.worst_ratio));
  }
  SUBCASE("macky with a=0 gives the constant 1") {
    AuditGrid g0 = g;
    g0.a_values = {0.0};
    const auto rep = audit_bound(ws, "macky", g0, 2);
    CHECK(rep.implied_constant == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("sqrtgr and the others are finite and deterministic") {
    for (const auto& name : audit_bound_names()) {
      AuditGrid small = g;
      small.x_max = 12;
      small.n_max = 16;
      small.N_max = 16;
      const auto r1 = audit_bound(ws, name, small, 1);
      const auto r2 = audit_bound(ws, name, small, 2);
      CHECK(std::isfinite(r1.worst_ratio));
      CHECK(r1.worst_ratio > 0.0);
      CHECK(r1.worst_ratio == r2.worst_ratio);  // worker-count invariant, bit-exact
    }
  }
  SUBCASE("unknown bound rejected") {
    CHECK_THROWS_AS(audit_bound(ws, "nope", g, 1), std::invalid_argument);
  }
}

TEST_CASE("horizon errors") {
  KernelWorkspace ws(16);
  CHECK_THROWS_AS(ws.whole_line(17, 0), std::out_of_range);
  CHECK_THROWS_AS(ws.psi(0, 17), std::out_of_range);
}
