#ifndef MEANDER_WALKS_HPP
#define MEANDER_WALKS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "meander/discrete.hpp"
#include "meander/rng.hpp"

namespace meander {

// One non-negative nearest-neighbor trajectory.
struct PathSample {
  long long start = 0;
  int horizon = 0;
  std::vector<long long> sites;  // s_0..s_n, s_0 = start
};

struct CoupledPair {
  PathSample lower;  // from x
  PathSample upper;  // from x+1
};

inline constexpr int kEnumerationCap = 24;

// Visits every element of Omega_x^n exactly once (lexicographic in the step
// sequence, down before up). Throws std::invalid_argument above the cap.
void enumerate_paths(long long x, int n, const std::function<void(const PathSample&)>& visit);

// Materialized variant; #paths = 2^n * psi(x,n).
std::vector<PathSample> enumerate_paths(long long x, int n);

long long count_paths(long long x, int n);

// One-step up probability p-frak_1^m(x,x+1), choosing exact tables when the
// horizon is covered and the binomial-cdf route otherwise.
double up_probability(const KernelWorkspace& ws, long long x, int m);

// Draws a path of law P_x^n by sequential sampling from p-frak_1^{n-k}.
PathSample sample_path(const KernelWorkspace& ws, long long x, int n, RngStream& rng);

// Prop. coup three-case construction; ties on the uniform threshold join the
// up-step branch. Marginals are P_x^n and P_{x+1}^n, |upper_i - lower_i| = 1.
CoupledPair sample_coupled_pair(const KernelWorkspace& ws, long long x, int n,
                                RngStream& rng);

// Neighbor chain (x, x+1, ..., x+count) driven by one shared uniform
// sequence; consecutive components are pairwise coupled at distance 1.
std::vector<PathSample> sample_coupled_family(const KernelWorkspace& ws, long long x,
                                              int count, int n, RngStream& rng);

// f(x,i) = -1 + (x+1)/psi(x, n-i) = E_x^{n-i}[S_{n-i}]
double martingale_value(const KernelWorkspace& ws, long long x, int i, int n);

// Product of one-step conditioned transitions along the path; equals
// 1/#Omega_{start}^{horizon} for every admissible path.
double path_probability(const KernelWorkspace& ws, const PathSample& path);

struct TailCurve {
  std::vector<double> u;
  std::vector<double> p_hat;
  std::vector<double> stderr_;
  std::vector<long long> exceedances;
  std::vector<bool> flagged;  // too few exceedances for a trustworthy point
  long long samples = 0;
};

// Empirical P(sup_{i<=k} |S_i - x| > u) over the u-grid, with binomial
// standard errors. Streams are indexed by sample id, so the curve is
// independent of the worker count.
TailCurve concentration_tail(long long x, int n, int k, const std::vector<double>& u_grid,
                             long long samples, std::uint64_t master_seed,
                             int workers = 1);

// Exact tail by path enumeration (small n).
std::vector<double> exact_tail(long long x, int n, int k, const std::vector<double>& u_grid);

}  // namespace meander

#endif  // MEANDER_WALKS_HPP
