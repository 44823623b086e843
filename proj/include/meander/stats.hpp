#ifndef MEANDER_STATS_HPP
#define MEANDER_STATS_HPP

#include <map>
#include <string>
#include <vector>

namespace meander {

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  double threshold = 0.0;  // significance for p-value tests, margin otherwise
  bool pass = false;
  long long n_a = 0;
  long long n_b = 0;
  std::map<std::string, double> details;
  std::string provenance;  // seed / parameter trail
};

// Survival function Q(lambda) of the Kolmogorov distribution, 100 series
// terms; arguments below 0.3 are clamped to p = 1.
double kolmogorov_q(double lambda);

// Exact sup-distance of the empirical cdfs plus the asymptotic p-value with
// the standard effective-sample-size correction. Deterministic given inputs.
TestReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                         double significance = 1e-3);

// Pooled-sigma z-tests of raw moments of the given orders.
TestReport moment_compare(const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<int>& orders, double z_threshold = 3.0);

// Least-squares slope of log(p_hat) against u^2/k; zero/flagged tail points
// are dropped. Returns slope, its standard error, and intercept.
struct SlopeFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  int points_used = 0;
};
SlopeFit subgaussian_fit(const std::vector<double>& u, const std::vector<double>& p_hat,
                         double k);

// Total-variation distance plus a chi-square goodness-of-fit p-value of an
// empirical histogram against an exact law (bins with tiny expected counts
// are merged into their predecessor for the chi-square part).
TestReport exact_law_distance(const std::vector<long long>& histogram,
                              const std::vector<double>& law, double significance = 1e-3);

double mean_of(const std::vector<double>& v);
double variance_of(const std::vector<double>& v);  // unbiased

}  // namespace meander

#endif  // MEANDER_STATS_HPP
