#include "meander/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meander/special.hpp"

namespace meander {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw std::domain_error("mean_of: empty sample");
  double s = 0.0, c = 0.0;
  for (double x : v) {  // Kahan; experiments feed 1e5+ values
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  if (v.size() < 2) throw std::domain_error("variance_of: need two values");
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.3) return 1.0;
  double q = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    q += sign * 2.0 * std::exp(-2.0 * j * j * lambda * lambda);
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, q));
}

TestReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                         double significance) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  TestReport rep;
  rep.name = "ks_two_sample";
  rep.statistic = d;
  rep.p_value = kolmogorov_q(lambda);
  rep.threshold = significance;
  rep.pass = rep.p_value >= significance;
  rep.n_a = static_cast<long long>(a.size());
  rep.n_b = static_cast<long long>(b.size());
  rep.details["effective_n"] = ne;
  return rep;
}

TestReport moment_compare(const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<int>& orders, double z_threshold) {
  if (a.size() < 2 || b.size() < 2)
    throw std::domain_error("moment_compare: need two values per sample");
  TestReport rep;
  rep.name = "moment_compare";
  rep.threshold = z_threshold;
  rep.n_a = static_cast<long long>(a.size());
  rep.n_b = static_cast<long long>(b.size());
  rep.pass = true;
  double worst = 0.0;
  for (int r : orders) {
    std::vector<double> pa(a.size()), pb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] = std::pow(a[i], r);
    for (std::size_t i = 0; i < b.size(); ++i) pb[i] = std::pow(b[i], r);
    const double ma = mean_of(pa), mb = mean_of(pb);
    const double se = std::sqrt(variance_of(pa) / static_cast<double>(a.size()) +
                                variance_of(pb) / static_cast<double>(b.size()));
    const double z = se > 0.0 ? (ma - mb) / se : (ma == mb ? 0.0 : INFINITY);
    const std::string key = "order" + std::to_string(r);
    rep.details[key + "_delta"] = ma - mb;
    rep.details[key + "_z"] = z;
    worst = std::max(worst, std::fabs(z));
    if (std::fabs(z) > z_threshold) rep.pass = false;
  }
  rep.statistic = worst;
  rep.p_value = 2.0 * (1.0 - norm_cdf(worst));
  return rep;
}

SlopeFit subgaussian_fit(const std::vector<double>& u, const std::vector<double>& p_hat,
                         double k) {
  if (u.size() != p_hat.size())
    throw std::invalid_argument("subgaussian_fit: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (p_hat[i] <= 0.0 || p_hat[i] > 1.0) continue;
    xs.push_back(u[i] * u[i] / k);
    ys.push_back(std::log(p_hat[i]));
  }
  SlopeFit fit;
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) return fit;
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  if (xs.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / (sxx - sx * sx / n));
  }
  return fit;
}

TestReport exact_law_distance(const std::vector<long long>& histogram,
                              const std::vector<double>& law, double significance) {
  if (histogram.size() != law.size())
    throw std::invalid_argument("exact_law_distance: size mismatch");
  long long total = 0;
  for (long long c : histogram) total += c;
  if (total == 0) throw std::domain_error("exact_law_distance: empty histogram");
  const double n = static_cast<double>(total);

  double tv = 0.0;
  for (std::size_t i = 0; i < law.size(); ++i)
    tv += std::fabs(static_cast<double>(histogram[i]) / n - law[i]);
  tv *= 0.5;

  // chi-square with small expected bins merged leftward
  double chi2 = 0.0;
  int cells = 0;
  double exp_acc = 0.0, obs_acc = 0.0;
  for (std::size_t i = 0; i < law.size(); ++i) {
    exp_acc += n * law[i];
    obs_acc += static_cast<double>(histogram[i]);
    if (exp_acc >= 5.0 || i + 1 == law.size()) {
      if (exp_acc > 0.0) {
        chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
        ++cells;
      }
      exp_acc = 0.0;
      obs_acc = 0.0;
    }
  }
  const int dof = std::max(1, cells - 1);
  TestReport rep;
  rep.name = "exact_law_distance";
  rep.statistic = tv;
  rep.p_value = inc_gamma_q(dof / 2.0, chi2 / 2.0);
  rep.threshold = significance;
  rep.pass = rep.p_value >= significance;
  rep.n_a = total;
  rep.details["chi2"] = chi2;
  rep.details["dof"] = dof;
  rep.details["tv"] = tv;
  return rep;
}

}  // namespace meander
