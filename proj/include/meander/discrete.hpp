#ifndef MEANDER_DISCRETE_HPP
#define MEANDER_DISCRETE_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace meander {

using Eigen::ArrayXd;

// Row of the whole-line simple-random-walk kernel: p_n(x) for x = 0..n
// (p_n(-x) = p_n(x)). Built by the convex one-step recursion from a Dirac
// mass, so values stay in [0,1] at any horizon.
ArrayXd whole_line_row(int n);

// Survival masses psi(x,n) for x = 0..n, from a whole-line row of the same n.
// psi(x,n) = p_n(0) + p_n(x+1) + 2*sum_{1<=u<=x} p_n(u); for x >= n, psi = 1.
ArrayXd psi_row_from(const ArrayXd& p);

// Exact kernel tables up to a fixed horizon. Immutable after construction and
// safe to share across threads. Construction is O(horizon^2) time and memory
// for the two triangular tables.
class KernelWorkspace {
 public:
  explicit KernelWorkspace(int horizon_max);

  int horizon_max() const { return horizon_; }

  // p_n(x), whole-line walk from 0
  double whole_line(int n, long long x) const;

  // psi(x,n); equals 1 whenever x >= n
  double psi(long long x, int n) const;

  // p_n^{(1/2)}(x,y) = p_n(x-y) - p_n(x+y+2)
  double half_kernel(int n, long long x, long long y) const;

  // image-method kernel for survival parameter alpha in [0,1]; the series
  // truncates where x+y+2k exceeds n, closed two-term forms for alpha in
  // {0, 1/2, 1}
  double alpha_kernel(int n, long long x, long long y, double alpha) const;

  // conditioned transition p-frak_n^N(x,y)
  double cond(int n, int N, long long x, long long y) const;

  // p-frak_n^N(x, y) for y = 0..(x+n), as one array
  ArrayXd cond_row(int n, int N, long long x) const;

  // one-step probabilities p-frak_1^m(x, x+1) and (x, x-1); exactly 1 and 0
  // at x = 0, and floored/capped at 1/2 where the true gap is subnormal
  double up_prob(long long x, int m) const;
  double down_prob(long long x, int m) const;

  // E_x^n[S_k] from the tables
  double walk_mean(long long x, int k, int n) const;

  const ArrayXd& p_row(int n) const;
  const ArrayXd& psi_row(int n) const;

 private:
  void check_horizon(int n) const;

  int horizon_;
  std::vector<ArrayXd> p_;
  std::vector<ArrayXd> psi_;
};

// Large-horizon survival mass psi(x,n) through the exact binomial cdf
// psi = F_n(x) + F_n(x+1) - 1 (incomplete-beta evaluation, no tables).
double psi_bincdf(long long x, long long n);

// One-step up probability at large horizons, same route.
double up_prob_bincdf(long long x, long long m);

struct AuditGrid {
  int x_max = 64;
  int n_max = 64;
  int N_max = 64;
  std::vector<double> a_values = {0.0, 0.25, 0.5};
  double b = 1.0;
  int p = 2;
  double K = 0.5;  // Gaussian-rate constant in the e^{ax+K a^2 n} envelopes

  std::string describe() const;
};

struct BoundAuditReport {
  std::string bound_name;
  std::string grid_spec;
  double worst_ratio = 0.0;     // sup of LHS / constant-free RHS over the grid
  double implied_constant = 0.0;
  long long points = 0;
  double runtime_ms = 0.0;
};

// Audits one of the named kernel inequalities over the grid and reports the
// implied constant. Names: ohgod, mass, macky, wconc, fetiz, dack,
// spatem_spat, spatem_tem, sqrtgr. Unknown name -> std::invalid_argument.
BoundAuditReport audit_bound(const KernelWorkspace& ws, const std::string& bound_name,
                             const AuditGrid& grid, int workers = 1);

std::vector<std::string> audit_bound_names();

}  // namespace meander

#endif  // MEANDER_DISCRETE_HPP
