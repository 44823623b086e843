#include "meander/discrete.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "meander/parallel.hpp"
#include "meander/special.hpp"

namespace meander {

ArrayXd whole_line_row(int n) {
  if (n < 0) throw std::out_of_range("whole_line_row: n < 0");
  ArrayXd cur = ArrayXd::Zero(n + 1);
  cur[0] = 1.0;
  ArrayXd next = ArrayXd::Zero(n + 1);
  for (int m = 0; m < n; ++m) {
    next.setZero();
    next[0] = cur.size() > 1 ? cur[1] : 0.0;  // reflect: p_{m+1}(0) = p_m(1)
    for (int x = 1; x <= m + 1; ++x) {
      const double left = cur[x - 1];
      const double right = (x + 1 <= n) ? cur[x + 1] : 0.0;
      next[x] = 0.5 * (left + right);
    }
    cur.swap(next);
  }
  return cur;
}

ArrayXd psi_row_from(const ArrayXd& p) {
  const int n = static_cast<int>(p.size()) - 1;
  ArrayXd psi(n + 1);
  // psi(0) = p(0) + p(1), then psi(x+1) = psi(x) + p(x+1) + p(x+2); this is
  // the closed finite-sum form accumulated so monotonicity survives rounding
  double v = p[0] + (n >= 1 ? p[1] : 0.0);
  psi[0] = std::min(v, 1.0);
  for (int x = 1; x <= n; ++x) {
    v += (x <= n ? p[x] : 0.0) + (x + 1 <= n ? p[x + 1] : 0.0);
    psi[x] = std::min(v, 1.0);
  }
  return psi;
}

KernelWorkspace::KernelWorkspace(int horizon_max) : horizon_(horizon_max) {
  if (horizon_max < 0) throw std::out_of_range("KernelWorkspace: negative horizon");
  p_.reserve(horizon_ + 1);
  psi_.reserve(horizon_ + 1);
  ArrayXd row = ArrayXd::Zero(1);
  row[0] = 1.0;
  p_.push_back(row);
  psi_.push_back(psi_row_from(row));
  for (int n = 1; n <= horizon_; ++n) {
    const ArrayXd& prev = p_[n - 1];
    ArrayXd cur = ArrayXd::Zero(n + 1);
    cur[0] = (n >= 2) ? prev[1] : 0.0;
    for (int x = 1; x <= n; ++x) {
      const double left = prev[x - 1];
      const double right = (x + 1 <= n - 1) ? prev[x + 1] : 0.0;
      cur[x] = 0.5 * (left + right);
    }
    p_.push_back(cur);
    psi_.push_back(psi_row_from(cur));
  }
}

void KernelWorkspace::check_horizon(int n) const {
  if (n < 0 || n > horizon_)
    throw std::out_of_range("KernelWorkspace: horizon exceeded");
}

const ArrayXd& KernelWorkspace::p_row(int n) const {
  check_horizon(n);
  return p_[n];
}

const ArrayXd& KernelWorkspace::psi_row(int n) const {
  check_horizon(n);
  return psi_[n];
}

double KernelWorkspace::whole_line(int n, long long x) const {
  check_horizon(n);
  const long long ax = x < 0 ? -x : x;
  if (ax > n || ((n + ax) & 1LL) != 0) return 0.0;
  return p_[n][static_cast<int>(ax)];
}

double KernelWorkspace::psi(long long x, int n) const {
  check_horizon(n);
  if (x < 0) throw std::out_of_range("psi: x < 0");
  if (x >= n) return 1.0;
  return psi_[n][static_cast<int>(x)];
}

double KernelWorkspace::half_kernel(int n, long long x, long long y) const {
  return whole_line(n, x - y) - whole_line(n, x + y + 2);
}

double KernelWorkspace::alpha_kernel(int n, long long x, long long y,
                                     double alpha) const {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::domain_error("alpha_kernel: alpha outside [0,1]");
  check_horizon(n);
  if (alpha == 0.5) return half_kernel(n, x, y);
  if (alpha == 1.0) return whole_line(n, x - y) + whole_line(n, x + y);
  if (alpha == 0.0) return whole_line(n, x - y) - whole_line(n, x + y);
  const double r = 2.0 * alpha - 1.0;
  double value = whole_line(n, x - y) + r * whole_line(n, x + y);
  double coeff = -4.0 * alpha * (1.0 - alpha);
  for (long long k = 1; x + y + 2 * k <= n; ++k) {
    value += coeff * whole_line(n, x + y + 2 * k);
    coeff *= r;
  }
  return value;
}

double KernelWorkspace::cond(int n, int N, long long x, long long y) const {
  if (n > N) throw std::domain_error("cond: n > N");
  check_horizon(N);
  if (x < 0 || y < 0) return 0.0;
  const double px = psi(x, N);
  if (px <= 0.0) throw std::domain_error("cond: psi underflow");
  return half_kernel(n, x, y) * psi(y, N - n) / px;
}

ArrayXd KernelWorkspace::cond_row(int n, int N, long long x) const {
  if (n > N) throw std::domain_error("cond_row: n > N");
  check_horizon(N);
  const long long y_max = x + n;
  ArrayXd row = ArrayXd::Zero(y_max + 1);
  const double inv = 1.0 / psi(x, N);
  for (long long y = 0; y <= y_max; ++y) {
    const double hk = half_kernel(n, x, y);
    if (hk != 0.0) row[static_cast<int>(y)] = hk * psi(y, N - n) * inv;
  }
  return row;
}

double KernelWorkspace::up_prob(long long x, int m) const {
  if (m < 1) throw std::out_of_range("up_prob: m < 1");
  check_horizon(m);
  if (x == 0) return 1.0;
  // psi(x+1, m-1) >= psi(x, m) always; the floor keeps the proven inequality
  // p-frak >= 1/2 exact when the true excess is below double resolution
  return 0.5 * std::max(1.0, psi(x + 1, m - 1) / psi(x, m));
}

double KernelWorkspace::down_prob(long long x, int m) const {
  if (m < 1) throw std::out_of_range("down_prob: m < 1");
  check_horizon(m);
  if (x == 0) return 0.0;
  return 0.5 * std::min(1.0, psi(x - 1, m - 1) / psi(x, m));
}

double KernelWorkspace::walk_mean(long long x, int k, int n) const {
  if (k > n) throw std::domain_error("walk_mean: k > n");
  const ArrayXd row = cond_row(k, n, x);
  double mean = 0.0;
  for (int y = 0; y < row.size(); ++y) mean += row[y] * y;
  return mean;
}

double psi_bincdf(long long x, long long n) {
  if (x < 0) throw std::out_of_range("psi_bincdf: x < 0");
  if (x >= n) return 1.0;
  return srw_cdf(n, x) + srw_cdf(n, x + 1) - 1.0;
}

double up_prob_bincdf(long long x, long long m) {
  if (x == 0) return 1.0;
  return 0.5 * std::max(1.0, psi_bincdf(x + 1, m - 1) / psi_bincdf(x, m));
}

std::string AuditGrid::describe() const {
  std::string s = "x<=" + std::to_string(x_max) + ",n<=" + std::to_string(n_max) +
                  ",N<=" + std::to_string(N_max) + ",a={";
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a_values[i]);
  }
  s += "},b=" + std::to_string(b) + ",p=" + std::to_string(p) +
       ",K=" + std::to_string(K);
  return s;
}

namespace {

struct MaxTracker {
  double value = 0.0;
  long long points = 0;
  void feed(double r) {
    ++points;
    if (std::isfinite(r) && r > value) value = r;
  }
  void merge(const MaxTracker& o) {
    points += o.points;
    if (o.value > value) value = o.value;
  }
};

// Partition an outer loop of size `count` across workers, merge trackers by
// max (order-independent, so the result is worker-count invariant).
MaxTracker run_audit(long long count, int workers,
                     const std::function<void(long long, MaxTracker&)>& body) {
  const int w = workers < 1 ? 1 : workers;
  std::vector<MaxTracker> local(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), w,
               [&](std::size_t i) { body(static_cast<long long>(i), local[i]); });
  MaxTracker total;
  for (const auto& t : local) total.merge(t);
  return total;
}

double envelope_exp(double a, double K, long long x, int n) {
  return std::exp(a * static_cast<double>(x) + K * a * a * static_cast<double>(n));
}

}  // namespace

std::vector<std::string> audit_bound_names() {
  return {"ohgod", "mass",        "macky",      "wconc", "fetiz",
          "dack",  "spatem_spat", "spatem_tem", "sqrtgr"};
}

BoundAuditReport audit_bound(const KernelWorkspace& ws, const std::string& bound_name,
                             const AuditGrid& g, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  MaxTracker worst;
  const int n_max = std::min(g.n_max, ws.horizon_max());
  const int N_max = std::min(g.N_max, ws.horizon_max());

  if (bound_name == "ohgod") {
    worst = run_audit(n_max, workers, [&](long long ni, MaxTracker& t) {
      const int n = static_cast<int>(ni) + 1;
      if (n > n_max) return;
      for (long long x = 0; x <= g.x_max; ++x)
        for (long long y = 0; y <= g.x_max; ++y) {
          const double k = ws.half_kernel(n, x, y);
          if (k == 0.0) continue;
          const double env = std::min(1.0 / std::sqrt(n + 1.0),
                                      (x + 1.0) / (n + 1.0)) *
                             std::exp(-g.b * std::fabs(double(x - y)) / std::sqrt(double(n)));
          t.feed(k / env);
        }
    });
  } else if (bound_name == "mass") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      for (long long x = 0; x <= g.x_max; ++x) {
        const double env = (x + 1.0) / (x + 1.0 + std::sqrt(double(N)));
        const double ps = ws.psi(x, N);
        t.feed(ps / env);
        t.feed(env / ps);
      }
    });
  } else if (bound_name == "macky") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      for (int n = 0; n <= std::min(n_max, N); ++n)
        for (long long x = 0; x <= g.x_max; ++x) {
          const ArrayXd row = ws.cond_row(n, N, x);
          for (double a : g.a_values) {
            double lhs = 0.0;
            for (int y = 0; y < row.size(); ++y)
              lhs += row[y] * std::exp(a * y);
            t.feed(lhs / envelope_exp(a, g.K, x, n));
          }
        }
    });
  } else if (bound_name == "wconc") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      for (int n = 1; n <= std::min(n_max, N); ++n)
        for (long long x = 0; x <= g.x_max; ++x) {
          const ArrayXd row = ws.cond_row(n, N, x);
          for (int y = 0; y < row.size(); ++y) {
            if (row[y] == 0.0) continue;
            const double env =
                std::exp(-g.b * std::fabs(double(x - y)) / std::sqrt(double(n))) /
                std::sqrt(n + 1.0);
            t.feed(row[y] / env);
          }
        }
    });
  } else if (bound_name == "fetiz") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      for (int n = 0; n <= std::min(n_max, N); ++n)
        for (long long x = 0; x <= g.x_max; ++x) {
          const ArrayXd row = ws.cond_row(n, N, x);
          for (double a : g.a_values) {
            double lhs = 0.0;
            for (int y = 0; y < row.size(); ++y)
              lhs += std::pow(row[y], g.p) * std::exp(a * y);
            const double rhs = std::pow(n + 1.0, -(g.p - 1) / 2.0) *
                               envelope_exp(a, g.K, x, n);
            t.feed(std::pow(lhs / rhs, 1.0 / g.p));
          }
        }
    });
  } else if (bound_name == "dack") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      for (int n = 0; n < N && n <= n_max; ++n)
        for (long long x = 0; x <= g.x_max; ++x) {
          const ArrayXd row = ws.cond_row(n, N, x);
          for (int y = 0; y + 1 < row.size(); ++y) {
            const double diff = std::fabs(row[y + 1] - row[y]);
            const double env =
                std::sqrt((N + 1.0) / (N - n + 1.0)) / (n + 1.0);
            t.feed(diff / env);
          }
        }
    });
  } else if (bound_name == "spatem_spat") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      const int p = g.p;
      for (int n = 1; n <= std::min(n_max, N); ++n)
        for (long long x = 0; x <= g.x_max; ++x)
          for (long long y = x + 1; y <= g.x_max; ++y) {
            const ArrayXd rx = ws.cond_row(n, N, x);
            const ArrayXd ry = ws.cond_row(n, N, y);
            for (double a : g.a_values) {
              double lhs = 0.0;
              const int zmax = static_cast<int>(std::max(rx.size(), ry.size()));
              for (int z = 0; z < zmax; ++z) {
                const double vx = z < rx.size() ? rx[z] : 0.0;
                const double vy = z < ry.size() ? ry[z] : 0.0;
                lhs += std::pow(vx - vy, 2 * p) * std::exp(a * z);
              }
              const double rhs =
                  std::exp(a * (x + y) + g.K * a * a * n) *
                  (std::pow(double(n), 0.5 - 1.5 * p) +
                   std::pow(a, p) * std::pow(double(n), 0.5 - p)) *
                  std::pow(double(y - x), p);
              t.feed(lhs / rhs);
            }
          }
    });
  } else if (bound_name == "spatem_tem") {
    worst = run_audit(N_max, workers, [&](long long Ni, MaxTracker& t) {
      const int N = static_cast<int>(Ni) + 1;
      if (N > N_max) return;
      const int p = g.p;
      for (int n = 2; n <= std::min(n_max, N); ++n)
        for (int m = 1; m < n; ++m)
          for (long long x = 0; x <= g.x_max; ++x) {
            const ArrayXd r1 = ws.cond_row(m, N - n + m, x);
            const ArrayXd r2 = ws.cond_row(n, N, x);
            for (double a : g.a_values) {
              double lhs = 0.0;
              const int zmax = static_cast<int>(std::max(r1.size(), r2.size()));
              for (int z = 0; z < zmax; ++z) {
                const double v1 = z < r1.size() ? r1[z] : 0.0;
                const double v2 = z < r2.size() ? r2[z] : 0.0;
                lhs += std::pow(v1 - v2, 2 * p) * std::exp(a * z);
              }
              const double rhs =
                  std::exp(2.0 * a * x + g.K * a * a * n) *
                  (std::pow(double(m), 0.5 - 1.5 * p) +
                   std::pow(a, p) * std::pow(double(m), 0.5 - p)) *
                  std::pow(double(n - m), 0.5 * p);
              t.feed(lhs / rhs);
            }
          }
    });
  } else if (bound_name == "sqrtgr") {
    worst = run_audit(n_max, workers, [&](long long ni, MaxTracker& t) {
      const int n = static_cast<int>(ni) + 1;
      if (n > n_max) return;
      for (int k = 1; k <= n; ++k)
        for (long long x = 0; x <= g.x_max; ++x) {
          const double excess = ws.walk_mean(x, k, n) - static_cast<double>(x);
          t.feed(excess / std::sqrt(double(k)));
        }
    });
  } else {
    throw std::invalid_argument("audit_bound: unknown bound '" + bound_name + "'");
  }

  const auto t1 = std::chrono::steady_clock::now();
  BoundAuditReport rep;
  rep.bound_name = bound_name;
  rep.grid_spec = g.describe();
  rep.worst_ratio = worst.value;
  rep.implied_constant = worst.value;
  rep.points = worst.points;
  rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

}  // namespace meander
