#include "meander/continuum.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "meander/special.hpp"

namespace meander {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double heat_kernel(double t, double x) {
  if (t <= 0.0) throw std::domain_error("heat_kernel: t <= 0");
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(kTwoPi * t);
}

double dirichlet_kernel(double t, double X, double Y) {
  if (t <= 0.0) throw std::domain_error("dirichlet_kernel: t <= 0");
  // P_t(X-Y) - P_t(X+Y) = -e^{-(X-Y)^2/2t} expm1(-2XY/t) / sqrt(2 pi t)
  const double d = X - Y;
  return -std::exp(-d * d / (2.0 * t)) * std::expm1(-2.0 * X * Y / t) /
         std::sqrt(kTwoPi * t);
}

double meander_kernel(double t, double T, double X, double Y) {
  if (t > T) throw std::domain_error("meander_kernel: t > T");
  if (t <= 0.0) throw std::domain_error("meander_kernel: t <= 0");
  if (X < 0.0 || Y < 0.0) throw std::domain_error("meander_kernel: negative site");

  const bool terminal = (t == T);
  if (X == 0.0) {
    if (terminal) return (Y / T) * std::exp(-Y * Y / (2.0 * T));
    return Y * std::sqrt(T / (t * t * t)) * std::exp(-Y * Y / (2.0 * t)) *
           two_phi_minus_one(Y / std::sqrt(T - t));
  }
  // 2 Phi(X/sqrt(T)) - 1 degrades as 0/0 near the wall; below 1e-4 sqrt(T)
  // switch to the first-order expansion, which matches the X = 0 branch.
  const double denom = (X < 1e-4 * std::sqrt(T))
                           ? X * std::sqrt(2.0 / (3.14159265358979323846 * T))
                           : two_phi_minus_one(X / std::sqrt(T));
  const double dir = dirichlet_kernel(t, X, Y);
  if (terminal) return dir / denom;
  return dir * two_phi_minus_one(Y / std::sqrt(T - t)) / denom;
}

double meander_kernel(const MeanderKernelParams& p, double Y) {
  return meander_kernel(p.t, p.T, p.X, Y);
}

namespace {
double cutoff_of(const MeanderKernelParams& p) {
  return p.quad_cutoff > 0.0 ? p.quad_cutoff : p.X + 10.0 * std::sqrt(p.T);
}
}  // namespace

double meander_kernel_mass(const MeanderKernelParams& p) {
  const double cut = cutoff_of(p);
  const int panels = std::max(64, static_cast<int>(cut / p.quad_step));
  return simpson([&](double y) { return meander_kernel(p, y); }, 0.0, cut, panels);
}

double meander_semigroup_quadrature(double s, double t, double T, double X, double Z,
                                    double cutoff, double tol) {
  if (!(0.0 < s && s < t && t <= T))
    throw std::domain_error("meander_semigroup_quadrature: need 0 < s < t <= T");
  auto f = [&](double y) {
    return meander_kernel(s, T, X, y) * meander_kernel(t - s, T - s, y, Z);
  };
  return simpson_auto(f, 0.0, cutoff, tol, 256);
}

namespace {

struct ScaledRows {
  long long nt = 0, NT = 0;
  ArrayXd p_nt;      // whole-line row at nt
  ArrayXd psi_rest;  // psi row at NT - nt
  ArrayXd psi_full;  // psi row at NT
};

ScaledRows build_scaled_rows(long long n, double t, double T) {
  ScaledRows r;
  r.nt = 2 * static_cast<long long>(std::floor(t * static_cast<double>(n)));
  r.NT = 2 * static_cast<long long>(std::floor(T * static_cast<double>(n)));
  if (r.nt > r.NT) throw std::domain_error("scaled_discrete_kernel: t > T");
  r.p_nt = whole_line_row(static_cast<int>(r.nt));
  r.psi_rest = psi_row_from(whole_line_row(static_cast<int>(r.NT - r.nt)));
  r.psi_full = psi_row_from(whole_line_row(static_cast<int>(r.NT)));
  return r;
}

double psi_from_row(const ArrayXd& row, long long x) {
  const long long n = row.size() - 1;
  if (x >= n) return 1.0;
  return row[static_cast<int>(x)];
}

double p_from_row(const ArrayXd& row, long long x) {
  const long long n = row.size() - 1;
  const long long ax = x < 0 ? -x : x;
  if (ax > n || ((n + ax) & 1LL) != 0) return 0.0;
  return row[static_cast<int>(ax)];
}

double scaled_value(const ScaledRows& r, long long n, long long xs, long long ys) {
  const double half = p_from_row(r.p_nt, xs - ys) - p_from_row(r.p_nt, xs + ys + 2);
  const double denom = psi_from_row(r.psi_full, xs);
  return std::sqrt(static_cast<double>(n) / 2.0) * half *
         psi_from_row(r.psi_rest, ys) / denom;
}

long long even_floor_site(long long n, double v) {
  return 2 * static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n) / 2.0) * v));
}

}  // namespace

double scaled_discrete_kernel(long long n, double t, double T, double X, double Y) {
  const ScaledRows rows = build_scaled_rows(n, t, T);
  return scaled_value(rows, n, even_floor_site(n, X), even_floor_site(n, Y));
}

ArrayXd scaled_discrete_kernel_grid(long long n, double t, double T, double X,
                                    const std::vector<double>& Y) {
  const ScaledRows rows = build_scaled_rows(n, t, T);
  const long long xs = even_floor_site(n, X);
  ArrayXd out(static_cast<int>(Y.size()));
  for (std::size_t i = 0; i < Y.size(); ++i)
    out[static_cast<int>(i)] = scaled_value(rows, n, xs, even_floor_site(n, Y[i]));
  return out;
}

std::vector<KernelConvergenceRow> kernel_convergence_study(
    const std::vector<long long>& n_ladder, double t, double T, double X,
    double y_max, double y_step, double a) {
  std::vector<KernelConvergenceRow> out;
  const int m = static_cast<int>(std::floor(y_max / y_step)) + 1;
  std::vector<double> ygrid(m);
  for (int i = 0; i < m; ++i) ygrid[i] = i * y_step;

  ArrayXd limit(m);
  for (int i = 0; i < m; ++i)
    limit[i] = (ygrid[i] == 0.0 && X == 0.0) ? 0.0 : meander_kernel(t, T, X, ygrid[i]);

  for (long long n : n_ladder) {
    const ScaledRows rows = build_scaled_rows(n, t, T);
    const long long xs = even_floor_site(n, X);
    KernelConvergenceRow row;
    row.n = n;
    double l1 = 0.0, l2 = 0.0, sup = 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = scaled_value(rows, n, xs, even_floor_site(n, ygrid[i]));
      const double d = std::fabs(v - limit[i]);
      const double w = std::exp(a * ygrid[i]) * y_step;
      sup = std::max(sup, d);
      l1 += d * w;
      l2 += d * d * w;
    }
    row.sup_error = sup;
    row.l1_error = l1;
    row.l2_error = l2;
    // Riemann mass: even sites are spaced dY = sqrt(2/n) apart, and the
    // conditioned row sums to 1, so the density-times-spacing bookkeeping
    // must return exactly 1
    const double dy = std::sqrt(2.0 / static_cast<double>(n));
    double mass = 0.0;
    for (long long ys = 0; ys <= xs + rows.nt; ys += 2)
      mass += scaled_value(rows, n, xs, ys);
    row.lattice_mass = mass * dy;
    out.push_back(row);
  }
  return out;
}

BoundAuditReport quadrature_bound_audit(const std::string& which,
                                        const std::vector<double>& t_grid,
                                        const std::vector<double>& T_grid,
                                        const std::vector<double>& X_grid,
                                        const std::vector<double>& a_grid,
                                        double cutoff) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  long long points = 0;
  auto feed = [&](double r) {
    ++points;
    if (std::isfinite(r) && r > worst) worst = r;
  };

  for (double T : T_grid)
    for (double t : t_grid) {
      if (t > T || t <= 0.0) continue;
      for (double X : X_grid)
        for (double a : a_grid) {
          const double cut =
              cutoff > 0.0 ? cutoff : X + 10.0 * std::sqrt(T) + 2.0 * a * T;
          if (which == "easy") {
            const double lhs = simpson_auto(
                [&](double z) { return meander_kernel(t, T, X, z) * std::exp(a * z); },
                0.0, cut, 1e-9, 256);
            feed(lhs / std::exp(a * X));
          } else if (which == "dik") {
            const double lhs = simpson_auto(
                [&](double z) {
                  const double k = meander_kernel(t, T, X, z);
                  return k * k * std::exp(a * z);
                },
                0.0, cut, 1e-9, 256);
            feed(lhs * std::sqrt(t) / std::exp(a * X));
          } else if (which == "spat") {
            for (double Y : X_grid) {
              if (Y <= X) continue;
              const double lhs = simpson_auto(
                  [&](double z) {
                    const double d =
                        meander_kernel(t, T, X, z) - meander_kernel(t, T, Y, z);
                    return d * d * std::exp(a * z);
                  },
                  0.0, cut + Y, 1e-9, 256);
              feed(lhs * std::sqrt(t) / (std::exp(a * (X + Y)) * (Y - X)));
            }
          } else if (which == "tem") {
            for (double s : t_grid) {
              if (s >= t || s <= 0.0) continue;
              const double lhs = simpson_auto(
                  [&](double z) {
                    const double d = meander_kernel(s, T - t + s, X, z) -
                                     meander_kernel(t, T, X, z);
                    return d * d * std::exp(a * z);
                  },
                  0.0, cut, 1e-9, 256);
              feed(lhs * std::sqrt(s) /
                   (std::exp(2.0 * a * X) * std::sqrt(t - s)));
            }
          } else {
            throw std::invalid_argument("quadrature_bound_audit: unknown '" + which +
                                        "'");
          }
        }
    }

  const auto t1 = std::chrono::steady_clock::now();
  BoundAuditReport rep;
  rep.bound_name = which;
  rep.grid_spec = "t(" + std::to_string(t_grid.size()) + "),T(" +
                  std::to_string(T_grid.size()) + "),X(" +
                  std::to_string(X_grid.size()) + "),a(" +
                  std::to_string(a_grid.size()) + ")";
  rep.worst_ratio = worst;
  rep.implied_constant = worst;
  rep.points = points;
  rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

}  // namespace meander
