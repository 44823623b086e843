#ifndef MEANDER_CONTINUUM_HPP
#define MEANDER_CONTINUUM_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "meander/discrete.hpp"

namespace meander {

// Gaussian heat kernel P_t(X) = e^{-X^2/2t}/sqrt(2 pi t)
double heat_kernel(double t, double x);

// Dirichlet half-line kernel P_t(X-Y) - P_t(X+Y), evaluated through expm1 so
// the image cancellation is exact down to X = 0 or Y = 0.
double dirichlet_kernel(double t, double X, double Y);

struct MeanderKernelParams {
  double t = 0.0;          // elapsed time, > 0
  double T = 0.0;          // horizon, >= t; the t == T branch is selected by
                           // exact equality of the supplied parameters
  double X = 0.0;          // start >= 0
  double quad_step = 1e-3;
  double quad_cutoff = 0.0;  // 0 -> X + 10 sqrt(T)
};

// Inhomogeneous meander kernel, all four branches of the definition
// (t<T vs t=T, X>0 vs X=0). For 0 < X < 1e-4 sqrt(T) the normalization
// 2 Phi(X/sqrt(T)) - 1 is replaced by its first-order expansion
// X sqrt(2/(pi T)), which joins the X = 0 branch continuously.
double meander_kernel(const MeanderKernelParams& params, double Y);
double meander_kernel(double t, double T, double X, double Y);

// integral of meander_kernel over Y (should be 1)
double meander_kernel_mass(const MeanderKernelParams& params);

// quadrature check of the semigroup identity
// int P_s^T(X,Y) P_{t-s}^{T-s}(Y,Z) dY  vs  P_t^T(X,Z)
double meander_semigroup_quadrature(double s, double t, double T, double X, double Z,
                                    double cutoff, double tol = 1e-8);

// Scaled discrete kernel of the convergence statement,
//   P_n(t,T;X,Y) = sqrt(n/2) p-frak_{2 floor(tn)}^{2 floor(Tn)}(2 floor(sqrt(n/2) X),
//                                                              2 floor(sqrt(n/2) Y)),
// with all arguments floored to even lattice points.
double scaled_discrete_kernel(long long n, double t, double T, double X, double Y);

// Same quantity over a Y-grid; builds the three kernel rows once.
ArrayXd scaled_discrete_kernel_grid(long long n, double t, double T, double X,
                                    const std::vector<double>& Y);

struct KernelConvergenceRow {
  long long n = 0;
  double sup_error = 0.0;   // max |P_n - P| over the Y grid
  double l1_error = 0.0;    // int |P_n - P| e^{aY} dY
  double l2_error = 0.0;    // int |P_n - P|^2 e^{aY} dY
  double lattice_mass = 0.0;
};

// Discrete-to-continuum study at fixed (t,T,X) over a ladder of n.
std::vector<KernelConvergenceRow> kernel_convergence_study(
    const std::vector<long long>& n_ladder, double t, double T, double X,
    double y_max, double y_step, double a);

// Audits of the continuum kernel integral bounds; which is one of
// easy, dik, spat, tem.
BoundAuditReport quadrature_bound_audit(const std::string& which,
                                        const std::vector<double>& t_grid,
                                        const std::vector<double>& T_grid,
                                        const std::vector<double>& X_grid,
                                        const std::vector<double>& a_grid,
                                        double cutoff = 0.0);

}  // namespace meander

#endif  // MEANDER_CONTINUUM_HPP
