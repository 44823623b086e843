#ifndef MEANDER_SHE_HPP
#define MEANDER_SHE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "meander/rng.hpp"

namespace meander {

using Eigen::ArrayXd;
using Eigen::MatrixXd;

struct SheGridSpec {
  double dt = 0.01;
  double dx = 0.1;
  int n_t = 100;  // times T_m = m dt, m = 0..n_t
  int n_x = 51;   // sites X_i = i dx, i = 0..n_x-1 (X = 0 column included)
};

// Immutable kernel tables shared by every realization.
//  dir[l]   - Dirichlet kernel matrix P^Dir_{l dt}(X_i, X_j), l = 1..n_t
//  gtab(j,y) - 2 Phi(Y_y / sqrt(j dt)) - 1 (the t=T row j=0 is all ones)
//  htab(m,i) - 2 Phi(X_i / sqrt(m dt)) - 1
//  etab(l,y) - exp(-Y_y^2 / (2 l dt))   (for the X = 0 kernel rows)
struct SheOperators {
  SheGridSpec g;
  ArrayXd x;
  std::vector<MatrixXd> dir;
  MatrixXd gtab, htab, etab;
};

SheOperators make_she_operators(const SheGridSpec& g);

// White-noise sheet: xi(y, j) ~ N(0, 1/(dt dx)) iid, column j = time S_j.
MatrixXd sample_white_noise(const SheGridSpec& g, RngStream& rng);

// Truncated chaos / Picard solution of the normalized half-space SHE in its
// direct Duhamel form with exact inhomogeneous meander kernels:
//   u_0(T,X)    = sum_Y P_T^T(X,Y) f(Y) dx
//   u_{k+1}(T,X)= sum_{S<T} sum_Y P_{T-S}^T(X,Y) u_k(S,Y) xi(S,Y) dx dt.
// orders[k] is u_k on the (X, T) grid; total is their sum.
struct SheFields {
  std::vector<MatrixXd> orders;
  MatrixXd total;
};
SheFields picard_solve(const SheOperators& ops, const ArrayXd& f, const MatrixXd& xi,
                       int K, int workers = 1);

// Dirichlet-boundary solve on the same noise: deterministic term evaluated
// directly with P^Dir_{T_m}, stochastic orders marched with the one-step
// kernel P^Dir_dt. An independent discretization route; agrees with the
// meander solve through the kernel relation up to quadrature error.
MatrixXd dirichlet_solve(const SheOperators& ops, const ArrayXd& f, const MatrixXd& xi,
                         int K);

// Deterministic second-moment recursion (Ito isometry on the lattice):
// orders[k](i,m) = E[u_k(T_m, X_i)^2] for the given deterministic f.
SheFields she_second_moment(const SheOperators& ops, const ArrayXd& f, int K,
                            int workers = 1);

struct RelationMismatch {
  double max_abs = 0.0;   // max |Z*(2Phi-1) - Z_dir| over the window
  double scale = 0.0;     // max |Z_dir| over the window
  double relative = 0.0;
};
RelationMismatch dirichlet_relation_mismatch(const SheOperators& ops,
                                             const SheFields& meander,
                                             const MatrixXd& z_dir, double t_min,
                                             double x_max);

// Z_dir(T_final, X) / (X sqrt(2/(pi T)) * Z(T_final, 0)) for each X.
std::vector<double> derivative_limit_ratios(const SheOperators& ops,
                                            const SheFields& meander,
                                            const MatrixXd& z_dir,
                                            const std::vector<double>& X_list);

// Monte Carlo mean of the solution at the final time against the u_0
// quadrature; per-realization streams indexed by replicate id.
struct SheMeanResult {
  ArrayXd x;
  ArrayXd mc_mean;
  ArrayXd mc_stderr;
  ArrayXd u0_final;
  long long realizations = 0;
};
SheMeanResult she_mean_experiment(const SheOperators& ops, const ArrayXd& f, int K,
                                  long long realizations, std::uint64_t master_seed,
                                  int workers, int block = 64);

// Geometric-Brownian initial data e^{sigma W_X + (mu - sigma^2/2) X} realized
// on the x-grid (sigma = 0 gives the deterministic e^{mu X}).
ArrayXd sample_geometric_bm_initial(const SheGridSpec& g, double mu, double sigma,
                                    RngStream& rng);

// Moment comparison between the rescaled polymer and the SPDE at one
// space-time point, deterministic boundary data with drift mu.
struct PolymerSheRow {
  long long n = 0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double mc_var = 0.0;
  double lattice_mean = 0.0;  // exact disorder-average at this n
};
struct PolymerSheReport {
  std::vector<PolymerSheRow> rows;
  double quad_mean = 0.0;   // int P_T^T(X,Y) e^{mu Y} dY
  double chaos2_var = 0.0;  // lattice chaos variance through order 2
  double T = 0.0, X = 0.0, mu = 0.0;
};
PolymerSheReport polymer_she_convergence(const std::vector<long long>& n_ladder,
                                         double T, double X, double mu,
                                         long long samples,
                                         std::uint64_t master_seed, int workers);

}  // namespace meander

#endif  // MEANDER_SHE_HPP
