#ifndef MEANDER_POLYMER_HPP
#define MEANDER_POLYMER_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "meander/discrete.hpp"
#include "meander/rng.hpp"
#include "meander/stats.hpp"

namespace meander {

using Eigen::ArrayXXd;

enum class Region { bulk, boundary_row, diagonal };

// ---------------------------------------------------------------------------
// Quadrant (Feynman-Kac) objects.
//
// The walk runs over elapsed antidiagonal times m = 0..horizon; bulk disorder
// omega(i, y) is attached to (time i, height y) with i = 1..horizon, and the
// boundary row carries its own independent weights for the initial data
//   z0(x) = prod_{i=0}^{x} (1 + beta * boundary(i)).
// Bulk and boundary come from disjoint RNG streams, so the bulk can be
// regenerated without disturbing z0.
// ---------------------------------------------------------------------------

struct WeightSpec {
  enum class Kind { zero, standard_normal, boundary_moments, inverse_gamma };
  Kind kind = Kind::standard_normal;
  double mu = 0.0;     // boundary_moments: E[w] = mu * n^{-1/4}
  double sigma = 1.0;  // boundary_moments: sd
  double theta = 0.0;  // inverse_gamma shape
  double scale = 1.0;  // inverse_gamma scale
  long long n_scale = 0;

  double draw(RngStream& rng) const;
  void validate() const;  // theta <= 2 with finite-variance demand -> error
};

struct QuadrantEnvironment {
  int horizon = 0;  // number of walk steps
  int y_max = 0;
  ArrayXXd bulk;          // (horizon+1) x (y_max+1); row i is the time-i sheet
  Eigen::ArrayXd boundary;  // boundary-row weights 0..y_max
  std::uint64_t master_seed = 0;
  std::uint64_t replicate = 0;
};

QuadrantEnvironment generate_quadrant_environment(const WeightSpec& bulk_spec,
                                                  const WeightSpec& boundary_spec,
                                                  int horizon, int y_max,
                                                  std::uint64_t master_seed,
                                                  std::uint64_t replicate);

// Redraws only the bulk sheet (fresh replicate index); boundary weights and
// hence z0 stay bit-identical.
void regenerate_bulk(QuadrantEnvironment& env, const WeightSpec& bulk_spec,
                     std::uint64_t new_replicate);

// z0(x) as cumulative products of the boundary weights.
Eigen::ArrayXd boundary_data(const QuadrantEnvironment& env, double beta);

// Backward DP field V(m, x) = E_x^{horizon-m}[ z0(S) prod (1 + beta w) ] with
// time-shifted weights; V(0, x) is the partition value started from x. One
// pass serves every start site.
struct QuadrantField {
  ArrayXXd v;  // (horizon+1) x (y_max+1)
  double value(long long x) const { return v(0, static_cast<int>(x)); }
};

QuadrantField quadrant_partition_dp(const KernelWorkspace& ws,
                                    const QuadrantEnvironment& env,
                                    const Eigen::ArrayXd& z0, double beta);

// Max over all lattice points of the Duhamel (mild-equation) residual
//   V(m,x) - sum_y pfrak_{M-m}^{M-m}(x,y) z0(y)
//          - beta sum_{i=m+1}^{M} sum_y pfrak_{i-m}^{M-m}(x,y) w(i,y) V(i,y).
double quadrant_mild_residual(const KernelWorkspace& ws,
                              const QuadrantEnvironment& env,
                              const Eigen::ArrayXd& z0, double beta,
                              const QuadrantField& field, int x_probe_max = -1);

// Path-enumeration oracle (horizon <= enumeration cap).
double quadrant_enumeration_value(const KernelWorkspace& ws,
                                  const QuadrantEnvironment& env,
                                  const Eigen::ArrayXd& z0, double beta, long long x);

// Order-resolved chaos expansion: terms[r] is the degree-r component of the
// partition value at start x; summing all horizon+1 orders reproduces the DP
// value exactly by multilinearity.
std::vector<double> chaos_expansion_terms(const KernelWorkspace& ws,
                                          const QuadrantEnvironment& env,
                                          const Eigen::ArrayXd& z0, double beta,
                                          long long x, int max_order);

// Squared-kernel chain sums of the chaos norm bound: Q_r for r = 0..max_order
// with weight e^{a x_r} on the last marked site. The bound predicts
// Q_r <= B C^r n^{r/2} / (r/2)!.
struct ChaosNormAudit {
  std::vector<double> q;
  double implied_B = 0.0;
  double implied_C = 0.0;
};
ChaosNormAudit chaos_norm_audit(const KernelWorkspace& ws, int horizon, long long x,
                                double a, int max_order);

// ---------------------------------------------------------------------------
// Octant (lattice point-weight) objects.
// ---------------------------------------------------------------------------

struct OctantEnvironment {
  int extent = 0;  // weights on lattice points (u,v), 0 <= v <= u <= extent
  ArrayXXd zeta;   // (extent+1) x (extent+1), lower triangle meaningful
  std::uint64_t master_seed = 0;
  std::uint64_t replicate = 0;
};

Region octant_region(long long u, long long v);

// Cor. cor weight tables: which = 1 puts the special shape on the diagonal,
// which = 2 on the boundary row. Generic shape 2 sqrt(n), special shape
// sqrt(n) + A + 1/2, common scale (2 sqrt(n) - 1)/2.
OctantEnvironment generate_octant_loggamma(int extent, long long n, double A, int which,
                                           std::uint64_t master_seed,
                                           std::uint64_t replicate);

// Theorem-thm2 form: zeta(u,v) = (1 + n^{-1/4} w)/2 off the boundary row and
// 1 + n^{-1/4} w on it (the 2^{-#} mass factor absorbed into the weights).
OctantEnvironment generate_octant_thm2(int extent, long long n,
                                       const WeightSpec& bulk_spec,
                                       const WeightSpec& boundary_spec,
                                       std::uint64_t master_seed,
                                       std::uint64_t replicate);

// Up-right point-product recursion Z(u,v) = zeta(u,v) (Z(u-1,v) + Z(u,v-1))
// restricted to the octant; full table so endpoints can be interpolated.
ArrayXXd octant_partition_table(const OctantEnvironment& env);
double octant_partition_dp(const OctantEnvironment& env, long long p, long long q);

// Count of admissible up-right paths (all-ones weights oracle).
long long octant_path_count(long long p, long long q);

// thm2 rescaling: bilinear interpolation of Z_n over (q, d) = (nT, sqrt(n) X)
// and division by 2 Phi((X + n^{-1/2})/sqrt(T)) - 1, evaluated without
// cancellation at X = 0.
struct RescaledPartition {
  double value = 0.0;
  double raw = 0.0;
  double normalization = 0.0;
};
RescaledPartition rescaled_partition(const ArrayXXd& table, long long n, double T,
                                     double X);
double thm2_normalization(long long n, double T, double X);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct LogGammaResult {
  TestReport ks;
  TestReport moments;
  std::vector<double> z1, z2;
};
LogGammaResult loggamma_identity_experiment(long long n, double T, double A,
                                            long long samples,
                                            std::uint64_t master_seed, int workers);

// Full-horizon vs T_n-stopped Feynman-Kac values on one shared environment,
// both walk-expectations taken exactly by forward DP; the stopped value
// absorbs mass on the descending line S_i = horizon - i (first hit) and the
// remainder at the horizon. Returns (full, stopped).
std::pair<double, double> reduction_values(const KernelWorkspace& ws,
                                           const QuadrantEnvironment& env,
                                           const Eigen::ArrayXd& z0, double beta,
                                           long long x);

struct ReductionRow {
  long long n = 0;
  double mean_abs_error = 0.0;
  double stderr_ = 0.0;
};
std::vector<ReductionRow> octant_reduction_experiment(long long x,
                                                      const std::vector<long long>& n_ladder,
                                                      long long samples,
                                                      std::uint64_t master_seed,
                                                      int workers);

// Quadrant FK value at macroscopic coordinates, bilinear in (time, space):
// Z_n(nT, sqrt(n) X) with disorder scale n. Uses one DP per bracketing
// horizon; the returned evaluator serves any X.
struct MacroPartition {
  double at(double X) const;
  long long n = 0;
  double T = 0.0;
  ArrayXXd v0;  // row 0 of the two bracketing DP fields
  double time_frac = 0.0;
};
MacroPartition macro_partition(const KernelWorkspace& ws,
                               const QuadrantEnvironment& env,
                               const Eigen::ArrayXd& z0, double beta, long long n,
                               double T);

struct HolderAuditRow {
  long long n = 0;
  double T = 0.0, X = 0.0, S = 0.0, Y = 0.0;
  double moment_ratio = 0.0;  // ||dZ||_p / |dX|^{theta/2} (or temporal analogue)
  bool temporal = false;
};
std::vector<HolderAuditRow> holder_moment_audit(const std::vector<long long>& n_ladder,
                                                const std::vector<std::array<double, 4>>& pairs,
                                                int p, double theta, long long samples,
                                                std::uint64_t master_seed, int workers);

}  // namespace meander

#endif  // MEANDER_POLYMER_HPP
