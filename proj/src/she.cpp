#include "meander/she.hpp"

#include <cmath>
#include <stdexcept>

#include "meander/continuum.hpp"
#include "meander/polymer.hpp"
#include "meander/parallel.hpp"
#include "meander/special.hpp"

namespace meander {

SheOperators make_she_operators(const SheGridSpec& g) {
  // The lattice quadrature must resolve the one-step kernel: its width
  // sqrt(dt) has to cover the spacing dx, so dt cannot be far below dx^2.
  if (g.dt < g.dx * g.dx / 8.0)
    throw std::invalid_argument("make_she_operators: dt too small for dx (need dt >= dx^2/8)");
  SheOperators ops;
  ops.g = g;
  ops.x = ArrayXd::LinSpaced(g.n_x, 0.0, g.dx * (g.n_x - 1));
  ops.dir.resize(g.n_t + 1);
  for (int l = 1; l <= g.n_t; ++l) {
    MatrixXd d(g.n_x, g.n_x);
    const double t = l * g.dt;
    for (int i = 0; i < g.n_x; ++i)
      for (int j = 0; j < g.n_x; ++j)
        d(i, j) = dirichlet_kernel(t, ops.x[i], ops.x[j]);
    ops.dir[l] = std::move(d);
  }
  ops.gtab = MatrixXd::Ones(g.n_t + 1, g.n_x);
  ops.htab = MatrixXd::Zero(g.n_t + 1, g.n_x);
  ops.etab = MatrixXd::Zero(g.n_t + 1, g.n_x);
  for (int m = 1; m <= g.n_t; ++m) {
    const double t = m * g.dt;
    for (int y = 0; y < g.n_x; ++y) {
      ops.gtab(m, y) = two_phi_minus_one(ops.x[y] / std::sqrt(t));
      ops.htab(m, y) = two_phi_minus_one(ops.x[y] / std::sqrt(t));
      ops.etab(m, y) = std::exp(-ops.x[y] * ops.x[y] / (2.0 * t));
    }
  }
  return ops;
}

MatrixXd sample_white_noise(const SheGridSpec& g, RngStream& rng) {
  MatrixXd xi(g.n_x, g.n_t);
  const double s = 1.0 / std::sqrt(g.dt * g.dx);
  for (int j = 0; j < g.n_t; ++j)
    for (int y = 0; y < g.n_x; ++y) xi(y, j) = s * rng.normal();
  return xi;
}

namespace {

// u_0(T_m, X) by direct kernel quadrature; column m = 0 is f itself.
MatrixXd deterministic_term_meander(const SheOperators& ops, const ArrayXd& f) {
  const auto& g = ops.g;
  MatrixXd u0(g.n_x, g.n_t + 1);
  u0.col(0) = f.matrix();
  for (int m = 1; m <= g.n_t; ++m) {
    const double T = m * g.dt;
    Eigen::VectorXd acc = ops.dir[m] * f.matrix() * g.dx;
    for (int i = 1; i < g.n_x; ++i) u0(i, m) = acc(i) / ops.htab(m, i);
    double wall = 0.0;  // terminal-branch X = 0 kernel: (Y/T) e^{-Y^2/2T}
    for (int y = 0; y < g.n_x; ++y)
      wall += ops.x[y] / T * ops.etab(m, y) * f[y];
    u0(0, m) = wall * g.dx;
  }
  return u0;
}

MatrixXd deterministic_term_dirichlet(const SheOperators& ops, const ArrayXd& f) {
  const auto& g = ops.g;
  MatrixXd v0(g.n_x, g.n_t + 1);
  v0.col(0) = f.matrix();
  for (int m = 1; m <= g.n_t; ++m) {
    v0.col(m) = ops.dir[m] * f.matrix() * g.dx;
    v0(0, m) = 0.0;
  }
  return v0;
}

// One chaos order of the direct meander convolution. prev is u_k, xi the
// noise; returns u_{k+1}. Targets m are independent, so they parallelize.
MatrixXd convolve_order(const SheOperators& ops, const MatrixXd& prev,
                        const MatrixXd& xi, int workers) {
  const auto& g = ops.g;
  const double w = g.dx * g.dt;
  // base_j = u_k(:, j) .* xi(:, j) * dx dt ; wgt_j = g_j .* base_j
  MatrixXd wgt(g.n_x, g.n_t);
  for (int j = 0; j < g.n_t; ++j)
    wgt.col(j) = prev.col(j).cwiseProduct(xi.col(j)) * w;
  for (int j = 1; j < g.n_t; ++j)
    wgt.col(j) = wgt.col(j).cwiseProduct(ops.gtab.row(j).transpose());

  MatrixXd out = MatrixXd::Zero(g.n_x, g.n_t + 1);
  parallel_for(static_cast<std::size_t>(g.n_t), workers, [&](std::size_t mi) {
    const int m = static_cast<int>(mi) + 1;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(g.n_x);
    for (int j = 0; j < m; ++j) acc.noalias() += ops.dir[m - j] * wgt.col(j);
    const double Tm = m * g.dt;
    for (int i = 1; i < g.n_x; ++i) out(i, m) = acc(i) / ops.htab(m, i);
    // X = 0 row with the explicit wall kernel Y sqrt(T/s^3) e^{-Y^2/2s} g_j(Y)
    double wall = 0.0;
    for (int j = 0; j < m; ++j) {
      const int l = m - j;
      const double s = l * g.dt;
      const double pref = std::sqrt(Tm / (s * s * s));
      double dot = 0.0;
      for (int y = 0; y < g.n_x; ++y)
        dot += ops.x[y] * ops.etab(l, y) * wgt(y, j);
      wall += pref * dot;
    }
    out(0, m) = wall;
  });
  return out;
}

}  // namespace

SheFields picard_solve(const SheOperators& ops, const ArrayXd& f, const MatrixXd& xi,
                       int K, int workers) {
  if (f.size() != ops.g.n_x) throw std::invalid_argument("picard_solve: bad f size");
  SheFields out;
  out.orders.push_back(deterministic_term_meander(ops, f));
  for (int k = 0; k < K; ++k)
    out.orders.push_back(convolve_order(ops, out.orders.back(), xi, workers));
  out.total = out.orders[0];
  for (int k = 1; k <= K; ++k) out.total += out.orders[k];
  return out;
}

MatrixXd dirichlet_solve(const SheOperators& ops, const ArrayXd& f, const MatrixXd& xi,
                         int K) {
  const auto& g = ops.g;
  std::vector<MatrixXd> v;
  v.push_back(deterministic_term_dirichlet(ops, f));
  for (int k = 1; k <= K; ++k) {
    MatrixXd cur = MatrixXd::Zero(g.n_x, g.n_t + 1);
    for (int m = 0; m < g.n_t; ++m) {
      Eigen::VectorXd load =
          cur.col(m) + v[k - 1].col(m).cwiseProduct(xi.col(m)) * g.dt;
      cur.col(m + 1) = ops.dir[1] * load * g.dx;
      cur(0, m + 1) = 0.0;
    }
    v.push_back(std::move(cur));
  }
  MatrixXd total = v[0];
  for (int k = 1; k <= K; ++k) total += v[k];
  return total;
}

SheFields she_second_moment(const SheOperators& ops, const ArrayXd& f, int K,
                            int workers) {
  const auto& g = ops.g;
  SheFields out;
  {
    MatrixXd u0 = deterministic_term_meander(ops, f);
    out.orders.push_back(u0.cwiseProduct(u0));
  }
  const double w = g.dx * g.dt;
  for (int k = 0; k < K; ++k) {
    const MatrixXd& prev = out.orders.back();
    MatrixXd wgt(g.n_x, g.n_t);
    for (int j = 0; j < g.n_t; ++j) {
      wgt.col(j) = prev.col(j) * w;
      if (j >= 1)
        wgt.col(j) = wgt.col(j)
                         .cwiseProduct(ops.gtab.row(j).transpose())
                         .cwiseProduct(ops.gtab.row(j).transpose());
    }
    MatrixXd next = MatrixXd::Zero(g.n_x, g.n_t + 1);
    parallel_for(static_cast<std::size_t>(g.n_t), workers, [&](std::size_t mi) {
      const int m = static_cast<int>(mi) + 1;
      const double Tm = m * g.dt;
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(g.n_x);
      for (int j = 0; j < m; ++j)
        acc.noalias() += ops.dir[m - j].cwiseProduct(ops.dir[m - j]) * wgt.col(j);
      for (int i = 1; i < g.n_x; ++i)
        next(i, m) = acc(i) / (ops.htab(m, i) * ops.htab(m, i));
      double wall = 0.0;
      for (int j = 0; j < m; ++j) {
        const int l = m - j;
        const double s = l * g.dt;
        const double pref = Tm / (s * s * s);
        double dot = 0.0;
        for (int y = 0; y < g.n_x; ++y) {
          const double ker = ops.x[y] * ops.etab(l, y);
          dot += ker * ker * wgt(y, j);
        }
        wall += pref * dot;
      }
      next(0, m) = wall;
    });
    out.orders.push_back(std::move(next));
  }
  out.total = out.orders[0];
  for (int k = 1; k <= K; ++k) out.total += out.orders[k];
  return out;
}

RelationMismatch dirichlet_relation_mismatch(const SheOperators& ops,
                                             const SheFields& meander,
                                             const MatrixXd& z_dir, double t_min,
                                             double x_max) {
  const auto& g = ops.g;
  RelationMismatch r;
  for (int m = 1; m <= g.n_t; ++m) {
    if (m * g.dt < t_min) continue;
    for (int i = 0; i < g.n_x; ++i) {
      if (ops.x[i] > x_max) break;
      const double h = (i == 0) ? 0.0 : ops.htab(m, i);
      const double a = meander.total(i, m) * h;
      r.max_abs = std::max(r.max_abs, std::fabs(a - z_dir(i, m)));
      r.scale = std::max(r.scale, std::fabs(z_dir(i, m)));
    }
  }
  r.relative = r.scale > 0.0 ? r.max_abs / r.scale : 0.0;
  return r;
}

std::vector<double> derivative_limit_ratios(const SheOperators& ops,
                                            const SheFields& meander,
                                            const MatrixXd& z_dir,
                                            const std::vector<double>& X_list) {
  const auto& g = ops.g;
  const int m = g.n_t;
  const double T = m * g.dt;
  const double wall = meander.total(0, m);
  std::vector<double> out;
  for (double X : X_list) {
    const int i = static_cast<int>(std::llround(X / g.dx));
    if (i <= 0 || i >= g.n_x)
      throw std::invalid_argument("derivative_limit_ratios: X off the grid");
    const double limit = X * std::sqrt(2.0 / (3.14159265358979323846 * T)) * wall;
    out.push_back(z_dir(i, m) / limit);
  }
  return out;
}

SheMeanResult she_mean_experiment(const SheOperators& ops, const ArrayXd& f, int K,
                                  long long realizations, std::uint64_t master_seed,
                                  int workers, int block) {
  const auto& g = ops.g;
  const MatrixXd u0 = deterministic_term_meander(ops, f);
  const double w = g.dx * g.dt;

  // per-realization values of the total field at the final time
  MatrixXd finals(g.n_x, realizations);
  const long long blocks = (realizations + block - 1) / block;

  parallel_for(static_cast<std::size_t>(blocks), workers, [&](std::size_t bi) {
    const long long r0 = static_cast<long long>(bi) * block;
    const int B = static_cast<int>(std::min<long long>(block, realizations - r0));
    // noise for the block
    std::vector<MatrixXd> xi(B);
    for (int b = 0; b < B; ++b) {
      RngStream rng(master_seed, static_cast<std::uint64_t>(r0 + b));
      xi[b] = sample_white_noise(g, rng);
    }
    // orders: field[k][m] is n_x x B
    std::vector<std::vector<MatrixXd>> field(
        K + 1, std::vector<MatrixXd>(g.n_t + 1, MatrixXd::Zero(g.n_x, B)));
    for (int m = 0; m <= g.n_t; ++m)
      for (int b = 0; b < B; ++b) field[0][m].col(b) = u0.col(m);
    std::vector<MatrixXd> wgt(g.n_t, MatrixXd::Zero(g.n_x, B));
    for (int k = 0; k < K; ++k) {
      for (int j = 0; j < g.n_t; ++j) {
        for (int b = 0; b < B; ++b)
          wgt[j].col(b) = field[k][j].col(b).cwiseProduct(xi[b].col(j)) * w;
        if (j >= 1)
          wgt[j] = ops.gtab.row(j).transpose().asDiagonal() * wgt[j];
      }
      for (int m = 1; m <= g.n_t; ++m) {
        MatrixXd acc = MatrixXd::Zero(g.n_x, B);
        for (int j = 0; j < m; ++j) acc.noalias() += ops.dir[m - j] * wgt[j];
        const double Tm = m * g.dt;
        for (int i = 1; i < g.n_x; ++i)
          field[k + 1][m].row(i) = acc.row(i) / ops.htab(m, i);
        Eigen::RowVectorXd wall = Eigen::RowVectorXd::Zero(B);
        for (int j = 0; j < m; ++j) {
          const int l = m - j;
          const double s = l * g.dt;
          const double pref = std::sqrt(Tm / (s * s * s));
          Eigen::RowVectorXd ker(g.n_x);
          for (int y = 0; y < g.n_x; ++y) ker(y) = ops.x[y] * ops.etab(l, y);
          wall += pref * (ker * wgt[j]);
        }
        field[k + 1][m].row(0) = wall;
      }
    }
    for (int b = 0; b < B; ++b) {
      Eigen::VectorXd tot = Eigen::VectorXd::Zero(g.n_x);
      for (int k = 0; k <= K; ++k) tot += field[k][g.n_t].col(b);
      finals.col(r0 + b) = tot;
    }
  });

  SheMeanResult res;
  res.x = ops.x;
  res.realizations = realizations;
  res.mc_mean = ArrayXd::Zero(g.n_x);
  res.mc_stderr = ArrayXd::Zero(g.n_x);
  res.u0_final = u0.col(g.n_t).array();
  for (int i = 0; i < g.n_x; ++i) {
    double s = 0.0, c = 0.0;
    for (long long r = 0; r < realizations; ++r) {
      const double y = finals(i, r) - c;
      const double t = s + y;
      c = (t - s) - y;
      s = t;
    }
    const double mean = s / static_cast<double>(realizations);
    double var = 0.0;
    for (long long r = 0; r < realizations; ++r)
      var += (finals(i, r) - mean) * (finals(i, r) - mean);
    var /= std::max<double>(1.0, static_cast<double>(realizations - 1));
    res.mc_mean[i] = mean;
    res.mc_stderr[i] = std::sqrt(var / static_cast<double>(realizations));
  }
  return res;
}

ArrayXd sample_geometric_bm_initial(const SheGridSpec& g, double mu, double sigma,
                                    RngStream& rng) {
  ArrayXd f(g.n_x);
  double w = 0.0;
  const double sdx = std::sqrt(g.dx);
  for (int i = 0; i < g.n_x; ++i) {
    const double X = i * g.dx;
    f[i] = std::exp(sigma * w + (mu - 0.5 * sigma * sigma) * X);
    w += sdx * rng.normal();
  }
  return f;
}

PolymerSheReport polymer_she_convergence(const std::vector<long long>& n_ladder,
                                         double T, double X, double mu,
                                         long long samples,
                                         std::uint64_t master_seed, int workers) {
  PolymerSheReport rep;
  rep.T = T;
  rep.X = X;
  rep.mu = mu;

  long long max_n = 0;
  for (long long n : n_ladder) max_n = std::max(max_n, n);
  KernelWorkspace ws(static_cast<int>(2 * std::ceil(max_n * T)) + 4);

  for (long long n : n_ladder) {
    const double beta = std::pow(static_cast<double>(n), -0.25);
    const int horizon = static_cast<int>(2 * std::floor(n * T)) + 2;
    const int y_max =
        static_cast<int>(std::sqrt(static_cast<double>(n)) * X) + horizon + 2;
    WeightSpec bulk;  // standard normal
    WeightSpec brow;  // deterministic drift mu n^{-1/4}
    brow.kind = WeightSpec::Kind::boundary_moments;
    brow.mu = mu;
    brow.sigma = 0.0;
    brow.n_scale = n;

    std::vector<double> vals(static_cast<std::size_t>(samples));
    parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t s) {
      const auto env = generate_quadrant_environment(
          bulk, brow, horizon, y_max,
          master_seed ^ (0xABCDULL * static_cast<std::uint64_t>(n)), s);
      const auto z0 = boundary_data(env, beta);
      vals[s] = macro_partition(ws, env, z0, beta, n, T).at(X);
    });
    PolymerSheRow row;
    row.n = n;
    row.mc_mean = mean_of(vals);
    row.mc_var = variance_of(vals);
    row.mc_stderr = std::sqrt(row.mc_var / static_cast<double>(samples));

    // exact disorder mean: the bulk is centered, so only z0 survives;
    // interpolate the two bracketing horizons exactly as macro_partition does
    const double factor = 1.0 + beta * mu * std::pow(static_cast<double>(n), -0.25);
    const double half = static_cast<double>(n) * T;
    const long long h0 = static_cast<long long>(std::floor(half));
    const double tf = half - static_cast<double>(h0);
    const double xs = std::sqrt(static_cast<double>(n)) * X;
    const long long x0 = static_cast<long long>(std::floor(xs));
    const double fx = xs - static_cast<double>(x0);
    auto lattice_mean = [&](int M, long long xx) {
      const ArrayXd row_k = ws.cond_row(M, M, xx);
      double acc = 0.0;
      for (int y = 0; y < row_k.size(); ++y)
        acc += row_k[y] * std::pow(factor, y + 1);
      return acc;
    };
    auto mean_at_time = [&](int M) {
      return (1.0 - fx) * lattice_mean(M, x0) + fx * lattice_mean(M, x0 + 1);
    };
    row.lattice_mean = (1.0 - tf) * mean_at_time(static_cast<int>(2 * h0)) +
                       tf * mean_at_time(static_cast<int>(2 * h0 + 2));
    rep.rows.push_back(row);
  }

  // continuum mean by quadrature
  const double cutoff = X + 12.0 * std::sqrt(T) + 2.0 * mu * T;
  rep.quad_mean = simpson_auto(
      [&](double y) { return meander_kernel(T, T, X, y) * std::exp(mu * y); }, 0.0,
      cutoff, 1e-10, 512);

  // lattice chaos variance through order 2 with f = e^{mu Y}
  SheGridSpec g;
  g.dt = 0.005;
  g.dx = 0.1;
  g.n_t = static_cast<int>(std::llround(T / g.dt));
  g.n_x = static_cast<int>((X + 10.0 * std::sqrt(T)) / g.dx) + 1;
  const auto ops = make_she_operators(g);
  ArrayXd f(g.n_x);
  for (int i = 0; i < g.n_x; ++i) f[i] = std::exp(mu * ops.x[i]);
  const auto m2 = she_second_moment(ops, f, 2, workers);
  const int xi = static_cast<int>(std::llround(X / g.dx));
  rep.chaos2_var = m2.orders[1](xi, g.n_t) + m2.orders[2](xi, g.n_t);
  return rep;
}

}  // namespace meander
