#include "meander/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meander/parallel.hpp"

namespace meander {

namespace {

void enumerate_rec(PathSample& path, int remaining,
                   const std::function<void(const PathSample&)>& visit) {
  if (remaining == 0) {
    visit(path);
    return;
  }
  const long long s = path.sites.back();
  if (s >= 1) {
    path.sites.push_back(s - 1);
    enumerate_rec(path, remaining - 1, visit);
    path.sites.pop_back();
  }
  path.sites.push_back(s + 1);
  enumerate_rec(path, remaining - 1, visit);
  path.sites.pop_back();
}

}  // namespace

void enumerate_paths(long long x, int n,
                     const std::function<void(const PathSample&)>& visit) {
  if (x < 0 || n < 0) throw std::invalid_argument("enumerate_paths: bad arguments");
  if (n > kEnumerationCap)
    throw std::invalid_argument(
        "enumerate_paths: n exceeds the exhaustive cap of 24 (path count grows "
        "like 2^n); use sample_path instead");
  PathSample path;
  path.start = x;
  path.horizon = n;
  path.sites.reserve(n + 1);
  path.sites.push_back(x);
  enumerate_rec(path, n, visit);
}

std::vector<PathSample> enumerate_paths(long long x, int n) {
  std::vector<PathSample> out;
  enumerate_paths(x, n, [&](const PathSample& p) { out.push_back(p); });
  return out;
}

long long count_paths(long long x, int n) {
  if (x < 0 || n < 0) throw std::invalid_argument("count_paths: bad arguments");
  // integer DP, exact for any n (counts fit in 64 bits far beyond the cap)
  std::vector<long long> cur(static_cast<std::size_t>(x + n + 2), 0);
  cur[static_cast<std::size_t>(x)] = 1;
  std::vector<long long> next(cur.size(), 0);
  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0LL);
    for (std::size_t y = 0; y < cur.size(); ++y) {
      if (cur[y] == 0) continue;
      if (y >= 1) next[y - 1] += cur[y];
      if (y + 1 < next.size()) next[y + 1] += cur[y];
    }
    cur.swap(next);
  }
  long long total = 0;
  for (long long c : cur) total += c;
  return total;
}

double up_probability(const KernelWorkspace& ws, long long x, int m) {
  if (m <= ws.horizon_max()) return ws.up_prob(x, m);
  return up_prob_bincdf(x, m);
}

PathSample sample_path(const KernelWorkspace& ws, long long x, int n, RngStream& rng) {
  PathSample path;
  path.start = x;
  path.horizon = n;
  path.sites.reserve(n + 1);
  path.sites.push_back(x);
  long long s = x;
  for (int k = 0; k < n; ++k) {
    const double pu = up_probability(ws, s, n - k);
    s += (rng.uniform() <= pu) ? 1 : -1;
    path.sites.push_back(s);
  }
  return path;
}

namespace {

// Shared-uniform monotone step: position z moves up iff u <= up-prob(z, m).
// Up-probabilities are non-increasing in z (Lemma mono), so neighboring
// components stay at distance exactly 1; ties join the up-step branch.
long long monotone_step(const KernelWorkspace& ws, long long z, int m, double u) {
  return (u <= up_probability(ws, z, m)) ? z + 1 : z - 1;
}

}  // namespace

CoupledPair sample_coupled_pair(const KernelWorkspace& ws, long long x, int n,
                                RngStream& rng) {
  CoupledPair pair;
  pair.lower.start = x;
  pair.lower.horizon = n;
  pair.upper.start = x + 1;
  pair.upper.horizon = n;
  pair.lower.sites.reserve(n + 1);
  pair.upper.sites.reserve(n + 1);
  long long lo = x, hi = x + 1;
  pair.lower.sites.push_back(lo);
  pair.upper.sites.push_back(hi);
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    const int m = n - k;
    lo = monotone_step(ws, lo, m, u);
    hi = monotone_step(ws, hi, m, u);
    pair.lower.sites.push_back(lo);
    pair.upper.sites.push_back(hi);
  }
  return pair;
}

std::vector<PathSample> sample_coupled_family(const KernelWorkspace& ws, long long x,
                                              int count, int n, RngStream& rng) {
  std::vector<PathSample> family(static_cast<std::size_t>(count));
  std::vector<long long> pos(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    family[i].start = x + i;
    family[i].horizon = n;
    family[i].sites.reserve(n + 1);
    family[i].sites.push_back(x + i);
    pos[i] = x + i;
  }
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    const int m = n - k;
    for (int i = 0; i < count; ++i) {
      pos[i] = monotone_step(ws, pos[i], m, u);
      family[i].sites.push_back(pos[i]);
    }
  }
  return family;
}

double martingale_value(const KernelWorkspace& ws, long long x, int i, int n) {
  if (i > n) throw std::domain_error("martingale_value: i > n");
  const int rem = n - i;
  const double ps = (rem <= ws.horizon_max()) ? ws.psi(x, rem) : psi_bincdf(x, rem);
  return -1.0 + (static_cast<double>(x) + 1.0) / ps;
}

double path_probability(const KernelWorkspace& ws, const PathSample& path) {
  double prob = 1.0;
  for (int k = 0; k < path.horizon; ++k) {
    const int m = path.horizon - k;
    const long long s = path.sites[k];
    if (path.sites[k + 1] == s + 1) {
      prob *= (s == 0) ? 1.0 : 0.5 * ws.psi(s + 1, m - 1) / ws.psi(s, m);
    } else {
      prob *= 0.5 * ws.psi(s - 1, m - 1) / ws.psi(s, m);
    }
  }
  return prob;
}

TailCurve concentration_tail(long long x, int n, int k, const std::vector<double>& u_grid,
                             long long samples, std::uint64_t master_seed, int workers) {
  if (samples < 1000)
    throw std::invalid_argument("concentration_tail: need at least 1e3 samples");
  if (k > n) throw std::domain_error("concentration_tail: k > n");

  // exact tables when affordable, binomial-cdf route at large horizons
  const int table_cap = 1024;
  KernelWorkspace ws(std::min(n, table_cap));

  std::vector<long long> sups(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), workers, [&](std::size_t i) {
    RngStream rng(master_seed, static_cast<std::uint64_t>(i));
    long long s = x;
    long long sup = 0;
    for (int step = 0; step < k; ++step) {
      const double pu = up_probability(ws, s, n - step);
      s += (rng.uniform() <= pu) ? 1 : -1;
      const long long dev = s > x ? s - x : x - s;
      if (dev > sup) sup = dev;
    }
    sups[i] = sup;
  });

  TailCurve curve;
  curve.samples = samples;
  curve.u = u_grid;
  for (double u : u_grid) {
    long long count = 0;
    for (long long sup : sups)
      if (static_cast<double>(sup) > u) ++count;
    const double p = static_cast<double>(count) / static_cast<double>(samples);
    curve.p_hat.push_back(p);
    curve.stderr_.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(samples)));
    curve.exceedances.push_back(count);
    curve.flagged.push_back(count < 10);
  }
  return curve;
}

std::vector<double> exact_tail(long long x, int n, int k,
                               const std::vector<double>& u_grid) {
  std::vector<long long> exceed(u_grid.size(), 0);
  long long total = 0;
  enumerate_paths(x, n, [&](const PathSample& p) {
    ++total;
    long long sup = 0;
    for (int i = 0; i <= k; ++i) {
      const long long dev = p.sites[i] > x ? p.sites[i] - x : x - p.sites[i];
      if (dev > sup) sup = dev;
    }
    for (std::size_t j = 0; j < u_grid.size(); ++j)
      if (static_cast<double>(sup) > u_grid[j]) ++exceed[j];
  });
  std::vector<double> out(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j)
    out[j] = static_cast<double>(exceed[j]) / static_cast<double>(total);
  return out;
}

}  // namespace meander
