#include "rklab/connes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rklab/kernels.hpp"
#include "rklab/transport.hpp"
#include "rklab/wordgraph.hpp"

namespace rklab {

namespace {

// Per-word constraint values G_u(f) = mean_lambda(|g_0(u)|, |g_1(u)|) with
// g_i(u) = f(u) - f(i u_1..u_{k-1}).
void constraint_values(const std::vector<double>& f, int k, const Exponents& p, std::vector<double>& G) {
  const auto n = static_cast<std::int64_t>(f.size());
  const std::int64_t high = std::int64_t{1} << (k - 1);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= kernels::kParallelThreshold)
  for (std::int64_t u = 0; u < n; ++u) {
    const double fu = f[static_cast<std::size_t>(u)];
    const double g0 = fu - f[static_cast<std::size_t>(u >> 1)];
    const double g1 = fu - f[static_cast<std::size_t>(high | (u >> 1))];
    G[static_cast<std::size_t>(u)] = p.mean(std::abs(g0), std::abs(g1));
  }
}

double dot(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Objective of x after the homogeneous rescaling x / max(1, max_u G_u(x)).
struct Feasible {
  double objective;
  double scale;
};

Feasible feasible_objective(const std::vector<double>& x, const std::vector<double>& G,
                            const std::vector<double>& c) {
  const double level = *std::max_element(G.begin(), G.end());
  const double scale = std::max(1.0, level);
  return {dot(x, c) / scale, scale};
}

void check_connes_depth(int k) {
  if (k < 1 || k > kMaxConnesDepth) {
    throw std::out_of_range("connes depth " + std::to_string(k) + " outside [1, " +
                            std::to_string(kMaxConnesDepth) + "]");
  }
}

}  // namespace

double constraint_level(const CylinderFunction& f, const Exponents& p) {
  std::vector<double> x(f.values().begin(), f.values().end()), G(x.size());
  constraint_values(x, f.depth(), p, G);
  return *std::max_element(G.begin(), G.end());
}

ConnesBracket connes_depth(const CylinderMeasure& mu, const CylinderMeasure& nu, const Exponents& p,
                           int k, long budget, const std::optional<CylinderFunction>& seed) {
  check_connes_depth(k);
  if (budget < 0) throw std::invalid_argument("connes_depth: negative budget");
  CylinderMeasure a = mu.at_depth(k);
  CylinderMeasure b = nu.at_depth(k);

  // Solve in a canonical orientation so (mu, nu) and (nu, mu) give the same bracket.
  const bool swapped = std::lexicographical_compare(b.weights().begin(), b.weights().end(),
                                                    a.weights().begin(), a.weights().end());
  if (swapped) std::swap(a, b);
  const double sign = swapped ? -1.0 : 1.0;

  ConnesBracket out;
  out.depth = k;
  out.exponents = p;
  const GraphTransport flow = wasserstein_graph(a, b, k);
  out.wasserstein = flow.value;
  out.upper = p.root_of_two() * flow.value;
  out.flow_potential = sign * flow.potential;

  if (p.lambda_infinite() || a == b) {
    out.lower = flow.value;
    out.upper = flow.value * p.root_of_two();
    out.witness = out.flow_potential;
    out.exact = true;
    return out;
  }

  const std::size_t n = table_size(k);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] - b[i];

  std::vector<double> x(flow.potential.values().begin(), flow.potential.values().end());
  std::vector<double> G(n), grad(n);
  constraint_values(x, k, p, G);
  Feasible best = feasible_objective(x, G, c);
  std::vector<double> best_f = x;
  for (double& v : best_f) v /= best.scale;

  if (seed) {
    if (seed->depth() > k) throw std::invalid_argument("connes_depth: seed deeper than k");
    const CylinderFunction lifted = seed->lift(k);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = sign * (lifted[i] - lifted[0]);
    constraint_values(y, k, p, G);
    const Feasible fs = feasible_objective(y, G, c);
    if (fs.objective > best.objective) {
      best = fs;
      for (std::size_t i = 0; i < n; ++i) best_f[i] = y[i] / fs.scale;
      x = y;
    }
  }

  const double lambda = p.lambda();
  const double rho = 4.0 * p.root_of_two() * k;
  const double s0 = 0.1 * p.root_of_two();
  const std::size_t high = n >> 1;

  for (long t = 1; t <= budget; ++t) {
    constraint_values(x, k, p, G);
    const Feasible cur = feasible_objective(x, G, c);
    if (cur.objective > best.objective) {
      best = cur;
      for (std::size_t i = 0; i < n; ++i) best_f[i] = x[i] / cur.scale;
    }

    // subgradient of <x, c> - rho * sum_u max(0, G_u(x) - 1)
    grad = c;
    for (std::size_t u = 0; u < n; ++u) {
      if (G[u] <= 1.0) continue;
      const std::size_t nb[2] = {u >> 1, high | (u >> 1)};
      for (int i = 0; i < 2; ++i) {
        const double g = x[u] - x[nb[i]];
        if (g == 0.0) continue;
        const double dg = 0.5 * std::copysign(std::pow(std::abs(g) / G[u], lambda - 1.0), g);
        grad[u] -= rho * dg;
        grad[nb[i]] += rho * dg;
      }
    }
    double norm = 0.0;
    for (double v : grad) norm += v * v;
    norm = std::sqrt(norm);
    out.iterations = t;
    if (norm == 0.0) break;
    const double step = s0 / std::sqrt(static_cast<double>(t)) / norm;
    for (std::size_t i = 0; i < n; ++i) x[i] += step * grad[i];
    const double pin = x[0];
    for (double& v : x) v -= pin;
  }
  constraint_values(x, k, p, G);
  const Feasible last = feasible_objective(x, G, c);
  if (last.objective > best.objective) {
    best = last;
    for (std::size_t i = 0; i < n; ++i) best_f[i] = x[i] / last.scale;
  }

  out.lower = best.objective;
  out.witness = sign * CylinderFunction(k, std::move(best_f));
  return out;
}

std::vector<ConnesBracket> connes_sequence(const CylinderMeasure& mu, const CylinderMeasure& nu,
                                           const Exponents& p, int kmax, long budget) {
  check_connes_depth(kmax);
  std::vector<ConnesBracket> seq;
  std::optional<CylinderFunction> seed;
  for (int k = 1; k <= kmax; ++k) {
    seq.push_back(connes_depth(mu, nu, p, k, budget, seed));
    seed = seq.back().witness;
  }
  return seq;
}

SandwichReport sandwich_check(const CylinderMeasure& mu, const CylinderMeasure& nu, const Exponents& p,
                              int k, long budget) {
  const ConnesBracket br = connes_depth(mu, nu, p, k, budget);
  SandwichReport r;
  r.wasserstein = br.wasserstein;
  r.lower = br.lower;
  r.upper = br.upper;
  r.lower_ok = br.wasserstein <= br.lower + 1e-9;
  r.upper_ok = br.lower <= p.root_of_two() * br.wasserstein + 1e-9;
  r.ratio = br.wasserstein > 0.0 ? br.lower / br.wasserstein : 0.0;
  return r;
}

double orbit_chain_bound(const TailPoint& x, const TailPoint& y, const Exponents& p) {
  const auto meet = d_infty(x, y);
  if (!meet) return std::numeric_limits<double>::infinity();
  return p.root_of_two() * static_cast<double>(meet->distance());
}

}  // namespace rklab
