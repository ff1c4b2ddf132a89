#include "rklab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rklab/kernels.hpp"

namespace rklab {

namespace {

std::vector<double> derivative_table(const CylinderFunction& f) {
  std::vector<double> d(table_size(f.depth() + 1));
  kernels::omp::derivative(f.values(), f.depth(), d);
  return d;
}

struct Sups {
  MeanChain chain;
  double signed_mean = 0.0;
};

// Pointwise means of (a, b) = (|d[0u]|, |d[1u]|), maximised over u. max is
// exact in floating point, so the reduction order does not matter.
Sups mean_sups(const std::vector<double>& d, int depth) {
  const std::int64_t half = std::int64_t{1} << depth;
  double mn = 0.0, hm = 0.0, gm = 0.0, am = 0.0, qm = 0.0, sup = 0.0, sm = 0.0;
#pragma omp parallel for schedule(static) reduction(max : mn, hm, gm, am, qm, sup, sm) \
    if (static_cast<std::size_t>(half) >= kernels::kParallelThreshold)
  for (std::int64_t u = 0; u < half; ++u) {
    const double g0 = d[static_cast<std::size_t>(u)];
    const double g1 = d[static_cast<std::size_t>(half + u)];
    const double a = std::abs(g0);
    const double b = std::abs(g1);
    mn = std::max(mn, std::min(a, b));
    hm = std::max(hm, a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0);
    gm = std::max(gm, std::sqrt(a * b));
    am = std::max(am, 0.5 * (a + b));
    qm = std::max(qm, std::sqrt(0.5 * (a * a + b * b)));
    sup = std::max(sup, std::max(a, b));
    sm = std::max(sm, std::abs(0.5 * (g0 + g1)));
  }
  return {{mn, hm, gm, am, qm, sup}, sm};
}

}  // namespace

SeminormReport commutator_seminorm(const CylinderFunction& f, const Exponents& p) {
  const auto d = derivative_table(f);
  const kernels::ArgMax best = kernels::omp::backward_mean_sup(d, f.depth(), p);
  return {best.value, Word(best.index, f.depth()), p, mean_sups(d, f.depth()).chain};
}

SeminormBounds seminorm_bounds(const CylinderFunction& f, const Exponents& p) {
  const auto d = derivative_table(f);
  const Sups s = mean_sups(d, f.depth());
  // f - Lf at a depth-k word u equals the signed mean (g_0(u) + g_1(u)) / 2
  const double value = kernels::omp::backward_mean_sup(d, f.depth(), p).value;
  return {s.chain.derivative_sup, value, s.signed_mean, s.chain};
}

Admissibility check_admissible(const CylinderFunction& f, const Exponents& p, double slack) {
  const SeminormReport r = commutator_seminorm(f, p);
  const double dsup = r.chain.derivative_sup;
  return {r.value <= 1.0 + slack, r.value,       1.0 - r.value, dsup,
          dsup <= 1.0 + slack,    dsup <= p.root_of_two() + slack};
}

}  // namespace rklab
