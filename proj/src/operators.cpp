#include "rklab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rklab/kernels.hpp"

namespace rklab {

namespace {

void check_room_to_grow(int depth, const char* what) {
  if (depth + 1 > kMaxDepth) {
    throw std::out_of_range(std::string(what) + ": result depth " + std::to_string(depth + 1) +
                            " exceeds the " + std::to_string(kMaxDepth) + "-coordinate cap");
  }
}

}  // namespace

CylinderFunction apply_koopman(const CylinderFunction& f) {
  check_room_to_grow(f.depth(), "apply_koopman");
  std::vector<double> out(table_size(f.depth() + 1));
  kernels::omp::koopman(f.values(), f.depth(), out);
  return CylinderFunction(f.depth() + 1, std::move(out));
}

CylinderFunction apply_ruelle(const CylinderFunction& f) {
  if (f.depth() == 1) return CylinderFunction::constant(0.5 * (f[0] + f[1]));
  std::vector<double> out(table_size(f.depth() - 1));
  kernels::omp::ruelle(f.values(), f.depth(), out);
  return CylinderFunction(f.depth() - 1, std::move(out));
}

CylinderFunction discrete_derivative(const CylinderFunction& f) {
  check_room_to_grow(f.depth(), "discrete_derivative");
  std::vector<double> out(table_size(f.depth() + 1));
  kernels::omp::derivative(f.values(), f.depth(), out);
  return CylinderFunction(f.depth() + 1, std::move(out));
}

CylinderFunction conditional_expectation(const CylinderFunction& f, int n) {
  if (n < 0 || n > f.depth()) {
    throw std::out_of_range("conditional_expectation: n = " + std::to_string(n) +
                            " outside [0, " + std::to_string(f.depth()) + "]");
  }
  if (n == 0) return f;
  std::vector<double> out(table_size(f.depth()));
  kernels::omp::conditional_expectation(f.values(), f.depth(), n, out);
  return CylinderFunction(f.depth(), std::move(out));
}

CylinderMeasure pushforward_shift(const CylinderMeasure& mu) {
  if (mu.depth() < 2) {
    throw std::out_of_range("pushforward_shift: depth-1 measure would push forward to depth 0");
  }
  const std::size_t half = table_size(mu.depth() - 1);
  std::vector<double> w(half);
  for (std::size_t v = 0; v < half; ++v) w[v] = mu[v] + mu[half + v];
  return make_trusted_measure(mu.depth() - 1, std::move(w));
}

double lp_norm(const CylinderFunction& f, const CylinderMeasure& mu, const Exponents& p) {
  const int d = std::max(f.depth(), mu.depth());
  const CylinderFunction lf = f.lift(d);
  const CylinderMeasure lm = mu.at_depth(d);
  const std::size_t n = table_size(d);
  if (p.p_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lm[i] > 0.0) m = std::max(m, std::abs(lf[i]));
    }
    return m;
  }
  const double pp = p.p();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lm[i] > 0.0) s += std::pow(std::abs(lf[i]), pp) * lm[i];
  }
  return std::pow(s, 1.0 / pp);
}

}  // namespace rklab
