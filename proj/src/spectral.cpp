#include "rklab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rklab/kernels.hpp"
#include "rklab/operators.hpp"

namespace rklab {

namespace {

using Index = std::uint64_t;
constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr double kIterateFloor = 1e-280;

// Strongly connected components of the support graph v -> column(v, i),
// iterative Tarjan. Returns the component id per vertex and the count.
std::pair<std::vector<std::uint32_t>, std::uint32_t> components(const TransferMatrix& T) {
  const Index n = T.size();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<Index> stack;
  std::vector<char> on_stack(n, 0);
  std::uint32_t counter = 0, ncomp = 0;

  struct Frame {
    Index v;
    int next;
  };
  std::vector<Frame> call;
  auto successor = [&](Index v, int i) -> long long {
    const double a = i == 0 ? T.a0[v] : T.a1[v];
    return a > 0.0 ? static_cast<long long>(T.column(v, i)) : -1;
  };

  for (Index root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.next < 2) {
        const long long s = successor(fr.v, fr.next++);
        if (s < 0) continue;
        const auto w = static_cast<Index>(s);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      const Index v = fr.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }
  return {std::move(comp), ncomp};
}

// Shifted power iteration on an irreducible block given by `apply` (y = B x
// on m coordinates). The shift alpha makes B + alpha I primitive; the
// Collatz-Wielandt quotients are shifted back before they are reported.
// Any alpha > 0 keeps the bracket valid, so alpha tracks the current
// growth estimate: a shift near rho damps the peripheral eigenvalues
// without flattening the spectral gap.
template <class Apply>
SpectralResult perron(Index m, double row_max, double tol, long max_iter, Apply apply) {
  SpectralResult r;
  if (row_max == 0.0) return r;
  double alpha = 0.5 * row_max;
  std::vector<double> x(m, 1.0), y(m);
  for (long it = 1; it <= max_iter; ++it) {
    apply(x, y);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, top = 0.0;
    for (Index i = 0; i < m; ++i) {
      y[i] += alpha * x[i];
      const double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      top = std::max(top, y[i]);
    }
    r.bracket_lo = std::max(0.0, lo - alpha);
    r.bracket_hi = std::max(r.bracket_lo, hi - alpha);
    r.iterations = it;
    if (r.bracket_hi - r.bracket_lo <= tol * std::max(1.0, r.bracket_hi)) {
      r.radius = 0.5 * (r.bracket_lo + r.bracket_hi);
      return r;
    }
    // Collatz-Wielandt needs x > 0; the floor keeps tiny Perron entries
    // from underflowing when the weights span many decades
    for (Index i = 0; i < m; ++i) x[i] = std::max(y[i] / top, kIterateFloor);
    const double growth = top - alpha;
    if (growth > 0.0) alpha = std::min(growth, row_max);
  }
  r.converged = false;
  r.radius = 0.5 * (r.bracket_lo + r.bracket_hi);
  return r;
}

void merge(SpectralResult& into, const SpectralResult& part) {
  into.bracket_lo = std::max(into.bracket_lo, part.bracket_lo);
  into.bracket_hi = std::max(into.bracket_hi, part.bracket_hi);
  into.iterations = std::max(into.iterations, part.iterations);
  into.converged = into.converged && part.converged;
}

SpectralResult power_root(SpectralResult r, double lambda) {
  r.radius = std::pow(r.radius, 1.0 / lambda);
  r.bracket_lo = std::pow(r.bracket_lo, 1.0 / lambda);
  r.bracket_hi = std::pow(r.bracket_hi, 1.0 / lambda);
  return r;
}

}  // namespace

TransferMatrix build_transfer(const CylinderFunction& w, const Exponents& p) {
  if (p.lambda_infinite()) {
    throw std::invalid_argument("build_transfer: lambda = inf has no transfer matrix; use max_plus_radius");
  }
  if (w.depth() < 2) return build_transfer(w.lift(2), p);
  const double lambda = p.lambda();
  TransferMatrix T;
  T.depth = w.depth() - 1;
  T.exponents = p;
  const std::size_t n = table_size(T.depth);
  T.a0.resize(n);
  T.a1.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    T.a0[v] = 0.5 * std::pow(std::abs(w[v]), lambda);
    T.a1[v] = 0.5 * std::pow(std::abs(w[n + v]), lambda);
  }
  return T;
}

SpectralResult spectral_radius(const TransferMatrix& T, double tol, long max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_radius: tol must be positive");
  const Index n = T.size();
  const auto [comp, ncomp] = components(T);

  if (ncomp == 1 && n > 1) {
    double row_max = 0.0;
    for (Index v = 0; v < n; ++v) row_max = std::max(row_max, T.a0[v] + T.a1[v]);
    return perron(n, row_max, tol, max_iter, [&](const std::vector<double>& x, std::vector<double>& y) {
      kernels::omp::transfer_apply(T.a0, T.a1, T.depth, x, y);
    });
  }

  std::vector<std::vector<Index>> members(ncomp);
  for (Index v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::vector<Index> local(n);

  SpectralResult total;
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    const auto& vs = members[c];
    if (vs.size() == 1) {
      // a lone vertex contributes only through a self-loop
      const Index v = vs[0];
      double self = 0.0;
      for (int i = 0; i < 2; ++i) {
        if (T.column(v, i) == v) self += i == 0 ? T.a0[v] : T.a1[v];
      }
      merge(total, {self, self, self, 0, true});
      continue;
    }
    for (Index i = 0; i < vs.size(); ++i) local[vs[i]] = i;
    double row_max = 0.0;
    for (Index v : vs) {
      double s = 0.0;
      for (int i = 0; i < 2; ++i) {
        if (comp[T.column(v, i)] == c) s += i == 0 ? T.a0[v] : T.a1[v];
      }
      row_max = std::max(row_max, s);
    }
    const SpectralResult part =
        perron(vs.size(), row_max, tol, max_iter, [&](const std::vector<double>& x, std::vector<double>& y) {
          for (Index i = 0; i < vs.size(); ++i) {
            const Index v = vs[i];
            double s = 0.0;
            for (int b = 0; b < 2; ++b) {
              const Index col = T.column(v, b);
              if (comp[col] == c) s += (b == 0 ? T.a0[v] : T.a1[v]) * x[local[col]];
            }
            y[i] = s;
          }
        });
    merge(total, part);
  }
  total.radius = 0.5 * (total.bracket_lo + total.bracket_hi);
  return total;
}

SpectralResult max_plus_radius(const CylinderFunction& w) {
  if (w.depth() < 2) return max_plus_radius(w.lift(2));
  const int k = w.depth() - 1;
  if (k > kMaxKarpDepth) {
    throw std::out_of_range("max_plus_radius: depth " + std::to_string(k) + " exceeds " +
                            std::to_string(kMaxKarpDepth));
  }
  const Index n = Index{1} << k;
  const double ninf = -std::numeric_limits<double>::infinity();
  // D[t][v]: heaviest log-weight walk of exactly t transitions ending at v
  std::vector<double> D((n + 1) * n, ninf);
  std::fill(D.begin(), D.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
  std::vector<double> lw0(n), lw1(n);
  for (Index v = 0; v < n; ++v) {
    lw0[v] = w[v] != 0.0 ? std::log(std::abs(w[v])) : ninf;
    lw1[v] = w[n + v] != 0.0 ? std::log(std::abs(w[n + v])) : ninf;
  }
  for (Index t = 1; t <= n; ++t) {
    const double* prev = &D[(t - 1) * n];
    double* cur = &D[t * n];
    for (Index v = 0; v < n; ++v) {
      const Index c0 = v >> 1;
      const Index c1 = (n >> 1) | c0;
      double best = ninf;
      if (lw0[v] != ninf && prev[c0] != ninf) best = prev[c0] + lw0[v];
      if (lw1[v] != ninf && prev[c1] != ninf) best = std::max(best, prev[c1] + lw1[v]);
      cur[v] = best;
    }
  }
  double mean = ninf;
  for (Index v = 0; v < n; ++v) {
    const double dn = D[n * n + v];
    if (dn == ninf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < n; ++t) {
      const double dt = D[t * n + v];
      if (dt == ninf) continue;
      worst = std::min(worst, (dn - dt) / static_cast<double>(n - t));
    }
    mean = std::max(mean, worst);
  }
  const double r = mean == ninf ? 0.0 : std::exp(mean);
  return {r, r, r, static_cast<long>(n), true};
}

SpectralResult weighted_koopman_radius(const CylinderFunction& w, const Exponents& p, double tol,
                                       long max_iter) {
  if (p.lambda_infinite()) return max_plus_radius(w);
  return power_root(spectral_radius(build_transfer(w, p), tol, max_iter), p.lambda());
}

SpectralResult commutator_spectral_radius(const CylinderFunction& f, int depth, long iters, double tol) {
  if (depth < f.depth() + 1) {
    throw std::out_of_range("commutator_spectral_radius: depth " + std::to_string(depth) +
                            " is below depth(f) + 1 = " + std::to_string(f.depth() + 1));
  }
  check_depth(depth, "commutator_spectral_radius");
  const CylinderFunction w = discrete_derivative(f).lift(depth);
  const std::size_t n = table_size(depth);
  std::vector<double> x(n), y(n), half(n / 2);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);

  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i] * in[i];
    kernels::omp::ruelle(out, depth, half);
    kernels::omp::koopman(half, depth - 1, out);
    for (std::size_t i = 0; i < n; ++i) out[i] *= w[i];
  };

  SpectralResult r;
  r.converged = false;
  double rq = 0.0;
  for (long it = 1; it <= iters; ++it) {
    apply(x, y);
    double xx = 0.0, xy = 0.0;
    for (std::size_t i = 0; i < n; ++i) xx += x[i] * x[i], xy += x[i] * y[i];
    rq = xy / xx;
    double res = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res += (y[i] - rq * x[i]) * (y[i] - rq * x[i]);
      yy += y[i] * y[i];
    }
    res = std::sqrt(res / xx);
    r.iterations = it;
    r.radius = r.bracket_lo = std::sqrt(std::max(rq, 0.0));
    r.bracket_hi = std::sqrt(std::max(rq, 0.0) + res);
    if (yy == 0.0 || res <= tol * rq) {
      r.converged = true;
      break;
    }
    const double ny = std::sqrt(yy);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  return r;
}

VariationalBound variational_bound(const CylinderFunction& w, const Exponents& p, double tol,
                                   long max_iter) {
  VariationalBound b;
  b.spectral = weighted_koopman_radius(w, p, tol, max_iter);
  b.normalized = b.spectral.radius;
  // printed form: 2^(1/lambda) exp(P/lambda), P = log rho of the matrix without the 1/2
  b.printed = p.lambda_infinite() ? b.normalized
                                  : p.root_of_two() * std::pow(2.0, 1.0 / p.lambda()) * b.normalized;
  return b;
}

}  // namespace rklab
