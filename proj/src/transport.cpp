#include "rklab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rklab/min_cost_flow.hpp"
#include "rklab/wordgraph.hpp"

namespace rklab {

namespace {

using Amount = MinCostFlow::Amount;

// Largest-remainder rounding of a probability vector onto kFlowGrid; the
// result sums to the grid exactly. Ties go to the smaller index.
std::vector<Amount> quantize(std::span<const double> w) {
  const auto grid = static_cast<Amount>(kFlowGrid);
  std::vector<Amount> q(w.size());
  std::vector<double> frac(w.size());
  Amount total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double scaled = w[i] * kFlowGrid;
    q[i] = static_cast<Amount>(std::floor(scaled));
    frac[i] = scaled - std::floor(scaled);
    total += q[i];
  }
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  Amount missing = grid - total;
  for (std::size_t i = 0; missing > 0; i = (i + 1) % order.size(), --missing) ++q[order[i]];
  // weights summing slightly above 1: take back from the smallest remainders
  for (std::size_t i = 0; missing < 0; i = (i + 1) % order.size()) {
    Amount& x = q[order[order.size() - 1 - i]];
    if (x > 0) --x, ++missing;
  }
  return q;
}

void check_transport_depth(int k) {
  if (k < 1 || k > kMaxTransportDepth) {
    throw std::out_of_range("transport depth " + std::to_string(k) + " outside [1, " +
                            std::to_string(kMaxTransportDepth) + "]");
  }
}

void validate(const TransportInstance& inst) {
  const auto m = static_cast<std::size_t>(inst.cost.rows());
  const auto n = static_cast<std::size_t>(inst.cost.cols());
  if (m == 0 || n == 0) throw std::invalid_argument("transport: empty cost matrix");
  if (inst.mu.size() != m || inst.nu.size() != n) {
    throw std::invalid_argument("transport: marginal lengths do not match the cost matrix");
  }
  if (m * n > 1000000) throw std::invalid_argument("transport: more than 10^6 cells");
  if ((inst.cost.array() < 0.0).any() || !inst.cost.allFinite()) {
    throw std::invalid_argument("transport: costs must be finite and nonnegative");
  }
  double sm = 0.0, sn = 0.0;
  for (double x : inst.mu) {
    if (!(x >= 0.0)) throw std::invalid_argument("transport: negative marginal weight");
    sm += x;
  }
  for (double x : inst.nu) {
    if (!(x >= 0.0)) throw std::invalid_argument("transport: negative marginal weight");
    sn += x;
  }
  if (std::abs(sm - 1.0) > 1e-9 || std::abs(sn - 1.0) > 1e-9) {
    throw std::invalid_argument("transport: marginals must each sum to 1");
  }
}

struct Simplex {
  Eigen::MatrixXd flow;
  std::vector<double> u, v;
  long pivots = 0;
};

// Transportation simplex on a basis kept as a spanning tree of the
// bipartite row/column graph (exactly m + n - 1 cells, degenerate ones included).
Simplex solve_transportation(const TransportInstance& inst) {
  validate(inst);
  const int m = static_cast<int>(inst.cost.rows());
  const int n = static_cast<int>(inst.cost.cols());
  const Eigen::MatrixXd& c = inst.cost;
  const double eps = 1e-12 * (1.0 + c.maxCoeff());

  Simplex s;
  s.flow = Eigen::MatrixXd::Zero(m, n);
  std::vector<std::pair<int, int>> basis;
  {
    std::vector<double> sup(inst.mu), dem(inst.nu);
    int i = 0, j = 0;
    while (true) {
      const double x = std::min(sup[i], dem[j]);
      s.flow(i, j) = x;
      basis.emplace_back(i, j);
      sup[i] -= x;
      dem[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if ((sup[i] <= dem[j] && i < m - 1) || j == n - 1) ++i; else ++j;
    }
  }

  s.u.assign(m, 0.0);
  s.v.assign(n, 0.0);
  std::vector<std::vector<int>> adj(m + n);  // node -> basis slots
  std::vector<int> parent_slot(m + n), order;
  std::vector<char> seen(m + n);

  auto other = [&](int slot, int node) {
    const auto [bi, bj] = basis[static_cast<std::size_t>(slot)];
    return node < m ? m + bj : bi;
  };
  // BFS over the basis tree from `root`, recording the slot used to reach each node.
  auto walk = [&](int root) {
    for (auto& a : adj) a.clear();
    for (int b = 0; b < static_cast<int>(basis.size()); ++b) {
      adj[basis[b].first].push_back(b);
      adj[m + basis[b].second].push_back(b);
    }
    std::fill(seen.begin(), seen.end(), 0);
    order.assign(1, root);
    seen[root] = 1;
    parent_slot[root] = -1;
    for (std::size_t h = 0; h < order.size(); ++h) {
      const int x = order[h];
      for (int b : adj[x]) {
        const int y = other(b, x);
        if (seen[y]) continue;
        seen[y] = 1;
        parent_slot[y] = b;
        order.push_back(y);
      }
    }
  };

  while (true) {
    walk(0);
    s.u[0] = 0.0;
    for (std::size_t h = 1; h < order.size(); ++h) {
      const int y = order[h];
      const auto [bi, bj] = basis[parent_slot[y]];
      if (y < m) s.u[y] = c(bi, bj) - s.v[bj]; else s.v[y - m] = c(bi, bj) - s.u[bi];
    }

    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i) {
      for (int j = 0; j < n; ++j) {
        if (c(i, j) - s.u[i] - s.v[j] < -eps) {
          ei = i, ej = j;
          break;
        }
      }
    }
    if (ei < 0) break;

    // the cycle is the entering cell plus the tree path from row ei to column ej
    walk(ei);
    std::vector<int> path;
    for (int y = m + ej; y != ei;) {
      const int b = parent_slot[y];
      path.push_back(b);
      y = other(b, y);
    }
    std::reverse(path.begin(), path.end());  // now starts at row ei; odd positions lose mass

    int leave = -1;
    double theta = 0.0;
    for (std::size_t q = 0; q < path.size(); q += 2) {
      const auto [bi, bj] = basis[path[q]];
      const double f = s.flow(bi, bj);
      const long key = static_cast<long>(bi) * n + bj;
      if (leave < 0 || f < theta ||
          (f == theta && key < static_cast<long>(basis[leave].first) * n + basis[leave].second)) {
        leave = path[q];
        theta = f;
      }
    }
    for (std::size_t q = 0; q < path.size(); ++q) {
      const auto [bi, bj] = basis[path[q]];
      s.flow(bi, bj) += (q % 2 == 0) ? -theta : theta;
    }
    s.flow(ei, ej) += theta;
    s.flow(basis[leave].first, basis[leave].second) = 0.0;
    basis[leave] = {ei, ej};
    ++s.pivots;
  }
  return s;
}

}  // namespace

GraphTransport wasserstein_graph(const CylinderMeasure& mu, const CylinderMeasure& nu, int k) {
  check_transport_depth(k);
  const CylinderMeasure a = mu.at_depth(k);
  const CylinderMeasure b = nu.at_depth(k);
  const std::vector<Amount> qa = quantize(a.weights());
  const std::vector<Amount> qb = quantize(b.weights());

  const WordGraph g(k);
  const int size = static_cast<int>(g.size());
  const int s = size, t = size + 1;
  MinCostFlow flow(size + 2);
  for (int u = 0; u < size; ++u) {
    for (std::uint64_t v : g.neighbors(static_cast<std::uint64_t>(u))) {
      flow.add_arc(u, static_cast<int>(v), MinCostFlow::kInfinite, 1);
    }
  }
  Amount demand = 0;
  for (int u = 0; u < size; ++u) {
    const Amount d = qa[static_cast<std::size_t>(u)] - qb[static_cast<std::size_t>(u)];
    if (d > 0) {
      flow.add_arc(s, u, d, 0);
      demand += d;
    } else if (d < 0) {
      flow.add_arc(u, t, -d, 0);
    }
  }
  const MinCostFlow::Result r = flow.solve(s, t, demand);
  if (r.flow != demand) throw std::logic_error("wasserstein_graph: flow did not route all supply");

  const auto& pi = flow.potential();
  std::vector<double> f(static_cast<std::size_t>(size));
  double value = 0.0;
  for (int u = 0; u < size; ++u) {
    f[static_cast<std::size_t>(u)] = static_cast<double>(pi[0] - pi[static_cast<std::size_t>(u)]);
    value += f[static_cast<std::size_t>(u)] * (a[static_cast<std::size_t>(u)] - b[static_cast<std::size_t>(u)]);
  }

  GraphTransport out;
  out.depth = k;
  out.value = value;
  out.primal = static_cast<double>(r.cost) / kFlowGrid;
  out.certificate_gap = std::abs(out.primal - value);
  out.potential = CylinderFunction(k, std::move(f));
  out.phases = r.phases;
  return out;
}

WassersteinSequence wasserstein_dinfty(const CylinderMeasure& mu, const CylinderMeasure& nu, int kmax) {
  check_transport_depth(kmax);
  WassersteinSequence seq;
  for (int k = 1; k <= kmax; ++k) {
    seq.values.push_back(wasserstein_graph(mu, nu, k).value);
    if (k > 1 && seq.values[k - 1] < seq.values[k - 2] - 1e-9) seq.nondecreasing = false;
  }
  const int first = kmax / 2;  // 0-based start of the second half
  const int count = kmax - first;
  if (count >= 2) {
    double mx = 0.0, my = 0.0;
    for (int i = first; i < kmax; ++i) mx += i + 1, my += seq.values[i];
    mx /= count;
    my /= count;
    double sxy = 0.0, sxx = 0.0;
    for (int i = first; i < kmax; ++i) {
      sxy += (i + 1 - mx) * (seq.values[i] - my);
      sxx += (i + 1 - mx) * (i + 1 - mx);
    }
    seq.slope = sxy / sxx;
  }
  seq.divergent = seq.slope >= 0.5;
  return seq;
}

TransportPlan transport_lp(const TransportInstance& inst) {
  const Simplex s = solve_transportation(inst);
  return {s.flow, (s.flow.array() * inst.cost.array()).sum(), s.pivots};
}

KantorovichDual kantorovich_dual(const TransportInstance& inst) {
  const Simplex s = solve_transportation(inst);
  const auto m = static_cast<Eigen::Index>(inst.mu.size());
  const auto n = static_cast<Eigen::Index>(inst.nu.size());
  KantorovichDual d;
  d.a = s.u;
  // c-transform: the tightest b for the simplex multipliers a, feasible by construction
  d.b.assign(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    double best = inst.cost(0, j) - d.a[0];
    for (Eigen::Index i = 1; i < m; ++i) best = std::min(best, inst.cost(i, j) - d.a[static_cast<std::size_t>(i)]);
    d.b[static_cast<std::size_t>(j)] = best;
  }
  for (Eigen::Index i = 0; i < m; ++i) d.value += d.a[static_cast<std::size_t>(i)] * inst.mu[static_cast<std::size_t>(i)];
  for (Eigen::Index j = 0; j < n; ++j) d.value += d.b[static_cast<std::size_t>(j)] * inst.nu[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d.max_violation = std::max(
          d.max_violation, d.a[static_cast<std::size_t>(i)] + d.b[static_cast<std::size_t>(j)] - inst.cost(i, j));
    }
  }
  d.primal = (s.flow.array() * inst.cost.array()).sum();
  d.gap = d.primal - d.value;
  return d;
}

Eigen::MatrixXd graph_cost_matrix(int k) {
  check_transport_depth(k);
  const auto d = all_pairs_distances(k);
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << k);
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = d[static_cast<std::size_t>(i * n + j)];
  }
  return c;
}

}  // namespace rklab
