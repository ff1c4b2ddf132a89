#pragma once

#include <cstdint>
#include <vector>

namespace rklab {

/// Min-cost flow with nonnegative integer arc costs, solved by the
/// primal-dual method: Dijkstra on reduced costs raises the node
/// potentials, then a Dinic blocking flow saturates the zero-reduced-cost
/// arcs. With unit costs the number of phases is bounded by the longest
/// shortest path, so transport on the word graph needs at most k + 1.
class MinCostFlow {
 public:
  using Amount = std::int64_t;
  static constexpr Amount kInfinite = Amount{1} << 62;

  explicit MinCostFlow(int nodes);

  /// Returns the arc id; the paired residual arc is id ^ 1.
  int add_arc(int from, int to, Amount capacity, Amount cost);

  struct Result {
    Amount flow = 0;
    Amount cost = 0;
    int phases = 0;
  };

  /// Sends up to `demand` units from s to t at minimum cost.
  Result solve(int s, int t, Amount demand);

  Amount flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc ^ 1)].cap; }
  /// Node potentials after solve(): every residual arc u -> v satisfies
  /// cost + pi[u] - pi[v] >= 0, with equality on arcs that carry flow.
  const std::vector<Amount>& potential() const { return pi_; }
  int node_count() const { return static_cast<int>(head_.size()); }

 private:
  struct Arc {
    int to;
    int next;
    Amount cap;
    Amount cost;
  };

  Amount reduced(const Arc& a, int from) const { return a.cost + pi_[from] - pi_[a.to]; }
  bool dijkstra(int s, int t);
  Amount blocking_flow(int s, int t, Amount limit);

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<Amount> pi_;
  std::vector<Amount> dist_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

}  // namespace rklab
