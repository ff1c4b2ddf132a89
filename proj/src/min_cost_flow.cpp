#include "rklab/min_cost_flow.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace rklab {

MinCostFlow::MinCostFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {
  if (nodes < 2) throw std::invalid_argument("MinCostFlow: need at least two nodes");
}

int MinCostFlow::add_arc(int from, int to, Amount capacity, Amount cost) {
  if (capacity < 0 || cost < 0) throw std::invalid_argument("MinCostFlow: negative capacity or cost");
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[static_cast<std::size_t>(from)], capacity, cost});
  head_[static_cast<std::size_t>(from)] = id;
  arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0, -cost});
  head_[static_cast<std::size_t>(to)] = id + 1;
  return id;
}

bool MinCostFlow::dijkstra(int s, int t) {
  const std::size_t n = head_.size();
  dist_.assign(n, kInfinite);
  using Item = std::pair<Amount, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist_[static_cast<std::size_t>(s)] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist_[static_cast<std::size_t>(u)]) continue;
    for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
      const Arc& a = arcs_[static_cast<std::size_t>(e)];
      if (a.cap == 0) continue;
      const Amount nd = d + reduced(a, u);
      if (nd < dist_[static_cast<std::size_t>(a.to)]) {
        dist_[static_cast<std::size_t>(a.to)] = nd;
        pq.emplace(nd, a.to);
      }
    }
  }
  const Amount dt = dist_[static_cast<std::size_t>(t)];
  if (dt == kInfinite) return false;
  for (std::size_t v = 0; v < n; ++v) pi_[v] += std::min(dist_[v], dt);
  return true;
}

MinCostFlow::Amount MinCostFlow::blocking_flow(int s, int t, Amount limit) {
  const std::size_t n = head_.size();
  auto admissible = [&](int e, int from) {
    const Arc& a = arcs_[static_cast<std::size_t>(e)];
    return a.cap > 0 && reduced(a, from) == 0;
  };

  Amount total = 0;
  std::vector<int> path_arcs, path_nodes;
  while (total < limit) {
    level_.assign(n, -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
        const int v = arcs_[static_cast<std::size_t>(e)].to;
        if (level_[static_cast<std::size_t>(v)] < 0 && admissible(e, u)) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    if (level_[static_cast<std::size_t>(t)] < 0) break;

    cursor_ = head_;
    while (total < limit) {
      path_arcs.clear();
      path_nodes.assign(1, s);
      int u = s;
      bool found = false;
      while (true) {
        if (u == t) {
          found = true;
          break;
        }
        int& c = cursor_[static_cast<std::size_t>(u)];
        while (c != -1) {
          const int v = arcs_[static_cast<std::size_t>(c)].to;
          if (level_[static_cast<std::size_t>(v)] == level_[static_cast<std::size_t>(u)] + 1 && admissible(c, u)) break;
          c = arcs_[static_cast<std::size_t>(c)].next;
        }
        if (c == -1) {
          if (u == s) break;
          level_[static_cast<std::size_t>(u)] = -1;  // dead end for this phase
          path_nodes.pop_back();
          path_arcs.pop_back();
          u = path_nodes.back();
          continue;
        }
        path_arcs.push_back(c);
        u = arcs_[static_cast<std::size_t>(c)].to;
        path_nodes.push_back(u);
      }
      if (!found) break;
      Amount push = limit - total;
      for (int e : path_arcs) push = std::min(push, arcs_[static_cast<std::size_t>(e)].cap);
      for (int e : path_arcs) {
        arcs_[static_cast<std::size_t>(e)].cap -= push;
        arcs_[static_cast<std::size_t>(e ^ 1)].cap += push;
      }
      total += push;
    }
  }
  return total;
}

MinCostFlow::Result MinCostFlow::solve(int s, int t, Amount demand) {
  pi_.assign(head_.size(), 0);
  Result r;
  while (r.flow < demand && dijkstra(s, t)) {
    ++r.phases;
    const Amount pushed = blocking_flow(s, t, demand - r.flow);
    if (pushed == 0) break;
    r.flow += pushed;
  }
  for (std::size_t e = 0; e < arcs_.size(); e += 2) {
    r.cost += arcs_[e + 1].cap * arcs_[e].cost;
  }
  return r;
}

}  // namespace rklab
