#include "rklab/wordgraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rklab {

namespace {

constexpr std::uint8_t kUnreached = std::numeric_limits<std::uint8_t>::max();

void check_graph_depth(int k, int cap, const char* what) {
  if (k < 1 || k > cap) {
    throw std::out_of_range(std::string(what) + ": depth " + std::to_string(k) + " outside [1, " +
                            std::to_string(cap) + "]");
  }
}

bool is_rotation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  const Word twice = a + a;
  for (int r = 0; r < a.size(); ++r) {
    if (twice.drop_front(r).prefix(b.size()) == b) return true;
  }
  return false;
}

}  // namespace

WordGraph::WordGraph(int depth) : depth_(depth) {
  check_graph_depth(depth, kMaxBfsDepth, "WordGraph");
}

std::array<std::uint64_t, 4> WordGraph::slots(std::uint64_t u) const {
  const std::uint64_t mask = size() - 1;
  const std::uint64_t left = (u << 1) & mask;
  const std::uint64_t right = u >> 1;
  const std::uint64_t high = std::uint64_t{1} << (depth_ - 1);
  return {left, left | 1, right, high | right};
}

std::vector<std::uint64_t> WordGraph::neighbors(std::uint64_t u) const {
  const auto s = slots(u);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v : s) {
    if (v != u) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool WordGraph::adjacent(std::uint64_t u, std::uint64_t v) const {
  if (u == v) return false;
  const auto s = slots(u);
  return std::find(s.begin(), s.end(), v) != s.end();
}

std::vector<std::uint8_t> WordGraph::distances_from(std::uint64_t source) const {
  std::vector<std::uint8_t> dist(size(), kUnreached);
  std::vector<std::uint64_t> frontier{source}, next;
  dist[source] = 0;
  for (std::uint8_t level = 1; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint64_t u : frontier) {
      for (std::uint64_t v : slots(u)) {
        if (dist[v] == kUnreached) {
          dist[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

int bfs_distance(int k, const Word& u, const Word& v) {
  if (u.size() != k || v.size() != k) throw std::invalid_argument("bfs_distance: word length differs from k");
  const WordGraph g(k);
  if (u == v) return 0;
  std::vector<std::uint8_t> dist(g.size(), kUnreached);
  std::vector<std::uint64_t> frontier{u.index()}, next;
  dist[u.index()] = 0;
  for (int level = 1; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint64_t a : frontier) {
      for (std::uint64_t b : g.slots(a)) {
        if (dist[b] != kUnreached) continue;
        if (b == v.index()) return level;
        dist[b] = static_cast<std::uint8_t>(level);
        next.push_back(b);
      }
    }
    frontier.swap(next);
  }
  throw std::logic_error("word graph is disconnected");
}

std::vector<std::uint8_t> all_pairs_distances_serial(int k) {
  check_graph_depth(k, WordGraph::kMaxAllPairsDepth, "all_pairs_distances");
  const WordGraph g(k);
  const std::uint64_t n = g.size();
  std::vector<std::uint8_t> out(n * n);
  for (std::uint64_t s = 0; s < n; ++s) {
    const auto row = g.distances_from(s);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return out;
}

std::vector<std::uint8_t> all_pairs_distances(int k) {
  check_graph_depth(k, WordGraph::kMaxAllPairsDepth, "all_pairs_distances");
  const WordGraph g(k);
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(dynamic, 16) if (n >= 64)
  for (std::int64_t s = 0; s < n; ++s) {
    const auto row = g.distances_from(static_cast<std::uint64_t>(s));
    std::copy(row.begin(), row.end(), out.begin() + s * n);
  }
  return out;
}

LcsFormula lcs_distance_formula(const Word& u, const Word& v) {
  if (u.size() != v.size()) throw std::invalid_argument("lcs_distance_formula: length mismatch");
  const int k = u.size();
  // run[i][j]: length of the common run ending at u_i, v_j
  std::vector<int> run((k + 1) * (k + 1), 0);
  int ell = 0;
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (u.at(i - 1) == v.at(j - 1)) {
        run[i * (k + 1) + j] = run[(i - 1) * (k + 1) + j - 1] + 1;
        ell = std::max(ell, run[i * (k + 1) + j]);
      }
    }
  }
  LcsFormula r{k, k - ell, ell, 0, 0};
  if (ell == 0) return r;
  for (int i = ell; i <= k; ++i) {
    for (int j = ell; j <= k; ++j) {
      if (run[i * (k + 1) + j] < ell) continue;
      const int m = i - ell, n = j - ell;
      const int cand = std::min(k - ell + m + 2 * n, k - ell + n + 2 * m);
      if (cand < r.value) r = {cand, k - ell, ell, m, n};
    }
  }
  return r;
}

bool same_class(const TailPoint& x, const TailPoint& y) { return is_rotation(x.period(), y.period()); }

std::optional<OrbitMeeting> d_infty(const TailPoint& x, const TailPoint& y, std::uint64_t cap) {
  if (!same_class(x, y)) return std::nullopt;
  // once both prefixes are consumed the tails differ by a rotation of the
  // common period, so this bound makes the search exhaustive
  const auto bound = static_cast<std::uint64_t>(x.prefix().size() + y.prefix().size() +
                                                2 * x.period().size());
  const std::uint64_t limit = std::min(bound, cap);
  std::vector<TailPoint> xs, ys;
  for (std::uint64_t s = 0; s <= limit; ++s) {
    xs.push_back(x.shift(s));
    ys.push_back(y.shift(s));
  }
  for (std::uint64_t s = 0; s <= limit; ++s) {
    for (std::uint64_t m = 0; m <= s; ++m) {
      if (xs[m] == ys[s - m]) return OrbitMeeting{m, s - m};
    }
  }
  return std::nullopt;
}

CylinderFunction count_ones_function(int k) {
  check_depth(k, "count_ones_function");
  std::vector<double> v(table_size(k));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Word(i, k).count_ones();
  return CylinderFunction(k, std::move(v));
}

IncidenceGap incidence_gap(const TailPoint& x, const TailPoint& y, int k) {
  check_graph_depth(k, WordGraph::kMaxBfsDepth, "incidence_gap");
  IncidenceGap r;
  int diff = 0;
  for (int n = 1; n <= k; ++n) {
    diff += x.symbol(static_cast<std::uint64_t>(n - 1)) - y.symbol(static_cast<std::uint64_t>(n - 1));
    if (std::abs(diff) > r.gap) r.gap = std::abs(diff), r.position = n;
  }
  std::vector<double> f(table_size(k), 0.0);
  if (r.position > 0) {
    const int drop = k - r.position;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = Word(i >> drop, r.position).count_ones();
  }
  r.witness = CylinderFunction(k, std::move(f));
  return r;
}

}  // namespace rklab
