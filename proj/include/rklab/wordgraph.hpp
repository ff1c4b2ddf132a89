#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rklab/cylinder.hpp"
#include "rklab/tail_point.hpp"
#include "rklab/word.hpp"

namespace rklab {

/// The word graph on {0,1}^k: u and v are adjacent when one is obtained
/// from the other by a shift that drops a symbol at one end and appends a
/// symbol at the other, i.e. v = u_2..u_k j or v = i u_1..u_{k-1}.
class WordGraph {
 public:
  static constexpr int kMaxBfsDepth = 24;
  static constexpr int kMaxAllPairsDepth = 14;

  explicit WordGraph(int depth);

  int depth() const noexcept { return depth_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << depth_; }

  /// Distinct neighbours of u other than u itself, ascending.
  std::vector<std::uint64_t> neighbors(std::uint64_t u) const;
  /// All four neighbour slots (left-drop j = 0, 1; right-drop i = 0, 1),
  /// self-coincidences and repeats included.
  std::array<std::uint64_t, 4> slots(std::uint64_t u) const;
  bool adjacent(std::uint64_t u, std::uint64_t v) const;

  /// BFS distances from `source` to every vertex.
  std::vector<std::uint8_t> distances_from(std::uint64_t source) const;

 private:
  int depth_;
};

int bfs_distance(int k, const Word& u, const Word& v);

/// Row-major matrix of d_k(u, v), row and column order = word index.
std::vector<std::uint8_t> all_pairs_distances(int k);
std::vector<std::uint8_t> all_pairs_distances_serial(int k);

struct LcsFormula {
  int value = 0;        // min{k, k - l + m + 2n, k - l + n + 2m} over maximal placements
  int lower_bound = 0;  // k - l
  int ell = 0;          // length of the longest common subword
  int m = 0;            // 0-based start of the subword in u, for the minimising placement
  int n = 0;            // 0-based start of the subword in v
};

LcsFormula lcs_distance_formula(const Word& u, const Word& v);

/// min{m + n : sigma^m x = sigma^n y}, or nullopt when the orbits never meet
/// (or no meeting exists with m + n <= cap).
struct OrbitMeeting {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t distance() const { return m + n; }
};

std::optional<OrbitMeeting> d_infty(const TailPoint& x, const TailPoint& y,
                                    std::uint64_t cap = std::uint64_t{1} << 20);
bool same_class(const TailPoint& x, const TailPoint& y);

struct IncidenceGap {
  int gap = 0;       // sup_{n <= k} |#ones(x|_n) - #ones(y|_n)|
  int position = 0;  // the smallest n attaining it
  CylinderFunction witness = CylinderFunction::zero(1);  // ones in the first n symbols, at depth k
};

IncidenceGap incidence_gap(const TailPoint& x, const TailPoint& y, int k);

/// f(w) = number of ones in w, at depth k.
CylinderFunction count_ones_function(int k);

}  // namespace rklab
