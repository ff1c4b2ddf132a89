#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rklab {

inline constexpr int kMaxFgammaDepth = 16;
inline constexpr int kMaxDistanceFigureDepth = 12;

/// CSV "t,f,derivative" for f = number of ones among the first k symbols,
/// sampled at t = sum_i w_i 2^-i. With samples = 0 there is one row per
/// depth-(k+1) word (the plateaus of the derivative); otherwise rows sit at
/// t = i / samples.
std::string emit_fgamma(int k, long samples = 0);

/// Writes three 2^k x 2^k CSV matrices into `dir`, row and column order =
/// word index:
///   graph_distance_k<K>.csv       word-graph distance d_k(u, v)
///   truncated_distance_k<K>.csv   2^-N, N the 1-based first differing position (0 on the diagonal)
///   cumulative_distance_k<K>.csv  sum of 2^-i over positions i where u_i = v_i
/// Returns the written paths in that order.
std::vector<std::filesystem::path> emit_distance_matrices(int k, const std::filesystem::path& dir);

}  // namespace rklab
