#pragma once

// Dense table kernels over depth-k cylinder tables.
//
// Every kernel exists twice: `serial::` is the plain reference loop kept for
// testing and benchmarking, `omp::` is the OpenMP version the library uses.
// The two produce bitwise identical results for any thread count: each output
// entry is computed by one fixed expression, and the only reduction (argmax)
// orders candidates by (value desc, index asc).

#include <cstddef>
#include <cstdint>
#include <span>

#include "rklab/exponents.hpp"

namespace rklab::kernels {

/// Tables at least this long are processed in parallel by the omp kernels.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

struct ArgMax {
  double value = 0.0;
  std::uint64_t index = 0;
};

namespace serial {

/// dst[w] = src[w_2..w_{k+1}]; |src| = 2^k, |dst| = 2^(k+1).
void koopman(std::span<const double> src, int depth, std::span<double> dst);
/// dst[v] = (src[0v] + src[1v]) / 2; |src| = 2^k, |dst| = 2^(k-1), k >= 2.
void ruelle(std::span<const double> src, int depth, std::span<double> dst);
/// dst[w] = src[w_2..w_{k+1}] - src[w_1..w_k]; |dst| = 2^(k+1).
void derivative(std::span<const double> src, int depth, std::span<double> dst);
/// dst[w] = mean of src over all words agreeing with w after position n.
void conditional_expectation(std::span<const double> src, int depth, int n,
                             std::span<double> dst);
/// max over u in {0,1}^k of exps.mean(|d[0u]|, |d[1u]|) for d of depth k+1.
ArgMax backward_mean_sup(std::span<const double> deriv, int depth, const Exponents& exps);
/// y[v] = a0[v] x[0 v_1..v_{k-1}] + a1[v] x[1 v_1..v_{k-1}]; all spans of length 2^k.
void transfer_apply(std::span<const double> a0, std::span<const double> a1, int depth,
                    std::span<const double> x, std::span<double> y);

}  // namespace serial

namespace omp {

void koopman(std::span<const double> src, int depth, std::span<double> dst);
void ruelle(std::span<const double> src, int depth, std::span<double> dst);
void derivative(std::span<const double> src, int depth, std::span<double> dst);
void conditional_expectation(std::span<const double> src, int depth, int n,
                             std::span<double> dst);
ArgMax backward_mean_sup(std::span<const double> deriv, int depth, const Exponents& exps);
void transfer_apply(std::span<const double> a0, std::span<const double> a1, int depth,
                    std::span<const double> x, std::span<double> y);

}  // namespace omp

}  // namespace rklab::kernels
