#include "rklab/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace rklab::kernels {

namespace {

using Index = std::int64_t;

constexpr Index size_of(int depth) { return Index{1} << depth; }
constexpr Index mask_of(int depth) { return size_of(depth) - 1; }

inline bool better(double v, std::uint64_t i, const ArgMax& best) {
  return v > best.value || (v == best.value && i < best.index);
}

// Average of src over the 2^n words sharing the trailing depth-n symbols,
// summed in a fixed order so both kernel flavours agree bitwise.
inline double tail_average(std::span<const double> src, int depth, int n, Index tail) {
  const int rest = depth - n;
  double s = 0.0;
  for (Index head = 0; head < size_of(n); ++head) {
    s += src[static_cast<std::size_t>((head << rest) | tail)];
  }
  return s / static_cast<double>(size_of(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

void koopman(std::span<const double> src, int depth, std::span<double> dst) {
  const Index m = mask_of(depth);
  for (Index w = 0; w < size_of(depth + 1); ++w) {
    dst[static_cast<std::size_t>(w)] = src[static_cast<std::size_t>(w & m)];
  }
}

void ruelle(std::span<const double> src, int depth, std::span<double> dst) {
  const Index half = size_of(depth - 1);
  for (Index v = 0; v < half; ++v) {
    dst[static_cast<std::size_t>(v)] =
        0.5 * (src[static_cast<std::size_t>(v)] + src[static_cast<std::size_t>(half + v)]);
  }
}

void derivative(std::span<const double> src, int depth, std::span<double> dst) {
  const Index m = mask_of(depth);
  for (Index w = 0; w < size_of(depth + 1); ++w) {
    dst[static_cast<std::size_t>(w)] =
        src[static_cast<std::size_t>(w & m)] - src[static_cast<std::size_t>(w >> 1)];
  }
}

void conditional_expectation(std::span<const double> src, int depth, int n,
                             std::span<double> dst) {
  const Index tails = size_of(depth - n);
  std::vector<double> avg(static_cast<std::size_t>(tails));
  for (Index t = 0; t < tails; ++t) avg[static_cast<std::size_t>(t)] = tail_average(src, depth, n, t);
  const Index m = tails - 1;
  for (Index w = 0; w < size_of(depth); ++w) {
    dst[static_cast<std::size_t>(w)] = avg[static_cast<std::size_t>(w & m)];
  }
}

ArgMax backward_mean_sup(std::span<const double> deriv, int depth, const Exponents& exps) {
  const Index half = size_of(depth);
  ArgMax best{-1.0, 0};
  for (Index u = 0; u < half; ++u) {
    const double v = exps.mean(std::abs(deriv[static_cast<std::size_t>(u)]),
                               std::abs(deriv[static_cast<std::size_t>(half + u)]));
    if (better(v, static_cast<std::uint64_t>(u), best)) best = {v, static_cast<std::uint64_t>(u)};
  }
  return best;
}

void transfer_apply(std::span<const double> a0, std::span<const double> a1, int depth,
                    std::span<const double> x, std::span<double> y) {
  const Index high = size_of(depth - 1);
  for (Index v = 0; v < size_of(depth); ++v) {
    const Index c0 = v >> 1;
    const auto sv = static_cast<std::size_t>(v);
    y[sv] = a0[sv] * x[static_cast<std::size_t>(c0)] +
            a1[sv] * x[static_cast<std::size_t>(high | c0)];
  }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace omp {

void koopman(std::span<const double> src, int depth, std::span<double> dst) {
  const Index m = mask_of(depth);
  const Index n = size_of(depth + 1);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= kParallelThreshold)
  for (Index w = 0; w < n; ++w) {
    dst[static_cast<std::size_t>(w)] = src[static_cast<std::size_t>(w & m)];
  }
}

void ruelle(std::span<const double> src, int depth, std::span<double> dst) {
  const Index half = size_of(depth - 1);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(half) >= kParallelThreshold)
  for (Index v = 0; v < half; ++v) {
    dst[static_cast<std::size_t>(v)] =
        0.5 * (src[static_cast<std::size_t>(v)] + src[static_cast<std::size_t>(half + v)]);
  }
}

void derivative(std::span<const double> src, int depth, std::span<double> dst) {
  const Index m = mask_of(depth);
  const Index n = size_of(depth + 1);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= kParallelThreshold)
  for (Index w = 0; w < n; ++w) {
    dst[static_cast<std::size_t>(w)] =
        src[static_cast<std::size_t>(w & m)] - src[static_cast<std::size_t>(w >> 1)];
  }
}

void conditional_expectation(std::span<const double> src, int depth, int n,
                             std::span<double> dst) {
  const Index tails = size_of(depth - n);
  std::vector<double> avg(static_cast<std::size_t>(tails));
  const bool wide = static_cast<std::size_t>(size_of(depth)) >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
  for (Index t = 0; t < tails; ++t) avg[static_cast<std::size_t>(t)] = tail_average(src, depth, n, t);
  const Index m = tails - 1;
  const Index total = size_of(depth);
#pragma omp parallel for schedule(static) if (wide)
  for (Index w = 0; w < total; ++w) {
    dst[static_cast<std::size_t>(w)] = avg[static_cast<std::size_t>(w & m)];
  }
}

ArgMax backward_mean_sup(std::span<const double> deriv, int depth, const Exponents& exps) {
  const Index half = size_of(depth);
  ArgMax best{-1.0, 0};
#pragma omp parallel if (static_cast<std::size_t>(half) >= kParallelThreshold)
  {
    ArgMax local{-1.0, 0};
#pragma omp for schedule(static) nowait
    for (Index u = 0; u < half; ++u) {
      const double v = exps.mean(std::abs(deriv[static_cast<std::size_t>(u)]),
                                 std::abs(deriv[static_cast<std::size_t>(half + u)]));
      if (better(v, static_cast<std::uint64_t>(u), local)) {
        local = {v, static_cast<std::uint64_t>(u)};
      }
    }
#pragma omp critical(rklab_argmax)
    if (better(local.value, local.index, best)) best = local;
  }
  return best;
}

void transfer_apply(std::span<const double> a0, std::span<const double> a1, int depth,
                    std::span<const double> x, std::span<double> y) {
  const Index high = size_of(depth - 1);
  const Index n = size_of(depth);
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) >= kParallelThreshold)
  for (Index v = 0; v < n; ++v) {
    const Index c0 = v >> 1;
    const auto sv = static_cast<std::size_t>(v);
    y[sv] = a0[sv] * x[static_cast<std::size_t>(c0)] +
            a1[sv] * x[static_cast<std::size_t>(high | c0)];
  }
}

}  // namespace omp

}  // namespace rklab::kernels
