#pragma once

#include <cstdint>
#include <vector>

#include "rklab/cylinder.hpp"
#include "rklab/exponents.hpp"

namespace rklab {

/// Nonnegative matrix of g -> L(|w|^lambda g) on depth-k tables, for a
/// weight w of depth k+1. Row v has two structural entries:
///   a0[v] = |w(0v)|^lambda / 2 in column 0 v_1..v_{k-1},
///   a1[v] = |w(1v)|^lambda / 2 in column 1 v_1..v_{k-1}.
struct TransferMatrix {
  int depth = 1;
  Exponents exponents = Exponents::from_p(2.0);
  std::vector<double> a0;
  std::vector<double> a1;

  std::size_t size() const { return a0.size(); }
  std::uint64_t column(std::uint64_t v, int symbol) const {
    return (static_cast<std::uint64_t>(symbol) << (depth - 1)) | (v >> 1);
  }
};

/// Throws std::invalid_argument for lambda = inf (use max_plus_radius).
TransferMatrix build_transfer(const CylinderFunction& w, const Exponents& p);

inline constexpr double kDefaultSpectralTol = 1e-10;
inline constexpr long kDefaultSpectralIters = 100000;

struct SpectralResult {
  double radius = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  long iterations = 0;
  bool converged = true;
};

/// Perron radius by power iteration on each strongly connected component,
/// stopped once the Collatz-Wielandt bracket is narrower than
/// tol * max(1, upper end). The bracket always contains the radius.
SpectralResult spectral_radius(const TransferMatrix& T, double tol = kDefaultSpectralTol,
                               long max_iter = kDefaultSpectralIters);

/// Largest geometric cycle mean of |w| over de Bruijn transitions (Karp's
/// algorithm on log-weights); the lambda = inf counterpart of rho(T)^(1/lambda).
inline constexpr int kMaxKarpDepth = 11;
SpectralResult max_plus_radius(const CylinderFunction& w);

/// Spectral radius of the weighted Koopman operator M_w K on L^lambda,
/// i.e. rho(T)^(1/lambda), or the max-plus radius for lambda = inf.
SpectralResult weighted_koopman_radius(const CylinderFunction& w, const Exponents& p,
                                       double tol = kDefaultSpectralTol,
                                       long max_iter = kDefaultSpectralIters);

/// sqrt of the top eigenvalue of (M_w K)(L M_w) on depth-`depth` tables,
/// w = f o sigma - f. Needs depth >= depth(f) + 1. The operator is
/// symmetric, so bracket_lo (the Rayleigh quotient) never exceeds the true
/// value; bracket_hi adds the residual and only bounds the distance to the
/// nearest eigenvalue. Near-ties at the top stall the residual test and
/// leave converged = false with an accurate radius.
SpectralResult commutator_spectral_radius(const CylinderFunction& f, int depth,
                                          long iters = 20000, double tol = 1e-13);

enum class BoundVariant { kPrinted, kNormalized };

struct VariationalBound {
  double normalized = 0.0;  // rho(T)^(1/lambda)
  double printed = 0.0;     // 2^(1/lambda) * (2 rho(T))^(1/lambda)
  SpectralResult spectral;

  double get(BoundVariant v) const { return v == BoundVariant::kPrinted ? printed : normalized; }
};

VariationalBound variational_bound(const CylinderFunction& w, const Exponents& p,
                                   double tol = kDefaultSpectralTol,
                                   long max_iter = kDefaultSpectralIters);

}  // namespace rklab
