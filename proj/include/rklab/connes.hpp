#pragma once

#include <optional>
#include <vector>

#include "rklab/cylinder.hpp"
#include "rklab/exponents.hpp"
#include "rklab/tail_point.hpp"

namespace rklab {

/// Certified interval for the depth-k Connes distance:
///   wasserstein <= lower <= d_p^(k) <= upper = 2^(1/lambda) * wasserstein.
/// `lower` is always the objective of `witness`, which satisfies the
/// seminorm constraint.
struct ConnesBracket {
  int depth = 1;
  Exponents exponents = Exponents::from_p(2.0);
  double lower = 0.0;
  double upper = 0.0;
  double wasserstein = 0.0;
  CylinderFunction witness = CylinderFunction::zero(1);
  CylinderFunction flow_potential = CylinderFunction::zero(1);
  long iterations = 0;
  /// lower == upper by construction (lambda = inf, or mu_k = nu_k).
  bool exact = false;

  double width() const { return upper - lower; }
};

inline constexpr int kMaxConnesDepth = 12;
inline constexpr long kDefaultConnesBudget = 4000;

/// For lambda < inf: exact-penalty subgradient ascent started from the flow
/// potential (and from `seed` when given, e.g. a coarser witness lifted).
ConnesBracket connes_depth(const CylinderMeasure& mu, const CylinderMeasure& nu, const Exponents& p,
                           int k, long budget = kDefaultConnesBudget,
                           const std::optional<CylinderFunction>& seed = std::nullopt);

/// Brackets for k = 1..kmax; each depth is seeded with the previous
/// witness, so `lower` is nondecreasing in k.
std::vector<ConnesBracket> connes_sequence(const CylinderMeasure& mu, const CylinderMeasure& nu,
                                           const Exponents& p, int kmax,
                                           long budget = kDefaultConnesBudget);

struct SandwichReport {
  double wasserstein = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_ok = false;  // wasserstein <= lower (within 1e-9)
  bool upper_ok = false;  // lower <= 2^(1/lambda) wasserstein (within 1e-9)
  double ratio = 0.0;     // lower / wasserstein, 0 when wasserstein = 0
};

SandwichReport sandwich_check(const CylinderMeasure& mu, const CylinderMeasure& nu,
                              const Exponents& p, int k, long budget = kDefaultConnesBudget);

/// 2^(1/lambda) d^inf(x, y), or +inf when the orbits of x and y never meet.
double orbit_chain_bound(const TailPoint& x, const TailPoint& y, const Exponents& p);

/// Largest constraint value max_u mean_lambda(|g_0(u)|, |g_1(u)|) of f.
double constraint_level(const CylinderFunction& f, const Exponents& p);

}  // namespace rklab
