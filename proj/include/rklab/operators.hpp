#pragma once

#include "rklab/cylinder.hpp"
#include "rklab/exponents.hpp"

namespace rklab {

/// Koopman operator K f = f o sigma. Depth k -> k+1; requires k <= 27.
CylinderFunction apply_koopman(const CylinderFunction& f);

/// Ruelle operator (L f)(x) = (f(0x) + f(1x)) / 2. Depth k -> k-1; a depth-1
/// input yields a constant, written as a depth-1 table.
CylinderFunction apply_ruelle(const CylinderFunction& f);

/// Discrete-time derivative f o sigma - f. Depth k -> k+1; requires k <= 27.
CylinderFunction discrete_derivative(const CylinderFunction& f);

/// K^n L^n f: averages f over its first n symbols. Same depth as f; 0 <= n <= depth.
CylinderFunction conditional_expectation(const CylinderFunction& f, int n);

/// Push-forward sigma_# mu: weight(v) = mu[0v] + mu[1v]. Depth k -> k-1, k >= 2.
CylinderMeasure pushforward_shift(const CylinderMeasure& mu);

/// Weighted norm (sum_w |f(w)|^p mu(w))^(1/p), computed at the common depth.
/// For p = +inf, the max of |f| over words of positive mass.
double lp_norm(const CylinderFunction& f, const CylinderMeasure& mu, const Exponents& p);

}  // namespace rklab
