#pragma once

#include "rklab/cylinder.hpp"
#include "rklab/exponents.hpp"
#include "rklab/word.hpp"

namespace rklab {

/// Kolmogorov means of the two backward differences |g_0(u)|, |g_1(u)|,
/// each one taken as a sup over u. Nondecreasing in declaration order, and
/// `quadratic <= seminorm <= derivative_sup` whenever lambda >= 2.
struct MeanChain {
  double minimum = 0.0;
  double harmonic = 0.0;
  double geometric = 0.0;
  double arithmetic = 0.0;
  double quadratic = 0.0;
  double derivative_sup = 0.0;  // |f o sigma - f|_inf
};

struct SeminormReport {
  double value = 0.0;
  Word argmax_word;  // depth-k word u attaining the sup; smallest index on ties
  Exponents exponents = Exponents::from_p(2.0);
  MeanChain chain;
};

/// Commutator seminorm of M_f: the sup over depth-k words u of the
/// lambda-mean of |f(u) - f(0 u_1..u_{k-1})| and |f(u) - f(1 u_1..u_{k-1})|.
SeminormReport commutator_seminorm(const CylinderFunction& f, const Exponents& p);

struct SeminormBounds {
  double koopman_gap = 0.0;  // |Kf - f|_inf, upper bound
  double seminorm = 0.0;
  double ruelle_gap = 0.0;   // |f - Lf|_inf, lower bound
  MeanChain chain;
};

SeminormBounds seminorm_bounds(const CylinderFunction& f, const Exponents& p);

struct Admissibility {
  bool admissible = false;   // seminorm <= 1 + slack
  double seminorm = 0.0;
  double margin = 0.0;       // 1 - seminorm
  double derivative_sup = 0.0;
  bool sufficient = false;   // |f o sigma - f|_inf <= 1, which implies admissible
  bool necessary = false;    // |f o sigma - f|_inf <= 2^(1/lambda), implied by admissible
};

inline constexpr double kAdmissibleSlack = 1e-12;

Admissibility check_admissible(const CylinderFunction& f, const Exponents& p,
                               double slack = kAdmissibleSlack);

}  // namespace rklab
