#pragma once

#include <Eigen/Dense>

#include "rklab/cylinder.hpp"
#include "rklab/exponents.hpp"

namespace rklab {

/// Dense matrices act between cylinder tables; a matrix from depth a to
/// depth b has 2^b rows and 2^a columns. Keep a, b <= kMaxMatrixDepth.
inline constexpr int kMaxMatrixDepth = 11;

/// Weighted operator norm of T : L^p(col) -> L^p(row). Exact when
/// `exact` is set (p in {1, 2, inf}); otherwise [lower, upper] is a
/// certified bracket.
struct InducedNorm {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;

  double value() const { return 0.5 * (lower + upper); }
};

InducedNorm induced_norm(const Eigen::MatrixXd& T, const Exponents& p,
                         const CylinderMeasure& row, const CylinderMeasure& col);
/// Square case with the same measure on both sides.
InducedNorm induced_norm(const Eigen::MatrixXd& T, const Exponents& p, const CylinderMeasure& mu);

Eigen::MatrixXd koopman_matrix(int depth);                    // depth -> depth+1
Eigen::MatrixXd ruelle_matrix(int depth);                     // depth -> depth-1, depth >= 2
Eigen::MatrixXd multiplication_matrix(const CylinderFunction& f);
Eigen::MatrixXd conditional_expectation_matrix(int depth, int n);
/// M_w K from depth k to depth k+1 for a weight w of depth k+1.
Eigen::MatrixXd weighted_koopman_matrix(const CylinderFunction& w);

struct KlCommutatorReport {
  int n = 0;
  int depth = 0;
  InducedNorm koopman_block;  // K (E_n - E_{n-1}) : depth-1 -> depth
  InducedNorm ruelle_block;   // (E_{n-1} - E_n) L : depth -> depth-1
  InducedNorm norm;           // max of the two blocks
};

/// Norm of the commutator of the Dirac operator with the projection K^n L^n,
/// assembled at `depth` (>= n + 2) under the maximal entropy measure.
KlCommutatorReport kl_commutator_norm(int n, const Exponents& p, int depth);

}  // namespace rklab
