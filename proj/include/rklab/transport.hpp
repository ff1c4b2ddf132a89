#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rklab/cylinder.hpp"

namespace rklab {

/// Supplies are rounded onto this integer grid before the flow solve.
inline constexpr double kFlowGrid = 1099511627776.0;  // 2^40

struct GraphTransport {
  int depth = 1;
  /// <f, mu_k - nu_k> for the dual potential f, using the unrounded weights.
  double value = 0.0;
  /// Flow cost on the rounded supplies, divided by the grid.
  double primal = 0.0;
  /// |primal - value|; only rounding contributes.
  double certificate_gap = 0.0;
  /// 1-Lipschitz on every word-graph edge; f(0^k) = 0.
  CylinderFunction potential = CylinderFunction::zero(1);
  int phases = 0;
};

/// W_{d_k}(mu_k, nu_k) for the word-graph metric, by min-cost flow.
/// Measures at another depth are marginalised or refined to depth k.
GraphTransport wasserstein_graph(const CylinderMeasure& mu, const CylinderMeasure& nu, int k);

inline constexpr int kMaxTransportDepth = 14;

struct WassersteinSequence {
  std::vector<double> values;  // W_{d_k} for k = 1..kmax
  bool nondecreasing = true;
  /// Least-squares slope of W_{d_k} against k over the second half of the sequence.
  double slope = 0.0;
  /// slope >= 0.5, read as evidence that the d^inf Wasserstein distance is infinite.
  bool divergent = false;
};

WassersteinSequence wasserstein_dinfty(const CylinderMeasure& mu, const CylinderMeasure& nu, int kmax);

struct TransportInstance {
  Eigen::MatrixXd cost;
  std::vector<double> mu;
  std::vector<double> nu;
};

struct TransportPlan {
  Eigen::MatrixXd coupling;
  double value = 0.0;
  long pivots = 0;
};

struct KantorovichDual {
  std::vector<double> a;
  std::vector<double> b;
  double value = 0.0;          // sum a mu + sum b nu
  double primal = 0.0;
  double gap = 0.0;            // primal - value
  double max_violation = 0.0;  // max(a_i + b_j - c_ij, 0)
};

/// Transportation simplex: northwest-corner start, u-v potentials, Bland's rule.
TransportPlan transport_lp(const TransportInstance& inst);
KantorovichDual kantorovich_dual(const TransportInstance& inst);

/// Dense word-graph distance matrix d_k as a cost matrix.
Eigen::MatrixXd graph_cost_matrix(int k);

}  // namespace rklab
