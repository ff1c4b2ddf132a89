#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "rklab/word.hpp"

namespace rklab {

class TailPoint;

/// Largest cylinder depth for dense tables (2^28 entries).
inline constexpr int kMaxDepth = 28;

/// Throws std::out_of_range with a readable message when depth is outside [1, kMaxDepth].
void check_depth(int depth, const char* what);

inline std::size_t table_size(int depth) { return std::size_t{1} << depth; }

/// Locally constant function on the full 2-shift that depends only on the
/// first `depth` coordinates, stored as a dense table indexed by Word index.
///
/// Constants use a depth-1 table with two equal entries; there is no
/// depth-0 representation.
class CylinderFunction {
 public:
  CylinderFunction(int depth, std::vector<double> values);

  static CylinderFunction constant(double c, int depth = 1);
  static CylinderFunction zero(int depth) { return constant(0.0, depth); }
  /// Characteristic function of the cylinder [w].
  static CylinderFunction indicator(const Word& w);
  /// sum of coeff * chi_[word]; every word must have length <= depth.
  static CylinderFunction from_terms(int depth,
                                     std::initializer_list<std::pair<const char*, double>> terms);

  int depth() const noexcept { return depth_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t index) const { return values_[index]; }
  /// Value on the cylinder [w]; w must have length >= depth (extra symbols ignored).
  double at(const Word& w) const;
  double evaluate(const TailPoint& x) const;

  /// Same function written at a larger depth (values repeated over trailing symbols).
  CylinderFunction lift(int depth) const;
  /// Smallest depth at which the function can be written exactly.
  int minimal_depth() const;
  bool is_constant(double tol = 0.0) const;
  double sup_norm() const;

  CylinderFunction operator-() const;
  friend CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b);
  friend CylinderFunction operator-(const CylinderFunction& a, const CylinderFunction& b);
  friend CylinderFunction operator*(double c, const CylinderFunction& f);
  friend bool operator==(const CylinderFunction&, const CylinderFunction&) = default;

 private:
  int depth_;
  std::vector<double> values_;
};

/// Probability vector over the depth-k cylinders.
class CylinderMeasure {
 public:
  static constexpr double kMassTolerance = 1e-12;

  /// Weights must be nonnegative and sum to 1 within kMassTolerance.
  CylinderMeasure(int depth, std::vector<double> weights);

  int depth() const noexcept { return depth_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t index) const { return weights_[index]; }
  double mass(const Word& w) const;

  /// Marginal on the first `depth` coordinates (Kolmogorov consistent).
  CylinderMeasure marginal(int depth) const;
  /// Extension to a larger depth that splits each cylinder's mass uniformly
  /// over its children. Exact for Bernoulli(1/2); a convention otherwise.
  CylinderMeasure refine(int depth) const;
  /// marginal() or refine() depending on the requested depth.
  CylinderMeasure at_depth(int depth) const;

  friend bool operator==(const CylinderMeasure&, const CylinderMeasure&) = default;

 private:
  struct Trusted {};
  // derived tables (marginals, refinements, pushforwards) skip the mass check
  CylinderMeasure(Trusted, int depth, std::vector<double> weights)
      : depth_(depth), weights_(std::move(weights)) {}
  friend CylinderMeasure make_trusted_measure(int depth, std::vector<double> weights);

  int depth_;
  std::vector<double> weights_;
};

/// For library internals that derive a measure from an already validated one.
CylinderMeasure make_trusted_measure(int depth, std::vector<double> weights);

/// Uniform Bernoulli(1/2) measure, mass 2^-k on each depth-k cylinder.
CylinderMeasure max_entropy(int depth);
/// Product measure with P(x_i = 1) = q.
CylinderMeasure bernoulli(int depth, double q);
/// Markov measure with row-stochastic transition matrix P[a][b] = P(x_{i+1}=b | x_i=a),
/// started from its stationary law (uniform when the chain is the identity).
CylinderMeasure markov(int depth, const std::array<std::array<double, 2>, 2>& P);
/// Point mass on the cylinder x|_k.
CylinderMeasure dirac(const TailPoint& x, int depth);

/// Integral of f against mu at the common depth.
double integrate(const CylinderFunction& f, const CylinderMeasure& mu);

}  // namespace rklab
