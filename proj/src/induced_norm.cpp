#include "rklab/induced_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rklab {

namespace {

void check_matrix_depth(int depth, const char* what) {
  check_depth(depth, what);
  if (depth > kMaxMatrixDepth) {
    throw std::out_of_range(std::string(what) + ": dense matrices are limited to depth " +
                            std::to_string(kMaxMatrixDepth));
  }
}

Eigen::VectorXd weights_of(const CylinderMeasure& m) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(m.weights().size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w[i] = m[static_cast<std::size_t>(i)];
    if (!(w[i] > 0.0)) throw std::invalid_argument("induced_norm: measure must be strictly positive");
  }
  return w;
}

double norm_one(const Eigen::MatrixXd& T, const Eigen::VectorXd& r, const Eigen::VectorXd& c) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < T.cols(); ++j) {
    best = std::max(best, r.dot(T.col(j).cwiseAbs()) / c[j]);
  }
  return best;
}

double norm_inf(const Eigen::MatrixXd& T) {
  return T.rows() == 0 ? 0.0 : T.cwiseAbs().rowwise().sum().maxCoeff();
}

double norm_two(const Eigen::MatrixXd& T, const Eigen::VectorXd& r, const Eigen::VectorXd& c) {
  const Eigen::MatrixXd A =
      r.cwiseSqrt().asDiagonal() * T * c.cwiseSqrt().cwiseInverse().asDiagonal();
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

double pnorm(const Eigen::VectorXd& x, double p) {
  return std::pow(x.array().abs().pow(p).sum(), 1.0 / p);
}

Eigen::VectorXd dual_vector(const Eigen::VectorXd& x, double p) {
  return x.unaryExpr([p](double v) { return std::copysign(std::pow(std::abs(v), p - 1.0), v); });
}

// Higham's p-norm power method from one start vector; every iterate's
// ratio |Ax|_p / |x|_p is attained, so the max seen is a lower bound.
double power_method_lower(const Eigen::MatrixXd& A, double p, Eigen::VectorXd x) {
  const double q = p / (p - 1.0);
  double best = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double nx = pnorm(x, p);
    if (nx == 0.0) break;
    x /= nx;
    const Eigen::VectorXd y = A * x;
    best = std::max(best, pnorm(y, p));
    const Eigen::VectorXd z = A.transpose() * dual_vector(y, p);
    const double zq = pnorm(z, q);
    if (zq <= z.dot(x) * (1.0 + 1e-14) || zq == 0.0) break;
    x = dual_vector(z, q);
  }
  return best;
}

InducedNorm general_p(const Eigen::MatrixXd& T, double p, const Eigen::VectorXd& r,
                      const Eigen::VectorXd& c) {
  const Eigen::MatrixXd A =
      r.array().pow(1.0 / p).matrix().asDiagonal() * T *
      c.array().pow(-1.0 / p).matrix().asDiagonal();

  double lower = 0.0;
  if (A.cols() > 0) {
    lower = power_method_lower(A, p, Eigen::VectorXd::Ones(A.cols()));
    Eigen::Index jmax = 0;
    double cmax = -1.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double cj = pnorm(A.col(j), p);
      if (cj > cmax) cmax = cj, jmax = j;
    }
    lower = std::max(lower, power_method_lower(A, p, Eigen::VectorXd::Unit(A.cols(), jmax)));
    Eigen::VectorXd wiggle(A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) wiggle[j] = std::sin(1.0 + 2.0 * static_cast<double>(j));
    lower = std::max(lower, power_method_lower(A, p, wiggle));
  }

  const double n1 = norm_one(T, r, c);
  const double n2 = norm_two(T, r, c);
  const double ninf = norm_inf(T);
  double upper = std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
  if (p < 2.0) {
    const double theta = 2.0 * (1.0 - 1.0 / p);
    upper = std::min(upper, std::pow(n1, 1.0 - theta) * std::pow(n2, theta));
  } else {
    const double theta = 1.0 - 2.0 / p;
    upper = std::min(upper, std::pow(n2, 1.0 - theta) * std::pow(ninf, theta));
  }
  return {lower, std::max(upper, lower), false};
}

InducedNorm exact(double v) { return {v, v, true}; }

}  // namespace

InducedNorm induced_norm(const Eigen::MatrixXd& T, const Exponents& p,
                         const CylinderMeasure& row, const CylinderMeasure& col) {
  if (static_cast<std::size_t>(T.rows()) != row.weights().size() ||
      static_cast<std::size_t>(T.cols()) != col.weights().size()) {
    throw std::invalid_argument("induced_norm: matrix shape does not match the measures");
  }
  const Eigen::VectorXd r = weights_of(row);
  const Eigen::VectorXd c = weights_of(col);
  if (p.p_infinite()) return exact(norm_inf(T));
  if (p.conjugate_infinite()) return exact(norm_one(T, r, c));
  if (p.p() == 2.0) return exact(norm_two(T, r, c));
  return general_p(T, p.p(), r, c);
}

InducedNorm induced_norm(const Eigen::MatrixXd& T, const Exponents& p, const CylinderMeasure& mu) {
  if (T.rows() != T.cols()) throw std::invalid_argument("induced_norm: matrix is not square");
  return induced_norm(T, p, mu, mu);
}

Eigen::MatrixXd koopman_matrix(int depth) {
  check_matrix_depth(depth + 1, "koopman_matrix");
  const Eigen::Index rows = Eigen::Index{1} << (depth + 1);
  const Eigen::Index mask = (Eigen::Index{1} << depth) - 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, mask + 1);
  for (Eigen::Index w = 0; w < rows; ++w) M(w, w & mask) = 1.0;
  return M;
}

Eigen::MatrixXd ruelle_matrix(int depth) {
  check_matrix_depth(depth, "ruelle_matrix");
  if (depth < 2) throw std::out_of_range("ruelle_matrix: depth must be at least 2");
  const Eigen::Index half = Eigen::Index{1} << (depth - 1);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(half, 2 * half);
  for (Eigen::Index v = 0; v < half; ++v) {
    M(v, v) = 0.5;
    M(v, half + v) = 0.5;
  }
  return M;
}

Eigen::MatrixXd multiplication_matrix(const CylinderFunction& f) {
  check_matrix_depth(f.depth(), "multiplication_matrix");
  Eigen::VectorXd d(static_cast<Eigen::Index>(f.values().size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f[static_cast<std::size_t>(i)];
  return d.asDiagonal();
}

Eigen::MatrixXd conditional_expectation_matrix(int depth, int n) {
  check_matrix_depth(depth, "conditional_expectation_matrix");
  if (n < 0 || n > depth) throw std::out_of_range("conditional_expectation_matrix: n outside [0, depth]");
  const Eigen::Index size = Eigen::Index{1} << depth;
  const Eigen::Index mask = (Eigen::Index{1} << (depth - n)) - 1;
  const double share = std::ldexp(1.0, -n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index w = 0; w < size; ++w) {
    for (Eigen::Index c = 0; c < size; ++c) {
      if ((c & mask) == (w & mask)) M(w, c) = share;
    }
  }
  return M;
}

Eigen::MatrixXd weighted_koopman_matrix(const CylinderFunction& w) {
  if (w.depth() < 2) return weighted_koopman_matrix(w.lift(2));
  return multiplication_matrix(w) * koopman_matrix(w.depth() - 1);
}

KlCommutatorReport kl_commutator_norm(int n, const Exponents& p, int depth) {
  if (n < 1) throw std::out_of_range("kl_commutator_norm: n must be at least 1");
  if (depth < n + 2) {
    throw std::out_of_range("kl_commutator_norm: depth " + std::to_string(depth) +
                            " is below n + 2 = " + std::to_string(n + 2));
  }
  check_matrix_depth(depth, "kl_commutator_norm");

  const Eigen::MatrixXd diff =
      conditional_expectation_matrix(depth - 1, n) - conditional_expectation_matrix(depth - 1, n - 1);
  const Eigen::MatrixXd a = koopman_matrix(depth - 1) * diff;
  const Eigen::MatrixXd b = -diff * ruelle_matrix(depth);

  const CylinderMeasure fine = max_entropy(depth);
  const CylinderMeasure coarse = max_entropy(depth - 1);
  KlCommutatorReport rep;
  rep.n = n;
  rep.depth = depth;
  rep.koopman_block = induced_norm(a, p, fine, coarse);
  rep.ruelle_block = induced_norm(b, p, coarse, fine);
  rep.norm = {std::max(rep.koopman_block.lower, rep.ruelle_block.lower),
              std::max(rep.koopman_block.upper, rep.ruelle_block.upper),
              rep.koopman_block.exact && rep.ruelle_block.exact};
  return rep;
}

}  // namespace rklab
