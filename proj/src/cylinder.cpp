#include "rklab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rklab/tail_point.hpp"

namespace rklab {

void check_depth(int depth, const char* what) {
  if (depth < 1 || depth > kMaxDepth) {
    throw std::out_of_range(std::string(what) + ": depth " + std::to_string(depth) +
                            " outside [1, " + std::to_string(kMaxDepth) + "]");
  }
}

// ---------------------------------------------------------------------------
// CylinderFunction

CylinderFunction::CylinderFunction(int depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
  check_depth(depth, "cylinder function");
  if (values_.size() != table_size(depth)) {
    throw std::invalid_argument("cylinder function of depth " + std::to_string(depth) +
                                " needs " + std::to_string(table_size(depth)) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("cylinder function values must be finite");
  }
}

CylinderFunction CylinderFunction::constant(double c, int depth) {
  check_depth(depth, "constant");
  return CylinderFunction(depth, std::vector<double>(table_size(depth), c));
}

CylinderFunction CylinderFunction::indicator(const Word& w) {
  check_depth(w.size(), "indicator");
  std::vector<double> v(table_size(w.size()), 0.0);
  v[w.index()] = 1.0;
  return CylinderFunction(w.size(), std::move(v));
}

CylinderFunction CylinderFunction::from_terms(
    int depth, std::initializer_list<std::pair<const char*, double>> terms) {
  CylinderFunction f = zero(depth);
  for (const auto& [bits, coeff] : terms) {
    const Word w = Word::parse(bits);
    if (w.size() > depth) throw std::invalid_argument("term word longer than depth");
    const int free = depth - w.size();
    const std::size_t base = static_cast<std::size_t>(w.index()) << free;
    for (std::size_t t = 0; t < table_size(free) ; ++t) f.values_[base | t] += coeff;
  }
  return f;
}

double CylinderFunction::at(const Word& w) const {
  if (w.size() < depth_) throw std::invalid_argument("word shorter than function depth");
  return values_[static_cast<std::size_t>(w.prefix(depth_).index())];
}

double CylinderFunction::evaluate(const TailPoint& x) const { return at(x.truncate(depth_)); }

CylinderFunction CylinderFunction::lift(int depth) const {
  check_depth(depth, "lift");
  if (depth < depth_) throw std::invalid_argument("lift cannot reduce depth");
  const int extra = depth - depth_;
  std::vector<double> v(table_size(depth));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i >> extra];
  return CylinderFunction(depth, std::move(v));
}

int CylinderFunction::minimal_depth() const {
  int d = depth_;
  while (d > 1) {
    const int extra = depth_ - (d - 1);
    bool ok = true;
    for (std::size_t i = 0; i < values_.size() && ok; ++i) {
      ok = values_[i] == values_[(i >> extra) << extra];
    }
    if (!ok) break;
    --d;
  }
  return d;
}

bool CylinderFunction::is_constant(double tol) const {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return *hi - *lo <= tol;
}

double CylinderFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

CylinderFunction CylinderFunction::operator-() const { return -1.0 * *this; }

namespace {
template <class Op>
CylinderFunction combine(const CylinderFunction& a, const CylinderFunction& b, Op op) {
  const int d = std::max(a.depth(), b.depth());
  const CylinderFunction la = a.lift(d);
  const CylinderFunction lb = b.lift(d);
  std::vector<double> v(table_size(d));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(la[i], lb[i]);
  return CylinderFunction(d, std::move(v));
}
}  // namespace

CylinderFunction operator+(const CylinderFunction& a, const CylinderFunction& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

CylinderFunction operator-(const CylinderFunction& a, const CylinderFunction& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

CylinderFunction operator*(double c, const CylinderFunction& f) {
  std::vector<double> v(f.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f.values_[i];
  return CylinderFunction(f.depth_, std::move(v));
}

// ---------------------------------------------------------------------------
// CylinderMeasure

CylinderMeasure::CylinderMeasure(int depth, std::vector<double> weights)
    : depth_(depth), weights_(std::move(weights)) {
  check_depth(depth, "cylinder measure");
  if (weights_.size() != table_size(depth)) {
    throw std::invalid_argument("cylinder measure of depth " + std::to_string(depth) +
                                " needs " + std::to_string(table_size(depth)) +
                                " weights, got " + std::to_string(weights_.size()));
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("measure weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("measure weights sum to " + std::to_string(total) + ", not 1");
  }
}

double CylinderMeasure::mass(const Word& w) const {
  if (w.size() > depth_) return refine(w.size()).mass(w);
  const int free = depth_ - w.size();
  const std::size_t base = static_cast<std::size_t>(w.index()) << free;
  double m = 0.0;
  for (std::size_t t = 0; t < table_size(free); ++t) m += weights_[base | t];
  return m;
}

CylinderMeasure CylinderMeasure::marginal(int depth) const {
  check_depth(depth, "marginal");
  if (depth > depth_) throw std::invalid_argument("marginal cannot increase depth");
  const int extra = depth_ - depth;
  std::vector<double> w(table_size(depth), 0.0);
  for (std::size_t i = 0; i < weights_.size(); ++i) w[i >> extra] += weights_[i];
  return CylinderMeasure(Trusted{}, depth, std::move(w));
}

CylinderMeasure CylinderMeasure::refine(int depth) const {
  check_depth(depth, "refine");
  if (depth < depth_) throw std::invalid_argument("refine cannot reduce depth");
  const int extra = depth - depth_;
  const double share = std::ldexp(1.0, -extra);
  std::vector<double> w(table_size(depth));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weights_[i >> extra] * share;
  return CylinderMeasure(Trusted{}, depth, std::move(w));
}

CylinderMeasure CylinderMeasure::at_depth(int depth) const {
  return depth <= depth_ ? marginal(depth) : refine(depth);
}

CylinderMeasure make_trusted_measure(int depth, std::vector<double> weights) {
  check_depth(depth, "measure");
  return CylinderMeasure(CylinderMeasure::Trusted{}, depth, std::move(weights));
}

CylinderMeasure max_entropy(int depth) {
  check_depth(depth, "max_entropy");
  return CylinderMeasure(depth, std::vector<double>(table_size(depth), std::ldexp(1.0, -depth)));
}

CylinderMeasure bernoulli(int depth, double q) {
  check_depth(depth, "bernoulli");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bernoulli parameter outside [0, 1]");
  std::vector<double> w(table_size(depth));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int ones = Word(i, depth).count_ones();
    w[i] = std::pow(q, ones) * std::pow(1.0 - q, depth - ones);
  }
  return make_trusted_measure(depth, std::move(w));
}

CylinderMeasure markov(int depth, const std::array<std::array<double, 2>, 2>& P) {
  check_depth(depth, "markov");
  for (const auto& row : P) {
    if (row[0] < 0.0 || row[1] < 0.0 || std::abs(row[0] + row[1] - 1.0) > 1e-12) {
      throw std::invalid_argument("markov transition matrix is not row-stochastic");
    }
  }
  const double flow = P[0][1] + P[1][0];
  const std::array<double, 2> init =
      flow > 0.0 ? std::array<double, 2>{P[1][0] / flow, P[0][1] / flow}
                 : std::array<double, 2>{0.5, 0.5};
  std::vector<double> w(table_size(depth));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Word word(i, depth);
    double m = init[static_cast<std::size_t>(word.at(0))];
    for (int t = 1; t < depth; ++t) {
      m *= P[static_cast<std::size_t>(word.at(t - 1))][static_cast<std::size_t>(word.at(t))];
    }
    w[i] = m;
  }
  return make_trusted_measure(depth, std::move(w));
}

CylinderMeasure dirac(const TailPoint& x, int depth) {
  check_depth(depth, "dirac");
  std::vector<double> w(table_size(depth), 0.0);
  w[static_cast<std::size_t>(x.truncate(depth).index())] = 1.0;
  return CylinderMeasure(depth, std::move(w));
}

double integrate(const CylinderFunction& f, const CylinderMeasure& mu) {
  const int d = std::max(f.depth(), mu.depth());
  const CylinderFunction lf = f.lift(d);
  const CylinderMeasure lm = mu.at_depth(d);
  double s = 0.0;
  for (std::size_t i = 0; i < table_size(d); ++i) s += lf[i] * lm[i];
  return s;
}

}  // namespace rklab
