#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rklab/induced_norm.hpp"
#include "rklab/operators.hpp"
#include "rklab/seminorm.hpp"

using namespace rklab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CylinderFunction random_function(std::mt19937_64& rng, int depth) {
  return CylinderFunction(depth, oracle::random_values(rng, table_size(depth)));
}

Exponents random_exponents(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < 0.1) return Exponents::from_p(1.0);
  if (r < 0.2) return Exponents::infinite();
  return Exponents::from_p(1.0 + 6.0 * u(rng));
}

double lambda_of(const Exponents& e) { return e.lambda_infinite() ? kInf : e.lambda(); }

}  // namespace

TEST_CASE("seminorm examples") {
  const auto f = CylinderFunction::from_terms(2, {{"01", 2}, {"11", 4}, {"10", 2}});
  const auto r = commutator_seminorm(f, Exponents::from_p(2.0));
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(commutator_seminorm(CylinderFunction::constant(3.0, 5), Exponents::from_p(3.0)).value == 0.0);
  const auto chi = CylinderFunction::indicator(Word::parse("1"));
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, kInf}) {
    const auto e = std::isinf(p) ? Exponents::infinite() : Exponents::from_p(p);
    CHECK(commutator_seminorm(chi, e).value == doctest::Approx(std::pow(2.0, -1.0 / lambda_of(e))).epsilon(1e-15));
  }
}

TEST_CASE("seminorm matches the enumeration oracle") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const int depth = 1 + rep % 6;
    const auto f = random_function(rng, depth);
    const auto e = random_exponents(rng);
    const auto t = oracle::table_of(depth, {f.values().begin(), f.values().end()});
    const auto r = commutator_seminorm(f, e);
    CHECK(r.value == doctest::Approx(oracle::seminorm(depth, t, lambda_of(e))).epsilon(1e-13));
    CHECK(r.argmax_word.size() == depth);
  }
}

TEST_CASE("argmax ties resolve to the smallest word") {
  // chi_[1] attains its sup on every word; the report names 0
  const auto r = commutator_seminorm(CylinderFunction::indicator(Word::parse("1")).lift(3), Exponents::from_p(2.0));
  CHECK(r.argmax_word.str() == "000");
}

TEST_CASE("seminorm depends on p only through lambda") {
  std::mt19937_64 rng(22);
  for (double p : {1.25, 1.5, 2.0, 3.0, 7.0}) {
    const double q = p / (p - 1.0);
    for (int rep = 0; rep < 10; ++rep) {
      const auto f = random_function(rng, 4);
      CHECK(commutator_seminorm(f, Exponents::from_p(p)).value ==
            doctest::Approx(commutator_seminorm(f, Exponents::from_p(q)).value).epsilon(1e-14));
    }
  }
  const auto f = random_function(rng, 5);
  CHECK(commutator_seminorm(f, Exponents::from_p(1.0)).value == commutator_seminorm(f, Exponents::infinite()).value);
}

TEST_CASE("seminorm is homogeneous and translation invariant") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const auto f = random_function(rng, 1 + rep % 6);
    const auto e = random_exponents(rng);
    const double base = commutator_seminorm(f, e).value;
    CHECK(commutator_seminorm(-2.5 * f, e).value == doctest::Approx(2.5 * base).epsilon(1e-13));
    CHECK(commutator_seminorm(f + CylinderFunction::constant(7.0, f.depth()), e).value ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("bounds and the means chain hold on random samples") {
  std::mt19937_64 rng(24);
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int depth = 1 + rep % 6;
    const auto f = random_function(rng, depth);
    const auto e = random_exponents(rng);
    const auto b = seminorm_bounds(f, e);
    const auto& c = b.chain;
    const double tol = 1e-12;
    violations += !(b.koopman_gap + tol >= b.seminorm);
    violations += !(b.seminorm + tol >= b.ruelle_gap);
    violations += !(c.minimum <= c.harmonic + tol && c.harmonic <= c.geometric + tol &&
                    c.geometric <= c.arithmetic + tol && c.arithmetic <= c.quadratic + tol &&
                    c.quadratic <= b.seminorm + tol && b.seminorm <= c.derivative_sup + tol);
    violations += !(c.arithmetic + tol >= b.ruelle_gap);
  }
  CHECK(violations == 0);
}

TEST_CASE("means chain holds pointwise at every word") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 100; ++rep) {
    const int depth = 2 + rep % 5;
    const auto f = random_function(rng, depth);
    const auto t = oracle::table_of(depth, {f.values().begin(), f.values().end()});
    const double lambda = 2.0 + rep % 4;
    for (const auto& u : oracle::words(depth)) {
      const std::string tail = u.substr(0, depth - 1);
      const double a = std::abs(t.at(u) - t.at("0" + tail));
      const double b = std::abs(t.at(u) - t.at("1" + tail));
      const double mn = std::min(a, b), mx = std::max(a, b);
      const double h = (a > 0 && b > 0) ? 2.0 / (1.0 / a + 1.0 / b) : 0.0;
      const double g = std::sqrt(a * b), ar = 0.5 * (a + b), q = std::sqrt(0.5 * (a * a + b * b));
      const double m = oracle::power_mean(a, b, lambda);
      const double tol = 1e-12;
      CHECK((mn <= h + tol && h <= g + tol && g <= ar + tol && ar <= q + tol && q <= m + tol && m <= mx + tol));
    }
  }
}

TEST_CASE("koopman and ruelle bounds coincide for f = g o sigma") {
  std::mt19937_64 rng(26);
  for (int depth = 1; depth <= 6; ++depth) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto f = apply_koopman(random_function(rng, depth));
      const auto e = random_exponents(rng);
      const auto b = seminorm_bounds(f, e);
      CHECK(b.koopman_gap == doctest::Approx(b.seminorm).epsilon(1e-12));
      CHECK(b.ruelle_gap == doctest::Approx(b.seminorm).epsilon(1e-12));
    }
  }
  const auto zero = seminorm_bounds(CylinderFunction::constant(1.0, 3), Exponents::from_p(2.0));
  CHECK(zero.koopman_gap == 0.0);
  CHECK(zero.ruelle_gap == 0.0);
  CHECK(zero.seminorm == 0.0);
}

TEST_CASE("admissibility") {
  const auto two = Exponents::from_p(2.0);
  const auto a = check_admissible(2.0 * CylinderFunction::indicator(Word::parse("1")), two);
  CHECK(a.derivative_sup == 2.0);
  CHECK_FALSE(a.admissible);
  CHECK_FALSE(a.necessary);
  const auto b = check_admissible(CylinderFunction::indicator(Word::parse("1")), two);
  CHECK(b.admissible);
  CHECK(b.sufficient);
  CHECK(b.margin == doctest::Approx(1.0 - std::sqrt(0.5)));

  std::mt19937_64 rng(27);
  for (int rep = 0; rep < 300; ++rep) {
    const auto f = random_function(rng, 1 + rep % 6);
    const auto e = random_exponents(rng);
    const auto r = check_admissible(f, e);
    if (r.sufficient) CHECK(r.admissible);
    if (r.admissible) CHECK(r.necessary);
    CHECK(r.derivative_sup <= e.root_of_two() * r.seminorm + 1e-12);
    // rescaling by the seminorm always lands on the boundary
    if (r.seminorm > 0.0) CHECK(check_admissible((1.0 / r.seminorm) * f, e).admissible);
  }
}

TEST_CASE("induced norm examples") {
  const auto mu = max_entropy(3);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(8, 8);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const auto e = std::isinf(p) ? Exponents::infinite() : Exponents::from_p(p);
    const auto n = induced_norm(id, e, mu);
    CHECK(n.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.upper == doctest::Approx(1.0).epsilon(1e-12));
  }
  std::mt19937_64 rng(28);
  const auto f = random_function(rng, 3);
  for (double p : {1.0, 2.0, 4.0, kInf}) {
    const auto e = std::isinf(p) ? Exponents::infinite() : Exponents::from_p(p);
    const auto n = induced_norm(multiplication_matrix(f), e, mu);
    CHECK(n.lower == doctest::Approx(f.sup_norm()).epsilon(1e-12));
    CHECK(n.upper == doctest::Approx(f.sup_norm()).epsilon(1e-12));
  }
  const auto e1 = induced_norm(conditional_expectation_matrix(3, 1), Exponents::from_p(2.0), mu);
  CHECK(e1.exact);
  CHECK(e1.value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(induced_norm(Eigen::MatrixXd::Identity(4, 8), Exponents::from_p(2.0), mu));
}

TEST_CASE("koopman is an isometry and ruelle a contraction as matrices") {
  for (double p : {1.0, 2.0, kInf}) {
    const auto e = std::isinf(p) ? Exponents::infinite() : Exponents::from_p(p);
    CHECK(induced_norm(koopman_matrix(4), e, max_entropy(5), max_entropy(4)).value() == doctest::Approx(1.0));
    CHECK(induced_norm(ruelle_matrix(4), e, max_entropy(3), max_entropy(4)).value() == doctest::Approx(1.0));
    const Eigen::MatrixXd lk = ruelle_matrix(5) * koopman_matrix(4);
    CHECK((lk - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("generic p brackets contain the exact interpolation endpoints") {
  std::mt19937_64 rng(29);
  const auto mu = max_entropy(3);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXd T(8, 8);
    for (Eigen::Index i = 0; i < T.size(); ++i) T.data()[i] = oracle::random_values(rng, 1)[0];
    for (double p : {1.3, 2.5, 6.0}) {
      const auto n = induced_norm(T, Exponents::from_p(p), mu);
      CHECK_FALSE(n.exact);
      CHECK(n.lower <= n.upper + 1e-12);
      // random probe vectors never beat the upper end
      for (int probe = 0; probe < 20; ++probe) {
        const auto v = oracle::random_values(rng, 8);
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.data(), 8);
        const Eigen::VectorXd y = T * x;
        const double nx = std::pow(x.cwiseAbs().array().pow(p).mean(), 1.0 / p);
        const double ny = std::pow(y.cwiseAbs().array().pow(p).mean(), 1.0 / p);
        CHECK(ny / nx <= n.upper + 1e-12);
      }
    }
  }
}

TEST_CASE("seminorm equals the p = 2 norm of the weighted koopman matrix") {
  std::mt19937_64 rng(30);
  for (int rep = 0; rep < 200; ++rep) {
    const int depth = 1 + rep % 6;
    const auto f = random_function(rng, depth);
    const auto d = discrete_derivative(f);
    const auto n = induced_norm(weighted_koopman_matrix(d), Exponents::from_p(2.0), max_entropy(depth + 1),
                                max_entropy(depth));
    CHECK(n.exact);
    CHECK(n.value() == doctest::Approx(commutator_seminorm(f, Exponents::from_p(2.0)).value).epsilon(1e-9));
  }
}

TEST_CASE("commutator with the projection K^n L^n") {
  const auto two = Exponents::from_p(2.0);
  CHECK(kl_commutator_norm(1, two, 4).norm.value() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(kl_commutator_norm(2, two, 5).norm.value() == doctest::Approx(1.0).epsilon(1e-9));
  for (int n = 1; n <= 3; ++n) {
    for (int depth = n + 2; depth <= 8; ++depth) {
      const auto r = kl_commutator_norm(n, two, depth);
      CHECK(r.norm.exact);
      CHECK(r.norm.value() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // p in {1, inf} is measured, not asserted to be 1
  const auto one = kl_commutator_norm(1, Exponents::from_p(1.0), 4);
  CHECK(one.norm.exact);
  CHECK(one.norm.value() >= 1.0 - 1e-12);
  CHECK(one.norm.value() <= 2.0 + 1e-12);
  CHECK_THROWS(kl_commutator_norm(2, two, 3));
}
