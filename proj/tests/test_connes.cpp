#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rklab/connes.hpp"
#include "rklab/seminorm.hpp"
#include "rklab/transport.hpp"
#include "rklab/wordgraph.hpp"

using namespace rklab;

namespace {

CylinderMeasure random_measure(std::mt19937_64& rng, int depth) {
  return CylinderMeasure(depth, oracle::random_probability(rng, table_size(depth), 0.4));
}

Exponents random_exponents(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < 0.15) return Exponents::from_p(1.0);
  if (r < 0.25) return Exponents::infinite();
  return Exponents::from_p(1.05 + 5.0 * u(rng));
}

}  // namespace

TEST_CASE("equal measures give a zero bracket") {
  const auto b = connes_depth(max_entropy(5), max_entropy(5), Exponents::from_p(2.0), 5);
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);
  CHECK(b.wasserstein == 0.0);
}

TEST_CASE("p = 1 is solved exactly by the flow dual") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 1 + rep % 8;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const double w = wasserstein_graph(mu, nu, k).value;
    for (const auto& e : {Exponents::from_p(1.0), Exponents::infinite()}) {
      const auto b = connes_depth(mu, nu, e, k);
      CHECK(b.exact);
      CHECK(b.lower == doctest::Approx(w).epsilon(1e-9).scale(1.0));
      CHECK(b.upper == doctest::Approx(w).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("shifted dirac pair stays within the chain bound") {
  const TailPoint x = TailPoint::parse("0110", "01");
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const auto e = Exponents::from_p(p);
    CHECK(orbit_chain_bound(x, x.shift(1), e) == doctest::Approx(e.root_of_two()));
    for (int k = 2; k <= 8; ++k) {
      const auto b = connes_depth(dirac(x, k), dirac(x.shift(1), k), e, k, 500);
      CHECK(b.upper <= e.root_of_two() + 1e-12);
      CHECK(b.lower <= b.upper + 1e-9);
    }
  }
  CHECK(orbit_chain_bound(x, x, Exponents::from_p(2.0)) == 0.0);
  CHECK(std::isinf(orbit_chain_bound(TailPoint::constant(0), TailPoint::constant(1), Exponents::from_p(2.0))));
}

TEST_CASE("same-class dirac pairs have brackets under the chain bound") {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> len(0, 3), bit(0, 1);
  auto random_word = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += static_cast<char>('0' + bit(rng));
    return s;
  };
  int tested = 0;
  while (tested < 15) {
    const std::string period = random_word(1 + len(rng));
    const TailPoint x = TailPoint::parse(random_word(len(rng)), period);
    const TailPoint y = TailPoint::parse(random_word(len(rng)), period);
    const auto e = Exponents::from_p(1.5 + tested % 3);
    const double chain = orbit_chain_bound(x, y, e);
    REQUIRE(std::isfinite(chain));
    const int k = 3 + tested % 5;
    const auto b = connes_depth(dirac(x, k), dirac(y, k), e, k, 300);
    CHECK(b.upper <= chain + 1e-9);
    ++tested;
  }
}

TEST_CASE("sandwich between the wasserstein distance and its scaled copy") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 1 + rep % 6;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const auto e = random_exponents(rng);
    const auto s = sandwich_check(mu, nu, e, k, 800);
    CHECK(s.lower_ok);
    CHECK(s.upper_ok);
    CHECK(s.wasserstein <= s.lower + 1e-9);
    CHECK(s.lower <= s.upper + 1e-9);
    CHECK(s.upper == doctest::Approx(e.root_of_two() * s.wasserstein).epsilon(1e-12));
  }
}

TEST_CASE("witness is admissible under an independent check") {
  std::mt19937_64 rng(64);
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 2 + rep % 6;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const auto e = random_exponents(rng);
    const auto b = connes_depth(mu, nu, e, k, 600);
    CHECK(b.witness.depth() == k);
    CHECK(commutator_seminorm(b.witness, e).value <= 1.0 + kAdmissibleSlack);
    CHECK(constraint_level(b.witness, e) == doctest::Approx(commutator_seminorm(b.witness, e).value).epsilon(1e-12));
    CHECK(integrate(b.witness, mu.at_depth(k)) - integrate(b.witness, nu.at_depth(k)) ==
          doctest::Approx(b.lower).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("bracket is symmetric in the measures") {
  std::mt19937_64 rng(65);
  for (int rep = 0; rep < 10; ++rep) {
    const int k = 2 + rep % 5;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const auto e = Exponents::from_p(2.0 + rep % 3);
    const auto a = connes_depth(mu, nu, e, k, 500), b = connes_depth(nu, mu, e, k, 500);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.witness == -b.witness);
  }
}

TEST_CASE("certified lower bounds do not decrease with depth") {
  std::mt19937_64 rng(66);
  for (int rep = 0; rep < 4; ++rep) {
    const auto mu = random_measure(rng, 7), nu = random_measure(rng, 7);
    const auto seq = connes_sequence(mu, nu, Exponents::from_p(2.0 + rep), 7, 400);
    REQUIRE(seq.size() == 7);
    for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i - 1].lower <= seq[i].lower + 1e-9);
  }
}

TEST_CASE("opposite constants grow with depth") {
  const auto mu = dirac(TailPoint::constant(0), 8), nu = dirac(TailPoint::constant(1), 8);
  const auto seq = connes_sequence(mu, nu, Exponents::from_p(2.0), 8, 300);
  for (int k = 1; k <= 8; ++k) {
    CHECK(seq[k - 1].wasserstein == k);
    CHECK(seq[k - 1].lower >= k - 1e-9);
  }
}

TEST_CASE("depth cap and validation") {
  CHECK_THROWS_AS(connes_depth(max_entropy(2), max_entropy(2), Exponents::from_p(2.0), kMaxConnesDepth + 1),
                  std::out_of_range);
  CHECK_THROWS(connes_depth(max_entropy(2), max_entropy(2), Exponents::from_p(2.0), 2, -1));
}
