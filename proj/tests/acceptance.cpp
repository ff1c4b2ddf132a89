// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "oracle.hpp"
#include "rklab/connes.hpp"
#include "rklab/induced_norm.hpp"
#include "rklab/io.hpp"
#include "rklab/operators.hpp"
#include "rklab/seminorm.hpp"
#include "rklab/spectral.hpp"
#include "rklab/transport.hpp"
#include "rklab/wordgraph.hpp"

using namespace rklab;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CylinderFunction random_function(std::mt19937_64& rng, int depth) {
  return CylinderFunction(depth, oracle::random_values(rng, table_size(depth)));
}

CylinderMeasure random_measure(std::mt19937_64& rng, int depth) {
  return CylinderMeasure(depth, oracle::random_probability(rng, table_size(depth), 0.3));
}

Exponents random_exponents(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < 0.1) return Exponents::from_p(1.0);
  if (r < 0.2) return Exponents::infinite();
  return Exponents::from_p(1.0 + 6.0 * u(rng));
}

Verdict golden_derivatives() {
  const std::vector<std::pair<CylinderFunction, CylinderFunction>> cases{
      {CylinderFunction::from_terms(2, {{"01", 2}, {"11", 4}, {"10", 2}}),
       CylinderFunction::from_terms(3, {{"001", 2}, {"100", -2}, {"011", 2}, {"110", -2}})},
      {CylinderFunction::from_terms(3, {{"001", 2}, {"011", 4}, {"111", 6}, {"110", 4}, {"100", 2}}),
       CylinderFunction::from_terms(4, {{"0001", 2}, {"0100", 2}, {"1100", -2}, {"0111", 2}, {"0010", -2},
                                        {"0011", 2}, {"1000", -2}, {"1110", -2}, {"1011", 4}, {"1101", -4}})},
      {CylinderFunction::from_terms(3, {{"001", 2}, {"010", 2}, {"100", 2}, {"011", 4}, {"101", 4}, {"110", 4},
                                        {"111", 6}}),
       CylinderFunction::from_terms(4, {{"0001", 2}, {"0011", 2}, {"0101", 2}, {"0111", 2}, {"1000", -2},
                                        {"1010", -2}, {"1100", -2}, {"1110", -2}})},
  };
  int exact = 0;
  for (const auto& [f, d] : cases) exact += discrete_derivative(f) == d;
  return {exact == 3, std::to_string(exact) + "/3 tables exact"};
}

Verdict seminorm_identity() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const int depth = 1 + rep % 6;
    const auto f = random_function(rng, depth);
    const auto n = induced_norm(weighted_koopman_matrix(discrete_derivative(f)), Exponents::from_p(2.0),
                                max_entropy(depth + 1), max_entropy(depth));
    worst = std::max(worst, std::abs(n.value() - commutator_seminorm(f, Exponents::from_p(2.0)).value));
  }
  return {worst <= 1e-9, "200 samples, max |formula - norm| = " + fmt(worst)};
}

Verdict inequality_chains() {
  std::mt19937_64 rng(1002);
  const double tol = 1e-12;
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto f = random_function(rng, 1 + rep % 6);
    const auto e = random_exponents(rng);
    const auto b = seminorm_bounds(f, e);
    const auto& c = b.chain;
    violations += !(b.ruelle_gap <= b.seminorm + tol && b.seminorm <= b.koopman_gap + tol);
    violations += !(c.minimum <= c.harmonic + tol && c.harmonic <= c.geometric + tol &&
                    c.geometric <= c.arithmetic + tol && c.arithmetic <= c.quadratic + tol &&
                    c.quadratic <= b.seminorm + tol && b.seminorm <= c.derivative_sup + tol);
  }
  double equality_gap = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto f = apply_koopman(random_function(rng, 1 + rep % 6));
    const auto b = seminorm_bounds(f, random_exponents(rng));
    equality_gap = std::max({equality_gap, std::abs(b.koopman_gap - b.seminorm), std::abs(b.ruelle_gap - b.seminorm)});
  }
  return {violations == 0 && equality_gap <= 1e-12,
          std::to_string(violations) + " violations in 1000 samples, g o sigma equality gap " + fmt(equality_gap)};
}

Verdict projection_norm() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int depth = n + 2; depth <= 8; ++depth) {
      worst = std::max(worst, std::abs(kl_commutator_norm(n, Exponents::from_p(2.0), depth).norm.value() - 1.0));
    }
  }
  std::string measured;
  for (const auto& [name, e] : {std::pair{"p=1", Exponents::from_p(1.0)}, std::pair{"p=inf", Exponents::infinite()}}) {
    measured += std::string(" ") + name + ":";
    for (int n = 1; n <= 3; ++n) measured += " " + fmt(kl_commutator_norm(n, e, n + 3).norm.value());
  }
  return {worst <= 1e-9, "p=2 max |norm - 1| = " + fmt(worst) + "; measured n=1..3" + measured};
}

Verdict spectral() {
  const auto w = discrete_derivative(CylinderFunction::indicator(Word::parse("1")));
  double chi_err = 0.0;
  for (double lambda : {2.0, 3.0, 4.0}) {
    const auto r = weighted_koopman_radius(w, Exponents::from_p(lambda));
    chi_err = std::max(chi_err, std::abs(r.radius - std::pow(2.0, -1.0 / lambda)));
  }
  std::mt19937_64 rng(1005);
  double eq_err = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int depth = 1 + rep % 4;
    const auto f = random_function(rng, depth);
    const double r = commutator_spectral_radius(f, depth + 1).radius;
    const double s = commutator_seminorm(f, Exponents::from_p(2.0)).value;
    eq_err = std::max(eq_err, std::abs(r - s) / std::max(1.0, s));
  }
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto f = random_function(rng, 1 + rep % 5);
    const auto e = random_exponents(rng);
    violations += weighted_koopman_radius(discrete_derivative(f), e).radius > commutator_seminorm(f, e).value + 1e-8;
  }
  return {chi_err <= 1e-10 && eq_err <= 1e-6 && violations == 0,
          "chi_[1] err " + fmt(chi_err) + ", p=2 equality err " + fmt(eq_err) + ", " + std::to_string(violations) +
              " norm<radius violations"};
}

Verdict graph() {
  bool metric = true, diameter = true;
  int below_bound = 0;
  for (int k = 1; k <= 8; ++k) {
    const auto d = all_pairs_distances(k);
    const std::size_t n = table_size(k);
    int diam = 0;
    for (std::size_t u = 0; u < n; ++u) {
      metric = metric && d[u * n + u] == 0;
      for (std::size_t v = 0; v < n; ++v) {
        diam = std::max<int>(diam, d[u * n + v]);
        metric = metric && d[u * n + v] == d[v * n + u] && (u == v || d[u * n + v] > 0);
        below_bound += d[u * n + v] < lcs_distance_formula(Word(u, k), Word(v, k)).lower_bound;
        for (std::size_t x = 0; x < n; ++x) metric = metric && d[u * n + x] <= d[u * n + v] + d[v * n + x];
      }
    }
    diameter = diameter && diam == k;
  }
  std::string rates;
  for (int k = 2; k <= 10; ++k) {
    const auto d = all_pairs_distances(k);
    const std::size_t n = table_size(k);
    std::size_t agree = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) agree += lcs_distance_formula(Word(u, k), Word(v, k)).value == d[u * n + v];
    }
    rates += " " + std::to_string(k) + ":" + fmt(100.0 * static_cast<double>(agree) / static_cast<double>(n * n)) + "%";
  }
  return {metric && diameter && below_bound == 0,
          std::string("metric ") + (metric ? "ok" : "BROKEN") + ", diameter " + (diameter ? "= k" : "WRONG") + ", " +
              std::to_string(below_bound) + " pairs below k - l; lcs formula agreement" + rates};
}

Verdict transport() {
  std::mt19937_64 rng(1007);
  double flow_err = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 1 + rep % 6;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const TransportInstance inst{graph_cost_matrix(k), {mu.weights().begin(), mu.weights().end()},
                                 {nu.weights().begin(), nu.weights().end()}};
    flow_err = std::max(flow_err, std::abs(wasserstein_graph(mu, nu, k).value - transport_lp(inst).value));
  }
  auto random_instance = [&](int m, int n) {
    TransportInstance inst;
    inst.cost.resize(m, n);
    const auto c = oracle::random_values(rng, static_cast<std::size_t>(m * n), 0.0, 10.0);
    for (int i = 0; i < m * n; ++i) inst.cost.data()[i] = c[static_cast<std::size_t>(i)];
    inst.mu = oracle::random_probability(rng, static_cast<std::size_t>(m), 0.2);
    inst.nu = oracle::random_probability(rng, static_cast<std::size_t>(n), 0.2);
    return inst;
  };
  double gap = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto d = kantorovich_dual(random_instance(1 + rep % 16, 1 + (rep * 7) % 16));
    gap = std::max({gap, std::abs(d.gap), d.max_violation});
  }
  double vertex_err = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = random_instance(3, 3);
    const Eigen::Matrix3d c = inst.cost;
    const double oracle_value = oracle::transport_3x3(c, Eigen::Vector3d(inst.mu[0], inst.mu[1], inst.mu[2]),
                                                      Eigen::Vector3d(inst.nu[0], inst.nu[1], inst.nu[2]));
    vertex_err = std::max(vertex_err, std::abs(transport_lp(inst).value - oracle_value));
  }
  return {flow_err <= 1e-9 && gap <= 1e-9 && vertex_err <= 1e-12,
          "flow vs LP " + fmt(flow_err) + ", duality gap " + fmt(gap) + ", 3x3 vs vertices " + fmt(vertex_err)};
}

Verdict sandwich() {
  std::mt19937_64 rng(1008);
  int failures = 0;
  double min_ratio = 1e300, max_scaled = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 1 + rep % 8;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const auto e = random_exponents(rng);
    const auto s = sandwich_check(mu, nu, e, k);
    failures += !(s.lower_ok && s.upper_ok);
    if (s.wasserstein > 0.0) {
      min_ratio = std::min(min_ratio, s.ratio);
      max_scaled = std::max(max_scaled, s.ratio / e.root_of_two());
    }
  }
  double p1_err = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int k = 1 + rep % 8;
    const auto mu = random_measure(rng, k), nu = random_measure(rng, k);
    const auto b = connes_depth(mu, nu, Exponents::from_p(1.0), k);
    p1_err = std::max({p1_err, std::abs(b.lower - b.wasserstein), std::abs(b.upper - b.wasserstein)});
  }
  return {failures == 0 && p1_err <= 1e-9,
          std::to_string(failures) + "/50 outside [W, 2^(1/lambda) W]; min lower/W " + fmt(min_ratio) +
              ", max lower/(2^(1/lambda) W) " + fmt(max_scaled) + "; p=1 err " + fmt(p1_err)};
}

Verdict divergence() {
  const auto seq = wasserstein_dinfty(dirac(TailPoint::constant(0), 12), dirac(TailPoint::constant(1), 12), 12);
  int exact = 0;
  for (int k = 1; k <= 12; ++k) exact += seq.values[static_cast<std::size_t>(k - 1)] == k;
  return {exact == 12 && seq.divergent, std::to_string(exact) + "/12 depths with W = k, divergent flag " +
                                            (seq.divergent ? "set" : "unset")};
}

// Extremes of a square CSV matrix, split into diagonal and off-diagonal entries.
struct CsvStats {
  std::size_t rows = 0, cols = 0;
  double min = 1e300, max = -1e300;
  double off_min = 1e300;
  bool diagonal_zero = true;
};

CsvStats scan(const std::string& text) {
  CsvStats s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t col = 0, pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      const double x = std::strtod(line.c_str() + pos, nullptr);
      s.min = std::min(s.min, x);
      s.max = std::max(s.max, x);
      if (col == s.rows) {
        s.diagonal_zero = s.diagonal_zero && x == 0.0;
      } else {
        s.off_min = std::min(s.off_min, x);
      }
      ++col;
      pos = end + 1;
    }
    s.cols = col;
    ++s.rows;
  }
  return s;
}

Verdict figures() {
  const fs::path work = RKLAB_WORK_DIR;
  fs::remove_all(work);
  fs::create_directories(work);
  bool ok = true;
  std::string detail;
  std::vector<std::string> outputs[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = work / ("run" + std::to_string(run));
    // the second run is single-threaded, so equality also covers thread-count independence
    const std::string env = run == 0 ? "" : "RKLAB_THREADS=1";
    const auto a = cli::run(RKLAB_CLI_PATH, {"figures", "--which", "fgamma", "--k", "7", "--out", dir.string()}, work, env);
    const auto b = cli::run(RKLAB_CLI_PATH, {"figures", "--which", "dist", "--k", "12", "--out", dir.string()}, work, env);
    ok = ok && a.status == 0 && b.status == 0;
    for (const char* name : {"fgamma_k7.csv", "graph_distance_k12.csv", "truncated_distance_k12.csv",
                             "cumulative_distance_k12.csv"}) {
      outputs[run].push_back(cli::read_file(dir / name));
    }
  }
  if (!ok) return {false, "figures command failed"};
  const bool identical = outputs[0] == outputs[1];

  // fgamma: 2^8 plateaus, f takes every value 0..7 on integers, |derivative| <= 1
  std::istringstream in(outputs[0][0]);
  std::string line;
  std::getline(in, line);
  std::vector<int> seen(8, 0);
  std::size_t rows = 0;
  double dmax = 0.0;
  bool integral = true;
  while (std::getline(in, line)) {
    double t, f, d;
    char c1, c2;
    std::istringstream row(line);
    row >> t >> c1 >> f >> c2 >> d;
    integral = integral && f == std::floor(f) && f >= 0 && f <= 7;
    if (integral) seen[static_cast<std::size_t>(f)] = 1;
    dmax = std::max(dmax, std::abs(d));
    ++rows;
  }
  const bool all_values = std::count(seen.begin(), seen.end(), 1) == 8;
  const bool f_ok = rows == 256 && integral && all_values && dmax <= 1.0;

  const auto g = scan(outputs[0][1]);
  const auto tr = scan(outputs[0][2]);
  const auto cu = scan(outputs[0][3]);
  const bool g_ok = g.rows == 4096 && g.cols == 4096 && g.diagonal_zero && g.off_min >= 1.0 && g.max == 12.0;
  const bool t_ok = tr.diagonal_zero && tr.off_min > 0.0 && tr.max <= 1.0;
  const bool c_ok = cu.min >= 0.0 && cu.max < 1.0;
  for (const auto& entry : fs::directory_iterator(work)) {
    if (entry.is_directory()) fs::remove_all(entry.path());
  }
  detail = std::string("fgamma ") + (f_ok ? "ok" : "BAD") + " (f in 0..7, max |derivative| " + fmt(dmax) +
           "); d_12 diagonal 0, max " + fmt(g.max) + (g_ok ? "" : " BAD") + "; truncated off-diagonal in [" + fmt(tr.off_min) + ", " + fmt(tr.max) + "]" +
           (t_ok ? "" : " BAD") + "; cumulative " + (c_ok ? "ok" : "BAD") + "; runs " +
           (identical ? "byte-identical" : "DIFFER");
  return {f_ok && g_ok && t_ok && c_ok && identical, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"golden derivatives", golden_derivatives},
      {"seminorm identity", seminorm_identity},
      {"inequality chains", inequality_chains},
      {"projection norm", projection_norm},
      {"spectral", spectral},
      {"graph", graph},
      {"transport", transport},
      {"sandwich", sandwich},
      {"divergence", divergence},
      {"figures", figures},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("[%s] %2zu %-19s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
