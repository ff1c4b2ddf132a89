// rklab: command-line front end.
//
// Every subcommand prints one JSON report on stdout. Exit status is 0 on
// success, 2 for invalid input or flags, 3 when an iterative solver stops
// before its tolerance is met (the partial report is still printed).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "rklab/connes.hpp"
#include "rklab/figures.hpp"
#include "rklab/io.hpp"
#include "rklab/operators.hpp"
#include "rklab/parallel.hpp"
#include "rklab/seminorm.hpp"
#include "rklab/spectral.hpp"
#include "rklab/transport.hpp"
#include "rklab/wordgraph.hpp"

namespace {

using rklab::io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void fail(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

rklab::Exponents parse_p(const std::string& text) {
  try {
    return rklab::Exponents::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
}

int run_seminorm(const std::string& f_path, const std::string& p_text) {
  const auto f = rklab::io::read_function(f_path);
  const auto p = parse_p(p_text);
  json j = rklab::io::to_json(rklab::commutator_seminorm(f, p));
  const auto b = rklab::seminorm_bounds(f, p);
  j["koopman_gap"] = b.koopman_gap;
  j["ruelle_gap"] = b.ruelle_gap;
  j["admissibility"] = rklab::io::to_json(rklab::check_admissible(f, p));
  emit(j);
  return kExitOk;
}

int run_specrad(const std::string& f_path, const std::string& p_text, const std::string& variant, double tol) {
  const auto f = rklab::io::read_function(f_path);
  const auto p = parse_p(p_text);
  if (!(tol > 0.0)) throw ValidationError("--tol must be positive");
  const auto w = rklab::discrete_derivative(f);
  const auto bound = rklab::variational_bound(w, p, tol);
  json j = rklab::io::to_json(bound);
  j["variant"] = variant;
  j["value"] = bound.get(variant == "printed" ? rklab::BoundVariant::kPrinted : rklab::BoundVariant::kNormalized);
  j["lambda"] = p.lambda_string();
  j["seminorm"] = rklab::commutator_seminorm(f, p).value;
  emit(j);
  return bound.spectral.converged ? kExitOk : kExitNoConvergence;
}

int run_graph(int depth, const std::string& u_text, const std::string& v_text, const std::string& all_pairs) {
  if (!all_pairs.empty()) {
    if (depth > rklab::WordGraph::kMaxAllPairsDepth) {
      throw ValidationError("--all-pairs needs --depth <= " + std::to_string(rklab::WordGraph::kMaxAllPairsDepth));
    }
    const auto d = rklab::all_pairs_distances(depth);
    const std::size_t n = std::size_t{1} << depth;
    int diameter = 0;
    rklab::io::write_file_atomic(all_pairs, [&](std::ostream& out) {
      std::string line;
      for (std::size_t u = 0; u < n; ++u) {
        line.clear();
        for (std::size_t v = 0; v < n; ++v) {
          if (v) line += ',';
          line += std::to_string(d[u * n + v]);
          diameter = std::max<int>(diameter, d[u * n + v]);
        }
        line += '\n';
        out << line;
      }
    });
    emit({{"depth", depth}, {"all_pairs", all_pairs}, {"vertices", n}, {"diameter", diameter}});
    return kExitOk;
  }
  if (u_text.empty() || v_text.empty()) throw ValidationError("graph needs --u and --v, or --all-pairs");
  rklab::Word u, v;
  try {
    u = rklab::Word::parse(u_text);
    v = rklab::Word::parse(v_text);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
  if (u.size() != depth || v.size() != depth) throw ValidationError("--u and --v must have length --depth");
  const int d = rklab::bfs_distance(depth, u, v);
  const auto lcs = rklab::lcs_distance_formula(u, v);
  emit({{"depth", depth},
        {"u", u.str()},
        {"v", v.str()},
        {"distance", d},
        {"lcs", {{"ell", lcs.ell}, {"m", lcs.m}, {"n", lcs.n}, {"formula", lcs.value}, {"lower_bound", lcs.lower_bound}}}});
  return kExitOk;
}

int run_wasserstein(const std::string& mu_path, const std::string& nu_path, int depth) {
  const auto mu = rklab::io::read_measure(mu_path);
  const auto nu = rklab::io::read_measure(nu_path);
  emit(rklab::io::to_json(rklab::wasserstein_graph(mu, nu, depth)));
  return kExitOk;
}

int run_connes(const std::string& mu_path, const std::string& nu_path, const std::string& p_text, int depth,
               long budget, const std::string& witness_out) {
  const auto mu = rklab::io::read_measure(mu_path);
  const auto nu = rklab::io::read_measure(nu_path);
  const auto p = parse_p(p_text);
  if (budget < 0) throw ValidationError("--budget must be nonnegative");
  const auto bracket = rklab::connes_depth(mu, nu, p, depth, budget);
  json j = rklab::io::to_json(bracket);
  j["witness_seminorm"] = rklab::commutator_seminorm(bracket.witness, p).value;
  if (!witness_out.empty()) {
    rklab::io::write_file_atomic(witness_out, rklab::io::to_json(bracket.witness).dump(2) + "\n");
    j["witness_file"] = witness_out;
  } else {
    j["witness_file"] = nullptr;
  }
  emit(j);
  return kExitOk;
}

int run_duality(const std::string& cost_path, const std::string& mu_path, const std::string& nu_path) {
  rklab::TransportInstance inst{rklab::io::read_csv_matrix(cost_path), rklab::io::read_csv_vector(mu_path),
                                rklab::io::read_csv_vector(nu_path)};
  const auto dual = rklab::kantorovich_dual(inst);
  emit(rklab::io::to_json(dual));
  return kExitOk;
}

int run_figures(const std::string& which, int k, const std::string& out_dir) {
  const fs::path dir(out_dir);
  if (which == "fgamma") {
    if (k > rklab::kMaxFgammaDepth) throw ValidationError("fgamma needs --k <= 16");
    fs::create_directories(dir);
    const fs::path path = dir / ("fgamma_k" + std::to_string(k) + ".csv");
    rklab::io::write_file_atomic(path, rklab::emit_fgamma(k));
    emit({{"which", which}, {"k", k}, {"files", {path.string()}}});
  } else {
    if (k > rklab::kMaxDistanceFigureDepth) throw ValidationError("dist needs --k <= 12");
    json files = json::array();
    for (const auto& p : rklab::emit_distance_matrices(k, dir)) files.push_back(p.string());
    emit({{"which", which}, {"k", k}, {"files", files}});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  rklab::configure_threads_from_env();

  CLI::App app{"Ruelle-Koopman Dirac operator toolkit on the full 2-shift"};
  app.require_subcommand(1);

  std::string f_path, p_text, mu_path, nu_path, cost_path, u_text, v_text, all_pairs, variant = "normalized",
                                                                                       which, out_dir, witness_out;
  double tol = rklab::kDefaultSpectralTol;
  int depth = 0, k = 0;
  long budget = rklab::kDefaultConnesBudget;

  auto* seminorm = app.add_subcommand("seminorm", "commutator seminorm and its bounds");
  seminorm->add_option("--f", f_path, "function JSON")->required();
  seminorm->add_option("--p", p_text, "exponent p in [1, inf]")->required();

  auto* specrad = app.add_subcommand("specrad", "spectral radius of the weighted Koopman operator");
  specrad->add_option("--f", f_path, "function JSON")->required();
  specrad->add_option("--p", p_text, "exponent p in [1, inf]")->required();
  specrad->add_option("--variant", variant, "reported value")->check(CLI::IsMember({"printed", "normalized"}));
  specrad->add_option("--tol", tol, "Collatz-Wielandt bracket tolerance");

  auto* graph = app.add_subcommand("graph", "word-graph distances");
  graph->add_option("--depth", depth, "word length k")->required()->check(CLI::Range(1, rklab::WordGraph::kMaxBfsDepth));
  auto* u_opt = graph->add_option("--u", u_text, "first word");
  auto* v_opt = graph->add_option("--v", v_text, "second word");
  auto* ap_opt = graph->add_option("--all-pairs", all_pairs, "write the distance matrix CSV here");
  u_opt->needs(v_opt);
  v_opt->needs(u_opt);
  ap_opt->excludes(u_opt)->excludes(v_opt);

  auto* wass = app.add_subcommand("wasserstein", "Wasserstein distance for the word-graph metric");
  wass->add_option("--mu", mu_path, "measure JSON")->required();
  wass->add_option("--nu", nu_path, "measure JSON")->required();
  wass->add_option("--depth", depth, "depth k")->required()->check(CLI::Range(1, rklab::kMaxTransportDepth));

  auto* connes = app.add_subcommand("connes", "certified Connes-distance bracket");
  connes->add_option("--mu", mu_path, "measure JSON")->required();
  connes->add_option("--nu", nu_path, "measure JSON")->required();
  connes->add_option("--p", p_text, "exponent p in [1, inf]")->required();
  connes->add_option("--depth", depth, "depth k")->required()->check(CLI::Range(1, rklab::kMaxConnesDepth));
  connes->add_option("--budget", budget, "ascent iterations");
  connes->add_option("--witness-out", witness_out, "write the witness function JSON here");

  auto* duality = app.add_subcommand("duality", "transportation LP and Kantorovich dual");
  duality->add_option("--cost", cost_path, "cost matrix CSV")->required();
  duality->add_option("--mu", mu_path, "row marginal CSV")->required();
  duality->add_option("--nu", nu_path, "column marginal CSV")->required();

  auto* figures = app.add_subcommand("figures", "figure data as CSV");
  figures->add_option("--which", which, "fgamma or dist")->required()->check(CLI::IsMember({"fgamma", "dist"}));
  figures->add_option("--k", k, "depth")->required()->check(CLI::Range(1, rklab::kMaxFgammaDepth));
  figures->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return kExitInvalid;
  }

  try {
    if (*seminorm) return run_seminorm(f_path, p_text);
    if (*specrad) return run_specrad(f_path, p_text, variant, tol);
    if (*graph) return run_graph(depth, u_text, v_text, all_pairs);
    if (*wass) return run_wasserstein(mu_path, nu_path, depth);
    if (*connes) return run_connes(mu_path, nu_path, p_text, depth, budget, witness_out);
    if (*duality) return run_duality(cost_path, mu_path, nu_path);
    if (*figures) return run_figures(which, k, out_dir);
  } catch (const ValidationError& e) {
    fail("validation", e.what());
    return kExitInvalid;
  } catch (const rklab::io::ParseError& e) {
    fail("validation", e.what());
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    fail("validation", e.what());
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    fail("validation", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return 1;
  }
  return kExitInvalid;
}
