#include "rklab/io.hpp"

#include <unistd.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rklab::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int depth_field(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("depth") || !j["depth"].is_number_integer()) {
    throw ParseError(std::string(what) + ": missing integer \"depth\"");
  }
  return j["depth"].get<int>();
}

std::vector<double> number_array(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(std::string(what) + ": missing array \"" + key + "\"");
  }
  std::vector<double> v;
  v.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ParseError(std::string(what) + ": non-numeric entry in \"" + key + "\"");
    v.push_back(x.get<double>());
  }
  return v;
}

// Wraps library validation errors so callers see one exception type for bad input.
template <class F>
auto guarded(const char* what, F make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json mean_chain(const MeanChain& c) {
  return {{"minimum", c.minimum},       {"harmonic", c.harmonic},     {"geometric", c.geometric},
          {"arithmetic", c.arithmetic}, {"quadratic", c.quadratic}, {"derivative_sup", c.derivative_sup}};
}

}  // namespace

CylinderFunction function_from_json(const json& j) {
  const int depth = depth_field(j, "function");
  if (j.contains("order") && j["order"] != "msb-first") {
    throw ParseError("function: only \"order\": \"msb-first\" is supported");
  }
  return guarded("function", [&] { return CylinderFunction(depth, number_array(j, "values", "function")); });
}

json to_json(const CylinderFunction& f) {
  return {{"depth", f.depth()},
          {"values", std::vector<double>(f.values().begin(), f.values().end())},
          {"order", "msb-first"}};
}

CylinderMeasure measure_from_json(const json& j) {
  const int depth = depth_field(j, "measure");
  return guarded("measure", [&] { return CylinderMeasure(depth, number_array(j, "weights", "measure")); });
}

json to_json(const CylinderMeasure& mu) {
  return {{"depth", mu.depth()}, {"weights", std::vector<double>(mu.weights().begin(), mu.weights().end())}};
}

TailPoint tail_point_from_json(const json& j) {
  if (!j.is_object() || !j.contains("period") || !j["period"].is_string()) {
    throw ParseError("tail point: missing string \"period\"");
  }
  const std::string prefix = j.contains("prefix") ? j["prefix"].get<std::string>() : "";
  return guarded("tail point", [&] { return TailPoint::parse(prefix, j["period"].get<std::string>()); });
}

json to_json(const TailPoint& x) { return {{"prefix", x.prefix().str()}, {"period", x.period().str()}}; }

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

CylinderFunction read_function(const std::filesystem::path& path) {
  return function_from_json(read_json_file(path));
}

CylinderMeasure read_measure(const std::filesystem::path& path) {
  return measure_from_json(read_json_file(path));
}

Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && (*p == ',' || *p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double x;
      const auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc()) throw ParseError(path.string() + ": unreadable number in \"" + line + "\"");
      row.push_back(x);
      p = next;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no numbers");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError(path.string() + ": ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

std::vector<double> read_csv_vector(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_csv_matrix(path);
  if (m.rows() != 1 && m.cols() != 1) throw ParseError(path.string() + ": expected a single row or column");
  std::vector<double> v(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) v[static_cast<std::size_t>(i)] = m(i);
  return v;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_csv_row(const std::vector<double>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ',';
    s += format_number(row[i]);
  }
  s += '\n';
  return s;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& produce) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    produce(out);
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  write_file_atomic(path, [&](std::ostream& out) {
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
  });
}

json to_json(const SeminormReport& r) {
  return {{"value", r.value},
          {"argmax_word", r.argmax_word.str()},
          {"p", r.exponents.p_string()},
          {"lambda", r.exponents.lambda_string()},
          {"bounds", mean_chain(r.chain)}};
}

json to_json(const SeminormBounds& b) {
  return {{"koopman_gap", b.koopman_gap}, {"seminorm", b.seminorm}, {"ruelle_gap", b.ruelle_gap},
          {"chain", mean_chain(b.chain)}};
}

json to_json(const Admissibility& a) {
  return {{"admissible", a.admissible},         {"seminorm", a.seminorm},   {"margin", a.margin},
          {"derivative_sup", a.derivative_sup}, {"sufficient", a.sufficient}, {"necessary", a.necessary}};
}

json to_json(const SpectralResult& r) {
  return {{"radius", r.radius},
          {"bracket_lo", r.bracket_lo},
          {"bracket_hi", r.bracket_hi},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

json to_json(const VariationalBound& b) {
  json j = to_json(b.spectral);
  j["variant_values"] = {{"printed", b.printed}, {"normalized", b.normalized}};
  return j;
}

json to_json(const InducedNorm& n) {
  return {{"lower", n.lower}, {"upper", n.upper}, {"exact", n.exact}};
}

json to_json(const GraphTransport& t) {
  return {{"depth", t.depth},
          {"value", t.value},
          {"primal", t.primal},
          {"gap", t.certificate_gap},
          {"phases", t.phases},
          {"certificate", to_json(t.potential)}};
}

json to_json(const KantorovichDual& d) {
  return {{"value", d.primal}, {"dual_value", d.value}, {"gap", d.gap},
          {"max_violation", d.max_violation}, {"a", d.a}, {"b", d.b}};
}

json to_json(const ConnesBracket& b) {
  return {{"depth", b.depth},
          {"p", b.exponents.p_string()},
          {"lambda", b.exponents.lambda_string()},
          {"lower", b.lower},
          {"upper", b.upper},
          {"wasserstein", b.wasserstein},
          {"width", b.width()},
          {"exact", b.exact},
          {"iterations", b.iterations}};
}

}  // namespace rklab::io
