#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "rklab/connes.hpp"
#include "rklab/cylinder.hpp"
#include "rklab/induced_norm.hpp"
#include "rklab/seminorm.hpp"
#include "rklab/spectral.hpp"
#include "rklab/tail_point.hpp"
#include "rklab/transport.hpp"

namespace rklab::io {

using nlohmann::json;

/// Raised for malformed input files; the CLI maps it to exit status 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"depth": k, "values": [...], "order": "msb-first"}
CylinderFunction function_from_json(const json& j);
json to_json(const CylinderFunction& f);
// {"depth": k, "weights": [...]}
CylinderMeasure measure_from_json(const json& j);
json to_json(const CylinderMeasure& mu);
// {"prefix": "0110", "period": "01"}
TailPoint tail_point_from_json(const json& j);
json to_json(const TailPoint& x);

json read_json_file(const std::filesystem::path& path);
CylinderFunction read_function(const std::filesystem::path& path);
CylinderMeasure read_measure(const std::filesystem::path& path);

/// Comma/whitespace separated numbers, one matrix row per line.
Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path);
/// All numbers of a CSV file in reading order (a single row or column).
std::vector<double> read_csv_vector(const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_number(double x);
std::string format_csv_row(const std::vector<double>& row);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Streaming variant for large outputs.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& produce);

json to_json(const SeminormReport& r);
json to_json(const SeminormBounds& b);
json to_json(const Admissibility& a);
json to_json(const SpectralResult& r);
json to_json(const VariationalBound& b);
json to_json(const InducedNorm& n);
json to_json(const GraphTransport& t);
json to_json(const KantorovichDual& d);
json to_json(const ConnesBracket& b);

}  // namespace rklab::io
