#include "rklab/figures.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "rklab/io.hpp"
#include "rklab/operators.hpp"
#include "rklab/wordgraph.hpp"

namespace rklab {

std::string emit_fgamma(int k, long samples) {
  if (k < 1 || k > kMaxFgammaDepth) {
    throw std::out_of_range("emit_fgamma: k outside [1, " + std::to_string(kMaxFgammaDepth) + "]");
  }
  if (samples < 0) throw std::invalid_argument("emit_fgamma: negative sample count");
  const CylinderFunction f = count_ones_function(k);
  const CylinderFunction d = discrete_derivative(f);
  const std::size_t plateaus = table_size(k + 1);
  const double scale = std::ldexp(1.0, k + 1);

  std::string csv = "t,f,derivative\n";
  auto row = [&](double t, std::size_t w) {
    csv += io::format_csv_row({t, f[w >> 1], d[w]});
  };
  if (samples == 0) {
    for (std::size_t w = 0; w < plateaus; ++w) row(static_cast<double>(w) / scale, w);
  } else {
    for (long i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(samples);
      row(t, static_cast<std::size_t>(std::floor(t * scale)));
    }
  }
  return csv;
}

std::vector<std::filesystem::path> emit_distance_matrices(int k, const std::filesystem::path& dir) {
  if (k < 1 || k > kMaxDistanceFigureDepth) {
    throw std::out_of_range("emit_distance_matrices: k outside [1, " +
                            std::to_string(kMaxDistanceFigureDepth) + "]");
  }
  std::filesystem::create_directories(dir);
  const std::size_t n = table_size(k);
  const auto dist = all_pairs_distances(k);

  // every entry takes one of few values, so format each value once
  std::vector<std::string> graph_text(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) graph_text[static_cast<std::size_t>(i)] = std::to_string(i);
  std::vector<std::string> trunc_text(static_cast<std::size_t>(k) + 1);
  trunc_text[0] = "0";
  for (int i = 1; i <= k; ++i) trunc_text[static_cast<std::size_t>(i)] = io::format_number(std::ldexp(1.0, -i));
  std::vector<std::string> cum_text(n);
  for (std::size_t a = 0; a < n; ++a) cum_text[a] = io::format_number(std::ldexp(static_cast<double>(a), -k));

  const std::string suffix = "_k" + std::to_string(k) + ".csv";
  const std::vector<std::filesystem::path> paths = {dir / ("graph_distance" + suffix),
                                                    dir / ("truncated_distance" + suffix),
                                                    dir / ("cumulative_distance" + suffix)};
  auto write = [&](const std::filesystem::path& path, auto cell) {
    io::write_file_atomic(path, [&](std::ostream& out) {
      std::string line;
      for (std::size_t u = 0; u < n; ++u) {
        line.clear();
        for (std::size_t v = 0; v < n; ++v) {
          if (v) line += ',';
          line += cell(u, v);
        }
        line += '\n';
        out << line;
      }
    });
  };
  write(paths[0], [&](std::size_t u, std::size_t v) -> const std::string& { return graph_text[dist[u * n + v]]; });
  write(paths[1], [&](std::size_t u, std::size_t v) -> const std::string& {
    if (u == v) return trunc_text[0];
    // highest differing bit b sits at 1-based position k - b
    const int b = std::bit_width(static_cast<std::uint64_t>(u ^ v)) - 1;
    return trunc_text[static_cast<std::size_t>(k - b)];
  });
  write(paths[2], [&](std::size_t u, std::size_t v) -> const std::string& {
    return cum_text[~(u ^ v) & (n - 1)];
  });
  return paths;
}

}  // namespace rklab
