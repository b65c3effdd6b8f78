#pragma once

// File formats and the spec-string mini-language used by the command line
// tool: signal and distribution CSV, PGM heatmaps, JSON sidecars, matrix
// JSON and check reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lct/phase_space.hpp"
#include "lct/signal.hpp"
#include "lct/symplectic.hpp"

namespace lct::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Signals: header `x,re,im`, one sample per row, 17 significant digits.

std::string signal_csv(const SampledSignal& f);
void write_signal_csv(const SampledSignal& f, const fs::path& path);
/// Throws ParseError (with line number) or NonuniformGrid.
SampledSignal parse_signal_csv(std::string_view text);
SampledSignal read_signal_csv(const fs::path& path);

// Distributions.

/// Header `x,xi,value`, rows ordered by x then xi.
void write_distribution_csv(const PhaseSpaceDistribution& w, const fs::path& path);
void write_profile_csv(const Profile& p, const fs::path& path, std::string_view column = "value");

json grid_json(const Grid1D& g);
Grid1D grid_from_json(const json& j);
json form_json(const FormTag& tag);
/// {"x": grid, "xi": grid, "form": "standard" | {"omega": [...]}}
json distribution_sidecar(const PhaseSpaceDistribution& w);

struct Heatmap {
  Grid1D x;
  Grid1D xi;
  double min = 0.0;
  double max = 0.0;
  std::string form;
  Index width = 0;   // x samples
  Index height = 0;  // xi samples
  std::vector<std::uint8_t> pixels;  // row 0 is the largest xi

  std::uint8_t pixel(Index row, Index col) const { return pixels[std::size_t(row * width + col)]; }
};

/// 8-bit binary PGM, linear map [min, max] -> [0, 255] (all zero when
/// min == max); grids, range and form in comment lines.
std::string heatmap_pgm(const PhaseSpaceDistribution& w);
void emit_heatmap(const PhaseSpaceDistribution& w, const fs::path& path);
Heatmap parse_heatmap(std::string_view bytes);
Heatmap read_heatmap(const fs::path& path);

// Matrices.

/// {"n": n, "entries": row-major 2n x 2n}
json matrix_json(const Symplectic& s);
/// Certifies the matrix. Throws ParseError for malformed documents.
Symplectic matrix_from_json(const json& j);

// Spec strings.

/// Reals with an optional pi factor: "1.5", "-2e-3", "pi", "2pi", "-3pi/4", "pi/2", "0.5*pi".
double parse_number(std::string_view s);
/// "x0:dx:N"
Grid1D parse_grid(std::string_view s);
/// I, J, I:n, J:n, frft:t[,t..], fresnel:b[,b..], lorentz:p[,p..], shear:p[,p..],
/// squeeze:l[,l..], mat:m11,m12,..., or a path to a matrix JSON file.
Symplectic parse_matrix_spec(std::string_view s);
/// gaussian:alpha[:phase], rect:R, chirp:rate[:width], hermite:k, randbl:seed:cutoff.
SignalSpec parse_signal_spec(std::string_view s);
/// "key=value"
std::pair<std::string, double> parse_tolerance(std::string_view s);

// Reports.

struct CheckReport {
  std::string check;
  json inputs = json::object();
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> slack;
  std::optional<double> min_eig;
  std::optional<std::string> classification;
  std::map<std::string, double> tolerances;
  json details = json::object();
  bool pass = false;
};

/// Keys are emitted in sorted order, so equal reports give equal bytes.
json to_json(const CheckReport& r);

std::string read_file(const fs::path& path);
/// Throws IOError.
void write_file(const fs::path& path, std::string_view bytes);

}  // namespace lct::io
