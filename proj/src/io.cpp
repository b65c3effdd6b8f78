#include "lct/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lct::io {

using std::numbers::pi;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool to_double(std::string_view s, double& v) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Int>
Int to_int(std::string_view s, const char* what) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

void append_g17(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, std::size_t(n));
}

std::string g17(double v) {
  std::string s;
  append_g17(s, v);
  return s;
}

std::vector<double> number_list(std::string_view s) {
  std::vector<double> v;
  for (auto part : split(s, ',')) v.push_back(parse_number(part));
  return v;
}

Eigen::MatrixXd diagonal(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Index(v.size())).asDiagonal();
}

// Values of "# key=value key=value" comment lines.
std::map<std::string, std::string> comment_fields(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double field(const std::map<std::string, std::string>& m, const std::string& key) {
  const auto it = m.find(key);
  double v = 0.0;
  if (it == m.end() || !to_double(it->second, v)) parse_fail("heatmap header lacks " + key);
  return v;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IOError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IOError, "cannot write " + path.string());
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorKind::IOError, "write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Signal CSV

std::string signal_csv(const SampledSignal& f) {
  std::string out = "x,re,im\n";
  out.reserve(std::size_t(f.size()) * 72 + 8);
  for (Index j = 0; j < f.size(); ++j) {
    append_g17(out, f.x(j));
    out += ',';
    append_g17(out, f[j].real());
    out += ',';
    append_g17(out, f[j].imag());
    out += '\n';
  }
  return out;
}

void write_signal_csv(const SampledSignal& f, const fs::path& path) { write_file(path, signal_csv(f)); }

SampledSignal parse_signal_csv(std::string_view text) {
  std::vector<double> xs;
  std::vector<cplx> vs;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "x,re,im") parse_fail("line " + std::to_string(line_no) + ": expected header x,re,im");
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    double x, re, im;
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos ||
        !to_double(line.substr(0, c1), x) || !to_double(line.substr(c1 + 1, c2 - c1 - 1), re) ||
        !to_double(line.substr(c2 + 1), im)) {
      parse_fail("line " + std::to_string(line_no) + ": expected three numbers");
    }
    xs.push_back(x);
    vs.emplace_back(re, im);
  }
  if (!header) parse_fail("line 1: empty file");
  if (xs.size() < 2) parse_fail("line " + std::to_string(line_no) + ": need at least two samples");

  const std::size_t n = xs.size();
  const double dx = (xs.back() - xs.front()) / double(n - 1);
  if (!(dx > 0.0)) throw Error(ErrorKind::NonuniformGrid, "x is not increasing");
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (std::abs((xs[j + 1] - xs[j]) - dx) > 1e-9 * dx) {
      throw Error(ErrorKind::NonuniformGrid, "spacing changes at sample " + std::to_string(j + 1));
    }
  }
  return SampledSignal(Grid1D{xs.front(), dx, Index(n)},
                       Eigen::Map<const Eigen::VectorXcd>(vs.data(), Index(n)));
}

SampledSignal read_signal_csv(const fs::path& path) { return parse_signal_csv(read_file(path)); }

// ---------------------------------------------------------------------------
// Distributions

void write_distribution_csv(const PhaseSpaceDistribution& w, const fs::path& path) {
  std::string out = "x,xi,value\n";
  out.reserve(std::size_t(w.values.size()) * 72 + 16);
  for (Index i = 0; i < w.x.n; ++i) {
    for (Index k = 0; k < w.xi.n; ++k) {
      append_g17(out, w.x.at(i));
      out += ',';
      append_g17(out, w.xi.at(k));
      out += ',';
      append_g17(out, w.values(i, k));
      out += '\n';
    }
  }
  write_file(path, out);
}

void write_profile_csv(const Profile& p, const fs::path& path, std::string_view column) {
  std::string out = "t,";
  out += column;
  out += '\n';
  for (Index j = 0; j < p.grid.n; ++j) {
    append_g17(out, p.grid.at(j));
    out += ',';
    append_g17(out, p.values[j]);
    out += '\n';
  }
  write_file(path, out);
}

json grid_json(const Grid1D& g) { return {{"x0", g.x0}, {"dx", g.dx}, {"n", g.n}}; }

Grid1D grid_from_json(const json& j) {
  try {
    Grid1D g{j.at("x0").get<double>(), j.at("dx").get<double>(), j.at("n").get<Index>()};
    g.validate();
    return g;
  } catch (const json::exception& e) {
    parse_fail(std::string("grid: ") + e.what());
  }
}

json form_json(const FormTag& tag) {
  if (tag.standard()) return "standard";
  json om = json::array();
  for (Index i = 0; i < tag.omega.rows(); ++i)
    for (Index j = 0; j < tag.omega.cols(); ++j) om.push_back(tag.omega(i, j));
  return {{"omega", om}};
}

json distribution_sidecar(const PhaseSpaceDistribution& w) {
  return {{"x", grid_json(w.x)}, {"xi", grid_json(w.xi)}, {"form", form_json(w.form)}};
}

// ---------------------------------------------------------------------------
// Heatmaps

std::string heatmap_pgm(const PhaseSpaceDistribution& w) {
  if (!w.values.allFinite()) throw Error(ErrorKind::BadParameter, "heatmap of non-finite values");
  const double lo = w.values.minCoeff();
  const double hi = w.values.maxCoeff();
  std::string form = "standard";
  if (!w.form.standard()) {
    form.clear();
    for (Index i = 0; i < w.form.omega.size(); ++i) {
      if (i) form += ',';
      append_g17(form, w.form.omega.data()[i]);
    }
  }
  std::string out = "P5\n";
  out += "# x0=" + g17(w.x.x0) + " dx=" + g17(w.x.dx) + " nx=" + std::to_string(w.x.n) + "\n";
  out += "# xi0=" + g17(w.xi.x0) + " dxi=" + g17(w.xi.dx) + " nxi=" + std::to_string(w.xi.n) + "\n";
  out += "# min=" + g17(lo) + " max=" + g17(hi) + "\n";
  out += "# form=" + form + "\n";
  out += std::to_string(w.x.n) + " " + std::to_string(w.xi.n) + "\n255\n";
  const std::size_t head = out.size();
  out.resize(head + std::size_t(w.x.n * w.xi.n));
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  for (Index row = 0; row < w.xi.n; ++row) {
    const Index k = w.xi.n - 1 - row;
    for (Index i = 0; i < w.x.n; ++i) {
      const double v = std::clamp(std::round((w.values(i, k) - lo) * scale), 0.0, 255.0);
      out[head + std::size_t(row * w.x.n + i)] = char(std::uint8_t(v));
    }
  }
  return out;
}

void emit_heatmap(const PhaseSpaceDistribution& w, const fs::path& path) { write_file(path, heatmap_pgm(w)); }

Heatmap parse_heatmap(std::string_view bytes) {
  Heatmap h;
  std::map<std::string, std::string> fields;
  std::vector<long> numbers;  // width, height, maxval
  std::size_t pos = 0;
  auto next_line = [&]() {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) parse_fail("truncated heatmap header");
    const auto line = bytes.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };
  if (next_line() != "P5") parse_fail("not a binary PGM");
  while (numbers.size() < 3) {
    const auto line = next_line();
    if (!line.empty() && line.front() == '#') {
      for (auto& [k, v] : comment_fields(line.substr(1))) fields[k] = v;
      continue;
    }
    std::istringstream in{std::string(line)};
    long v;
    while (in >> v) numbers.push_back(v);
  }
  h.width = numbers[0];
  h.height = numbers[1];
  if (numbers[2] != 255) parse_fail("heatmap is not 8-bit");
  h.x = Grid1D{field(fields, "x0"), field(fields, "dx"), Index(field(fields, "nx"))};
  h.xi = Grid1D{field(fields, "xi0"), field(fields, "dxi"), Index(field(fields, "nxi"))};
  h.min = field(fields, "min");
  h.max = field(fields, "max");
  h.form = fields.count("form") ? fields["form"] : "";
  const std::size_t count = std::size_t(h.width * h.height);
  if (bytes.size() - pos != count) parse_fail("heatmap pixel count mismatch");
  h.pixels.assign(bytes.begin() + std::ptrdiff_t(pos), bytes.end());
  return h;
}

Heatmap read_heatmap(const fs::path& path) { return parse_heatmap(read_file(path)); }

// ---------------------------------------------------------------------------
// Matrices

json matrix_json(const Symplectic& s) {
  json entries = json::array();
  const auto& m = s.matrix();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) entries.push_back(m(i, j));
  return {{"n", s.n()}, {"entries", entries}};
}

Symplectic matrix_from_json(const json& j) {
  Index n = 0;
  std::vector<double> e;
  try {
    n = j.at("n").get<Index>();
    e = j.at("entries").get<std::vector<double>>();
  } catch (const json::exception& ex) {
    parse_fail(std::string("matrix JSON: ") + ex.what());
  }
  if (n < 1 || Index(e.size()) != 4 * n * n) parse_fail("matrix JSON: entries must hold 4 n^2 values");
  const Index d = 2 * n;
  Eigen::MatrixXd m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k) m(i, k) = e[std::size_t(i * d + k)];
  return Symplectic::from(m);
}

// ---------------------------------------------------------------------------
// Spec strings

double parse_number(std::string_view s) {
  const std::string_view orig = s;
  s = trim(s);
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -1.0;
    s.remove_prefix(1);
  }
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) parse_fail("bad number '" + std::string(orig) + "'");
  const auto p = s.find("pi");
  double v = 0.0;
  if (p == std::string_view::npos) {
    if (!to_double(s, v) || !std::isfinite(v)) parse_fail("bad number '" + std::string(orig) + "'");
    return sign * v;
  }
  std::string_view coef = s.substr(0, p);
  std::string_view rest = s.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double c = 1.0;
  if (!coef.empty() && !to_double(coef, c)) parse_fail("bad number '" + std::string(orig) + "'");
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/' || !to_double(rest.substr(1), den) || den == 0.0) {
      parse_fail("bad number '" + std::string(orig) + "'");
    }
  }
  return sign * c * pi / den;
}

Grid1D parse_grid(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) parse_fail("grid must be x0:dx:N, got '" + std::string(s) + "'");
  Grid1D g{parse_number(parts[0]), parse_number(parts[1]), to_int<Index>(parts[2], "grid size")};
  if (!(g.dx > 0.0) || g.n < 2) parse_fail("grid needs dx > 0 and N >= 2");
  return g;
}

Symplectic parse_matrix_spec(std::string_view s) {
  s = trim(s);
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(read_file(fs::path(std::string(s))));
    } catch (const json::exception& e) {
      parse_fail(std::string("matrix file: ") + e.what());
    }
    return matrix_from_json(j);
  }
  const auto colon = s.find(':');
  const std::string_view name = s.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (name == "I" || name == "J") {
    const Index n = arg.empty() ? 1 : to_int<Index>(arg, "dimension");
    if (n < 1 || n > 16) parse_fail("dimension out of range");
    return name == "I" ? symplectic_identity(n) : standard_J(n);
  }
  if (arg.empty()) parse_fail("unknown matrix spec '" + std::string(s) + "'");
  const auto v = number_list(arg);
  if (name == "frft") return frft_matrix(v);
  if (name == "fresnel") return fresnel_matrix(v);
  if (name == "lorentz") return lorentz_matrix(v);
  if (name == "shear") return shear_matrix(diagonal(v));
  if (name == "squeeze") return squeeze_matrix(diagonal(v));
  if (name == "mat") {
    const auto d = Index(std::lround(std::sqrt(double(v.size()))));
    if (d * d != Index(v.size()) || d % 2 != 0) parse_fail("mat: needs (2n)^2 entries");
    Eigen::MatrixXd m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k) m(i, k) = v[std::size_t(i * d + k)];
    return Symplectic::from(m);
  }
  parse_fail("unknown matrix spec '" + std::string(s) + "'");
}

SignalSpec parse_signal_spec(std::string_view s) {
  const auto parts = split(trim(s), ':');
  const std::string_view kind = parts[0];
  const auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
      parse_fail("signal '" + std::string(s) + "': wrong number of parameters");
    }
  };
  if (kind == "gaussian") {
    arity(1, 2);
    return GaussianSpec::scalar(parse_number(parts[1]), parts.size() > 2 ? parse_number(parts[2]) : 0.0);
  }
  if (kind == "rect") {
    arity(1, 1);
    return RectangleSpec{parse_number(parts[1])};
  }
  if (kind == "chirp") {
    arity(1, 2);
    return ChirpSpec{parse_number(parts[1]), parts.size() > 2 ? parse_number(parts[2]) : 1.0};
  }
  if (kind == "hermite") {
    arity(1, 1);
    return HermiteSpec{to_int<int>(parts[1], "order")};
  }
  if (kind == "randbl") {
    arity(2, 2);
    return RandomBandlimitedSpec{to_int<std::uint64_t>(parts[1], "seed"), parse_number(parts[2])};
  }
  parse_fail("unknown signal spec '" + std::string(s) + "'");
}

std::pair<std::string, double> parse_tolerance(std::string_view s) {
  const auto eq = s.find('=');
  if (eq == std::string_view::npos || eq == 0) parse_fail("tolerance must be key=value");
  return {std::string(trim(s.substr(0, eq))), parse_number(s.substr(eq + 1))};
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["inputs"] = r.inputs;
  const auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
  j["lhs"] = opt(r.lhs);
  j["rhs"] = opt(r.rhs);
  j["slack"] = opt(r.slack);
  j["min_eig"] = opt(r.min_eig);
  j["classification"] = r.classification ? json(*r.classification) : json(nullptr);
  j["tolerances"] = r.tolerances;
  if (!r.details.empty()) j["details"] = r.details;
  j["pass"] = r.pass;
  return j;
}

}  // namespace lct::io
