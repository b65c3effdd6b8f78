// lctk: command line front end for the lct library.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse error,
// 3 precondition or I/O error, 4 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <iostream>
#include <numbers>
#include <random>
#include <thread>

#include "lct/io.hpp"
#include "lct/uncertainty.hpp"

using namespace lct;
using io::json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

enum Exit { kPass = 0, kCheckFail = 1, kParse = 2, kPrecondition = 3, kNumeric = 4 };

struct Options {
  std::string grid = "-8:0.015625:1024";
  std::uint64_t seed = 42;
  std::string out;
  std::vector<std::string> tols;
  bool json = false;
  std::string corpus;

  std::string signal;
  std::string matrix;
  std::string s1 = "I";
  std::string s2 = "J";
  int oversample = 2;
  bool no_alias_check = false;
  int refine = 1;
  int wtheta_refine = 6;
  std::string a = "1";
  std::string b = "0";
  std::string alpha;
  std::string beta;
  std::string radius;
  std::string suite = "all";
};

using Tolerances = std::map<std::string, double>;

Tolerances tolerances(const Options& o) {
  Tolerances t{{"slack", 1e-9},     {"min_eig", 1e-8},    {"scalar", 1e-8},
               {"wtheta", 1e-4},    {"hardy_band", 1e-6}, {"critical_band", 1e-2},
               {"pw_rate", 0.05}};
  for (const auto& s : o.tols) {
    const auto [k, v] = io::parse_tolerance(s);
    if (!t.count(k)) throw Error(ErrorKind::ParseError, "unknown tolerance '" + k + "'");
    t[k] = v;
  }
  return t;
}

fs::path out_dir(const Options& o) { return o.out.empty() ? fs::path(".") : fs::path(o.out); }

SampledSignal load_signal(const std::string& spec, const Grid1D& grid) {
  if (spec.empty()) throw Error(ErrorKind::ParseError, "--signal is required");
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") return io::read_signal_csv(spec);
  return make_signal(io::parse_signal_spec(spec), grid);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// transform / phase space / gen

int cmd_transform(const Options& o) {
  if (o.matrix.empty()) throw Error(ErrorKind::ParseError, "--matrix is required");
  const Symplectic s = io::parse_matrix_spec(o.matrix);
  const auto f = load_signal(o.signal, io::parse_grid(o.grid));
  const LctOptions lopt{.oversample = o.oversample, .check_aliasing = !o.no_alias_check};
  const auto g = metaplectic_apply(f, s, lopt);
  const auto dir = out_dir(o);
  io::write_signal_csv(g, dir / "transform.csv");
  const json meta{{"matrix", io::matrix_json(s)},
                  {"matrix_spec", o.matrix},
                  {"signal", o.signal},
                  {"branch", "principal sqrt of i^n det B"},
                  {"oversample", o.oversample},
                  {"alias_check", !o.no_alias_check},
                  {"input_grid", io::grid_json(f.grid())},
                  {"output_grid", io::grid_json(g.grid())}};
  io::write_file(dir / "transform.json", dump(meta));
  if (o.json) std::cout << dump(meta);
  return kPass;
}

void write_distribution(const PhaseSpaceDistribution& w, const fs::path& dir, const std::string& name,
                        const json& extra, bool print) {
  io::write_distribution_csv(w, dir / (name + ".csv"));
  io::emit_heatmap(w, dir / (name + ".pgm"));
  io::write_profile_csv(marginal(w, Axis::X), dir / (name + "_marginal_x.csv"));
  io::write_profile_csv(marginal(w, Axis::Xi), dir / (name + "_marginal_xi.csv"));
  json side = io::distribution_sidecar(w);
  Index i = 0, k = 0;
  const double peak = w.values.maxCoeff(&i, &k);
  side["max"] = peak;
  side["argmax"] = {w.x.at(i), w.xi.at(k)};
  side["min"] = w.values.minCoeff();
  for (auto& [key, v] : extra.items()) side[key] = v;
  io::write_file(dir / (name + ".json"), dump(side));
  if (print) std::cout << dump(side);
}

int cmd_wigner(const Options& o) {
  const auto f = load_signal(o.signal, io::parse_grid(o.grid));
  const auto w = wigner(f, {.refine = o.refine});
  write_distribution(w, out_dir(o), "wigner", {{"signal", o.signal}}, o.json);
  return kPass;
}

int cmd_wtheta(const Options& o) {
  const Symplectic s1 = io::parse_matrix_spec(o.s1);
  const Symplectic s2 = io::parse_matrix_spec(o.s2);
  const auto f = load_signal(o.signal, io::parse_grid(o.grid));
  const auto w = wtheta(f, s1, s2, {.wigner = {.refine = o.refine}});
  write_distribution(w, out_dir(o), "wtheta", {{"signal", o.signal}, {"s1", o.s1}, {"s2", o.s2}}, o.json);
  return kPass;
}

int cmd_radon(const Options& o) {
  const auto f = load_signal(o.signal, io::parse_grid(o.grid));
  const RadonLineSpec line{io::parse_number(o.a), io::parse_number(o.b)};
  const auto w = wigner(f, {.refine = o.refine});
  // The offsets cover |s| <= (|a| + |b|) max|z| on the window.
  const double k = std::abs(line.a) + std::abs(line.b);
  const auto p = radon_marginal(w, line, Grid1D{k * f.grid().x0, k * f.grid().dx, f.grid().n});
  io::write_profile_csv(p, out_dir(o) / "radon.csv");
  if (o.json) {
    std::cout << dump(json{{"a", line.a}, {"b", line.b}, {"grid", io::grid_json(p.grid)}, {"signal", o.signal}});
  }
  return kPass;
}

json matrix_values(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

int cmd_covariance(const Options& o) {
  const auto f = load_signal(o.signal, io::parse_grid(o.grid));
  const Symplectic s1 = io::parse_matrix_spec(o.s1);
  const Symplectic s2 = io::parse_matrix_spec(o.s2);
  const auto r = rs_check(f, s1, s2, {.wigner = {.refine = o.refine}, .wtheta_refine = o.wtheta_refine});
  const json j{{"signal", o.signal},
               {"s1", o.s1},
               {"s2", o.s2},
               {"sigma", matrix_values(r.sigma)},
               {"upsilon", matrix_values(r.upsilon)},
               {"omega", matrix_values(r.omega.omega)},
               {"min_eig", r.min_eig},
               {"upsilon_wtheta", matrix_values(r.upsilon_wtheta)},
               {"wtheta_discrepancy", r.wtheta_discrepancy}};
  io::write_file(out_dir(o) / "covariance.json", dump(j));
  if (o.json) std::cout << dump(j);
  return kPass;
}

// The corpus used by `verify all` when no directory is given.
const std::vector<std::pair<std::string, std::string>> kCorpus = {
    {"gaussian", "gaussian:pi"},     {"gaussian_wide", "gaussian:pi/2"}, {"chirped_gaussian", "gaussian:pi:1"},
    {"hermite1", "hermite:1"},       {"hermite2", "hermite:2"},          {"rect", "rect:1"},
    {"randbl_1", "randbl:1:0.5"},    {"randbl_2", "randbl:2:0.5"},       {"randbl_3", "randbl:3:0.25"},
    {"randbl_4", "randbl:4:0.25"},
};

int cmd_gen(const Options& o) {
  const Grid1D grid = io::parse_grid(o.grid);
  if (!o.corpus.empty()) {
    for (const auto& [name, spec] : kCorpus) {
      io::write_signal_csv(make_signal(io::parse_signal_spec(spec), grid), fs::path(o.corpus) / (name + ".csv"));
    }
    return kPass;
  }
  const auto f = load_signal(o.signal, grid);
  const fs::path path = o.out.empty() ? fs::path("signal.csv") : fs::path(o.out);
  io::write_signal_csv(f, path);
  return kPass;
}

// ---------------------------------------------------------------------------
// verify

struct Pair {
  std::string s1_spec, s2_spec;
  Symplectic s1, s2;
};

Pair pair_of(const std::string& a, const std::string& b) {
  return {a, b, io::parse_matrix_spec(a), io::parse_matrix_spec(b)};
}

// frft(theta) squeeze(l), written out as a mat: spec so reports can be replayed.
std::string random_pair_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.5, 2.6), ls(-0.2, 0.2);
  const double t = th(rng), l = std::exp(ls(rng));
  Eigen::MatrixXd sq(1, 1);
  sq(0, 0) = l;
  const auto m = (frft_matrix(t) * squeeze_matrix(sq)).matrix();
  return "mat:" + g17(m(0, 0)) + "," + g17(m(0, 1)) + "," + g17(m(1, 0)) + "," + g17(m(1, 1));
}

std::vector<Pair> verify_pairs(std::uint64_t seed) {
  std::vector<Pair> p{pair_of("I", "J"), pair_of("I", "fresnel:2"), pair_of("frft:0.7", "frft:2.1")};
  std::mt19937_64 rng(seed);
  while (p.size() < 5) {
    const auto a = random_pair_spec(rng);
    const auto b = random_pair_spec(rng);
    auto q = pair_of(a, b);
    if (std::abs(coupling_matrix(q.s1, q.s2).d.determinant()) >= 0.3) p.push_back(std::move(q));
  }
  return p;
}

// The signal or grid does not meet the preconditions of a check.
bool is_refusal(ErrorKind k) {
  return k == ErrorKind::HeavyTails || k == ErrorKind::AliasRisk || k == ErrorKind::InsufficientDecay;
}

// In `verify all` a failing call becomes a report entry: refusals are
// skipped, anything else fails. Single checks let the error reach main.
io::CheckReport error_report(std::string check, json inputs, const Error& e) {
  io::CheckReport r{.check = std::move(check), .inputs = std::move(inputs)};
  r.details = {{"error", to_string(e.kind())}, {"message", e.what()}};
  if (is_refusal(e.kind())) r.details["skipped"] = true;
  r.pass = is_refusal(e.kind());
  return r;
}

template <typename Fn>
io::CheckReport guarded(const std::string& check, const json& inputs, bool all, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (!all) throw;
    return error_report(check, inputs, e);
  }
}

json pair_inputs(const std::string& label, const Pair& p) {
  return {{"signal", label}, {"s1", p.s1_spec}, {"s2", p.s2_spec}};
}

io::CheckReport check_heisenberg(const SampledSignal& f, const std::string& label, const Pair& p,
                                 const Tolerances& t, bool all) {
  return guarded("heisenberg", pair_inputs(label, p), all, [&] {
    const auto h = heisenberg_check(f, p.s1, p.s2);
    io::CheckReport r{.check = "heisenberg", .inputs = pair_inputs(label, p)};
    r.lhs = h.lhs;
    r.rhs = h.rhs;
    r.slack = h.slack;
    r.tolerances = {{"slack", t.at("slack")}};
    r.details = {{"slack_over_rhs", h.slack / h.rhs}};
    r.pass = h.holds(t.at("slack"));
    return r;
  });
}

std::vector<io::CheckReport> check_rs(const SampledSignal& f, const std::string& label, const std::vector<Pair>& pairs,
                                      const Tolerances& t, const Options& o, bool all) {
  std::vector<std::pair<Symplectic, Symplectic>> mats;
  for (const auto& p : pairs) mats.emplace_back(p.s1, p.s2);
  std::vector<io::CheckReport> out;
  std::vector<CovarianceReport> cs;
  try {
    cs = rs_check(f, mats, {.wigner = {.refine = o.refine}, .wtheta_refine = o.wtheta_refine});
  } catch (const Error& e) {
    if (!all) throw;
    for (const auto& p : pairs) out.push_back(error_report("rs", pair_inputs(label, p), e));
    return out;
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& c = cs[i];
    io::CheckReport r{.check = "rs", .inputs = pair_inputs(label, pairs[i])};
    r.lhs = c.scalar.lhs;
    r.rhs = c.scalar.rhs;
    r.slack = c.scalar.slack;
    r.min_eig = c.min_eig;
    r.tolerances = {{"min_eig", t.at("min_eig")}, {"scalar", t.at("scalar")}, {"wtheta", t.at("wtheta")}};
    r.details = {{"upsilon", matrix_values(c.upsilon)},
                 {"wtheta_discrepancy", c.wtheta_discrepancy},
                 {"wtheta_refine", o.wtheta_refine}};
    r.pass = c.psd(t.at("min_eig")) && c.scalar.slack >= -t.at("scalar") && c.wtheta_discrepancy <= t.at("wtheta");
    out.push_back(std::move(r));
  }
  return out;
}

json gaussian_json(const std::optional<GaussianSpec>& g) {
  if (!g) return nullptr;
  return {{"alpha", g->alpha(0, 0)}, {"phase", g->phase(0, 0)}};
}

io::CheckReport hardy_params(const Options& o, const Tolerances& t) {
  const std::string m = o.matrix.empty() ? "J" : o.matrix;
  const Free s = as_free(io::parse_matrix_spec(m));
  const double alpha = io::parse_number(o.alpha), beta = io::parse_number(o.beta);
  const auto c = hardy_classify_params(alpha, beta, s, t.at("hardy_band"));
  io::CheckReport r{.check = "hardy", .inputs = {{"alpha", alpha}, {"beta", beta}, {"matrix", m}}};
  r.lhs = alpha * beta;
  r.rhs = c.threshold;
  r.slack = c.threshold - alpha * beta;
  r.classification = to_string(c.kind);
  r.tolerances = {{"hardy_band", t.at("hardy_band")}};
  r.details = {{"ratio", c.ratio}, {"critical_gaussian", gaussian_json(c.critical_gaussian)}};
  // A classification of the parameters, not a claim about a signal.
  r.pass = true;
  return r;
}

io::CheckReport check_hardy(const SampledSignal& f, const std::string& label, const std::string& m,
                            const Tolerances& t, bool all) {
  const json in{{"signal", label}, {"matrix", m}};
  return guarded("hardy", in, all, [&] {
    HardyFitOptions opt;
    opt.critical_band = t.at("critical_band");
    const auto c = hardy_fit(f, as_free(io::parse_matrix_spec(m)), opt);
    io::CheckReport r{.check = "hardy", .inputs = in};
    r.lhs = c.alpha * c.beta;
    r.rhs = c.threshold;
    r.slack = c.threshold - c.alpha * c.beta;
    r.classification = to_string(c.kind);
    r.tolerances = {{"critical_band", t.at("critical_band")}};
    r.details = {{"alpha", c.alpha}, {"beta", c.beta}, {"ratio", c.ratio}, {"r2_alpha", c.r2_alpha},
                 {"r2_beta", c.r2_beta}};
    // A nonzero signal cannot beat the critical Gaussian.
    r.pass = c.kind != HardyKind::Supercritical;
    return r;
  });
}

io::CheckReport check_paley_wiener(const SampledSignal& f, const std::string& label, const std::string& m,
                                   std::optional<double> radius, const Tolerances& t, bool all) {
  json in{{"signal", label}, {"matrix", m}};
  const double rad = radius ? *radius : support_radius(f, 0.0);
  in["radius"] = rad;
  return guarded("paley-wiener", in, all, [&] {
    const Free s = as_free(io::parse_matrix_spec(m));
    const auto p = paley_wiener_verify(f, s, rad, {.points = {}, .orders = {1, 2}});
    io::CheckReport r{.check = "paley-wiener", .inputs = in};
    const double expected = 2 * pi * rad;
    r.lhs = p.fitted_eta_rate;
    r.rhs = expected;
    r.slack = expected - p.fitted_eta_rate;
    r.tolerances = {{"pw_rate", t.at("pw_rate")}};
    r.details = {{"orders", p.orders}, {"c_n", p.c_n}};
    const bool bounded = std::all_of(p.bound_satisfied.begin(), p.bound_satisfied.end(), [](bool b) { return b; });
    const bool rate_ok = !std::isfinite(p.fitted_eta_rate) || p.fitted_eta_rate <= expected * (1 + t.at("pw_rate"));
    r.pass = bounded && rate_ok;
    return r;
  });
}

// Compactly supported on the grid: exact zeros toward both ends.
bool compact(const SampledSignal& f) {
  const double r = support_radius(f, 0.0);
  const double edge = std::min(std::abs(f.grid().x0), std::abs(f.grid().back()));
  return r < 0.9 * edge;
}

std::vector<io::CheckReport> verify_signal(const SampledSignal& f, const std::string& label, const std::string& suite,
                                           const std::vector<Pair>& pairs, const Options& o, const Tolerances& t) {
  std::vector<io::CheckReport> out;
  const bool all = suite == "all";
  const std::vector<Pair> chosen = all ? pairs : std::vector<Pair>{pair_of(o.s1, o.s2)};
  const std::string m = o.matrix.empty() ? "J" : o.matrix;
  if (all || suite == "heisenberg") {
    for (const auto& p : chosen) out.push_back(check_heisenberg(f, label, p, t, all));
  }
  if (all || suite == "rs") {
    for (auto& r : check_rs(f, label, chosen, t, o, all)) out.push_back(std::move(r));
  }
  if (all || suite == "hardy") out.push_back(check_hardy(f, label, m, t, all));
  if (suite == "paley-wiener" || (all && compact(f))) {
    std::optional<double> radius;
    if (!o.radius.empty()) radius = io::parse_number(o.radius);
    out.push_back(check_paley_wiener(f, label, m, radius, t, all));
  }
  return out;
}

int cmd_verify(const Options& o) {
  const Tolerances t = tolerances(o);
  const Grid1D grid = io::parse_grid(o.grid);
  std::vector<io::CheckReport> reports;

  if (o.suite == "hardy" && !o.alpha.empty()) {
    if (o.beta.empty()) throw Error(ErrorKind::ParseError, "--beta is required with --alpha");
    reports.push_back(hardy_params(o, t));
  } else {
    std::vector<std::pair<std::string, SampledSignal>> signals;
    if (!o.corpus.empty()) {
      std::vector<fs::path> files;
      std::error_code ec;
      for (const auto& e : fs::directory_iterator(o.corpus, ec)) {
        if (e.path().extension() == ".csv") files.push_back(e.path());
      }
      if (ec) throw Error(ErrorKind::IOError, "cannot read corpus " + o.corpus);
      std::sort(files.begin(), files.end());
      if (files.empty()) throw Error(ErrorKind::IOError, "no CSV signals in " + o.corpus);
      for (const auto& p : files) signals.emplace_back(p.filename().string(), io::read_signal_csv(p));
    } else {
      const std::string spec = o.signal.empty() ? "gaussian:pi" : o.signal;
      signals.emplace_back(spec, load_signal(spec, grid));
    }
    const auto pairs = verify_pairs(o.seed);
    // A pool of workers takes signals in turn; results are merged in corpus order.
    std::vector<std::vector<io::CheckReport>> results(signals.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 4u));
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, signals.size()); ++w) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < signals.size();) {
          results[i] = verify_signal(signals[i].second, signals[i].first, o.suite, pairs, o, t);
        }
      }));
    }
    for (auto& p : pool) p.get();
    for (auto& batch : results) {
      for (auto& r : batch) reports.push_back(std::move(r));
    }
  }

  json doc;
  doc["command"] = "verify";
  doc["suite"] = o.suite;
  doc["seed"] = o.seed;
  json arr = json::array();
  int failed = 0, skipped = 0;
  for (const auto& r : reports) {
    arr.push_back(io::to_json(r));
    failed += r.pass ? 0 : 1;
    skipped += r.details.contains("skipped") ? 1 : 0;
  }
  doc["reports"] = arr;
  doc["checks"] = reports.size();
  doc["skipped"] = skipped;
  doc["failed"] = failed;
  doc["pass"] = failed == 0;
  const std::string text = dump(doc);
  std::cout << text;
  if (!o.out.empty()) io::write_file(fs::path(o.out) / "report.json", text);
  return failed == 0 ? kPass : kCheckFail;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Parse: return kParse;
    case ErrorCategory::Numeric: return kNumeric;
    case ErrorCategory::Precondition:
    case ErrorCategory::IO: return kPrecondition;
  }
  return kPrecondition;
}

void report_error(const Error& e) {
  json j{{"error", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* a = dynamic_cast<const AliasRiskError*>(&e)) {
    j["suggested_oversample"] = a->required_oversample();
    j["input_refinement"] = a->input_refinement();
  }
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear canonical transforms, phase-space distributions and uncertainty checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--grid", o.grid, "x0:dx:N")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for random matrix pairs")->capture_default_str();
  app.add_option("--out", o.out, "output directory (gen: output file)");
  app.add_option("--tol", o.tols, "tolerance override key=value");
  app.add_flag("--json", o.json, "print the JSON summary to stdout");

  auto* transform = app.add_subcommand("transform", "apply a symplectic matrix to a signal");
  transform->add_option("--signal", o.signal, "generator spec or CSV file")->required();
  transform->add_option("--matrix", o.matrix, "matrix spec or JSON file");
  transform->add_option("--oversample", o.oversample)->capture_default_str();
  transform->add_flag("--no-alias-check", o.no_alias_check);

  auto* wig = app.add_subcommand("wigner", "Wigner distribution");
  wig->add_option("--signal", o.signal)->required();
  wig->add_option("--refine", o.refine)->capture_default_str();

  auto* wth = app.add_subcommand("wtheta", "theta-Wigner distribution of a matrix pair");
  wth->add_option("--signal", o.signal)->required();
  wth->add_option("--s1", o.s1)->required();
  wth->add_option("--s2", o.s2)->required();
  wth->add_option("--refine", o.refine)->capture_default_str();

  auto* rad = app.add_subcommand("radon", "line integrals a x + b xi = s of the Wigner distribution");
  rad->add_option("--signal", o.signal)->required();
  rad->add_option("--a", o.a)->capture_default_str();
  rad->add_option("--b", o.b)->capture_default_str();
  rad->add_option("--refine", o.refine)->capture_default_str();

  auto* cov = app.add_subcommand("covariance", "covariance matrices and the Robertson-Schroedinger check");
  cov->add_option("--signal", o.signal)->required();
  cov->add_option("--s1", o.s1)->capture_default_str();
  cov->add_option("--s2", o.s2)->capture_default_str();
  cov->add_option("--refine", o.refine)->capture_default_str();
  cov->add_option("--wtheta-refine", o.wtheta_refine)->capture_default_str();

  auto* ver = app.add_subcommand("verify", "run uncertainty checks");
  ver->add_option("suite", o.suite)
      ->check(CLI::IsMember({"heisenberg", "rs", "hardy", "paley-wiener", "all"}))
      ->capture_default_str();
  ver->add_option("--signal", o.signal);
  ver->add_option("--corpus", o.corpus, "directory of CSV signals");
  ver->add_option("--s1", o.s1)->capture_default_str();
  ver->add_option("--s2", o.s2)->capture_default_str();
  ver->add_option("--matrix", o.matrix, "matrix for hardy and paley-wiener (default J)");
  ver->add_option("--alpha", o.alpha);
  ver->add_option("--beta", o.beta);
  ver->add_option("--radius", o.radius);
  ver->add_option("--refine", o.refine)->capture_default_str();
  ver->add_option("--wtheta-refine", o.wtheta_refine)->capture_default_str();

  auto* gen = app.add_subcommand("gen", "write a generated signal, or the default corpus, as CSV");
  gen->add_option("--signal", o.signal);
  gen->add_option("--corpus", o.corpus, "write the default corpus into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*transform) return cmd_transform(o);
    if (*wig) return cmd_wigner(o);
    if (*wth) return cmd_wtheta(o);
    if (*rad) return cmd_radon(o);
    if (*cov) return cmd_covariance(o);
    if (*ver) return cmd_verify(o);
    if (*gen) return cmd_gen(o);
  } catch (const Error& e) {
    report_error(e);
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return kNumeric;
  }
  return kParse;
}
