#include <gtest/gtest.h>

#include <chrono>
#include <cstring>
#include <numbers>
#include <unistd.h>

#include "lct/io.hpp"

using namespace lct;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::BadParameter;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lct_io_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

using SignalCsv = TempDir;

TEST_F(SignalCsv, RoundTripIsExact) {
  const Grid1D g{-8.0, 0.1, 160};
  const auto f = make_signal(RandomBandlimitedSpec{9, 0.5}, g);
  io::write_signal_csv(f, dir_ / "f.csv");
  const auto back = io::read_signal_csv(dir_ / "f.csv");
  ASSERT_EQ(back.size(), f.size());
  for (Index j = 0; j < f.size(); ++j) {
    ASSERT_TRUE(bit_equal(back[j].real(), f[j].real())) << j;
    ASSERT_TRUE(bit_equal(back[j].imag(), f[j].imag())) << j;
  }
  EXPECT_EQ(back.grid().x0, g.x0);
  EXPECT_NEAR(back.grid().dx, g.dx, 1e-15);
  // Writing the parsed signal again gives the same bytes.
  EXPECT_EQ(io::signal_csv(io::read_signal_csv(dir_ / "f.csv")), io::read_file(dir_ / "f.csv"));
}

TEST(SignalCsvParse, Errors) {
  const auto rows = [](std::vector<double> xs) {
    std::string t = "x,re,im\n";
    for (double x : xs) t += std::to_string(x) + ",1,0\n";
    return t;
  };
  EXPECT_EQ(kind_of([&] { io::parse_signal_csv(rows({0, 2, 1, 3, 4, 5, 6, 7})); }), ErrorKind::NonuniformGrid);
  EXPECT_EQ(kind_of([&] { io::parse_signal_csv(rows({0, 1, 2, 3, 4, 5, 6, 8})); }), ErrorKind::NonuniformGrid);
  EXPECT_EQ(kind_of([&] { io::parse_signal_csv(rows({7, 6, 5, 4, 3, 2, 1, 0})); }), ErrorKind::NonuniformGrid);
  EXPECT_EQ(kind_of([] { io::parse_signal_csv("t,a,b\n0,1,0\n"); }), ErrorKind::ParseError);
  const auto msg = message_of([] { io::parse_signal_csv("x,re,im\n0,1,0\n1,abc,0\n"); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(message_of([] { io::parse_signal_csv("x,re,im\n0,1\n"); }).find("line 2"), std::string::npos);
  EXPECT_EQ(kind_of([] { io::parse_signal_csv(""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_signal_csv("/nonexistent/f.csv"); }), ErrorKind::IOError);
  // CRLF and a trailing blank line are accepted.
  std::string crlf = "x,re,im\r\n";
  for (int j = 0; j < 8; ++j) crlf += std::to_string(0.5 * j) + "," + std::to_string(j) + ",4\r\n";
  const auto f = io::parse_signal_csv(crlf + "\r\n");
  EXPECT_EQ(f.size(), 8);
  EXPECT_EQ(f[3], cplx(3, 4));
  EXPECT_EQ(f.grid().dx, 0.5);
}

TEST(SignalCsvParse, Throughput) {
  const Grid1D g{-50.0, 1e-4, 1000000};
  const SampledSignal f(g, Eigen::VectorXcd::Constant(g.n, cplx(0.123456789012345678, -9.87654321e-5)));
  const std::string text = io::signal_csv(f);
  const auto t0 = std::chrono::steady_clock::now();
  const auto back = io::parse_signal_csv(text);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(back.size(), g.n);
  EXPECT_LT(secs, 2.0);
}

using Distribution = TempDir;

TEST_F(Distribution, CsvAndSidecar) {
  PhaseSpaceDistribution w{{-1.0, 0.5, 8}, {0.0, 0.25, 8}, Eigen::MatrixXd::Zero(8, 8), {}};
  w.values(2, 1) = 1.5;
  io::write_distribution_csv(w, dir_ / "w.csv");
  const auto text = io::read_file(dir_ / "w.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,xi,value");
  EXPECT_NE(text.find("\n0,0.25,1.5\n"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 65);

  auto side = io::distribution_sidecar(w);
  EXPECT_EQ(side["form"], "standard");
  EXPECT_EQ(io::grid_from_json(side["xi"]).dx, 0.25);
  w.form = FormTag::nonstandard(2.0 * standard_J(1).matrix());
  side = io::distribution_sidecar(w);
  EXPECT_EQ(side["form"]["omega"], (io::json{0.0, 2.0, -2.0, 0.0}));
}

TEST_F(Distribution, Heatmap) {
  const Grid1D g{-8.0, 1.0 / 16, 256};
  const auto w = wigner(make_signal(GaussianSpec::scalar(pi, 0.0, std::pow(2.0, 0.25)), g));
  io::emit_heatmap(w, dir_ / "w.pgm");
  const auto h = io::read_heatmap(dir_ / "w.pgm");
  EXPECT_EQ(h.width, 256);
  EXPECT_EQ(h.height, 256);
  EXPECT_TRUE(h.x.same_as(w.x));
  EXPECT_TRUE(h.xi.same_as(w.xi));
  EXPECT_EQ(h.min, w.values.minCoeff());
  EXPECT_EQ(h.max, w.values.maxCoeff());
  EXPECT_EQ(h.form, "standard");
  const auto best = std::max_element(h.pixels.begin(), h.pixels.end());
  EXPECT_EQ(*best, 255);
  const Index idx = best - h.pixels.begin();
  const Index row = idx / h.width, col = idx % h.width;
  // x = 0 at column 128; xi = 0 at table column 128, which is row 255 - 128.
  EXPECT_EQ(col, 128);
  EXPECT_EQ(row, 127);

  // Row 0 holds the largest xi.
  PhaseSpaceDistribution ramp{{0.0, 1.0, 2}, {0.0, 1.0, 3}, Eigen::MatrixXd(2, 3), {}};
  ramp.values << 0, 1, 2, 0, 1, 2;
  const auto r = io::parse_heatmap(io::heatmap_pgm(ramp));
  EXPECT_EQ(r.pixel(0, 0), 255);
  EXPECT_EQ(r.pixel(1, 1), 128);
  EXPECT_EQ(r.pixel(2, 0), 0);

  PhaseSpaceDistribution flat{{0.0, 1.0, 4}, {0.0, 1.0, 4}, Eigen::MatrixXd::Constant(4, 4, 3.0), {}};
  const auto c = io::parse_heatmap(io::heatmap_pgm(flat));
  EXPECT_TRUE(std::all_of(c.pixels.begin(), c.pixels.end(), [](auto p) { return p == 0; }));

  flat.values(0, 0) = std::nan("");
  EXPECT_EQ(kind_of([&] { io::heatmap_pgm(flat); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([&] { io::emit_heatmap(ramp, dir_ / "w.pgm" / "x.pgm"); }), ErrorKind::IOError);
}

using MatrixJson = TempDir;

TEST_F(MatrixJson, RoundTrip) {
  const auto s = frft_matrix(std::vector<double>{0.3, -1.2}) * lorentz_matrix(std::vector<double>{0.5, 0.1});
  const auto j = io::matrix_json(s);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["entries"].size(), 16u);
  EXPECT_EQ(io::matrix_from_json(j).matrix(), s.matrix());
  io::write_file(dir_ / "s.json", j.dump());
  EXPECT_EQ(io::parse_matrix_spec((dir_ / "s.json").string()).matrix(), s.matrix());

  EXPECT_EQ(kind_of([] { io::matrix_from_json({{"n", 1}, {"entries", {1, 0, 0}}}); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::matrix_from_json({{"entries", {1, 0, 0, 1}}}); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::matrix_from_json({{"n", 1}, {"entries", {2, 0, 0, 2}}}); }), ErrorKind::BadParameter);
}

TEST(SpecStrings, Numbers) {
  EXPECT_EQ(io::parse_number("1.5"), 1.5);
  EXPECT_EQ(io::parse_number("-2e-3"), -2e-3);
  EXPECT_EQ(io::parse_number("pi"), pi);
  EXPECT_EQ(io::parse_number("2pi"), 2 * pi);
  EXPECT_EQ(io::parse_number("0.5*pi"), 0.5 * pi);
  EXPECT_EQ(io::parse_number("pi/2"), pi / 2);
  EXPECT_EQ(io::parse_number("-3pi/4"), -3 * pi / 4);
  for (const char* bad : {"", "abc", "1.5x", "pi/0", "2pi3", "--1"}) {
    EXPECT_EQ(kind_of([&] { io::parse_number(bad); }), ErrorKind::ParseError) << bad;
  }
}

TEST(SpecStrings, Grids) {
  const auto g = io::parse_grid("-8:0.015625:1024");
  EXPECT_EQ(g.x0, -8.0);
  EXPECT_EQ(g.dx, 1.0 / 64);
  EXPECT_EQ(g.n, 1024);
  for (const char* bad : {"-8:0.1", "-8:0:10", "-8:0.1:x", "0:0.1:1"}) {
    EXPECT_EQ(kind_of([&] { io::parse_grid(bad); }), ErrorKind::ParseError) << bad;
  }
}

TEST(SpecStrings, Matrices) {
  EXPECT_EQ(io::parse_matrix_spec("J").matrix(), standard_J(1).matrix());
  EXPECT_EQ(io::parse_matrix_spec("I:3").matrix(), symplectic_identity(3).matrix());
  EXPECT_EQ(io::parse_matrix_spec("J:2").matrix(), standard_J(2).matrix());
  EXPECT_EQ(io::parse_matrix_spec("frft:pi/3").matrix(), frft_matrix(pi / 3).matrix());
  EXPECT_EQ(io::parse_matrix_spec("fresnel:1.0").matrix(), fresnel_matrix(1.0).matrix());
  EXPECT_EQ(io::parse_matrix_spec("lorentz:0.5,0.25").matrix(),
            lorentz_matrix(std::vector<double>{0.5, 0.25}).matrix());
  Eigen::MatrixXd l(1, 1);
  l(0, 0) = 2.0;
  EXPECT_EQ(io::parse_matrix_spec("squeeze:2").matrix(), squeeze_matrix(l).matrix());
  EXPECT_EQ(io::parse_matrix_spec("shear:2").matrix(), shear_matrix(l).matrix());
  const auto m = io::parse_matrix_spec("mat:1,2,0,1");
  EXPECT_EQ(m.matrix(), fresnel_matrix(2.0).matrix());
  EXPECT_EQ(kind_of([] { io::parse_matrix_spec("mat:1,2,3"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_matrix_spec("mat:1,2,3,4"); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { io::parse_matrix_spec("rotate:1"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_matrix_spec("frft"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_matrix_spec("/nonexistent.json"); }), ErrorKind::IOError);
}

TEST(SpecStrings, Signals) {
  const auto g = std::get<GaussianSpec>(io::parse_signal_spec("gaussian:pi"));
  EXPECT_EQ(g.alpha(0, 0), pi);
  EXPECT_EQ(g.phase(0, 0), 0.0);
  EXPECT_EQ(std::get<GaussianSpec>(io::parse_signal_spec("gaussian:2pi:0.5")).phase(0, 0), 0.5);
  EXPECT_EQ(std::get<RectangleSpec>(io::parse_signal_spec("rect:1.0")).radius, 1.0);
  const auto c = std::get<ChirpSpec>(io::parse_signal_spec("chirp:0.5"));
  EXPECT_EQ(c.rate, 0.5);
  EXPECT_EQ(c.width, 1.0);
  EXPECT_EQ(std::get<HermiteSpec>(io::parse_signal_spec("hermite:3")).order, 3);
  const auto r = std::get<RandomBandlimitedSpec>(io::parse_signal_spec("randbl:42:0.25"));
  EXPECT_EQ(r.seed, 42u);
  EXPECT_EQ(r.cutoff, 0.25);
  for (const char* bad : {"gaussian", "gaussian:1:2:3", "rect:x", "hermite:1.5", "randbl:-1:0.2", "noise:1"}) {
    EXPECT_EQ(kind_of([&] { io::parse_signal_spec(bad); }), ErrorKind::ParseError) << bad;
  }
  const auto [key, val] = io::parse_tolerance("slack=1e-9");
  EXPECT_EQ(key, "slack");
  EXPECT_EQ(val, 1e-9);
  EXPECT_EQ(kind_of([] { io::parse_tolerance("slack"); }), ErrorKind::ParseError);
}

TEST(Reports, DeterministicJson) {
  io::CheckReport r;
  r.check = "heisenberg";
  r.inputs = {{"signal", "gaussian:pi"}, {"s1", "I"}, {"s2", "J"}};
  r.lhs = 1.0 / (16 * pi * pi);
  r.rhs = 1.0 / (16 * pi * pi);
  r.slack = 0.0;
  r.tolerances = {{"slack", 1e-9}};
  r.pass = true;
  const auto a = io::to_json(r).dump(2);
  const auto b = io::to_json(r).dump(2);
  EXPECT_EQ(a, b);
  const auto j = io::json::parse(a);
  for (const char* key : {"check", "inputs", "lhs", "rhs", "slack", "min_eig", "classification", "tolerances", "pass"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["min_eig"].is_null());
  EXPECT_EQ(j["lhs"].get<double>(), r.lhs.value());
  EXPECT_EQ(j["pass"], true);
}
