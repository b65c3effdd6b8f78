#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <numbers>

#include "lct/io.hpp"

using namespace lct;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lctk_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string(LCTK_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, io::read_file(out), io::read_file(err)};
  }

  std::string out_flag(const std::string& sub = "") {
    const auto d = sub.empty() ? dir_ : dir_ / sub;
    return " --out " + d.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, TransformMatchesClosedForm) {
  const auto r = run("transform --signal gaussian:pi --matrix J --grid -8:0.015625:1024" + out_flag());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto g = io::read_signal_csv(dir_ / "transform.csv");
  // F e^{-pi x^2} = e^{-pi xi^2}, times the principal (i)^{-1/2}.
  const cplx k = std::exp(cplx(0, -pi / 4));
  double err = 0.0;
  for (Index j = 0; j < g.size(); ++j) err = std::max(err, std::abs(g[j] - k * std::exp(-pi * g.x(j) * g.x(j))));
  EXPECT_LT(err, 1e-8);
  const auto meta = io::json::parse(io::read_file(dir_ / "transform.json"));
  EXPECT_EQ(meta["oversample"], 2);
  EXPECT_EQ(meta["matrix"]["entries"], (io::json{0.0, 1.0, -1.0, 0.0}));
  EXPECT_TRUE(meta.contains("branch"));
}

TEST_F(Cli, TransformErrors) {
  EXPECT_EQ(run("transform --signal gaussian:pi" + out_flag()).code, 2);
  EXPECT_EQ(run("transform --signal gaussian:pi --matrix K" + out_flag()).code, 2);
  EXPECT_EQ(run("transform --signal gaussian:pi --matrix J --grid -8:0.1" + out_flag()).code, 2);
  EXPECT_EQ(run("transform --signal gaussian:pi --matrix mat:1,0,0,2" + out_flag()).code, 3);
  EXPECT_EQ(run("transform --signal gaussian:pi --matrix mat:1,0,0,1" + out_flag()).code, 0);

  const auto r = run("transform --signal gaussian:pi --matrix mat:0,1,-1,10" + out_flag());
  EXPECT_EQ(r.code, 3);
  const auto j = io::json::parse(r.err);
  EXPECT_EQ(j["error"], "AliasRisk");
  EXPECT_GT(j["suggested_oversample"].get<int>(), 2);
  const int k = j["suggested_oversample"].get<int>();
  EXPECT_EQ(run("transform --signal gaussian:pi --matrix mat:0,1,-1,10 --oversample " + std::to_string(k) +
                out_flag()).code, 0);
}

TEST_F(Cli, InputFilesAreNotModified) {
  ASSERT_EQ(run("gen --signal randbl:3:0.25 --grid -8:0.03125:512 --out " + (dir_ / "in.csv").string()).code, 0);
  const auto before = io::read_file(dir_ / "in.csv");
  const auto f = io::read_signal_csv(dir_ / "in.csv");
  EXPECT_EQ(f.size(), 512);
  ASSERT_EQ(run("transform --signal " + (dir_ / "in.csv").string() + " --matrix frft:0.7" + out_flag()).code, 0);
  EXPECT_EQ(io::read_file(dir_ / "in.csv"), before);
}

TEST_F(Cli, WignerHeatmap) {
  const auto r = run("wigner --signal gaussian:pi --grid -8:0.0625:256 --json" + out_flag());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::json::parse(r.out);
  // Peak 2 ||f||^2 at the origin; ||f||^2 = 1 / sqrt(2) for e^{-pi x^2}.
  EXPECT_NEAR(j["max"].get<double>(), 2.0 / std::sqrt(2.0), 1e-6);
  EXPECT_EQ(j["argmax"], (io::json{0.0, 0.0}));
  EXPECT_EQ(j["form"], "standard");
  const auto h = io::read_heatmap(dir_ / "wigner.pgm");
  const auto best = std::max_element(h.pixels.begin(), h.pixels.end()) - h.pixels.begin();
  EXPECT_EQ(best % h.width, 128);
  EXPECT_EQ(best / h.width, 127);
  EXPECT_TRUE(fs::exists(dir_ / "wigner_marginal_x.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "wigner_marginal_xi.csv"));
}

TEST_F(Cli, WThetaStandardPairIsWigner) {
  ASSERT_EQ(run("wigner --signal hermite:1 --grid -8:0.0625:256" + out_flag()).code, 0);
  ASSERT_EQ(run("wtheta --signal hermite:1 --s1 I --s2 J --grid -8:0.0625:256" + out_flag()).code, 0);
  EXPECT_EQ(io::read_file(dir_ / "wtheta.csv"), io::read_file(dir_ / "wigner.csv"));
  EXPECT_EQ(io::read_file(dir_ / "wtheta.pgm"), io::read_file(dir_ / "wigner.pgm"));
  EXPECT_EQ(io::read_file(dir_ / "wtheta_marginal_xi.csv"), io::read_file(dir_ / "wigner_marginal_xi.csv"));

  EXPECT_EQ(run("wtheta --signal hermite:1 --s1 J --s2 J --grid -8:0.0625:256" + out_flag()).code, 3);
  EXPECT_EQ(run("wtheta --signal hermite:1 --s1 I --grid -8:0.0625:256" + out_flag()).code, 2);
  const auto nonstd = run("wtheta --signal hermite:1 --s1 frft:0.4 --s2 frft:1.9 --grid -8:0.0625:256" + out_flag());
  ASSERT_EQ(nonstd.code, 0);
  const auto side = io::json::parse(io::read_file(dir_ / "wtheta.json"));
  EXPECT_TRUE(side["form"].contains("omega"));
}

TEST_F(Cli, RadonAndCovariance) {
  ASSERT_EQ(run("radon --signal gaussian:pi --a 0.6 --b 0.8 --grid -8:0.0625:256" + out_flag()).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "radon.csv"));
  EXPECT_EQ(run("radon --signal gaussian:pi --a 0 --b 0 --grid -8:0.0625:256" + out_flag()).code, 3);
  const auto c = run("covariance --signal gaussian:pi --grid -8:0.0625:256 --json" + out_flag());
  ASSERT_EQ(c.code, 0) << c.err;
  const auto j = io::json::parse(c.out);
  EXPECT_NEAR(j["sigma"][0][0].get<double>(), 1 / (4 * pi), 1e-6);
  EXPECT_NEAR(j["sigma"][1][1].get<double>(), 1 / (4 * pi), 1e-6);
  EXPECT_NEAR(j["min_eig"].get<double>(), 0.0, 1e-6);
}

TEST_F(Cli, VerifyChecks) {
  auto r = run("verify heisenberg --signal gaussian:pi --s1 I --s2 J");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 1u);
  const auto& h = j["reports"][0];
  EXPECT_EQ(h["check"], "heisenberg");
  EXPECT_LE(std::abs(h["slack"].get<double>()) / h["rhs"].get<double>(), 1e-3);
  EXPECT_EQ(j["pass"], true);

  r = run("verify hardy --alpha 6.2832 --beta 6.2832 --matrix J");
  ASSERT_EQ(r.code, 0) << r.err;
  j = io::json::parse(r.out);
  EXPECT_EQ(j["reports"][0]["classification"], "supercritical");

  r = run("verify hardy --signal gaussian:2pi --matrix J");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::json::parse(r.out)["reports"][0]["classification"], "critical");

  r = run("verify rs --signal hermite:1 --s1 frft:0.4 --s2 frft:1.9 --grid -8:0.0625:256");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(io::json::parse(r.out)["reports"][0]["min_eig"].get<double>(), -1e-8);

  r = run("verify paley-wiener --signal rect:1 --matrix J");
  ASSERT_EQ(r.code, 0) << r.err;
  j = io::json::parse(r.out)["reports"][0];
  EXPECT_NEAR(j["lhs"].get<double>() / (2 * pi), 1.0, 0.05);
}

TEST_F(Cli, ExitCodes) {
  // A tolerance that no signal can meet turns the check into a failure.
  EXPECT_EQ(run("verify heisenberg --signal gaussian:pi --tol slack=-0.5").code, 1);
  EXPECT_EQ(run("verify heisenberg --signal gaussian:pi --tol nope=1").code, 2);
  EXPECT_EQ(run("verify nonsense").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify heisenberg --signal noise:1").code, 2);
  EXPECT_EQ(run("verify heisenberg --signal gaussian:pi --s1 J --s2 J").code, 0);  // (S1 J S2^T)_11 = 0
  EXPECT_EQ(run("verify rs --signal gaussian:pi --s1 J --s2 J").code, 3);
  EXPECT_EQ(run("verify paley-wiener --signal rect:1 --radius 0.5").code, 3);
  EXPECT_EQ(run("verify hardy --signal rect:1").code, 4);
  EXPECT_EQ(run("verify heisenberg --signal chirp:0.1:6").code, 4);
  EXPECT_EQ(run("verify all --corpus " + (dir_ / "missing").string()).code, 3);
}

TEST_F(Cli, VerifyAllIsReproducible) {
  const auto corpus = dir_ / "corpus";
  ASSERT_EQ(run("gen --signal hermite:1 --grid -8:0.03125:512 --out " + (corpus / "a.csv").string()).code, 0);
  ASSERT_EQ(run("gen --signal rect:1 --grid -8:0.03125:512 --out " + (corpus / "b.csv").string()).code, 0);
  const auto a = run("verify all --corpus " + corpus.string() + " --seed 42" +
                     out_flag("r1"));
  const auto b = run("verify all --corpus " + corpus.string() + " --seed 42" +
                     out_flag("r2"));
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(io::read_file(dir_ / "r1" / "report.json"), a.out);
  const auto j = io::json::parse(a.out);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["failed"], 0);
  // Paley-Wiener runs only for the compactly supported signal.
  int pw = 0;
  for (const auto& r : j["reports"]) pw += r["check"] == "paley-wiener";
  EXPECT_EQ(pw, 1);

  const auto c = run("verify all --corpus " + corpus.string() + " --seed 7");
  EXPECT_NE(c.out, a.out);
}
