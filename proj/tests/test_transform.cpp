#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lct/transform.hpp"

using namespace lct;
using std::numbers::pi;

namespace {

const Grid1D kGrid{-8.0, 1.0 / 64, 1024};

double rel_l2(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).norm() / b.norm(); }

// Closed-form Fourier transform of exp(-alpha x^2), kernel exp(-2 pi i x xi).
cplx gauss_ft(double alpha, double xi) { return std::sqrt(pi / alpha) * std::exp(-pi * pi * xi * xi / alpha); }

Free free_of(const Symplectic& s) { return as_free(s); }

}  // namespace

TEST(Prefactor, PrincipalBranch) {
  EXPECT_NEAR(std::abs(lct_prefactor(free_of(standard_J(1))) - std::exp(cplx(0, -pi / 4))), 0.0, 1e-15);
  // det B < 0: (i b)^{-1/2} = exp(i pi/4) / sqrt|b|
  const auto f = free_of(fresnel_matrix(-4.0));
  EXPECT_NEAR(std::abs(lct_prefactor(f) - 0.5 * std::exp(cplx(0, pi / 4))), 0.0, 1e-15);
}

TEST(LctFast, FourierOfGaussian) {
  const auto f = make_signal(GaussianSpec::scalar(pi), kGrid);
  const auto g = lct_fast(f, free_of(standard_J(1)));
  Eigen::VectorXcd expect(g.size());
  for (Index k = 0; k < g.size(); ++k) expect[k] = std::exp(cplx(0, -pi / 4)) * std::exp(-pi * g.x(k) * g.x(k));
  EXPECT_LT(rel_l2(g.values(), expect), 1e-6);
}

TEST(LctFast, OutputGridMapsThroughB) {
  const auto f = make_signal(GaussianSpec::scalar(pi), kGrid);
  const auto g = lct_fast(f, free_of(fresnel_matrix(-0.5)), LctOptions{.oversample = 3});
  EXPECT_EQ(g.size(), 3 * 1024);
  EXPECT_NEAR(g.grid().dx, 0.5 / (3 * 1024 * kGrid.dx), 1e-15);
  // b < 0 reverses the bins: the grid runs over (-M/2, M/2] * dxi.
  EXPECT_NEAR(g.x(0), -g.x(g.size() - 1) + g.grid().dx, 1e-12);
}

// The Gaussian-with-matched-chirp family and its closed-form LCT, for many
// matrices. The closed form here is written out independently of the
// library routine: f gamma_2 = exp(-alpha x^2), then the Fourier transform.
TEST(LctFast, MatchedChirpGaussianFamily) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.5, 5.0);
  int done = 0;
  while (done < 20) {
    const auto s = random_symplectic(rng, 1);
    if (std::abs(s(0, 1)) < 0.3 || std::abs(s(0, 1)) > 3.0) continue;
    const double a = s(0, 0), b = s(0, 1), d = s(1, 1);
    const double alpha = ua(rng);
    const auto f = make_signal(GaussianSpec::scalar(alpha, a / b), kGrid);
    SampledSignal g;
    try {
      g = lct_fast(f, free_of(s));
    } catch (const AliasRiskError&) {
      continue;
    }
    const cplx pref = 1.0 / std::sqrt(cplx(0, b));
    Eigen::VectorXcd expect(g.size());
    for (Index k = 0; k < g.size(); ++k) {
      const double xi = g.x(k);
      expect[k] = pref * std::polar(1.0, pi * d / b * xi * xi) * gauss_ft(alpha, xi / b);
    }
    EXPECT_LT(rel_l2(g.values(), expect), 1e-6) << "alpha=" << alpha << " S=" << s.matrix();

    const auto closed = gaussian_lct_closed(GaussianSpec::scalar(alpha, a / b), free_of(s));
    EXPECT_LT(rel_l2(sample(closed, g.grid()), expect), 1e-12);
    ++done;
  }
}

TEST(GaussianClosed, Examples) {
  const auto j = gaussian_lct_closed(GaussianSpec::scalar(pi), free_of(standard_J(1)));
  EXPECT_NEAR(j.alpha(0, 0), pi, 1e-15);
  EXPECT_NEAR(j.phase(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(j.amplitude - std::exp(cplx(0, -pi / 4))), 0.0, 1e-15);

  // Fresnel b = 1: K = pi - i pi, so alpha = pi and the phase coefficient is -1.
  const auto fr = gaussian_lct_closed(GaussianSpec::scalar(pi, 1.0), free_of(fresnel_matrix(1.0)));
  EXPECT_NEAR(fr.alpha(0, 0), pi, 1e-15);
  EXPECT_NEAR(fr.phase(0, 0), -1.0, 1e-15);

  EXPECT_THROW(gaussian_lct_closed(GaussianSpec::scalar(pi, 0.3), free_of(fresnel_matrix(1.0))), Error);
}

TEST(LctFast, UnitarityRandom) {
  std::mt19937_64 rng(4);
  int done = 0;
  while (done < 40) {
    const auto s = random_symplectic(rng, 1);
    if (std::abs(s(0, 1)) < 0.3) continue;
    const auto f = make_signal(RandomBandlimitedSpec{std::uint64_t(done), 1.0}, kGrid);
    try {
      const auto g = lct_fast(f, free_of(s));
      EXPECT_NEAR(norm2(g), norm2(f), 1e-8 * norm2(f));
      ++done;
    } catch (const AliasRiskError&) {
    }
  }
}

TEST(LctFast, AliasRiskReportsOversample) {
  // Steep output chirp d/b = 400 on a coarse output grid.
  const auto s = Symplectic::from([] {
    Eigen::MatrixXd m(2, 2);
    m << 0.0, 0.25, -4.0, 100.0;
    return m;
  }());
  const auto f = make_signal(GaussianSpec::scalar(pi), kGrid);
  try {
    lct_fast(f, free_of(s));
    FAIL();
  } catch (const AliasRiskError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AliasRisk);
    EXPECT_GT(e.required_oversample(), 2);
    EXPECT_NO_THROW(lct_fast(f, free_of(s), LctOptions{.oversample = e.required_oversample()}));
  }

  // Steep input chirp: only a finer input grid helps.
  const auto coarse = make_signal(GaussianSpec::scalar(0.5), Grid1D{-8.0, 1.0 / 8, 128});
  try {
    lct_fast(coarse, free_of(Symplectic::from([] {
               Eigen::MatrixXd m(2, 2);
               m << 2.0, 0.25, 0.0, 0.5;
               return m;
             }())));
    FAIL();
  } catch (const AliasRiskError& e) {
    EXPECT_EQ(e.required_oversample(), 0);
    EXPECT_GT(e.input_refinement(), 1.0);
  }

  // On an explicit output grid oversampling does not apply.
  const auto g = make_signal(GaussianSpec::scalar(pi), kGrid);
  try {
    lct_fast(g, free_of(frft_matrix(0.25)), Grid1D{-8.0, 1.0 / 16, 256});
    FAIL();
  } catch (const AliasRiskError& e) {
    EXPECT_EQ(e.required_oversample(), 0);
  }
  EXPECT_NO_THROW(lct_fast(g, free_of(frft_matrix(0.25)), Grid1D{-8.0, 1.0 / 64, 1024}));
}

TEST(LctDirect, AgreesWithFastPath) {
  for (const auto& spec : {SignalSpec{GaussianSpec::scalar(pi)}, SignalSpec{ChirpSpec{0.5, 1.0}}}) {
    const Grid1D g{-8.0, 1.0 / 32, 512};
    const auto f = make_signal(spec, g);
    for (const auto& s : {frft_matrix(pi / 3), lorentz_matrix(0.6), fresnel_matrix(1.0)}) {
      const auto fast = lct_fast(f, free_of(s));
      std::vector<cplx> targets;
      for (Index k = 0; k < fast.size(); ++k) targets.emplace_back(fast.x(k));
      const auto direct = lct_direct(f, free_of(s), targets);
      EXPECT_LT(rel_l2(fast.values(), direct), 1e-5);
    }
  }
}

TEST(LctDirect, ZeroAndComplexTargets) {
  const Grid1D g{-4.0, 8.0 / 8192, 8192};
  const auto zero = SampledSignal(g, Eigen::VectorXcd::Zero(g.n));
  EXPECT_EQ(lct_direct(zero, free_of(standard_J(1)), {cplx(0.3, 0.0), cplx(0, 2)}).norm(), 0.0);

  // rect[-1,1) with S = J at z = i eta: i^{-1/2} sinh(2 pi eta) / (pi eta),
  // up to the half-open sampling of the edges.
  const auto r = make_signal(RectangleSpec{1.0}, g);
  for (double eta : {0.5, 1.0, 2.0}) {
    const cplx v = lct_direct(r, free_of(standard_J(1)), {cplx(0, eta)})[0];
    const cplx expect = std::exp(cplx(0, -pi / 4)) * std::sinh(2 * pi * eta) / (pi * eta);
    EXPECT_TRUE(std::isfinite(std::abs(v)));
    EXPECT_LT(std::abs(v - expect) / std::abs(expect), 0.01) << eta;
  }
}

TEST(LctFast, ExplicitGridMatchesNative) {
  const auto f = make_signal(RandomBandlimitedSpec{9, 1.0}, kGrid);
  const auto s = free_of(frft_matrix(0.9));
  const auto native = lct_fast(f, s, LctOptions{.oversample = 1});
  const auto explicit_grid = lct_fast(f, s, native.grid());
  EXPECT_LT(rel_l2(explicit_grid.values(), native.values()), 1e-10);
}

TEST(LctFast, FrftComposition) {
  const auto f = make_signal(RandomBandlimitedSpec{12, 0.5}, kGrid);
  const std::pair<double, double> pairs[] = {{0.4, 0.7}, {-0.9, 2.1}, {1.3, 1.2}, {-1.0, -1.5}};
  for (auto [t1, t2] : pairs) {
    const auto mid = lct_fast(f, free_of(frft_matrix(t2)));
    const auto two = lct_fast(mid, free_of(frft_matrix(t1)), kGrid);
    const auto one = lct_fast(f, free_of(frft_matrix(t1 + t2)), kGrid);
    EXPECT_LT((two.values() - one.values()).norm() / one.values().norm(), 1e-5) << t1 << " " << t2;
  }
}

// Outside (-pi, pi) the principal branch loses track of the metaplectic
// sign: the composition holds up to a factor -1.
TEST(LctFast, FrftCompositionUpToSign) {
  const auto f = make_signal(RandomBandlimitedSpec{13, 0.5}, kGrid);
  const double t1 = 2.0, t2 = 2.4;
  const auto two = lct_fast(lct_fast(f, free_of(frft_matrix(t2))), free_of(frft_matrix(t1)), kGrid);
  const auto one = lct_fast(f, free_of(frft_matrix(t1 + t2)), kGrid);
  EXPECT_LT((two.values() + one.values()).norm() / one.values().norm(), 1e-5);
}

TEST(LctFast, InverseRoundTrip) {
  const auto f = make_signal(ChirpSpec{0.5, 1.0}, kGrid);
  for (const auto& s : {lorentz_matrix(0.5), fresnel_matrix(-1.5), frft_matrix(2.5)}) {
    const auto g = lct_fast(f, free_of(s));
    const auto back = lct_fast(g, free_of(inverse(s)), kGrid);
    EXPECT_LT(rel_l2(back.values(), f.values()), 1e-5);
  }
}

TEST(Metaplectic, NonFreeDilation) {
  const auto f = make_signal(GaussianSpec::scalar(pi), kGrid);
  EXPECT_EQ(metaplectic_apply(f, symplectic_identity(1)).values(), f.values());
  EXPECT_EQ(metaplectic_apply(f, symplectic_identity(1), kGrid).values(), f.values());
  // squeeze L = 2: f(2x) sqrt(2)
  Eigen::MatrixXd l(1, 1);
  l << 2.0;
  const auto sq = metaplectic_apply(f, squeeze_matrix(l), kGrid);
  for (Index j = 0; j < kGrid.n; j += 31) {
    const double x = kGrid.at(j);
    EXPECT_NEAR(std::abs(sq[j] - std::sqrt(2.0) * std::exp(-4 * pi * x * x)), 0.0, 1e-10);
  }
  EXPECT_NEAR(norm2(sq), norm2(f), 1e-10);
}

// L_{S_L}[f_L](xi) = |L|^{-1} (L_S f)(xi / L) for S_L = M_L S M_L^T,
// M_L = diag(L, 1/L), f_L(x) = f(L x).
TEST(Scale, ConjugatedTransform) {
  const double L = 2.0;
  const auto f = make_signal(GaussianSpec::scalar(pi), kGrid);
  const auto fl = scale_signal(f, L);
  Eigen::MatrixXd m(2, 2);
  m << L, 0.0, 0.0, 1.0 / L;
  for (const auto& s : {standard_J(1), frft_matrix(0.6), lorentz_matrix(-0.4)}) {
    const auto sl = Symplectic::from(Eigen::MatrixXd(m * s.matrix() * m.transpose()));
    const auto lhs = lct_fast(fl, free_of(sl));
    const auto rhs = lct_fast(f, free_of(s), Grid1D{lhs.grid().x0 / L, lhs.grid().dx / L, lhs.size()});
    EXPECT_LT(rel_l2(lhs.values(), rhs.values() / L), 1e-6);
  }
}

TEST(Separable, ProductGaussianAndUnitarity) {
  const Grid1D g{-6.0, 12.0 / 256, 256};
  const auto a = make_signal(GaussianSpec::scalar(pi), g);
  const auto b = make_signal(HermiteSpec{1}, g);
  const auto ab = make_separable({a, b});
  const auto s = frft_matrix(std::vector<double>{0.8, 0.8});
  const auto t = lct_nd_separable(ab, s);
  const auto ta = lct_fast(a, free_of(frft_matrix(0.8)));
  const auto tb = lct_fast(b, free_of(frft_matrix(0.8)));
  const auto prod = make_separable({ta, tb});
  EXPECT_LT(rel_l2(t.values(), prod.values()), 1e-6);
  EXPECT_NEAR(norm2(t), norm2(ab), 1e-8 * norm2(ab));

  const auto fourier = lct_nd_separable(ab, frft_matrix(std::vector<double>{pi / 2, pi / 2}));
  const auto fa = lct_fast(a, free_of(standard_J(1)));
  const auto fb = lct_fast(b, free_of(standard_J(1)));
  EXPECT_LT(rel_l2(fourier.values(), make_separable({fa, fb}).values()), 1e-12);
  // i^{-1} times the plain 2D Fourier transform; F h_1 = -i h_1 and F h_0 = h_0.
  const auto h0 = make_signal(GaussianSpec::scalar(pi), fa.grid());
  const auto h1 = make_signal(HermiteSpec{1}, fb.grid());
  const auto plain = make_separable({h0, h1});
  EXPECT_LT(rel_l2(fourier.values(), Eigen::VectorXcd(-plain.values())), 1e-6);

  Eigen::MatrixXd p(2, 2);
  p << 1.0, 0.5, 0.5, 1.0;
  try {
    lct_nd_separable(ab, shear_matrix(p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSeparable);
  }
}
