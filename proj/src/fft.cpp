#include "lct/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace lct {

namespace {

Eigen::FFT<double>& engine() {
  // kissfft plans are cached per instance; one per thread keeps calls reentrant.
  thread_local Eigen::FFT<double> fft_engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return fft_engine;
}

}  // namespace

Eigen::VectorXcd fft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out(x.size());
  if (x.size() == 0) return out;
  engine().fwd(out, x);
  return out;
}

Eigen::VectorXcd ifft(const Eigen::VectorXcd& X) {
  Eigen::VectorXcd out(X.size());
  if (X.size() == 0) return out;
  engine().inv(out, X);
  return out;
}

Eigen::Index next_pow2(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::VectorXcd czt(const Eigen::VectorXcd& x, double beta, Eigen::Index m) {
  using std::numbers::pi;
  const Eigen::Index n = x.size();
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
  if (n == 0 || m == 0) return y;

  // jk = (j^2 + k^2 - (k - j)^2) / 2
  auto chirp = [beta](Eigen::Index q) {
    // reduce q^2 * beta / 2 modulo 1 before forming the phase
    const double q2 = double(q) * double(q);
    double turns = 0.5 * beta * q2;
    turns -= std::floor(turns);
    return std::polar(1.0, -2.0 * pi * turns);
  };

  const Eigen::Index len = next_pow2(n + m - 1);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(len);
  for (Eigen::Index j = 0; j < n; ++j) a[j] = x[j] * chirp(j);
  Eigen::VectorXcd kernel = Eigen::VectorXcd::Zero(len);
  for (Eigen::Index q = 0; q < m; ++q) kernel[q] = std::conj(chirp(q));
  for (Eigen::Index q = 1; q < n; ++q) kernel[len - q] = std::conj(chirp(q));

  const Eigen::VectorXcd conv = ifft(fft(a).cwiseProduct(fft(kernel))) / double(len);
  for (Eigen::Index k = 0; k < m; ++k) y[k] = conv[k] * chirp(k);
  return y;
}

}  // namespace lct
