#pragma once

#include <Eigen/Core>

#include <complex>

namespace lct {

using cplx = std::complex<double>;

/// X_k = sum_j x_j exp(-2 pi i jk / N), unscaled.
Eigen::VectorXcd fft(const Eigen::VectorXcd& x);

/// x_j = sum_k X_k exp(+2 pi i jk / N), unscaled.
Eigen::VectorXcd ifft(const Eigen::VectorXcd& X);

/// Chirp-z transform: y_k = sum_j x_j exp(-2 pi i beta j k) for k = 0..m-1,
/// evaluated with Bluestein's algorithm. beta may be any real number.
Eigen::VectorXcd czt(const Eigen::VectorXcd& x, double beta, Eigen::Index m);

/// Smallest power of two >= n.
Eigen::Index next_pow2(Eigen::Index n);

}  // namespace lct
