#pragma once

// Symplectic linear algebra on R^{2n}: the standard form J, block
// decompositions, free matrices and their generating functions, named
// generators (Fourier, fractional Fourier, Fresnel, Lorentz, shears,
// squeezes), coupling matrices and non-standard symplectic forms.
//
// Everything here is templated on the scalar type and works on dense Eigen
// matrices. Objects are immutable once constructed.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lct/errors.hpp"

namespace lct {

using Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr double kTolSympl = 1e-10;
inline constexpr double kFreeThreshold = 1e-10;
inline constexpr Index kMaxHalfDim = 16;

namespace detail {

template <typename Derived>
typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::Scalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::Scalar asymmetry(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.transpose());
}

inline void check_half_dim(Index n) {
  if (n < 1 || n > kMaxHalfDim) {
    throw Error(ErrorKind::BadParameter,
                "half-dimension must be in [1, 16], got " + std::to_string(n));
  }
}

}  // namespace detail

template <typename Scalar>
MatrixX<Scalar> standard_J_matrix(Index n) {
  detail::check_half_dim(n);
  MatrixX<Scalar> J = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n).setIdentity();
  J.bottomLeftCorner(n, n) = -MatrixX<Scalar>::Identity(n, n);
  return J;
}

template <typename Scalar>
struct SymplecticCheck {
  bool ok;
  Scalar residual;  // max-norm of M^T J M - J
};

/// Tests M^T J M = J in max-norm. Throws OddDimension for non-square or
/// odd-sized input.
template <typename Derived>
SymplecticCheck<typename Derived::Scalar> is_symplectic(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar tol = typename Derived::Scalar(kTolSympl)) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorKind::OddDimension, "symplectic test needs a square matrix of even size, got " +
                                             std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()));
  }
  const Index n = m.rows() / 2;
  const MatrixX<Scalar> J = standard_J_matrix<Scalar>(n);
  const Scalar residual = detail::max_abs(m.transpose() * J * m - J);
  return {residual <= tol, residual};
}

template <typename Scalar>
struct BlockDecomposition {
  MatrixX<Scalar> A, B, C, D;
};

/// A 2n x 2n real matrix certified to satisfy S^T J S = J.
template <typename Scalar = double>
class SymplecticMatrix {
 public:
  using MatrixType = MatrixX<Scalar>;

  /// Validating constructor. Throws BadParameter when the matrix is not
  /// symplectic within `tol` or its determinant is not 1 within 1e-8.
  template <typename Derived>
  static SymplecticMatrix from(const Eigen::MatrixBase<Derived>& m,
                               Scalar tol = Scalar(kTolSympl)) {
    const auto check = is_symplectic(m, tol);
    detail::check_half_dim(m.rows() / 2);
    if (!check.ok) {
      throw Error(ErrorKind::BadParameter,
                  "matrix is not symplectic, residual " + std::to_string(double(check.residual)));
    }
    MatrixType copy = m;
    const Scalar det = copy.determinant();
    using std::abs;
    if (abs(det - Scalar(1)) > Scalar(1e-8)) {
      throw Error(ErrorKind::BadParameter,
                  "symplectic matrix has determinant " + std::to_string(double(det)));
    }
    return SymplecticMatrix(std::move(copy));
  }

  /// Skips validation. Only for matrices that are symplectic by
  /// construction (products, closed-form generators).
  static SymplecticMatrix trusted(MatrixType m) { return SymplecticMatrix(std::move(m)); }

  Index n() const { return m_.rows() / 2; }
  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  auto A() const { return m_.topLeftCorner(n(), n()); }
  auto B() const { return m_.topRightCorner(n(), n()); }
  auto C() const { return m_.bottomLeftCorner(n(), n()); }
  auto D() const { return m_.bottomRightCorner(n(), n()); }

  SymplecticMatrix operator*(const SymplecticMatrix& other) const {
    if (other.n() != n()) {
      throw Error(ErrorKind::BadParameter, "product of symplectic matrices of different size");
    }
    return SymplecticMatrix(m_ * other.m_);
  }

  /// Free iff the upper-right block is invertible.
  bool is_free(Scalar threshold = Scalar(kFreeThreshold)) const {
    using std::abs;
    return abs(MatrixType(B()).determinant()) >= threshold;
  }

  /// True when all four n x n blocks are diagonal within `tol`.
  bool has_diagonal_blocks(Scalar tol = Scalar(1e-12)) const {
    const Index k = n();
    for (Index i = 0; i < 2 * k; ++i) {
      for (Index j = 0; j < 2 * k; ++j) {
        if ((i % k) != (j % k) && std::abs(m_(i, j)) > tol) return false;
      }
    }
    return true;
  }

  /// The 2x2 matrix [[A_jj, B_jj], [C_jj, D_jj]] acting on axis j.
  SymplecticMatrix axis(Index j) const {
    const Index k = n();
    MatrixType s(2, 2);
    s << m_(j, j), m_(j, k + j), m_(k + j, j), m_(k + j, k + j);
    return SymplecticMatrix(std::move(s));
  }

 private:
  explicit SymplecticMatrix(MatrixType m) : m_(std::move(m)) {}

  MatrixType m_;
};

using Symplectic = SymplecticMatrix<double>;

template <typename Scalar = double>
SymplecticMatrix<Scalar> standard_J(Index n) {
  return SymplecticMatrix<Scalar>::trusted(standard_J_matrix<Scalar>(n));
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> symplectic_identity(Index n) {
  detail::check_half_dim(n);
  return SymplecticMatrix<Scalar>::trusted(MatrixX<Scalar>::Identity(2 * n, 2 * n));
}

template <typename Scalar>
BlockDecomposition<Scalar> block_split(const SymplecticMatrix<Scalar>& s) {
  return {s.A(), s.B(), s.C(), s.D()};
}

/// Residual of the block relations: A^T C and B^T D symmetric,
/// A^T D - C^T B = I. Returns the largest violation.
template <typename Scalar>
Scalar block_relation_residual(const BlockDecomposition<Scalar>& b) {
  const Index n = b.A.rows();
  const Scalar r1 = detail::asymmetry(MatrixX<Scalar>(b.A.transpose() * b.C));
  const Scalar r2 = detail::asymmetry(MatrixX<Scalar>(b.B.transpose() * b.D));
  const Scalar r3 = detail::max_abs(MatrixX<Scalar>(b.A.transpose() * b.D - b.C.transpose() * b.B -
                                                    MatrixX<Scalar>::Identity(n, n)));
  using std::max;
  return max(r1, max(r2, r3));
}

/// A free symplectic matrix together with the cached coefficients of its
/// quadratic generating function.
template <typename Scalar = double>
struct FreeSymplectic {
  SymplecticMatrix<Scalar> matrix;
  BlockDecomposition<Scalar> blocks;
  MatrixX<Scalar> db_inv;   // D B^{-1}
  MatrixX<Scalar> b_inv;    // B^{-1}
  MatrixX<Scalar> b_inv_a;  // B^{-1} A
  Scalar det_b;

  Index n() const { return matrix.n(); }
};

using Free = FreeSymplectic<double>;

template <typename Scalar>
FreeSymplectic<Scalar> as_free(const SymplecticMatrix<Scalar>& s,
                               Scalar threshold = Scalar(kFreeThreshold)) {
  auto blocks = block_split(s);
  const Scalar det_b = blocks.B.determinant();
  using std::abs;
  if (abs(det_b) < threshold) {
    throw Error(ErrorKind::NotFree,
                "upper-right block is singular (det B = " + std::to_string(double(det_b)) + ")");
  }
  const Eigen::PartialPivLU<MatrixX<Scalar>> lu(blocks.B);
  MatrixX<Scalar> b_inv = lu.inverse();
  MatrixX<Scalar> db_inv = blocks.D * b_inv;
  MatrixX<Scalar> b_inv_a = b_inv * blocks.A;
  if (detail::asymmetry(db_inv) > Scalar(1e-8) || detail::asymmetry(b_inv_a) > Scalar(1e-8)) {
    throw Error(ErrorKind::BadParameter, "generating-function coefficients are not symmetric");
  }
  // Symmetrize to remove rounding asymmetry before caching.
  db_inv = (0.5 * (db_inv + db_inv.transpose())).eval();
  b_inv_a = (0.5 * (b_inv_a + b_inv_a.transpose())).eval();
  return {s, std::move(blocks), std::move(db_inv), std::move(b_inv), std::move(b_inv_a), det_b};
}

/// W(x, x') = 1/2 x.DB^{-1}x - B^{-1}x.x' + 1/2 x'.B^{-1}A x', normalized so
/// that xi = grad_x W and xi' = -grad_x' W for (x, xi) = S (x', xi').
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar generating_function(const FreeSymplectic<Scalar>& f, const Eigen::MatrixBase<DerivedX>& x,
                           const Eigen::MatrixBase<DerivedY>& xp) {
  return Scalar(0.5) * x.dot(f.db_inv * x) - xp.dot(f.b_inv * x) +
         Scalar(0.5) * xp.dot(f.b_inv_a * xp);
}

// ---------------------------------------------------------------------------
// Named generators

template <typename Scalar = double>
SymplecticMatrix<Scalar> fourier_matrix(Index n) {
  return standard_J<Scalar>(n);
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> frft_matrix(const std::vector<Scalar>& angles) {
  const Index n = Index(angles.size());
  detail::check_half_dim(n);
  MatrixX<Scalar> s = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  using std::abs;
  using std::cos;
  using std::sin;
  for (Index j = 0; j < n; ++j) {
    const Scalar c = cos(angles[j]);
    const Scalar sn = sin(angles[j]);
    if (abs(sn) < Scalar(kFreeThreshold)) {
      throw Error(ErrorKind::BadParameter, "fractional Fourier angle with sin(theta) = 0");
    }
    s(j, j) = c;
    s(j, n + j) = sn;
    s(n + j, j) = -sn;
    s(n + j, n + j) = c;
  }
  return SymplecticMatrix<Scalar>::trusted(std::move(s));
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> frft_matrix(Scalar angle) {
  return frft_matrix<Scalar>(std::vector<Scalar>{angle});
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> fresnel_matrix(const std::vector<Scalar>& b) {
  const Index n = Index(b.size());
  detail::check_half_dim(n);
  MatrixX<Scalar> s = MatrixX<Scalar>::Identity(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    if (b[j] == Scalar(0)) throw Error(ErrorKind::BadParameter, "Fresnel parameter b = 0");
    s(j, n + j) = b[j];
  }
  return SymplecticMatrix<Scalar>::trusted(std::move(s));
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> fresnel_matrix(Scalar b) {
  return fresnel_matrix<Scalar>(std::vector<Scalar>{b});
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> lorentz_matrix(const std::vector<Scalar>& phi) {
  const Index n = Index(phi.size());
  detail::check_half_dim(n);
  MatrixX<Scalar> s = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  using std::cosh;
  using std::sinh;
  for (Index j = 0; j < n; ++j) {
    if (phi[j] == Scalar(0)) throw Error(ErrorKind::BadParameter, "Lorentz rapidity phi = 0");
    const Scalar ch = cosh(phi[j]);
    const Scalar sh = sinh(phi[j]);
    s(j, j) = ch;
    s(j, n + j) = sh;
    s(n + j, j) = sh;
    s(n + j, n + j) = ch;
  }
  return SymplecticMatrix<Scalar>::trusted(std::move(s));
}

template <typename Scalar = double>
SymplecticMatrix<Scalar> lorentz_matrix(Scalar phi) {
  return lorentz_matrix<Scalar>(std::vector<Scalar>{phi});
}

/// Symplectic shear V_P = [[I, 0], [-P, I]], P symmetric.
template <typename Derived>
SymplecticMatrix<typename Derived::Scalar> shear_matrix(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const Index n = p.rows();
  detail::check_half_dim(n);
  if (p.cols() != n || detail::asymmetry(p) > Scalar(1e-12)) {
    throw Error(ErrorKind::BadParameter, "shear generator must be a symmetric square matrix");
  }
  MatrixX<Scalar> s = MatrixX<Scalar>::Identity(2 * n, 2 * n);
  s.bottomLeftCorner(n, n) = -p;
  return SymplecticMatrix<Scalar>::trusted(std::move(s));
}

/// Symplectic squeeze M_L = [[L^{-1}, 0], [0, L^T]].
template <typename Derived>
SymplecticMatrix<typename Derived::Scalar> squeeze_matrix(const Eigen::MatrixBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  const Index n = l.rows();
  detail::check_half_dim(n);
  if (l.cols() != n) throw Error(ErrorKind::BadParameter, "squeeze generator must be square");
  const Eigen::FullPivLU<MatrixX<Scalar>> lu(l);
  if (!lu.isInvertible()) throw Error(ErrorKind::BadParameter, "squeeze generator is singular");
  MatrixX<Scalar> s = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = lu.inverse();
  s.bottomRightCorner(n, n) = l.transpose();
  return SymplecticMatrix<Scalar>::trusted(std::move(s));
}

/// S^{-1} = J S^T J^T, i.e. [[D^T, -B^T], [-C^T, A^T]].
template <typename Scalar>
SymplecticMatrix<Scalar> inverse(const SymplecticMatrix<Scalar>& s) {
  const Index n = s.n();
  MatrixX<Scalar> inv(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = s.D().transpose();
  inv.topRightCorner(n, n) = -s.B().transpose();
  inv.bottomLeftCorner(n, n) = -s.C().transpose();
  inv.bottomRightCorner(n, n) = s.A().transpose();
  return SymplecticMatrix<Scalar>::trusted(std::move(inv));
}

// ---------------------------------------------------------------------------
// Non-standard symplectic forms

/// An antisymmetric invertible 2n x 2n matrix Omega, with its inverse.
template <typename Scalar = double>
struct SymplecticFormNS {
  Index n;
  MatrixX<Scalar> omega;
  MatrixX<Scalar> omega_inv;

  template <typename Derived>
  static SymplecticFormNS from(const Eigen::MatrixBase<Derived>& omega) {
    if (omega.rows() != omega.cols() || omega.rows() % 2 != 0) {
      throw Error(ErrorKind::OddDimension, "symplectic form must be square of even size");
    }
    if (detail::max_abs(MatrixX<Scalar>(omega + omega.transpose())) >
        Scalar(1e-10) * (Scalar(1) + detail::max_abs(omega))) {
      throw Error(ErrorKind::NotAntisymmetric, "symplectic form is not antisymmetric");
    }
    const Eigen::FullPivLU<MatrixX<Scalar>> lu(omega);
    if (!lu.isInvertible()) throw Error(ErrorKind::SingularCoupling, "symplectic form is singular");
    MatrixX<Scalar> inv = lu.inverse();
    const Index dim = omega.rows();
    if (detail::max_abs(MatrixX<Scalar>(omega * inv - MatrixX<Scalar>::Identity(dim, dim))) >
        Scalar(1e-8)) {
      throw Error(ErrorKind::SingularCoupling, "symplectic form is numerically singular");
    }
    return {dim / 2, omega, std::move(inv)};
  }
};

using FormNS = SymplecticFormNS<double>;

/// D with D J D^T = Omega, attached to the form it brings to standard shape.
template <typename Scalar = double>
struct DarbouxMatrix {
  MatrixX<Scalar> d;
  SymplecticFormNS<Scalar> target_form;
};

/// D^{(1,2)} = [[A1, B1], [A2, B2]] stacking the upper row blocks of the pair,
/// with Omega = D J D^T. Throws SingularCoupling when det D is below the free
/// threshold.
template <typename Scalar>
DarbouxMatrix<Scalar> coupling_matrix(const SymplecticMatrix<Scalar>& s1,
                                      const SymplecticMatrix<Scalar>& s2) {
  if (s1.n() != s2.n()) throw Error(ErrorKind::BadParameter, "coupling of different dimensions");
  const Index n = s1.n();
  MatrixX<Scalar> d(2 * n, 2 * n);
  d.topLeftCorner(n, n) = s1.A();
  d.topRightCorner(n, n) = s1.B();
  d.bottomLeftCorner(n, n) = s2.A();
  d.bottomRightCorner(n, n) = s2.B();
  using std::abs;
  if (abs(d.determinant()) < Scalar(kFreeThreshold)) {
    throw Error(ErrorKind::SingularCoupling, "coupling matrix D(1,2) is singular");
  }
  MatrixX<Scalar> omega = d * standard_J_matrix<Scalar>(n) * d.transpose();
  omega = (0.5 * (omega - omega.transpose())).eval();
  return {std::move(d), SymplecticFormNS<Scalar>::from(omega)};
}

template <typename Derived, typename Scalar>
bool in_sp_theta(const Eigen::MatrixBase<Derived>& p, const SymplecticFormNS<Scalar>& form,
                 Scalar tol = Scalar(1e-10)) {
  if (p.rows() != form.omega.rows() || p.cols() != form.omega.cols()) {
    throw Error(ErrorKind::BadParameter, "dimension mismatch against symplectic form");
  }
  return detail::max_abs(MatrixX<Scalar>(p * form.omega * p.transpose() - form.omega)) <= tol;
}

/// J_B = [[0, I], [-I, B]] for an antisymmetric field B; inverse
/// [[B, -I], [I, 0]].
template <typename Derived>
SymplecticFormNS<typename Derived::Scalar> magnetic_form(const Eigen::MatrixBase<Derived>& field) {
  using Scalar = typename Derived::Scalar;
  const Index n = field.rows();
  detail::check_half_dim(n);
  if (field.cols() != n || detail::max_abs(field + field.transpose()) > Scalar(1e-12)) {
    throw Error(ErrorKind::NotAntisymmetric, "magnetic field matrix must be antisymmetric");
  }
  MatrixX<Scalar> jb = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  jb.topRightCorner(n, n).setIdentity();
  jb.bottomLeftCorner(n, n) = -MatrixX<Scalar>::Identity(n, n);
  jb.bottomRightCorner(n, n) = field;
  MatrixX<Scalar> inv = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = field;
  inv.topRightCorner(n, n) = -MatrixX<Scalar>::Identity(n, n);
  inv.bottomLeftCorner(n, n).setIdentity();
  return {n, std::move(jb), std::move(inv)};
}

/// The n x n block of S1 J S2^T whose squared entries, times
/// ||f||^4 / 16 pi^2, are the sharp Heisenberg constants for the pair.
template <typename Scalar>
MatrixX<Scalar> heisenberg_bound_matrix(const SymplecticMatrix<Scalar>& s1,
                                        const SymplecticMatrix<Scalar>& s2) {
  if (s1.n() != s2.n()) throw Error(ErrorKind::BadParameter, "pair of different dimensions");
  const Index n = s1.n();
  const MatrixX<Scalar> full = s1.matrix() * standard_J_matrix<Scalar>(n) * s2.matrix().transpose();
  return full.topLeftCorner(n, n);
}

// ---------------------------------------------------------------------------
// Random symplectic matrices

struct RandomSymplecticOptions {
  int min_factors = 2;
  int max_factors = 6;
  double shear_scale = 1.0;     // entries of P drawn from U(-scale, scale)
  double squeeze_spread = 0.5;  // diagonal of L drawn from exp(U(-s, s))
};

/// Product of k in [min_factors, max_factors] random shears, squeezes and
/// fractional Fourier rotations.
template <typename Scalar = double, typename Rng>
SymplecticMatrix<Scalar> random_symplectic(Rng& rng, Index n,
                                           const RandomSymplecticOptions& opt = {}) {
  std::uniform_int_distribution<int> count(opt.min_factors, opt.max_factors);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.05, 2.0 * 3.14159265358979323846 - 0.05);
  auto result = symplectic_identity<Scalar>(n);
  const int k = count(rng);
  for (int f = 0; f < k; ++f) {
    switch (pick(rng)) {
      case 0: {
        MatrixX<Scalar> p(n, n);
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j <= i; ++j) p(i, j) = p(j, i) = Scalar(opt.shear_scale * unit(rng));
        result = result * shear_matrix(p);
        break;
      }
      case 1: {
        MatrixX<Scalar> l = MatrixX<Scalar>::Identity(n, n);
        for (Index i = 0; i < n; ++i) l(i, i) = Scalar(std::exp(opt.squeeze_spread * unit(rng)));
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < n; ++j)
            if (i != j) l(i, j) = Scalar(0.2 * unit(rng));
        result = result * squeeze_matrix(l);
        break;
      }
      default: {
        std::vector<Scalar> angles(static_cast<std::size_t>(n));
        for (auto& a : angles) {
          do {
            a = Scalar(angle(rng));
          } while (std::abs(std::sin(double(a))) < 1e-3);
        }
        result = result * frft_matrix<Scalar>(angles);
        break;
      }
    }
  }
  return result;
}

}  // namespace lct
