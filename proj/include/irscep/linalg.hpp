#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace irscep {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Elements default to zero.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  static CMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {d_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {d_.data() + i * cols_, cols_}; }

  std::span<cplx> data() { return d_; }
  std::span<const cplx> data() const { return d_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> d_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat adjoint(const CMat& a);

std::vector<cplx> mat_vec(const CMat& a, std::span<const cplx> x);
std::vector<cplx> adjoint_vec(const CMat& a, std::span<const cplx> x);  // a^H x

double frob_norm(const CMat& a);
double max_abs(const CMat& a);
bool is_hermitian(const CMat& a, double tol);

/// Inner product sum conj(a[i]) * b[i].
cplx vdot(std::span<const cplx> a, std::span<const cplx> b);
/// Plain bilinear sum a[i] * b[i].
cplx dot_plain(std::span<const cplx> a, std::span<const cplx> b);
/// Squared Euclidean norm.
double norm2(std::span<const cplx> a);

/// Eigendecomposition of a Hermitian matrix via cyclic complex Jacobi
/// rotations. Eigenvalues are returned in ascending order, `vectors` holds
/// the matching eigenvectors as columns (unitary up to roundoff).
struct HermEig {
  std::vector<double> values;
  CMat vectors;
};
HermEig hermitian_eig(CMat a);

/// Nearest positive semidefinite matrix (eigenvalue clipping).
CMat psd_project(const CMat& a);

/// Cholesky factor L with a = L L^H. For numerically semidefinite inputs an
/// identity jitter is added and grown up to `max_jitter`; beyond that the
/// factorization throws.
CMat cholesky(const CMat& a, double max_jitter = 1e-9);

/// Returns true and fills `l` when the Hermitian matrix factorizes with all
/// pivots above rel_tol * max diagonal. Used as a full-rank test for Gram
/// matrices.
bool try_cholesky(const CMat& a, CMat& l, double rel_tol);

/// Solves a x = b by LU with partial pivoting. Throws on singular a.
std::vector<cplx> lu_solve(CMat a, std::vector<cplx> b);

/// Trace of the inverse of a square nonsingular matrix.
double trace_of_inverse(const CMat& a);

}  // namespace irscep
