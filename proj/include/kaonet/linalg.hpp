#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kaonet/errors.hpp"
#include "kaonet/tolerances.hpp"

namespace kaonet {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using RVector = std::vector<double>;

// Dense square complex matrix, row-major, value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  bool is_hermitian(double rel_tol = tol::equality) const;

  double norm() const;  // Frobenius
  Complex determinant() const;
  ComplexMatrix inverse() const;  // throws SingularDecomposition
  double condition() const;       // 2-norm condition number

  CVector apply(const CVector& x) const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

// Dense square real matrix with the same surface.
class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  RealMatrix(std::size_t dim, std::initializer_list<double> entries);

  static RealMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  RealMatrix transpose() const;
  double norm() const;
  double determinant() const;
  RealMatrix inverse() const;  // throws SingularDecomposition

  RVector apply(const RVector& x) const;

  friend RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator*(double s, const RealMatrix& a);

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Entry a+bi of an n x n complex matrix becomes the 2x2 block
// [[a, -b], [b, a]] of a 2n x 2n real matrix.  An algebra homomorphism.
RealMatrix decomplexify(const ComplexMatrix& m);

// (z1, ..., zn) -> (Re z1, Im z1, ..., Re zn, Im zn).
RVector decomplexify(const CVector& z);

// Embed a real matrix as a complex one.
ComplexMatrix complexify(const RealMatrix& m);

struct EigenDecomposition {
  std::vector<Complex> values;  // sorted by Re descending, then Im descending
  ComplexMatrix vectors;        // unit columns, first nonzero component real > 0
  bool degenerate = false;      // min pairwise eigenvalue gap < degeneracy tol
};

// Closed form for dim <= 2, QR-type iteration above.  Throws
// SingularDecomposition when the eigenvector matrix is numerically singular
// (nontrivial Jordan structure).
EigenDecomposition eigendecompose(const ComplexMatrix& m);
EigenDecomposition eigendecompose(const RealMatrix& m);

// Fixed 2x2 unitary that intertwines the realified scalar with the
// conjugate pair: diag(z, z*) = U^-1 decomplexify(z) U.
ComplexMatrix conjugate_pair_unitary();

// Frobenius norm of diag(z, z*) - U^-1 decomplexify(z) U; zero in exact
// arithmetic for every z.
double conjugate_pair_residual(Complex z);

// Hermitian dot product, conjugate-linear in the first argument.
Complex hdot(const CVector& a, const CVector& b);
double hnorm(const CVector& a);

}  // namespace kaonet
