#include "kaonet/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace kaonet {

namespace {

const char* code_names[] = {
    "dimension_mismatch",
    "singular_decomposition",
    "singular_leading_coefficient",
    "polynomial_mismatch",
    "real_eigenvalue",
    "zero_off_diagonal",
    "cpt_violation",
    "constraint_violation",
    "infeasible_spectrum",
    "overdamped_mode",
    "real_spectrum",
    "degenerate_spectrum",
    "step_too_large",
    "config_error",
};

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
  return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  return code_names[static_cast<int>(code)];
}

int error_exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_error:
      return 2;
    case ErrorCode::infeasible_spectrum:
      return 3;
    default:
      return 4;
  }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : dim_(dim), data_(entries) {
  if (data_.size() != dim * dim)
    throw DimensionMismatch("matrix initializer has wrong length");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = (*this)(j, i);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(i, j));
  return out;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  double scale = std::max(norm(), 1e-300);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > rel_tol * scale)
        return false;
  return true;
}

double ComplexMatrix::norm() const {
  double s = 0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

Complex ComplexMatrix::determinant() const {
  return to_eigen(*this).partialPivLu().determinant();
}

ComplexMatrix ComplexMatrix::inverse() const {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(to_eigen(*this));
  double rcond = lu.rcond();
  if (!(rcond > 1.0 / tol::condition_limit))
    throw SingularDecomposition("matrix numerically singular in inverse()");
  return from_eigen(lu.inverse());
}

double ComplexMatrix::condition() const {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(*this));
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double smax = svd.singularValues()(0);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

CVector ComplexMatrix::apply(const CVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("vector length != matrix dim");
  CVector y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in +");
  ComplexMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in -");
  ComplexMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in *");
  ComplexMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
  return out;
}

RealMatrix::RealMatrix(std::size_t dim, std::initializer_list<double> entries)
    : dim_(dim), data_(entries) {
  if (data_.size() != dim * dim)
    throw DimensionMismatch("matrix initializer has wrong length");
}

RealMatrix RealMatrix::identity(std::size_t dim) {
  RealMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = (*this)(j, i);
  return out;
}

double RealMatrix::norm() const {
  double s = 0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double RealMatrix::determinant() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m.partialPivLu().determinant();
}

RealMatrix RealMatrix::inverse() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > 1.0 / tol::condition_limit))
    throw SingularDecomposition("matrix numerically singular in inverse()");
  Eigen::MatrixXd inv = lu.inverse();
  RealMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = inv(i, j);
  return out;
}

RVector RealMatrix::apply(const RVector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("vector length != matrix dim");
  RVector y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in +");
  RealMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in -");
  RealMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
  return out;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix dims differ in *");
  RealMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

RealMatrix operator*(double s, const RealMatrix& a) {
  RealMatrix out(a.dim_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
  return out;
}

RealMatrix decomplexify(const ComplexMatrix& m) {
  RealMatrix out(2 * m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      out(2 * i, 2 * j) = re;
      out(2 * i, 2 * j + 1) = -im;
      out(2 * i + 1, 2 * j) = im;
      out(2 * i + 1, 2 * j + 1) = re;
    }
  return out;
}

RVector decomplexify(const CVector& z) {
  RVector out(2 * z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[2 * i] = z[i].real();
    out[2 * i + 1] = z[i].imag();
  }
  return out;
}

ComplexMatrix complexify(const RealMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

// Deterministic phase: first component above the noise floor made real > 0,
// after normalizing to unit Hermitian norm.
void fix_phase(CVector& v) {
  double nrm = hnorm(v);
  if (nrm == 0.0) return;
  for (Complex& z : v) z /= nrm;
  double floor = 0;
  for (const Complex& z : v) floor = std::max(floor, std::abs(z));
  floor *= 1e-12;
  for (const Complex& z : v) {
    if (std::abs(z) > floor) {
      Complex phase = std::conj(z) / std::abs(z);
      for (Complex& w : v) w *= phase;
      break;
    }
  }
}

EigenDecomposition eig2x2(const ComplexMatrix& m) {
  Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  Complex tr = a + d;
  Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  Complex l1 = (tr + disc) / 2.0;
  Complex l2 = (tr - disc) / 2.0;

  double scale = std::max(m.norm(), 1e-300);
  auto vector_for = [&](Complex lambda) {
    // Rows of (m - lambda I) are (a-l, b) and (c, d-l); the eigenvector is
    // orthogonal in the bilinear sense to the larger row.
    CVector v1 = {b, lambda - a};
    CVector v2 = {lambda - d, c};
    CVector v = (hnorm(v1) >= hnorm(v2)) ? v1 : v2;
    if (hnorm(v) < 1e-14 * scale) v = {1.0, 0.0};  // diagonal matrix
    return v;
  };

  EigenDecomposition out;
  out.values = {l1, l2};
  CVector v1 = vector_for(l1), v2 = vector_for(l2);
  // Diagonal case: keep unit vectors aligned with the matching entries.
  if (std::abs(b) + std::abs(c) < 1e-14 * scale) {
    v1 = (std::abs(a - l1) <= std::abs(d - l1)) ? CVector{1.0, 0.0} : CVector{0.0, 1.0};
    v2 = (std::abs(a - l2) <= std::abs(d - l2)) ? CVector{1.0, 0.0} : CVector{0.0, 1.0};
  }
  out.vectors = ComplexMatrix(2);
  fix_phase(v1);
  fix_phase(v2);
  for (std::size_t i = 0; i < 2; ++i) {
    out.vectors(i, 0) = v1[i];
    out.vectors(i, 1) = v2[i];
  }
  return out;
}

}  // namespace

EigenDecomposition eigendecompose(const ComplexMatrix& m) {
  if (m.dim() == 0) throw DimensionMismatch("empty matrix");
  EigenDecomposition out;
  if (m.dim() == 1) {
    out.values = {m(0, 0)};
    out.vectors = ComplexMatrix(1, {Complex(1.0)});
  } else if (m.dim() == 2) {
    out = eig2x2(m);
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    if (solver.info() != Eigen::Success)
      throw SingularDecomposition("eigen iteration failed to converge");
    out.values.resize(m.dim());
    out.vectors = ComplexMatrix(m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out.values[j] = solver.eigenvalues()(static_cast<Eigen::Index>(j));
      CVector v(m.dim());
      for (std::size_t i = 0; i < m.dim(); ++i)
        v[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      fix_phase(v);
      for (std::size_t i = 0; i < m.dim(); ++i) out.vectors(i, j) = v[i];
    }
  }

  // Sort by Re descending, then Im descending, carrying the columns along.
  std::vector<std::size_t> order(m.dim());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.values[a].real() != out.values[b].real())
      return out.values[a].real() > out.values[b].real();
    return out.values[a].imag() > out.values[b].imag();
  });
  EigenDecomposition sorted;
  sorted.values.resize(m.dim());
  sorted.vectors = ComplexMatrix(m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    sorted.values[j] = out.values[order[j]];
    for (std::size_t i = 0; i < m.dim(); ++i) sorted.vectors(i, j) = out.vectors(i, order[j]);
  }

  double scale = std::max(m.norm(), 1e-300);
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m.dim(); ++a)
    for (std::size_t b = a + 1; b < m.dim(); ++b)
      min_gap = std::min(min_gap, std::abs(sorted.values[a] - sorted.values[b]));
  sorted.degenerate = m.dim() > 1 && min_gap < tol::degeneracy * scale;

  if (sorted.vectors.condition() > tol::condition_limit)
    throw SingularDecomposition("eigenvector matrix numerically singular");
  return sorted;
}

EigenDecomposition eigendecompose(const RealMatrix& m) {
  return eigendecompose(complexify(m));
}

ComplexMatrix conjugate_pair_unitary() {
  double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, {Complex(0, s), Complex(s, 0), Complex(s, 0), Complex(0, s)});
}

double conjugate_pair_residual(Complex z) {
  ComplexMatrix u = conjugate_pair_unitary();
  ComplexMatrix lhs(2, {z, 0.0, 0.0, std::conj(z)});
  ComplexMatrix rhs = u.adjoint() * complexify(decomplexify(ComplexMatrix(1, {z}))) * u;
  return (lhs - rhs).norm();
}

Complex hdot(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ in hdot");
  Complex s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double hnorm(const CVector& a) { return std::sqrt(std::abs(hdot(a, a))); }

}  // namespace kaonet
