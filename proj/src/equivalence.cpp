#include "kaonet/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kaonet {

ClassicalSystem companion_system(const RealMatrix& damping, const RealMatrix& stiffness) {
  if (damping.dim() != stiffness.dim())
    throw DimensionMismatch("damping and stiffness dimensions differ");
  std::size_t m = damping.dim();
  RealMatrix c(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    c(i, m + i) = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      c(m + i, j) = -stiffness(i, j);
      c(m + i, m + j) = -damping(i, j);
    }
  }
  return ClassicalSystem{damping, stiffness, c};
}

ClassicalSystem reduce_second_order(const RealMatrix& a2, const RealMatrix& a1,
                                    const RealMatrix& a0) {
  if (a2.dim() != a1.dim() || a1.dim() != a0.dim())
    throw DimensionMismatch("coefficient dimensions differ");
  RealMatrix inv(a2.dim());
  try {
    inv = a2.inverse();
  } catch (const SingularDecomposition& e) {
    throw SingularLeadingCoefficient(e.what());
  }
  return companion_system(inv * a1, inv * a0);
}

std::vector<double> char_poly(const RealMatrix& m) {
  // Faddeev-LeVerrier recurrence; fine at the dimensions used here.
  std::size_t n = m.dim();
  std::vector<double> coeff(n + 1, 0.0);
  coeff[n] = 1.0;
  RealMatrix acc = RealMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc;
    double trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += acc(i, i);
    double c = -trace / static_cast<double>(k);
    coeff[n - k] = c;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c;
  }
  return coeff;
}

std::vector<double> char_poly_classical(const ClassicalSystem& sys) {
  return char_poly(sys.companion);
}

std::vector<double> char_poly_decomplexified(const ComplexMatrix& k) {
  EigenDecomposition eig = eigendecompose(k);
  std::vector<double> poly = {1.0};
  for (Complex lambda : eig.values) {
    // multiply by z^2 - 2 Re(lambda) z + |lambda|^2
    std::vector<double> factor = {std::norm(lambda), -2.0 * lambda.real(), 1.0};
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += poly[i] * factor[j];
    poly = std::move(next);
  }
  return poly;
}

namespace {

bool polys_match(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  double scale = 1.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (double v : b) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol::poly_match * scale) return false;
  return true;
}

}  // namespace

EquivalenceMap build_similarity(const ComplexMatrix& generator,
                                const RealMatrix& classical) {
  std::size_t n = generator.dim();
  if (classical.dim() != 2 * n)
    throw DimensionMismatch("classical matrix must be twice the quantum dimension");

  if (!polys_match(char_poly(classical), char_poly_decomplexified(generator)))
    throw PolynomialMismatch("characteristic polynomials disagree; systems not equivalent");

  EigenDecomposition qeig = eigendecompose(generator);
  if (qeig.degenerate)
    throw SingularDecomposition("degenerate quantum spectrum");
  double qscale = std::max(generator.norm(), 1e-300);
  for (std::size_t a = 0; a < n; ++a) {
    if (std::abs(qeig.values[a].imag()) < tol::degeneracy * qscale)
      throw SingularDecomposition("real quantum eigenvalue; no oscillatory classical image");
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(qeig.values[a] - std::conj(qeig.values[b])) < tol::degeneracy * qscale)
        throw SingularDecomposition("conjugate eigenvalue collision; decomplexified spectrum degenerate");
  }

  // Deterministic block order: sort the quantum eigenvalues by Im ascending,
  // then Re ascending, and use the same order on both sides.
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (qeig.values[a].imag() != qeig.values[b].imag())
      return qeig.values[a].imag() < qeig.values[b].imag();
    return qeig.values[a].real() < qeig.values[b].real();
  });

  ComplexMatrix q(n);
  std::vector<Complex> lambdas(n);
  for (std::size_t col = 0; col < n; ++col) {
    lambdas[col] = qeig.values[order[col]];
    for (std::size_t i = 0; i < n; ++i) q(i, col) = qeig.vectors(i, order[col]);
  }

  // Classical eigenvectors for the matching eigenvalues; each one yields the
  // real Jordan block pair (Re w, -Im w).
  EigenDecomposition ceig = eigendecompose(classical);
  RealMatrix basis(2 * n);
  std::vector<bool> used(2 * n, false);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (used[j]) continue;
      double d = std::abs(ceig.values[j] - lambdas[col]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[best] = true;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      Complex w = ceig.vectors(i, best);
      basis(i, 2 * col) = w.real();
      basis(i, 2 * col + 1) = -w.imag();
    }
  }

  RealMatrix s = basis * decomplexify(q).inverse();
  double det = s.determinant();
  if (det == 0.0) throw SingularDecomposition("similarity candidate singular");
  double scale = std::pow(std::abs(det), 1.0 / static_cast<double>(2 * n));
  s = (1.0 / scale) * s;
  RealMatrix basis_scaled = (1.0 / scale) * basis;

  EquivalenceMap map;
  map.similarity = s;
  map.classical_basis = basis_scaled;
  map.quantum_basis = q;
  map.determinant = s.determinant();
  RealMatrix image = s * decomplexify(generator) * s.inverse();
  map.residual = (classical - image).norm() / std::max(classical.norm(), 1e-300);
  return map;
}

EquivalenceMap build_similarity(const ComplexMatrix& generator,
                                const ClassicalSystem& sys) {
  return build_similarity(generator, sys.companion);
}

std::pair<double, double> identify_eigen_coefficients(Complex lambda) {
  if (std::abs(lambda.imag()) <= 1e-12 * std::max(1.0, std::abs(lambda)))
    throw RealEigenvalue("real eigenvalue has no underdamped quadratic");
  return {-2.0 * lambda.real(), std::norm(lambda)};
}

}  // namespace kaonet
