#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kaonet/linalg.hpp"
#include "support.hpp"

using namespace kaonet;
using kaonet::testing::max_abs_entry;
using kaonet::testing::naive_decomplexify;
using kaonet::testing::random_complex;
using kaonet::testing::random_matrix;
using kaonet::testing::rng;

TEST_CASE("decomplexify scalar cases") {
  RealMatrix one = decomplexify(ComplexMatrix(1, {Complex(1.0)}));
  CHECK(one(0, 0) == 1.0);
  CHECK(one(0, 1) == 0.0);
  CHECK(one(1, 0) == 0.0);
  CHECK(one(1, 1) == 1.0);

  RealMatrix i = decomplexify(ComplexMatrix(1, {Complex(0.0, 1.0)}));
  CHECK(i(0, 0) == 0.0);
  CHECK(i(0, 1) == -1.0);
  CHECK(i(1, 0) == 1.0);
  CHECK(i(1, 1) == 0.0);
}

TEST_CASE("decomplexify is multiplicative") {
  auto gen = rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix m = random_matrix(gen, 2), n = random_matrix(gen, 2);
    RealMatrix lhs = decomplexify(m * n);
    RealMatrix rhs = naive_decomplexify(m) * naive_decomplexify(n);
    CHECK(max_abs_entry(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("decomplexify respects sums and commutators") {
  auto gen = rng(102);
  for (std::size_t dim : {1u, 2u, 3u}) {
    ComplexMatrix m = random_matrix(gen, dim), n = random_matrix(gen, dim);
    CHECK(max_abs_entry(decomplexify(m + n) - (decomplexify(m) + decomplexify(n))) <= 1e-12);
    RealMatrix lhs = decomplexify(m * n - n * m);
    RealMatrix rhs = decomplexify(m) * decomplexify(n) - decomplexify(n) * decomplexify(m);
    CHECK(max_abs_entry(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("vector decomplexification interleaves and commutes with the matrix map") {
  RVector d = decomplexify(CVector{{1.0, 2.0}, {3.0, 0.0}});
  CHECK(d == RVector{1.0, 2.0, 3.0, 0.0});
  CHECK(decomplexify(CVector{{0, 0}, {0, 0}}) == RVector{0, 0, 0, 0});

  auto gen = rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix k = random_matrix(gen, 3);
    CVector z(3);
    for (auto& c : z) c = random_complex(gen);
    RVector lhs = decomplexify(k.apply(z));
    RVector rhs = decomplexify(k).apply(decomplexify(z));
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
  }

  // linearity under real coefficients
  CVector x(3), y(3);
  for (auto& c : x) c = random_complex(gen);
  for (auto& c : y) c = random_complex(gen);
  double a = 0.7, b = -1.3;
  CVector combo(3);
  for (std::size_t i = 0; i < 3; ++i) combo[i] = a * x[i] + b * y[i];
  RVector lhs = decomplexify(combo);
  RVector rx = decomplexify(x), ry = decomplexify(y);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    CHECK(lhs[i] == doctest::Approx(a * rx[i] + b * ry[i]).epsilon(1e-14));
}

TEST_CASE("eigendecompose diagonal matrix keeps unit vectors") {
  EigenDecomposition eig = eigendecompose(ComplexMatrix(2, {1.0, 0.0, 0.0, 2.0}));
  CHECK(eig.values[0] == Complex(2.0));
  CHECK(eig.values[1] == Complex(1.0));
  CHECK(std::abs(eig.vectors(1, 0)) == 1.0);  // eigenvalue 2 sits at entry (1,1)
  CHECK(std::abs(eig.vectors(0, 0)) == 0.0);
  CHECK(std::abs(eig.vectors(0, 1)) == 1.0);
  CHECK_FALSE(eig.degenerate);
}

TEST_CASE("eigendecompose rotation generator") {
  EigenDecomposition eig = eigendecompose(ComplexMatrix(2, {0.0, 1.0, -1.0, 0.0}));
  CHECK(std::abs(eig.values[0] - Complex(0, 1)) <= 1e-14);
  CHECK(std::abs(eig.values[1] - Complex(0, -1)) <= 1e-14);
}

TEST_CASE("eigendecompose recovers the two-state eigenvalues") {
  // closed-form quadratic oracle on trace/determinant
  auto gen = rng(104);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix m = random_matrix(gen, 2);
    Complex tr = m(0, 0) + m(1, 1);
    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex expect_hi = (tr + disc) / 2.0, expect_lo = (tr - disc) / 2.0;
    EigenDecomposition eig = eigendecompose(m);
    double err = std::min(
        std::abs(eig.values[0] - expect_hi) + std::abs(eig.values[1] - expect_lo),
        std::abs(eig.values[0] - expect_lo) + std::abs(eig.values[1] - expect_hi));
    CHECK(err <= tol::eigen * m.norm());
    // residual of each eigenpair
    for (std::size_t j = 0; j < 2; ++j) {
      CVector v = {eig.vectors(0, j), eig.vectors(1, j)};
      CVector mv = m.apply(v);
      double resid = std::abs(mv[0] - eig.values[j] * v[0]) +
                     std::abs(mv[1] - eig.values[j] * v[1]);
      CHECK(resid <= tol::eigen * m.norm());
      CHECK(hnorm(v) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("eigendecompose handles dims above two") {
  auto gen = rng(105);
  ComplexMatrix m = random_matrix(gen, 4);
  EigenDecomposition eig = eigendecompose(m);
  for (std::size_t j = 0; j < 4; ++j) {
    CVector v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i] = eig.vectors(i, j);
    CVector mv = m.apply(v);
    double resid = 0;
    for (std::size_t i = 0; i < 4; ++i) resid += std::abs(mv[i] - eig.values[j] * v[i]);
    CHECK(resid <= tol::eigen * m.norm());
  }
  CHECK(std::is_sorted(eig.values.begin(), eig.values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() >= b.imag();
  }));
}

TEST_CASE("defective matrix is rejected") {
  // nontrivial Jordan block
  ComplexMatrix jordan(2, {1.0, 1.0, 0.0, 1.0});
  CHECK_THROWS_AS(eigendecompose(jordan), SingularDecomposition);
}

TEST_CASE("spectrum doubling under decomplexification") {
  auto gen = rng(106);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix k = random_matrix(gen, 2);
    EigenDecomposition base = eigendecompose(k);
    EigenDecomposition doubled = eigendecompose(decomplexify(k));
    std::vector<Complex> expect;
    for (Complex l : base.values) {
      expect.push_back(l);
      expect.push_back(std::conj(l));
    }
    // multiset match by greedy nearest pairing
    double worst = 0;
    std::vector<bool> used(4, false);
    for (Complex l : expect) {
      double best = 1e300;
      std::size_t pick = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (used[j]) continue;
        if (std::abs(doubled.values[j] - l) < best) {
          best = std::abs(doubled.values[j] - l);
          pick = j;
        }
      }
      used[pick] = true;
      worst = std::max(worst, best);
    }
    CHECK(worst <= tol::eigen * std::max(1.0, k.norm()));
  }
}

TEST_CASE("decomplexified eigenvectors realify the Jordan form") {
  // nu(Q)^-1 nu(K) nu(Q) equals the block-diagonal of nu(lambda_j): the
  // realified Jordan form is the Jordan form of the realification.
  auto gen = rng(108);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix k = random_matrix(gen, 2);
    EigenDecomposition eig = eigendecompose(k);
    if (eig.degenerate) continue;
    RealMatrix nq = decomplexify(eig.vectors);
    RealMatrix jordan = nq.inverse() * decomplexify(k) * nq;
    RealMatrix expect(4);
    for (std::size_t j = 0; j < 2; ++j) {
      expect(2 * j, 2 * j) = eig.values[j].real();
      expect(2 * j, 2 * j + 1) = -eig.values[j].imag();
      expect(2 * j + 1, 2 * j) = eig.values[j].imag();
      expect(2 * j + 1, 2 * j + 1) = eig.values[j].real();
    }
    CHECK((jordan - expect).norm() <= 1e-10 * std::max(1.0, k.norm()));
  }
}

TEST_CASE("conjugate pair unitary intertwines exactly") {
  CHECK(conjugate_pair_residual(Complex(1.0)) <= 1e-15);
  CHECK(conjugate_pair_residual(Complex(0.0, 1.0)) <= 1e-15);
  auto gen = rng(107);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(conjugate_pair_residual(random_complex(gen, 3.0)) < 1e-14);
}

TEST_CASE("hermitian check and flag") {
  ComplexMatrix h(2, {Complex(1.0), Complex(2.0, 3.0), Complex(2.0, -3.0), Complex(4.0)});
  CHECK(h.is_hermitian());
  h(0, 1) = Complex(2.0, 3.0 + 1e-6);
  CHECK_FALSE(h.is_hermitian());
}

TEST_CASE("inverse of singular matrix throws") {
  ComplexMatrix singular(2, {1.0, 2.0, 2.0, 4.0});
  CHECK_THROWS_AS(singular.inverse(), SingularDecomposition);
}
