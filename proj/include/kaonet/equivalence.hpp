#pragma once

#include <utility>
#include <vector>

#include "kaonet/linalg.hpp"

namespace kaonet {

// Second-order system  q'' + A q' + B q = 0  reduced to first order.
struct ClassicalSystem {
  RealMatrix damping;    // A, units 1/time
  RealMatrix stiffness;  // B, units 1/time^2
  RealMatrix companion;  // [[0, 1], [-B, -A]], 2m x 2m

  std::size_t modes() const { return damping.dim(); }
};

ClassicalSystem companion_system(const RealMatrix& damping, const RealMatrix& stiffness);

// A2 q'' + A1 q' + A0 q = 0 normalized by A2^-1 on both lower-order
// coefficients.  Throws SingularLeadingCoefficient when A2 is not
// safely invertible.
ClassicalSystem reduce_second_order(const RealMatrix& a2, const RealMatrix& a1,
                                    const RealMatrix& a0);

// Monic characteristic polynomial, coefficients ascending (c0 ... c_{n-1}, 1).
std::vector<double> char_poly(const RealMatrix& m);
std::vector<double> char_poly_classical(const ClassicalSystem& sys);

// Characteristic polynomial of decomplexify(K): the product of the real
// quadratics z^2 - 2 Re(lambda) z + |lambda|^2 over the spectrum of K.
std::vector<double> char_poly_decomplexified(const ComplexMatrix& k);

struct EquivalenceMap {
  RealMatrix similarity;         // S with |det S| = 1
  RealMatrix classical_basis;    // P: real Jordan basis of the classical matrix
  ComplexMatrix quantum_basis;   // Q: unit eigenvectors of K
  double residual = 0;           // ||C - S nu(K) S^-1|| / ||C||
  double determinant = 0;        // det(S) after normalization: +1 or -1
};

// Builds S = P nu(Q)^-1 taking the classical matrix to nu(K).  The sign of
// det(S) is an invariant of the pair: every real similarity between the two
// matrices has the same determinant sign, so after |det| normalization the
// result is +1 or -1 depending on the spectra.  Throws PolynomialMismatch
// when the characteristic polynomials disagree and SingularDecomposition for
// degenerate or non-diagonalizable input.
EquivalenceMap build_similarity(const ComplexMatrix& generator,
                                const RealMatrix& classical);
EquivalenceMap build_similarity(const ComplexMatrix& generator,
                                const ClassicalSystem& sys);

// A_j = -2 Re(lambda), B_j = |lambda|^2; the quadratic z^2 + A_j z + B_j has
// roots {lambda, conj(lambda)}.  Throws RealEigenvalue for real lambda.
std::pair<double, double> identify_eigen_coefficients(Complex lambda);

}  // namespace kaonet
