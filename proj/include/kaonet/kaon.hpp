#pragma once

#include <utility>

#include "kaonet/linalg.hpp"

namespace kaonet {

// Natural units throughout: masses and widths are angular frequencies, and
// widths enter the complex eigenvalues directly, mu = m - i*gamma.
struct KaonParameters {
  Complex mu_short;  // m_S - i gamma_S
  Complex mu_long;   // m_L - i gamma_L
  Complex epsilon;   // CP-violation parameter, |epsilon| < 1

  double mass_short() const { return mu_short.real(); }
  double mass_long() const { return mu_long.real(); }
  double width_short() const { return -mu_short.imag(); }
  double width_long() const { return -mu_long.imag(); }

  // e^{i alpha} = (1 - epsilon) / (1 + epsilon)
  Complex alpha() const;

  // gamma_S > gamma_L > 0, positive masses, |epsilon| < 1
  bool physical() const;
};

KaonParameters make_kaon(double mass_short, double width_short, double mass_long,
                         double width_long, Complex epsilon);

struct EffectiveHamiltonian {
  ComplexMatrix matrix;        // H
  ComplexMatrix mass_matrix;   // M  = (H + H+)/2, Hermitian
  ComplexMatrix width_matrix;  // G  = i (H - H+)/2, Hermitian; H = M - iG
  ComplexMatrix generator;     // K  = -iH, the Schroedinger generator
  bool cpt_symmetric = false;  // H11 == H22 within tolerance
};

// Split an arbitrary 2x2 H into the parts above.
EffectiveHamiltonian effective_hamiltonian(const ComplexMatrix& h);

// H11 = H22 = (muS+muL)/2, H12 = (muS-muL)/2 e^{-i alpha},
// H21 = (muS-muL)/2 e^{+i alpha}; eigenvalues are exactly {muS, muL} with
// eigenvectors the columns of mixing_matrix(epsilon).
EffectiveHamiltonian hamiltonian_from_params(const KaonParameters& p);

// epsilon = (sqrt(H12) - sqrt(H21)) / (sqrt(H12) + sqrt(H21)), principal
// branches.  Throws ZeroOffDiagonal / CptViolation.
Complex epsilon_from_hamiltonian(const EffectiveHamiltonian& h);

// First-order expression (H12 - H21)/sqrt(H12 H21).  This equals
// epsilon_approx_calibration times the exact epsilon to first order.
Complex epsilon_approx(const EffectiveHamiltonian& h);
inline constexpr double epsilon_approx_calibration = 4.0;

// Q(eps) = [[1+eps, 1+eps], [1-eps, -(1-eps)]] / sqrt(2 (1+|eps|^2)),
// columns are the short and long eigenstates; unitary iff eps = 0.
ComplexMatrix mixing_matrix(Complex epsilon);

// |<S, L>| = |2 Re(eps)| / (1 + |eps|^2): the quantum CP test value.
double cp_test_quantum(Complex epsilon);

// H = H0 + H1 with H0 the CP-invariant symmetric part (epsilon = 0 form)
// and H1 = eps (mu_S - mu_L) [[0, 1], [-1, 0]] antisymmetric; the sum
// reproduces H to O(eps^2).  Throws CptViolation.
std::pair<ComplexMatrix, ComplexMatrix> split_cp_parts(const EffectiveHamiltonian& h);

}  // namespace kaonet
