#include "kaonet/kaon.hpp"

#include <cmath>

namespace kaonet {

Complex KaonParameters::alpha() const {
  return Complex(0, -1) * std::log((1.0 - epsilon) / (1.0 + epsilon));
}

bool KaonParameters::physical() const {
  return width_short() > width_long() && width_long() > 0 && mass_short() > 0 &&
         mass_long() > 0 && std::abs(epsilon) < 1.0;
}

KaonParameters make_kaon(double mass_short, double width_short, double mass_long,
                         double width_long, Complex epsilon) {
  return KaonParameters{Complex(mass_short, -width_short),
                        Complex(mass_long, -width_long), epsilon};
}

EffectiveHamiltonian effective_hamiltonian(const ComplexMatrix& h) {
  if (h.dim() != 2) throw DimensionMismatch("effective Hamiltonian must be 2x2");
  EffectiveHamiltonian out;
  out.matrix = h;
  ComplexMatrix hadj = h.adjoint();
  out.mass_matrix = Complex(0.5) * (h + hadj);
  out.width_matrix = Complex(0, 0.5) * (h - hadj);
  out.generator = Complex(0, -1) * h;
  double scale = std::max(h.norm(), 1e-300);
  out.cpt_symmetric = std::abs(h(0, 0) - h(1, 1)) <= tol::equality * scale;
  return out;
}

EffectiveHamiltonian hamiltonian_from_params(const KaonParameters& p) {
  Complex half_sum = (p.mu_short + p.mu_long) / 2.0;
  Complex half_diff = (p.mu_short - p.mu_long) / 2.0;
  Complex exp_minus = (1.0 + p.epsilon) / (1.0 - p.epsilon);  // e^{-i alpha}
  Complex exp_plus = (1.0 - p.epsilon) / (1.0 + p.epsilon);   // e^{+i alpha}
  ComplexMatrix h(2, {half_sum, half_diff * exp_minus, half_diff * exp_plus, half_sum});
  return effective_hamiltonian(h);
}

Complex epsilon_from_hamiltonian(const EffectiveHamiltonian& h) {
  if (!h.cpt_symmetric)
    throw CptViolation("unequal diagonal elements; epsilon formula assumes CPT");
  Complex h12 = h.matrix(0, 1), h21 = h.matrix(1, 0);
  double scale = std::max(h.matrix.norm(), 1e-300);
  if (std::abs(h12) <= 1e-14 * scale || std::abs(h21) <= 1e-14 * scale)
    throw ZeroOffDiagonal("vanishing off-diagonal element");
  Complex r12 = std::sqrt(h12), r21 = std::sqrt(h21);
  return (r12 - r21) / (r12 + r21);
}

Complex epsilon_approx(const EffectiveHamiltonian& h) {
  if (!h.cpt_symmetric)
    throw CptViolation("unequal diagonal elements; epsilon formula assumes CPT");
  Complex h12 = h.matrix(0, 1), h21 = h.matrix(1, 0);
  double scale = std::max(h.matrix.norm(), 1e-300);
  if (std::abs(h12) <= 1e-14 * scale || std::abs(h21) <= 1e-14 * scale)
    throw ZeroOffDiagonal("vanishing off-diagonal element");
  return (h12 - h21) / std::sqrt(h12 * h21);
}

ComplexMatrix mixing_matrix(Complex epsilon) {
  double n = 1.0 / std::sqrt(2.0 * (1.0 + std::norm(epsilon)));
  Complex plus = 1.0 + epsilon, minus = 1.0 - epsilon;
  return ComplexMatrix(2, {n * plus, n * plus, n * minus, -n * minus});
}

double cp_test_quantum(Complex epsilon) {
  ComplexMatrix q = mixing_matrix(epsilon);
  CVector s = {q(0, 0), q(1, 0)};
  CVector l = {q(0, 1), q(1, 1)};
  return std::abs(hdot(s, l));
}

std::pair<ComplexMatrix, ComplexMatrix> split_cp_parts(const EffectiveHamiltonian& h) {
  if (!h.cpt_symmetric)
    throw CptViolation("unequal diagonal elements; CP split assumes CPT");
  Complex diag = h.matrix(0, 0);
  Complex prod = h.matrix(0, 1) * h.matrix(1, 0);  // ((muS - muL)/2)^2
  Complex half_diff = std::sqrt(prod);
  // label so that the larger-width eigenvalue is "short"
  Complex mu_a = diag + half_diff, mu_b = diag - half_diff;
  if (-mu_a.imag() < -mu_b.imag()) half_diff = -half_diff;

  ComplexMatrix h0(2, {diag, half_diff, half_diff, diag});
  Complex eps = 0.0;
  double scale = std::max(h.matrix.norm(), 1e-300);
  if (std::abs(half_diff) > 1e-14 * scale) eps = epsilon_from_hamiltonian(h);
  Complex coupling = eps * 2.0 * half_diff;  // eps (muS - muL)
  ComplexMatrix h1(2, {0.0, coupling, -coupling, 0.0});
  return {h0, h1};
}

}  // namespace kaonet
