#pragma once

#include <array>
#include <iosfwd>

#include "kaonet/equivalence.hpp"
#include "kaonet/kaon.hpp"
#include "kaonet/linalg.hpp"

namespace kaonet {

// Two parallel tanks coupled through a three-element interaction two-port
// plus an optional gyrator.  The admittance form couples port voltages with
// a conductance/inductance interaction; the impedance form is its dual
// (current-coupled, resistance/capacitance interaction) and shares the same
// numeric fields.
enum class NetworkKind { admittance, impedance };

struct CircuitParameters {
  double c1 = 1.0, c2 = 1.0;  // tank capacitances (admittance kind)
  double l1 = 1.0, l2 = 1.0;  // tank inductances
  double ga = 0.0, gb = 0.0, gc = 0.0;  // interaction conductances
  // Interaction inductances stored as reciprocals so that an open coupling
  // is an exact zero instead of an infinity.
  double inv_la = 0.0, inv_lb = 0.0, inv_lc = 0.0;
  double gyrator = 0.0;  // gyrator conductance g >= 0
  NetworkKind kind = NetworkKind::admittance;

  double la() const;  // infinity when open
  double lb() const;
  double lc() const;
  double resonance1() const;  // 1/sqrt(l1 c1)
  double resonance2() const;
};

// CPT mode: equal tank resonance frequencies (c1 l1 == c2 l2).
bool cpt_mode(const CircuitParameters& c, double rel_tol = tol::equality);

// Symmetric mode: CPT plus ga == gb, la == lb, c1 == c2 and c_j == l_j
// numerically (the last makes the dual network exist).
bool symmetric_mode(const CircuitParameters& c, double rel_tol = tol::equality);

enum class CircuitMode { any, cpt, symmetric };

struct AdmittanceModel {
  RealMatrix damping;          // D * G-interaction, 1/time
  RealMatrix stiffness_shift;  // D * (1/L)-interaction, 1/time^2
  RealMatrix gyrator_damping;  // D * [[0, g], [-g, 0]], antisymmetric in symmetric mode
  RealMatrix port_scaling;     // D = diag(1/C1, 1/C2)
  double resonance = 0.0;      // tank 1 frequency; equals tank 2 in CPT mode
  double resonance2 = 0.0;

  RealMatrix resonance_squared() const;  // diag(omega_1^2, omega_2^2)
};

// Builds the modal matrices; throws ConstraintViolation when `required`
// names a mode the circuit does not satisfy.
AdmittanceModel admittance_model(const CircuitParameters& c,
                                 CircuitMode required = CircuitMode::any);

// v'' + damping v' + (resonance^2 + stiffness_shift) v = 0 as a
// ClassicalSystem (reciprocal part only).
ClassicalSystem classical_system(const AdmittanceModel& model);

// Companion of the full non-reciprocal system: the reciprocal companion
// plus the gyrator block in the velocity-velocity corner.
RealMatrix add_gyrator(const ClassicalSystem& sys, const AdmittanceModel& model);

struct SynthesisResult {
  CircuitParameters circuit;
  Complex epsilon_attained;       // realized (calibrated) epsilon
  double epsilon_phase_residual;  // |wrapped arg difference| vs target
};

// Synthesizes the symmetric-mode circuit equivalent to the kaon system.
// Free gauge choices omega_o and capacitance are the caller's.  Element
// values come from exact eigenvalue identification (modal damping 2*gamma_j
// and modal stiffness |mu_j|^2), and the reciprocal part is compensated for
// the quadratic spectral shift of the gyrator so the synthesized companion
// is exactly similar to the quantum generator.  One real conductance cannot
// match a complex epsilon: |epsilon| is matched and the phase residual
// reported.  Throws InfeasibleSpectrum.
SynthesisResult synthesize_from_kaon(const KaonParameters& p, double omega_o = 1.0,
                                     double capacitance = 1.0);

struct NetworkAnalysis {
  KaonParameters kaon;       // masses/widths from modal inversion, calibrated epsilon
  Complex epsilon_quotient;  // raw (y21 - y12)/sqrt(y12 y21) at s = -i omega_o
  std::array<Complex, 2> first_order_eigenvalues;  // -A_j/2 - i sqrt(B_j), long then short
  std::array<Complex, 2> exact_eigenvalues;        // third-quadrant eigenvalues of the full companion
  std::array<double, 2> eigenvalue_residuals;      // |first order - exact| / |exact|
};

// Inverse of the synthesis map.  Throws OverdampedMode when a mode fails
// 4 B_j > A_j^2.
NetworkAnalysis analyze_network(const CircuitParameters& c);

// The raw admittance-quotient epsilon is the circuit analogue of the
// first-order quantum formula and overstates the exact mixing parameter by
// this factor (shared with epsilon_approx).
Complex calibrated_epsilon(Complex quotient);

// v <-> i, C <-> L, R <-> G.  Requires symmetric mode; an involution; the
// dual network obeys the same second-order equation.
CircuitParameters dualize(const CircuitParameters& c);

// Key/value circuit files with fields c1 c2 l1 l2 ga gb gc la lb lc g.
CircuitParameters read_circuit(std::istream& in);
void write_circuit(std::ostream& out, const CircuitParameters& c);

}  // namespace kaonet
