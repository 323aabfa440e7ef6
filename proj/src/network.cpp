#include "kaonet/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "kaonet/keyvalue.hpp"

namespace kaonet {

namespace {

double reciprocal_or_inf(double inv) {
  return inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Monic quartic roots: companion eigenvalues polished by two Newton steps.
std::array<Complex, 4> quartic_roots(double c0, double c1, double c2, double c3) {
  RealMatrix comp(4);
  comp(0, 3) = -c0;
  comp(1, 3) = -c1;
  comp(2, 3) = -c2;
  comp(3, 3) = -c3;
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  EigenDecomposition eig = eigendecompose(complexify(comp));
  std::array<Complex, 4> roots;
  for (int k = 0; k < 4; ++k) {
    Complex z = eig.values[static_cast<std::size_t>(k)];
    for (int it = 0; it < 2; ++it) {
      Complex p = (((z + c3) * z + c2) * z + c1) * z + c0;
      Complex dp = ((4.0 * z + 3.0 * c3) * z + 2.0 * c2) * z + c1;
      if (std::abs(dp) == 0.0) break;
      z -= p / dp;
    }
    roots[static_cast<std::size_t>(k)] = z;
  }
  return roots;
}

struct ModalValues {
  double damping_long, damping_short;      // A_L <= A_S
  double stiffness_long, stiffness_short;  // paired B values
};

// Modal eigenvalues of the commuting pair (damping, stiffness), computed in
// the symmetrized coordinates where both are symmetric.
ModalValues modal_values(const AdmittanceModel& model) {
  double d1 = model.port_scaling(0, 0), d2 = model.port_scaling(1, 1);
  double s1 = std::sqrt(d1), s2 = std::sqrt(d2);
  // Dsqrt^-1 (D M) Dsqrt = Dsqrt M Dsqrt is symmetric for symmetric M.
  auto symmetrize = [&](const RealMatrix& dm) {
    RealMatrix out(2);
    out(0, 0) = dm(0, 0);
    out(1, 1) = dm(1, 1);
    out(0, 1) = dm(0, 1) * s2 / s1;
    out(1, 0) = dm(1, 0) * s1 / s2;
    return out;
  };
  RealMatrix sa = symmetrize(model.damping);
  RealMatrix sb = symmetrize(model.resonance_squared() + model.stiffness_shift);

  auto eig_sym = [](const RealMatrix& m, std::array<double, 2>& vals,
                    std::array<std::array<double, 2>, 2>& vecs) {
    double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), d = m(1, 1);
    double tr = a + d, gap = std::sqrt((a - d) * (a - d) + 4 * b * b);
    vals = {0.5 * (tr - gap), 0.5 * (tr + gap)};
    for (int k = 0; k < 2; ++k) {
      double lam = vals[static_cast<std::size_t>(k)];
      std::array<double, 2> v;
      if (std::abs(b) > 1e-300 * std::max(1.0, std::abs(lam)))
        v = {b, lam - a};
      else
        v = (std::abs(a - lam) <= std::abs(d - lam)) ? std::array<double, 2>{1, 0}
                                                     : std::array<double, 2>{0, 1};
      double n = std::hypot(v[0], v[1]);
      vecs[static_cast<std::size_t>(k)] = {v[0] / n, v[1] / n};
    }
  };

  // Use whichever matrix separates its modes better to define the basis.
  std::array<double, 2> va, vb;
  std::array<std::array<double, 2>, 2> xa, xb;
  eig_sym(sa, va, xa);
  eig_sym(sb, vb, xb);
  double ga = std::abs(va[1] - va[0]) / std::max(1e-300, std::abs(va[0]) + std::abs(va[1]));
  double gb = std::abs(vb[1] - vb[0]) / std::max(1e-300, std::abs(vb[0]) + std::abs(vb[1]));
  const auto& basis = (ga >= gb) ? xa : xb;

  auto rayleigh = [](const RealMatrix& m, const std::array<double, 2>& v) {
    return v[0] * (m(0, 0) * v[0] + m(0, 1) * v[1]) +
           v[1] * (m(1, 0) * v[0] + m(1, 1) * v[1]);
  };
  double a0 = rayleigh(sa, basis[0]), a1 = rayleigh(sa, basis[1]);
  double b0 = rayleigh(sb, basis[0]), b1 = rayleigh(sb, basis[1]);
  if (a0 <= a1) return {a0, a1, b0, b1};
  return {a1, a0, b1, b0};
}

}  // namespace

double CircuitParameters::la() const { return reciprocal_or_inf(inv_la); }
double CircuitParameters::lb() const { return reciprocal_or_inf(inv_lb); }
double CircuitParameters::lc() const { return reciprocal_or_inf(inv_lc); }
double CircuitParameters::resonance1() const { return 1.0 / std::sqrt(l1 * c1); }
double CircuitParameters::resonance2() const { return 1.0 / std::sqrt(l2 * c2); }

bool cpt_mode(const CircuitParameters& c, double rel_tol) {
  return close_rel(c.c1 * c.l1, c.c2 * c.l2, rel_tol);
}

bool symmetric_mode(const CircuitParameters& c, double rel_tol) {
  return cpt_mode(c, rel_tol) && close_rel(c.ga, c.gb, rel_tol) &&
         close_rel(c.inv_la, c.inv_lb, rel_tol) && close_rel(c.c1, c.c2, rel_tol) &&
         close_rel(c.c1, c.l1, rel_tol) && close_rel(c.c2, c.l2, rel_tol);
}

RealMatrix AdmittanceModel::resonance_squared() const {
  RealMatrix m(2);
  m(0, 0) = resonance * resonance;
  m(1, 1) = resonance2 * resonance2;
  return m;
}

AdmittanceModel admittance_model(const CircuitParameters& c, CircuitMode required) {
  if (c.c1 <= 0 || c.c2 <= 0 || c.l1 <= 0 || c.l2 <= 0)
    throw ConstraintViolation("tank element values must be positive");
  if (c.ga < 0 || c.gb < 0 || c.gc < 0 || c.inv_la < 0 || c.inv_lb < 0 ||
      c.inv_lc < 0 || c.gyrator < 0)
    throw ConstraintViolation("negative element value");
  if (required == CircuitMode::cpt && !cpt_mode(c))
    throw ConstraintViolation("circuit violates the equal-resonance (CPT) constraint");
  if (required == CircuitMode::symmetric && !symmetric_mode(c))
    throw ConstraintViolation("circuit violates the symmetric-mode constraints");

  // In the impedance (dual) representation the tank inductances take the
  // storage role of the capacitances; the matrices come out identical.
  double e1 = c.kind == NetworkKind::admittance ? c.c1 : c.l1;
  double e2 = c.kind == NetworkKind::admittance ? c.c2 : c.l2;

  AdmittanceModel model;
  model.port_scaling = RealMatrix(2, {1.0 / e1, 0.0, 0.0, 1.0 / e2});
  RealMatrix interaction_g(2, {c.ga + c.gc, -c.gc, -c.gc, c.gb + c.gc});
  RealMatrix interaction_linv(2, {c.inv_la + c.inv_lc, -c.inv_lc, -c.inv_lc,
                                  c.inv_lb + c.inv_lc});
  RealMatrix gyr(2, {0.0, c.gyrator, -c.gyrator, 0.0});
  model.damping = model.port_scaling * interaction_g;
  model.stiffness_shift = model.port_scaling * interaction_linv;
  model.gyrator_damping = model.port_scaling * gyr;
  model.resonance = 1.0 / std::sqrt(c.l1 * c.c1);
  model.resonance2 = 1.0 / std::sqrt(c.l2 * c.c2);
  return model;
}

ClassicalSystem classical_system(const AdmittanceModel& model) {
  return companion_system(model.damping, model.resonance_squared() + model.stiffness_shift);
}

RealMatrix add_gyrator(const ClassicalSystem& sys, const AdmittanceModel& model) {
  std::size_t m = sys.modes();
  RealMatrix out = sys.companion;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out(m + i, m + j) -= model.gyrator_damping(i, j);
  return out;
}

Complex calibrated_epsilon(Complex quotient) {
  return quotient / epsilon_approx_calibration;
}

SynthesisResult synthesize_from_kaon(const KaonParameters& p, double omega_o,
                                     double capacitance) {
  if (omega_o <= 0 || capacitance <= 0)
    throw InfeasibleSpectrum("gauge choices must be positive");
  if (!(p.width_short() > p.width_long()) || !(p.width_long() > 0))
    throw InfeasibleSpectrum("widths must satisfy gamma_S > gamma_L > 0");
  if (p.mass_short() <= 0 || p.mass_long() <= 0)
    throw InfeasibleSpectrum("masses must be positive");
  if (std::abs(p.epsilon) >= 1.0) throw InfeasibleSpectrum("|epsilon| must be < 1");

  const double cap = capacitance;
  // Exact identification: modal damping -2 Re(lambda), modal stiffness
  // |lambda|^2, with lambda = -i mu the generator eigenvalues.
  double damping_long = 2.0 * p.width_long();
  double damping_short = 2.0 * p.width_short();
  double stiff_long = std::norm(p.mu_long);
  double stiff_short = std::norm(p.mu_short);

  double tank_stiff = omega_o * omega_o;
  if (stiff_long - tank_stiff < -1e-12 * stiff_long)
    throw InfeasibleSpectrum("omega_o exceeds the long-mode frequency |mu_L|");
  if (stiff_short - stiff_long < -1e-12 * stiff_short)
    throw InfeasibleSpectrum("|mu_S| below |mu_L|; coupling inductance would be negative");

  double coupling_g = cap * (damping_short - damping_long) / 2.0;
  double coupling_linv = cap * std::max(0.0, stiff_short - stiff_long) / 2.0;

  double g = 0.0;
  if (std::abs(p.epsilon) > 0 && (coupling_g > 0 || coupling_linv > 0)) {
    Complex denom(coupling_g, coupling_linv / omega_o);
    g = epsilon_approx_calibration / 2.0 * std::abs(p.epsilon) * std::abs(denom);
  }

  // The gyrator shifts the characteristic polynomial by (g/C)^2 z^2; absorb
  // the shift into the reciprocal part so the full network is exactly
  // equivalent to the quantum generator.
  if (g > 0) {
    double gc2 = (g / cap) * (g / cap);
    double c0 = stiff_long * stiff_short;
    double c1 = damping_long * stiff_short + damping_short * stiff_long;
    double c2 = stiff_long + stiff_short + damping_long * damping_short - gc2;
    double c3 = damping_long + damping_short;
    std::array<Complex, 4> roots = quartic_roots(c0, c1, c2, c3);
    Complex target_long = Complex(0, -1) * p.mu_long;
    Complex target_short = Complex(0, -1) * p.mu_short;
    Complex root_long, root_short;
    double best_long = std::numeric_limits<double>::infinity();
    double best_short = best_long;
    for (Complex z : roots) {
      if (z.imag() >= 0) continue;
      if (std::abs(z - target_long) < best_long) {
        best_long = std::abs(z - target_long);
        root_long = z;
      }
      if (std::abs(z - target_short) < best_short) {
        best_short = std::abs(z - target_short);
        root_short = z;
      }
    }
    if (!std::isfinite(best_long) || !std::isfinite(best_short) ||
        root_long == root_short)
      throw InfeasibleSpectrum("gyrator compensation lost the oscillatory mode pair");
    damping_long = -2.0 * root_long.real();
    damping_short = -2.0 * root_short.real();
    stiff_long = std::norm(root_long);
    stiff_short = std::norm(root_short);
    if (damping_long <= 0 || stiff_long - tank_stiff < -1e-12 * stiff_long ||
        stiff_short < stiff_long || damping_short < damping_long)
      throw InfeasibleSpectrum("gyrator compensation left an unrealizable element");
    coupling_g = cap * (damping_short - damping_long) / 2.0;
    coupling_linv = cap * (stiff_short - stiff_long) / 2.0;
  }

  CircuitParameters circuit;
  circuit.c1 = circuit.c2 = cap;
  circuit.l1 = circuit.l2 = 1.0 / (cap * tank_stiff);
  circuit.ga = circuit.gb = cap * damping_long;
  circuit.gc = coupling_g;
  circuit.inv_la = circuit.inv_lb = cap * std::max(0.0, stiff_long - tank_stiff);
  circuit.inv_lc = coupling_linv;
  circuit.gyrator = g;
  circuit.kind = NetworkKind::admittance;

  SynthesisResult result;
  result.circuit = circuit;
  result.epsilon_attained = 0.0;
  result.epsilon_phase_residual = 0.0;
  if (g > 0) {
    Complex denom(circuit.gc, circuit.inv_lc / omega_o);
    Complex y12 = -denom + g, y21 = -denom - g;
    result.epsilon_attained = calibrated_epsilon((y21 - y12) / std::sqrt(y12 * y21));
    double diff = std::arg(p.epsilon) - std::arg(result.epsilon_attained);
    while (diff > M_PI) diff -= 2 * M_PI;
    while (diff <= -M_PI) diff += 2 * M_PI;
    result.epsilon_phase_residual = std::abs(diff);
  }
  return result;
}

NetworkAnalysis analyze_network(const CircuitParameters& c) {
  AdmittanceModel model = admittance_model(c);
  ClassicalSystem sys = classical_system(model);
  ModalValues modal = modal_values(model);

  if (4.0 * modal.stiffness_long <= modal.damping_long * modal.damping_long ||
      4.0 * modal.stiffness_short <= modal.damping_short * modal.damping_short)
    throw OverdampedMode("a mode fails 4B > A^2; no oscillatory pair");

  NetworkAnalysis out;
  out.first_order_eigenvalues = {
      Complex(-modal.damping_long / 2.0, -std::sqrt(modal.stiffness_long)),
      Complex(-modal.damping_short / 2.0, -std::sqrt(modal.stiffness_short))};

  EigenDecomposition eig = eigendecompose(add_gyrator(sys, model));
  std::vector<Complex> lower;
  for (Complex z : eig.values)
    if (z.imag() < 0) lower.push_back(z);
  if (lower.size() != 2)
    throw OverdampedMode("expected two oscillatory eigenvalue pairs");
  // exclusive assignment of exact eigenvalues to the first-order pair
  Complex fo0 = out.first_order_eigenvalues[0], fo1 = out.first_order_eigenvalues[1];
  if (std::abs(lower[0] - fo0) + std::abs(lower[1] - fo1) >
      std::abs(lower[1] - fo0) + std::abs(lower[0] - fo1))
    std::swap(lower[0], lower[1]);
  for (std::size_t k = 0; k < 2; ++k) {
    out.exact_eigenvalues[k] = lower[k];
    out.eigenvalue_residuals[k] =
        std::abs(out.first_order_eigenvalues[k] - lower[k]) / std::abs(lower[k]);
  }

  // The reported masses and widths come from the exact eigenvalues of the
  // full companion (the generator of the truly equivalent quantum system);
  // the modal read-off above only feeds the first-order comparison.
  Complex eta_long = out.exact_eigenvalues[0], eta_short = out.exact_eigenvalues[1];
  if (-eta_short.real() < -eta_long.real()) std::swap(eta_long, eta_short);
  out.kaon.mu_long = Complex(0, 1) * eta_long;    // mu = i eta
  out.kaon.mu_short = Complex(0, 1) * eta_short;

  out.epsilon_quotient = 0.0;
  out.kaon.epsilon = 0.0;
  if (c.gyrator > 0) {
    Complex denom(c.gc, c.inv_lc / model.resonance);
    Complex y12 = -denom + c.gyrator, y21 = -denom - c.gyrator;
    Complex prod = y12 * y21;
    if (std::abs(prod) == 0.0)
      throw ZeroOffDiagonal("vanishing transfer admittance; epsilon undefined");
    out.epsilon_quotient = (y21 - y12) / std::sqrt(prod);
    out.kaon.epsilon = calibrated_epsilon(out.epsilon_quotient);
  }
  return out;
}

CircuitParameters dualize(const CircuitParameters& c) {
  if (!symmetric_mode(c))
    throw ConstraintViolation("dual network requires the symmetric mode");
  CircuitParameters d = c;
  std::swap(d.c1, d.l1);
  std::swap(d.c2, d.l2);
  d.kind = c.kind == NetworkKind::admittance ? NetworkKind::impedance
                                             : NetworkKind::admittance;
  return d;
}

CircuitParameters read_circuit(std::istream& in) {
  KeyValueDoc doc = parse_key_values(in);
  static const char* fields[] = {"c1", "c2", "l1", "l2", "ga", "gb",
                                 "gc", "la", "lb", "lc", "g"};
  for (const auto& [key, value] : doc.entries()) {
    bool known = false;
    for (const char* f : fields) known = known || key == f;
    if (!known) throw ConfigError("unknown circuit field: " + key);
  }
  CircuitParameters c;
  c.c1 = doc.number("c1");
  c.c2 = doc.number("c2");
  c.l1 = doc.number("l1");
  c.l2 = doc.number("l2");
  c.ga = doc.number("ga");
  c.gb = doc.number("gb");
  c.gc = doc.number("gc");
  auto inv = [&](const char* key) {
    double v = doc.number(key);
    if (v < 0) throw ConfigError(std::string("negative inductance: ") + key);
    return std::isinf(v) ? 0.0 : 1.0 / v;
  };
  c.inv_la = inv("la");
  c.inv_lb = inv("lb");
  c.inv_lc = inv("lc");
  c.gyrator = doc.number("g");
  if (c.c1 <= 0 || c.c2 <= 0 || c.l1 <= 0 || c.l2 <= 0 || !std::isfinite(c.c1) ||
      !std::isfinite(c.c2) || !std::isfinite(c.l1) || !std::isfinite(c.l2))
    throw ConfigError("tank element values must be positive finite");
  if (c.ga < 0 || c.gb < 0 || c.gc < 0 || c.gyrator < 0)
    throw ConfigError("negative conductance");
  return c;
}

void write_circuit(std::ostream& out, const CircuitParameters& c) {
  KeyValueDoc doc;
  doc.set_number("c1", c.c1);
  doc.set_number("c2", c.c2);
  doc.set_number("l1", c.l1);
  doc.set_number("l2", c.l2);
  doc.set_number("ga", c.ga);
  doc.set_number("gb", c.gb);
  doc.set_number("gc", c.gc);
  doc.set_number("la", c.la());
  doc.set_number("lb", c.lb());
  doc.set_number("lc", c.lc());
  doc.set_number("g", c.gyrator);
  out << serialize_key_values(doc);
}

}  // namespace kaonet
