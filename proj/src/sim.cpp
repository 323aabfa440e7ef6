#include "kaonet/sim.hpp"

#include <cmath>
#include <ostream>

#include "kaonet/keyvalue.hpp"

namespace kaonet {

namespace {

template <typename Vec, typename Apply>
Vec rk4_step(const Apply& apply, const Vec& x, double dt) {
  Vec k1 = apply(x);
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + 0.5 * dt * k1[i];
  Vec k2 = apply(probe);
  for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + 0.5 * dt * k2[i];
  Vec k3 = apply(probe);
  for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + dt * k3[i];
  Vec k4 = apply(probe);
  Vec next = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return next;
}

void check_step(double dt, double norm) {
  if (!(dt > 0)) throw StepTooLarge("dt must be positive");
  if (dt * norm >= 0.5)
    throw StepTooLarge("dt * ||system|| = " + format_number(dt * norm) +
                       " exceeds the 0.5 stability margin");
}

double norm2(const RVector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Trajectory integrate_linear(const RealMatrix& system, const RVector& initial,
                            double dt, std::size_t steps) {
  if (initial.size() != system.dim())
    throw DimensionMismatch("initial state length != system dimension");
  check_step(dt, system.norm());
  Trajectory out;
  out.kind = TrajectoryKind::classical;
  out.dt = dt;
  out.times.reserve(steps + 1);
  out.states.reserve(steps + 1);
  RVector x = initial;
  out.times.push_back(0.0);
  out.states.push_back(x);
  auto apply = [&](const RVector& v) { return system.apply(v); };
  for (std::size_t k = 1; k <= steps; ++k) {
    x = rk4_step(apply, x, dt);
    out.times.push_back(static_cast<double>(k) * dt);
    out.states.push_back(x);
  }
  return out;
}

Trajectory integrate_quantum(const ComplexMatrix& generator, const CVector& initial,
                             double dt, std::size_t steps) {
  if (initial.size() != generator.dim())
    throw DimensionMismatch("initial state length != generator dimension");
  check_step(dt, generator.norm());
  Trajectory out;
  out.kind = TrajectoryKind::quantum;
  out.dt = dt;
  out.times.reserve(steps + 1);
  CVector psi = initial;
  out.times.push_back(0.0);
  out.amplitudes.push_back(psi);
  out.states.push_back(decomplexify(psi));
  auto apply = [&](const CVector& v) { return generator.apply(v); };
  for (std::size_t k = 1; k <= steps; ++k) {
    psi = rk4_step(apply, psi, dt);
    out.times.push_back(static_cast<double>(k) * dt);
    out.amplitudes.push_back(psi);
    out.states.push_back(decomplexify(psi));
  }
  return out;
}

CVector exact_state(const ComplexMatrix& generator, const CVector& initial, double t) {
  EigenDecomposition eig = eigendecompose(generator);
  ComplexMatrix inv = eig.vectors.inverse();
  CVector coeff = inv.apply(initial);
  for (std::size_t j = 0; j < coeff.size(); ++j)
    coeff[j] *= std::exp(eig.values[j] * t);
  return eig.vectors.apply(coeff);
}

RVector exact_state(const RealMatrix& system, const RVector& initial, double t) {
  CVector z(initial.begin(), initial.end());
  CVector w = exact_state(complexify(system), z, t);
  RVector out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i].real();
  return out;
}

double verify_diagram(const ComplexMatrix& generator, const RealMatrix& classical,
                      const EquivalenceMap& map, const CVector& psi0, double dt,
                      std::size_t steps) {
  RVector x0 = map.similarity.apply(decomplexify(psi0));
  Trajectory classical_run = integrate_linear(classical, x0, dt, steps);
  Trajectory quantum_run = integrate_quantum(generator, psi0, dt, steps);

  double peak_state = 0.0, peak_gap = 0.0;
  for (std::size_t k = 0; k < classical_run.states.size(); ++k) {
    const RVector& x = classical_run.states[k];
    RVector mapped = map.similarity.apply(quantum_run.states[k]);
    double gap = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      gap += (x[i] - mapped[i]) * (x[i] - mapped[i]);
    peak_gap = std::max(peak_gap, std::sqrt(gap));
    peak_state = std::max(peak_state, norm2(x));
  }
  return peak_gap / std::max(peak_state, 1e-300);
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  out << "t";
  if (trajectory.kind == TrajectoryKind::classical) {
    std::size_t n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    for (std::size_t i = 0; i < n; ++i) out << "\tx" << (i + 1);
  } else {
    std::size_t n =
        trajectory.amplitudes.empty() ? 0 : trajectory.amplitudes.front().size();
    for (std::size_t i = 0; i < n; ++i)
      out << "\tre" << (i + 1) << "\tim" << (i + 1);
  }
  out << "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format_number(trajectory.times[k]);
    for (double v : trajectory.states[k]) out << "\t" << format_number(v);
    out << "\n";
  }
}

}  // namespace kaonet
