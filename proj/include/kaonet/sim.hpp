#pragma once

#include <iosfwd>

#include "kaonet/equivalence.hpp"
#include "kaonet/linalg.hpp"

namespace kaonet {

enum class TrajectoryKind { classical, quantum };

struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::classical;
  double dt = 0.0;
  std::vector<double> times;         // uniform grid starting at 0
  std::vector<RVector> states;       // classical state, or decomplexified psi
  std::vector<CVector> amplitudes;   // quantum runs only
};

// Classic fixed-step fourth-order integration of x' = M x.  Throws
// StepTooLarge when dt * ||M|| >= 0.5.
Trajectory integrate_linear(const RealMatrix& system, const RVector& initial,
                            double dt, std::size_t steps);

// Same scheme on the complex system psi' = K psi; the decomplexified rows
// are filled alongside the amplitudes.
Trajectory integrate_quantum(const ComplexMatrix& generator, const CVector& initial,
                             double dt, std::size_t steps);

// Exact-exponential reference via eigendecomposition; the independent
// cross-check for the integrator, not the primary path.
RVector exact_state(const RealMatrix& system, const RVector& initial, double t);
CVector exact_state(const ComplexMatrix& generator, const CVector& initial, double t);

// Integrates both sides of the equivalence from matched initial data
// X(0) = S D(psi0) and returns max_t ||X(t) - S D(psi(t))|| / max_t ||X(t)||.
double verify_diagram(const ComplexMatrix& generator, const RealMatrix& classical,
                      const EquivalenceMap& map, const CVector& psi0, double dt,
                      std::size_t steps);

// Tab-separated export, one row per step, header row naming the columns.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

}  // namespace kaonet
