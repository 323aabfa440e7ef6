#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kaonet/cp_test.hpp"
#include "kaonet/kaon.hpp"
#include "kaonet/network.hpp"
#include "kaonet/sim.hpp"
#include "support.hpp"

using namespace kaonet;
using kaonet::testing::matched_classical_system;
using kaonet::testing::random_two_state_generator;
using kaonet::testing::rng;

TEST_CASE("zero system stays constant") {
  Trajectory t = integrate_linear(RealMatrix(2), {1.0, -2.0}, 0.1, 20);
  CHECK(t.states.back()[0] == 1.0);
  CHECK(t.states.back()[1] == -2.0);
  CHECK(t.times.back() == doctest::Approx(2.0));
}

TEST_CASE("rotation integrates to cosine and sine") {
  RealMatrix rot(2, {0.0, 1.0, -1.0, 0.0});
  Trajectory t = integrate_linear(rot, {1.0, 0.0}, 1e-3, 1000);
  double at = t.times.back();
  CHECK(at == doctest::Approx(1.0));
  CHECK(std::abs(t.states.back()[0] - std::cos(1.0)) <= 1e-8);
  CHECK(std::abs(t.states.back()[1] + std::sin(1.0)) <= 1e-8);
}

TEST_CASE("lossy tank energy decays monotonically") {
  // modal energy (v'^2 + B v^2)/2 cannot grow when the damping is positive
  ClassicalSystem sys = companion_system(RealMatrix(1, {0.3}), RealMatrix(1, {2.0}));
  Trajectory t = integrate_linear(sys.companion, {1.0, 0.0}, 1e-2, 400);
  double prev = 1e300;
  for (const RVector& x : t.states) {
    double energy = 0.5 * (x[1] * x[1] + 2.0 * x[0] * x[0]);
    CHECK(energy <= prev + 1e-10);
    prev = energy;
  }
}

TEST_CASE("step limit is enforced") {
  RealMatrix big(1, {100.0});
  CHECK_THROWS_AS(integrate_linear(big, {1.0}, 0.01, 10), StepTooLarge);
  ComplexMatrix cbig(1, {Complex(0, 100.0)});
  CHECK_THROWS_AS(integrate_quantum(cbig, {Complex(1.0)}, 0.01, 10), StepTooLarge);
}

TEST_CASE("pure phase evolution preserves the norm") {
  ComplexMatrix k(1, {Complex(0.0, -2.0)});
  Trajectory t = integrate_quantum(k, {Complex(1.0)}, 1e-3, 2000);
  for (const CVector& psi : t.amplitudes)
    CHECK(std::abs(hnorm(psi) - 1.0) <= 1e-9);
}

TEST_CASE("decaying mode follows the exponential envelope") {
  double gamma = 0.25, mass = 1.0;
  ComplexMatrix k(1, {Complex(-gamma, -mass)});
  Trajectory t = integrate_quantum(k, {Complex(1.0)}, 1e-3, 3000);
  for (std::size_t n = 0; n < t.times.size(); n += 300)
    CHECK(std::abs(hnorm(t.amplitudes[n]) - std::exp(-gamma * t.times[n])) <= 1e-8);
}

TEST_CASE("norm never grows under a positive width matrix") {
  KaonParameters p = make_kaon(1.025, 0.05, 1.0, 1e-4, 7.07e-4 * Complex(1, 1));
  EffectiveHamiltonian h = hamiltonian_from_params(p);
  Trajectory t = integrate_quantum(h.generator, {Complex(1.0), Complex(0.0)}, 0.02, 2000);
  double prev = 1e300;
  for (const CVector& psi : t.amplitudes) {
    double n = hnorm(psi);
    CHECK(n <= prev + 1e-10);
    prev = n;
  }
}

TEST_CASE("kaon survival shows the two-exponential structure") {
  KaonParameters p = make_kaon(1.025, 0.05, 1.0, 1e-4, 0.0);
  EffectiveHamiltonian h = hamiltonian_from_params(p);
  CVector psi0 = {Complex(1.0), Complex(0.0)};  // pure first flavor state
  Trajectory t = integrate_quantum(h.generator, psi0, 0.01, 10000);

  // eigen-expansion oracle: psi(t) = sum_j c_j e^{lambda_j t} v_j
  for (std::size_t n = 0; n < t.times.size(); n += 1000) {
    CVector expect = exact_state(h.generator, psi0, t.times[n]);
    double gap = 0;
    for (std::size_t i = 0; i < 2; ++i) gap += std::abs(t.amplitudes[n][i] - expect[i]);
    CHECK(gap <= 1e-7);
  }

  // late times are dominated by the slow mode: log-slope approaches gamma_L
  double t1 = 60.0, t2 = 90.0;
  auto survival = [&](double time) {
    CVector psi = exact_state(h.generator, psi0, time);
    return std::norm(psi[0]);
  };
  double slope = -(std::log(survival(t2)) - std::log(survival(t1))) / (t2 - t1);
  CHECK(slope == doctest::Approx(2 * p.width_long()).epsilon(0.05));
}

TEST_CASE("decomplexified integration matches the complex one") {
  auto gen = rng(601);
  ComplexMatrix k = random_two_state_generator(gen);
  CVector psi0 = {Complex(0.8, 0.1), Complex(-0.3, 0.5)};
  Trajectory quantum = integrate_quantum(k, psi0, 1e-3, 500);
  Trajectory real = integrate_linear(decomplexify(k), decomplexify(psi0), 1e-3, 500);
  double worst = 0;
  for (std::size_t n = 0; n < quantum.times.size(); ++n)
    for (std::size_t i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(quantum.states[n][i] - real.states[n][i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("restart reproduces the tail") {
  ClassicalSystem sys = companion_system(RealMatrix(1, {0.2}), RealMatrix(1, {1.5}));
  Trajectory full = integrate_linear(sys.companion, {1.0, 0.0}, 1e-2, 200);
  Trajectory tail = integrate_linear(sys.companion, full.states[100], 1e-2, 100);
  for (std::size_t n = 0; n <= 100; n += 20)
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(std::abs(tail.states[n][i] - full.states[100 + n][i]) <= 1e-12);
}

TEST_CASE("diagram deviation is pure integrator noise for the self pair") {
  ComplexMatrix k(2);
  k(0, 0) = Complex(-0.05, -1.0);
  k(1, 1) = Complex(-0.02, -1.4);
  EquivalenceMap map = build_similarity(k, decomplexify(k));
  double dev = verify_diagram(k, decomplexify(k), map, {Complex(1.0), Complex(0.5, 0.2)},
                              1e-3, 1000);
  CHECK(dev <= 1e-9);
}

TEST_CASE("diagram commutes for random equivalent pairs") {
  auto gen = rng(602);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix k = random_two_state_generator(gen);
    ClassicalSystem sys = matched_classical_system(k, gen);
    EquivalenceMap map = build_similarity(k, sys);
    CVector psi0 = {Complex(1.0), Complex(0.0)};
    double dt = 0.4 / std::max(sys.companion.norm(), k.norm());
    double dev = verify_diagram(k, sys.companion, map, psi0, dt, 400);
    CHECK(dev <= 1e-6);
  }
}

TEST_CASE("kaon-to-circuit trajectory diagram at bench scale") {
  KaonParameters p = make_kaon(1.01, 0.05, 1.0, 1e-4, 7.07e-4 * Complex(1.0, 1.0));
  EffectiveHamiltonian h = hamiltonian_from_params(p);
  SynthesisResult synth = synthesize_from_kaon(p, 0.95, 1.0);
  AdmittanceModel model = admittance_model(synth.circuit);
  RealMatrix chat = add_gyrator(classical_system(model), model);
  EquivalenceMap map = build_similarity(h.generator, chat);
  CHECK(map.residual <= 1e-9);

  double dt = 1e-3 / p.width_short();
  auto steps = static_cast<std::size_t>(std::lround(5.0 / p.width_short() / dt));
  double dev = verify_diagram(h.generator, chat, map, {Complex(1.0), Complex(0.0)},
                              dt, steps);
  CHECK(dev <= 1e-6);
}

TEST_CASE("trajectory export format") {
  ComplexMatrix k(1, {Complex(0.0, -1.0)});
  Trajectory t = integrate_quantum(k, {Complex(1.0)}, 0.25, 2);
  std::ostringstream out;
  write_trajectory(out, t);
  std::istringstream lines(out.str());
  std::string header, row0;
  std::getline(lines, header);
  std::getline(lines, row0);
  CHECK(header == "t\tre1\tim1");
  CHECK(row0.substr(0, 2) == "0\t");

  Trajectory c = integrate_linear(RealMatrix(2), {1.0, 2.0}, 0.5, 1);
  std::ostringstream cout_;
  write_trajectory(cout_, c);
  CHECK(cout_.str().substr(0, 8) == "t\tx1\tx2\n");
}
