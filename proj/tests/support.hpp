#pragma once

#include <complex>
#include <random>

#include "kaonet/equivalence.hpp"
#include "kaonet/kaon.hpp"
#include "kaonet/linalg.hpp"
#include "kaonet/network.hpp"

namespace kaonet::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Complex random_complex(std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  return {nd(gen), nd(gen)};
}

inline ComplexMatrix random_matrix(std::mt19937_64& gen, std::size_t dim,
                                   double scale = 1.0) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = random_complex(gen, scale);
  return m;
}

// Independent reimplementation of the realification map for oracle checks.
inline RealMatrix naive_decomplexify(const ComplexMatrix& m) {
  RealMatrix out(2 * m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out(2 * i + 0, 2 * j + 0) = m(i, j).real();
      out(2 * i + 0, 2 * j + 1) = -m(i, j).imag();
      out(2 * i + 1, 2 * j + 0) = m(i, j).imag();
      out(2 * i + 1, 2 * j + 1) = m(i, j).real();
    }
  return out;
}

inline double max_abs_entry(const RealMatrix& m) {
  double peak = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) peak = std::max(peak, std::abs(m(i, j)));
  return peak;
}

// Random two-state generator with a safely diagonalizable decomplexification:
// eigenvalues well separated, away from the real axis and from each other's
// conjugates.
inline ComplexMatrix random_two_state_generator(std::mt19937_64& gen) {
  for (;;) {
    ComplexMatrix k = random_matrix(gen, 2);
    EigenDecomposition eig = eigendecompose(k);
    double scale = std::max(k.norm(), 1e-300);
    Complex l1 = eig.values[0], l2 = eig.values[1];
    if (std::abs(l1 - l2) < 0.1 * scale) continue;
    if (std::abs(l1.imag()) < 0.05 * scale || std::abs(l2.imag()) < 0.05 * scale) continue;
    if (std::abs(l1 - std::conj(l2)) < 0.1 * scale) continue;
    return k;
  }
}

// Commuting classical system equivalent to the given generator, rotated by a
// random orthogonal basis change so the matrices are not diagonal.
inline ClassicalSystem matched_classical_system(const ComplexMatrix& generator,
                                                std::mt19937_64& gen) {
  EigenDecomposition eig = eigendecompose(generator);
  double theta = uniform(gen, 0.0, 6.28318530717958648);
  RealMatrix v(2, {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)});
  RealMatrix damping(2), stiffness(2);
  for (std::size_t j = 0; j < 2; ++j) {
    auto [a, b] = identify_eigen_coefficients(eig.values[j]);
    damping(j, j) = a;
    stiffness(j, j) = b;
  }
  return companion_system(v * damping * v.transpose(), v * stiffness * v.transpose());
}

// Random symmetric-mode reciprocal circuit (self-dual compatible).
inline CircuitParameters random_symmetric_circuit(std::mt19937_64& gen) {
  CircuitParameters c;
  double cap = uniform(gen, 0.5, 2.0);
  c.c1 = c.c2 = cap;
  c.l1 = c.l2 = cap;  // tank omega = 1/cap
  c.ga = c.gb = cap * uniform(gen, 0.02, 0.2);
  c.gc = cap * uniform(gen, 0.05, 0.4);
  c.inv_la = c.inv_lb = cap * uniform(gen, 0.1, 0.6);
  c.inv_lc = cap * uniform(gen, 0.1, 0.8);
  c.gyrator = 0.0;
  return c;
}

// Kaon parameters in the deep hierarchy regime where the first-order circuit
// correspondence is sharp: widths and mass splitting tiny against the mass.
inline KaonParameters deep_regime_kaon(std::mt19937_64& gen, double epsilon_mag) {
  double mass_long = uniform(gen, 0.8, 1.2);
  double width_short = mass_long * uniform(gen, 4e-7, 1e-6);
  double width_long = width_short / uniform(gen, 300.0, 700.0);
  double dm = mass_long * uniform(gen, 4e-7, 1.5e-6);
  double phase = uniform(gen, 0.0, 6.28318530717958648);
  return make_kaon(mass_long + dm, width_short, mass_long, width_long,
                   epsilon_mag * Complex(std::cos(phase), std::sin(phase)));
}

}  // namespace kaonet::testing
