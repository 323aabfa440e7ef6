#pragma once

namespace kaonet::tol {

// Relative tolerance for Hermiticity / equal-diagonal / mode-constraint checks.
inline constexpr double equality = 1e-10;

// Relative eigenpair residual ||M v - lambda v|| <= eigen * ||M||.
inline constexpr double eigen = 1e-9;

// Eigenvalue separation below which a spectrum counts as degenerate,
// relative to ||M||.
inline constexpr double degeneracy = 1e-8;

// Eigenvector-matrix condition number beyond which a decomposition is
// rejected as effectively defective.
inline constexpr double condition_limit = 1e10;

// Relative characteristic-polynomial coefficient match required for two
// systems to count as equivalent.
inline constexpr double poly_match = 1e-8;

}  // namespace kaonet::tol
