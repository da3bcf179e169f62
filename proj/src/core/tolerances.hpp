#pragma once

// Numerical tolerances used across the library. Construction-time checks are
// tightest; cross-route consistency checks leave headroom for the O(n^6)
// contractions they compare.
namespace nqobc::tol {

// Curvature-tensor symmetry residuals accepted at construction/load time.
inline constexpr double symmetry = 1e-12;

// ||U^H U - I||_max accepted for a frame matrix.
inline constexpr double unitarity = 1e-10;

// Pointwise algebraic identities (frame-rotation identities).
inline constexpr double identity = 1e-9;

// Frame-invariance and dual-route consistency checks.
inline constexpr double invariance = 1e-10;

// Default certification threshold: form values below -violation_default
// count as NQOBC violations.
inline constexpr double violation_default = 1e-8;

// Projected-eigenvalue gap below which the descent direction is ambiguous
// and the optimizer falls back to random tangent probes.
inline constexpr double eigen_gap = 1e-8;

}  // namespace nqobc::tol
