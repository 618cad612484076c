#pragma once

// Numerical tolerances shared by every module. Property tests and the
// verification suites read their thresholds from here.

namespace magicbc::tol {

inline constexpr double kNorm = 1e-12;          // pure-state normalization
inline constexpr double kHermitian = 1e-12;     // density matrix hermiticity
inline constexpr double kTrace = 1e-12;         // density matrix trace
inline constexpr double kEigenvalue = 1e-10;    // allowed negative eigenvalue
inline constexpr double kBloch = 1e-10;         // |b| <= 1 + kBloch
inline constexpr double kOrthogonal = 1e-10;    // <psi|psi_perp>
inline constexpr double kSurface = 1e-9;        // polytope on-surface band
inline constexpr double kLineRoot = 1e-10;      // line/polytope root residual
inline constexpr double kCommonT = 1e-8;        // equal-ratio matching
inline constexpr double kReferenceLevel = 1e-8; // equal endpoint levels
inline constexpr double kUnitary = 1e-10;       // U^dagger U = I
inline constexpr double kNormalization = 1e-10; // |alpha|^2 + |beta|^2 = 1
inline constexpr double kMagicEqual = 1e-9;     // equal robustness values
inline constexpr double kStabilizerZero = 1e-10;

}  // namespace magicbc::tol
