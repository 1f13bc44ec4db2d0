#pragma once

#include <vector>

#include "twfpd/trig_poly.hpp"

namespace twfpd {

/// Which member of each reciprocal root pair {r, 1/r} the spectral factor
/// keeps. Max-phase keeps |r| >= 1.
enum class Orientation { kMinPhase, kMaxPhase };

Orientation orientation_from_string(const std::string& s);
const char* to_string(Orientation o);

// Relative tolerance for grouping numerically split roots, and the band
// around |r| = 1 inside which a root counts as lying on the unit circle.
inline constexpr double kRootClusterTol = 1e-7;
inline constexpr double kUnitCircleBand = 1e-7;

/// Causal univariate factor g(w) = sum_{k=0}^{d} a_k e^{-ikw} with real
/// coefficients.
struct CausalFactor {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double value_at_zero() const;  // sum of coefficients, g(0)
  /// The factor as a 1-D TrigPoly.
  TrigPoly as_poly() const;
  /// The factor along direction xi in n variables: sum_k a_k e^{-i k xi.w}.
  TrigPoly along_direction(const MultiIndex& xi) const;
};

/// Spectral factor of a nonnegative Hermitian-symmetric univariate
/// trigonometric polynomial: returns g with |g(w)|^2 = f(w), coefficients
/// real, degree equal to the one-sided support width of f, sign fixed so
/// g(0) >= 0. Roots are found as companion-matrix eigenvalues; unit-circle
/// roots must cluster with even multiplicity.
///
/// Throws std::invalid_argument for non-univariate or non-Hermitian input,
/// std::runtime_error("... not nonnegative ...") if f dips below -tol on a
/// dense grid, and std::runtime_error("... no spectral factor ...") when a
/// unit-circle root has odd multiplicity.
CausalFactor hermitian_sqrt(const TrigPoly& f, double tol, Orientation orientation);

/// Degree-m factor b with |b(u)|^2 = 1 - ((1 - cos u)/2)^m = 1 - sin^{2m}(u/2)
/// and b(0) = 1. Requires m >= 1.
CausalFactor half_angle_factor(int m, Orientation orientation);

}  // namespace twfpd
