#pragma once

#include <cstdint>
#include <vector>

#include "twfpd/transform.hpp"

namespace twfpd {

struct PhaseCount {
  std::uint64_t measured = 0;
  std::uint64_t predicted = 0;
};

/// Multiplication accounting of one complete cycle of 1-level-down analysis
/// and 1-level-up synthesis, against the closed-form constants. alpha is
/// the nonzero count of the lowpass filter, beta_l of the l-th highpass
/// filter, beta_star their average; the two cycle constants are
/// 3 alpha + beta_star (LP synthesis) and
/// (N+5) alpha + (lambda N + 1) beta_star (standard synthesis, an upper
/// bound for the implemented schedule).
struct ComplexityReport {
  int alpha = 0;
  std::vector<int> beta;
  double beta_star = 0.0;
  double lp_constant = 0.0;
  double standard_constant = 0.0;

  std::vector<std::size_t> shape;
  std::uint64_t points = 0;

  PhaseCount analysis_lowpass;        // step (i):   alpha L
  PhaseCount analysis_directional;    // step (ii):  (sum_l beta_l / lambda^n) L
  PhaseCount analysis_complementary;  // step (iii): alpha L
  PhaseCount synth_lp;                // step (iv):  alpha L
  PhaseCount synth_std_lowpass;       //             alpha L
  PhaseCount synth_std_directional;   //             sum_l (beta_l + alpha) L
  PhaseCount synth_std_complementary; //             2 alpha L

  double lp_cycle_per_point = 0.0;
  double standard_cycle_per_point = 0.0;
};

ComplexityReport complexity_report(const FilterBank& bank,
                                   const std::vector<std::size_t>& shape);

/// Convenience overload: runs on the n-dimensional cube with points = side^n.
/// The side must be an exact integer root divisible by lambda.
ComplexityReport complexity_report(const FilterBank& bank, std::uint64_t points);

}  // namespace twfpd
