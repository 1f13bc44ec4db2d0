#pragma once

#include <optional>
#include <vector>

#include "twfpd/bank.hpp"

namespace twfpd {

inline constexpr double kDefaultVerifyTol = 1e-9;

struct VerificationReport {
  // Max absolute coefficient deviation of the polyphase Gram matrix from the
  // identity; the authoritative tightness measure.
  double uep_max_residual = 0.0;
  // Max deviation of the sampled UEP sums from lambda^n * delta; only
  // present when the redundant grid check ran.
  std::optional<double> grid_max_residual;
  double sos_max_residual = 0.0;

  std::vector<int> directional_moments;
  std::vector<int> complementary_moments;
  int accuracy_number = 0;
  int flatness_number = 0;
  int c_order = 0;
  double min_moment_bound = 0.0;  // min(accuracy, c_order / 2)

  double tolerance = kDefaultVerifyTol;
  bool tight = false;
};

/// Exact tightness check through the polyphase Gram identity: over all
/// representative pairs (nu, nu'), the mask polyphase products must sum to
/// the Kronecker delta as polynomials. When grid_samples > 0, additionally
/// samples the UEP sums on a grid_samples^n frequency grid.
VerificationReport verify_uep(const FilterBank& bank, double tol = kDefaultVerifyTol,
                              int grid_samples = 0);

/// Max absolute coefficient of
///   1 - sum_l |g_l|^2 - sum_{l<N} lambda^{-n} |p_l|^2 - (lambda^n - N) lambda^{-n},
/// computed entirely in coefficient arithmetic. Requires a bank with p factors.
double verify_sos_identity(const FilterBank& bank);

/// Fills the moment fields: per-mask vanishing moments, accuracy, flatness,
/// the c order, and the min(a, c/2) bound.
void moments_report(const FilterBank& bank, VerificationReport& report);

/// Full report: UEP, SOS identity (when p factors are present), and moments.
VerificationReport verify_bank(const FilterBank& bank, double tol = kDefaultVerifyTol,
                               int grid_samples = 0);

}  // namespace twfpd
