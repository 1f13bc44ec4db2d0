#pragma once

#include <string>
#include <vector>

#include "twfpd/spectral.hpp"
#include "twfpd/trig_poly.hpp"

namespace twfpd {

/// One prescribed direction: the vector xi (nonzero), the initial point zeta
/// of the drawn segment, and the number of vanishing moments m along xi.
struct DirectionSpec {
  MultiIndex xi;
  MultiIndex zeta;  // empty means the origin
  int moments = 1;
};

struct BankConfig {
  int dim = 2;
  int lambda = 2;
  std::vector<DirectionSpec> directions;
  /// Ordered representatives of Z^n / lambda Z^n; slot l pairs with
  /// direction l for l < N. Empty means default_coset_reps applies.
  std::vector<MultiIndex> coset_reps;
  Orientation orientation = Orientation::kMaxPhase;

  int num_directions() const { return static_cast<int>(directions.size()); }
  int lattice_size() const;  // lambda^dim
  double dc_gain() const;    // lambda^{dim/2}

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Validated copy with zeta defaults filled and coset_reps populated.
  BankConfig resolved() const;
};

/// Greedy choice of coset representatives: each direction claims xi_l when
/// its residue class is free, then xi_l + zeta_l, then zeta_l; leftovers get
/// the canonical representative in {0..lambda-1}^n of the first unclaimed
/// class, as do the slots beyond the direction count.
std::vector<MultiIndex> default_coset_reps(int dim, int lambda,
                                           const std::vector<DirectionSpec>& directions);

/// The constructed tight wavelet filter bank: lowpass tau, directional
/// wavelet masks, and complementary wavelet masks, plus the p_l / g_l
/// factors they were assembled from.
struct FilterBank {
  TrigPoly tau;
  std::vector<TrigPoly> p;                // empty for build_from_sos banks
  std::vector<TrigPoly> g;
  std::vector<TrigPoly> q_directional;    // N masks
  std::vector<TrigPoly> q_complementary;  // lambda^n masks
  BankConfig config;

  FilterBank() : tau(1) {}

  int num_directions() const { return static_cast<int>(q_directional.size()); }
  int lattice_size() const { return config.lattice_size(); }
  /// tau followed by the directional and complementary masks.
  std::vector<const TrigPoly*> all_masks() const;
};

/// p_l(w) = sum_k a_k e^{-i k xi.w} with (a_k) the half-angle factor for m
/// vanishing moments; p_l(0) = 1.
TrigPoly build_p(const DirectionSpec& direction, Orientation orientation);

/// g_l(w) = lambda^{-n/2} 2^{-m} e^{-i m zeta.w} (1 - e^{-i xi.w})^m.
TrigPoly build_g(const DirectionSpec& direction, int lambda, int dim);

/// tau(w) = sum_{l<N} lambda^{-n/2} p_l(lambda w) e^{i nu_l.w}
///        + sum_{l>=N} lambda^{-n/2} e^{i nu_l.w}.
TrigPoly build_lowpass(const std::vector<TrigPoly>& p_list, const BankConfig& config);

/// The TWFPD of the prescribed directions.
FilterBank build_bank(const BankConfig& config);

/// Generic SOS-based bank: wavelet masks tau(w) g_l(lambda w) and
/// e^{i nu.w} - tau(w) conj(tau_nu(lambda w)) from the polyphase components
/// of tau. config supplies lambda and the representative set.
FilterBank build_from_sos(const TrigPoly& tau, const std::vector<TrigPoly>& g_list,
                          const BankConfig& config);

}  // namespace twfpd
