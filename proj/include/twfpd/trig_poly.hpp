#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace twfpd {

// Tap location of a filter on Z^n / exponent of e^{-ik.w}.
using MultiIndex = std::vector<int>;

// Coefficients with magnitude at or below this are dropped when a
// polynomial is brought to canonical form.
inline constexpr double kPruneTol = 1e-12;

// Defaults for root-order queries at a point of T^n.
inline constexpr int kDefaultMaxRootOrder = 10;
inline constexpr double kDerivativeTol = 1e-8;

/// Sparse real-coefficient trigonometric (Laurent) polynomial on T^n,
///   p(w) = sum_k c_k e^{-i k.w},
/// identified with the finitely supported filter k -> c_k.
/// Canonical form: no stored coefficient has |c| <= kPruneTol.
/// Immutable value type; every operation returns a new polynomial.
class TrigPoly {
 public:
  explicit TrigPoly(int dim);
  TrigPoly(int dim, std::map<MultiIndex, double> terms);

  static TrigPoly constant(int dim, double value);
  /// The single term c * e^{-i k.w}.
  static TrigPoly monomial(MultiIndex k, double coeff = 1.0);

  int dim() const { return dim_; }
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  double coeff(const MultiIndex& k) const;
  double coeff_sum() const;
  double max_abs_coeff() const;

  std::complex<double> eval(std::span<const double> omega) const;

  TrigPoly operator+(const TrigPoly& rhs) const;
  TrigPoly operator-(const TrigPoly& rhs) const;
  TrigPoly operator-() const;
  /// Coefficient convolution; eval(p*q, w) = eval(p, w) * eval(q, w).
  TrigPoly operator*(const TrigPoly& rhs) const;

  TrigPoly scaled(double c) const;
  /// c_k -> c_{-k}. For real coefficients this is pointwise conjugation.
  TrigPoly reflected() const;
  /// Multiplication by e^{-i d.w}: taps move k -> k + d.
  TrigPoly translated(const MultiIndex& d) const;
  /// w -> p(lambda * w): taps move k -> lambda * k. Requires lambda >= 1.
  TrigPoly upsample_arg(int lambda) const;
  /// Polyphase component sum_k c(lambda k - nu) e^{-i k.w}. Requires lambda >= 2.
  TrigPoly polyphase(const MultiIndex& nu, int lambda) const;
  /// p * reflected(p), the coefficients of |p(w)|^2.
  TrigPoly squared_modulus() const;
  /// Largest |k_i| over the support, 0 for the zero polynomial.
  int support_radius() const;

  /// Smallest r <= max_order such that some order-r partial derivative at
  /// omega0 exceeds tol in magnitude while all lower orders stay below it;
  /// max_order + 1 if every derivative up to max_order is below tol.
  int root_order_at(std::span<const double> omega0,
                    int max_order = kDefaultMaxRootOrder,
                    double tol = kDerivativeTol) const;

  bool operator==(const TrigPoly& rhs) const = default;

 private:
  void prune();

  int dim_;
  std::map<MultiIndex, double> terms_;
};

/// The canonical aliasing-frequency set Gamma = {2 pi g / lambda : g in
/// {0..lambda-1}^n}, with the zero vector first.
struct FrequencySet {
  int dim = 1;
  int lambda = 2;
  std::vector<std::vector<double>> points;

  static FrequencySet canonical(int dim, int lambda);
  std::size_t size() const { return points.size(); }
};

/// Root order of p at w = 0.
int vanishing_moments(const TrigPoly& p, int max_order = kDefaultMaxRootOrder,
                      double tol = kDerivativeTol);
/// Minimum root order of p over Gamma \ {0} for the given dilation.
int accuracy(const TrigPoly& p, int lambda,
             int max_order = kDefaultMaxRootOrder, double tol = kDerivativeTol);
/// Root order of p - lambda^{n/2} at 0.
int flatness(const TrigPoly& p, int lambda,
             int max_order = kDefaultMaxRootOrder, double tol = kDerivativeTol);
/// Root order of |p|^2 - lambda^n at 0.
int root_order_c(const TrigPoly& p, int lambda,
                 int max_order = kDefaultMaxRootOrder,
                 double tol = kDerivativeTol);

}  // namespace twfpd
