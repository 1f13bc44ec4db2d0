#include "twfpd/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twfpd {

Orientation orientation_from_string(const std::string& s) {
  if (s == "min" || s == "min_phase") return Orientation::kMinPhase;
  if (s == "max" || s == "max_phase") return Orientation::kMaxPhase;
  throw std::invalid_argument("orientation: expected \"min_phase\" or \"max_phase\", got \"" + s + "\"");
}

const char* to_string(Orientation o) {
  return o == Orientation::kMinPhase ? "min_phase" : "max_phase";
}

double CausalFactor::value_at_zero() const {
  return std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
}

TrigPoly CausalFactor::as_poly() const {
  std::map<MultiIndex, double> terms;
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    terms[{k}] = coeffs[k];
  }
  return TrigPoly(1, std::move(terms));
}

TrigPoly CausalFactor::along_direction(const MultiIndex& xi) const {
  const int dim = static_cast<int>(xi.size());
  TrigPoly out(dim);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    MultiIndex tap(dim);
    for (int j = 0; j < dim; ++j) tap[j] = k * xi[j];
    out = out + TrigPoly::monomial(std::move(tap), coeffs[k]);
  }
  return out;
}

namespace {

using Complex = std::complex<double>;

std::vector<Complex> companion_roots(const std::vector<double>& poly) {
  const int deg = static_cast<int>(poly.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -poly[i] / poly[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

// Groups unit-circle roots that are numerically split copies of one another.
std::vector<std::vector<Complex>> cluster_roots(std::vector<Complex> roots) {
  std::vector<std::vector<Complex>> clusters;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> cluster{roots[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      bool near = false;
      for (const Complex& member : cluster) {
        if (std::abs(roots[j] - member) <=
            kRootClusterTol * std::max(1.0, std::abs(member))) {
          near = true;
          break;
        }
      }
      if (near) {
        cluster.push_back(roots[j]);
        used[j] = true;
      }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

std::vector<Complex> expand_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> coeffs{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= r * coeffs[i];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

std::vector<double> autocorrelate(const std::vector<double>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  std::vector<double> q(2 * d + 1, 0.0);
  // q[s + d] = sum_i a_i a_{i - s}
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) q[i - j + d] += a[i] * a[j];
  }
  return q;
}

}  // namespace

CausalFactor hermitian_sqrt(const TrigPoly& f, double tol, Orientation orientation) {
  if (f.dim() != 1) {
    throw std::invalid_argument("hermitian_sqrt: input must be univariate");
  }
  const int d = f.support_radius();

  // Hermitian symmetry c_{-k} = c_k, within tol.
  std::vector<double> c(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    const double pos = f.coeff({k});
    const double neg = f.coeff({-k});
    if (std::abs(pos - neg) > tol) {
      throw std::invalid_argument("hermitian_sqrt: coefficients are not Hermitian-symmetric");
    }
    c[k] = 0.5 * (pos + neg);
  }
  c[0] = f.coeff({0});

  // Nonnegativity on a dense grid.
  const int grid = std::max(1024, 16 * (2 * d + 1));
  for (int t = 0; t < grid; ++t) {
    const double u = 2.0 * std::numbers::pi * t / grid;
    double value = c[0];
    for (int k = 1; k <= d; ++k) value += 2.0 * c[k] * std::cos(k * u);
    if (value < -tol) {
      throw std::runtime_error("hermitian_sqrt: input is not nonnegative on the circle");
    }
  }

  if (d == 0) {
    return CausalFactor{{std::sqrt(std::max(c[0], 0.0))}};
  }

  // z^d f(z) with z = e^{-iw}: real polynomial of degree 2d whose roots come
  // in reciprocal pairs.
  std::vector<double> poly(2 * d + 1);
  for (int i = 0; i <= 2 * d; ++i) poly[i] = c[std::abs(i - d)];
  const std::vector<Complex> roots = companion_roots(poly);

  std::vector<Complex> circle;
  std::vector<Complex> selected;
  for (const Complex& r : roots) {
    const double mod = std::abs(r);
    if (std::abs(mod - 1.0) < kUnitCircleBand) {
      circle.push_back(r);
    } else if ((orientation == Orientation::kMinPhase && mod < 1.0) ||
               (orientation == Orientation::kMaxPhase && mod > 1.0)) {
      selected.push_back(r);
    }
  }
  for (const auto& cluster : cluster_roots(std::move(circle))) {
    if (cluster.size() % 2 != 0) {
      throw std::runtime_error(
          "hermitian_sqrt: no spectral factor (unit-circle root of odd multiplicity)");
    }
    Complex mean = 0.0;
    for (const Complex& r : cluster) mean += r;
    mean /= static_cast<double>(cluster.size());
    mean /= std::abs(mean);  // project back onto the circle
    for (std::size_t copy = 0; copy < cluster.size() / 2; ++copy) {
      selected.push_back(mean);
    }
  }
  if (static_cast<int>(selected.size()) != d) {
    throw std::runtime_error("hermitian_sqrt: root selection failed (reciprocal pairing broke down)");
  }

  const std::vector<Complex> expanded = expand_from_roots(selected);
  std::vector<double> a(d + 1);
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (int i = 0; i <= d; ++i) {
    a[i] = expanded[i].real();
    max_abs = std::max(max_abs, std::abs(expanded[i]));
    max_imag = std::max(max_imag, std::abs(expanded[i].imag()));
  }
  if (max_imag > tol * std::max(1.0, max_abs)) {
    throw std::runtime_error("hermitian_sqrt: selected roots are not conjugate-closed");
  }

  // Scale so that a * reversed(a) reproduces the input coefficients
  // (least-squares over all lags), then fix the sign with g(0) >= 0.
  const std::vector<double> q = autocorrelate(a);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i <= 2 * d; ++i) {
    num += poly[i] * q[i];
    den += q[i] * q[i];
  }
  const double scale2 = num / den;
  if (!(scale2 > 0.0)) {
    throw std::runtime_error("hermitian_sqrt: input is not nonnegative on the circle");
  }
  const double scale = std::sqrt(scale2);
  for (double& v : a) v *= scale;

  double at_zero = std::accumulate(a.begin(), a.end(), 0.0);
  if (at_zero < 0.0 ||
      (std::abs(at_zero) <= tol &&
       *std::find_if(a.begin(), a.end(), [](double v) { return v != 0.0; }) < 0.0)) {
    for (double& v : a) v = -v;
  }

  const std::vector<double> check = autocorrelate(a);
  double residual = 0.0;
  for (int i = 0; i <= 2 * d; ++i) residual = std::max(residual, std::abs(check[i] - poly[i]));
  if (residual > std::max(tol, 1e-9)) {
    throw std::runtime_error("hermitian_sqrt: factor residual " + std::to_string(residual) +
                             " exceeds tolerance");
  }
  return CausalFactor{std::move(a)};
}

CausalFactor half_angle_factor(int m, Orientation orientation) {
  if (m < 1) {
    throw std::invalid_argument("half_angle_factor: m must be >= 1");
  }
  // (1 - cos u)/2 as a polynomial, raised to the m-th power.
  const TrigPoly half_one_minus_cos(1, {{{0}, 0.5}, {{1}, -0.25}, {{-1}, -0.25}});
  TrigPoly power = TrigPoly::constant(1, 1.0);
  for (int i = 0; i < m; ++i) power = power * half_one_minus_cos;
  const TrigPoly f = TrigPoly::constant(1, 1.0) - power;

  CausalFactor b = hermitian_sqrt(f, 1e-8, orientation);
  const double at_zero = b.value_at_zero();
  for (double& v : b.coeffs) v /= at_zero;
  return b;
}

}  // namespace twfpd
