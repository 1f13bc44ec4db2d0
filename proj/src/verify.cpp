#include "twfpd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twfpd {

namespace {

double gram_residual(const FilterBank& bank) {
  const int lambda = bank.config.lambda;
  const auto& reps = bank.config.coset_reps;
  const int lattice = static_cast<int>(reps.size());
  const std::vector<const TrigPoly*> masks = bank.all_masks();

  // Polyphase components, cached per mask and representative.
  std::vector<std::vector<TrigPoly>> components;
  components.reserve(masks.size());
  for (const TrigPoly* mask : masks) {
    std::vector<TrigPoly> per_rep;
    per_rep.reserve(lattice);
    for (const MultiIndex& nu : reps) per_rep.push_back(mask->polyphase(nu, lambda));
    components.push_back(std::move(per_rep));
  }

  // G_{nu' nu} is the reflection of G_{nu nu'}, so the upper triangle suffices.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < lattice; ++a) {
    for (int b = a; b < lattice; ++b) pairs.emplace_back(a, b);
  }

  double residual = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : residual)
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [a, b] = pairs[idx];
    TrigPoly gram(bank.tau.dim());
    for (std::size_t m = 0; m < components.size(); ++m) {
      gram = gram + components[m][a] * components[m][b].reflected();
    }
    if (a == b) gram = gram - TrigPoly::constant(bank.tau.dim(), 1.0);
    residual = std::max(residual, gram.max_abs_coeff());
  }
  return residual;
}

double grid_residual(const FilterBank& bank, int samples) {
  const int dim = bank.tau.dim();
  const FrequencySet gamma = FrequencySet::canonical(dim, bank.config.lambda);
  const std::vector<const TrigPoly*> masks = bank.all_masks();
  const double lattice = static_cast<double>(bank.config.lattice_size());

  std::int64_t grid_points = 1;
  for (int j = 0; j < dim; ++j) grid_points *= samples;

  double residual = 0.0;
#pragma omp parallel for schedule(static) reduction(max : residual)
  for (std::int64_t flat = 0; flat < grid_points; ++flat) {
    std::vector<double> omega(dim);
    std::int64_t rest = flat;
    for (int j = dim - 1; j >= 0; --j) {
      omega[j] = 2.0 * std::numbers::pi * (rest % samples) / samples;
      rest /= samples;
    }
    std::vector<double> shifted(dim);
    for (std::size_t gi = 0; gi < gamma.points.size(); ++gi) {
      for (int j = 0; j < dim; ++j) shifted[j] = omega[j] + gamma.points[gi][j];
      std::complex<double> sum = 0.0;
      for (const TrigPoly* mask : masks) {
        sum += mask->eval(omega) * std::conj(mask->eval(shifted));
      }
      const double expected = gi == 0 ? lattice : 0.0;
      residual = std::max(residual, std::abs(sum - expected));
    }
  }
  return residual;
}

}  // namespace

VerificationReport verify_uep(const FilterBank& bank, double tol, int grid_samples) {
  VerificationReport report;
  report.tolerance = tol;
  report.uep_max_residual = gram_residual(bank);
  if (grid_samples > 0) {
    report.grid_max_residual = grid_residual(bank, grid_samples);
  }
  report.tight = report.uep_max_residual < tol;
  return report;
}

double verify_sos_identity(const FilterBank& bank) {
  const int dim = bank.tau.dim();
  const int n_dirs = static_cast<int>(bank.p.size());
  const double inv_lattice = 1.0 / bank.config.lattice_size();

  TrigPoly residual = TrigPoly::constant(dim, 1.0);
  for (const TrigPoly& g : bank.g) {
    residual = residual - g.squared_modulus();
  }
  for (const TrigPoly& p : bank.p) {
    residual = residual - p.squared_modulus().scaled(inv_lattice);
  }
  const double constant_branch = (bank.config.lattice_size() - n_dirs) * inv_lattice;
  residual = residual - TrigPoly::constant(dim, constant_branch);
  return residual.max_abs_coeff();
}

void moments_report(const FilterBank& bank, VerificationReport& report) {
  report.directional_moments.clear();
  report.complementary_moments.clear();
  for (const TrigPoly& q : bank.q_directional) {
    report.directional_moments.push_back(vanishing_moments(q));
  }
  for (const TrigPoly& q : bank.q_complementary) {
    report.complementary_moments.push_back(vanishing_moments(q));
  }
  report.accuracy_number = accuracy(bank.tau, bank.config.lambda);
  report.flatness_number = flatness(bank.tau, bank.config.lambda);
  report.c_order = root_order_c(bank.tau, bank.config.lambda);
  report.min_moment_bound =
      std::min<double>(report.accuracy_number, report.c_order / 2.0);
}

VerificationReport verify_bank(const FilterBank& bank, double tol, int grid_samples) {
  VerificationReport report = verify_uep(bank, tol, grid_samples);
  if (!bank.p.empty() || !bank.g.empty()) {
    report.sos_max_residual = verify_sos_identity(bank);
  }
  moments_report(bank, report);
  return report;
}

}  // namespace twfpd
