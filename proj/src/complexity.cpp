#include "twfpd/complexity.hpp"

#include <cmath>
#include <stdexcept>

namespace twfpd {

ComplexityReport complexity_report(const FilterBank& bank,
                                   const std::vector<std::size_t>& shape) {
  ComplexityReport report;
  report.alpha = static_cast<int>(bank.tau.term_count());
  std::uint64_t beta_sum = 0;
  for (const TrigPoly& g : bank.g) {
    report.beta.push_back(static_cast<int>(g.term_count()));
    beta_sum += g.term_count();
  }
  const int n_dirs = static_cast<int>(bank.g.size());
  if (n_dirs == 0) {
    throw std::invalid_argument("complexity_report: bank has no highpass factors");
  }
  report.beta_star = static_cast<double>(beta_sum) / n_dirs;
  report.lp_constant = 3.0 * report.alpha + report.beta_star;
  report.standard_constant = (n_dirs + 5.0) * report.alpha +
                             (bank.config.lambda * n_dirs + 1.0) * report.beta_star;

  report.shape = shape;
  std::uint64_t points = 1;
  for (std::size_t s : shape) points *= s;
  report.points = points;
  const std::uint64_t lattice = static_cast<std::uint64_t>(bank.lattice_size());
  if (points % lattice != 0) {
    throw std::invalid_argument("complexity_report: point count must be divisible by lambda^n");
  }

  // Deterministic non-constant content; the counts do not depend on it.
  Signal signal = Signal::zeros(shape);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    signal.data[i] = static_cast<double>(i % 17) / 16.0;
  }

  AnalysisCounters analysis;
  LevelCoefficients level = analyze_level(bank, signal, &analysis);
  OpCounter lp_counter;
  (void)synth_lp(bank, level.coarse, level.complementary, &lp_counter);
  SynthesisCounters standard;
  (void)synth_standard(bank, level.coarse, level.directional, level.complementary,
                       &standard);

  const std::uint64_t alpha_l = static_cast<std::uint64_t>(report.alpha) * points;
  report.analysis_lowpass = {analysis.lowpass.multiplies, alpha_l};
  report.analysis_directional = {analysis.directional.multiplies,
                                 beta_sum * (points / lattice)};
  report.analysis_complementary = {analysis.complementary.multiplies, alpha_l};
  report.synth_lp = {lp_counter.multiplies, alpha_l};
  report.synth_std_lowpass = {standard.lowpass.multiplies, alpha_l};
  report.synth_std_directional = {
      standard.directional.multiplies,
      (beta_sum + static_cast<std::uint64_t>(n_dirs) * report.alpha) * points};
  report.synth_std_complementary = {standard.complementary.multiplies, 2 * alpha_l};

  const std::uint64_t lp_cycle = analysis.total() + lp_counter.multiplies;
  const std::uint64_t std_cycle = analysis.total() + standard.total();
  report.lp_cycle_per_point = static_cast<double>(lp_cycle) / points;
  report.standard_cycle_per_point = static_cast<double>(std_cycle) / points;
  return report;
}

ComplexityReport complexity_report(const FilterBank& bank, std::uint64_t points) {
  const int dim = bank.tau.dim();
  const double root = std::pow(static_cast<double>(points), 1.0 / dim);
  const std::uint64_t side = static_cast<std::uint64_t>(std::llround(root));
  std::uint64_t check = 1;
  for (int j = 0; j < dim; ++j) check *= side;
  if (check != points || side % static_cast<std::uint64_t>(bank.config.lambda) != 0) {
    throw std::invalid_argument(
        "complexity_report: point count must be a lambda-divisible n-th power");
  }
  return complexity_report(bank, std::vector<std::size_t>(dim, side));
}

}  // namespace twfpd
