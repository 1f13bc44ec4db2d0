// Shared fixtures for the test suites: the four reference example banks,
// their golden filter tables (recorded cell-for-cell, zeros
// included), random generators, and small independent oracles.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twfpd/bank.hpp"

namespace twfpd_test {

using twfpd::BankConfig;
using twfpd::DirectionSpec;
using twfpd::MultiIndex;
using twfpd::TrigPoly;

inline BankConfig example_config(int which) {
  BankConfig config;
  config.dim = 2;
  config.lambda = 2;
  switch (which) {
    case 1:
      config.directions = {{{1, 0}, {}, 1}, {{0, 1}, {}, 1}, {{1, 1}, {}, 1}};
      break;
    case 2:
      config.directions = {{{1, 0}, {}, 1},
                           {{0, 1}, {}, 1},
                           {{1, 1}, {}, 1},
                           {{-1, 1}, {1, 0}, 1}};
      config.coset_reps = {{1, 0}, {0, 1}, {1, 1}, {-2, 0}};
      break;
    case 3:
      config.lambda = 3;
      config.directions = {{{1, 0}, {}, 1},      {{0, 1}, {}, 1},
                           {{1, 1}, {}, 1},      {{-1, 1}, {1, 0}, 1},
                           {{2, 1}, {}, 1},      {{1, 2}, {}, 1},
                           {{-1, 2}, {1, 0}, 1}, {{-2, 1}, {2, 0}, 1}};
      config.coset_reps = {{1, 0}, {0, 1},  {1, 1}, {-4, 2}, {2, 1},
                           {1, 2}, {0, 2}, {-4, 0}, {0, 0}};
      break;
    case 4:
      config.directions = {{{1, 0}, {}, 2}, {{0, 1}, {}, 2}, {{1, 1}, {}, 2}};
      break;
    default:
      throw std::invalid_argument("example_config: which must be 1..4");
  }
  return config;
}

// ---- golden filter tables ----------------------------------------------

struct GoldenTable {
  std::string name;
  std::vector<std::pair<MultiIndex, double>> cells;
};

using Cells = std::vector<std::pair<MultiIndex, double>>;

inline Cells scaled_cells(Cells cells, double scale) {
  for (auto& [k, v] : cells) v *= scale;
  return cells;
}

// Dense rectangular table: every cell of [x0,x1] x [y0,y1] is drawn, zero
// unless overridden.
inline Cells box_cells(int x0, int x1, int y0, int y1, const Cells& nonzeros) {
  Cells cells;
  for (int x = x0; x <= x1; ++x) {
    for (int y = y0; y <= y1; ++y) {
      double value = 0.0;
      for (const auto& [k, v] : nonzeros) {
        if (k[0] == x && k[1] == y) {
          value = v;
          break;
        }
      }
      cells.push_back({{x, y}, value});
    }
  }
  return cells;
}

/// Max |mask(k) - value| over the drawn cells; +infinity if the mask stores
/// a tap outside the drawn region (the table missed it).
inline double table_mismatch(const TrigPoly& mask, const GoldenTable& table) {
  double worst = 0.0;
  for (const auto& [k, v] : table.cells) {
    worst = std::max(worst, std::abs(mask.coeff(k) - v));
  }
  for (const auto& [k, c] : mask.terms()) {
    (void)c;
    bool drawn = false;
    for (const auto& [cell, v] : table.cells) {
      (void)v;
      if (cell == k) {
        drawn = true;
        break;
      }
    }
    if (!drawn) return std::numeric_limits<double>::infinity();
  }
  return worst;
}

/// The golden tables of example `which`, in the order lowpass, highpass
/// factors h_l, then (example 1 only) the directional and complementary
/// wavelet filters.
inline std::vector<GoldenTable> golden_tables(int which) {
  const double s2 = std::sqrt(2.0);
  std::vector<GoldenTable> tables;
  switch (which) {
    case 1: {
      tables.push_back({"h", box_cells(-1, 1, -1, 1,
                                       scaled_cells({{{0, 0}, 2}, {{1, 0}, 1}, {{-1, 0}, 1},
                                                     {{0, 1}, 1}, {{0, -1}, 1}, {{1, 1}, 1},
                                                     {{-1, -1}, 1}},
                                                    1.0 / 4))});
      tables.push_back({"h1", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 0}, -1}}, 1.0 / 4))});
      tables.push_back({"h2", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{0, 1}, -1}}, 1.0 / 4))});
      tables.push_back({"h3", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 1}, -1}}, 1.0 / 4))});
      tables.push_back(
          {"qd1", scaled_cells({{{0, 0}, 2},   {{-1, 0}, 1},  {{1, 0}, 0},  {{0, 1}, 1},
                                {{0, -1}, 1},  {{1, 1}, 1},   {{-1, -1}, 1}, {{2, 0}, -2},
                                {{3, 0}, -1},  {{2, 1}, -1},  {{2, -1}, -1}, {{3, 1}, -1},
                                {{1, -1}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qd2", scaled_cells({{{0, 0}, 2},   {{1, 0}, 1},   {{-1, 0}, 1},  {{0, 1}, 0},
                                {{0, -1}, 1},  {{1, 1}, 1},   {{-1, -1}, 1}, {{0, 2}, -2},
                                {{1, 2}, -1},  {{-1, 2}, -1}, {{0, 3}, -1},  {{1, 3}, -1},
                                {{-1, 1}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qd3", scaled_cells({{{0, 0}, 2},  {{1, 0}, 1},  {{-1, 0}, 1}, {{0, 1}, 1},
                                {{0, -1}, 1}, {{1, 1}, 0},  {{-1, -1}, 1}, {{2, 2}, -2},
                                {{3, 2}, -1}, {{1, 2}, -1}, {{2, 3}, -1},  {{2, 1}, -1},
                                {{3, 3}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qc1", scaled_cells({{{-1, 0}, 14}, {{0, 0}, -2},   {{-2, 0}, -2}, {{1, 0}, -1},
                                {{0, 1}, -1},  {{0, -1}, -1},  {{1, 1}, -1},  {{-1, -1}, -1},
                                {{-3, 0}, -1}, {{-2, 1}, -1},  {{-2, -1}, -1}, {{-1, 1}, -1},
                                {{-3, -1}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qc2", scaled_cells({{{0, -1}, 14}, {{0, 0}, -2},   {{0, -2}, -2}, {{1, 0}, -1},
                                {{-1, 0}, -1}, {{0, 1}, -1},   {{1, 1}, -1},  {{-1, -1}, -1},
                                {{1, -2}, -1}, {{-1, -2}, -1}, {{0, -3}, -1}, {{1, -1}, -1},
                                {{-1, -3}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qc3", scaled_cells({{{-1, -1}, 14}, {{0, 0}, -2},   {{-2, -2}, -2}, {{1, 0}, -1},
                                {{-1, 0}, -1},  {{0, 1}, -1},   {{0, -1}, -1},  {{1, 1}, -1},
                                {{-1, -2}, -1}, {{-3, -2}, -1}, {{-2, -1}, -1}, {{-2, -3}, -1},
                                {{-3, -3}, -1}},
                               1.0 / 16)});
      tables.push_back(
          {"qc4", scaled_cells({{{0, 0}, 6},  {{1, 0}, -1}, {{-1, 0}, -1}, {{0, 1}, -1},
                                {{0, -1}, -1}, {{1, 1}, -1}, {{-1, -1}, -1}},
                               1.0 / 8)});
      break;
    }
    case 2: {
      tables.push_back({"h", box_cells(-1, 2, -1, 2,
                                       scaled_cells({{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1},
                                                     {{0, -1}, 1}, {{1, 1}, 1}, {{-1, -1}, 1},
                                                     {{2, 0}, 1}, {{0, 2}, 1}},
                                                    1.0 / 4))});
      tables.push_back({"h1", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 0}, -1}}, 1.0 / 4))});
      tables.push_back({"h2", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{0, 1}, -1}}, 1.0 / 4))});
      tables.push_back({"h3", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 1}, -1}}, 1.0 / 4))});
      tables.push_back({"h4", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{1, 0}, 1}, {{0, 1}, -1}}, 1.0 / 4))});
      break;
    }
    case 3: {
      tables.push_back(
          {"h", box_cells(-3, 4, -2, 4,
                          scaled_cells({{{0, 0}, 2},   {{-1, 0}, 1}, {{2, 0}, 1},  {{0, -1}, 1},
                                        {{0, 2}, 1},   {{-1, -1}, 1}, {{2, 2}, 1}, {{-2, -1}, 1},
                                        {{4, 2}, 1},   {{-1, -2}, 1}, {{2, 4}, 1}, {{4, -2}, 1},
                                        {{1, 1}, 1},   {{0, -2}, 1},  {{-3, 4}, 1}, {{4, 0}, 1},
                                        {{-2, 3}, 1}},
                                       1.0 / 6))});
      tables.push_back({"h1", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 0}, -1}}, 1.0 / 6))});
      tables.push_back({"h2", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{0, 1}, -1}}, 1.0 / 6))});
      tables.push_back({"h3", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 1}, -1}}, 1.0 / 6))});
      tables.push_back({"h4", box_cells(0, 1, 0, 1,
                                        scaled_cells({{{1, 0}, 1}, {{0, 1}, -1}}, 1.0 / 6))});
      tables.push_back({"h5", box_cells(0, 2, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{2, 1}, -1}}, 1.0 / 6))});
      tables.push_back({"h6", box_cells(0, 1, 0, 2,
                                        scaled_cells({{{0, 0}, 1}, {{1, 2}, -1}}, 1.0 / 6))});
      tables.push_back({"h7", box_cells(0, 1, 0, 2,
                                        scaled_cells({{{1, 0}, 1}, {{0, 2}, -1}}, 1.0 / 6))});
      tables.push_back({"h8", box_cells(0, 2, 0, 1,
                                        scaled_cells({{{2, 0}, 1}, {{0, 1}, -1}}, 1.0 / 6))});
      break;
    }
    case 4: {
      tables.push_back(
          {"h", box_cells(-1, 3, -1, 3,
                          {{{0, 0}, 0.5},
                           {{-1, 0}, (1 + s2) / 8}, {{1, 0}, 0.25}, {{3, 0}, (1 - s2) / 8},
                           {{0, -1}, (1 + s2) / 8}, {{0, 1}, 0.25}, {{0, 3}, (1 - s2) / 8},
                           {{-1, -1}, (1 + s2) / 8}, {{1, 1}, 0.25}, {{3, 3}, (1 - s2) / 8}})});
      tables.push_back({"h1", box_cells(0, 2, 0, 1,
                                        scaled_cells({{{0, 0}, 1}, {{1, 0}, -2}, {{2, 0}, 1}},
                                                     1.0 / 8))});
      tables.push_back({"h2", box_cells(0, 1, 0, 2,
                                        scaled_cells({{{0, 0}, 1}, {{0, 1}, -2}, {{0, 2}, 1}},
                                                     1.0 / 8))});
      tables.push_back({"h3", box_cells(0, 2, 0, 2,
                                        scaled_cells({{{0, 0}, 1}, {{1, 1}, -2}, {{2, 2}, 1}},
                                                     1.0 / 8))});
      break;
    }
    default:
      throw std::invalid_argument("golden_tables: which must be 1..4");
  }
  return tables;
}

/// Matches the bank's masks against golden tables by name prefix:
/// "h" -> tau, "hK" -> g[K-1], "qdK" -> q_directional[K-1],
/// "qcK" -> q_complementary[K-1].
inline const TrigPoly& mask_for_table(const twfpd::FilterBank& bank, const std::string& name) {
  if (name == "h") return bank.tau;
  if (name.rfind("qd", 0) == 0) return bank.q_directional.at(std::stoul(name.substr(2)) - 1);
  if (name.rfind("qc", 0) == 0) return bank.q_complementary.at(std::stoul(name.substr(2)) - 1);
  return bank.g.at(std::stoul(name.substr(1)) - 1);
}

// ---- random generators -----------------------------------------------------

inline TrigPoly random_poly(std::mt19937& rng, int dim, int max_terms = 6,
                            int index_range = 3) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> index(-index_range, index_range);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::map<MultiIndex, double> terms;
  const int count = term_count(rng);
  for (int t = 0; t < count; ++t) {
    MultiIndex k(dim);
    for (int j = 0; j < dim; ++j) k[j] = index(rng);
    terms[k] = coeff(rng);
  }
  return TrigPoly(dim, std::move(terms));
}

inline std::vector<double> random_omega(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  std::vector<double> omega(dim);
  for (double& w : omega) w = angle(rng);
  return omega;
}

/// Random valid bank configuration within the documented ranges
/// (n <= 3, lambda <= 3, N <= lambda^n, m <= 3, xi entries in [-2,2]\{0}).
inline BankConfig random_config(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim_pick(1, 3);
  std::uniform_int_distribution<int> lambda_pick(2, 3);
  BankConfig config;
  config.dim = dim_pick(rng);
  config.lambda = lambda_pick(rng);
  const int lattice = config.lattice_size();
  std::uniform_int_distribution<int> count_pick(1, lattice);
  std::uniform_int_distribution<int> moment_pick(1, 3);
  std::uniform_int_distribution<int> entry_pick(-2, 2);
  std::uniform_int_distribution<int> zeta_pick(-1, 1);
  const int n_dirs = count_pick(rng);
  for (int l = 0; l < n_dirs; ++l) {
    DirectionSpec dir;
    dir.xi.resize(config.dim);
    do {
      for (int j = 0; j < config.dim; ++j) dir.xi[j] = entry_pick(rng);
    } while (std::all_of(dir.xi.begin(), dir.xi.end(), [](int v) { return v == 0; }));
    dir.zeta.resize(config.dim);
    for (int j = 0; j < config.dim; ++j) dir.zeta[j] = zeta_pick(rng);
    dir.moments = moment_pick(rng);
    config.directions.push_back(std::move(dir));
  }
  config.orientation = (rng() % 2 == 0) ? twfpd::Orientation::kMinPhase
                                        : twfpd::Orientation::kMaxPhase;
  return config;
}

// ---- independent oracles ----------------------------------------------------

/// Dense 1-D convolution of coefficient sequences; the test-side oracle for
/// products of univariate polynomials. a and b map offset -> value starting
/// at a_base/b_base.
inline std::vector<double> dense_conv(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace twfpd_test
