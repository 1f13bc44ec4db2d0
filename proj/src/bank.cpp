#include "twfpd/bank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace twfpd {

namespace {

MultiIndex reduce_mod(const MultiIndex& k, int lambda) {
  MultiIndex r(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    r[j] = ((k[j] % lambda) + lambda) % lambda;
  }
  return r;
}

MultiIndex negated(const MultiIndex& k) {
  MultiIndex n(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) n[j] = -k[j];
  return n;
}

bool is_zero_index(const MultiIndex& k) {
  return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

std::vector<MultiIndex> canonical_residues(int dim, int lambda) {
  std::vector<MultiIndex> out;
  MultiIndex g(dim, 0);
  while (true) {
    out.push_back(g);
    int j = dim - 1;
    while (j >= 0 && ++g[j] == lambda) g[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

}  // namespace

int BankConfig::lattice_size() const {
  int size = 1;
  for (int j = 0; j < dim; ++j) size *= lambda;
  return size;
}

double BankConfig::dc_gain() const {
  return std::pow(static_cast<double>(lambda), dim / 2.0);
}

void BankConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("bank config: \"n\" must be >= 1");
  if (lambda < 2) throw std::invalid_argument("bank config: \"lambda\" must be >= 2");
  if (directions.empty()) {
    throw std::invalid_argument("bank config: \"directions\" must not be empty");
  }
  if (num_directions() > lattice_size()) {
    throw std::invalid_argument("bank config: too many directions (N must be <= lambda^n)");
  }
  for (std::size_t l = 0; l < directions.size(); ++l) {
    const DirectionSpec& dir = directions[l];
    const std::string where = "directions[" + std::to_string(l) + "]";
    if (static_cast<int>(dir.xi.size()) != dim) {
      throw std::invalid_argument("bank config: " + where + ".xi must have length n");
    }
    if (is_zero_index(dir.xi)) {
      throw std::invalid_argument("bank config: " + where + ".xi must be nonzero");
    }
    if (!dir.zeta.empty() && static_cast<int>(dir.zeta.size()) != dim) {
      throw std::invalid_argument("bank config: " + where + ".zeta must have length n");
    }
    if (dir.moments < 1) {
      throw std::invalid_argument("bank config: " + where + ".m must be >= 1");
    }
  }
  if (!coset_reps.empty()) {
    if (static_cast<int>(coset_reps.size()) != lattice_size()) {
      throw std::invalid_argument("bank config: \"coset_reps\" must list exactly lambda^n representatives");
    }
    std::map<MultiIndex, int> seen;
    for (std::size_t i = 0; i < coset_reps.size(); ++i) {
      if (static_cast<int>(coset_reps[i].size()) != dim) {
        throw std::invalid_argument("bank config: coset_reps[" + std::to_string(i) +
                                    "] must have length n");
      }
      auto [it, inserted] = seen.emplace(reduce_mod(coset_reps[i], lambda), i);
      if (!inserted) {
        throw std::invalid_argument("bank config: coset_reps[" + std::to_string(i) +
                                    "] and coset_reps[" + std::to_string(it->second) +
                                    "] fall in the same residue class");
      }
    }
  }
}

BankConfig BankConfig::resolved() const {
  validate();
  BankConfig out = *this;
  for (DirectionSpec& dir : out.directions) {
    if (dir.zeta.empty()) dir.zeta.assign(dim, 0);
  }
  if (out.coset_reps.empty()) {
    out.coset_reps = default_coset_reps(dim, lambda, out.directions);
  }
  return out;
}

std::vector<MultiIndex> default_coset_reps(int dim, int lambda,
                                           const std::vector<DirectionSpec>& directions) {
  int lattice = 1;
  for (int j = 0; j < dim; ++j) lattice *= lambda;
  if (static_cast<int>(directions.size()) > lattice) {
    throw std::invalid_argument("default_coset_reps: too many directions (N must be <= lambda^n)");
  }

  const std::vector<MultiIndex> canonical = canonical_residues(dim, lambda);
  std::map<MultiIndex, bool> claimed;
  for (const MultiIndex& r : canonical) claimed[r] = false;

  std::vector<MultiIndex> reps;
  reps.reserve(lattice);
  auto try_claim = [&](const MultiIndex& candidate) {
    bool& slot = claimed[reduce_mod(candidate, lambda)];
    if (slot) return false;
    slot = true;
    reps.push_back(candidate);
    return true;
  };
  auto claim_first_canonical = [&]() {
    for (const MultiIndex& r : canonical) {
      if (!claimed[r]) {
        claimed[r] = true;
        reps.push_back(r);
        return;
      }
    }
  };

  for (const DirectionSpec& dir : directions) {
    const MultiIndex zeta = dir.zeta.empty() ? MultiIndex(dim, 0) : dir.zeta;
    MultiIndex eta(dim);
    for (int j = 0; j < dim; ++j) eta[j] = dir.xi[j] + zeta[j];
    if (try_claim(dir.xi) || try_claim(eta) || try_claim(zeta)) continue;
    claim_first_canonical();
  }
  while (static_cast<int>(reps.size()) < lattice) claim_first_canonical();
  return reps;
}

std::vector<const TrigPoly*> FilterBank::all_masks() const {
  std::vector<const TrigPoly*> masks;
  masks.reserve(1 + q_directional.size() + q_complementary.size());
  masks.push_back(&tau);
  for (const TrigPoly& q : q_directional) masks.push_back(&q);
  for (const TrigPoly& q : q_complementary) masks.push_back(&q);
  return masks;
}

TrigPoly build_p(const DirectionSpec& direction, Orientation orientation) {
  const CausalFactor b = half_angle_factor(direction.moments, orientation);
  return b.along_direction(direction.xi);
}

TrigPoly build_g(const DirectionSpec& direction, int lambda, int dim) {
  const int m = direction.moments;
  // (1 - e^{-i xi.w})^m expanded binomially.
  TrigPoly difference = TrigPoly::constant(dim, 1.0) - TrigPoly::monomial(direction.xi);
  TrigPoly power = TrigPoly::constant(dim, 1.0);
  for (int i = 0; i < m; ++i) power = power * difference;

  const double scale = std::pow(static_cast<double>(lambda), -dim / 2.0) * std::pow(2.0, -m);
  TrigPoly g = power.scaled(scale);
  if (!direction.zeta.empty() && !is_zero_index(direction.zeta)) {
    MultiIndex shift(dim);
    for (int j = 0; j < dim; ++j) shift[j] = m * direction.zeta[j];
    g = g.translated(shift);
  }
  return g;
}

TrigPoly build_lowpass(const std::vector<TrigPoly>& p_list, const BankConfig& config) {
  const BankConfig cfg = config.resolved();
  if (static_cast<int>(p_list.size()) != cfg.num_directions()) {
    throw std::invalid_argument("build_lowpass: p_list size must match the direction count");
  }
  const double scale = 1.0 / cfg.dc_gain();
  TrigPoly tau(cfg.dim);
  for (int l = 0; l < cfg.lattice_size(); ++l) {
    const MultiIndex shift = negated(cfg.coset_reps[l]);  // e^{i nu.w}
    if (l < cfg.num_directions()) {
      tau = tau + p_list[l].upsample_arg(cfg.lambda).translated(shift).scaled(scale);
    } else {
      tau = tau + TrigPoly::monomial(shift, scale);
    }
  }
  return tau;
}

FilterBank build_bank(const BankConfig& config) {
  const BankConfig cfg = config.resolved();
  const int n_dirs = cfg.num_directions();
  const double inv_gain = 1.0 / cfg.dc_gain();

  FilterBank bank;
  bank.config = cfg;
  bank.p.reserve(n_dirs);
  bank.g.reserve(n_dirs);
  for (const DirectionSpec& dir : cfg.directions) {
    bank.p.push_back(build_p(dir, cfg.orientation));
    bank.g.push_back(build_g(dir, cfg.lambda, cfg.dim));
  }
  bank.tau = build_lowpass(bank.p, cfg);

  bank.q_directional.reserve(n_dirs);
  for (int l = 0; l < n_dirs; ++l) {
    bank.q_directional.push_back(bank.tau * bank.g[l].upsample_arg(cfg.lambda));
  }

  bank.q_complementary.reserve(cfg.lattice_size());
  for (int mu = 0; mu < cfg.lattice_size(); ++mu) {
    // The mu > N branch is the mu <= N branch with p identically one.
    const TrigPoly p_mu = mu < n_dirs ? bank.p[mu] : TrigPoly::constant(cfg.dim, 1.0);
    const TrigPoly projection =
        (bank.tau * p_mu.upsample_arg(cfg.lambda).reflected()).scaled(inv_gain);
    bank.q_complementary.push_back(
        TrigPoly::monomial(negated(cfg.coset_reps[mu])) - projection);
  }
  return bank;
}

FilterBank build_from_sos(const TrigPoly& tau, const std::vector<TrigPoly>& g_list,
                          const BankConfig& config) {
  BankConfig cfg = config;
  if (cfg.coset_reps.empty()) {
    cfg.coset_reps = canonical_residues(cfg.dim, cfg.lambda);
  }
  if (tau.dim() != cfg.dim) {
    throw std::invalid_argument("build_from_sos: tau dimension must match the config");
  }

  FilterBank bank;
  bank.config = cfg;
  bank.tau = tau;
  bank.g = g_list;
  bank.q_directional.reserve(g_list.size());
  for (const TrigPoly& g : g_list) {
    bank.q_directional.push_back(tau * g.upsample_arg(cfg.lambda));
  }
  bank.q_complementary.reserve(cfg.lattice_size());
  for (const MultiIndex& nu : cfg.coset_reps) {
    const TrigPoly component = tau.polyphase(nu, cfg.lambda);
    bank.q_complementary.push_back(
        TrigPoly::monomial(negated(nu)) -
        tau * component.reflected().upsample_arg(cfg.lambda));
  }
  return bank;
}

}  // namespace twfpd
