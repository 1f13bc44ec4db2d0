#include "twfpd/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twfpd {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("TrigPoly: dimension mismatch");
  }
}

}  // namespace

TrigPoly::TrigPoly(int dim) : dim_(dim) {
  if (dim < 1) {
    throw std::invalid_argument("TrigPoly: dimension must be positive");
  }
}

TrigPoly::TrigPoly(int dim, std::map<MultiIndex, double> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim < 1) {
    throw std::invalid_argument("TrigPoly: dimension must be positive");
  }
  for (const auto& [k, c] : terms_) {
    if (static_cast<int>(k.size()) != dim_) {
      throw std::invalid_argument("TrigPoly: index length does not match dimension");
    }
    (void)c;
  }
  prune();
}

TrigPoly TrigPoly::constant(int dim, double value) {
  TrigPoly p(dim);
  p.terms_[MultiIndex(dim, 0)] = value;
  p.prune();
  return p;
}

TrigPoly TrigPoly::monomial(MultiIndex k, double coeff) {
  TrigPoly p(static_cast<int>(k.size()));
  p.terms_[std::move(k)] = coeff;
  p.prune();
  return p;
}

double TrigPoly::coeff(const MultiIndex& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0.0 : it->second;
}

double TrigPoly::coeff_sum() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c;
  return s;
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::complex<double> TrigPoly::eval(std::span<const double> omega) const {
  require_same_dim(static_cast<int>(omega.size()), dim_);
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : terms_) {
    double phase = 0.0;
    for (int j = 0; j < dim_; ++j) phase += k[j] * omega[j];
    acc += c * std::exp(std::complex<double>(0.0, -phase));
  }
  return acc;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
  require_same_dim(dim_, rhs.dim_);
  TrigPoly out(dim_);
  out.terms_ = terms_;
  for (const auto& [k, c] : rhs.terms_) out.terms_[k] += c;
  out.prune();
  return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
  require_same_dim(dim_, rhs.dim_);
  TrigPoly out(dim_);
  out.terms_ = terms_;
  for (const auto& [k, c] : rhs.terms_) out.terms_[k] -= c;
  out.prune();
  return out;
}

TrigPoly TrigPoly::operator-() const { return scaled(-1.0); }

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
  require_same_dim(dim_, rhs.dim_);
  // Flat accumulate-and-merge; noticeably faster than per-product map
  // inserts for the polynomial sizes seen in bank verification.
  std::vector<std::pair<MultiIndex, double>> prod;
  prod.reserve(terms_.size() * rhs.terms_.size());
  MultiIndex key(dim_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : rhs.terms_) {
      for (int j = 0; j < dim_; ++j) key[j] = ka[j] + kb[j];
      prod.emplace_back(key, ca * cb);
    }
  }
  std::sort(prod.begin(), prod.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  TrigPoly out(dim_);
  auto hint = out.terms_.end();
  std::size_t i = 0;
  while (i < prod.size()) {
    double c = prod[i].second;
    std::size_t j = i + 1;
    while (j < prod.size() && prod[j].first == prod[i].first) c += prod[j++].second;
    hint = out.terms_.emplace_hint(hint, std::move(prod[i].first), c);
    i = j;
  }
  out.prune();
  return out;
}

TrigPoly TrigPoly::scaled(double c) const {
  TrigPoly out(dim_);
  for (const auto& [k, v] : terms_) out.terms_[k] = c * v;
  out.prune();
  return out;
}

TrigPoly TrigPoly::reflected() const {
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) {
    MultiIndex neg(dim_);
    for (int j = 0; j < dim_; ++j) neg[j] = -k[j];
    out.terms_[std::move(neg)] = c;
  }
  return out;
}

TrigPoly TrigPoly::translated(const MultiIndex& d) const {
  require_same_dim(static_cast<int>(d.size()), dim_);
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) {
    MultiIndex moved(dim_);
    for (int j = 0; j < dim_; ++j) moved[j] = k[j] + d[j];
    out.terms_[std::move(moved)] = c;
  }
  return out;
}

TrigPoly TrigPoly::upsample_arg(int lambda) const {
  if (lambda < 1) {
    throw std::invalid_argument("upsample_arg: lambda must be >= 1");
  }
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) {
    MultiIndex stretched(dim_);
    for (int j = 0; j < dim_; ++j) stretched[j] = lambda * k[j];
    out.terms_[std::move(stretched)] = c;
  }
  return out;
}

TrigPoly TrigPoly::polyphase(const MultiIndex& nu, int lambda) const {
  require_same_dim(static_cast<int>(nu.size()), dim_);
  if (lambda < 2) {
    throw std::invalid_argument("polyphase: lambda must be >= 2");
  }
  // Taps at lambda*m - nu contribute coefficient c to index m.
  TrigPoly out(dim_);
  for (const auto& [k, c] : terms_) {
    MultiIndex m(dim_);
    bool on_coset = true;
    for (int j = 0; j < dim_; ++j) {
      int shifted = k[j] + nu[j];
      if (shifted % lambda != 0) {
        on_coset = false;
        break;
      }
      m[j] = shifted / lambda;
    }
    if (on_coset) out.terms_[std::move(m)] = c;
  }
  return out;
}

TrigPoly TrigPoly::squared_modulus() const { return *this * reflected(); }

int TrigPoly::support_radius() const {
  int r = 0;
  for (const auto& [k, c] : terms_) {
    for (int j = 0; j < dim_; ++j) r = std::max(r, std::abs(k[j]));
    (void)c;
  }
  return r;
}

namespace {

// Enumerates all alpha in N^n with |alpha| = order and reports the magnitude
// of the corresponding mixed partial derivative at omega0.
bool some_derivative_exceeds(const std::map<MultiIndex, double>& terms, int dim,
                             std::span<const double> omega0, int order,
                             double tol, std::vector<int>& alpha, int pos,
                             int remaining) {
  if (pos == dim - 1) {
    alpha[pos] = remaining;
    std::complex<double> acc = 0.0;
    for (const auto& [k, c] : terms) {
      std::complex<double> term = c;
      double phase = 0.0;
      for (int j = 0; j < dim; ++j) {
        phase += k[j] * omega0[j];
        const std::complex<double> base(0.0, -static_cast<double>(k[j]));
        for (int e = 0; e < alpha[j]; ++e) term *= base;
      }
      acc += term * std::exp(std::complex<double>(0.0, -phase));
    }
    return std::abs(acc) > tol;
  }
  for (int v = 0; v <= remaining; ++v) {
    alpha[pos] = v;
    if (some_derivative_exceeds(terms, dim, omega0, order, tol, alpha, pos + 1,
                                remaining - v)) {
      return true;
    }
  }
  return false;
}

}  // namespace

int TrigPoly::root_order_at(std::span<const double> omega0, int max_order,
                            double tol) const {
  require_same_dim(static_cast<int>(omega0.size()), dim_);
  if (max_order < 0) {
    throw std::invalid_argument("root_order_at: max_order must be >= 0");
  }
  std::vector<int> alpha(dim_, 0);
  for (int order = 0; order <= max_order; ++order) {
    if (some_derivative_exceeds(terms_, dim_, omega0, order, tol, alpha, 0,
                                order)) {
      return order;
    }
  }
  return max_order + 1;
}

void TrigPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= kPruneTol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

FrequencySet FrequencySet::canonical(int dim, int lambda) {
  if (dim < 1 || lambda < 2) {
    throw std::invalid_argument("FrequencySet: need dim >= 1 and lambda >= 2");
  }
  FrequencySet gamma;
  gamma.dim = dim;
  gamma.lambda = lambda;
  std::vector<int> g(dim, 0);
  const double step = 2.0 * std::numbers::pi / lambda;
  while (true) {
    std::vector<double> point(dim);
    for (int j = 0; j < dim; ++j) point[j] = step * g[j];
    gamma.points.push_back(std::move(point));
    int j = dim - 1;
    while (j >= 0 && ++g[j] == lambda) g[j--] = 0;
    if (j < 0) break;
  }
  return gamma;
}

int vanishing_moments(const TrigPoly& p, int max_order, double tol) {
  std::vector<double> origin(p.dim(), 0.0);
  return p.root_order_at(origin, max_order, tol);
}

int accuracy(const TrigPoly& p, int lambda, int max_order, double tol) {
  const FrequencySet gamma = FrequencySet::canonical(p.dim(), lambda);
  int best = max_order + 1;
  for (std::size_t i = 1; i < gamma.points.size(); ++i) {
    best = std::min(best, p.root_order_at(gamma.points[i], max_order, tol));
  }
  return best;
}

int flatness(const TrigPoly& p, int lambda, int max_order, double tol) {
  const double dc = std::pow(static_cast<double>(lambda), p.dim() / 2.0);
  const TrigPoly shifted = p - TrigPoly::constant(p.dim(), dc);
  std::vector<double> origin(p.dim(), 0.0);
  return shifted.root_order_at(origin, max_order, tol);
}

int root_order_c(const TrigPoly& p, int lambda, int max_order, double tol) {
  const double dc = std::pow(static_cast<double>(lambda), p.dim());
  const TrigPoly shifted = p.squared_modulus() - TrigPoly::constant(p.dim(), dc);
  std::vector<double> origin(p.dim(), 0.0);
  return shifted.root_order_at(origin, max_order, tol);
}

}  // namespace twfpd
