#include "twfpd/transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace twfpd {

namespace {

inline int wrap(int v, int extent) {
  const int r = v % extent;
  return r < 0 ? r + extent : r;
}

void require_dim(const SparseFilter& f, const Signal& x) {
  if (f.dim != x.dim()) {
    throw std::invalid_argument("convolve: filter and signal dimensions differ");
  }
}

void require_divisible(const Signal& x, int lambda, const char* who) {
  for (std::size_t s : x.shape) {
    if (s % static_cast<std::size_t>(lambda) != 0) {
      throw std::invalid_argument(std::string(who) +
                                  ": every axis must be divisible by lambda");
    }
  }
}

// Coordinates of flat index `rest`, written into coords.
inline void decode(std::size_t rest, const std::vector<std::size_t>& shape,
                   std::vector<int>& coords) {
  for (int j = static_cast<int>(shape.size()) - 1; j >= 0; --j) {
    coords[j] = static_cast<int>(rest % shape[j]);
    rest /= shape[j];
  }
}

}  // namespace

SparseFilter SparseFilter::from_mask(const TrigPoly& mask) {
  SparseFilter f;
  f.dim = mask.dim();
  f.offsets.reserve(mask.term_count());
  f.values.reserve(mask.term_count());
  for (const auto& [k, c] : mask.terms()) {
    f.offsets.push_back(k);
    f.values.push_back(c);
  }
  return f;
}

SparseFilter SparseFilter::reflected() const {
  SparseFilter f;
  f.dim = dim;
  f.offsets.reserve(offsets.size());
  f.values = values;
  for (const MultiIndex& k : offsets) {
    MultiIndex neg(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
    f.offsets.push_back(std::move(neg));
  }
  return f;
}

SparseFilter SparseFilter::upsampled(int lambda) const {
  SparseFilter f;
  f.dim = dim;
  f.offsets.reserve(offsets.size());
  f.values = values;
  for (const MultiIndex& k : offsets) {
    MultiIndex stretched(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) stretched[j] = lambda * k[j];
    f.offsets.push_back(std::move(stretched));
  }
  return f;
}

Signal convolve(const SparseFilter& f, const Signal& x, OpCounter* counter) {
  require_dim(f, x);
  const int dim = x.dim();
  const std::vector<std::size_t> strides = x.strides();
  const std::int64_t total = static_cast<std::int64_t>(x.size());
  const std::size_t taps = f.taps();

  Signal out = Signal::zeros(x.shape);
#pragma omp parallel
  {
    std::vector<int> coords(dim);
#pragma omp for schedule(static)
    for (std::int64_t o = 0; o < total; ++o) {
      decode(static_cast<std::size_t>(o), x.shape, coords);
      double acc = 0.0;
      for (std::size_t t = 0; t < taps; ++t) {
        const MultiIndex& off = f.offsets[t];
        std::size_t flat = 0;
        for (int j = 0; j < dim; ++j) {
          flat += static_cast<std::size_t>(
                      wrap(coords[j] - off[j], static_cast<int>(x.shape[j]))) *
                  strides[j];
        }
        acc += f.values[t] * x.data[flat];
      }
      out.data[o] = acc;
    }
  }
  if (counter != nullptr) {
    counter->multiplies += static_cast<std::uint64_t>(taps) * x.size();
  }
  return out;
}

Signal correlate(const SparseFilter& f, const Signal& x, OpCounter* counter) {
  return convolve(f.reflected(), x, counter);
}

namespace reference {

Signal convolve(const SparseFilter& f, const Signal& x) {
  require_dim(f, x);
  const int dim = x.dim();
  Signal out = Signal::zeros(x.shape);
  std::vector<int> coords(dim, 0);
  std::vector<int> probe(dim);
  for (std::size_t o = 0; o < x.size(); ++o) {
    double acc = 0.0;
    for (std::size_t t = 0; t < f.taps(); ++t) {
      for (int j = 0; j < dim; ++j) probe[j] = coords[j] - f.offsets[t][j];
      acc += f.values[t] * x.at_wrapped(probe);
    }
    out.data[o] = acc;
    int j = dim - 1;
    while (j >= 0 && ++coords[j] == static_cast<int>(x.shape[j])) coords[j--] = 0;
  }
  return out;
}

}  // namespace reference

Signal downsample(const Signal& x, int lambda) {
  if (lambda < 1) throw std::invalid_argument("downsample: lambda must be >= 1");
  require_divisible(x, lambda, "downsample");
  const int dim = x.dim();
  std::vector<std::size_t> out_shape(x.shape);
  for (std::size_t& s : out_shape) s /= static_cast<std::size_t>(lambda);
  Signal out = Signal::zeros(out_shape);
  std::vector<int> coords(dim, 0);
  std::vector<int> src(dim);
  for (std::size_t o = 0; o < out.size(); ++o) {
    for (int j = 0; j < dim; ++j) src[j] = lambda * coords[j];
    out.data[o] = x.at_wrapped(src);
    int j = dim - 1;
    while (j >= 0 && ++coords[j] == static_cast<int>(out_shape[j])) coords[j--] = 0;
  }
  return out;
}

Signal upsample(const Signal& x, int lambda) {
  if (lambda < 1) throw std::invalid_argument("upsample: lambda must be >= 1");
  const int dim = x.dim();
  std::vector<std::size_t> out_shape(x.shape);
  for (std::size_t& s : out_shape) s *= static_cast<std::size_t>(lambda);
  Signal out = Signal::zeros(out_shape);
  const std::vector<std::size_t> out_strides = out.strides();
  std::vector<int> coords(dim, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t flat = 0;
    for (int j = 0; j < dim; ++j) {
      flat += static_cast<std::size_t>(lambda * coords[j]) * out_strides[j];
    }
    out.data[flat] = x.data[i];
    int j = dim - 1;
    while (j >= 0 && ++coords[j] == static_cast<int>(x.shape[j])) coords[j--] = 0;
  }
  return out;
}

namespace {

struct BankFilters {
  SparseFilter lowpass;
  std::vector<SparseFilter> highpass;

  explicit BankFilters(const FilterBank& bank)
      : lowpass(SparseFilter::from_mask(bank.tau)) {
    highpass.reserve(bank.g.size());
    for (const TrigPoly& g : bank.g) highpass.push_back(SparseFilter::from_mask(g));
  }
};

// Extracts the coset component y(k) = r(lambda k - nu).
Signal coset_extract(const Signal& r, int lambda, const MultiIndex& nu) {
  const int dim = r.dim();
  std::vector<std::size_t> out_shape(r.shape);
  for (std::size_t& s : out_shape) s /= static_cast<std::size_t>(lambda);
  Signal out = Signal::zeros(out_shape);
  std::vector<int> coords(dim, 0);
  std::vector<int> src(dim);
  for (std::size_t o = 0; o < out.size(); ++o) {
    for (int j = 0; j < dim; ++j) src[j] = lambda * coords[j] - nu[j];
    out.data[o] = r.at_wrapped(src);
    int j = dim - 1;
    while (j >= 0 && ++coords[j] == static_cast<int>(out_shape[j])) coords[j--] = 0;
  }
  return out;
}

// Scatters coset components back: out(lambda k - nu) += d_mu(k) over all mu.
// The representatives cover each output index exactly once.
void coset_scatter(Signal& out, const std::vector<Signal>& parts, int lambda,
                   const std::vector<MultiIndex>& reps) {
  const int dim = out.dim();
  const std::vector<std::size_t> out_strides = out.strides();
  for (std::size_t mu = 0; mu < parts.size(); ++mu) {
    const Signal& part = parts[mu];
    std::vector<int> coords(dim, 0);
    for (std::size_t i = 0; i < part.size(); ++i) {
      std::size_t flat = 0;
      for (int j = 0; j < dim; ++j) {
        const int extent = static_cast<int>(out.shape[j]);
        flat += static_cast<std::size_t>(
                    wrap(lambda * coords[j] - reps[mu][j], extent)) *
                out_strides[j];
      }
      out.data[flat] += part.data[i];
      int j = dim - 1;
      while (j >= 0 && ++coords[j] == static_cast<int>(part.shape[j])) coords[j--] = 0;
    }
  }
}

void require_level_shapes(const FilterBank& bank, const Signal& coarse,
                          const std::vector<Signal>* directional,
                          const std::vector<Signal>& complementary) {
  if (directional != nullptr &&
      static_cast<int>(directional->size()) != bank.num_directions()) {
    throw std::invalid_argument("synthesis: directional detail count mismatch");
  }
  if (static_cast<int>(complementary.size()) != bank.lattice_size()) {
    throw std::invalid_argument("synthesis: a complementary detail is required for every coset");
  }
  if (directional != nullptr) {
    for (const Signal& d : *directional) {
      if (d.shape != coarse.shape) {
        throw std::invalid_argument("synthesis: detail shape differs from the coarse shape");
      }
    }
  }
  for (const Signal& d : complementary) {
    if (d.shape != coarse.shape) {
      throw std::invalid_argument("synthesis: detail shape differs from the coarse shape");
    }
  }
}

}  // namespace

LevelCoefficients analyze_level(const FilterBank& bank, const Signal& x,
                                AnalysisCounters* counters) {
  if (x.dim() != bank.tau.dim()) {
    throw std::invalid_argument("analyze_level: signal dimension does not match the bank");
  }
  require_divisible(x, bank.config.lambda, "analyze_level");
  const int lambda = bank.config.lambda;
  const BankFilters filters(bank);

  LevelCoefficients out;

  // (i) coarse coefficients
  OpCounter* c_low = counters != nullptr ? &counters->lowpass : nullptr;
  out.coarse = downsample(correlate(filters.lowpass, x, c_low), lambda);

  // (ii) directional details at the coarse rate
  OpCounter* c_dir = counters != nullptr ? &counters->directional : nullptr;
  out.directional.reserve(filters.highpass.size());
  for (const SparseFilter& h : filters.highpass) {
    out.directional.push_back(correlate(h, out.coarse, c_dir));
  }

  // (iii) coset-split residual
  OpCounter* c_comp = counters != nullptr ? &counters->complementary : nullptr;
  const Signal reprojected = convolve(filters.lowpass, upsample(out.coarse, lambda), c_comp);
  Signal residual = x;
  for (std::size_t i = 0; i < residual.size(); ++i) residual.data[i] -= reprojected.data[i];
  out.complementary.reserve(bank.config.coset_reps.size());
  for (const MultiIndex& nu : bank.config.coset_reps) {
    out.complementary.push_back(coset_extract(residual, lambda, nu));
  }
  return out;
}

Signal synth_standard(const FilterBank& bank, const Signal& coarse,
                      const std::vector<Signal>& directional,
                      const std::vector<Signal>& complementary,
                      SynthesisCounters* counters) {
  require_level_shapes(bank, coarse, &directional, complementary);
  const int lambda = bank.config.lambda;
  const BankFilters filters(bank);

  OpCounter* c_low = counters != nullptr ? &counters->lowpass : nullptr;
  Signal out = convolve(filters.lowpass, upsample(coarse, lambda), c_low);

  OpCounter* c_dir = counters != nullptr ? &counters->directional : nullptr;
  for (std::size_t l = 0; l < directional.size(); ++l) {
    const Signal lifted =
        convolve(filters.highpass[l].upsampled(lambda), upsample(directional[l], lambda), c_dir);
    const Signal contribution = convolve(filters.lowpass, lifted, c_dir);
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += contribution.data[i];
  }

  // Complementary contribution: mosaic D of the details minus its lowpass
  // reprojection, mirroring the residual split of step (iii).
  OpCounter* c_comp = counters != nullptr ? &counters->complementary : nullptr;
  Signal mosaic = Signal::zeros(out.shape);
  coset_scatter(mosaic, complementary, lambda, bank.config.coset_reps);
  const Signal correlated = correlate(filters.lowpass, mosaic, c_comp);
  const Signal reprojected =
      convolve(filters.lowpass, upsample(downsample(correlated, lambda), lambda), c_comp);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data[i] += mosaic.data[i] - reprojected.data[i];
  }
  return out;
}

Signal synth_lp(const FilterBank& bank, const Signal& coarse,
                const std::vector<Signal>& complementary, OpCounter* counter) {
  require_level_shapes(bank, coarse, nullptr, complementary);
  const int lambda = bank.config.lambda;
  const SparseFilter lowpass = SparseFilter::from_mask(bank.tau);

  Signal out = convolve(lowpass, upsample(coarse, lambda), counter);
  // (iv) out(lambda k - nu_mu) += d_mu(k); exactly the reverse of the
  // residual split.
  coset_scatter(out, complementary, lambda, bank.config.coset_reps);
  return out;
}

SynthesisMode synthesis_mode_from_string(const std::string& s) {
  if (s == "standard") return SynthesisMode::kStandard;
  if (s == "lp") return SynthesisMode::kLp;
  throw std::invalid_argument("mode: expected \"standard\" or \"lp\", got \"" + s + "\"");
}

const char* to_string(SynthesisMode mode) {
  return mode == SynthesisMode::kStandard ? "standard" : "lp";
}

Decomposition analyze(const FilterBank& bank, const Signal& x, int levels,
                      AnalysisCounters* counters) {
  if (levels < 0) throw std::invalid_argument("analyze: levels must be >= 0");
  std::size_t factor = 1;
  for (int j = 0; j <= levels; ++j) factor *= static_cast<std::size_t>(bank.config.lambda);
  for (std::size_t s : x.shape) {
    if (s % factor != 0) {
      throw std::invalid_argument("analyze: every axis must be divisible by lambda^(levels+1)");
    }
  }

  Decomposition dec;
  dec.levels = levels;
  dec.details.resize(levels + 1);
  Signal current = x;
  for (int j = levels; j >= 0; --j) {
    LevelCoefficients level = analyze_level(bank, current, counters);
    dec.details[j].directional = std::move(level.directional);
    dec.details[j].complementary = std::move(level.complementary);
    current = std::move(level.coarse);
  }
  dec.coarse = std::move(current);
  return dec;
}

Signal synthesize(const FilterBank& bank, const Decomposition& dec, SynthesisMode mode,
                  SynthesisCounters* counters) {
  Signal current = dec.coarse;
  for (int j = 0; j <= dec.levels; ++j) {
    const LevelDetail& detail = dec.details[j];
    if (mode == SynthesisMode::kStandard) {
      current = synth_standard(bank, current, detail.directional, detail.complementary,
                               counters);
    } else {
      OpCounter* counter = counters != nullptr ? &counters->lowpass : nullptr;
      current = synth_lp(bank, current, detail.complementary, counter);
    }
  }
  return current;
}

}  // namespace twfpd
