#pragma once

#include <cstdint>
#include <vector>

#include "twfpd/bank.hpp"
#include "twfpd/signal.hpp"

namespace twfpd {

/// Multiplication counter, following the accounting convention that a
/// convolution by a filter with t nonzero taps over P output points costs
/// t * P multiplications (additions are not counted).
struct OpCounter {
  std::uint64_t multiplies = 0;
};

/// A mask's filter prepared for convolution: parallel arrays of tap
/// offsets and values, in deterministic (lexicographic) order.
struct SparseFilter {
  int dim = 1;
  std::vector<MultiIndex> offsets;
  std::vector<double> values;

  static SparseFilter from_mask(const TrigPoly& mask);
  SparseFilter reflected() const;
  SparseFilter upsampled(int lambda) const;
  std::size_t taps() const { return values.size(); }
};

/// (f * x)(k) = sum_m f(m) x(k - m), indices modulo the shape. Accumulation
/// order per output point is fixed, so results are identical for any thread
/// count.
Signal convolve(const SparseFilter& f, const Signal& x, OpCounter* counter = nullptr);
/// Convolution by the reflected filter, i.e. correlation.
Signal correlate(const SparseFilter& f, const Signal& x, OpCounter* counter = nullptr);

/// x_down(k) = x(lambda k); every axis must be divisible by lambda.
Signal downsample(const Signal& x, int lambda);
/// Places x(k) at lambda k, zero elsewhere.
Signal upsample(const Signal& x, int lambda);

/// Per-step multiplication counts of one analysis level.
struct AnalysisCounters {
  OpCounter lowpass;        // step (i)
  OpCounter directional;    // step (ii)
  OpCounter complementary;  // step (iii)
  std::uint64_t total() const {
    return lowpass.multiplies + directional.multiplies + complementary.multiplies;
  }
};

struct SynthesisCounters {
  OpCounter lowpass;
  OpCounter directional;
  OpCounter complementary;
  std::uint64_t total() const {
    return lowpass.multiplies + directional.multiplies + complementary.multiplies;
  }
};

struct LevelCoefficients {
  Signal coarse;
  std::vector<Signal> directional;
  std::vector<Signal> complementary;
};

/// One analysis level: coarse x_j from lowpass correlation and
/// downsampling, directional details from correlation at the coarse rate,
/// complementary details as the coset-split residual x_{j+1} - h*(x_j up).
LevelCoefficients analyze_level(const FilterBank& bank, const Signal& x,
                                AnalysisCounters* counters = nullptr);

/// Standard synthesis: per-mask convolution of the upsampled coefficients.
Signal synth_standard(const FilterBank& bank, const Signal& coarse,
                      const std::vector<Signal>& directional,
                      const std::vector<Signal>& complementary,
                      SynthesisCounters* counters = nullptr);

/// Laplacian-pyramid synthesis: reverses the residual split using the
/// coarse and complementary coefficients only.
Signal synth_lp(const FilterBank& bank, const Signal& coarse,
                const std::vector<Signal>& complementary,
                OpCounter* counter = nullptr);

struct LevelDetail {
  std::vector<Signal> directional;
  std::vector<Signal> complementary;
};

/// Multi-level decomposition. details[j] holds the detail coefficients of
/// level j (finest j = levels); coarse is the deepest coarse signal x_0.
struct Decomposition {
  int levels = 0;
  Signal coarse;
  std::vector<LevelDetail> details;
};

enum class SynthesisMode { kStandard, kLp };

SynthesisMode synthesis_mode_from_string(const std::string& s);
const char* to_string(SynthesisMode mode);

/// levels+1 applications of analyze_level; every axis must be divisible by
/// lambda^{levels+1}.
Decomposition analyze(const FilterBank& bank, const Signal& x, int levels,
                      AnalysisCounters* counters = nullptr);
Signal synthesize(const FilterBank& bank, const Decomposition& dec, SynthesisMode mode,
                  SynthesisCounters* counters = nullptr);

namespace reference {

/// Serial reference convolution, kept as the oracle for the parallel kernel.
Signal convolve(const SparseFilter& f, const Signal& x);

}  // namespace reference

}  // namespace twfpd
