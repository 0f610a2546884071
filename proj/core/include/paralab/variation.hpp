// V^r variation norms of finite sequences, frequency-window averaging
// operators, and the empirical Lepingle-type ratio.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "paralab/signal.hpp"

namespace paralab {

// ---------------------------------------------------------------------------
// Finite sequences and V^r
// ---------------------------------------------------------------------------

struct FiniteSequence {
    std::vector<complex_t> values;
    std::optional<std::vector<double>> index_labels;  // sample points, if any
};

/// ||h||_{V^r} = sup |h| + sup over increasing chains of
/// (sum |increments|^r)^(1/r), computed exactly for the finite sequence by
/// dynamic programming in the r-th power domain. Requires r >= 1.
double v_norm(const FiniteSequence& h, double r);

/// Brute force over all increasing index chains; reference for v_norm.
/// Capped at length 16.
double v_norm_oracle(const FiniteSequence& h, double r);

// ---------------------------------------------------------------------------
// Frequency windows
// ---------------------------------------------------------------------------

/// Sampled even-resolution profile on [-2, 2], linearly interpolated, zero
/// outside. Stands in for the compactly supported window of the averaging
/// operators.
class FrequencyWindow {
  public:
    /// `samples` are values at the uniform nodes -2, -2+h, ..., 2.
    explicit FrequencyWindow(std::vector<double> samples);

    double operator()(double x) const;
    int resolution() const { return static_cast<int>(samples_.size()); }

    /// 1 on [-1, 1], raised-cosine taper to 0 on [-2,-1] and [1,2].
    static FrequencyWindow plateau(int nodes = 257);
    /// Indicator of [-1, 1] (sampled).
    static FrequencyWindow indicator(int nodes = 257);

  private:
    std::vector<double> samples_;
};

// ---------------------------------------------------------------------------
// Averages and the Lepingle ratio
// ---------------------------------------------------------------------------

/// Smallness condition tying the variation exponent r = 2 + epsilon to an
/// L^p exponent: |1/2 - 1/p| < 1/(2 + epsilon). The multiplier-norm
/// control by variation norms needs it; callers combining V^(2+eps)
/// estimates with an L^p bound validate against this.
inline constexpr double kDefaultVariationEpsilon = 0.5;
inline bool variation_exponent_compatible(double p, double epsilon = kDefaultVariationEpsilon) {
    return p > 1.0 && epsilon > 0.0 && std::abs(0.5 - 1.0 / p) < 1.0 / (2.0 + epsilon);
}

/// A g(r)(j) = (1/L) sum_nu ghat(nu) phi(2^j nu/L) e^{2 pi i (nu/L) r} for
/// j in [j_lo, j_hi]. Errors when 2^-j falls below one frequency bin.
FiniteSequence averages(const DiscreteSignal& g, const FrequencyWindow& phi, double shift,
                        int j_lo, int j_hi);

/// || x -> v_norm(A g(x)(.), r) ||_p / ||g||_p where the averages at grid
/// point x use shift x. The j-range defaults to [0, floor(log2 L)].
double lepingle_ratio(const DiscreteSignal& g, double p, double r, const FrequencyWindow& phi,
                      std::optional<int> j_lo = std::nullopt,
                      std::optional<int> j_hi = std::nullopt);

}  // namespace paralab
