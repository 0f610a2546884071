// Periodic discrete signals on Z_N with a continuum-flavored DFT convention:
//
//   fhat(nu) = (L/N) * sum_n f(x_n) e^{-2 pi i nu n / N},   x_n = n L / N,
//   f(x_n)   = (1/L) * sum_nu fhat(nu) e^{+2 pi i nu n / N},
//
// with integer bins nu in [-N/2, N/2) mapped to physical frequencies nu/L.
// Under this normalization the constant bilinear symbol reproduces the
// pointwise product with no stray constants, and Parseval reads
// ||f||_2^2 = (1/L) sum |fhat|^2.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paralab/dyadic.hpp"

namespace paralab {

using complex_t = std::complex<double>;

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

/// Periodic sampling grid: N samples (power of two) over a period of
/// physical length L.
struct Grid {
    int n = 0;
    double period = 1.0;

    Grid() = default;
    Grid(int n_, double period_);

    int nu_min() const { return -n / 2; }
    int nu_max() const { return n / 2 - 1; }  // inclusive
    double freq(int nu) const { return nu / period; }
    double x(int idx) const { return idx * period / n; }
    double bin_width() const { return 1.0 / period; }

    /// Physical frequency of bin nu as an exact rational; only available
    /// when the period is a power of two.
    std::optional<DyadicRational> exact_freq(int nu) const;

    bool operator==(const Grid& o) const = default;
};

// ---------------------------------------------------------------------------
// DiscreteSignal
// ---------------------------------------------------------------------------

/// Immutable complex signal carrying both its samples and its spectrum
/// (centered bin order: index i holds bin nu = i - N/2).
class DiscreteSignal {
  public:
    static DiscreteSignal from_samples(const Grid& g, std::vector<complex_t> samples);
    static DiscreteSignal from_spectrum(const Grid& g, std::vector<complex_t> spectrum);
    static DiscreteSignal zero(const Grid& g);

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.n; }
    const std::vector<complex_t>& samples() const { return samples_; }
    const std::vector<complex_t>& spectrum() const { return spectrum_; }

    complex_t sample(int idx) const { return samples_[idx]; }
    /// Spectrum value at integer bin nu in [-N/2, N/2).
    complex_t spectrum_at(int nu) const { return spectrum_[nu + grid_.n / 2]; }

    bool is_zero(double tol = 0.0) const;

    DiscreteSignal operator+(const DiscreteSignal& o) const;
    DiscreteSignal operator-(const DiscreteSignal& o) const;
    DiscreteSignal scaled_by(complex_t c) const;
    /// Pointwise product of samples.
    DiscreteSignal pointwise(const DiscreteSignal& o) const;

  private:
    DiscreteSignal(Grid g, std::vector<complex_t> samples, std::vector<complex_t> spectrum)
        : grid_(g), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}
    Grid grid_;
    std::vector<complex_t> samples_;
    std::vector<complex_t> spectrum_;
};

// ---------------------------------------------------------------------------
// Norms, pairings, multipliers
// ---------------------------------------------------------------------------

/// Riemann-sum L^p norm: (sum |f(x_n)|^p * L/N)^(1/p); max for p = inf.
double lp_norm(const DiscreteSignal& f, double p);

/// Real duality pairing Re sum u(x) conj(v(x)) L/N.
double pairing(const DiscreteSignal& u, const DiscreteSignal& v);

/// Spectral multiplier with an arbitrary symbol evaluated at physical
/// frequencies nu/L.
DiscreteSignal linear_multiplier(const DiscreteSignal& f,
                                 const std::function<complex_t(double)>& symbol);

/// Frequency interval with optional infinite endpoints, half-open [lo, hi).
struct FreqInterval {
    std::optional<DyadicRational> lo;  // nullopt = -infinity
    std::optional<DyadicRational> hi;  // nullopt = +infinity

    static FreqInterval whole() { return {std::nullopt, std::nullopt}; }
    static FreqInterval bounded(DyadicRational a, DyadicRational b) { return {a, b}; }

    bool empty() const { return lo && hi && !(*lo < *hi); }
    bool contains(const DyadicRational& x) const {
        if (lo && x < *lo) return false;
        if (hi && !(x < *hi)) return false;
        return true;
    }
    /// Membership of bin nu on grid g; exact when the period is a power of
    /// two, long-double comparison otherwise.
    bool contains_bin(const Grid& g, int nu) const;
    bool intersects(const FreqInterval& o) const;
};

/// Sharp frequency projection M_I: zero the spectrum outside the interval.
DiscreteSignal interval_multiplier(const DiscreteSignal& f, const FreqInterval& I);

/// Zero all bins outside [nu_lo, nu_hi) (integer bin indices).
DiscreteSignal band_project(const DiscreteSignal& f, int nu_lo, int nu_hi);

/// Fraction of spectral l2 mass outside [nu_lo, nu_hi).
double spectral_mass_outside(const DiscreteSignal& f, int nu_lo, int nu_hi);

// ---------------------------------------------------------------------------
// Maximal function and square function
// ---------------------------------------------------------------------------

/// Discrete centered Hardy-Littlewood maximal function: sup over dyadic
/// window radii w in {0, 1, 2, 4, ..., N/2} of the windowed averages of |f|
/// with periodic wraparound.
DiscreteSignal maximal_function(const DiscreteSignal& f);

/// || (sum_I |M_I f|^2)^(1/2) ||_p / ||f||_p for pairwise disjoint
/// frequency intervals. The classical bound lives in 2 < p < infinity;
/// p = 2 is accepted as a Parseval diagnostic.
double square_function_ratio(const DiscreteSignal& f, std::span<const FreqInterval> intervals,
                             double p);

// ---------------------------------------------------------------------------
// Test-function generators
// ---------------------------------------------------------------------------

/// Periodized Gaussian exp(-(x-center)^2 / width^2). If the tails exceed
/// 1e-10 relatively at the period boundary a warning is reported.
DiscreteSignal make_gaussian(const Grid& g, double center, double width,
                             std::string* warning = nullptr);

/// Gaussian bump modulated to frequency freq0 (physical units).
DiscreteSignal make_modulated_bump(const Grid& g, double center, double width, double freq0,
                                   std::string* warning = nullptr);

/// I.i.d. complex Gaussian spectrum on bins [band_lo, band_hi), zero
/// elsewhere. Deterministic per seed.
DiscreteSignal make_random_trig(const Grid& g, int band_lo, int band_hi, std::uint64_t seed);

/// Narrow spike of the given width (in samples) centered at `center`.
DiscreteSignal make_spike(const Grid& g, double center, int width_samples = 1);

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// CSV with header "index,re,im".
void write_signal_csv(std::ostream& os, const DiscreteSignal& f);
DiscreteSignal read_signal_csv(std::istream& is, double period);

/// Little-endian binary dump: header {N: u32, L: f64} then 2N f64
/// (re, im interleaved, sample domain).
void write_signal_binary(std::ostream& os, const DiscreteSignal& f);
DiscreteSignal read_signal_binary(std::istream& is);

}  // namespace paralab
