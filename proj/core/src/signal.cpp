#include "paralab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace paralab {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------
// Radix-2 FFT. Power-of-two sizes only (a Grid invariant), twiddles cached
// per size behind a mutex so transforms stay deterministic and thread-safe.
// ---------------------------------------------------------------------------

const std::vector<complex_t>& twiddles(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<complex_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<complex_t> w(n / 2);
    for (int k = 0; k < n / 2; ++k) {
        double ang = -2.0 * std::numbers::pi * k / n;
        w[k] = complex_t(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

// In-place forward DFT (e^{-2 pi i k n / N}), no scaling.
void fft_forward(std::vector<complex_t>& a) {
    int n = static_cast<int>(a.size());
    if (n <= 1) return;
    // bit reversal
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& w = twiddles(n);
    for (int len = 2; len <= n; len <<= 1) {
        int stride = n / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < len / 2; ++k) {
                complex_t u = a[i + k];
                complex_t v = a[i + k + len / 2] * w[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void fft_inverse(std::vector<complex_t>& a) {
    for (auto& z : a) z = std::conj(z);
    fft_forward(a);
    double inv = 1.0 / static_cast<double>(a.size());
    for (auto& z : a) z = std::conj(z) * inv;
}

// centered index <-> natural DFT bin
int natural_bin(int nu, int n) { return nu >= 0 ? nu : nu + n; }

std::vector<complex_t> spectrum_from_samples(const Grid& g, const std::vector<complex_t>& samples) {
    std::vector<complex_t> work = samples;
    fft_forward(work);
    double scale = g.period / g.n;
    std::vector<complex_t> spec(g.n);
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu)
        spec[nu + g.n / 2] = work[natural_bin(nu, g.n)] * scale;
    return spec;
}

std::vector<complex_t> samples_from_spectrum(const Grid& g, const std::vector<complex_t>& spec) {
    std::vector<complex_t> work(g.n);
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu)
        work[natural_bin(nu, g.n)] = spec[nu + g.n / 2];
    fft_inverse(work);
    double scale = g.n / g.period;
    for (auto& z : work) z *= scale;
    return work;
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid / DiscreteSignal
// ---------------------------------------------------------------------------

Grid::Grid(int n_, double period_) : n(n_), period(period_) {
    if (!is_pow2(n)) throw std::invalid_argument("Grid: N must be a power of two");
    if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("Grid: bad period");
}

std::optional<DyadicRational> Grid::exact_freq(int nu) const {
    int exp;
    double mant = std::frexp(period, &exp);
    if (mant != 0.5) return std::nullopt;  // period not a power of two
    // period = 2^(exp-1); nu / period = nu * 2^(1-exp)
    return DyadicRational::scaled(nu, 1 - exp);
}

DiscreteSignal DiscreteSignal::from_samples(const Grid& g, std::vector<complex_t> samples) {
    if (static_cast<int>(samples.size()) != g.n)
        throw std::invalid_argument("from_samples: size mismatch");
    auto spec = spectrum_from_samples(g, samples);
    return DiscreteSignal(g, std::move(samples), std::move(spec));
}

DiscreteSignal DiscreteSignal::from_spectrum(const Grid& g, std::vector<complex_t> spectrum) {
    if (static_cast<int>(spectrum.size()) != g.n)
        throw std::invalid_argument("from_spectrum: size mismatch");
    auto smp = samples_from_spectrum(g, spectrum);
    return DiscreteSignal(g, std::move(smp), std::move(spectrum));
}

DiscreteSignal DiscreteSignal::zero(const Grid& g) {
    return DiscreteSignal(g, std::vector<complex_t>(g.n), std::vector<complex_t>(g.n));
}

bool DiscreteSignal::is_zero(double tol) const {
    for (const auto& z : samples_)
        if (std::abs(z) > tol) return false;
    return true;
}

DiscreteSignal DiscreteSignal::operator+(const DiscreteSignal& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("signal +: grid mismatch");
    std::vector<complex_t> s(grid_.n), sp(grid_.n);
    for (int i = 0; i < grid_.n; ++i) {
        s[i] = samples_[i] + o.samples_[i];
        sp[i] = spectrum_[i] + o.spectrum_[i];
    }
    return DiscreteSignal(grid_, std::move(s), std::move(sp));
}

DiscreteSignal DiscreteSignal::operator-(const DiscreteSignal& o) const {
    return *this + o.scaled_by(-1.0);
}

DiscreteSignal DiscreteSignal::scaled_by(complex_t c) const {
    std::vector<complex_t> s(grid_.n), sp(grid_.n);
    for (int i = 0; i < grid_.n; ++i) {
        s[i] = samples_[i] * c;
        sp[i] = spectrum_[i] * c;
    }
    return DiscreteSignal(grid_, std::move(s), std::move(sp));
}

DiscreteSignal DiscreteSignal::pointwise(const DiscreteSignal& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("pointwise: grid mismatch");
    std::vector<complex_t> s(grid_.n);
    for (int i = 0; i < grid_.n; ++i) s[i] = samples_[i] * o.samples_[i];
    return from_samples(grid_, std::move(s));
}

// ---------------------------------------------------------------------------
// Norms and multipliers
// ---------------------------------------------------------------------------

double lp_norm(const DiscreteSignal& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : f.samples()) m = std::max(m, std::abs(z));
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    double w = f.grid().period / f.grid().n;
    double acc = 0.0;
    for (const auto& z : f.samples()) acc += std::pow(std::abs(z), p) * w;
    return std::pow(acc, 1.0 / p);
}

double pairing(const DiscreteSignal& u, const DiscreteSignal& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("pairing: grid mismatch");
    double w = u.grid().period / u.grid().n;
    double acc = 0.0;
    for (int i = 0; i < u.size(); ++i)
        acc += std::real(u.samples()[i] * std::conj(v.samples()[i]));
    return acc * w;
}

DiscreteSignal linear_multiplier(const DiscreteSignal& f,
                                 const std::function<complex_t(double)>& symbol) {
    const Grid& g = f.grid();
    std::vector<complex_t> spec(g.n);
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu)
        spec[nu + g.n / 2] = f.spectrum_at(nu) * symbol(g.freq(nu));
    return DiscreteSignal::from_spectrum(g, std::move(spec));
}

bool FreqInterval::contains_bin(const Grid& g, int nu) const {
    if (auto xf = g.exact_freq(nu)) return contains(*xf);
    long double x = static_cast<long double>(nu) / g.period;
    if (lo && x < static_cast<long double>(lo->to_double())) return false;
    if (hi && x >= static_cast<long double>(hi->to_double())) return false;
    return true;
}

bool FreqInterval::intersects(const FreqInterval& o) const {
    if (empty() || o.empty()) return false;
    if (hi && o.lo && !(*o.lo < *hi)) return false;
    if (o.hi && lo && !(*lo < *o.hi)) return false;
    return true;
}

DiscreteSignal interval_multiplier(const DiscreteSignal& f, const FreqInterval& I) {
    const Grid& g = f.grid();
    std::vector<complex_t> spec(g.n);
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu)
        if (I.contains_bin(g, nu)) spec[nu + g.n / 2] = f.spectrum_at(nu);
    return DiscreteSignal::from_spectrum(g, std::move(spec));
}

DiscreteSignal band_project(const DiscreteSignal& f, int nu_lo, int nu_hi) {
    const Grid& g = f.grid();
    std::vector<complex_t> spec(g.n);
    for (int nu = std::max(nu_lo, g.nu_min()); nu < std::min(nu_hi, g.nu_max() + 1); ++nu)
        spec[nu + g.n / 2] = f.spectrum_at(nu);
    return DiscreteSignal::from_spectrum(g, std::move(spec));
}

double spectral_mass_outside(const DiscreteSignal& f, int nu_lo, int nu_hi) {
    const Grid& g = f.grid();
    double inside = 0.0, outside = 0.0;
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu) {
        double m = std::norm(f.spectrum_at(nu));
        if (nu >= nu_lo && nu < nu_hi)
            inside += m;
        else
            outside += m;
    }
    double total = inside + outside;
    return total == 0.0 ? 0.0 : outside / total;
}

// ---------------------------------------------------------------------------
// Maximal function, square function
// ---------------------------------------------------------------------------

DiscreteSignal maximal_function(const DiscreteSignal& f) {
    const Grid& g = f.grid();
    int n = g.n;
    std::vector<double> absf(n);
    for (int i = 0; i < n; ++i) absf[i] = std::abs(f.samples()[i]);

    // prefix sums over three periods so any centered window fits
    std::vector<double> pre(3 * n + 1, 0.0);
    for (int i = 0; i < 3 * n; ++i) pre[i + 1] = pre[i] + absf[i % n];

    std::vector<double> out = absf;  // radius-0 window
    for (int w = 1; w <= n / 2; w <<= 1) {
        double inv = 1.0 / (2 * w + 1);
        for (int i = 0; i < n; ++i) {
            int lo = i - w + n;  // shifted into [0, 2n)
            double avg = (pre[lo + 2 * w + 1] - pre[lo]) * inv;
            out[i] = std::max(out[i], avg);
        }
    }
    std::vector<complex_t> s(n);
    for (int i = 0; i < n; ++i) s[i] = out[i];
    return DiscreteSignal::from_samples(g, std::move(s));
}

double square_function_ratio(const DiscreteSignal& f, std::span<const FreqInterval> intervals,
                             double p) {
    for (size_t i = 0; i < intervals.size(); ++i)
        for (size_t j = i + 1; j < intervals.size(); ++j)
            if (intervals[i].intersects(intervals[j]))
                throw std::invalid_argument("square_function_ratio: intervals overlap");
    double denom = lp_norm(f, p);
    if (denom == 0.0) throw std::invalid_argument("square_function_ratio: zero input");

    const Grid& g = f.grid();
    std::vector<double> sq(g.n, 0.0);
    for (const auto& I : intervals) {
        DiscreteSignal piece = interval_multiplier(f, I);
        for (int i = 0; i < g.n; ++i) sq[i] += std::norm(piece.samples()[i]);
    }
    std::vector<complex_t> s(g.n);
    for (int i = 0; i < g.n; ++i) s[i] = std::sqrt(sq[i]);
    return lp_norm(DiscreteSignal::from_samples(g, std::move(s)), p) / denom;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

void check_boundary_decay(const Grid& g, const std::vector<complex_t>& s, std::string* warning,
                          const char* kind) {
    if (!warning) return;
    double peak = 0.0;
    for (const auto& z : s) peak = std::max(peak, std::abs(z));
    double edge = std::max(std::abs(s.front()), std::abs(s[g.n - 1]));
    if (peak > 0 && edge > 1e-10 * peak)
        *warning = std::string(kind) + ": boundary value " + std::to_string(edge / peak) +
                   " of peak exceeds 1e-10, periodization error is not negligible";
}

}  // namespace

DiscreteSignal make_gaussian(const Grid& g, double center, double width, std::string* warning) {
    if (!(width > 0)) throw std::invalid_argument("make_gaussian: width must be positive");
    std::vector<complex_t> s(g.n);
    for (int i = 0; i < g.n; ++i) {
        // periodize over neighboring images
        double acc = 0.0;
        for (int im = -2; im <= 2; ++im) {
            double dx = g.x(i) - center + im * g.period;
            acc += std::exp(-dx * dx / (width * width));
        }
        s[i] = acc;
    }
    // boundary decay measured against the window centered at `center`
    std::vector<complex_t> raw(g.n);
    for (int i = 0; i < g.n; ++i) {
        double dx = g.x(i) - center;
        raw[i] = std::exp(-dx * dx / (width * width));
    }
    check_boundary_decay(g, raw, warning, "gaussian");
    return DiscreteSignal::from_samples(g, std::move(s));
}

DiscreteSignal make_modulated_bump(const Grid& g, double center, double width, double freq0,
                                   std::string* warning) {
    DiscreteSignal bump = make_gaussian(g, center, width, warning);
    std::vector<complex_t> s(g.n);
    for (int i = 0; i < g.n; ++i) {
        double ph = 2.0 * std::numbers::pi * freq0 * g.x(i);
        s[i] = bump.samples()[i] * complex_t(std::cos(ph), std::sin(ph));
    }
    return DiscreteSignal::from_samples(g, std::move(s));
}

DiscreteSignal make_random_trig(const Grid& g, int band_lo, int band_hi, std::uint64_t seed) {
    if (band_lo >= band_hi) throw std::invalid_argument("make_random_trig: empty band");
    if (band_lo < g.nu_min() || band_hi > g.nu_max() + 1)
        throw std::invalid_argument("make_random_trig: band outside grid");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complex_t> spec(g.n);
    for (int nu = band_lo; nu < band_hi; ++nu)
        spec[nu + g.n / 2] = complex_t(gauss(rng), gauss(rng));
    return DiscreteSignal::from_spectrum(g, std::move(spec));
}

DiscreteSignal make_spike(const Grid& g, double center, int width_samples) {
    if (width_samples < 1 || width_samples > g.n)
        throw std::invalid_argument("make_spike: bad width");
    std::vector<complex_t> s(g.n);
    int c = static_cast<int>(std::llround(center / g.period * g.n)) % g.n;
    if (c < 0) c += g.n;
    for (int k = 0; k < width_samples; ++k) s[(c + k) % g.n] = 1.0;
    return DiscreteSignal::from_samples(g, std::move(s));
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

void write_signal_csv(std::ostream& os, const DiscreteSignal& f) {
    os << "index,re,im\n";
    os.precision(17);
    for (int i = 0; i < f.size(); ++i)
        os << i << "," << f.samples()[i].real() << "," << f.samples()[i].imag() << "\n";
}

DiscreteSignal read_signal_csv(std::istream& is, double period) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("signal csv: empty stream");
    std::vector<complex_t> s;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx, re, im;
        if (!std::getline(ls, idx, ',') || !std::getline(ls, re, ',') || !std::getline(ls, im))
            throw std::invalid_argument("signal csv: malformed row '" + line + "'");
        s.emplace_back(std::stod(re), std::stod(im));
    }
    Grid g(static_cast<int>(s.size()), period);
    return DiscreteSignal::from_samples(g, std::move(s));
}

void write_signal_binary(std::ostream& os, const DiscreteSignal& f) {
    std::uint32_t n = static_cast<std::uint32_t>(f.size());
    double period = f.grid().period;
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&period), sizeof(period));
    for (int i = 0; i < f.size(); ++i) {
        double re = f.samples()[i].real(), im = f.samples()[i].imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof(re));
        os.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
}

DiscreteSignal read_signal_binary(std::istream& is) {
    std::uint32_t n = 0;
    double period = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&period), sizeof(period));
    if (!is) throw std::invalid_argument("signal binary: truncated header");
    std::vector<complex_t> s(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        double re = 0, im = 0;
        is.read(reinterpret_cast<char*>(&re), sizeof(re));
        is.read(reinterpret_cast<char*>(&im), sizeof(im));
        if (!is) throw std::invalid_argument("signal binary: truncated payload");
        s[i] = complex_t(re, im);
    }
    Grid g(static_cast<int>(n), period);
    return DiscreteSignal::from_samples(g, std::move(s));
}

}  // namespace paralab
