#include "paralab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paralab {

// ---------------------------------------------------------------------------
// V^r
// ---------------------------------------------------------------------------

double v_norm(const FiniteSequence& h, double r) {
    if (h.values.empty()) throw std::invalid_argument("v_norm: empty sequence");
    if (!(r >= 1.0)) throw std::invalid_argument("v_norm: r must be >= 1");
    const auto& v = h.values;
    size_t n = v.size();

    double sup = 0.0;
    for (const auto& z : v) sup = std::max(sup, std::abs(z));

    // best[i]: max over chains ending at i of sum |increments|^r. Costs are
    // additive in the r-th power, so the chain maximum is attained by the DP.
    std::vector<double> best(n, 0.0);
    double top = 0.0;
    for (size_t i = 1; i < n; ++i) {
        for (size_t m = 0; m < i; ++m) {
            double cand = best[m] + std::pow(std::abs(v[i] - v[m]), r);
            best[i] = std::max(best[i], cand);
        }
        top = std::max(top, best[i]);
    }
    return sup + std::pow(top, 1.0 / r);
}

double v_norm_oracle(const FiniteSequence& h, double r) {
    if (h.values.empty()) throw std::invalid_argument("v_norm_oracle: empty sequence");
    if (!(r >= 1.0)) throw std::invalid_argument("v_norm_oracle: r must be >= 1");
    size_t n = h.values.size();
    if (n > 16) throw std::invalid_argument("v_norm_oracle: length capped at 16");

    double sup = 0.0;
    for (const auto& z : h.values) sup = std::max(sup, std::abs(z));

    double top = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum = 0.0;
        int prev = -1;
        for (size_t i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (prev >= 0) sum += std::pow(std::abs(h.values[i] - h.values[prev]), r);
            prev = static_cast<int>(i);
        }
        top = std::max(top, sum);
    }
    return sup + std::pow(top, 1.0 / r);
}

// ---------------------------------------------------------------------------
// FrequencyWindow
// ---------------------------------------------------------------------------

FrequencyWindow::FrequencyWindow(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("FrequencyWindow: need >= 2 samples");
}

double FrequencyWindow::operator()(double x) const {
    if (x <= -2.0 || x >= 2.0) return 0.0;
    double t = (x + 2.0) / 4.0 * (samples_.size() - 1);
    size_t i = static_cast<size_t>(t);
    if (i + 1 >= samples_.size()) return samples_.back();
    double frac = t - static_cast<double>(i);
    return samples_[i] * (1.0 - frac) + samples_[i + 1] * frac;
}

FrequencyWindow FrequencyWindow::plateau(int nodes) {
    std::vector<double> s(nodes);
    for (int i = 0; i < nodes; ++i) {
        double x = -2.0 + 4.0 * i / (nodes - 1);
        double a = std::abs(x);
        if (a <= 1.0)
            s[i] = 1.0;
        else if (a >= 2.0)
            s[i] = 0.0;
        else
            s[i] = 0.5 * (1.0 + std::cos(std::numbers::pi * (a - 1.0)));
    }
    return FrequencyWindow(std::move(s));
}

FrequencyWindow FrequencyWindow::indicator(int nodes) {
    std::vector<double> s(nodes);
    for (int i = 0; i < nodes; ++i) {
        double x = -2.0 + 4.0 * i / (nodes - 1);
        s[i] = std::abs(x) <= 1.0 ? 1.0 : 0.0;
    }
    return FrequencyWindow(std::move(s));
}

// ---------------------------------------------------------------------------
// Averages / Lepingle
// ---------------------------------------------------------------------------

namespace {

void check_window_resolved(const Grid& g, int j_hi) {
    // The window phi(2^j .) lives on [-2^(1-j), 2^(1-j)]; once 2^-j drops
    // below one frequency bin the quadrature sees nothing.
    if (std::ldexp(1.0, -j_hi) < g.bin_width())
        throw std::invalid_argument("averages: window undersampled at j=" + std::to_string(j_hi) +
                                    " (2^-j below one frequency bin)");
}

}  // namespace

FiniteSequence averages(const DiscreteSignal& g, const FrequencyWindow& phi, double shift,
                        int j_lo, int j_hi) {
    if (j_lo > j_hi) throw std::invalid_argument("averages: empty j range");
    const Grid& grid = g.grid();
    check_window_resolved(grid, j_hi);

    FiniteSequence out;
    out.index_labels = std::vector<double>();
    for (int j = j_lo; j <= j_hi; ++j) {
        complex_t acc = 0.0;
        double scale = std::ldexp(1.0, j);
        for (int nu = grid.nu_min(); nu <= grid.nu_max(); ++nu) {
            double w = phi(scale * grid.freq(nu));
            if (w == 0.0) continue;
            double ph = 2.0 * std::numbers::pi * grid.freq(nu) * shift;
            acc += g.spectrum_at(nu) * w * complex_t(std::cos(ph), std::sin(ph));
        }
        out.values.push_back(acc / grid.period);
        out.index_labels->push_back(static_cast<double>(j));
    }
    return out;
}

double lepingle_ratio(const DiscreteSignal& g, double p, double r, const FrequencyWindow& phi,
                      std::optional<int> j_lo_opt, std::optional<int> j_hi_opt) {
    if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("lepingle_ratio: need 1 < p < inf");
    if (!(r > 2.0) || std::isinf(r)) throw std::invalid_argument("lepingle_ratio: need 2 < r < inf");
    double denom = lp_norm(g, p);
    if (denom == 0.0) throw std::invalid_argument("lepingle_ratio: zero input");

    const Grid& grid = g.grid();
    int j_lo = j_lo_opt.value_or(0);
    int j_hi = j_hi_opt.value_or(static_cast<int>(std::floor(std::log2(grid.period))));
    if (j_lo > j_hi) throw std::invalid_argument("lepingle_ratio: empty j range");
    check_window_resolved(grid, j_hi);

    // A g(x)(j) over all grid points x at once: one windowed inverse
    // transform per scale j.
    int n = grid.n;
    std::vector<std::vector<complex_t>> layer;
    for (int j = j_lo; j <= j_hi; ++j) {
        double scale = std::ldexp(1.0, j);
        DiscreteSignal windowed = linear_multiplier(
            g, [&](double xi) { return complex_t(phi(scale * xi), 0.0); });
        layer.push_back(windowed.samples());
    }

    std::vector<complex_t> vr(n);
    FiniteSequence seq;
    seq.values.resize(layer.size());
    for (int i = 0; i < n; ++i) {
        for (size_t j = 0; j < layer.size(); ++j) seq.values[j] = layer[j][i];
        vr[i] = v_norm(seq, r);
    }
    return lp_norm(DiscreteSignal::from_samples(grid, std::move(vr)), p) / denom;
}

}  // namespace paralab
