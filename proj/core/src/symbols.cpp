#include "paralab/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace paralab {

// ---------------------------------------------------------------------------
// StaircaseSymbol
// ---------------------------------------------------------------------------

StaircaseSymbol::StaircaseSymbol(std::vector<SymbolRectangle> rects) : rects_(std::move(rects)) {
    for (size_t i = 0; i < rects_.size(); ++i)
        for (size_t j = i + 1; j < rects_.size(); ++j)
            if (!rects_[i].disjoint_from(rects_[j]))
                throw std::invalid_argument("StaircaseSymbol: rectangles " + std::to_string(i) +
                                            " and " + std::to_string(j) + " overlap");
}

DyadicRational StaircaseSymbol::area() const {
    DyadicRational a(0);
    for (const auto& r : rects_) a = a + r.area();
    return a;
}

bool StaircaseSymbol::contains(const DyadicRational& xi, const DyadicRational& eta) const {
    for (const auto& r : rects_)
        if (!r.empty() && r.xi.contains(xi) && r.eta.contains(eta)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// ExponentTriple
// ---------------------------------------------------------------------------

bool ExponentTriple::valid() const {
    if (!(p1 > 2.0 && p2 > 2.0 && p3 > 2.0)) return false;
    if (std::isinf(p1) || std::isinf(p2) || std::isinf(p3)) return false;
    return std::abs(1.0 / p1 + 1.0 / p2 + 1.0 / p3 - 1.0) <= 1e-12;
}

ExponentTriple ExponentTriple::make(double p1, double p2, double p3) {
    ExponentTriple t{p1, p2, p3};
    if (!t.valid())
        throw std::invalid_argument(
            "ExponentTriple: need 2 < p1,p2,p3 < inf with 1/p1+1/p2+1/p3 = 1");
    return t;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

StaircaseSymbol exp_staircase(int J) {
    if (J < 1) throw std::invalid_argument("exp_staircase: J >= 1");
    std::vector<SymbolRectangle> rects;
    rects.reserve(J);
    for (int j = 0; j < J; ++j) {
        SymbolRectangle r;
        r.xi = {DyadicRational(-(j + 1)), DyadicRational(-j)};
        r.eta = {DyadicRational::scaled(1, -j), DyadicRational(1)};
        rects.push_back(r);
    }
    return StaircaseSymbol(std::move(rects));
}

GridSymbol exp_convex(int J, const Grid& resolution) {
    if (J < 1) throw std::invalid_argument("exp_convex: J >= 1");
    const Grid& g = resolution;
    if (g.freq(g.nu_min()) > -static_cast<double>(J) || g.freq(g.nu_max() + 1) < 1.0)
        throw std::invalid_argument("exp_convex: grid does not cover [-J,0) x [0,1)");

    GridSymbol s{g, std::vector<double>(static_cast<size_t>(g.n) * g.n, 0.0)};
    for (int xi_bin = g.nu_min(); xi_bin <= g.nu_max(); ++xi_bin) {
        auto xi_exact = g.exact_freq(xi_bin);
        double xi = g.freq(xi_bin);
        if (xi > 0.0) continue;
        for (int eta_bin = g.nu_min(); eta_bin <= g.nu_max(); ++eta_bin) {
            double eta = g.freq(eta_bin);
            if (eta >= 1.0 || eta <= 0.0) continue;
            bool member;
            if (xi_exact && xi_exact->is_integer()) {
                // 2^xi is an exact dyadic rational here
                long long e = static_cast<long long>(xi_exact->to_double());
                DyadicRational pow = DyadicRational::scaled(1, static_cast<int>(e));
                auto eta_exact = g.exact_freq(eta_bin);
                member = eta_exact ? (pow <= *eta_exact)
                                   : (static_cast<long double>(pow.to_double()) <=
                                      static_cast<long double>(eta));
            } else {
                member = std::exp2(static_cast<long double>(xi)) <= static_cast<long double>(eta);
            }
            if (member) s.set(xi_bin, eta_bin, 1.0);
        }
    }
    return s;
}

StaircaseSymbol multilac_staircase(const AdmissibleSequences& seqs) {
    if (!seqs.check_spacing())
        throw std::invalid_argument("multilac_staircase: sequences violate the spacing equations");
    std::vector<SymbolRectangle> rects;
    for (int j = 0; j < seqs.length; ++j) {
        SymbolRectangle r;
        r.xi = {DyadicRational(0), seqs.xi[j]};
        r.eta = {seqs.eta[j], seqs.zeta[j]};
        rects.push_back(r);
    }
    // Nested xi-intervals force disjointness to come from the eta side.
    for (size_t i = 0; i < rects.size(); ++i)
        for (size_t j = i + 1; j < rects.size(); ++j)
            if (!rects[i].empty() && !rects[j].empty() && rects[i].eta.intersects(rects[j].eta) &&
                rects[i].xi.intersects(rects[j].xi))
                throw std::invalid_argument("multilac_staircase: eta-intervals " +
                                            std::to_string(i) + " and " + std::to_string(j) +
                                            " overlap");
    return StaircaseSymbol(std::move(rects));
}

GridSymbol half_plane(const DyadicRational& slope, const DyadicRational& offset,
                      const Grid& resolution) {
    const Grid& g = resolution;
    GridSymbol s{g, std::vector<double>(static_cast<size_t>(g.n) * g.n, 0.0)};
    for (int xi_bin = g.nu_min(); xi_bin <= g.nu_max(); ++xi_bin) {
        auto xi_exact = g.exact_freq(xi_bin);
        for (int eta_bin = g.nu_min(); eta_bin <= g.nu_max(); ++eta_bin) {
            bool member;
            auto eta_exact = g.exact_freq(eta_bin);
            if (xi_exact && eta_exact) {
                member = *eta_exact >= slope * (*xi_exact) + offset;
            } else {
                long double rhs = static_cast<long double>(slope.to_double()) * g.freq(xi_bin) +
                                  static_cast<long double>(offset.to_double());
                member = static_cast<long double>(g.freq(eta_bin)) >= rhs;
            }
            if (member) s.set(xi_bin, eta_bin, 1.0);
        }
    }
    return s;
}

StaircaseSymbol unit_symbol(const Grid& g) {
    auto lo = g.exact_freq(-g.n / 4);
    auto hi = g.exact_freq(g.n / 4);
    SymbolRectangle r;
    if (lo && hi) {
        r.xi = {*lo, *hi};
        r.eta = {*lo, *hi};
    } else {
        // fall back to a generous rational cover of the band
        double b = g.freq(g.n / 4);
        long long up = static_cast<long long>(std::ceil(b)) + 1;
        r.xi = {DyadicRational(-up), DyadicRational(up)};
        r.eta = r.xi;
    }
    return StaircaseSymbol({r});
}

// ---------------------------------------------------------------------------
// apply_bilinear
// ---------------------------------------------------------------------------

namespace {

constexpr double kAliasTolerance = 1e-12;

void check_inputs(const DiscreteSignal& f, const DiscreteSignal& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("apply_bilinear: grid mismatch");
    int q = f.grid().n / 4;
    if (spectral_mass_outside(f, -q, q) > kAliasTolerance ||
        spectral_mass_outside(g, -q, q) > kAliasTolerance)
        throw std::invalid_argument(
            "apply_bilinear: inputs must be band-limited to [-N/4, N/4) bins (aliasing)");
}

FreqInterval to_freq_interval(const ExactInterval& iv) {
    return FreqInterval::bounded(iv.lo, iv.hi);
}

DiscreteSignal apply_rectangles(const StaircaseSymbol& m, const DiscreteSignal& f,
                                const DiscreteSignal& g) {
    DiscreteSignal acc = DiscreteSignal::zero(f.grid());
    for (const auto& r : m.rectangles()) {
        if (r.empty()) continue;
        DiscreteSignal pf = interval_multiplier(f, to_freq_interval(r.xi));
        DiscreteSignal pg = interval_multiplier(g, to_freq_interval(r.eta));
        acc = acc + pf.pointwise(pg);
    }
    return acc;
}

// Direct output-spectrum sum: C(k) = (1/L) sum_nu m(nu, k-nu) fhat ghat.
template <typename SymbolAt>
DiscreteSignal apply_direct(const DiscreteSignal& f, const DiscreteSignal& g, SymbolAt&& m_at) {
    const Grid& grid = f.grid();
    int n = grid.n, q = n / 4;
    std::vector<complex_t> out(n);
    for (int k = -n / 2; k < n / 2; ++k) {
        complex_t acc = 0.0;
        int lo = std::max(-q, k - (q - 1));
        int hi = std::min(q - 1, k + q);
        for (int nu = lo; nu <= hi; ++nu) {
            int mu = k - nu;
            if (mu < -q || mu >= q) continue;
            double w = m_at(nu, mu);
            if (w == 0.0) continue;
            acc += w * f.spectrum_at(nu) * g.spectrum_at(mu);
        }
        out[k + n / 2] = acc / grid.period;
    }
    return DiscreteSignal::from_spectrum(grid, std::move(out));
}

}  // namespace

DiscreteSignal apply_bilinear(const StaircaseSymbol& m, const DiscreteSignal& f,
                              const DiscreteSignal& g, BilinearMethod method) {
    check_inputs(f, g);
    if (method == BilinearMethod::Auto || method == BilinearMethod::Rectangles)
        return apply_rectangles(m, f, g);

    const Grid& grid = f.grid();
    // Precompute bin membership per rectangle edge once; O(R (N + hits)).
    int n = grid.n;
    std::vector<std::vector<char>> xi_mask, eta_mask;
    for (const auto& r : m.rectangles()) {
        std::vector<char> xm(n, 0), em(n, 0);
        if (!r.empty()) {
            FreqInterval xi = to_freq_interval(r.xi), eta = to_freq_interval(r.eta);
            for (int nu = grid.nu_min(); nu <= grid.nu_max(); ++nu) {
                xm[nu + n / 2] = xi.contains_bin(grid, nu);
                em[nu + n / 2] = eta.contains_bin(grid, nu);
            }
        }
        xi_mask.push_back(std::move(xm));
        eta_mask.push_back(std::move(em));
    }
    return apply_direct(f, g, [&](int nu, int mu) -> double {
        for (size_t r = 0; r < xi_mask.size(); ++r)
            if (xi_mask[r][nu + n / 2] && eta_mask[r][mu + n / 2]) return 1.0;
        return 0.0;
    });
}

DiscreteSignal apply_bilinear(const GridSymbol& m, const DiscreteSignal& f,
                              const DiscreteSignal& g) {
    check_inputs(f, g);
    if (!(m.grid == f.grid())) throw std::invalid_argument("apply_bilinear: symbol grid mismatch");
    return apply_direct(f, g, [&](int nu, int mu) { return m.at(nu, mu); });
}

double regrouping_check(int J, const DiscreteSignal& f, const DiscreteSignal& g) {
    if (J < 1) throw std::invalid_argument("regrouping_check: J >= 1");
    DiscreteSignal lhs = apply_bilinear(exp_staircase(J), f, g);

    // The staircase reads f only on [-J, 0), so restricting f there turns
    // the half-infinite rows of the regrouped form into an exact identity
    // at finite truncation.
    DiscreteSignal f_restricted =
        interval_multiplier(f, FreqInterval{DyadicRational(-J), std::nullopt});

    DiscreteSignal rhs = DiscreteSignal::zero(f.grid());
    for (int j = 0; j + 1 < J; ++j) {
        DiscreteSignal pf = interval_multiplier(
            f_restricted, FreqInterval{std::nullopt, DyadicRational(-(j + 1))});
        DiscreteSignal pg = interval_multiplier(
            g, FreqInterval::bounded(DyadicRational::scaled(1, -j - 1), DyadicRational::scaled(1, -j)));
        rhs = rhs + pf.pointwise(pg);
    }
    return lp_norm(lhs - rhs, 2.0);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string to_json_string(const StaircaseSymbol& s) {
    nlohmann::json j;
    j["rectangles"] = nlohmann::json::array();
    for (const auto& r : s.rectangles()) {
        j["rectangles"].push_back({{"xi", {r.xi.lo.to_string(), r.xi.hi.to_string()}},
                                   {"eta", {r.eta.lo.to_string(), r.eta.hi.to_string()}}});
    }
    return j.dump();
}

StaircaseSymbol staircase_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<SymbolRectangle> rects;
    for (const auto& e : j.at("rectangles")) {
        SymbolRectangle r;
        r.xi = {DyadicRational::parse(e.at("xi")[0].get<std::string>()),
                DyadicRational::parse(e.at("xi")[1].get<std::string>())};
        r.eta = {DyadicRational::parse(e.at("eta")[0].get<std::string>()),
                 DyadicRational::parse(e.at("eta")[1].get<std::string>())};
        rects.push_back(r);
    }
    return StaircaseSymbol(std::move(rects));
}

std::string to_json_string(const GridSymbol& s) {
    nlohmann::json j;
    j["grid"] = {{"n", s.grid.n}, {"period", s.grid.period}};
    nlohmann::json runs = nlohmann::json::array();
    size_t i = 0;
    while (i < s.table.size()) {
        size_t k = i;
        while (k < s.table.size() && s.table[k] == s.table[i]) ++k;
        runs.push_back({s.table[i], k - i});
        i = k;
    }
    j["runs"] = std::move(runs);
    return j.dump();
}

GridSymbol grid_symbol_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Grid g(j.at("grid").at("n").get<int>(), j.at("grid").at("period").get<double>());
    GridSymbol s{g, {}};
    s.table.reserve(static_cast<size_t>(g.n) * g.n);
    for (const auto& run : j.at("runs")) {
        double v = run[0].get<double>();
        size_t c = run[1].get<size_t>();
        s.table.insert(s.table.end(), c, v);
    }
    if (s.table.size() != static_cast<size_t>(g.n) * g.n)
        throw std::invalid_argument("grid symbol JSON: run lengths disagree with grid");
    return s;
}

}  // namespace paralab
