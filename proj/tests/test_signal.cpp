#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "paralab/signal.hpp"
#include "paralab/normest.hpp"
#include "support.hpp"

using namespace paralab;
using testsupport::random_band_signal;
using testsupport::rel_l2_error;

namespace {
DyadicRational dr(long long n, int e = 0) { return DyadicRational::scaled(n, e); }
}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(100, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(64, -1.0), std::invalid_argument);
    Grid g(64, 2.0);
    CHECK(g.nu_min() == -32);
    CHECK(g.nu_max() == 31);
    CHECK(g.freq(8) == doctest::Approx(4.0));
    CHECK(g.exact_freq(3).value() == dr(3, -1));
    CHECK_FALSE(Grid(64, 3.0).exact_freq(1).has_value());
}

TEST_CASE("round trip and Parseval across sizes and generators") {
    std::mt19937_64 rng(1);
    for (int n : {64, 256, 1024, 8192}) {
        Grid g(n, n >= 1024 ? 4.0 : 1.0);
        std::vector<DiscreteSignal> batch;
        batch.push_back(make_gaussian(g, g.period / 2, g.period / 12));
        batch.push_back(make_modulated_bump(g, g.period / 2, g.period / 16, 3.0 / g.period));
        batch.push_back(make_random_trig(g, -n / 8, n / 8, rng()));
        batch.push_back(make_spike(g, g.period / 3, 2));
        for (const auto& f : batch) {
            DiscreteSignal back = DiscreteSignal::from_spectrum(g, f.spectrum());
            CHECK(rel_l2_error(f, back) < 1e-12);
            double space = 0.0, freq = 0.0;
            for (const auto& z : f.samples()) space += std::norm(z);
            space *= g.period / g.n;
            for (const auto& z : f.spectrum()) freq += std::norm(z);
            freq /= g.period;
            CHECK(space == doctest::Approx(freq).epsilon(1e-12));
        }
    }
}

TEST_CASE("lp_norm: constants, homogeneity, Holder equality") {
    Grid g(128, 1.0);
    DiscreteSignal c = DiscreteSignal::from_samples(g, std::vector<complex_t>(128, complex_t(3, 4)));
    CHECK(lp_norm(c, 2.0) == doctest::Approx(5.0));
    CHECK(lp_norm(c, 3.5) == doctest::Approx(5.0));
    CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(5.0));
    CHECK_THROWS_AS(lp_norm(c, 0.5), std::invalid_argument);

    DiscreteSignal f = random_band_signal(g, 7);
    CHECK(lp_norm(f.scaled_by(-2.5), 3.0) == doctest::Approx(2.5 * lp_norm(f, 3.0)));

    // |<fg, 1>| <= ||f||_3 ||g||_3 ||1||_3 with equality for constants
    DiscreteSignal one = DiscreteSignal::from_samples(g, std::vector<complex_t>(128, 1.0));
    CHECK(lp_norm(one.pointwise(one), 1.5) == doctest::Approx(lp_norm(one, 3.0) * lp_norm(one, 3.0)));
}

TEST_CASE("linear multiplier: identity, composition, additivity") {
    Grid g(256, 2.0);
    DiscreteSignal f = random_band_signal(g, 11);
    DiscreteSignal id = linear_multiplier(f, [](double) { return complex_t(1.0); });
    CHECK(rel_l2_error(f, id) < 1e-13);

    FreqInterval I = FreqInterval::bounded(dr(-5), dr(9));
    FreqInterval J = FreqInterval::bounded(dr(2), dr(30));
    FreqInterval IJ = FreqInterval::bounded(dr(2), dr(9));
    DiscreteSignal a = interval_multiplier(interval_multiplier(f, I), J);
    DiscreteSignal b = interval_multiplier(f, IJ);
    CHECK(rel_l2_error(a, b) < 1e-12);

    // all frequencies inside I: projection is the identity
    DiscreteSignal banded = interval_multiplier(f, I);
    CHECK(rel_l2_error(interval_multiplier(banded, I), banded) < 1e-13);

    // additivity over a disjoint split
    FreqInterval left = FreqInterval::bounded(dr(-32), dr(0));
    FreqInterval right = FreqInterval::bounded(dr(0), dr(32));
    DiscreteSignal sum = interval_multiplier(f, left) + interval_multiplier(f, right);
    CHECK(rel_l2_error(sum, f) < 1e-12);
}

TEST_CASE("half-infinite intervals clip at the grid") {
    Grid g(128, 1.0);
    DiscreteSignal f = random_band_signal(g, 3);
    DiscreteSignal lo = interval_multiplier(f, FreqInterval{std::nullopt, dr(0)});
    DiscreteSignal hi = interval_multiplier(f, FreqInterval{dr(0), std::nullopt});
    CHECK(rel_l2_error(lo + hi, f) < 1e-12);
}

TEST_CASE("maximal function: constants, domination, spike profile") {
    Grid g(256, 1.0);
    DiscreteSignal c = DiscreteSignal::from_samples(g, std::vector<complex_t>(256, 2.0));
    DiscreteSignal mc = maximal_function(c);
    for (const auto& z : mc.samples()) CHECK(std::abs(z) == doctest::Approx(2.0));

    DiscreteSignal f = random_band_signal(g, 5);
    DiscreteSignal mf = maximal_function(f);
    for (int i = 0; i < g.n; ++i) CHECK(std::real(mf.samples()[i]) >= std::abs(f.samples()[i]) - 1e-12);

    // spike: exhaustive window oracle over the same dyadic radii
    DiscreteSignal spike = make_spike(g, 0.5, 1);
    DiscreteSignal ms = maximal_function(spike);
    for (int i = 0; i < g.n; i += 17) {
        double best = std::abs(spike.samples()[i]);
        for (int w = 1; w <= g.n / 2; w <<= 1) {
            double acc = 0.0;
            for (int k = -w; k <= w; ++k) acc += std::abs(spike.samples()[((i + k) % g.n + g.n) % g.n]);
            best = std::max(best, acc / (2 * w + 1));
        }
        CHECK(std::real(ms.samples()[i]) == doctest::Approx(best).epsilon(1e-12));
    }
    // at dyadic distance k from the spike the best window has radius k,
    // so the profile is exactly 1/(2k+1)
    int c0 = g.n / 2;
    for (int k : {4, 16, 64}) {
        double v = std::real(ms.samples()[c0 + k]);
        CHECK(v == doctest::Approx(1.0 / (2 * k + 1)).epsilon(1e-12));
    }
}

TEST_CASE("maximal function is sublinear") {
    Grid g(128, 1.0);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        DiscreteSignal f = random_band_signal(g, rng());
        DiscreteSignal h = random_band_signal(g, rng());
        DiscreteSignal mfh = maximal_function(f + h);
        DiscreteSignal bound = maximal_function(f) + maximal_function(h);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::real(mfh.samples()[i]) <= std::real(bound.samples()[i]) + 1e-12);
    }
}

TEST_CASE("square function: single interval, Parseval diagnostic, disjointness guard") {
    Grid g(256, 1.0);
    DiscreteSignal f = random_band_signal(g, 21);
    std::vector<FreqInterval> whole = {FreqInterval::whole()};
    CHECK(square_function_ratio(f, whole, 4.0) == doctest::Approx(1.0));

    // Littlewood-Paley style family
    std::vector<FreqInterval> lp;
    for (int j = 0; j < 6; ++j) lp.push_back(FreqInterval::bounded(dr(1 << j), dr(2 << j)));
    lp.push_back(FreqInterval{std::nullopt, dr(1)});
    CHECK(square_function_ratio(f, lp, 2.0) <= 1.0 + 1e-12);  // orthogonality at p = 2

    std::vector<FreqInterval> overlapping = {FreqInterval::bounded(dr(0), dr(4)),
                                             FreqInterval::bounded(dr(2), dr(6))};
    CHECK_THROWS_AS(square_function_ratio(f, overlapping, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(square_function_ratio(DiscreteSignal::zero(g), whole, 4.0),
                    std::invalid_argument);
}

TEST_CASE("square function ratio stays bounded as N grows") {
    std::vector<double> ns, ratios;
    for (int n : {256, 1024, 4096}) {
        Grid g(n, 16.0);
        double acc = 0.0;
        int reps = 3;
        for (int s = 0; s < reps; ++s) {
            DiscreteSignal f = random_band_signal(g, 1000 + s);
            std::vector<FreqInterval> lp;
            lp.push_back(FreqInterval::bounded(dr(-1), dr(1)));
            for (int j = 0; 2 * (2 << j) < n / 4; ++j) {
                lp.push_back(FreqInterval::bounded(dr(1 << j), dr(2 << j)));
                lp.push_back(FreqInterval::bounded(dr(-(2 << j)), dr(-(1 << j))));
            }
            acc += square_function_ratio(f, lp, 4.0);
        }
        ns.push_back(n);
        ratios.push_back(acc / reps);
    }
    double slope = paralab::loglog_slope(ns, ratios);
    CHECK(std::abs(slope) < 0.05);
}

TEST_CASE("Fefferman-Stein style aggregate stays flat in family size") {
    Grid g(512, 1.0);
    std::mt19937_64 rng(33);
    std::vector<double> sizes, ratios;
    for (int m : {2, 4, 8, 16}) {
        std::vector<DiscreteSignal> fam;
        for (int i = 0; i < m; ++i) fam.push_back(random_band_signal(g, rng()));
        std::vector<double> num_sq(g.n, 0.0), den_sq(g.n, 0.0);
        for (const auto& f : fam) {
            DiscreteSignal mf = maximal_function(f);
            for (int i = 0; i < g.n; ++i) {
                num_sq[i] += std::norm(mf.samples()[i]);
                den_sq[i] += std::norm(f.samples()[i]);
            }
        }
        std::vector<complex_t> num(g.n), den(g.n);
        for (int i = 0; i < g.n; ++i) {
            num[i] = std::sqrt(num_sq[i]);
            den[i] = std::sqrt(den_sq[i]);
        }
        double ratio = lp_norm(DiscreteSignal::from_samples(g, std::move(num)), 4.0) /
                       lp_norm(DiscreteSignal::from_samples(g, std::move(den)), 4.0);
        sizes.push_back(m);
        ratios.push_back(ratio);
    }
    CHECK(std::abs(paralab::loglog_slope(sizes, ratios)) < 0.05);
}

TEST_CASE("generators: determinism, band support, bump concentration") {
    Grid g(512, 1.0);
    DiscreteSignal a = make_random_trig(g, -40, 40, 77);
    DiscreteSignal b = make_random_trig(g, -40, 40, 77);
    CHECK(a.samples() == b.samples());

    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu) {
        if (nu < -40 || nu >= 40) CHECK(std::abs(a.spectrum_at(nu)) == 0.0);
    }
    CHECK_THROWS_AS(make_random_trig(g, -400, 400, 1), std::invalid_argument);

    // modulated bump concentrates its spectrum within 3 bins of xi0
    DiscreteSignal bump = make_modulated_bump(g, 0.5, 0.15, 25.0);
    double inside = 0.0, total = 0.0;
    for (int nu = g.nu_min(); nu <= g.nu_max(); ++nu) {
        double m = std::norm(bump.spectrum_at(nu));
        total += m;
        if (std::abs(nu - 25) <= 3) inside += m;
    }
    CHECK(inside / total > 0.99);

    // very wide gaussian is numerically constant
    DiscreteSignal wide = make_gaussian(g, 0.5, 50.0);
    double mn = 1e300, mx = 0.0;
    for (const auto& z : wide.samples()) {
        mn = std::min(mn, std::abs(z));
        mx = std::max(mx, std::abs(z));
    }
    CHECK((mx - mn) / mx < 1e-4);

    // narrow gaussian triggers no warning, fat one does
    std::string warn;
    make_gaussian(g, 0.5, 0.02, &warn);
    CHECK(warn.empty());
    make_gaussian(g, 0.5, 0.4, &warn);
    CHECK_FALSE(warn.empty());
}

TEST_CASE("signal CSV and binary round trips") {
    Grid g(64, 2.0);
    DiscreteSignal f = random_band_signal(g, 13);

    std::stringstream csv;
    write_signal_csv(csv, f);
    DiscreteSignal fc = read_signal_csv(csv, 2.0);
    CHECK(rel_l2_error(f, fc) < 1e-15);

    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    write_signal_binary(bin, f);
    DiscreteSignal fb = read_signal_binary(bin);
    CHECK(fb.grid().period == 2.0);
    CHECK(fb.samples() == f.samples());
}

TEST_CASE("band projection and leakage accounting") {
    Grid g(128, 1.0);
    DiscreteSignal f = make_random_trig(g, -60, 60, 5);
    CHECK(spectral_mass_outside(f, -64, 64) == 0.0);
    CHECK(spectral_mass_outside(f, -32, 32) > 0.0);
    DiscreteSignal banded = band_project(f, -32, 32);
    CHECK(spectral_mass_outside(banded, -32, 32) == 0.0);
}
