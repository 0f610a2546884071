#include "paralab/normest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "json.hpp"

namespace paralab {

namespace {

DiscreteSignal apply_symbol(const Symbol& m, const DiscreteSignal& f, const DiscreteSignal& g) {
    return std::visit([&](const auto& s) { return apply_bilinear(s, f, g); }, m);
}

// conj(a) * b pointwise.
DiscreteSignal conj_times(const DiscreteSignal& a, const DiscreteSignal& b) {
    std::vector<complex_t> s(a.size());
    for (int i = 0; i < a.size(); ++i) s[i] = std::conj(a.samples()[i]) * b.samples()[i];
    return DiscreteSignal::from_samples(a.grid(), std::move(s));
}

// Partial kernels: <B(f,g), h> = <f, K_f> = <g, K_g> = <h, B(f,g)>.
DiscreteSignal kernel_f(const StaircaseSymbol& m, const DiscreteSignal& g,
                        const DiscreteSignal& h) {
    DiscreteSignal acc = DiscreteSignal::zero(g.grid());
    for (const auto& r : m.rectangles()) {
        if (r.empty()) continue;
        DiscreteSignal pg = interval_multiplier(g, FreqInterval::bounded(r.eta.lo, r.eta.hi));
        acc = acc + interval_multiplier(conj_times(pg, h),
                                        FreqInterval::bounded(r.xi.lo, r.xi.hi));
    }
    return acc;
}

DiscreteSignal kernel_g(const StaircaseSymbol& m, const DiscreteSignal& f,
                        const DiscreteSignal& h) {
    DiscreteSignal acc = DiscreteSignal::zero(f.grid());
    for (const auto& r : m.rectangles()) {
        if (r.empty()) continue;
        DiscreteSignal pf = interval_multiplier(f, FreqInterval::bounded(r.xi.lo, r.xi.hi));
        acc = acc + interval_multiplier(conj_times(pf, h),
                                        FreqInterval::bounded(r.eta.lo, r.eta.hi));
    }
    return acc;
}

// Grid-symbol kernels by the O(N^2) adjoint sums:
//   Kf_hat(nu) = (1/L) sum_k m(nu, k-nu) conj(ghat(k-nu)) hhat(k)
//   Kg_hat(mu) = (1/L) sum_k m(k-mu, mu) conj(fhat(k-mu)) hhat(k)
DiscreteSignal kernel_f(const GridSymbol& m, const DiscreteSignal& g, const DiscreteSignal& h) {
    const Grid& grid = g.grid();
    int n = grid.n, q = n / 4;
    std::vector<complex_t> out(n);
    for (int nu = -q; nu < q; ++nu) {
        complex_t acc = 0.0;
        for (int mu = -q; mu < q; ++mu) {
            int k = nu + mu;
            double w = m.at(nu, mu);
            if (w == 0.0) continue;
            acc += w * std::conj(g.spectrum_at(mu)) * h.spectrum_at(k);
        }
        out[nu + n / 2] = acc / grid.period;
    }
    return DiscreteSignal::from_spectrum(grid, std::move(out));
}

DiscreteSignal kernel_g(const GridSymbol& m, const DiscreteSignal& f, const DiscreteSignal& h) {
    const Grid& grid = f.grid();
    int n = grid.n, q = n / 4;
    std::vector<complex_t> out(n);
    for (int mu = -q; mu < q; ++mu) {
        complex_t acc = 0.0;
        for (int nu = -q; nu < q; ++nu) {
            int k = nu + mu;
            double w = m.at(nu, mu);
            if (w == 0.0) continue;
            acc += w * std::conj(f.spectrum_at(nu)) * h.spectrum_at(k);
        }
        out[mu + n / 2] = acc / grid.period;
    }
    return DiscreteSignal::from_spectrum(grid, std::move(out));
}

DiscreteSignal kernel_f_any(const Symbol& m, const DiscreteSignal& g, const DiscreteSignal& h) {
    return std::visit([&](const auto& s) { return kernel_f(s, g, h); }, m);
}
DiscreteSignal kernel_g_any(const Symbol& m, const DiscreteSignal& f, const DiscreteSignal& h) {
    return std::visit([&](const auto& s) { return kernel_g(s, f, h); }, m);
}

// Unit-p-norm maximizer of Re<u, K> over the admissible band:
// phase(K) |K|^(1/(p-1)), band-projected, renormalized.
std::optional<DiscreteSignal> dual_update(const DiscreteSignal& K, double p) {
    const Grid& g = K.grid();
    double expo = 1.0 / (p - 1.0);
    std::vector<complex_t> s(g.n);
    for (int i = 0; i < g.n; ++i) {
        double a = std::abs(K.samples()[i]);
        s[i] = a == 0.0 ? complex_t(0.0) : K.samples()[i] / a * std::pow(a, expo);
    }
    DiscreteSignal cand =
        band_project(DiscreteSignal::from_samples(g, std::move(s)), -g.n / 4, g.n / 4);
    double nrm = lp_norm(cand, p);
    if (nrm == 0.0) return std::nullopt;
    return cand.scaled_by(1.0 / nrm);
}

// Random start from a multi-scale ensemble: the spectral envelope width
// cycles per restart from the full admissible band down to near-DC. White
// starts probe oscillatory optima; concentrated starts keep the power
// updates inside the band where products barely alias.
DiscreteSignal random_start(const Grid& g, std::uint64_t seed, double p, int scale_class) {
    DiscreteSignal f = make_random_trig(g, -g.n / 4, g.n / 4, seed);
    if (scale_class > 0) {
        double sigma = std::max(1.5, g.n / 4.0 / std::pow(4.0, scale_class));
        std::vector<complex_t> spec = f.spectrum();
        for (int nu = -g.n / 2; nu < g.n / 2; ++nu)
            spec[nu + g.n / 2] *= std::exp(-(nu / sigma) * (nu / sigma));
        f = DiscreteSignal::from_spectrum(g, std::move(spec));
    }
    return f.scaled_by(1.0 / lp_norm(f, p));
}

RestartResult run_restart(const TrilinearProbe& probe, std::uint64_t rseed, int scale_class,
                          bool keep_trace) {
    const auto& exps = probe.exponents;
    DiscreteSignal f = random_start(probe.grid, rseed * 3 + 0, exps.p1, scale_class);
    DiscreteSignal g = random_start(probe.grid, rseed * 3 + 1, exps.p2, scale_class);
    DiscreteSignal h = random_start(probe.grid, rseed * 3 + 2, exps.p3, scale_class);

    RestartResult res;
    double num = pairing(apply_symbol(probe.symbol, f, g), h);
    if (num < 0) {
        h = h.scaled_by(-1.0);
        num = -num;
    }

    // Replace `cur` by the best improving blend toward the dual candidate.
    // The full step can lose to the band projection, but a damped step
    // still gains: blends have p-norm < 1 by strict convexity, so
    // renormalizing boosts the pairing.
    auto improve_slot = [](DiscreteSignal& cur, const DiscreteSignal& K, double p,
                           double& num_io) {
        auto cand = dual_update(K, p);
        if (!cand) return;
        for (double t : {1.0, 0.5, 0.25, 0.125, 0.03125}) {
            DiscreteSignal blend =
                t == 1.0 ? *cand : cur.scaled_by(1.0 - t) + cand->scaled_by(t);
            double nrm = lp_norm(blend, p);
            if (nrm == 0.0) continue;
            blend = blend.scaled_by(1.0 / nrm);
            double cand_num = pairing(blend, K);
            if (cand_num > num_io) {
                cur = std::move(blend);
                num_io = cand_num;
                return;
            }
        }
    };

    double prev = num;
    for (int it = 0; it < probe.budget.iterations; ++it) {
        {
            DiscreteSignal K = kernel_f_any(probe.symbol, g, h);
            improve_slot(f, K, exps.p1, num);
        }
        {
            DiscreteSignal K = kernel_g_any(probe.symbol, f, h);
            improve_slot(g, K, exps.p2, num);
        }
        {
            DiscreteSignal B = apply_symbol(probe.symbol, f, g);
            improve_slot(h, B, exps.p3, num);
        }
        res.iterations = it + 1;
        if (keep_trace) res.trace.push_back(num);
        double gain = (num - prev) / std::max(prev, 1e-300);
        if (it > 0 && gain < probe.budget.tolerance) {
            res.converged = true;
            break;
        }
        prev = num;
    }
    res.ratio = num;
    if (keep_trace) {
        res.f_spectrum = f.spectrum();
        res.g_spectrum = g.spectrum();
        res.h_spectrum = h.spectrum();
    }
    return res;
}

std::uint64_t derive_seed(std::uint64_t seed, int restart) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(restart) + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::string probe_parameters_json(const TrilinearProbe& probe, std::uint64_t seed) {
    nlohmann::json j;
    j["p1"] = probe.exponents.p1;
    j["p2"] = probe.exponents.p2;
    j["p3"] = probe.exponents.p3;
    j["n"] = probe.grid.n;
    j["period"] = probe.grid.period;
    j["restarts"] = probe.budget.restarts;
    j["iterations"] = probe.budget.iterations;
    j["tolerance"] = probe.budget.tolerance;
    j["seed"] = seed;
    j["symbol_kind"] = probe.symbol.index() == 0 ? "staircase" : "grid";
    return j.dump();
}

}  // namespace

double trilinear_ratio(const Symbol& m, const DiscreteSignal& f, const DiscreteSignal& g,
                       const DiscreteSignal& h, const ExponentTriple& exps) {
    double nf = lp_norm(f, exps.p1), ng = lp_norm(g, exps.p2), nh = lp_norm(h, exps.p3);
    if (nf == 0.0 || ng == 0.0 || nh == 0.0)
        throw std::invalid_argument("trilinear_ratio: zero-norm input");
    return std::abs(pairing(apply_symbol(m, f, g), h)) / (nf * ng * nh);
}

NormEstimateReport ascend(const TrilinearProbe& probe, std::uint64_t seed, bool keep_trace,
                          int threads) {
    int r = probe.budget.restarts;
    if (r < 1) throw std::invalid_argument("ascend: restarts >= 1");
    std::vector<RestartResult> results(r);

    int nthreads = threads > 0 ? threads
                               : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, r);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= r) return;
            results[idx] = run_restart(probe, derive_seed(seed, idx), idx % 4, keep_trace);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    NormEstimateReport rep;
    rep.seed = seed;
    rep.parameters = probe_parameters_json(probe, seed);
    rep.best_restart = 0;
    for (int i = 0; i < r; ++i) {
        if (results[i].ratio > results[rep.best_restart].ratio) rep.best_restart = i;
        rep.converged = rep.converged && results[i].converged;
    }
    rep.best_ratio = results[rep.best_restart].ratio;
    rep.iterations = results[rep.best_restart].iterations;
    rep.witness_seed = derive_seed(seed, rep.best_restart);
    rep.restarts = std::move(results);
    return rep;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = x.size();
    for (size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw std::invalid_argument("loglog_slope: nonpositive data");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;  // single abscissa
    return (n * sxy - sx * sy) / denom;
}

SweepTable sweep(const std::string& family_name,
                 const std::function<Symbol(double, std::uint64_t)>& family,
                 std::span<const double> params, std::span<const std::uint64_t> seeds,
                 const ExponentTriple& exps, const Grid& grid, const SearchBudget& budget,
                 int threads) {
    SweepTable table;
    for (double p : params) {
        for (std::uint64_t s : seeds) {
            TrilinearProbe probe{family(p, s), exps, grid, budget};
            NormEstimateReport rep = ascend(probe, s, false, threads);
            table.rows.push_back(
                {family_name, p, s, rep.best_ratio, rep.iterations, rep.converged});
        }
    }
    std::vector<double> xs, ys;
    double lo = 0, hi = 0;
    for (const auto& row : table.rows) {
        if (row.best_ratio > 0) {
            xs.push_back(row.param);
            ys.push_back(row.best_ratio);
        }
        if (lo == 0 || row.best_ratio < lo) lo = row.best_ratio;
        hi = std::max(hi, row.best_ratio);
    }
    bool single_param = true;
    for (size_t i = 1; i < xs.size(); ++i) single_param = single_param && xs[i] == xs[0];
    table.slope = (xs.size() >= 2 && !single_param) ? loglog_slope(xs, ys) : 0.0;
    table.max_min_ratio = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    os << "family,param,seed,best_ratio,iterations,converged\n";
    os.precision(17);
    for (const auto& r : table.rows)
        os << r.family << "," << r.param << "," << r.seed << "," << r.best_ratio << ","
           << r.iterations << "," << (r.converged ? 1 : 0) << "\n";
    os << "slope,," << "," << table.slope << ",,\n";
    os << "max_min_ratio,," << "," << table.max_min_ratio << ",,\n";
}

std::string to_json_string(const NormEstimateReport& rep) {
    nlohmann::json j;
    j["best_ratio"] = rep.best_ratio;
    j["best_restart"] = rep.best_restart;
    j["seed"] = rep.seed;
    j["witness_seed"] = rep.witness_seed;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["parameters"] = nlohmann::json::parse(rep.parameters);
    j["restarts"] = nlohmann::json::array();
    for (const auto& r : rep.restarts) {
        nlohmann::json e;
        e["ratio"] = r.ratio;
        e["iterations"] = r.iterations;
        e["converged"] = r.converged;
        if (!r.trace.empty()) e["trace"] = r.trace;
        j["restarts"].push_back(std::move(e));
    }
    return j.dump();
}

}  // namespace paralab
