// paralab: a numerical laboratory for bilinear multipliers with staircase
// symbols. Subcommands: lacunary, verify-lemmas, norm, sqfn, lepingle,
// signal-io. Exit codes: 0 pass, 1 failed property / negative decision,
// 2 usage error, 3 undecided (budget).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "json.hpp"

#include "common.hpp"
#include "paralab/lacunary.hpp"
#include "paralab/normest.hpp"
#include "paralab/signal.hpp"
#include "paralab/symbols.hpp"
#include "paralab/variation.hpp"
#include "paralab/whitney.hpp"

using namespace paralab;
using cli::ExitCode;

namespace {

// ---------------------------------------------------------------------------
// lacunary
// ---------------------------------------------------------------------------

struct LacunaryArgs {
    std::string points;
    std::string points_file;
    int d = 1;
    int b = 2;
    std::string mode = "auto";
    std::uint64_t budget = 50'000'000;
    int max_exhaustive = 24;
    bool one_sided = false;
    std::string output;
};

int run_lacunary(const LacunaryArgs& args, const CLI::App& app) {
    std::vector<DyadicRational> pts;
    if (!args.points_file.empty()) {
        std::ifstream in(args.points_file);
        if (!in) throw std::invalid_argument("cannot open points file '" + args.points_file + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            pts.push_back(DyadicRational::parse(line));
        }
    } else {
        pts = cli::parse_rational_list(args.points);
    }

    LacunarySearchOptions opts;
    opts.work_budget = args.budget;
    opts.one_sided = args.one_sided;
    opts.exhaustive_max_points = args.mode == "heuristic" ? 0 : args.max_exhaustive;
    opts.allow_heuristic = args.mode != "exhaustive";

    auto res = is_lacunary(pts, args.d, args.b, opts);

    nlohmann::json out;
    out["tool_version"] = cli::kToolVersion;
    out["config_hash"] = cli::config_hash(app);
    out["d"] = args.d;
    out["b"] = args.b;
    out["points"] = static_cast<int>(pts.size());
    out["heuristic"] = res.heuristic;
    out["work_used"] = res.work_used;

    cli::OutputTarget target(args.output);
    switch (res.status) {
        case LacunaryStatus::Found:
            out["result"] = "lacunary";
            out["certificate"] = nlohmann::json::parse(to_json_string(*res.certificate));
            target.stream() << out.dump(2) << "\n";
            return ExitCode::kPass;
        case LacunaryStatus::NotLacunary:
            out["result"] = "not lacunary";
            target.stream() << out.dump(2) << "\n";
            return ExitCode::kFail;
        case LacunaryStatus::Undecided:
            out["result"] = "undecided (budget)";
            target.stream() << out.dump(2) << "\n";
            return ExitCode::kUndecided;
    }
    return ExitCode::kUsage;
}

// ---------------------------------------------------------------------------
// verify-lemmas
// ---------------------------------------------------------------------------

struct VerifyArgs {
    int seeds = 1;
    std::uint64_t seed = 0;
    int d = 2;
    int b = 2;
    int J = 20;
    std::string xi;  // explicit sequence, spacing-validated
    std::string output;
};

int run_verify_lemmas(const VerifyArgs& args, const CLI::App& app) {
    nlohmann::json out;
    out["tool_version"] = cli::kToolVersion;
    out["config_hash"] = cli::config_hash(app);
    nlohmann::json runs = nlohmann::json::array();

    int total_violations = 0;

    if (!args.xi.empty()) {
        // Explicit xi path: the spacing precondition is surfaced as a usage
        // error, matching the generator's contract.
        std::vector<DyadicRational> xi = cli::parse_rational_list(args.xi);
        for (size_t j = 1; j < xi.size(); ++j) {
            if (!(xi[j] + DyadicRational::scaled(1, 6 - static_cast<int>(j)) <= xi[j - 1]) ||
                xi[j].sign() < 0)
                throw std::invalid_argument("xi sequence violates the spacing constraint at index " +
                                            std::to_string(j));
        }
        std::vector<DyadicRational> rounded = round_xi(xi);
        DecompositionReport rep;
        std::vector<DyadicRational> X;
        for (const auto& x : rounded)
            if (std::find(X.begin(), X.end(), x) == X.end()) X.push_back(x);
        for (size_t j = 0; j < rounded.size(); ++j) {
            auto [yj, zj] = collect_yj_zj(X, rounded[j], static_cast<int>(j));
            check_partition(yj, zj, rounded[j], static_cast<int>(j), rep);
        }
        total_violations += static_cast<int>(rep.violations.size());
        nlohmann::json r;
        r["xi"] = args.xi;
        r["violations"] = rep.violations;
        runs.push_back(std::move(r));
    } else {
        for (int s = 0; s < args.seeds; ++s) {
            std::uint64_t seed = args.seed + static_cast<std::uint64_t>(s);
            DecompositionReport rep = run_decomposition_suite(args.J, args.d, args.b, seed);
            total_violations += static_cast<int>(rep.violations.size());
            nlohmann::json r;
            r["seed"] = seed;
            r["partitions"] = rep.partitions_checked;
            r["z_members"] = rep.z_members;
            r["w_members"] = rep.w_members;
            r["v_members"] = rep.v_members;
            r["violations"] = rep.violations;
            runs.push_back(std::move(r));
            if (!rep.violations.empty()) {
                std::cerr << "seed " << seed << ": " << rep.violations.size()
                          << " violation(s); first: " << rep.violations[0] << "\n";
            }
        }
    }

    out["runs"] = std::move(runs);
    out["total_violations"] = total_violations;
    cli::OutputTarget target(args.output);
    target.stream() << out.dump(2) << "\n";
    std::cerr << (total_violations == 0 ? "verify-lemmas: all checks passed\n"
                                        : "verify-lemmas: violations found\n");
    return total_violations == 0 ? ExitCode::kPass : ExitCode::kFail;
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

struct NormArgs {
    std::string family = "exp_staircase";
    std::vector<double> J = {4, 8, 16, 32};
    double p1 = 3.0, p2 = 3.0, p3 = 3.0;
    int N = 1024;
    double L = 4.0;
    int restarts = 32;
    int iterations = 200;
    double tolerance = 1e-7;
    int seeds = 1;
    std::uint64_t seed = 0;
    int d = 2, b = 2, beta = 0;
    std::string eta_mode = "full";
    std::string slope = "1";
    std::string offset = "0";
    std::string custom_json;
    bool unsafe_exponents = false;
    bool verbose = false;
    int threads = 0;
    std::string output;
    std::string svg;
};

int run_norm(const NormArgs& args, const CLI::App& app) {
    ExponentTriple exps = args.unsafe_exponents
                              ? ExponentTriple::unchecked(args.p1, args.p2, args.p3)
                              : ExponentTriple::make(args.p1, args.p2, args.p3);
    if (args.unsafe_exponents && (args.p1 <= 1 || args.p2 <= 1 || args.p3 <= 1))
        throw std::invalid_argument("exponents must exceed 1 even with --unsafe-exponents");

    Grid grid(args.N, args.L);
    SearchBudget budget{args.restarts, args.iterations, args.tolerance};

    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < args.seeds; ++s) seeds.push_back(args.seed + static_cast<std::uint64_t>(s));

    AdmissibleOptions adm;
    adm.beta = args.beta;
    adm.eta_mode = args.eta_mode == "jitter" ? EtaMode::Jitter : EtaMode::FullQuarter;

    std::function<Symbol(double, std::uint64_t)> family;
    if (args.family == "unit") {
        family = [&](double, std::uint64_t) -> Symbol { return unit_symbol(grid); };
    } else if (args.family == "exp_staircase") {
        family = [&](double J, std::uint64_t) -> Symbol {
            return exp_staircase(static_cast<int>(J));
        };
    } else if (args.family == "exp_convex") {
        family = [&](double J, std::uint64_t) -> Symbol {
            return exp_convex(static_cast<int>(J), grid);
        };
    } else if (args.family == "multilac") {
        family = [&](double J, std::uint64_t seed) -> Symbol {
            return multilac_staircase(
                generate_admissible(static_cast<int>(J), args.d, args.b, seed, adm));
        };
    } else if (args.family == "half_plane") {
        family = [&](double, std::uint64_t) -> Symbol {
            return half_plane(DyadicRational::parse(args.slope),
                              DyadicRational::parse(args.offset), grid);
        };
    } else if (args.family == "custom-json") {
        std::ifstream in(args.custom_json);
        if (!in) throw std::invalid_argument("cannot open symbol file '" + args.custom_json + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        StaircaseSymbol sym = staircase_from_json(text);
        family = [sym](double, std::uint64_t) -> Symbol { return sym; };
    } else {
        throw std::invalid_argument("unknown family '" + args.family + "'");
    }

    SweepTable table =
        sweep(args.family, family, args.J, seeds, exps, grid, budget, args.threads);

    cli::OutputTarget target(args.output);
    target.stream() << cli::csv_provenance(app);
    write_sweep_csv(target.stream(), table);
    std::cerr << "norm: family=" << args.family << " slope=" << table.slope
              << " max/min=" << table.max_min_ratio << "\n";

    if (args.verbose) {
        // full trace of the first (param, seed) cell as JSON alongside
        TrilinearProbe probe{family(args.J.front(), seeds.front()), exps, grid, budget};
        NormEstimateReport rep = ascend(probe, seeds.front(), true, args.threads);
        std::string path = args.output.empty() ? "norm_trace.json" : args.output + ".trace.json";
        std::ofstream js(path);
        js << to_json_string(rep) << "\n";
        std::cerr << "norm: trace written to " << path << "\n";
    }

    if (!args.svg.empty()) {
        std::vector<double> xs, ys;
        for (const auto& row : table.rows) {
            xs.push_back(row.param);
            ys.push_back(row.best_ratio);
        }
        cli::write_svg_lineplot(args.svg, xs, ys, "parameter", "best ratio",
                                "best Holder ratio, family " + args.family);
    }
    return ExitCode::kPass;
}

// ---------------------------------------------------------------------------
// sqfn / lepingle
// ---------------------------------------------------------------------------

struct SqfnArgs {
    double p = 4.0;
    std::vector<int> N = {256, 1024, 4096};
    double L = 16.0;
    double band = 4.0;  // physical half-width of the random input band
    int seeds = 3;
    std::uint64_t seed = 0;
    std::string intervals = "littlewood-paley";
    std::string output;
};

int run_sqfn(const SqfnArgs& args, const CLI::App& app) {
    if (!(args.p > 2.0) || std::isinf(args.p))
        throw std::invalid_argument("sqfn: requires 2 < p < inf");

    cli::OutputTarget target(args.output);
    target.stream() << cli::csv_provenance(app);
    target.stream() << "N,p,num_intervals,seed,ratio\n";
    target.stream().precision(12);

    std::vector<double> ns, means;
    for (int n : args.N) {
        Grid g(n, args.L);
        double acc = 0.0;
        int half = std::min(n / 4, static_cast<int>(std::llround(args.band * args.L)));
        for (int s = 0; s < args.seeds; ++s) {
            std::uint64_t seed = args.seed + static_cast<std::uint64_t>(s);
            DiscreteSignal f = make_random_trig(g, -half + 1, half, seed);
            std::vector<FreqInterval> family;
            if (args.intervals == "littlewood-paley") {
                family.push_back(FreqInterval::bounded(DyadicRational(-1), DyadicRational(1)));
                for (int j = 0; 2 * (2LL << j) < n / 2; ++j) {
                    family.push_back(FreqInterval::bounded(DyadicRational(1LL << j),
                                                           DyadicRational(2LL << j)));
                    family.push_back(FreqInterval::bounded(DyadicRational(-(2LL << j)),
                                                           DyadicRational(-(1LL << j))));
                }
            } else if (args.intervals == "random") {
                // random disjoint partition of the band into dyadic cells
                std::mt19937_64 rng(seed ^ 0xabcdef);
                int lo = -n / 4;
                while (lo < n / 4) {
                    int len = 1 << (rng() % 6);
                    int hi = std::min(lo + len, n / 4);
                    family.push_back(FreqInterval::bounded(
                        DyadicRational(lo).times_pow2(0), DyadicRational(hi)));
                    lo = hi;
                }
            } else {
                throw std::invalid_argument("unknown interval family '" + args.intervals + "'");
            }
            double ratio = square_function_ratio(f, family, args.p);
            acc += ratio;
            target.stream() << n << "," << args.p << "," << family.size() << "," << seed << ","
                            << ratio << "\n";
        }
        ns.push_back(n);
        means.push_back(acc / args.seeds);
    }
    if (ns.size() >= 2) {
        double slope = loglog_slope(ns, means);
        target.stream() << "slope,,,," << slope << "\n";
        std::cerr << "sqfn: slope=" << slope << "\n";
    }
    return ExitCode::kPass;
}

struct LepingleArgs {
    double p = 4.0;
    double r = 2.5;
    std::vector<int> N = {256, 1024, 4096};
    double L = 16.0;
    double band = 4.0;  // physical half-width of the random input band
    int seeds = 3;
    std::uint64_t seed = 0;
    std::string output;
};

int run_lepingle(const LepingleArgs& args, const CLI::App& app) {
    if (!(args.p > 1.0) || std::isinf(args.p))
        throw std::invalid_argument("lepingle: requires 1 < p < inf");
    if (!(args.r > 2.0) || std::isinf(args.r))
        throw std::invalid_argument("lepingle: requires 2 < r < inf");

    cli::OutputTarget target(args.output);
    target.stream() << cli::csv_provenance(app);
    target.stream() << "N,p,r,ratio\n";
    target.stream().precision(12);

    auto phi = FrequencyWindow::plateau();
    std::vector<double> ns, means;
    for (int n : args.N) {
        Grid g(n, args.L);
        double acc = 0.0;
        int half = std::min(n / 4, static_cast<int>(std::llround(args.band * args.L)));
        for (int s = 0; s < args.seeds; ++s) {
            DiscreteSignal f =
                make_random_trig(g, -half + 1, half, args.seed + static_cast<std::uint64_t>(s));
            double ratio = lepingle_ratio(f, args.p, args.r, phi);
            acc += ratio;
            target.stream() << n << "," << args.p << "," << args.r << "," << ratio << "\n";
        }
        ns.push_back(n);
        means.push_back(acc / args.seeds);
    }
    if (ns.size() >= 2) {
        double slope = loglog_slope(ns, means);
        target.stream() << "slope,,," << slope << "\n";
        std::cerr << "lepingle: slope=" << slope << "\n";
    }
    return ExitCode::kPass;
}

// ---------------------------------------------------------------------------
// signal-io
// ---------------------------------------------------------------------------

struct SignalGenArgs {
    std::string kind = "gaussian";
    int N = 256;
    double L = 1.0;
    double center = 0.5;
    double width = 0.05;
    double freq = 8.0;
    int band_lo = -16, band_hi = 16;
    int spike_width = 1;
    std::uint64_t seed = 0;
    std::string output;
};

DiscreteSignal generate_signal(const SignalGenArgs& args, std::string* warning) {
    Grid g(args.N, args.L);
    if (args.kind == "gaussian") return make_gaussian(g, args.center, args.width, warning);
    if (args.kind == "modulated_bump")
        return make_modulated_bump(g, args.center, args.width, args.freq, warning);
    if (args.kind == "random_trig") return make_random_trig(g, args.band_lo, args.band_hi, args.seed);
    if (args.kind == "spike") return make_spike(g, args.center, args.spike_width);
    throw std::invalid_argument("unknown generator kind '" + args.kind + "'");
}

void write_signal_file(const DiscreteSignal& f, const std::string& path) {
    bool binary = std::filesystem::path(path).extension() == ".bin";
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::invalid_argument("cannot open '" + path + "'");
    if (binary)
        write_signal_binary(os, f);
    else
        write_signal_csv(os, f);
}

DiscreteSignal read_signal_file(const std::string& path, double period) {
    bool binary = std::filesystem::path(path).extension() == ".bin";
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) throw std::invalid_argument("cannot open '" + path + "'");
    return binary ? read_signal_binary(is) : read_signal_csv(is, period);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paralab: discrete laboratory for bilinear multipliers with staircase symbols"};
    app.set_version_flag("--version", std::string("paralab ") + cli::kToolVersion);
    app.config_formatter(std::make_shared<cli::JsonConfig>());
    app.set_config("--config", "", "JSON config file");
    app.require_subcommand(1);

    // lacunary
    LacunaryArgs lac;
    auto* sub_lac = app.add_subcommand("lacunary", "decide (d,b)-lacunarity of a point set");
    sub_lac->add_option("--points", lac.points, "comma-separated rationals, e.g. 1,1/2,3/2^4");
    sub_lac->add_option("--points-file", lac.points_file, "file with one rational per line");
    sub_lac->add_option("--d", lac.d, "lacunarity depth")->required();
    sub_lac->add_option("--b", lac.b, "separation exponent")->required();
    sub_lac->add_option("--mode", lac.mode, "auto|exhaustive|heuristic")
        ->check(CLI::IsMember({"auto", "exhaustive", "heuristic"}));
    sub_lac->add_option("--budget", lac.budget, "exhaustive work budget");
    sub_lac->add_option("--max-exhaustive", lac.max_exhaustive, "point cap for exhaustive search");
    sub_lac->add_flag("--one-sided", lac.one_sided, "one-sided distance condition");
    sub_lac->add_option("-o,--output", lac.output, "JSON output path (default stdout)");

    // verify-lemmas
    VerifyArgs ver;
    auto* sub_ver = app.add_subcommand("verify-lemmas",
                                       "exact structural checks on the dyadic decompositions");
    sub_ver->add_option("--seeds", ver.seeds, "number of seeded instances");
    sub_ver->add_option("--seed", ver.seed, "first seed");
    sub_ver->add_option("--d", ver.d, "lacunarity depth");
    sub_ver->add_option("--b", ver.b, "separation exponent");
    sub_ver->add_option("--J", ver.J, "truncation length");
    sub_ver->add_option("--xi", ver.xi, "explicit xi sequence (spacing-validated)");
    sub_ver->add_option("-o,--output", ver.output, "JSON report path (default stdout)");

    // norm
    NormArgs nrm;
    auto* sub_norm = app.add_subcommand("norm", "adversarial Holder-ratio sweep");
    sub_norm->add_option("--family", nrm.family,
                         "unit|exp_staircase|exp_convex|multilac|half_plane|custom-json");
    sub_norm->add_option("--J", nrm.J, "sweep parameter values");
    sub_norm->add_option("--p1", nrm.p1, "first exponent");
    sub_norm->add_option("--p2", nrm.p2, "second exponent");
    sub_norm->add_option("--p3", nrm.p3, "third exponent");
    sub_norm->add_option("--N", nrm.N, "grid size (power of two)");
    sub_norm->add_option("--L", nrm.L, "physical period");
    sub_norm->add_option("--restarts", nrm.restarts, "ascent restarts");
    sub_norm->add_option("--iterations", nrm.iterations, "ascent iteration cap");
    sub_norm->add_option("--tol", nrm.tolerance, "relative gain tolerance");
    sub_norm->add_option("--seeds", nrm.seeds, "seeds per parameter value");
    sub_norm->add_option("--seed", nrm.seed, "first seed");
    sub_norm->add_option("--d", nrm.d, "multilac depth");
    sub_norm->add_option("--b", nrm.b, "multilac separation");
    sub_norm->add_option("--beta", nrm.beta, "quarter-shell index (0..2)");
    sub_norm->add_option("--eta-mode", nrm.eta_mode, "full|jitter")
        ->check(CLI::IsMember({"full", "jitter"}));
    sub_norm->add_option("--slope", nrm.slope, "half-plane slope (rational)");
    sub_norm->add_option("--offset", nrm.offset, "half-plane offset (rational)");
    sub_norm->add_option("--custom", nrm.custom_json, "staircase symbol JSON file");
    sub_norm->add_flag("--unsafe-exponents", nrm.unsafe_exponents,
                       "allow exponents outside the open local-L2 region");
    sub_norm->add_flag("--verbose", nrm.verbose, "write a full ascent trace JSON");
    sub_norm->add_option("--threads", nrm.threads, "worker threads (0 = hardware)");
    sub_norm->add_option("-o,--output", nrm.output, "CSV output path (default stdout)");
    sub_norm->add_option("--svg", nrm.svg, "SVG line-plot path");

    // sqfn
    SqfnArgs sq;
    auto* sub_sq = app.add_subcommand("sqfn", "square-function ratio scan across N");
    sub_sq->add_option("--p", sq.p, "exponent, 2 < p < inf");
    sub_sq->add_option("--N", sq.N, "grid sizes");
    sub_sq->add_option("--L", sq.L, "physical period");
    sub_sq->add_option("--band", sq.band, "physical half-width of the random input band");
    sub_sq->add_option("--seeds", sq.seeds, "seeds per size");
    sub_sq->add_option("--seed", sq.seed, "first seed");
    sub_sq->add_option("--intervals", sq.intervals, "littlewood-paley|random");
    sub_sq->add_option("-o,--output", sq.output, "CSV output path (default stdout)");

    // lepingle
    LepingleArgs lep;
    auto* sub_lep = app.add_subcommand("lepingle", "variational average ratio scan across N");
    sub_lep->add_option("--p", lep.p, "exponent, 1 < p < inf");
    sub_lep->add_option("--r", lep.r, "variation exponent, 2 < r < inf");
    sub_lep->add_option("--N", lep.N, "grid sizes");
    sub_lep->add_option("--L", lep.L, "physical period");
    sub_lep->add_option("--band", lep.band, "physical half-width of the random input band");
    sub_lep->add_option("--seeds", lep.seeds, "seeds per size");
    sub_lep->add_option("--seed", lep.seed, "first seed");
    sub_lep->add_option("-o,--output", lep.output, "CSV output path (default stdout)");

    // signal-io
    auto* sub_sig = app.add_subcommand("signal-io", "generate, convert, inspect signal files");
    SignalGenArgs gen;
    auto* sig_gen = sub_sig->add_subcommand("gen", "generate a test signal");
    sig_gen->add_option("--kind", gen.kind, "gaussian|modulated_bump|random_trig|spike");
    sig_gen->add_option("--N", gen.N, "grid size (power of two)");
    sig_gen->add_option("--L", gen.L, "physical period");
    sig_gen->add_option("--center", gen.center, "bump/spike center");
    sig_gen->add_option("--width", gen.width, "bump width");
    sig_gen->add_option("--freq", gen.freq, "modulation frequency");
    sig_gen->add_option("--band-lo", gen.band_lo, "random_trig band start (bin)");
    sig_gen->add_option("--band-hi", gen.band_hi, "random_trig band end (bin)");
    sig_gen->add_option("--spike-width", gen.spike_width, "spike width in samples");
    sig_gen->add_option("--seed", gen.seed, "random seed");
    sig_gen->add_option("-o,--output", gen.output, "output .csv or .bin")->required();

    std::string conv_in, conv_out;
    double conv_period = 1.0;
    auto* sig_conv = sub_sig->add_subcommand("convert", "convert between .csv and .bin");
    sig_conv->add_option("input", conv_in, "input file")->required();
    sig_conv->add_option("output", conv_out, "output file")->required();
    sig_conv->add_option("--L", conv_period, "period for csv inputs (binary carries its own)");

    std::string info_in;
    double info_period = 1.0;
    auto* sig_info = sub_sig->add_subcommand("info", "print signal statistics");
    sig_info->add_option("input", info_in, "input file")->required();
    sig_info->add_option("--L", info_period, "period for csv inputs");
    sub_sig->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : ExitCode::kUsage;
    }

    try {
        if (sub_lac->parsed()) return run_lacunary(lac, *sub_lac);
        if (sub_ver->parsed()) return run_verify_lemmas(ver, *sub_ver);
        if (sub_norm->parsed()) return run_norm(nrm, *sub_norm);
        if (sub_sq->parsed()) return run_sqfn(sq, *sub_sq);
        if (sub_lep->parsed()) return run_lepingle(lep, *sub_lep);
        if (sub_sig->parsed()) {
            if (sig_gen->parsed()) {
                std::string warning;
                DiscreteSignal f = generate_signal(gen, &warning);
                if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
                write_signal_file(f, gen.output);
                std::cerr << "signal-io: wrote " << gen.output << "\n";
                return ExitCode::kPass;
            }
            if (sig_conv->parsed()) {
                DiscreteSignal f = read_signal_file(conv_in, conv_period);
                write_signal_file(f, conv_out);
                return ExitCode::kPass;
            }
            if (sig_info->parsed()) {
                DiscreteSignal f = read_signal_file(info_in, info_period);
                std::cout << "N=" << f.size() << " L=" << f.grid().period
                          << " l2=" << lp_norm(f, 2.0)
                          << " sup=" << lp_norm(f, std::numeric_limits<double>::infinity())
                          << " band_mass_outside_half=" << spectral_mass_outside(f, -f.size() / 4, f.size() / 4)
                          << "\n";
                return ExitCode::kPass;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return ExitCode::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitCode::kFail;
    }
    return ExitCode::kUsage;
}
