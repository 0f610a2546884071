// Empirical lower bounds on the Holder constant of B_m: alternating dual
// ascent over test-function triples, plus parameter sweeps with a fitted
// log-log slope as the uniformity statistic.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "paralab/symbols.hpp"

namespace paralab {

using Symbol = std::variant<StaircaseSymbol, GridSymbol>;

struct SearchBudget {
    int restarts = 32;
    int iterations = 200;
    double tolerance = 1e-7;  // relative ratio gain per cycle
};

struct TrilinearProbe {
    Symbol symbol;
    ExponentTriple exponents;
    Grid grid;
    SearchBudget budget;
};

/// |<B_m(f,g), h>| / (||f||_p1 ||g||_p2 ||h||_p3) with the real pairing.
/// Errors when any norm vanishes.
double trilinear_ratio(const Symbol& m, const DiscreteSignal& f, const DiscreteSignal& g,
                       const DiscreteSignal& h, const ExponentTriple& exps);

struct RestartResult {
    double ratio = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;  // ratio after each cycle, nondecreasing
    // final triple as spectra (centered order), kept when tracing
    std::vector<complex_t> f_spectrum, g_spectrum, h_spectrum;
};

struct NormEstimateReport {
    double best_ratio = 0.0;
    int best_restart = -1;
    std::uint64_t seed = 0;            // top-level seed
    std::uint64_t witness_seed = 0;    // derived seed of the winning restart
    int iterations = 0;                // of the winning restart
    bool converged = true;             // all restarts converged
    std::vector<RestartResult> restarts;
    std::string parameters;            // echo of the probe as JSON
};

/// Alternating dual ascent: with two slots fixed the pairing is linear in
/// the third; the closed-form unit-norm maximizer is the p-norm dual
/// element of the partial kernel, band-projected. Updates that fail to
/// improve the ratio are discarded, so traces are nondecreasing.
/// Non-convergence within the budget is reported, never thrown.
NormEstimateReport ascend(const TrilinearProbe& probe, std::uint64_t seed,
                          bool keep_trace = false, int threads = 0);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepRow {
    std::string family;
    double param = 0.0;
    std::uint64_t seed = 0;
    double best_ratio = 0.0;
    int iterations = 0;
    bool converged = true;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    double slope = 0.0;           // least-squares slope of log(ratio) vs log(param)
    double max_min_ratio = 1.0;   // dispersion of best_ratio across rows
};

/// Runs ascend for every (param, seed) pair of the family.
SweepTable sweep(const std::string& family_name,
                 const std::function<Symbol(double param, std::uint64_t seed)>& family,
                 std::span<const double> params, std::span<const std::uint64_t> seeds,
                 const ExponentTriple& exps, const Grid& grid, const SearchBudget& budget,
                 int threads = 0);

/// CSV: family,param,seed,best_ratio,iterations,converged plus trailing
/// summary rows for the slope and dispersion statistics.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

/// Full trace report as JSON.
std::string to_json_string(const NormEstimateReport& report);

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 are
/// rejected.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace paralab
