// Bilinear frequency symbols m(xi, eta) and the discrete bilinear operator
// B_m(f, g). Staircase symbols (finite unions of axis-aligned rectangles
// with dyadic-rational corners) carry a fast per-rectangle evaluation path;
// grid-sampled symbols go through the direct quadratic sum. Both paths are
// kept so each can validate the other.

#pragma once

#include <variant>
#include <vector>

#include "paralab/dyadic.hpp"
#include "paralab/lacunary.hpp"
#include "paralab/signal.hpp"

namespace paralab {

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

/// Axis-aligned frequency rectangle [xi.lo, xi.hi) x [eta.lo, eta.hi).
struct SymbolRectangle {
    ExactInterval xi;
    ExactInterval eta;

    bool empty() const { return xi.empty() || eta.empty(); }
    bool disjoint_from(const SymbolRectangle& o) const {
        return empty() || o.empty() || !xi.intersects(o.xi) || !eta.intersects(o.eta);
    }
    DyadicRational area() const {
        return empty() ? DyadicRational(0) : xi.length() * eta.length();
    }
};

/// Finite list of pairwise disjoint rectangles. Degenerate rectangles are
/// allowed (they carry no plane mass and no grid bins).
class StaircaseSymbol {
  public:
    explicit StaircaseSymbol(std::vector<SymbolRectangle> rects);

    const std::vector<SymbolRectangle>& rectangles() const { return rects_; }
    DyadicRational area() const;
    bool contains(const DyadicRational& xi, const DyadicRational& eta) const;

  private:
    std::vector<SymbolRectangle> rects_;
};

/// N x N table of symbol values in [0, 1] sampled at bin lower-left corners
/// (xi-bin, eta-bin), centered bin order.
struct GridSymbol {
    Grid grid;
    std::vector<double> table;  // row-major: (xi_idx * N + eta_idx)

    double at(int xi_bin, int eta_bin) const {
        return table[static_cast<size_t>(xi_bin + grid.n / 2) * grid.n + (eta_bin + grid.n / 2)];
    }
    void set(int xi_bin, int eta_bin, double v) {
        table[static_cast<size_t>(xi_bin + grid.n / 2) * grid.n + (eta_bin + grid.n / 2)] = v;
    }
};

/// Exponent triple in the open local-L2 region: 2 < p1, p2, p3 < inf with
/// reciprocals summing to 1 (to 1e-12).
struct ExponentTriple {
    double p1, p2, p3;

    static ExponentTriple make(double p1, double p2, double p3);   // validates
    static ExponentTriple unchecked(double p1, double p2, double p3) { return {p1, p2, p3}; }
    bool valid() const;
    /// Dual exponent p3' = p3 / (p3 - 1) used for the output norm.
    double p3_dual() const { return p3 / (p3 - 1.0); }
};

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Rectangles [-(j+1), -j) x [2^-j, 1) for j = 0..J-1. The j = 0 rectangle
/// is degenerate.
StaircaseSymbol exp_staircase(int J);

/// Indicator of the convex set { xi <= 0, 2^xi <= eta < 1 } sampled at bin
/// corners; the grid must cover [-J, 0) x [0, 1). Membership on the curved
/// boundary is exact when xi is an integer, long-double with
/// ties-to-membership otherwise.
GridSymbol exp_convex(int J, const Grid& resolution);

/// Rectangles [0, xi_j) x [eta_j, zeta_j). Errors when the eta-intervals
/// overlap (the rectangles would not be disjoint).
StaircaseSymbol multilac_staircase(const AdmissibleSequences& seqs);

/// Indicator of { eta >= slope * xi + offset } at bin corners.
GridSymbol half_plane(const DyadicRational& slope, const DyadicRational& offset,
                      const Grid& resolution);

/// Single rectangle covering the admissible frequency band; the discrete
/// m = 1.
StaircaseSymbol unit_symbol(const Grid& g);

// ---------------------------------------------------------------------------
// The bilinear operator
// ---------------------------------------------------------------------------

enum class BilinearMethod {
    Auto,        // rectangles when available
    Rectangles,  // B_m = sum over rectangles (M_I f)(M_J g), O(R N log N)
    Direct,      // output spectrum C(k) = sum_xi m(xi, k-xi) fhat ghat, O(N^2)
};

/// Inputs must live on the same grid and be band-limited to
/// [-N/4, N/4) bins (relative spectral leakage <= 1e-12) so the output band
/// fits the grid without wraparound; violations throw.
DiscreteSignal apply_bilinear(const StaircaseSymbol& m, const DiscreteSignal& f,
                              const DiscreteSignal& g,
                              BilinearMethod method = BilinearMethod::Auto);
DiscreteSignal apply_bilinear(const GridSymbol& m, const DiscreteSignal& f,
                              const DiscreteSignal& g);

/// L2 residual between apply_bilinear(exp_staircase(J), f, g) and the
/// row-regrouped form sum_j (M_{(-inf,-j-1)} f restricted to xi >= -J)
/// (M_{[2^-j-1, 2^-j)} g). An exact identity of the truncated staircase, so
/// the residual is pure round-off.
double regrouping_check(int J, const DiscreteSignal& f, const DiscreteSignal& g);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// Staircase: {"rectangles": [{"xi": [lo, hi], "eta": [lo, hi]}, ...]} with
/// rational-string endpoints.
std::string to_json_string(const StaircaseSymbol& s);
StaircaseSymbol staircase_from_json(const std::string& text);

/// Grid symbol: {"grid": {"n":, "period":}, "first": v, "runs": [[value, count], ...]}
/// run-length encoded row-major.
std::string to_json_string(const GridSymbol& s);
GridSymbol grid_symbol_from_json(const std::string& text);

}  // namespace paralab
