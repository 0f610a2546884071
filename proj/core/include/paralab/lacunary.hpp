// Multi-lacunary point sets: certificates, exhaustive and heuristic search,
// level decompositions, and generators for admissible frequency sequences.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paralab/dyadic.hpp"

namespace paralab {

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// Witness that a finite set is (d, b)-lacunary: a partition into levels
/// O_0, ..., O_d where O_0 is a singleton and each point pair at level i+1
/// is separated by at least 2^-b times its distance to the union of the
/// earlier levels.
struct LacunarityCertificate {
    std::vector<std::vector<DyadicRational>> levels;  // O_0 .. O_d
    int b = 0;

    int d() const { return static_cast<int>(levels.size()) - 1; }
    std::vector<DyadicRational> flatten() const;  // union of levels, sorted
};

struct CertificateViolation {
    std::string what;  // human-readable: level, pair, distances
};

struct VerifyResult {
    bool ok = true;
    std::vector<CertificateViolation> violations;
    explicit operator bool() const { return ok; }
};

/// Checks every certificate invariant in exact arithmetic. By default the
/// separation condition is enforced for both orderings of each pair
/// (dist(x,y) >= 2^-b * max(dist(x,L), dist(y,L))); `one_sided` relaxes it
/// to the weaker single-ordering reading.
VerifyResult verify_certificate(const LacunarityCertificate& cert, bool one_sided = false);

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

struct LacunarySearchOptions {
    /// Hard cap on |X| for the exhaustive engine (bitmask width).
    int exhaustive_max_points = 24;
    /// Work budget (memoized subset transitions) before declaring Undecided.
    std::uint64_t work_budget = 50'000'000;
    /// Allow the greedy fallback above exhaustive_max_points.
    bool allow_heuristic = true;
    bool one_sided = false;
};

enum class LacunaryStatus { Found, NotLacunary, Undecided };

struct LacunarySearchResult {
    LacunaryStatus status = LacunaryStatus::Undecided;
    std::optional<LacunarityCertificate> certificate;
    bool heuristic = false;       // result produced by the incomplete engine
    std::uint64_t work_used = 0;  // transitions consumed by the exhaustive engine
};

/// Decides (d, b)-lacunarity of X. Exhaustive and complete while |X| and the
/// work budget allow; otherwise a flagged greedy heuristic that can only
/// return Found or Undecided.
LacunarySearchResult is_lacunary(std::span<const DyadicRational> X, int d, int b,
                                 const LacunarySearchOptions& opts = {});

/// Splits a valid certificate into its per-level sets O_0..O_d and checks
/// that every prefix union is (i, b)-lacunary. Throws on invalid input.
std::vector<std::vector<DyadicRational>> decompose(const LacunarityCertificate& cert);

// ---------------------------------------------------------------------------
// Admissible sequences
// ---------------------------------------------------------------------------

/// Truncated sequences (xi_j), (eta_j), (zeta_j), j = 0..J-1, with
///   2^-j <= eta_j <= zeta_j < 2^(2-j)        (shell constraint)
///   0 <= xi_j + 2^(6-j) <= xi_{j-1}          (spacing constraint)
/// and the image of (xi_j) certified (d, b)-lacunary. `beta` records the
/// quarter-shell refinement when the eta-intervals were generated inside
///   [2^-j + beta 2^-j, 2^-j + (beta+1) 2^-j].
struct AdmissibleSequences {
    std::vector<DyadicRational> xi;
    std::vector<DyadicRational> eta;
    std::vector<DyadicRational> zeta;
    int length = 0;
    std::optional<int> beta;  // in {0,1,2,3} when refined
    LacunarityCertificate certificate;

    VerifyResult check_spacing() const;  // both displayed constraints, exact
};

enum class EtaMode {
    FullQuarter,  // eta-intervals fill their quarter shell exactly
    Jitter,       // randomized endpoints inside the quarter shell
};

struct AdmissibleOptions {
    std::optional<int> beta = 0;  // quarter-shell index; nullopt = raw shell (may overlap)
    EtaMode eta_mode = EtaMode::Jitter;
    bool chain_only = false;  // degenerate to a single geometric cascade
};

/// Deterministic pseudorandom admissible sequences for the staircase
/// probes. Requires d >= 2, b >= 2, 1 <= J <= 48 (exponent budget); throws
/// naming the first infeasible index otherwise. The returned certificate is
/// always re-verified before returning.
AdmissibleSequences generate_admissible(int J, int d, int b, std::uint64_t seed,
                                        const AdmissibleOptions& opts = {});

/// xi'_j = largest integer multiple of 2^(4-j) <= xi_j.
std::vector<DyadicRational> round_xi(std::span<const DyadicRational> xi);

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// {"b": int, "d": int, "levels": [["p/2^m", ...], ...]}
std::string to_json_string(const LacunarityCertificate& cert);
LacunarityCertificate certificate_from_json(const std::string& text);

}  // namespace paralab
