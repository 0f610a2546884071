// Whitney-type dyadic decompositions relative to a finite point set and the
// exact structural checks on them: the partition of [0, xi_j) into Y_j and
// Z_j, maximality, bounded overlap of right extensions, and the
// unique-point property of the refined collection V^(i).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paralab/dyadic.hpp"
#include "paralab/lacunary.hpp"

namespace paralab {

// ---------------------------------------------------------------------------
// Level-aware collections
// ---------------------------------------------------------------------------

/// Y restricted to levels: member I sits at level i when 3I meets O_i but no
/// earlier O_{i'}. Scales and domain are truncated explicitly (the full Y is
/// unbounded toward coarse scales).
std::vector<IntervalCollection> partition_y_levels(
    const std::vector<std::vector<DyadicRational>>& o_levels, ScaleRange scales,
    const ExactInterval& domain);

/// W^(i) = maximal intervals of Y^(i), and V^(i) = dyadic I such that some
/// W in W^(i) satisfies I inside W with 2^(b+4)|I| = |W| and I contains at
/// least one member of Y_j cap Y^(i) for some j (Y_j relative to the
/// rounded xi sequence).
std::pair<IntervalCollection, IntervalCollection> collect_wi_vi(
    const std::vector<IntervalCollection>& y_levels,
    const std::vector<std::vector<DyadicRational>>& o_levels,
    const std::vector<DyadicRational>& xi, int i, int b);

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

struct DecompositionReport {
    std::vector<std::string> violations;
    int partitions_checked = 0;
    int w_members = 0;
    int v_members = 0;
    int z_members = 0;
    bool ok() const { return violations.empty(); }
};

/// Y_j and Z_j tile [0, xi_j) exactly and every member has length at least
/// 2^(4-j).
void check_partition(const IntervalCollection& yj, const IntervalCollection& zj,
                     const DyadicRational& xi_j, int j, DecompositionReport& report);

/// Every member of a maximal family whose right extension I + [0, 2^-2 |I|)
/// meets another member J satisfies |J| >= 2^-2 |I|; consequently the
/// extensions have overlap at most 2.
void check_extension_geometry(const IntervalCollection& family, const std::string& name,
                              DecompositionReport& report);

/// Every V-member J has exactly one point of O_i inside 7J.
void check_unique_point(const IntervalCollection& vi,
                        const std::vector<DyadicRational>& o_level_i, int i,
                        DecompositionReport& report);

/// Every member of Z is maximal: its parent's triple meets X (or leaves the
/// domain).
void check_z_maximality(const IntervalCollection& z, std::span<const DyadicRational> X,
                        const ExactInterval& domain, DecompositionReport& report);

// ---------------------------------------------------------------------------
// End-to-end suite
// ---------------------------------------------------------------------------

/// Full pipeline for one seeded instance: generate admissible sequences at
/// (d, b), round the xi sequence to multiples of 2^(4-j), re-certify the
/// rounded image at b+2, build every collection, and run all checks.
DecompositionReport run_decomposition_suite(int J, int d, int b, std::uint64_t seed);

}  // namespace paralab
