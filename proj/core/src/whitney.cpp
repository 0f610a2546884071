#include "paralab/whitney.hpp"

#include <algorithm>
#include <map>

namespace paralab {

namespace {

// Minimal level whose points meet 3I; -1 when none do.
int interval_level(const DyadicInterval& I,
                   const std::vector<std::vector<DyadicRational>>& o_levels) {
    ExactInterval t = triple(I);
    for (size_t i = 0; i < o_levels.size(); ++i)
        for (const auto& x : o_levels[i])
            if (t.contains(x)) return static_cast<int>(i);
    return -1;
}

std::string describe(const DyadicInterval& I) {
    return "[" + I.lower().to_string() + ", " + I.upper().to_string() + ")";
}

}  // namespace

std::vector<IntervalCollection> partition_y_levels(
    const std::vector<std::vector<DyadicRational>>& o_levels, ScaleRange scales,
    const ExactInterval& domain) {
    std::vector<DyadicRational> all;
    for (const auto& lvl : o_levels) all.insert(all.end(), lvl.begin(), lvl.end());

    std::vector<IntervalCollection> out(o_levels.size());
    for (size_t i = 0; i < out.size(); ++i) out[i].label = CollectionLabel::Wi;

    for (int m = scales.m_min; m <= scales.m_max; ++m) {
        for (const auto& I : y_members_at_scale(all, m, domain)) {
            int lvl = interval_level(I, o_levels);
            if (lvl >= 0) out[lvl].intervals.push_back(I);
        }
    }
    return out;
}

std::pair<IntervalCollection, IntervalCollection> collect_wi_vi(
    const std::vector<IntervalCollection>& y_levels,
    const std::vector<std::vector<DyadicRational>>& o_levels,
    const std::vector<DyadicRational>& xi, int i, int b) {
    if (i < 0 || i >= static_cast<int>(y_levels.size()))
        throw std::invalid_argument("collect_wi_vi: level index out of range");
    if (b < 0) throw std::invalid_argument("collect_wi_vi: b must be nonnegative");
    if (o_levels.size() != y_levels.size())
        throw std::invalid_argument("collect_wi_vi: level partition and Y levels disagree");

    const auto& yi = y_levels[i].intervals;

    // Maximal members: sort by left endpoint, longer first at equal left.
    std::vector<DyadicInterval> sorted = yi;
    std::sort(sorted.begin(), sorted.end(), [](const DyadicInterval& a, const DyadicInterval& b2) {
        DyadicRational la = a.lower(), lb = b2.lower();
        if (la != lb) return la < lb;
        return a.m > b2.m;
    });
    IntervalCollection wi;
    wi.label = CollectionLabel::Wi;
    for (const auto& I : sorted) {
        if (!wi.intervals.empty() && wi.intervals.back().contains(I)) continue;
        wi.intervals.push_back(I);
    }

    // Members of Y^(i) indexed by the truncation they belong to: scale 4-j
    // inside [0, xi_j).
    auto in_yj = [&](const DyadicInterval& I) {
        int j = 4 - I.m;
        if (j < 0 || j >= static_cast<int>(xi.size())) return false;
        return I.lower() >= DyadicRational(0) && I.upper() <= xi[j];
    };

    // Each witness I' lands in exactly one candidate subinterval of its W,
    // so one pass over Y^(i) marks all witnessed candidates.
    IntervalCollection vi;
    vi.label = CollectionLabel::Vi;
    for (const auto& W : wi.intervals) {
        int mv = W.m - (b + 4);
        long long base = W.k << (b + 4);
        std::vector<char> witnessed(1LL << (b + 4), 0);
        for (const auto& I : yi) {
            if (I.m > mv || !W.contains(I) || !in_yj(I)) continue;
            DyadicInterval anc = I;
            while (anc.m < mv) anc = anc.parent();
            witnessed[anc.k - base] = 1;
        }
        for (long long t = 0; t < (1LL << (b + 4)); ++t)
            if (witnessed[t]) vi.intervals.push_back({base + t, mv});
    }
    return {std::move(wi), std::move(vi)};
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

void check_partition(const IntervalCollection& yj, const IntervalCollection& zj,
                     const DyadicRational& xi_j, int j, DecompositionReport& report) {
    report.partitions_checked++;
    std::vector<DyadicInterval> all = yj.intervals;
    all.insert(all.end(), zj.intervals.begin(), zj.intervals.end());
    std::sort(all.begin(), all.end(), [](const DyadicInterval& a, const DyadicInterval& b) {
        return a.lower() < b.lower();
    });

    DyadicRational min_len = DyadicRational::scaled(1, 4 - j);
    for (const auto& I : all)
        if (I.length() < min_len)
            report.violations.push_back("partition j=" + std::to_string(j) + ": member " +
                                        describe(I) + " shorter than 2^(4-j)");

    DyadicRational cursor(0);
    for (const auto& I : all) {
        if (I.lower() != cursor) {
            report.violations.push_back("partition j=" + std::to_string(j) + ": gap or overlap at " +
                                        cursor.to_string() + " (next member " + describe(I) + ")");
            return;
        }
        cursor = I.upper();
    }
    if (cursor != xi_j)
        report.violations.push_back("partition j=" + std::to_string(j) + ": tiles reach " +
                                    cursor.to_string() + " instead of xi_j = " + xi_j.to_string());
}

void check_extension_geometry(const IntervalCollection& family, const std::string& name,
                              DecompositionReport& report) {
    const auto& members = family.intervals;
    std::vector<ExactInterval> extensions;
    extensions.reserve(members.size());
    for (const auto& I : members) extensions.push_back(right_extension(I));

    for (size_t a = 0; a < members.size(); ++a) {
        for (size_t c = 0; c < members.size(); ++c) {
            if (a == c) continue;
            if (members[c].as_interval().intersects(extensions[a]) &&
                members[c].length() < members[a].length().times_pow2(-2))
                report.violations.push_back(name + ": " + describe(members[c]) +
                                            " meets the extension of " + describe(members[a]) +
                                            " but is shorter than a quarter of it");
        }
    }
    int depth = overlap_count(extensions);
    if (depth > 2)
        report.violations.push_back(name + ": right extensions overlap with depth " +
                                    std::to_string(depth) + " > 2");
}

void check_unique_point(const IntervalCollection& vi,
                        const std::vector<DyadicRational>& o_level_i, int i,
                        DecompositionReport& report) {
    for (const auto& J : vi.intervals) {
        ExactInterval seven = scaled_concentric(J, 7);
        int count = 0;
        for (const auto& x : o_level_i)
            if (seven.contains(x)) ++count;
        if (count != 1)
            report.violations.push_back("V^(" + std::to_string(i) + "): member " + describe(J) +
                                        " has " + std::to_string(count) +
                                        " points of O_i in 7J (expected exactly 1)");
    }
}

void check_z_maximality(const IntervalCollection& z, std::span<const DyadicRational> X,
                        const ExactInterval& domain, DecompositionReport& report) {
    for (const auto& I : z.intervals) {
        DyadicInterval parent = I.parent();
        if (!domain.contains(parent.as_interval())) continue;  // truncation boundary
        ExactInterval t = triple(parent);
        bool hits = false;
        for (const auto& x : X)
            if (t.contains(x)) {
                hits = true;
                break;
            }
        if (!hits)
            report.violations.push_back("Z: member " + describe(I) +
                                        " is not maximal (parent triple also avoids X)");
    }
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

DecompositionReport run_decomposition_suite(int J, int d, int b, std::uint64_t seed) {
    DecompositionReport report;

    AdmissibleSequences seqs = generate_admissible(J, d, b, seed);
    std::vector<DyadicRational> xi = round_xi(seqs.xi);

    // Rounded certificate: same levels, parameter b+2 (distances distort by
    // at most a factor of 2 each way).
    std::map<std::string, DyadicRational> rounded_of;
    for (int j = 0; j < J; ++j) rounded_of[seqs.xi[j].to_string()] = xi[j];
    LacunarityCertificate rounded_cert;
    rounded_cert.b = b + 2;
    for (const auto& level : seqs.certificate.levels) {
        std::vector<DyadicRational> pts;
        for (const auto& x : level) pts.push_back(rounded_of.at(x.to_string()));
        rounded_cert.levels.push_back(std::move(pts));
    }
    VerifyResult cert_check = verify_certificate(rounded_cert);
    if (!cert_check)
        for (const auto& v : cert_check.violations)
            report.violations.push_back("rounded certificate: " + v.what);

    std::vector<DyadicRational> X = rounded_cert.flatten();

    // Lemma-style partitions for every truncation index.
    for (int j = 0; j < J; ++j) {
        auto [yj, zj] = collect_yj_zj(X, xi[j], j);
        check_partition(yj, zj, xi[j], j, report);
    }

    // Global Z over the hull, with its maximality and overlap properties.
    DyadicRational span(1);
    for (const auto& x : X) span = max(span, x.abs());
    int m_max = span.floor_log2() + 1;
    int m_min = 5 - J - 4;
    ExactInterval domain{DyadicRational::scaled(-1, m_max), DyadicRational::scaled(1, m_max)};
    IntervalCollection z = collect_z(X, {m_min, m_max}, domain);
    report.z_members = static_cast<int>(z.intervals.size());
    if (!z.pairwise_disjoint()) report.violations.push_back("Z: members are not pairwise disjoint");
    check_z_maximality(z, X, domain, report);
    check_extension_geometry(z, "Z", report);

    // Per-level Whitney families and the refined collections.
    auto y_levels = partition_y_levels(rounded_cert.levels, {m_min, m_max}, domain);
    for (int i = 0; i <= d; ++i) {
        auto [wi, vi] = collect_wi_vi(y_levels, rounded_cert.levels, xi, i, rounded_cert.b);
        report.w_members += static_cast<int>(wi.intervals.size());
        report.v_members += static_cast<int>(vi.intervals.size());
        check_extension_geometry(wi, "W^(" + std::to_string(i) + ")", report);
        check_unique_point(vi, rounded_cert.levels[i], i, report);
    }
    return report;
}

}  // namespace paralab
