// Shared helpers for the test suites: deterministic random generators for
// dyadic data and signals, and small independent oracles.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "paralab/dyadic.hpp"
#include "paralab/signal.hpp"

namespace testsupport {

using paralab::DyadicInterval;
using paralab::DyadicRational;
using paralab::ExactInterval;

inline DyadicRational random_dyadic(std::mt19937_64& rng, int num_range = 64, int min_exp = -6,
                                    int max_exp = 2) {
    long long n = static_cast<long long>(rng() % (2 * num_range + 1)) - num_range;
    int e = min_exp + static_cast<int>(rng() % static_cast<unsigned>(max_exp - min_exp + 1));
    return DyadicRational::scaled(n, e);
}

inline std::vector<DyadicRational> random_dyadic_set(std::mt19937_64& rng, int count,
                                                     int num_range = 64, int min_exp = -6,
                                                     int max_exp = 2) {
    std::vector<DyadicRational> out;
    while (static_cast<int>(out.size()) < count) {
        DyadicRational x = random_dyadic(rng, num_range, min_exp, max_exp);
        bool dup = false;
        for (const auto& y : out) dup = dup || y == x;
        if (!dup) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Plain full enumeration of maximal triple-avoiding dyadic intervals:
// lists every candidate, keeps the eligible ones, filters to maximal.
inline std::vector<DyadicInterval> collect_z_oracle(const std::vector<DyadicRational>& X,
                                                    paralab::ScaleRange scales,
                                                    const ExactInterval& domain) {
    std::vector<DyadicInterval> eligible;
    for (int m = scales.m_min; m <= scales.m_max; ++m) {
        DyadicInterval I = paralab::dyadic_cover(domain.lo, m);
        for (; I.lower() < domain.hi; ++I.k) {
            if (!domain.contains(I.as_interval())) continue;
            ExactInterval t = paralab::triple(I);
            bool hit = false;
            for (const auto& x : X) hit = hit || t.contains(x);
            if (!hit) eligible.push_back(I);
        }
    }
    std::vector<DyadicInterval> maximal;
    for (const auto& I : eligible) {
        bool contained = false;
        for (const auto& J : eligible)
            if (!(J == I) && J.contains(I)) contained = true;
        if (!contained) maximal.push_back(I);
    }
    std::sort(maximal.begin(), maximal.end(), [](const DyadicInterval& a, const DyadicInterval& b) {
        return a.lower() < b.lower();
    });
    return maximal;
}

// Quadratic overlap count: for every interval endpoint, count containing
// intervals directly.
inline int overlap_count_oracle(const std::vector<ExactInterval>& intervals) {
    int best = 0;
    for (const auto& probe : intervals) {
        if (probe.empty()) continue;
        for (const DyadicRational& x : {probe.lo, probe.hi}) {
            int c = 0;
            for (const auto& iv : intervals)
                if (!iv.empty() && iv.contains(x)) ++c;
            best = std::max(best, c);
        }
    }
    return best;
}

inline paralab::DiscreteSignal random_band_signal(const paralab::Grid& g, std::uint64_t seed,
                                                  int margin = 0) {
    int q = g.n / 4 - margin;
    return paralab::make_random_trig(g, -q, q, seed);
}

inline double rel_l2_error(const paralab::DiscreteSignal& a, const paralab::DiscreteSignal& b) {
    double num = paralab::lp_norm(a - b, 2.0);
    double den = std::max(paralab::lp_norm(a, 2.0), paralab::lp_norm(b, 2.0));
    return den == 0.0 ? num : num / den;
}

}  // namespace testsupport
