#include "paralab/lacunary.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>

#include "json.hpp"

namespace paralab {

namespace {

DyadicRational dist_to_set(const DyadicRational& x, std::span<const DyadicRational> set) {
    if (set.empty()) throw std::logic_error("dist_to_set: empty set");
    DyadicRational best = dyadic_dist(x, set[0]);
    for (size_t i = 1; i < set.size(); ++i) best = min(best, dyadic_dist(x, set[i]));
    return best;
}

// dist(p,q) >= 2^-b * dist(p, L), with the symmetric (max) or one-sided
// (min) aggregation over the two orderings.
bool pair_condition(const DyadicRational& p, const DyadicRational& q,
                    std::span<const DyadicRational> L, int b, bool one_sided,
                    std::string* why = nullptr) {
    DyadicRational dpq = dyadic_dist(p, q);
    DyadicRational dp = dist_to_set(p, L);
    DyadicRational dq = dist_to_set(q, L);
    DyadicRational ref = one_sided ? min(dp, dq) : max(dp, dq);
    if (dpq >= ref.times_pow2(-b)) return true;
    if (why) {
        *why = "pair (" + p.to_string() + ", " + q.to_string() + "): dist " + dpq.to_string() +
               " < 2^-" + std::to_string(b) + " * " + ref.to_string();
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

std::vector<DyadicRational> LacunarityCertificate::flatten() const {
    std::vector<DyadicRational> all;
    for (const auto& level : levels) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end());
    return all;
}

VerifyResult verify_certificate(const LacunarityCertificate& cert, bool one_sided) {
    VerifyResult res;
    auto fail = [&](std::string msg) {
        res.ok = false;
        res.violations.push_back({std::move(msg)});
    };

    if (cert.levels.empty()) {
        fail("certificate has no levels");
        return res;
    }
    if (cert.b < 0) fail("negative b");
    if (cert.levels[0].size() != 1) fail("O_0 must be a singleton, has " +
                                         std::to_string(cert.levels[0].size()) + " points");

    // Levels must partition: no duplicates anywhere.
    std::vector<DyadicRational> all = cert.flatten();
    for (size_t i = 0; i + 1 < all.size(); ++i)
        if (all[i] == all[i + 1]) fail("duplicate point " + all[i].to_string() + " across levels");

    std::vector<DyadicRational> prefix;
    for (size_t i = 0; i < cert.levels.size(); ++i) {
        const auto& level = cert.levels[i];
        if (i > 0 && !prefix.empty()) {
            for (size_t a = 0; a < level.size(); ++a) {
                for (size_t c = a + 1; c < level.size(); ++c) {
                    std::string why;
                    if (!pair_condition(level[a], level[c], prefix, cert.b, one_sided, &why))
                        fail("level " + std::to_string(i) + ": " + why);
                }
            }
        } else if (i > 0 && prefix.empty()) {
            if (!level.empty()) fail("level " + std::to_string(i) + " nonempty but all earlier levels empty");
        }
        prefix.insert(prefix.end(), level.begin(), level.end());
    }
    return res;
}

// ---------------------------------------------------------------------------
// Exhaustive search
// ---------------------------------------------------------------------------

namespace {

struct MaskSearch {
    std::span<const DyadicRational> pts;
    int b = 0;
    bool one_sided = false;
    std::uint64_t budget = 0;
    std::uint64_t work = 0;
    bool exhausted = false;
    // memo value: 0 unknown, 1 = yes (next = chosen L submask), 2 = no
    struct Entry {
        int verdict = 0;
        std::uint32_t chosen_L = 0;
    };
    std::unordered_map<std::uint64_t, Entry> memo;

    static std::uint64_t key(std::uint32_t mask, int depth) {
        return (static_cast<std::uint64_t>(depth) << 32) | mask;
    }

    bool pair_cond_masked(std::uint32_t O, std::uint32_t L) {
        std::vector<DyadicRational> lpts;
        for (std::uint32_t m = L; m; m &= m - 1) lpts.push_back(pts[std::countr_zero(m)]);
        std::vector<int> opts;
        for (std::uint32_t m = O; m; m &= m - 1) opts.push_back(std::countr_zero(m));
        for (size_t i = 0; i < opts.size(); ++i)
            for (size_t j = i + 1; j < opts.size(); ++j)
                if (!pair_condition(pts[opts[i]], pts[opts[j]], lpts, b, one_sided)) return false;
        return true;
    }

    // Is the submask a (depth, b)-lacunary set?
    bool lacunary(std::uint32_t mask, int depth) {
        int n = std::popcount(mask);
        if (n == 1) return true;
        if (depth == 0) return false;
        auto it = memo.find(key(mask, depth));
        if (it != memo.end() && it->second.verdict != 0) return it->second.verdict == 1;
        if (exhausted) return false;

        // Enumerate candidate L as nonempty submasks, starting from mask
        // itself (O empty), descending.
        for (std::uint32_t L = mask;; L = (L - 1) & mask) {
            if (L == 0) break;
            if (++work > budget) {
                exhausted = true;
                return false;
            }
            std::uint32_t O = mask & ~L;
            if (pair_cond_masked(O, L) && lacunary(L, depth - 1)) {
                memo[key(mask, depth)] = {1, L};
                return true;
            }
            if (exhausted) return false;
        }
        memo[key(mask, depth)] = {2, 0};
        return false;
    }

    LacunarityCertificate extract(std::uint32_t mask, int depth) {
        LacunarityCertificate cert;
        cert.b = b;
        cert.levels.assign(depth + 1, {});
        int level = depth;
        std::uint32_t cur = mask;
        while (level > 0 && std::popcount(cur) > 1) {
            std::uint32_t L = memo.at(key(cur, level)).chosen_L;
            std::uint32_t O = cur & ~L;
            for (std::uint32_t m = O; m; m &= m - 1)
                cert.levels[level].push_back(pts[std::countr_zero(m)]);
            cur = L;
            --level;
        }
        // Remaining singleton (or small set that is already lacunary at a
        // shallower depth) lands in level 0.
        for (std::uint32_t m = cur; m; m &= m - 1)
            cert.levels[0].push_back(pts[std::countr_zero(m)]);
        for (auto& lvl : cert.levels) std::sort(lvl.begin(), lvl.end());
        return cert;
    }
};

// Greedy incomplete search: grows the O part by evicting violating points
// toward L, recursing on L. Ties break toward the smaller point value.
std::optional<LacunarityCertificate> greedy_search(std::span<const DyadicRational> X, int d,
                                                   int b, bool one_sided) {
    if (X.size() == 1) {
        LacunarityCertificate cert;
        cert.b = b;
        cert.levels.assign(d + 1, {});
        cert.levels[0] = {X[0]};
        return cert;
    }
    if (d == 0) return std::nullopt;

    std::vector<DyadicRational> pts(X.begin(), X.end());
    std::sort(pts.begin(), pts.end());

    std::vector<char> in_L(pts.size(), 0);
    in_L[0] = 1;  // smallest point seeds the skeleton
    auto L_points = [&] {
        std::vector<DyadicRational> l;
        for (size_t i = 0; i < pts.size(); ++i)
            if (in_L[i]) l.push_back(pts[i]);
        return l;
    };

    for (;;) {
        std::vector<DyadicRational> L = L_points();
        if (L.size() == pts.size()) return std::nullopt;  // everything evicted
        // Find the worst violating point in O and move it into L.
        int worst = -1;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (in_L[i]) continue;
            for (size_t j = 0; j < pts.size(); ++j) {
                if (in_L[j] || j == i || j > i) continue;
                if (!pair_condition(pts[i], pts[j], L, b, one_sided)) {
                    // Move the member of the pair closer to L; tie -> smaller value.
                    DyadicRational di = dist_to_set(pts[i], L);
                    DyadicRational dj = dist_to_set(pts[j], L);
                    int pick = dj < di ? static_cast<int>(j)
                                       : (di < dj ? static_cast<int>(i) : static_cast<int>(std::min(i, j)));
                    worst = pick;
                    break;
                }
            }
            if (worst >= 0) break;
        }
        if (worst < 0) break;  // no violations
        in_L[worst] = 1;
    }

    std::vector<DyadicRational> L = L_points();
    auto sub = greedy_search(L, d - 1, b, one_sided);
    if (!sub) return std::nullopt;
    LacunarityCertificate cert = *sub;
    cert.levels.resize(d + 1);
    for (size_t i = 0; i < pts.size(); ++i)
        if (!in_L[i]) cert.levels[d].push_back(pts[i]);
    std::sort(cert.levels[d].begin(), cert.levels[d].end());
    return cert;
}

}  // namespace

LacunarySearchResult is_lacunary(std::span<const DyadicRational> X, int d, int b,
                                 const LacunarySearchOptions& opts) {
    if (X.empty()) throw std::invalid_argument("is_lacunary: empty set");
    if (d < 0 || b < 0) throw std::invalid_argument("is_lacunary: d and b must be nonnegative");
    std::vector<DyadicRational> pts(X.begin(), X.end());
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i] == pts[i + 1]) throw std::invalid_argument("is_lacunary: duplicate points");

    LacunarySearchResult res;
    int exhaustive_cap = std::min(opts.exhaustive_max_points, 30);  // bitmask width
    if (static_cast<int>(pts.size()) <= exhaustive_cap) {
        MaskSearch search{pts, b, opts.one_sided, opts.work_budget, 0, false, {}};
        std::uint32_t full = (1u << pts.size()) - 1u;
        bool yes = search.lacunary(full, d);
        res.work_used = search.work;
        if (search.exhausted) {
            res.status = LacunaryStatus::Undecided;
            return res;
        }
        if (yes) {
            res.status = LacunaryStatus::Found;
            res.certificate = search.extract(full, d);
            if (!verify_certificate(*res.certificate, opts.one_sided))
                throw std::logic_error("is_lacunary: extracted certificate failed verification");
        } else {
            res.status = LacunaryStatus::NotLacunary;
        }
        return res;
    }

    if (!opts.allow_heuristic) {
        res.status = LacunaryStatus::Undecided;
        return res;
    }
    res.heuristic = true;
    auto cert = greedy_search(pts, d, b, opts.one_sided);
    if (cert && verify_certificate(*cert, opts.one_sided)) {
        res.status = LacunaryStatus::Found;
        res.certificate = std::move(cert);
    } else {
        res.status = LacunaryStatus::Undecided;  // incomplete engine cannot refute
    }
    return res;
}

std::vector<std::vector<DyadicRational>> decompose(const LacunarityCertificate& cert) {
    VerifyResult v = verify_certificate(cert);
    if (!v) {
        std::string msg = "decompose: invalid certificate";
        if (!v.violations.empty()) msg += ": " + v.violations[0].what;
        throw std::invalid_argument(msg);
    }
    return cert.levels;
}

// ---------------------------------------------------------------------------
// Admissible sequences
// ---------------------------------------------------------------------------

VerifyResult AdmissibleSequences::check_spacing() const {
    VerifyResult res;
    auto fail = [&](std::string msg) {
        res.ok = false;
        res.violations.push_back({std::move(msg)});
    };
    for (int j = 0; j < length; ++j) {
        DyadicRational lo = DyadicRational::scaled(1, -j);
        DyadicRational hi = DyadicRational::scaled(1, 2 - j);
        if (!(lo <= eta[j] && eta[j] <= zeta[j] && zeta[j] < hi))
            fail("eta/zeta shell constraint fails at j=" + std::to_string(j));
        if (xi[j].sign() < 0) fail("xi negative at j=" + std::to_string(j));
        if (j >= 1) {
            if (!(xi[j] + DyadicRational::scaled(1, 6 - j) <= xi[j - 1]))
                fail("xi spacing fails at j=" + std::to_string(j));
        }
    }
    return res;
}

namespace {

struct GapPlan {
    std::vector<int> boost;   // per gap index 1..J-1 (index 0 unused)
    std::vector<int> level;   // per point index
};

// Recursive tiered split of the index range. The block minimum (largest
// index) keeps the caller's level; interior sub-block minima get level+1.
void split_block(int a, int e, int tier, int max_tier, int anchor_level, int d,
                 std::mt19937_64& rng, GapPlan& plan) {
    if (tier > max_tier || e - a < 4) {
        for (int j = a; j < e - 1; ++j) plan.level[j] = std::min(anchor_level + 1, d);
        plan.level[e - 1] = anchor_level;
        return;
    }
    int max_subs = std::min(4, (e - a) / 2);
    int n_subs = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_subs - 1)));
    n_subs = std::min(n_subs, max_subs);

    // Random composition of e-a into n_subs parts, each >= 2.
    std::vector<int> sizes(n_subs, 2);
    int left = (e - a) - 2 * n_subs;
    for (int i = 0; i < left; ++i) sizes[rng() % n_subs]++;

    int boost = 5 * (max_tier - tier + 1);
    int start = a;
    for (int s = 0; s < n_subs; ++s) {
        int end = start + sizes[s];
        if (s > 0) plan.boost[start] = boost;  // jump separating sub-blocks
        bool last = (s == n_subs - 1);
        split_block(start, end, tier + 1, max_tier, last ? anchor_level : anchor_level + 1, d,
                    rng, plan);
        start = end;
    }
}

}  // namespace

AdmissibleSequences generate_admissible(int J, int d, int b, std::uint64_t seed,
                                        const AdmissibleOptions& opts) {
    if (d < 2 || b < 2) throw std::invalid_argument("generate_admissible: requires d >= 2 and b >= 2");
    if (J < 1) throw std::invalid_argument("generate_admissible: J must be >= 1");
    if (J > 48)
        throw std::invalid_argument("generate_admissible: index " + std::to_string(J) +
                                    " exceeds the dyadic exponent budget (J <= 48)");
    if (opts.beta && (*opts.beta < 0 || *opts.beta > 3))
        throw std::invalid_argument("generate_admissible: beta must be in {0,1,2,3}");
    if (opts.beta && *opts.beta == 3)
        throw std::invalid_argument(
            "generate_admissible: beta=3 window [2^(2-j), 2^(2-j)+2^-j) is empty under the "
            "strict shell bound zeta_j < 2^(2-j)");

    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);

        GapPlan plan;
        plan.boost.assign(J, 0);
        plan.level.assign(J, 0);
        int max_tier = opts.chain_only ? 0 : d - 1;
        split_block(0, J, 1, max_tier, 0, d, rng, plan);

        // Gaps and suffix sums; gap j sits between xi_{j-1} and xi_j.
        DyadicRational base = DyadicRational::scaled(static_cast<long long>(rng() % 4), 6 - J);
        std::vector<DyadicRational> xi(J);
        xi[J - 1] = base;
        for (int j = J - 1; j >= 1; --j) {
            long long c = 1 + static_cast<long long>(rng() % 2);
            DyadicRational gap = DyadicRational::scaled(c, 6 - j + plan.boost[j]);
            xi[j - 1] = xi[j] + gap;
        }

        AdmissibleSequences seqs;
        seqs.length = J;
        seqs.xi = xi;
        seqs.beta = opts.beta;
        seqs.eta.resize(J);
        seqs.zeta.resize(J);
        for (int j = 0; j < J; ++j) {
            int beta = opts.beta.value_or(0);
            DyadicRational lo = DyadicRational::scaled(1 + beta, -j);
            DyadicRational shell_top = DyadicRational::scaled(1, 2 - j);
            DyadicRational win_hi = min(DyadicRational::scaled(2 + beta, -j),
                                        shell_top - DyadicRational::scaled(1, -j - 5));
            if (opts.eta_mode == EtaMode::FullQuarter) {
                seqs.eta[j] = lo;
                seqs.zeta[j] = win_hi;
            } else {
                DyadicRational step = DyadicRational::scaled(1, -j - 5);
                seqs.eta[j] = lo + step.times_int(static_cast<long long>(rng() % 9));
                DyadicRational z =
                    seqs.eta[j] + step.times_int(8 + static_cast<long long>(rng() % 8));
                seqs.zeta[j] = min(z, win_hi);
                if (seqs.zeta[j] < seqs.eta[j]) seqs.zeta[j] = seqs.eta[j];
            }
        }

        seqs.certificate.b = b;
        seqs.certificate.levels.assign(d + 1, {});
        for (int j = 0; j < J; ++j) seqs.certificate.levels[plan.level[j]].push_back(xi[j]);
        for (auto& lvl : seqs.certificate.levels) std::sort(lvl.begin(), lvl.end());

        if (verify_certificate(seqs.certificate) && seqs.check_spacing()) return seqs;
        // Extremely unlikely; retry deterministically with the next sub-seed.
    }
    throw std::logic_error("generate_admissible: failed to produce a verified instance");
}

std::vector<DyadicRational> round_xi(std::span<const DyadicRational> xi) {
    std::vector<DyadicRational> out(xi.size());
    for (size_t j = 0; j < xi.size(); ++j) out[j] = xi[j].floor_to_multiple(4 - static_cast<int>(j));
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string to_json_string(const LacunarityCertificate& cert) {
    nlohmann::json j;
    j["b"] = cert.b;
    j["d"] = cert.d();
    j["levels"] = nlohmann::json::array();
    for (const auto& level : cert.levels) {
        nlohmann::json l = nlohmann::json::array();
        for (const auto& x : level) l.push_back(x.to_string());
        j["levels"].push_back(std::move(l));
    }
    return j.dump();
}

LacunarityCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LacunarityCertificate cert;
    cert.b = j.at("b").get<int>();
    for (const auto& level : j.at("levels")) {
        std::vector<DyadicRational> pts;
        for (const auto& s : level) pts.push_back(DyadicRational::parse(s.get<std::string>()));
        cert.levels.push_back(std::move(pts));
    }
    if (j.contains("d") && j.at("d").get<int>() != cert.d())
        throw std::invalid_argument("certificate JSON: d field disagrees with levels");
    return cert;
}

}  // namespace paralab
