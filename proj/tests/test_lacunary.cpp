#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lacunary_oracle.hpp"
#include "paralab/lacunary.hpp"
#include "support.hpp"

using namespace paralab;
using testsupport::is_lacunary_oracle;
using testsupport::random_dyadic_set;

namespace {
DyadicRational dr(long long n, int e = 0) { return DyadicRational::scaled(n, e); }

std::vector<DyadicRational> geometric_set(int count) {
    std::vector<DyadicRational> X;
    for (int j = 0; j < count; ++j) X.push_back(dr(1, -j));
    return X;
}
}  // namespace

TEST_CASE("verify_certificate: singleton") {
    LacunarityCertificate cert;
    cert.b = 3;
    cert.levels = {{dr(5)}};
    CHECK(verify_certificate(cert).ok);
}

TEST_CASE("verify_certificate: geometric 4-point chain") {
    // X = {1, 1/2, 1/4, 1/8} with L = {1/8}: found by the exhaustive search
    // over 2-set partitions as well.
    LacunarityCertificate cert;
    cert.b = 1;
    cert.levels = {{dr(1, -3)}, {dr(1, -2), dr(1, -1), dr(1)}};
    CHECK(verify_certificate(cert).ok);
    std::vector<DyadicRational> X = {dr(1), dr(1, -1), dr(1, -2), dr(1, -3)};
    CHECK(is_lacunary_oracle(X, 1, 1));
}

TEST_CASE("verify_certificate: arithmetic progressions fail at b = 0") {
    // Any d=1 certificate for {0..9} with b=0 has a violating pair.
    std::vector<DyadicRational> X;
    for (int k = 0; k < 10; ++k) X.push_back(dr(k));
    CHECK_FALSE(is_lacunary_oracle(X, 1, 0));
    // spot-check one certificate with a report
    LacunarityCertificate cert;
    cert.b = 0;
    cert.levels = {{dr(0)}, {dr(1), dr(2), dr(3), dr(4), dr(5), dr(6), dr(7), dr(8), dr(9)}};
    auto res = verify_certificate(cert);
    CHECK_FALSE(res.ok);
    CHECK(!res.violations.empty());
    CHECK(res.violations[0].what.find("pair") != std::string::npos);
}

TEST_CASE("verify_certificate rejects malformed structures") {
    LacunarityCertificate cert;
    cert.b = 2;
    cert.levels = {{dr(0), dr(1)}};  // O_0 not a singleton
    CHECK_FALSE(verify_certificate(cert).ok);
    cert.levels = {{dr(0)}, {dr(0)}};  // duplicate across levels
    CHECK_FALSE(verify_certificate(cert).ok);
}

TEST_CASE("is_lacunary: singleton always certified") {
    std::vector<DyadicRational> X = {dr(7, -2)};
    for (int d : {0, 1, 3}) {
        auto res = is_lacunary(X, d, 2);
        CHECK(res.status == LacunaryStatus::Found);
        CHECK(verify_certificate(*res.certificate).ok);
    }
}

TEST_CASE("is_lacunary: geometric set is (1,1)-lacunary") {
    auto res = is_lacunary(geometric_set(11), 1, 1);
    REQUIRE(res.status == LacunaryStatus::Found);
    CHECK(verify_certificate(*res.certificate).ok);
    CHECK_FALSE(res.heuristic);
}

TEST_CASE("is_lacunary: arithmetic set {0..9} is not (1,0)-lacunary") {
    std::vector<DyadicRational> X;
    for (int k = 0; k < 10; ++k) X.push_back(dr(k));
    auto res = is_lacunary(X, 1, 0);
    CHECK(res.status == LacunaryStatus::NotLacunary);
}

TEST_CASE("is_lacunary matches the brute-force oracle on random batteries") {
    std::mt19937_64 rng(101);
    int found = 0, rejected = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);  // up to 8 points
        auto X = random_dyadic_set(rng, n, 24, -4, 1);
        int d = static_cast<int>(rng() % 3);
        int b = static_cast<int>(rng() % 4);
        auto res = is_lacunary(X, d, b);
        REQUIRE(res.status != LacunaryStatus::Undecided);
        bool expected = is_lacunary_oracle(X, d, b);
        CHECK((res.status == LacunaryStatus::Found) == expected);
        if (expected) {
            ++found;
            CHECK(verify_certificate(*res.certificate).ok);
            CHECK(res.certificate->d() == d);
        } else {
            ++rejected;
        }
    }
    // the battery must exercise both outcomes
    CHECK(found > 20);
    CHECK(rejected > 20);
}

TEST_CASE("lacunarity is monotone in d and b") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 120; ++trial) {
        auto X = random_dyadic_set(rng, 2 + static_cast<int>(rng() % 5), 16, -3, 1);
        int d = static_cast<int>(rng() % 2);
        int b = static_cast<int>(rng() % 3);
        if (is_lacunary_oracle(X, d, b)) {
            CHECK(is_lacunary_oracle(X, d + 1, b));
            CHECK(is_lacunary_oracle(X, d, b + 1));
        }
    }
}

TEST_CASE("subsets of lacunary sets are lacunary") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 60; ++trial) {
        auto X = random_dyadic_set(rng, 4 + static_cast<int>(rng() % 3), 16, -3, 1);
        int d = 1 + static_cast<int>(rng() % 2);
        int b = 1 + static_cast<int>(rng() % 3);
        if (!is_lacunary_oracle(X, d, b)) continue;
        // drop one random point
        std::vector<DyadicRational> S;
        size_t skip = rng() % X.size();
        for (size_t i = 0; i < X.size(); ++i)
            if (i != skip) S.push_back(X[i]);
        CHECK(is_lacunary_oracle(S, d, b));
        auto res = is_lacunary(S, d, b);
        CHECK(res.status == LacunaryStatus::Found);
    }
}

TEST_CASE("undecided on exhausted work budget") {
    auto X = geometric_set(12);
    LacunarySearchOptions opts;
    opts.work_budget = 5;
    auto res = is_lacunary(X, 2, 1, opts);
    CHECK(res.status == LacunaryStatus::Undecided);
}

TEST_CASE("heuristic engine flags itself and stays sound") {
    std::vector<DyadicRational> X = geometric_set(28);  // above the exhaustive cap
    LacunarySearchOptions opts;
    opts.exhaustive_max_points = 24;
    auto res = is_lacunary(X, 2, 2, opts);
    CHECK(res.heuristic);
    if (res.status == LacunaryStatus::Found) CHECK(verify_certificate(*res.certificate).ok);
    CHECK(res.status != LacunaryStatus::NotLacunary);  // incomplete engine cannot refute
}

TEST_CASE("decompose returns the levels and round-trips") {
    auto res = is_lacunary(geometric_set(6), 1, 1);
    REQUIRE(res.status == LacunaryStatus::Found);
    auto levels = decompose(*res.certificate);
    CHECK(levels.size() == 2);
    LacunarityCertificate rebuilt;
    rebuilt.b = res.certificate->b;
    rebuilt.levels = levels;
    CHECK(verify_certificate(rebuilt).ok);

    LacunarityCertificate bad;
    bad.b = 0;
    bad.levels = {{dr(0), dr(1)}};
    CHECK_THROWS_AS(decompose(bad), std::invalid_argument);
}

TEST_CASE("decompose: d=0 singleton returned unchanged") {
    LacunarityCertificate cert;
    cert.b = 4;
    cert.levels = {{dr(9, -1)}};
    auto levels = decompose(cert);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0] == std::vector<DyadicRational>{dr(9, -1)});
}

TEST_CASE("generate_admissible: spacing and certificate hold for a seed battery") {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        int J = 4 + static_cast<int>(seed % 21);
        int d = 2 + static_cast<int>(seed % 2);
        int b = 2 + static_cast<int>(seed % 3);
        auto seqs = generate_admissible(J, d, b, seed);
        CHECK(seqs.check_spacing().ok);
        CHECK(verify_certificate(seqs.certificate).ok);
        CHECK(seqs.certificate.b == b);
        CHECK(seqs.certificate.d() == d);
        // strict decrease, no repeats
        for (int j = 1; j < J; ++j) CHECK(seqs.xi[j] < seqs.xi[j - 1]);
    }
}

TEST_CASE("generate_admissible is deterministic per seed") {
    auto a = generate_admissible(16, 2, 2, 42);
    auto b = generate_admissible(16, 2, 2, 42);
    CHECK(a.xi == b.xi);
    CHECK(a.eta == b.eta);
    CHECK(a.zeta == b.zeta);
    auto c = generate_admissible(16, 2, 2, 43);
    CHECK(a.xi != c.xi);
}

TEST_CASE("generate_admissible: chain mode gives a single cascade") {
    auto seqs = generate_admissible(12, 2, 2, 5, {.chain_only = true});
    CHECK(seqs.check_spacing().ok);
    // chain gaps carry no boosts: consecutive gaps are c * 2^(6-j), c in {1,2}
    for (int j = 1; j < seqs.length; ++j) {
        DyadicRational gap = seqs.xi[j - 1] - seqs.xi[j];
        CHECK(gap >= dr(1, 6 - j));
        CHECK(gap <= dr(1, 7 - j));
    }
}

TEST_CASE("generate_admissible rejects bad parameters") {
    CHECK_THROWS_AS(generate_admissible(8, 1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_admissible(8, 2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_admissible(0, 2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_admissible(49, 2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_admissible(8, 2, 2, 0, {.beta = 3}), std::invalid_argument);
}

TEST_CASE("beta quarter windows tile the shell and stay disjoint across j") {
    // windows [ (1+beta) 2^-j, (2+beta) 2^-j ) for beta = 0..3
    for (int j = 0; j < 8; ++j) {
        DyadicRational shell_lo = dr(1, -j), shell_hi = dr(1, 2 - j);
        DyadicRational cursor = shell_lo;
        for (int beta = 0; beta < 4; ++beta) {
            DyadicRational wlo = dr(1 + beta, -j), whi = dr(2 + beta, -j);
            DyadicRational clip_lo = paralab::max(wlo, shell_lo);
            DyadicRational clip_hi = paralab::min(whi, shell_hi);
            if (clip_lo < clip_hi) {
                CHECK(clip_lo == cursor);
                cursor = clip_hi;
            }
        }
        CHECK(cursor == shell_hi);
    }
    // fixed beta, consecutive j: upper end of the finer window meets the
    // lower end of the coarser one at worst
    for (int beta = 0; beta < 4; ++beta)
        for (int j = 0; j < 8; ++j)
            CHECK(dr(2 + beta, -j - 1) <= dr(1 + beta, -j));
}

TEST_CASE("round_xi: identity on aligned input and the 17/16 example") {
    std::vector<DyadicRational> aligned = {dr(32), dr(16)};
    CHECK(round_xi(aligned) == aligned);
    std::vector<DyadicRational> xi = {dr(17, -4)};  // 17/16 at j=0, multiples of 16
    CHECK(round_xi(xi)[0] == dr(0));
}

TEST_CASE("round_xi: spacing, comparability, and the rounded certificate") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int J = 6 + static_cast<int>(seed % 14);
        auto seqs = generate_admissible(J, 2, 2, seed);
        auto rounded = round_xi(seqs.xi);
        for (int j = 0; j < J; ++j) {
            CHECK(rounded[j] == rounded[j].floor_to_multiple(4 - j));
            CHECK(rounded[j] >= dr(0));
            if (j >= 1) CHECK(rounded[j] + dr(1, 5 - j) <= rounded[j - 1]);
        }
        // distances distort by a factor of at most 2 in each direction
        for (int j = 0; j < J; ++j) {
            for (int k = j + 1; k < J; ++k) {
                DyadicRational before = (seqs.xi[j] - seqs.xi[k]).abs();
                DyadicRational after = (rounded[j] - rounded[k]).abs();
                CHECK(after.times_pow2(1) >= before);  // after >= before/2
                CHECK(after <= before.times_pow2(1));  // after <= 2 before
            }
        }
        // hence the rounded image is certified at parameter b+2
        LacunarityCertificate rc;
        rc.b = seqs.certificate.b + 2;
        for (const auto& level : seqs.certificate.levels) {
            std::vector<DyadicRational> pts;
            for (const auto& x : level) {
                for (int j = 0; j < J; ++j)
                    if (seqs.xi[j] == x) pts.push_back(rounded[j]);
            }
            rc.levels.push_back(pts);
        }
        CHECK(verify_certificate(rc).ok);
    }
}

TEST_CASE("certificate JSON round trip") {
    auto res = is_lacunary(geometric_set(5), 1, 2);
    REQUIRE(res.status == LacunaryStatus::Found);
    auto text = to_json_string(*res.certificate);
    auto back = certificate_from_json(text);
    CHECK(back.b == res.certificate->b);
    CHECK(back.levels == res.certificate->levels);
}
