#include "paralab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"

namespace paralab {

namespace {

using i128 = __int128;

constexpr int kMaxNumBits = 120;  // guard well below the 127-bit limit

int bit_length(i128 v) {
    if (v < 0) v = -v;
    int n = 0;
    while (v > 0) {
        v >>= 1;
        ++n;
    }
    return n;
}

void check_width(i128 v, const char* what) {
    if (bit_length(v) > kMaxNumBits)
        throw std::overflow_error(std::string("dyadic rational overflow in ") + what);
}

std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// DyadicRational
// ---------------------------------------------------------------------------

void DyadicRational::normalize() {
    if (num_ == 0) {
        exp2_ = 0;
        return;
    }
    while ((num_ & 1) == 0) {
        num_ >>= 1;
        ++exp2_;
    }
}

DyadicRational DyadicRational::scaled(long long n, int e) {
    DyadicRational r;
    r.num_ = n;
    r.exp2_ = e;
    r.normalize();
    return r;
}

DyadicRational DyadicRational::parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("bad rational '" + text + "', expected p, p/2^m or p/q"); };
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    std::string num_part = s.substr(0, slash == std::string::npos ? s.size() : slash);
    long long p = 0;
    try {
        size_t used = 0;
        p = std::stoll(num_part, &used);
        if (used != num_part.size()) throw bad();
    } catch (const std::exception&) {
        throw bad();
    }
    if (slash == std::string::npos) return DyadicRational(p);

    std::string den = s.substr(slash + 1);
    long long m = 0;
    if (den.rfind("2^", 0) == 0) {
        try {
            size_t used = 0;
            m = std::stoll(den.substr(2), &used);
            if (used != den.size() - 2 || m < 0 || m > 1000) throw bad();
        } catch (const std::exception&) {
            throw bad();
        }
    } else {
        long long q = 0;
        try {
            size_t used = 0;
            q = std::stoll(den, &used);
            if (used != den.size()) throw bad();
        } catch (const std::exception&) {
            throw bad();
        }
        if (q <= 0 || (q & (q - 1)) != 0) throw bad();
        while (q > 1) {
            q >>= 1;
            ++m;
        }
    }
    return scaled(p, static_cast<int>(-m));
}

DyadicRational DyadicRational::operator-() const {
    DyadicRational r;
    r.num_ = -num_;
    r.exp2_ = exp2_;
    return r;
}

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
    if (num_ == 0) return o;
    if (o.num_ == 0) return *this;
    DyadicRational r;
    if (exp2_ >= o.exp2_) {
        int shift = exp2_ - o.exp2_;
        if (bit_length(num_) + shift > kMaxNumBits) throw std::overflow_error("dyadic rational overflow in +");
        r.num_ = (num_ << shift) + o.num_;
        r.exp2_ = o.exp2_;
    } else {
        int shift = o.exp2_ - exp2_;
        if (bit_length(o.num_) + shift > kMaxNumBits) throw std::overflow_error("dyadic rational overflow in +");
        r.num_ = num_ + (o.num_ << shift);
        r.exp2_ = exp2_;
    }
    r.normalize();
    return r;
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const { return *this + (-o); }

DyadicRational DyadicRational::operator*(const DyadicRational& o) const {
    if (num_ == 0 || o.num_ == 0) return DyadicRational(0);
    if (bit_length(num_) + bit_length(o.num_) > kMaxNumBits)
        throw std::overflow_error("dyadic rational overflow in *");
    DyadicRational r;
    r.num_ = num_ * o.num_;
    r.exp2_ = exp2_ + o.exp2_;
    return r;
}

DyadicRational DyadicRational::times_pow2(int e) const {
    if (num_ == 0) return *this;
    DyadicRational r;
    r.num_ = num_;
    r.exp2_ = exp2_ + e;
    return r;
}

DyadicRational DyadicRational::times_int(long long c) const {
    return *this * DyadicRational(c);
}

DyadicRational DyadicRational::floor_to_multiple(int e) const {
    // floor(x / 2^e) * 2^e
    if (num_ == 0) return DyadicRational(0);
    int rel = exp2_ - e;
    if (rel >= 0) return *this;  // already a multiple of 2^e
    int shift = -rel;
    if (bit_length(num_) <= shift && num_ > 0) return DyadicRational(0);
    i128 q;
    if (num_ >= 0) {
        q = num_ >> shift;
    } else {
        // arithmetic shift of negatives floors already
        q = num_ >> shift;
    }
    check_width(q, "floor_to_multiple");
    DyadicRational r;
    r.num_ = q;
    r.exp2_ = e;
    r.normalize();
    return r;
}

int DyadicRational::floor_log2() const {
    if (num_ == 0) throw std::domain_error("floor_log2 of zero");
    return bit_length(num_ < 0 ? -num_ : num_) - 1 + exp2_;
}

int DyadicRational::compare(const DyadicRational& o) const {
    if (num_ == 0 && o.num_ == 0) return 0;
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    // Same nonzero sign: compare magnitudes via bit length first.
    int la = bit_length(num_) + exp2_;
    int lb = bit_length(o.num_) + o.exp2_;
    if (la != lb) {
        int mag = la < lb ? -1 : 1;
        return sa > 0 ? mag : -mag;
    }
    // Same binade: the exponent gap equals the bit-length gap, so the
    // shifted numerator stays within width.
    if (exp2_ >= o.exp2_) {
        i128 lhs = num_ << (exp2_ - o.exp2_);
        return lhs == o.num_ ? 0 : (lhs < o.num_ ? -1 : 1);
    }
    i128 rhs = o.num_ << (o.exp2_ - exp2_);
    return num_ == rhs ? 0 : (num_ < rhs ? -1 : 1);
}

double DyadicRational::to_double() const {
    return std::ldexp(static_cast<double>(num_), exp2_);
}

std::string DyadicRational::to_string() const {
    if (num_ == 0) return "0";
    if (exp2_ >= 0) {
        if (bit_length(num_) + exp2_ > kMaxNumBits) throw std::overflow_error("to_string overflow");
        return i128_to_string(num_ << exp2_);
    }
    return i128_to_string(num_) + "/2^" + std::to_string(-exp2_);
}

DyadicRational dyadic_dist(const DyadicRational& a, const DyadicRational& b) {
    return (a - b).abs();
}

// ---------------------------------------------------------------------------
// Dyadic intervals
// ---------------------------------------------------------------------------

DyadicInterval dyadic_cover(const DyadicRational& x, int m) {
    DyadicRational lo = x.floor_to_multiple(m);
    DyadicRational idx = lo.times_pow2(-m);
    if (!idx.is_integer()) throw std::logic_error("dyadic_cover: non-integer index");
    i128 k = idx.num();
    if (idx.exp2() > 0) k <<= idx.exp2();
    if (k > INT64_MAX || k < INT64_MIN) throw std::overflow_error("dyadic_cover index overflow");
    return {static_cast<long long>(k), m};
}

ExactInterval scaled_concentric(const DyadicInterval& I, int factor) {
    if (factor < 1) throw std::invalid_argument("scaled_concentric: factor must be >= 1");
    // center = (2k+1) * 2^(m-1); half-width = factor * 2^(m-1)
    DyadicRational lo = DyadicRational::scaled(2 * I.k + 1 - factor, I.m - 1);
    DyadicRational hi = DyadicRational::scaled(2 * I.k + 1 + factor, I.m - 1);
    return {lo, hi};
}

ExactInterval right_extension(const DyadicInterval& I) {
    return {I.lower(), I.upper() + DyadicRational::scaled(1, I.m - 2)};
}

// ---------------------------------------------------------------------------
// Collections
// ---------------------------------------------------------------------------

bool IntervalCollection::pairwise_disjoint() const {
    for (size_t i = 0; i < intervals.size(); ++i)
        for (size_t j = i + 1; j < intervals.size(); ++j)
            if (!intervals[i].disjoint_from(intervals[j])) return false;
    return true;
}

DyadicRational IntervalCollection::total_length() const {
    DyadicRational s(0);
    for (const auto& I : intervals) s = s + I.length();
    return s;
}

std::string to_string(CollectionLabel label) {
    switch (label) {
        case CollectionLabel::Y: return "Y";
        case CollectionLabel::Z: return "Z";
        case CollectionLabel::Yj: return "Y_j";
        case CollectionLabel::Zj: return "Z_j";
        case CollectionLabel::Wi: return "W_i";
        case CollectionLabel::Vi: return "V_i";
    }
    return "?";
}

CollectionLabel collection_label_from_string(const std::string& s) {
    if (s == "Y") return CollectionLabel::Y;
    if (s == "Z") return CollectionLabel::Z;
    if (s == "Y_j") return CollectionLabel::Yj;
    if (s == "Z_j") return CollectionLabel::Zj;
    if (s == "W_i") return CollectionLabel::Wi;
    if (s == "V_i") return CollectionLabel::Vi;
    throw std::invalid_argument("unknown collection label '" + s + "'");
}

namespace {

bool triple_meets(const DyadicInterval& I, std::span<const DyadicRational> X) {
    ExactInterval t = triple(I);
    for (const auto& x : X)
        if (t.contains(x)) return true;
    return false;
}

// Descend from `I`: emit maximal triple-avoiding intervals inside `domain`
// within the scale window.
void collect_z_rec(const DyadicInterval& I, std::span<const DyadicRational> X,
                   const ScaleRange& scales, const ExactInterval& domain,
                   std::vector<DyadicInterval>& out) {
    ExactInterval iv = I.as_interval();
    if (!iv.intersects(domain)) return;
    if (domain.contains(iv) && !triple_meets(I, X)) {
        out.push_back(I);
        return;
    }
    if (I.m <= scales.m_min) return;
    collect_z_rec(I.left_child(), X, scales, domain, out);
    collect_z_rec(I.right_child(), X, scales, domain, out);
}

}  // namespace

IntervalCollection collect_z(std::span<const DyadicRational> X, ScaleRange scales,
                             const ExactInterval& domain) {
    if (X.empty())
        throw std::invalid_argument("collect_z: X must be nonempty (every triple avoids an empty set)");
    if (scales.m_min > scales.m_max) throw std::invalid_argument("collect_z: bad scale range");
    IntervalCollection out;
    out.label = CollectionLabel::Z;
    if (domain.empty()) return out;

    // Roots: scale m_max intervals meeting the domain.
    DyadicInterval first = dyadic_cover(domain.lo, scales.m_max);
    for (DyadicInterval I = first; I.lower() < domain.hi; ++I.k)
        collect_z_rec(I, X, scales, domain, out.intervals);
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) { return a.lower() < b.lower(); });
    return out;
}

std::vector<DyadicInterval> y_members_at_scale(std::span<const DyadicRational> X, int m,
                                               const ExactInterval& domain) {
    // 3I contains x exactly when I's index k satisfies
    //   (2k+1-3)*2^(m-1) <= x < (2k+1+3)*2^(m-1),
    // i.e. k in (x*2^-m - 2, x*2^-m + 1]; only ~3 candidates per point.
    std::vector<DyadicInterval> out;
    for (const auto& x : X) {
        DyadicInterval anchor = dyadic_cover(x, m);
        for (long long k = anchor.k - 2; k <= anchor.k + 2; ++k) {
            DyadicInterval I{k, m};
            if (!domain.contains(I.as_interval())) continue;
            if (triple(I).contains(x)) out.push_back(I);
        }
    }
    std::sort(out.begin(), out.end(), [](const DyadicInterval& a, const DyadicInterval& b) {
        return a.k < b.k;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<IntervalCollection, IntervalCollection> collect_yj_zj(
    std::span<const DyadicRational> X, const DyadicRational& xi_j, int j, int extra_fine_scales) {
    if (X.empty()) throw std::invalid_argument("collect_yj_zj: empty X");
    int m_j = 4 - j;
    if (xi_j.sign() < 0 || xi_j != xi_j.floor_to_multiple(m_j))
        throw std::invalid_argument("collect_yj_zj: xi_j must be a nonnegative multiple of 2^(4-j)");

    ExactInterval domain{DyadicRational(0), xi_j};

    IntervalCollection yj;
    yj.label = CollectionLabel::Yj;
    yj.intervals = y_members_at_scale(X, m_j, domain);

    IntervalCollection zj;
    zj.label = CollectionLabel::Zj;
    if (!domain.empty()) {
        // Hull scale: coarse enough that judging maximality inside
        // [0, 2^m_max) agrees with the unbounded definition.
        DyadicRational span = xi_j;
        for (const auto& x : X) span = max(span, x.abs());
        int m_max = span.is_zero() ? 4 : span.floor_log2() + 1;
        m_max = std::max(m_max, m_j);
        ScaleRange scales{m_j - extra_fine_scales, m_max};
        IntervalCollection z = collect_z(X, scales, domain);
        for (const auto& I : z.intervals) {
            bool inside_yj = false;
            for (const auto& J : yj.intervals)
                if (J.contains(I)) {
                    inside_yj = true;
                    break;
                }
            if (!inside_yj) zj.intervals.push_back(I);
        }
    }
    return {std::move(yj), std::move(zj)};
}

int overlap_count(std::span<const ExactInterval> intervals) {
    // Sweep over endpoint events; starts sort before ends at equal abscissa
    // never matters for half-open intervals: close before open.
    std::vector<std::pair<DyadicRational, int>> events;
    for (const auto& iv : intervals) {
        if (iv.empty()) continue;
        events.emplace_back(iv.lo, +1);
        events.emplace_back(iv.hi, -1);
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;  // -1 before +1: [a,b) and [b,c) do not overlap
    });
    int depth = 0, best = 0;
    for (const auto& [x, d] : events) {
        depth += d;
        best = std::max(best, depth);
    }
    return best;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string to_json_string(const IntervalCollection& c) {
    nlohmann::json j;
    j["label"] = to_string(c.label);
    j["intervals"] = nlohmann::json::array();
    for (const auto& I : c.intervals) j["intervals"].push_back({{"k", I.k}, {"m", I.m}});
    return j.dump();
}

IntervalCollection interval_collection_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    IntervalCollection c;
    c.label = collection_label_from_string(j.at("label").get<std::string>());
    for (const auto& e : j.at("intervals"))
        c.intervals.push_back({e.at("k").get<long long>(), e.at("m").get<int>()});
    return c;
}

}  // namespace paralab
