// Exact arithmetic on dyadic rationals and dyadic intervals.
//
// Everything in this header is integer-exact: values are p * 2^e with a
// 128-bit numerator, intervals are half-open [a, b), and all the interval
// collections (Y, Z, Y_j, Z_j) are computed with zero floating point.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paralab {

// ---------------------------------------------------------------------------
// DyadicRational
// ---------------------------------------------------------------------------

/// Exact rational with power-of-two denominator, stored as num * 2^exp2
/// with num odd (or zero). Numerators are 128-bit; overflow throws.
class DyadicRational {
  public:
    DyadicRational() : num_(0), exp2_(0) {}
    DyadicRational(long long n) : num_(n), exp2_(0) { normalize(); }

    /// n * 2^e
    static DyadicRational scaled(long long n, int e);

    /// Accepts "p", "p/2^m", or "p/q" with q a positive power of two.
    static DyadicRational parse(const std::string& text);

    __int128 num() const { return num_; }
    int exp2() const { return exp2_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return num_ == 0 || exp2_ >= 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    DyadicRational operator-() const;
    DyadicRational operator+(const DyadicRational& o) const;
    DyadicRational operator-(const DyadicRational& o) const;
    DyadicRational operator*(const DyadicRational& o) const;

    /// Multiply by 2^e (exact, no numerator growth).
    DyadicRational times_pow2(int e) const;
    /// Multiply by a small integer.
    DyadicRational times_int(long long c) const;

    DyadicRational abs() const { return num_ < 0 ? -*this : *this; }

    /// Largest multiple of 2^e that is <= *this.
    DyadicRational floor_to_multiple(int e) const;

    /// floor(log2(|x|)); throws on zero.
    int floor_log2() const;

    bool operator==(const DyadicRational& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const DyadicRational& o) const {
        int c = compare(o);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    double to_double() const;
    /// Canonical string: plain integer when exp2 >= 0, else "p/2^m".
    std::string to_string() const;

  private:
    void normalize();
    int compare(const DyadicRational& o) const;

    __int128 num_;
    int exp2_;
};

inline DyadicRational min(const DyadicRational& a, const DyadicRational& b) { return a < b ? a : b; }
inline DyadicRational max(const DyadicRational& a, const DyadicRational& b) { return a < b ? b : a; }

/// |a - b|
DyadicRational dyadic_dist(const DyadicRational& a, const DyadicRational& b);

// ---------------------------------------------------------------------------
// Intervals
// ---------------------------------------------------------------------------

/// Half-open interval [lo, hi) with exact rational endpoints. Empty when
/// hi <= lo.
struct ExactInterval {
    DyadicRational lo;
    DyadicRational hi;

    bool empty() const { return !(lo < hi); }
    DyadicRational length() const { return empty() ? DyadicRational(0) : hi - lo; }
    bool contains(const DyadicRational& x) const { return lo <= x && x < hi; }
    bool contains(const ExactInterval& o) const {
        return o.empty() || (lo <= o.lo && o.hi <= hi);
    }
    bool intersects(const ExactInterval& o) const {
        return !empty() && !o.empty() && lo < o.hi && o.lo < hi;
    }
    bool operator==(const ExactInterval& o) const = default;
};

/// Dyadic interval [k*2^m, (k+1)*2^m).
struct DyadicInterval {
    long long k = 0;
    int m = 0;

    DyadicRational lower() const { return DyadicRational::scaled(k, m); }
    DyadicRational upper() const { return DyadicRational::scaled(k + 1, m); }
    DyadicRational length() const { return DyadicRational::scaled(1, m); }
    ExactInterval as_interval() const { return {lower(), upper()}; }

    DyadicInterval parent() const { return {k >= 0 ? k / 2 : (k - 1) / 2, m + 1}; }
    DyadicInterval left_child() const { return {2 * k, m - 1}; }
    DyadicInterval right_child() const { return {2 * k + 1, m - 1}; }

    bool contains_point(const DyadicRational& x) const { return as_interval().contains(x); }
    bool contains(const DyadicInterval& o) const {
        if (o.m > m) return false;
        DyadicInterval a = o;
        while (a.m < m) a = a.parent();
        return a.k == k;
    }
    bool disjoint_from(const DyadicInterval& o) const {
        return !contains(o) && !o.contains(*this);
    }

    bool operator==(const DyadicInterval& o) const = default;
    auto operator<=>(const DyadicInterval& o) const = default;
};

/// Unique dyadic interval of scale m containing x.
DyadicInterval dyadic_cover(const DyadicRational& x, int m);

/// Concentric odd enlargement: same center, `factor` times the length.
/// factor = 3 gives the triple 3I, factor = 7 gives 7I.
ExactInterval scaled_concentric(const DyadicInterval& I, int factor);

/// 3I.
inline ExactInterval triple(const DyadicInterval& I) { return scaled_concentric(I, 3); }

/// I + [0, 2^-2 |I|), the right quarter extension used in the overlap checks.
ExactInterval right_extension(const DyadicInterval& I);

// ---------------------------------------------------------------------------
// Interval collections
// ---------------------------------------------------------------------------

enum class CollectionLabel { Y, Z, Yj, Zj, Wi, Vi };

std::string to_string(CollectionLabel label);
CollectionLabel collection_label_from_string(const std::string& s);

struct IntervalCollection {
    std::vector<DyadicInterval> intervals;
    CollectionLabel label = CollectionLabel::Y;

    bool pairwise_disjoint() const;
    /// Sum of lengths, exact.
    DyadicRational total_length() const;
};

/// Scale window for the dyadic searches: scales m with m_min <= m <= m_max.
struct ScaleRange {
    int m_min;
    int m_max;
};

/// Maximal dyadic intervals I inside `domain`, with scale in `scales`, whose
/// triple 3I contains no point of X. Maximality is judged within the
/// enumerated family: an interval is kept when its parent either leaves the
/// domain or has a triple meeting X. Throws when X is empty (the collection
/// would be unbounded).
IntervalCollection collect_z(std::span<const DyadicRational> X, ScaleRange scales,
                             const ExactInterval& domain);

/// All dyadic intervals of scale m inside `domain` whose triple meets X.
std::vector<DyadicInterval> y_members_at_scale(std::span<const DyadicRational> X, int m,
                                               const ExactInterval& domain);

/// The pair (Y_j, Z_j) relative to X and the truncation point xi_j:
///  - Y_j: dyadic intervals of length 2^(4-j) inside [0, xi_j) whose triple
///    meets X,
///  - Z_j: maximal triple-avoiding intervals inside [0, xi_j) not contained
///    in any member of Y_j.
/// Requires xi_j to be a nonnegative integer multiple of 2^(4-j).
/// `extra_fine_scales` pushes the Z truncation below 2^(4-j) so that
/// undersized members would be detected rather than assumed away.
std::pair<IntervalCollection, IntervalCollection> collect_yj_zj(
    std::span<const DyadicRational> X, const DyadicRational& xi_j, int j,
    int extra_fine_scales = 4);

/// Maximum over points of the number of intervals covering that point,
/// computed exactly from endpoint events. Empty intervals are ignored.
int overlap_count(std::span<const ExactInterval> intervals);

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

/// {"label": "...", "intervals": [{"k": int, "m": int}, ...]}
std::string to_json_string(const IntervalCollection& c);
IntervalCollection interval_collection_from_json(const std::string& text);

}  // namespace paralab
