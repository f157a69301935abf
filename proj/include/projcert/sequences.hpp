#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace projcert {

/// Default two-sided tolerance for membership-style predicates.
inline constexpr double kDefaultTol = 1e-9;

// ---------------------------------------------------------------------------
// Sequence representations.
//
// Infinite sequences are modeled through three tail disciplines only:
//   - zero tail            (FiniteSeq: finitely supported l1 vectors)
//   - constant tail        (EvConstSeq: elements of c / l_inf)
//   - geometric tail d/2^n (GeoTailSeq: summable, closed-form l1 norm)
// plus the dual-of-c form q0 + l1 weights (CStarFunctional).
// All norms and pairings close analytically; no series truncation.
// Indices are 1-based throughout.
// ---------------------------------------------------------------------------

/// Finitely supported real sequence; zero entries are not stored.
class FiniteSeq {
public:
    FiniteSeq() = default;
    explicit FiniteSeq(std::map<int, double> entries);

    /// Axis point s(m, b): value b at index m, zero elsewhere.
    static FiniteSeq axis(int m, double b);
    /// Entries v[0], v[1], ... at indices 1, 2, ...
    static FiniteSeq from_dense(const std::vector<double>& v);

    double at(int n) const;
    const std::map<int, double>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    int max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
    int support_size() const { return static_cast<int>(entries_.size()); }

    double norm1() const;
    bool in_positive_cone() const;   // all stored entries > 0 (absent = 0 is fine)

    std::vector<double> dense_prefix(int upto) const;

    friend FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b);
    friend FiniteSeq operator-(const FiniteSeq& a, const FiniteSeq& b);
    friend FiniteSeq operator*(double c, const FiniteSeq& a);

    bool operator==(const FiniteSeq&) const = default;

private:
    std::map<int, double> entries_;
};

/// Head values at indices 1..N, then an eventually-constant tail.
/// Canonical form: the last head entry differs from the tail value.
class EvConstSeq {
public:
    EvConstSeq() : tail_(0.0) {}
    EvConstSeq(std::vector<double> head, double tail);

    /// beta_d = (d, d, d, ...).
    static EvConstSeq constant(double d);
    static EvConstSeq axis(int m, double b);

    double at(int n) const;
    double tail() const { return tail_; }
    const std::vector<double>& head() const { return head_; }
    int head_size() const { return static_cast<int>(head_.size()); }

    double sup_norm() const;
    bool is_zero() const { return head_.empty() && tail_ == 0.0; }
    bool all_nonnegative() const;

    friend EvConstSeq operator+(const EvConstSeq& a, const EvConstSeq& b);
    friend EvConstSeq operator-(const EvConstSeq& a, const EvConstSeq& b);
    friend EvConstSeq operator*(double c, const EvConstSeq& a);
    friend EvConstSeq operator+(const EvConstSeq& a, const FiniteSeq& b);

    bool operator==(const EvConstSeq&) const = default;

private:
    void canonicalize();
    std::vector<double> head_;   // indices 1..N
    double tail_;                // every index > N
};

/// Head values at indices 1..N, then entry geo/2^n for n > N.
class GeoTailSeq {
public:
    GeoTailSeq() : geo_(0.0) {}
    GeoTailSeq(std::vector<double> head, double geo);

    /// Pure geometric sequence (d/2, d/2^2, d/2^3, ...).
    static GeoTailSeq geometric(double d);
    static GeoTailSeq from_finite(const FiniteSeq& f);

    double at(int n) const;
    double geo() const { return geo_; }
    const std::vector<double>& head() const { return head_; }
    int head_size() const { return static_cast<int>(head_.size()); }

    /// Exact closed form: sum |head| + |geo| * 2^{-N}.
    double norm1() const;
    bool is_zero() const;
    bool in_positive_cone() const;   // all entries >= 0
    bool all_positive() const;       // all entries > 0 (head > 0 and geo > 0)
    int nonzero_count_or_infinity(bool* infinite) const;

    /// Head extended with explicit geometric entries up to index `upto`.
    GeoTailSeq with_head_extended(int upto) const;

    friend GeoTailSeq operator+(const GeoTailSeq& a, const GeoTailSeq& b);
    friend GeoTailSeq operator-(const GeoTailSeq& a, const GeoTailSeq& b);
    friend GeoTailSeq operator*(double c, const GeoTailSeq& a);
    friend GeoTailSeq operator+(const GeoTailSeq& a, const FiniteSeq& b);

    bool operator==(const GeoTailSeq&) const = default;

private:
    std::vector<double> head_;   // indices 1..N
    double geo_;                 // entry at n > N is geo_/2^n
};

/// Element of c* = l1: weight q0 on the limit functional plus l1 weights.
class CStarFunctional {
public:
    CStarFunctional() : q0_(0.0) {}
    CStarFunctional(double q0, FiniteSeq rest) : q0_(q0), rest_(std::move(rest)) {}

    static CStarFunctional limit_functional(double q0) { return {q0, FiniteSeq{}}; }

    double q0() const { return q0_; }
    const FiniteSeq& rest() const { return rest_; }
    double dual_norm() const { return std::abs(q0_) + rest_.norm1(); }
    bool is_zero() const { return q0_ == 0.0 && rest_.is_zero(); }

    /// p0 + p1 + p2 + ...  (the scalar the constant-shift witness needs).
    double total_sum() const;

    friend CStarFunctional operator-(const CStarFunctional& a, const CStarFunctional& b);

    bool operator==(const CStarFunctional&) const = default;

private:
    double q0_;
    FiniteSeq rest_;
};

/// An l1 element is either finitely supported or geometric-tailed.
using L1Elem = std::variant<FiniteSeq, GeoTailSeq>;

// --- norms -----------------------------------------------------------------

inline double norm1(const FiniteSeq& x) { return x.norm1(); }
inline double norm1(const GeoTailSeq& x) { return x.norm1(); }
double norm1(const L1Elem& x);
inline double sup_norm(const EvConstSeq& x) { return x.sup_norm(); }
inline double dual_norm(const CStarFunctional& phi) { return phi.dual_norm(); }

// --- pairings (all exact; geometric tails summed in closed form) ------------

double pair(const EvConstSeq& phi, const FiniteSeq& x);
double pair(const EvConstSeq& phi, const GeoTailSeq& x);
double pair(const EvConstSeq& phi, const L1Elem& x);
double pair(const CStarFunctional& phi, const EvConstSeq& x);

// --- structural decompositions ----------------------------------------------

struct SplitLimit {
    double limit;        // L(x)
    EvConstSeq c0_part;  // h(x) = x - beta_{L(x)}, tail 0
};

/// x = h(x) + beta_{L(x)}, exactly.
SplitLimit split_limit(const EvConstSeq& x);

struct PosNegParts {
    EvConstSeq plus;    // entrywise max(psi_n, 0)
    EvConstSeq minus;   // entrywise min(psi_n, 0)
};

PosNegParts positive_negative_parts(const EvConstSeq& psi);

/// Entries psi_n for n <= m with psi_n < 0, as a finitely supported vector.
/// Throws std::invalid_argument when no entry n <= m is negative.
FiniteSeq truncated_negative_part(const EvConstSeq& psi, int m);

// --- misc helpers ------------------------------------------------------------

L1Elem scale(double c, const L1Elem& x);
L1Elem add(const L1Elem& a, const L1Elem& b);
L1Elem subtract(const L1Elem& a, const L1Elem& b);
GeoTailSeq as_geo_tail(const L1Elem& x);
double l1_entry_at(const L1Elem& x, int n);
bool in_positive_cone(const L1Elem& x);

}  // namespace projcert
