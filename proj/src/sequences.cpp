#include "projcert/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace projcert {

// --- FiniteSeq ---------------------------------------------------------------

FiniteSeq::FiniteSeq(std::map<int, double> entries) : entries_(std::move(entries)) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->first < 1) throw std::invalid_argument("FiniteSeq: indices are 1-based");
        if (it->second == 0.0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

FiniteSeq FiniteSeq::axis(int m, double b) {
    if (m < 1) throw std::invalid_argument("axis: index must be positive");
    FiniteSeq s;
    if (b != 0.0) s.entries_[m] = b;
    return s;
}

FiniteSeq FiniteSeq::from_dense(const std::vector<double>& v) {
    FiniteSeq s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) s.entries_[static_cast<int>(i) + 1] = v[i];
    return s;
}

double FiniteSeq::at(int n) const {
    auto it = entries_.find(n);
    return it == entries_.end() ? 0.0 : it->second;
}

double FiniteSeq::norm1() const {
    double s = 0.0;
    for (const auto& [n, v] : entries_) s += std::abs(v);
    return s;
}

bool FiniteSeq::in_positive_cone() const {
    for (const auto& [n, v] : entries_)
        if (v < 0.0) return false;
    return true;
}

std::vector<double> FiniteSeq::dense_prefix(int upto) const {
    std::vector<double> out(static_cast<std::size_t>(upto), 0.0);
    for (const auto& [n, v] : entries_)
        if (n <= upto) out[static_cast<std::size_t>(n) - 1] = v;
    return out;
}

FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b) {
    std::map<int, double> m = a.entries_;
    for (const auto& [n, v] : b.entries_) m[n] += v;
    return FiniteSeq(std::move(m));
}

FiniteSeq operator-(const FiniteSeq& a, const FiniteSeq& b) { return a + (-1.0 * b); }

FiniteSeq operator*(double c, const FiniteSeq& a) {
    std::map<int, double> m;
    if (c != 0.0)
        for (const auto& [n, v] : a.entries_) m[n] = c * v;
    return FiniteSeq(std::move(m));
}

// --- EvConstSeq ----------------------------------------------------------------

EvConstSeq::EvConstSeq(std::vector<double> head, double tail)
    : head_(std::move(head)), tail_(tail) {
    canonicalize();
}

void EvConstSeq::canonicalize() {
    while (!head_.empty() && head_.back() == tail_) head_.pop_back();
}

EvConstSeq EvConstSeq::constant(double d) { return EvConstSeq({}, d); }

EvConstSeq EvConstSeq::axis(int m, double b) {
    if (m < 1) throw std::invalid_argument("axis: index must be positive");
    std::vector<double> head(static_cast<std::size_t>(m), 0.0);
    head.back() = b;
    return EvConstSeq(std::move(head), 0.0);
}

double EvConstSeq::at(int n) const {
    if (n < 1) throw std::invalid_argument("EvConstSeq::at: indices are 1-based");
    return n <= head_size() ? head_[static_cast<std::size_t>(n) - 1] : tail_;
}

double EvConstSeq::sup_norm() const {
    double s = std::abs(tail_);
    for (double v : head_) s = std::max(s, std::abs(v));
    return s;
}

bool EvConstSeq::all_nonnegative() const {
    if (tail_ < 0.0) return false;
    return std::all_of(head_.begin(), head_.end(), [](double v) { return v >= 0.0; });
}

EvConstSeq operator+(const EvConstSeq& a, const EvConstSeq& b) {
    const int n = std::max(a.head_size(), b.head_size());
    std::vector<double> head(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) head[static_cast<std::size_t>(i) - 1] = a.at(i) + b.at(i);
    return EvConstSeq(std::move(head), a.tail_ + b.tail_);
}

EvConstSeq operator-(const EvConstSeq& a, const EvConstSeq& b) { return a + (-1.0 * b); }

EvConstSeq operator*(double c, const EvConstSeq& a) {
    std::vector<double> head = a.head_;
    for (double& v : head) v *= c;
    return EvConstSeq(std::move(head), c * a.tail_);
}

EvConstSeq operator+(const EvConstSeq& a, const FiniteSeq& b) {
    const int n = std::max(a.head_size(), b.max_index());
    std::vector<double> head(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) head[static_cast<std::size_t>(i) - 1] = a.at(i) + b.at(i);
    return EvConstSeq(std::move(head), a.tail_);
}

// --- GeoTailSeq ------------------------------------------------------------------

GeoTailSeq::GeoTailSeq(std::vector<double> head, double geo)
    : head_(std::move(head)), geo_(geo) {}

GeoTailSeq GeoTailSeq::geometric(double d) { return GeoTailSeq({}, d); }

GeoTailSeq GeoTailSeq::from_finite(const FiniteSeq& f) {
    return GeoTailSeq(f.dense_prefix(f.max_index()), 0.0);
}

double GeoTailSeq::at(int n) const {
    if (n < 1) throw std::invalid_argument("GeoTailSeq::at: indices are 1-based");
    if (n <= head_size()) return head_[static_cast<std::size_t>(n) - 1];
    return std::ldexp(geo_, -n);
}

double GeoTailSeq::norm1() const {
    double s = 0.0;
    for (double v : head_) s += std::abs(v);
    return s + std::ldexp(std::abs(geo_), -head_size());
}

bool GeoTailSeq::is_zero() const {
    if (geo_ != 0.0) return false;
    return std::all_of(head_.begin(), head_.end(), [](double v) { return v == 0.0; });
}

bool GeoTailSeq::in_positive_cone() const {
    if (geo_ < 0.0) return false;
    return std::all_of(head_.begin(), head_.end(), [](double v) { return v >= 0.0; });
}

bool GeoTailSeq::all_positive() const {
    if (geo_ <= 0.0) return false;
    return std::all_of(head_.begin(), head_.end(), [](double v) { return v > 0.0; });
}

int GeoTailSeq::nonzero_count_or_infinity(bool* infinite) const {
    if (geo_ != 0.0) {
        if (infinite) *infinite = true;
        return -1;
    }
    if (infinite) *infinite = false;
    int c = 0;
    for (double v : head_)
        if (v != 0.0) ++c;
    return c;
}

GeoTailSeq GeoTailSeq::with_head_extended(int upto) const {
    if (upto <= head_size()) return *this;
    std::vector<double> head = head_;
    head.reserve(static_cast<std::size_t>(upto));
    for (int n = head_size() + 1; n <= upto; ++n) head.push_back(std::ldexp(geo_, -n));
    return GeoTailSeq(std::move(head), geo_);
}

GeoTailSeq operator+(const GeoTailSeq& a, const GeoTailSeq& b) {
    const int n = std::max(a.head_size(), b.head_size());
    std::vector<double> head(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) head[static_cast<std::size_t>(i) - 1] = a.at(i) + b.at(i);
    return GeoTailSeq(std::move(head), a.geo_ + b.geo_);
}

GeoTailSeq operator-(const GeoTailSeq& a, const GeoTailSeq& b) { return a + (-1.0 * b); }

GeoTailSeq operator*(double c, const GeoTailSeq& a) {
    std::vector<double> head = a.head_;
    for (double& v : head) v *= c;
    return GeoTailSeq(std::move(head), c * a.geo_);
}

GeoTailSeq operator+(const GeoTailSeq& a, const FiniteSeq& b) {
    const GeoTailSeq ax = a.with_head_extended(b.max_index());
    std::vector<double> head = ax.head();
    for (const auto& [n, v] : b.entries()) head[static_cast<std::size_t>(n) - 1] += v;
    return GeoTailSeq(std::move(head), ax.geo());
}

// --- CStarFunctional ---------------------------------------------------------------

double CStarFunctional::total_sum() const {
    double s = q0_;
    for (const auto& [n, v] : rest_.entries()) s += v;
    return s;
}

CStarFunctional operator-(const CStarFunctional& a, const CStarFunctional& b) {
    return {a.q0() - b.q0(), a.rest() - b.rest()};
}

// --- norms / pairings ------------------------------------------------------------

double norm1(const L1Elem& x) {
    return std::visit([](const auto& v) { return v.norm1(); }, x);
}

double pair(const EvConstSeq& phi, const FiniteSeq& x) {
    double s = 0.0;
    for (const auto& [n, v] : x.entries()) s += phi.at(n) * v;
    return s;
}

double pair(const EvConstSeq& phi, const GeoTailSeq& x) {
    const int n = std::max(phi.head_size(), x.head_size());
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += phi.at(i) * x.at(i);
    // tail: sum_{i>n} tail_phi * geo/2^i = tail_phi * geo * 2^{-n}
    return s + phi.tail() * std::ldexp(x.geo(), -n);
}

double pair(const EvConstSeq& phi, const L1Elem& x) {
    return std::visit([&](const auto& v) { return pair(phi, v); }, x);
}

double pair(const CStarFunctional& phi, const EvConstSeq& x) {
    double s = phi.q0() * x.tail();
    for (const auto& [n, v] : phi.rest().entries()) s += v * x.at(n);
    return s;
}

// --- decompositions -----------------------------------------------------------------

SplitLimit split_limit(const EvConstSeq& x) {
    const double L = x.tail();
    return {L, x - EvConstSeq::constant(L)};
}

PosNegParts positive_negative_parts(const EvConstSeq& psi) {
    std::vector<double> hp(psi.head().size()), hm(psi.head().size());
    for (std::size_t i = 0; i < psi.head().size(); ++i) {
        hp[i] = std::max(psi.head()[i], 0.0);
        hm[i] = std::min(psi.head()[i], 0.0);
    }
    return {EvConstSeq(std::move(hp), std::max(psi.tail(), 0.0)),
            EvConstSeq(std::move(hm), std::min(psi.tail(), 0.0))};
}

FiniteSeq truncated_negative_part(const EvConstSeq& psi, int m) {
    if (m < 1) throw std::invalid_argument("truncated_negative_part: m must be positive");
    std::map<int, double> entries;
    for (int n = 1; n <= m; ++n)
        if (psi.at(n) < 0.0) entries[n] = psi.at(n);
    if (entries.empty())
        throw std::invalid_argument("truncated_negative_part: no negative entry at index <= m");
    return FiniteSeq(std::move(entries));
}

// --- L1Elem helpers ---------------------------------------------------------------

L1Elem scale(double c, const L1Elem& x) {
    return std::visit([&](const auto& v) -> L1Elem { return c * v; }, x);
}

GeoTailSeq as_geo_tail(const L1Elem& x) {
    if (std::holds_alternative<GeoTailSeq>(x)) return std::get<GeoTailSeq>(x);
    return GeoTailSeq::from_finite(std::get<FiniteSeq>(x));
}

L1Elem add(const L1Elem& a, const L1Elem& b) {
    if (std::holds_alternative<FiniteSeq>(a) && std::holds_alternative<FiniteSeq>(b))
        return std::get<FiniteSeq>(a) + std::get<FiniteSeq>(b);
    return as_geo_tail(a) + as_geo_tail(b);
}

L1Elem subtract(const L1Elem& a, const L1Elem& b) { return add(a, scale(-1.0, b)); }

double l1_entry_at(const L1Elem& x, int n) {
    return std::visit([&](const auto& v) { return v.at(n); }, x);
}

bool in_positive_cone(const L1Elem& x) {
    return std::visit([](const auto& v) { return v.in_positive_cone(); }, x);
}

}  // namespace projcert
