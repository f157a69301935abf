#include "projcert/l1_ball.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace projcert {

bool L1BallProjectionSet::member(const L1Elem& y, double tol) const {
    if (std::abs(norm1(y) - radius) > tol) return false;
    const GeoTailSeq gx = as_geo_tail(upper);
    const GeoTailSeq gy = as_geo_tail(y);
    const int n = std::max(gx.head_size(), gy.head_size());
    for (int i = 1; i <= n; ++i) {
        const double yi = gy.at(i);
        if (yi < -tol || yi > gx.at(i) + tol) return false;
    }
    if (gy.geo() < -tol || gy.geo() > gx.geo() + tol) return false;
    return true;
}

L1Elem canonical_selection(const L1Elem& x, double r) {
    if (r <= 0.0) throw std::invalid_argument("canonical_selection: radius must be positive");
    const double a = norm1(x);
    if (a <= r)
        throw std::invalid_argument("canonical_selection: ||x|| <= r, the projection is x itself");
    return scale(r / a, x);
}

double l1_ball_distance(const L1Elem& x, double r) {
    return std::max(0.0, norm1(x) - r);
}

L1BallProjectionSet projection_set(const L1Elem& x, double r) {
    if (r <= 0.0) throw std::invalid_argument("projection_set: radius must be positive");
    if (!in_positive_cone(x))
        throw std::invalid_argument("projection_set: descriptor requires x in the positive cone");
    if (norm1(x) <= r)
        throw std::invalid_argument("projection_set: requires ||x|| > r");
    return {x, r};
}

SingletonResult is_singleton(const L1Elem& x, double r) {
    projection_set(x, r);   // validates the same preconditions
    SingletonResult out;
    const GeoTailSeq g = as_geo_tail(x);
    bool infinite = false;
    const int count = g.nonzero_count_or_infinity(&infinite);
    if (infinite || count != 1) return out;
    int m = 0;
    for (int i = 1; i <= g.head_size(); ++i)
        if (g.at(i) != 0.0) m = i;
    out.singleton = true;
    out.unique_point = FiniteSeq::axis(m, r);
    return out;
}

SampleResult sample_members(const L1BallProjectionSet& set, int k, std::uint64_t seed) {
    SampleResult out;
    if (k <= 0) return out;

    const auto sing = is_singleton(set.upper, set.radius);
    if (sing.singleton) {
        out.members.push_back(*sing.unique_point);
        out.singleton_note = true;
        return out;
    }

    const double a = norm1(set.upper);
    const double r = set.radius;
    const GeoTailSeq gx = as_geo_tail(set.upper);

    auto push_unique = [&](const L1Elem& y) {
        if (static_cast<int>(out.members.size()) >= k) return;
        if (!set.member(y, 1e-12)) return;
        const GeoTailSeq gy = as_geo_tail(y);
        for (const auto& m : out.members)
            if (as_geo_tail(m) == gy) return;
        out.members.push_back(y);
    };

    push_unique(canonical_selection(set.upper, r));

    // Deterministic lambda-family: redistribute mass between index pairs (m, k0)
    // with x_k0 >= x_m > 0 while staying inside [theta, x] and on Delta_r.
    std::vector<int> support;
    const GeoTailSeq gext = gx.with_head_extended(std::max(gx.head_size() + 4, 8));
    for (int i = 1; i <= gext.head_size() && static_cast<int>(support.size()) < 8; ++i)
        if (gext.at(i) > 0.0) support.push_back(i);

    const L1Elem scaled = canonical_selection(set.upper, r);
    for (std::size_t mi = 0; mi < support.size(); ++mi) {
        for (std::size_t ki = 0; ki < support.size(); ++ki) {
            if (mi == ki) continue;
            const int m = support[mi], k0 = support[ki];
            const double tm = gext.at(m), tk = gext.at(k0);
            if (!(tk >= tm)) continue;
            // lambda sweeps [(1-c)(r/a) t_m, (r/a) t_m] with c = 1/2, clamped to
            // the exact interval that keeps entry k0 inside [0, t_k].
            const double hi = (r / a) * tm;
            const double lo = std::max(0.5 * hi, (r / a) * (tm + tk) - tk);
            for (int j = 0; j < 5 && static_cast<int>(out.members.size()) < k; ++j) {
                const double lam = lo + (hi - lo) * (static_cast<double>(j) / 4.0);
                const double dm = lam - hi;
                const FiniteSeq shift = FiniteSeq::axis(m, dm) + FiniteSeq::axis(k0, -dm);
                push_unique(add(scaled, L1Elem(shift)));
            }
        }
        if (static_cast<int>(out.members.size()) >= k) break;
    }

    // Random convex combinations of what we already have (the set is convex).
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    int guard = 0;
    while (static_cast<int>(out.members.size()) < k && guard++ < 64 * k && out.members.size() >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, out.members.size() - 1);
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const double th = unif(rng);
        push_unique(add(scale(th, out.members[i]), scale(1.0 - th, out.members[j])));
    }
    return out;
}

bool monotone_inclusion_check(const L1Elem& z, const L1Elem& x, double r, int samples,
                              std::uint64_t seed) {
    const GeoTailSeq gz = as_geo_tail(z);
    const GeoTailSeq gx = as_geo_tail(x);
    if (!gz.in_positive_cone() || !gx.in_positive_cone())
        throw std::invalid_argument("monotone_inclusion_check: z, x must lie in the positive cone");
    const int n = std::max(gz.head_size(), gx.head_size());
    for (int i = 1; i <= n; ++i)
        if (gz.at(i) > gx.at(i))
            throw std::invalid_argument("monotone_inclusion_check: requires z <= x entrywise");
    if (gz.geo() > gx.geo())
        throw std::invalid_argument("monotone_inclusion_check: requires z <= x entrywise");
    if (norm1(z) <= r) throw std::invalid_argument("monotone_inclusion_check: requires ||z|| > r");

    const auto set_z = projection_set(z, r);
    const auto set_x = projection_set(x, r);
    const auto sampled = sample_members(set_z, samples, seed);
    for (const auto& y : sampled.members)
        if (!set_x.member(y, 1e-12)) return false;
    return true;
}

namespace {

void enumerate_ball(std::vector<double>& y, std::size_t i, double partial_norm, double r,
                    double h, int steps, const std::vector<double>& x,
                    const std::function<void(const std::vector<double>&, double)>& visit) {
    if (i == y.size()) {
        double d = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) d += std::abs(x[j] - y[j]);
        visit(y, d);
        return;
    }
    for (int s = -steps; s <= steps; ++s) {
        const double v = s * h;
        if (partial_norm + std::abs(v) > r) continue;
        y[i] = v;
        enumerate_ball(y, i + 1, partial_norm + std::abs(v), r, h, steps, x, visit);
    }
}

}  // namespace

OracleResult brute_force_oracle(const FiniteSeq& x, double r, int dim, double resolution) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("brute_force_oracle: dim must be in 1..4");
    if (x.max_index() > dim)
        throw std::invalid_argument("brute_force_oracle: x must be supported on the first dim coordinates");
    if (r <= 0.0 || resolution <= 0.0)
        throw std::invalid_argument("brute_force_oracle: r and resolution must be positive");

    // Dyadic step at least 2x the resolution: distances on the grid then differ
    // by more than `resolution`, so the argmin threshold cannot pick up an
    // adjacent layer. Higher dimensions coarsen to keep enumeration bounded.
    const double step_floor = std::exp2(std::ceil(std::log2(2.0 * resolution)));
    const double h =
        dim <= 2 ? step_floor : std::max(step_floor, std::exp2(std::floor(std::log2(r / 16.0))));
    const int steps = static_cast<int>(std::ceil(r / h));

    const std::vector<double> xd = x.dense_prefix(dim);

    OracleResult out;
    out.grid_step = h;
    out.min_distance = std::numeric_limits<double>::infinity();

    std::vector<std::vector<double>> near_min;
    std::vector<double> y(static_cast<std::size_t>(dim), 0.0);
    enumerate_ball(y, 0, 0.0, r, h, steps, xd, [&](const std::vector<double>& pt, double d) {
        if (d < out.min_distance - resolution) {
            out.min_distance = std::min(out.min_distance, d);
            near_min.clear();
            near_min.push_back(pt);
        } else if (d <= out.min_distance + resolution) {
            out.min_distance = std::min(out.min_distance, d);
            near_min.push_back(pt);
        }
    });

    for (const auto& pt : near_min) {
        double d = 0.0;
        for (int j = 0; j < dim; ++j) d += std::abs(xd[static_cast<std::size_t>(j)] - pt[static_cast<std::size_t>(j)]);
        if (d <= out.min_distance + resolution) out.argmin.push_back(pt);
    }

    // One local refinement pass for the minimum value around the best cells.
    const double hf = h / 8.0;
    const int window = 8;
    std::size_t refined = 0;
    for (const auto& center : out.argmin) {
        if (refined++ >= 64) break;
        std::vector<double> lo(center.size()), z(center.size());
        for (std::size_t j = 0; j < center.size(); ++j) lo[j] = center[j] - window * hf;
        std::vector<int> idx(center.size(), 0);
        while (true) {
            double nrm = 0.0, d = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) {
                z[j] = lo[j] + idx[j] * hf;
                nrm += std::abs(z[j]);
                d += std::abs(xd[j] - z[j]);
            }
            if (nrm <= r && d < out.min_distance) out.min_distance = d;
            std::size_t j = 0;
            for (; j < idx.size(); ++j) {
                if (++idx[j] <= 2 * window) break;
                idx[j] = 0;
            }
            if (j == idx.size()) break;
        }
    }
    return out;
}

}  // namespace projcert
