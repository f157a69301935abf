#include "projcert/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace projcert {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

bool SimplexDescriptor::contains(const L1Elem& x, double tol) const {
    if (std::abs(norm1(x) - level) > tol) return false;
    const GeoTailSeq g = as_geo_tail(x);
    if (strict) return g.all_positive();
    return g.in_positive_cone();
}

GeoTailSeq kstar(const EvConstSeq& phi) {
    std::vector<double> head(static_cast<std::size_t>(phi.head_size()));
    for (int n = 1; n <= phi.head_size(); ++n)
        head[static_cast<std::size_t>(n) - 1] = std::ldexp(phi.at(n), -n);
    return GeoTailSeq(std::move(head), phi.tail());
}

bool j_l1_membership(const L1Elem& x, const EvConstSeq& phi, double tol) {
    const double nx = norm1(x);
    return std::abs(pair(phi, x) - nx * nx) <= tol && std::abs(phi.sup_norm() - nx) <= tol;
}

JValueOnSimplex j_value_on_strict_simplex(const GeoTailSeq& y, double tol) {
    (void)tol;
    if (!y.in_positive_cone())
        throw std::invalid_argument("j_value_on_strict_simplex: y must lie in the positive cone");
    const double a = y.norm1();
    if (a <= 0.0) throw std::invalid_argument("j_value_on_strict_simplex: y must be nonzero");
    JValueOnSimplex out;
    if (y.all_positive()) {
        out.singleton = true;
        out.value = EvConstSeq::constant(a);
    }
    return out;
}

EvConstSeq simplex_boundary_dual(double a, int zero_index) {
    if (a <= 0.0) throw std::invalid_argument("simplex_boundary_dual: level must be positive");
    return EvConstSeq::constant(a) + FiniteSeq::axis(zero_index, -a);
}

namespace {

// Membership defect of phi against both y and z (pairing and norm, worst of all).
double related_defect(const EvConstSeq& phi, const L1Elem& y, const L1Elem& z, double a) {
    double d = std::abs(phi.sup_norm() - a);
    d = std::max(d, std::abs(pair(phi, y) - a * a));
    d = std::max(d, std::abs(pair(phi, z) - a * a));
    return d;
}

}  // namespace

RelatedReport generalized_identity_related(const L1Elem& y, const L1Elem& z, double tol) {
    RelatedReport rep;
    const double ay = norm1(y);
    const double az = norm1(z);
    if (std::abs(ay - az) > tol) {
        // Norm inequality rules the intersection out unconditionally.
        rep.search_only = false;
        return rep;
    }
    const double a = ay;
    if (a <= tol) {
        // Both are the origin; J(theta) = {theta*}.
        rep.related = true;
        rep.witness = EvConstSeq{};
        rep.search_only = false;
        return rep;
    }

    const GeoTailSeq gy = as_geo_tail(y);
    const GeoTailSeq gz = as_geo_tail(z);
    const int N = std::max(gy.head_size(), gz.head_size());

    // Forced signs on the union of supports; head gaps follow the tail value.
    std::vector<double> forced(static_cast<std::size_t>(N), 0.0);
    for (int n = 1; n <= N; ++n) {
        const double sy = sgn(gy.at(n)), sz = sgn(gz.at(n));
        if (sy != 0.0 && sz != 0.0 && sy != sz) return rep;  // sign conflict: family empty
        forced[static_cast<std::size_t>(n) - 1] = sy != 0.0 ? sy : sz;
    }
    const double ty = sgn(gy.geo()), tz = sgn(gz.geo());
    if (ty != 0.0 && tz != 0.0 && ty != tz) return rep;
    const double forced_tail = ty != 0.0 ? ty : tz;

    auto candidate = [&](double tail_value) {
        std::vector<double> head(static_cast<std::size_t>(N));
        for (int n = 1; n <= N; ++n) {
            const double s = forced[static_cast<std::size_t>(n) - 1];
            head[static_cast<std::size_t>(n) - 1] = s != 0.0 ? a * s : tail_value;
        }
        return EvConstSeq(std::move(head), tail_value);
    };

    auto check = [&](double tau) -> bool {
        const EvConstSeq phi = candidate(tau);
        if (j_l1_membership(y, phi, tol) && j_l1_membership(z, phi, tol)) {
            rep.related = true;
            rep.witness = phi;
            return true;
        }
        return false;
    };

    if (forced_tail != 0.0) {
        check(a * forced_tail);
        return rep;
    }

    // Free tail: 101-point grid on [-a, a], one golden-section refinement
    // of the membership defect around the best grid value.
    double best_tau = 0.0, best_defect = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        const double tau = -a + 2.0 * a * i / 100.0;
        const double d = related_defect(candidate(tau), y, z, a);
        if (d < best_defect) {
            best_defect = d;
            best_tau = tau;
        }
    }
    const double step = 2.0 * a / 100.0;
    double lo = std::max(-a, best_tau - step), hi = std::min(a, best_tau + step);
    constexpr double invphi = 0.6180339887498949;
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        const double c = hi - invphi * (hi - lo);
        const double d = lo + invphi * (hi - lo);
        if (related_defect(candidate(c), y, z, a) <= related_defect(candidate(d), y, z, a))
            hi = d;
        else
            lo = c;
    }
    const double tau_ref = 0.5 * (lo + hi);
    if (!check(tau_ref)) check(best_tau);
    return rep;
}

bool j_c_membership(const EvConstSeq& x, const CStarFunctional& phi, double tol) {
    const double nx = x.sup_norm();
    return std::abs(pair(phi, x) - nx * nx) <= tol && std::abs(phi.dual_norm() - nx) <= tol;
}

bool j_C01_membership(const AtomicMeasure& mu, const Fn& f, double tol, int grid_size) {
    const double nf = sup_norm_01(f, grid_size);
    if (nf == 0.0) throw std::invalid_argument("j_C01_membership: ||f|| must be positive");
    double pairing = 0.0, tv = 0.0;
    for (const auto& atom : mu.atoms) {
        if (atom.w == 0.0) continue;
        const double ft = f(atom.t);
        if (std::abs(std::abs(ft) - nf) > tol) return false;   // atom off the maximizing set
        if (ft * atom.w <= 0.0) return false;                  // weight sign must match f
        pairing += ft * atom.w;
        tv += std::abs(atom.w);
    }
    return std::abs(tv - nf) <= tol && std::abs(pairing - nf * nf) <= tol;
}

EvConstSeq canonical_sign_functional(const L1Elem& z) {
    const GeoTailSeq g = as_geo_tail(z);
    const double nz = g.norm1();
    if (nz == 0.0) return EvConstSeq{};
    std::vector<double> head(static_cast<std::size_t>(g.head_size()));
    for (int n = 1; n <= g.head_size(); ++n)
        head[static_cast<std::size_t>(n) - 1] = nz * sgn(g.at(n));
    return EvConstSeq(std::move(head), nz * sgn(g.geo()));
}

VariationalReport variational_inequality_check(const FiniteSeq& x, const FiniteSeq& u,
                                               const std::function<FiniteSeq(int)>& c_sampler,
                                               int sample_count, double tol) {
    VariationalReport rep;
    const FiniteSeq z = x - u;
    const double nz = z.norm1();

    std::vector<FiniteSeq> samples;
    samples.reserve(static_cast<std::size_t>(std::max(sample_count, 0)));
    for (int k = 0; k < sample_count; ++k) samples.push_back(c_sampler(k));

    if (nz == 0.0) {
        // u = x in C: j = theta*, the inequality is vacuous.
        rep.min_pairing = 0.0;
        rep.holds = true;
        rep.functional = EvConstSeq{};
        return rep;
    }

    std::vector<double> head(static_cast<std::size_t>(z.max_index()), 0.0);
    for (const auto& [n, v] : z.entries()) head[static_cast<std::size_t>(n) - 1] = nz * sgn(v);

    auto min_over_samples = [&](double tau) {
        const EvConstSeq phi(std::vector<double>(head), tau);
        double m = std::numeric_limits<double>::infinity();
        for (const auto& y : samples) m = std::min(m, pair(phi, u - y));
        return m;
    };

    double best_tau = 0.0, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        const double tau = -nz + 2.0 * nz * i / 100.0;
        const double m = min_over_samples(tau);
        if (m > best) {
            best = m;
            best_tau = tau;
        }
    }
    rep.min_pairing = best;
    rep.holds = best >= -tol;
    rep.functional = EvConstSeq(std::move(head), best_tau);
    return rep;
}

}  // namespace projcert
