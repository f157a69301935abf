#include "projcert/coderivative.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "projcert/duality.hpp"

namespace projcert {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Excluded: return "EXCLUDED";
        case Verdict::Consistent: return "CONSISTENT";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

std::vector<double> dyadic_grid(double t0, int count = 15) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = std::ldexp(t0, -k);
    return g;
}

double fit_intercept_last5(const std::vector<double>& ts, const std::vector<double>& vs) {
    const std::size_t n = ts.size();
    const std::size_t k = std::min<std::size_t>(5, n);
    double st = 0, sv = 0, stt = 0, stv = 0;
    for (std::size_t i = n - k; i < n; ++i) {
        st += ts[i];
        sv += vs[i];
        stt += ts[i] * ts[i];
        stv += ts[i] * vs[i];
    }
    const double denom = k * stt - st * st;
    if (denom == 0.0) return sv / static_cast<double>(k);
    return (sv * stt - st * stv) / denom;
}

}  // namespace

QuotientTrace evaluate_along(const WitnessPath& path) {
    QuotientTrace tr;
    double prev_approach = std::numeric_limits<double>::infinity();
    for (double t : path.t_grid) {
        if (path.selection_valid_at && !path.selection_valid_at(t))
            throw std::runtime_error("witness path '" + path.label +
                                     "': projection selection invalid at t = " + std::to_string(t));
        const double q = path.quotient_at(t);
        if (!std::isfinite(q))
            throw std::runtime_error("witness path '" + path.label + "': non-finite quotient");
        const double ap = path.approach_at ? path.approach_at(t) : t;
        if (ap > prev_approach + 1e-15) tr.approach_decreasing = false;
        prev_approach = ap;
        tr.ts.push_back(t);
        tr.values.push_back(q);
    }
    if (!tr.values.empty()) {
        tr.extrapolated = fit_intercept_last5(tr.ts, tr.values);
        const auto [mn, mx] = std::minmax_element(tr.values.begin(), tr.values.end());
        tr.spread = *mx - *mn;
    }
    return tr;
}

ExclusionReport exclusion_certificate(const std::vector<WitnessPath>& paths, double tol) {
    ExclusionReport rep;
    bool first = true;
    for (const auto& path : paths) {
        const QuotientTrace tr = evaluate_along(path);
        if (first || tr.extrapolated > rep.extrapolated) {
            rep.best_path = path.label;
            rep.trace = tr;
            rep.expected = path.expected_limit;
            rep.extrapolated = tr.extrapolated;
            first = false;
        }
    }
    if (first) return rep;   // no paths: INCONCLUSIVE
    rep.threshold = 10.0 * tol;
    if (rep.expected) rep.threshold = std::max(rep.threshold, *rep.expected / 2.0);
    rep.verdict = rep.extrapolated >= rep.threshold ? Verdict::Excluded : Verdict::Inconclusive;
    return rep;
}

// --- l1 ---------------------------------------------------------------------

double coderivative_quotient_l1(const EvConstSeq& xstar, const EvConstSeq& ystar,
                                const L1Elem& x, const L1Elem& y,
                                const L1Elem& u, const L1Elem& v, double r) {
    const L1Elem du = subtract(u, x);
    const L1Elem dv = subtract(v, y);
    const double den = norm1(du) + norm1(dv);
    if (den == 0.0) throw std::invalid_argument("coderivative quotient: (u, v) = (x, y)");
    const double nu = norm1(u);
    if (nu > r) {
        if (std::abs(norm1(v) - r) > 1e-9 * std::max(1.0, r) ||
            std::abs(norm1(subtract(u, v)) - (nu - r)) > 1e-9 * std::max(1.0, nu))
            throw std::invalid_argument("coderivative quotient: v is not a projection of u");
    } else {
        if (norm1(subtract(u, v)) > 1e-12)
            throw std::invalid_argument("coderivative quotient: interior point projects to itself");
    }
    return (pair(xstar, du) - pair(ystar, dv)) / den;
}

namespace {

double pair_finite_with_self(const FiniteSeq& g) {
    double s = 0.0;
    for (const auto& [n, v] : g.entries()) s += v * v;
    return s;
}

int min_nonzero_index(const EvConstSeq& psi) {
    for (int n = 1; n <= psi.head_size(); ++n)
        if (psi.at(n) != 0.0) return n;
    if (psi.tail() != 0.0) return psi.head_size() + 1;
    return 0;
}

int min_negative_index(const EvConstSeq& psi) {
    for (int n = 1; n <= psi.head_size(); ++n)
        if (psi.at(n) < 0.0) return n;
    if (psi.tail() < 0.0) return psi.head_size() + 1;
    return 0;
}

WitnessPath make_l1_segment_path(std::string label, const GeoTailSeq& x, double r,
                                 const EvConstSeq& candidate, const EvConstSeq& target,
                                 const GeoTailSeq& dir, double t0,
                                 std::optional<double> expected) {
    const double a = x.norm1();
    const GeoTailSeq y = (r / a) * x;
    WitnessPath path;
    path.label = std::move(label);
    path.t_grid = dyadic_grid(t0);
    path.expected_limit = expected;
    auto uv = [x, dir, r](double t) {
        const GeoTailSeq u = x + t * dir;
        const GeoTailSeq v = (r / u.norm1()) * u;
        return std::pair{u, v};
    };
    path.quotient_at = [uv, candidate, target, x, y, r](double t) {
        const auto [u, v] = uv(t);
        return coderivative_quotient_l1(candidate, target, x, y, u, v, r);
    };
    path.approach_at = [uv, x, y](double t) {
        const auto [u, v] = uv(t);
        return (u - x).norm1() + (v - y).norm1();
    };
    path.selection_valid_at = [uv, r](double t) {
        const auto [u, v] = uv(t);
        const double nu = u.norm1();
        return nu > r && std::abs(v.norm1() - r) <= 1e-9 * std::max(1.0, r) &&
               std::abs((u - v).norm1() - (nu - r)) <= 1e-9 * std::max(1.0, nu);
    };
    return path;
}

}  // namespace

std::vector<WitnessPath> witnesses_l1(const GeoTailSeq& x, double r,
                                      const EvConstSeq& candidate, const EvConstSeq& target) {
    if (r <= 0.0) throw std::invalid_argument("witnesses_l1: radius must be positive");
    if (!x.all_positive())
        throw std::invalid_argument("witnesses_l1: x must have strictly positive entries");
    const double a = x.norm1();
    if (a <= r) throw std::invalid_argument("witnesses_l1: requires ||x|| > r");

    std::vector<WitnessPath> out;

    if (target.is_zero()) {
        if (candidate.is_zero())
            throw std::invalid_argument("witnesses_l1: theta* is the member; no exclusion witness");
        const auto parts = positive_negative_parts(candidate);
        if (!parts.plus.is_zero()) {
            const GeoTailSeq w = kstar(parts.plus);
            const double nw = w.norm1();
            const double p = (a - r) / 2.0;
            const double expected =
                pair(parts.plus, w) / (nw + (r / (a * a)) * (a * w - nw * x).norm1());
            out.push_back(make_l1_segment_path("thm3.4-ii-a-case1", x, r, candidate, target, w,
                                               p / (2.0 * nw), expected));
        }
        if (!parts.minus.is_zero()) {
            const int m = min_negative_index(candidate);
            const FiniteSeq g = truncated_negative_part(candidate, m);
            const GeoTailSeq gg = GeoTailSeq::from_finite(g);
            const double ng = g.norm1();
            double b = (a - r) / 2.0;
            for (int n = 1; n <= m; ++n) b = std::min(b, x.at(n));
            const double t0 = b / (2.0 * m * candidate.sup_norm());
            const double expected =
                pair_finite_with_self(g) / (ng + (r / (a * a)) * (a * gg + ng * x).norm1());
            out.push_back(
                make_l1_segment_path("thm3.4-ii-a-case2", x, r, candidate, target, gg, t0, expected));
        }
        return out;
    }

    if (target.head_size() == 0 && target.tail() > 0.0) {
        const double d = target.tail();
        if (candidate.is_zero()) {
            // Sequence direction u_n = x + s(n, -(x_n + 1/n)); the geometric tail
            // guarantees n x_n -> 0. Exact limit 2dr/(a+2r).
            const int n0 = std::max<int>(8, static_cast<int>(std::ceil(2.0 / (a - r))) + 1);
            WitnessPath path;
            path.label = "thm3.4-ii-b-sequence";
            for (int k = 0; k < 15; ++k)
                path.t_grid.push_back(1.0 / (static_cast<double>(n0) * std::exp2(k)));
            path.expected_limit = 2.0 * d * r / (a + 2.0 * r);
            const GeoTailSeq y = (r / a) * x;
            auto uv = [x, r](double t) {
                const int n = static_cast<int>(std::llround(1.0 / t));
                const GeoTailSeq u = x + FiniteSeq::axis(n, -(x.at(n) + 1.0 / n));
                const GeoTailSeq v = (r / u.norm1()) * u;
                return std::pair{u, v};
            };
            path.quotient_at = [uv, candidate, target, x, y, r](double t) {
                const auto [u, v] = uv(t);
                return coderivative_quotient_l1(candidate, target, x, y, u, v, r);
            };
            path.approach_at = [uv, x, y](double t) {
                const auto [u, v] = uv(t);
                return (u - x).norm1() + (v - y).norm1();
            };
            path.selection_valid_at = [uv, r](double t) {
                const auto [u, v] = uv(t);
                const double nu = u.norm1();
                return nu > r && std::abs(v.norm1() - r) <= 1e-9 * std::max(1.0, r) &&
                       std::abs((u - v).norm1() - (nu - r)) <= 1e-9 * std::max(1.0, nu);
            };
            out.push_back(std::move(path));
            return out;
        }
        const int m = min_nonzero_index(candidate);
        const double lam = candidate.at(m);
        const double tm = x.at(m);
        const double expected =
            std::abs(lam) / (1.0 + 2.0 * r * (a - tm) / (a * a));
        // entry m must stay nonnegative and u must stay outside the ball
        const double t0 = std::min(tm, (a - r) / 2.0) / (2.0 * std::abs(lam));
        out.push_back(make_l1_segment_path("thm3.4-ii-b-segment", x, r, candidate, target,
                                           GeoTailSeq::from_finite(FiniteSeq::axis(m, lam)), t0,
                                           expected));
        return out;
    }

    throw std::invalid_argument("witnesses_l1: target must be theta* or beta_d with d > 0");
}

namespace {

struct Direction {
    std::string label;
    L1Elem dir;
};

std::vector<Direction> l1_battery_directions(const GeoTailSeq& x, int battery_size,
                                             std::uint64_t seed) {
    std::vector<Direction> dirs;
    for (int m = 1; m <= 4; ++m) {
        dirs.push_back({"axis+" + std::to_string(m), FiniteSeq::axis(m, 1.0)});
        dirs.push_back({"axis-" + std::to_string(m), FiniteSeq::axis(m, -1.0)});
    }
    dirs.push_back({"geo+", GeoTailSeq::geometric(1.0)});
    dirs.push_back({"geo-", GeoTailSeq::geometric(-1.0)});
    dirs.push_back({"toward-origin", (-1.0) * x});   // convex pull (1-t) x
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(1, 8);
    std::uniform_real_distribution<double> val(0.2, 2.0);
    std::bernoulli_distribution coin;
    while (static_cast<int>(dirs.size()) < battery_size) {
        FiniteSeq f;
        const int support = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < support; ++j)
            f = f + FiniteSeq::axis(idx(rng), (coin(rng) ? 1.0 : -1.0) * val(rng));
        if (f.is_zero()) continue;
        dirs.push_back({"rand" + std::to_string(dirs.size()), f});
    }
    (void)x;
    return dirs;
}

ConsistencyReport run_battery(const std::vector<Direction>& dirs,
                              const std::function<double(const L1Elem&, double)>& quotient,
                              const std::function<double(const L1Elem&)>& t0_of, double tol) {
    ConsistencyReport rep;
    rep.max_quotient = -std::numeric_limits<double>::infinity();
    for (const auto& dir : dirs) {
        const double t0 = t0_of(dir.dir);
        std::vector<double> ts = dyadic_grid(t0), vs;
        for (double t : ts) vs.push_back(quotient(dir.dir, t));
        const double worst = *std::max_element(vs.begin(), vs.end());
        if (worst > rep.max_quotient) {
            rep.max_quotient = worst;
            rep.worst_direction = dir.label;
            rep.worst_extrapolated = fit_intercept_last5(ts, vs);
        }
    }
    rep.verdict = rep.max_quotient <= tol ? Verdict::Consistent : Verdict::Excluded;
    return rep;
}

}  // namespace

ConsistencyReport membership_consistency_l1(const GeoTailSeq& x, double r,
                                            const EvConstSeq& candidate, const EvConstSeq& target,
                                            int battery_size, std::uint64_t seed, double tol) {
    const double a = x.norm1();
    if (a <= r) throw std::invalid_argument("membership_consistency_l1: requires ||x|| > r");
    const GeoTailSeq y = (r / a) * x;

    auto quotient = [&](const L1Elem& dir, double t) {
        const GeoTailSeq u = x + t * as_geo_tail(dir);
        const GeoTailSeq v = (r / u.norm1()) * u;
        return coderivative_quotient_l1(candidate, target, x, y, u, v, r);
    };
    auto t0_of = [&](const L1Elem& dir) { return std::min(1.0, (a - r) / (2.0 * norm1(dir))); };

    ConsistencyReport rep =
        run_battery(l1_battery_directions(x, battery_size, seed), quotient, t0_of, tol);

    // Fold in the catalog witnesses when the candidate pair matches a proof case.
    try {
        for (const auto& path : witnesses_l1(x, r, candidate, target)) {
            const QuotientTrace tr = evaluate_along(path);
            const double worst = *std::max_element(tr.values.begin(), tr.values.end());
            if (worst > rep.max_quotient) {
                rep.max_quotient = worst;
                rep.worst_direction = path.label;
                rep.worst_extrapolated = tr.extrapolated;
            }
        }
    } catch (const std::invalid_argument&) {
        // no catalog case applies
    }
    rep.verdict = rep.max_quotient <= tol ? Verdict::Consistent : Verdict::Excluded;
    return rep;
}

ConsistencyReport membership_consistency_l1_interior(const L1Elem& x, double r,
                                                     const EvConstSeq& candidate,
                                                     const EvConstSeq& target, int battery_size,
                                                     std::uint64_t seed, double tol) {
    const double a = norm1(x);
    if (a >= r) throw std::invalid_argument("membership_consistency_l1_interior: requires ||x|| < r");
    auto quotient = [&](const L1Elem& dir, double t) {
        const L1Elem u = add(x, scale(t, dir));
        return coderivative_quotient_l1(candidate, target, x, x, u, u, r);
    };
    auto t0_of = [&](const L1Elem& dir) { return std::min(1.0, (r - a) / (2.0 * norm1(dir))); };
    return run_battery(l1_battery_directions(as_geo_tail(x), battery_size, seed), quotient, t0_of,
                       tol);
}

// --- c ------------------------------------------------------------------------

double coderivative_quotient_c(const CStarFunctional& xstar, const CStarFunctional& ystar,
                               const EvConstSeq& x, const EvConstSeq& y,
                               const EvConstSeq& u, const EvConstSeq& v) {
    const EvConstSeq du = u - x;
    const EvConstSeq dv = v - y;
    const double den = du.sup_norm() + dv.sup_norm();
    if (den == 0.0) throw std::invalid_argument("coderivative quotient: (u, v) = (x, y)");
    if (!c0_membership(u, v, 1e-12))
        throw std::invalid_argument("coderivative quotient: v is not a projection of u onto c0");
    return (pair(xstar, du) - pair(ystar, dv)) / den;
}

namespace {

WitnessPath make_c_path(std::string label, const EvConstSeq& x, const CStarFunctional& candidate,
                        const CStarFunctional& target, const EvConstSeq& dir,
                        std::optional<double> expected) {
    const EvConstSeq y = project_c0(x).canonical;
    WitnessPath path;
    path.label = std::move(label);
    path.t_grid = dyadic_grid(1.0);
    path.expected_limit = expected;
    auto uv = [x](const EvConstSeq& z, double t) {
        const EvConstSeq u = x + t * z;
        return std::pair{u, project_c0(u).canonical};
    };
    path.quotient_at = [uv, dir, candidate, target, x, y](double t) {
        const auto [u, v] = uv(dir, t);
        return coderivative_quotient_c(candidate, target, x, y, u, v);
    };
    path.approach_at = [uv, dir, x, y](double t) {
        const auto [u, v] = uv(dir, t);
        return (u - x).sup_norm() + (v - y).sup_norm();
    };
    path.selection_valid_at = [uv, dir](double t) {
        const auto [u, v] = uv(dir, t);
        return c0_membership(u, v, 0.0);
    };
    return path;
}

int min_support_index(const FiniteSeq& f) {
    return f.is_zero() ? 0 : f.entries().begin()->first;
}

}  // namespace

std::vector<WitnessPath> witnesses_c(const EvConstSeq& x, const CStarFunctional& candidate,
                                     const CStarFunctional& target) {
    std::vector<WitnessPath> out;

    if (target.rest().is_zero()) {
        // Target s(0, q0): theta* is the member; any nonzero candidate is excluded.
        if (candidate.is_zero()) return out;
        if (!candidate.rest().is_zero()) {
            const int m = min_support_index(candidate.rest());
            const double pm = candidate.rest().at(m);
            out.push_back(make_c_path("thm4.4-i-case1", x, candidate, target,
                                      EvConstSeq::axis(m, pm), std::abs(pm) / 2.0));
        } else {
            const double p0 = candidate.q0();
            out.push_back(make_c_path("thm4.4-i-case2", x, candidate, target,
                                      EvConstSeq::constant(p0), std::abs(p0)));
        }
        return out;
    }

    // Target with some q_m != 0 (m >= 1): nothing is a member.
    if (candidate.is_zero()) {
        const int m = min_support_index(target.rest());
        const double qm = target.rest().at(m);
        out.push_back(make_c_path("thm4.4-ii-theta", x, candidate, target,
                                  EvConstSeq::axis(m, -qm), std::abs(qm) / 2.0));
        return out;
    }
    const double p = candidate.total_sum();
    if (p != 0.0)
        out.push_back(make_c_path("thm4.4-ii-shift", x, candidate, target, EvConstSeq::constant(p),
                                  std::abs(p)));
    std::vector<int> support;
    for (const auto& [n, v] : candidate.rest().entries()) support.push_back(n);
    for (const auto& [n, v] : target.rest().entries())
        if (std::find(support.begin(), support.end(), n) == support.end()) support.push_back(n);
    std::sort(support.begin(), support.end());
    for (int m : support) {
        const double pm = candidate.rest().at(m);
        const double qm = target.rest().at(m);
        if (pm == qm) continue;
        const double sigma = pm > qm ? 1.0 : -1.0;
        out.push_back(make_c_path("thm4.4-ii-axis" + std::to_string(m), x, candidate, target,
                                  EvConstSeq::axis(m, sigma), sigma * (pm - qm) / 2.0));
    }
    return out;
}

ConsistencyReport membership_consistency_c(const EvConstSeq& x, const CStarFunctional& candidate,
                                           const CStarFunctional& target, int battery_size,
                                           std::uint64_t seed, double tol) {
    const EvConstSeq y = project_c0(x).canonical;

    std::vector<std::pair<std::string, EvConstSeq>> dirs;
    for (int m = 1; m <= 6; ++m) {
        dirs.push_back({"axis+" + std::to_string(m), EvConstSeq::axis(m, 1.0)});
        dirs.push_back({"axis-" + std::to_string(m), EvConstSeq::axis(m, -1.0)});
    }
    dirs.push_back({"shift+", EvConstSeq::constant(1.0)});
    dirs.push_back({"shift-", EvConstSeq::constant(-1.0)});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(1, 8);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    while (static_cast<int>(dirs.size()) < battery_size) {
        EvConstSeq z = EvConstSeq::constant(val(rng));
        const int support = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < support; ++j) z = z + FiniteSeq::axis(idx(rng), val(rng));
        if (z.is_zero()) continue;
        dirs.push_back({"rand" + std::to_string(dirs.size()), z});
    }

    ConsistencyReport rep;
    rep.max_quotient = -std::numeric_limits<double>::infinity();
    for (const auto& [label, z] : dirs) {
        std::vector<double> ts = dyadic_grid(1.0), vs;
        for (double t : ts) {
            const EvConstSeq u = x + t * z;
            vs.push_back(coderivative_quotient_c(candidate, target, x, y, u,
                                                 project_c0(u).canonical));
        }
        const double worst = *std::max_element(vs.begin(), vs.end());
        if (worst > rep.max_quotient) {
            rep.max_quotient = worst;
            rep.worst_direction = label;
            rep.worst_extrapolated = fit_intercept_last5(ts, vs);
        }
    }
    for (const auto& path : witnesses_c(x, candidate, target)) {
        const QuotientTrace tr = evaluate_along(path);
        const double worst = *std::max_element(tr.values.begin(), tr.values.end());
        if (worst > rep.max_quotient) {
            rep.max_quotient = worst;
            rep.worst_direction = path.label;
            rep.worst_extrapolated = tr.extrapolated;
        }
    }
    rep.verdict = rep.max_quotient <= tol ? Verdict::Consistent : Verdict::Excluded;
    return rep;
}

// --- C[0,1] ---------------------------------------------------------------------

double coderivative_quotient_c01(const AtomicMeasure& xstar, const AtomicMeasure& ystar,
                                 const Fn& du, const Poly& dv, int grid_size) {
    const double den =
        sup_norm_01(du, grid_size) + sup_norm_01([&dv](double t) { return dv(t); }, grid_size);
    if (den == 0.0) throw std::invalid_argument("coderivative quotient: (u, v) = (x, y)");
    return (xstar.pair_with(du) - ystar.pair_with([&dv](double t) { return dv(t); })) / den;
}

namespace {

// Shifting the data by q in P_n shifts the best approximation by q and keeps
// the level and alternation set; validity is checked against the shifted
// certificate directly.
bool shifted_certificate_valid(const Fn& f, const BestApprox& cert, const Poly& shift,
                               double alpha_scale) {
    const Fn residual = [&f, &cert, &shift, alpha_scale](double t) {
        return alpha_scale * (f(t) - cert.p(t));
    };
    (void)shift;
    if (!cert.certificate_applicable)
        return sup_norm_01(residual, 512) <= 1e-8;
    const double want_level = std::abs(alpha_scale) * cert.A;
    for (std::size_t i = 0; i < cert.S.size(); ++i) {
        const double want = cert.eps * want_level * ((i % 2 == 0) ? 1.0 : -1.0) *
                            (alpha_scale >= 0.0 ? 1.0 : -1.0);
        if (std::abs(residual(cert.S[i]) - want) > 1e-8 * std::max(1.0, want_level)) return false;
    }
    return true;
}

}  // namespace

std::vector<WitnessPath> witnesses_c01(const Fn& f, const BestApprox& cert,
                                       const AtomicMeasure& candidate, const AtomicMeasure& target) {
    if (!cert.converged) throw std::invalid_argument("witnesses_c01: certificate did not converge");
    const Poly p = cert.p;
    std::vector<WitnessPath> out;

    const double gtot = candidate.total_mass();
    const double mtot = target.total_mass();

    for (int sign = +1; sign >= -1; sign -= 2) {
        WitnessPath path;
        path.label = sign > 0 ? "thm5.10-shift+" : "thm5.10-shift-";
        path.t_grid = dyadic_grid(1.0);
        path.expected_limit = sign > 0 ? (gtot - mtot) / 2.0 : (mtot - gtot) / 2.0;
        path.quotient_at = [candidate, target, sign](double t) {
            const double lam = sign * t;
            const Fn du = [lam](double) { return lam; };
            return coderivative_quotient_c01(candidate, target, du, Poly::constant(lam), 512);
        };
        path.approach_at = [](double t) { return 2.0 * t; };
        path.selection_valid_at = [f, cert](double) {
            return shifted_certificate_valid(f, cert, Poly{}, 1.0);
        };
        out.push_back(std::move(path));
    }

    const double pairing = candidate.pair_with([&](double t) { return f(t) - p(t); });
    if (cert.certificate_applicable && cert.A > 0.0 && pairing < 0.0) {
        WitnessPath path;
        path.label = "thm5.10-convex";
        path.t_grid = dyadic_grid(0.5);
        const double supfp = sup_norm_01([&](double t) { return f(t) - p(t); });
        path.expected_limit = -pairing / supfp;
        path.quotient_at = [candidate, target, f, p](double alpha) {
            const Fn du = [f, p, alpha](double t) { return -alpha * (f(t) - p(t)); };
            return coderivative_quotient_c01(candidate, target, du, Poly{}, 4096);
        };
        path.approach_at = [supfp](double alpha) { return alpha * supfp; };
        path.selection_valid_at = [f, cert](double alpha) {
            return shifted_certificate_valid(f, cert, Poly{}, 1.0 - alpha);
        };
        out.push_back(std::move(path));
    }
    return out;
}

ConsistencyReport membership_consistency_c01(const Fn& f, const BestApprox& cert,
                                             const AtomicMeasure& candidate,
                                             const AtomicMeasure& target, int battery_size,
                                             std::uint64_t seed, double tol) {
    const Poly p = cert.p;
    const int n = cert.certificate_applicable ? static_cast<int>(cert.S.size()) - 2
                                              : std::max(0, p.degree());

    std::vector<std::pair<std::string, Poly>> dirs;
    dirs.push_back({"shift+", Poly::constant(1.0)});
    dirs.push_back({"shift-", Poly::constant(-1.0)});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    while (static_cast<int>(dirs.size()) < battery_size) {
        std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
        for (auto& c : coeffs) c = val(rng);
        Poly q(std::move(coeffs));
        if (q.is_zero()) continue;
        dirs.push_back({"poly" + std::to_string(dirs.size()), q});
    }

    ConsistencyReport rep;
    rep.max_quotient = -std::numeric_limits<double>::infinity();
    // Directions q in P_n move the projection by exactly q: the quotient is
    // constant in t, so one evaluation per direction suffices.
    for (const auto& [label, q] : dirs) {
        const Fn du = [&q](double t) { return q(t); };
        const double v = coderivative_quotient_c01(candidate, target, du, q, 512);
        if (v > rep.max_quotient) {
            rep.max_quotient = v;
            rep.worst_direction = label;
            rep.worst_extrapolated = v;
        }
    }
    if (cert.certificate_applicable && cert.A > 0.0) {
        const Fn du = [&](double t) { return -0.25 * (f(t) - p(t)); };
        const double v = coderivative_quotient_c01(candidate, target, du, Poly{}, 4096);
        if (v > rep.max_quotient) {
            rep.max_quotient = v;
            rep.worst_direction = "convex";
            rep.worst_extrapolated = v;
        }
    }
    rep.verdict = rep.max_quotient <= tol ? Verdict::Consistent : Verdict::Excluded;
    return rep;
}

}  // namespace projcert
