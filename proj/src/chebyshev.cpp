#include "projcert/chebyshev.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace projcert {

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0 * b); }

Poly operator*(double c, const Poly& a) {
    std::vector<double> v = a.c_;
    for (double& x : v) x *= c;
    return Poly(std::move(v));
}

namespace {

struct Extremum {
    double t;
    double value;   // signed residual value
};

double golden_max(const Fn& g, double lo, double hi, double width_tol = 1e-12) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > width_tol) {
        if (gc >= gd) {
            b = d; d = c; gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c; c = d; gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

// Local extrema of |e| on [0,1]: grid scan, golden-section refinement per
// bracket, endpoints always included, near-duplicates merged.
std::vector<Extremum> locate_extrema(const Fn& e, int grid) {
    const int G = std::max(grid, 64);
    std::vector<double> v(static_cast<std::size_t>(G) + 1);
    for (int i = 0; i <= G; ++i) v[static_cast<std::size_t>(i)] = e(static_cast<double>(i) / G);

    std::vector<Extremum> out;
    auto refine = [&](int i, double lo, double hi) {
        double sigma = v[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0;
        if (v[static_cast<std::size_t>(i)] == 0.0) {
            const double nb = i + 1 <= G ? v[static_cast<std::size_t>(i) + 1] : v[static_cast<std::size_t>(i) - 1];
            sigma = nb >= 0.0 ? 1.0 : -1.0;
        }
        const double t = golden_max([&](double s) { return sigma * e(s); }, lo, hi);
        out.push_back({t, e(t)});
    };

    refine(0, 0.0, 1.0 / G);
    for (int i = 1; i < G; ++i) {
        const double a = std::abs(v[static_cast<std::size_t>(i) - 1]);
        const double b = std::abs(v[static_cast<std::size_t>(i)]);
        const double c = std::abs(v[static_cast<std::size_t>(i) + 1]);
        if (b >= a && b >= c)
            refine(i, static_cast<double>(i - 1) / G, static_cast<double>(i + 1) / G);
    }
    refine(G, static_cast<double>(G - 1) / G, 1.0);

    std::sort(out.begin(), out.end(), [](const Extremum& x, const Extremum& y) { return x.t < y.t; });
    std::vector<Extremum> dedup;
    for (const auto& ex : out) {
        if (!dedup.empty() && ex.t - dedup.back().t < 1e-9) {
            if (std::abs(ex.value) > std::abs(dedup.back().value)) dedup.back() = ex;
        } else {
            dedup.push_back(ex);
        }
    }
    return dedup;
}

// Solve the leveled interpolation system on the reference:
//   sum_k c_k t_i^k + (-1)^i E = f(t_i),  i = 0..n+1.
std::pair<Poly, double> solve_reference(const Fn& f, const std::vector<double>& ref, int n) {
    const int m = n + 2;
    Eigen::MatrixXd M(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        double p = 1.0;
        for (int k = 0; k <= n; ++k) {
            M(i, k) = p;
            p *= ref[static_cast<std::size_t>(i)];
        }
        M(i, n + 1) = (i % 2 == 0) ? 1.0 : -1.0;
        rhs(i) = f(ref[static_cast<std::size_t>(i)]);
    }
    Eigen::VectorXd sol = M.colPivHouseholderQr().solve(rhs);
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) coeffs[static_cast<std::size_t>(k)] = sol(k);
    return {Poly(std::move(coeffs)), sol(n + 1)};
}

// Alternating chain through the extrema: same-sign runs collapse to the
// largest |value|; then trim endpoints (smaller |value| first) down to `need`.
std::optional<std::vector<double>> select_reference(const std::vector<Extremum>& extrema, int need) {
    std::vector<Extremum> chain;
    for (const auto& ex : extrema) {
        if (ex.value == 0.0) continue;
        if (!chain.empty() && (chain.back().value > 0.0) == (ex.value > 0.0)) {
            if (std::abs(ex.value) > std::abs(chain.back().value)) chain.back() = ex;
        } else {
            chain.push_back(ex);
        }
    }
    if (static_cast<int>(chain.size()) < need) return std::nullopt;
    while (static_cast<int>(chain.size()) > need) {
        if (std::abs(chain.front().value) < std::abs(chain.back().value))
            chain.erase(chain.begin());
        else
            chain.pop_back();
    }
    std::vector<double> ref(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) ref[i] = chain[i].t;
    return ref;
}

std::vector<double> initial_reference(int n, bool equispaced) {
    const int m = n + 2;
    std::vector<double> ref(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        if (equispaced)
            ref[static_cast<std::size_t>(i)] = static_cast<double>(i) / (m - 1);
        else
            ref[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (m - 1)));
    }
    return ref;
}

}  // namespace

BestApprox remez(const Fn& f, int degree, const RemezOptions& opts) {
    if (degree < 0) throw std::invalid_argument("remez: degree must be >= 0");
    const int n = degree;

    double fsup = 0.0;
    for (int i = 0; i <= 256; ++i) fsup = std::max(fsup, std::abs(f(i / 256.0)));

    std::vector<double> ref = initial_reference(n, opts.equispaced_start);
    BestApprox best;
    best.defect = std::numeric_limits<double>::infinity();
    best.converged = false;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        auto [p, E] = solve_reference(f, ref, n);
        const Fn e = [&f, &p](double t) { return f(t) - p(t); };
        const auto extrema = locate_extrema(e, opts.grid_size);

        double A_obs = 0.0;
        for (const auto& ex : extrema) A_obs = std::max(A_obs, std::abs(ex.value));

        if (A_obs <= 1e-13 * std::max(1.0, fsup)) {
            // f is (numerically) already a polynomial of degree <= n.
            BestApprox cert;
            cert.p = p;
            cert.A = 0.0;
            cert.eps = 1;
            cert.defect = 0.0;
            cert.converged = true;
            cert.certificate_applicable = false;
            cert.iterations = iter;
            return cert;
        }

        const double defect = (A_obs - std::abs(E)) / std::max(1.0, A_obs);

        auto next = select_reference(extrema, n + 2);

        if (defect < best.defect) {
            best.p = p;
            best.A = A_obs;
            best.defect = defect;
            best.iterations = iter;
            if (next) {
                best.S = *next;
                best.eps = e((*next)[0]) >= 0.0 ? 1 : -1;
            } else {
                best.S = ref;
                best.eps = e(ref[0]) >= 0.0 ? 1 : -1;
            }
        }

        if (defect <= opts.tol && next) {
            best.converged = true;
            return best;
        }

        if (!next) {
            // Alternation would break under the multi-point exchange: fall back
            // to a single-point exchange at the largest residual.
            const auto worst = *std::max_element(
                extrema.begin(), extrema.end(),
                [](const Extremum& a, const Extremum& b) { return std::abs(a.value) < std::abs(b.value); });
            std::size_t nearest = 0;
            for (std::size_t i = 1; i < ref.size(); ++i)
                if (std::abs(ref[i] - worst.t) < std::abs(ref[nearest] - worst.t)) nearest = i;
            ref[nearest] = worst.t;
            std::sort(ref.begin(), ref.end());
            continue;
        }
        ref = *next;
    }
    return best;
}

VerifyReport verify_equioscillation(const Fn& f, const BestApprox& cert, double tol) {
    VerifyReport rep;
    if (!cert.certificate_applicable) {
        rep.ok = cert.A == 0.0;
        rep.reason = rep.ok ? "degenerate (no alternation certificate needed)" : "marker/level mismatch";
        return rep;
    }
    if (cert.S.size() < 2) {
        rep.reason = "alternation set too small";
        return rep;
    }
    for (std::size_t i = 0; i + 1 < cert.S.size(); ++i)
        if (!(cert.S[i] < cert.S[i + 1])) {
            rep.reason = "alternation set not strictly increasing";
            return rep;
        }
    if (cert.S.front() < 0.0 || cert.S.back() > 1.0) {
        rep.reason = "alternation set outside [0,1]";
        return rep;
    }
    for (std::size_t i = 0; i < cert.S.size(); ++i) {
        const double want = cert.eps * cert.A * ((i % 2 == 0) ? 1.0 : -1.0);
        const double got = f(cert.S[i]) - cert.p(cert.S[i]);
        rep.alternation_defect = std::max(rep.alternation_defect, std::abs(got - want));
    }
    const Fn e = [&](double t) { return f(t) - cert.p(t); };
    rep.level_defect = std::abs(sup_norm_01(e) - cert.A);
    rep.ok = rep.alternation_defect <= tol && rep.level_defect <= tol;
    if (!rep.ok) rep.reason = "residual or level outside tolerance";
    return rep;
}

double sup_norm_01(const Fn& f, int grid_size) {
    double s = 0.0;
    for (const auto& ex : locate_extrema(f, grid_size)) s = std::max(s, std::abs(ex.value));
    return s;
}

MaximizingSet maximizing_set(const Fn& f, int grid_size, double tol) {
    MaximizingSet out;
    const auto extrema = locate_extrema(f, grid_size);
    for (const auto& ex : extrema) out.sup = std::max(out.sup, std::abs(ex.value));

    double grid_min = std::numeric_limits<double>::infinity();
    const int G = std::max(grid_size, 64);
    for (int i = 0; i <= G; ++i) grid_min = std::min(grid_min, std::abs(f(static_cast<double>(i) / G)));
    if (grid_min >= out.sup - std::max(tol, 1e-12 * out.sup)) {
        out.whole_interval = true;
        return out;
    }

    for (const auto& ex : extrema)
        if (std::abs(ex.value) >= out.sup - std::max(tol, 1e-12 * out.sup)) out.points.push_back(ex.t);
    std::sort(out.points.begin(), out.points.end());
    return out;
}

AtomicMeasure mu_pf(const Fn& f, const BestApprox& cert) {
    if (!cert.certificate_applicable || cert.A <= 0.0)
        throw std::invalid_argument("mu_pf: requires a certificate with positive level");
    const double m = static_cast<double>(cert.S.size());
    std::vector<AtomicMeasure::Atom> atoms;
    atoms.reserve(cert.S.size());
    for (double t : cert.S) atoms.push_back({t, (f(t) - cert.p(t)) / m});
    return AtomicMeasure(std::move(atoms));
}

GateauxReport gateaux_directional(const Fn& f, int degree, const Poly& dir, double tol,
                                  const RemezOptions& opts) {
    if (dir.is_zero()) throw std::invalid_argument("gateaux_directional: direction must be nonzero");
    if (dir.degree() > degree)
        throw std::invalid_argument("gateaux_directional: direction degree exceeds bound");

    const BestApprox base = remez(f, degree, opts);
    if (!base.converged) throw std::runtime_error("gateaux_directional: base approximation did not converge");

    GateauxReport rep;
    const std::vector<double> ts = {1.0, 0.5, 0.25, 0.125, 0.0625};
    for (double t : ts) {
        const Fn shifted = [&f, &dir, t](double s) { return f(s) + t * dir(s); };
        const BestApprox moved = remez(shifted, degree, opts);
        if (!moved.converged) throw std::runtime_error("gateaux_directional: shifted approximation did not converge");
        const Poly quotient = (1.0 / t) * (moved.p - base.p);
        const Poly dev = quotient - dir;
        for (int k = 0; k <= degree; ++k)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(dev.coeff(k)));
        if (t == ts.back()) rep.derivative = quotient;
    }
    rep.consistent = rep.max_deviation <= tol;
    return rep;
}

Fn make_sine_fixture(const Poly& q, int m) {
    if (m <= q.degree()) throw std::invalid_argument("make_sine_fixture: requires m > deg(q)");
    if (m < 1) throw std::invalid_argument("make_sine_fixture: m must be positive");
    return [q, m](double t) { return std::sin(2.0 * m * std::numbers::pi * t) + q(t); };
}

Fn make_catalog_function(const std::string& name, const std::vector<double>& params) {
    if (name == "poly") {
        if (params.empty()) throw std::invalid_argument("catalog: poly needs coefficients");
        Poly p(params);
        return [p](double t) { return p(t); };
    }
    if (name == "sin") {
        if (params.size() != 1) throw std::invalid_argument("catalog: sin needs one parameter k");
        const double k = params[0];
        return [k](double t) { return std::sin(k * std::numbers::pi * t); };
    }
    if (name == "abs") {
        if (params.size() != 1) throw std::invalid_argument("catalog: abs needs one parameter c");
        const double c = params[0];
        return [c](double t) { return std::abs(t - c); };
    }
    if (name == "exp") {
        if (!params.empty()) throw std::invalid_argument("catalog: exp takes no parameters");
        return [](double t) { return std::exp(t); };
    }
    throw std::invalid_argument("catalog: unknown function '" + name + "'");
}

}  // namespace projcert
