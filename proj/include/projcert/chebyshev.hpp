#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "projcert/measures.hpp"

namespace projcert {

using Fn = std::function<double(double)>;

/// Real polynomial on [0,1], coefficients c0..cn ascending; Horner evaluation.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    static Poly zero() { return Poly{}; }
    static Poly constant(double c) { return Poly({c}); }

    double operator()(double t) const {
        double v = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
        return v;
    }

    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0.0;
    }

    /// Logical degree (trailing zero coefficients ignored); -1 for the zero polynomial.
    int degree() const {
        for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
            if (c_[static_cast<std::size_t>(k)] != 0.0) return k;
        return -1;
    }

    bool is_zero() const { return degree() < 0; }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(double c, const Poly& a);

private:
    std::vector<double> c_;
};

/// Equioscillation certificate: level A, alternation set S, sign eps.
struct BestApprox {
    Poly p;
    double A = 0.0;
    std::vector<double> S;          // n+2 strictly increasing points in [0,1]
    int eps = 1;                    // f(t_i) - p(t_i) = eps * A * (-1)^i
    double defect = 0.0;            // (max residual - |leveled E|) / max(1, A)
    bool converged = true;
    bool certificate_applicable = true;   // false when f is itself in P_n
    int iterations = 0;
};

struct RemezOptions {
    int grid_size = 4096;
    double tol = 1e-10;
    int max_iter = 50;
    bool equispaced_start = false;  // default: Chebyshev second-kind points
};

/// Best uniform approximation of f on [0,1] by polynomials of degree <= n,
/// via multi-point exchange with an alternation-preserving safeguard.
BestApprox remez(const Fn& f, int degree, const RemezOptions& opts = {});

struct VerifyReport {
    bool ok = false;
    double alternation_defect = 0.0;  // max_i |(f-p)(t_i) - eps A (-1)^i|
    double level_defect = 0.0;        // | sup|f-p| - A |
    std::string reason;
};

VerifyReport verify_equioscillation(const Fn& f, const BestApprox& cert, double tol);

struct MaximizingSet {
    std::vector<double> points;   // refined maximizers of |f|
    bool whole_interval = false;  // |f| constant on [0,1]
    double sup = 0.0;
};

/// M(f) = { t : |f(t)| = sup |f| }, located by grid scan plus local refinement.
MaximizingSet maximizing_set(const Fn& f, int grid_size = 4096, double tol = 1e-9);

/// Refined sup-norm of f on [0,1].
double sup_norm_01(const Fn& f, int grid_size = 4096);

/// The duality measure with atoms (f - p)(t_i)/(n+2) on the alternation set.
/// Requires a valid certificate with A > 0.
AtomicMeasure mu_pf(const Fn& f, const BestApprox& cert);

struct GateauxReport {
    Poly derivative;
    bool consistent = true;     // quotient constant across the t-grid
    double max_deviation = 0.0;
};

/// One-sided directional derivative of the best-approximation map at f along
/// a polynomial direction, by difference quotients at a decreasing t-grid.
GateauxReport gateaux_directional(const Fn& f, int degree, const Poly& dir,
                                  double tol = 1e-6, const RemezOptions& opts = {});

/// g(t) = sin(2 m pi t) + q(t); the best degree-n approximation of g is q
/// for every n with deg(q) <= n < m. Requires m > deg(q).
Fn make_sine_fixture(const Poly& q, int m);

/// CLI function catalog: poly c0 c1 ... | sin k (= sin(k pi t)) | abs c (= |t-c|) | exp.
Fn make_catalog_function(const std::string& name, const std::vector<double>& params);

}  // namespace projcert
