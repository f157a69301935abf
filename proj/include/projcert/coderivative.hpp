#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "projcert/c0_projection.hpp"
#include "projcert/chebyshev.hpp"
#include "projcert/l1_ball.hpp"
#include "projcert/measures.hpp"
#include "projcert/sequences.hpp"

namespace projcert {

// ---------------------------------------------------------------------------
// Numerical evaluation of the coderivative quotient
//
//     ( <x*, u - x> - <y*, v - y> ) / ( ||u - x|| + ||v - y|| ),
//
// along explicit witness families. A path with positive extrapolated limit is
// an exclusion certificate: the limsup over all admissible (u, v) -> (x, y)
// cannot be <= 0. A consistency battery that stays nonpositive is weaker than
// membership and is reported as such.
// ---------------------------------------------------------------------------

enum class Verdict { Excluded, Consistent, Inconclusive };

std::string to_string(Verdict v);

/// A parametrized admissible family t |-> (u_t, v_t) with v_t a projection of
/// u_t, packaged with its exact quotient and validity checks.
struct WitnessPath {
    std::string label;
    std::vector<double> t_grid;                       // strictly decreasing, positive
    std::optional<double> expected_limit;             // closed-form limit of the quotient
    std::function<double(double)> quotient_at;        // exact quotient at parameter t
    std::function<double(double)> approach_at;        // ||u_t - x|| + ||v_t - y||
    std::function<bool(double)> selection_valid_at;   // v_t lies in the projection set of u_t
};

struct QuotientTrace {
    std::vector<double> ts;
    std::vector<double> values;
    double extrapolated = 0.0;          // intercept of the last-5 linear fit
    bool approach_decreasing = true;
    double spread = 0.0;                // max - min over the trace
};

/// Evaluates the quotient along the grid; throws when the selection invariant
/// fails at any grid point.
QuotientTrace evaluate_along(const WitnessPath& path);

struct ExclusionReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string best_path;
    QuotientTrace trace;                 // trace of the best path
    std::optional<double> expected;
    double extrapolated = 0.0;
    double threshold = 0.0;
};

/// EXCLUDED iff some path's extrapolated limit clears max(10 tol, expected/2).
ExclusionReport exclusion_certificate(const std::vector<WitnessPath>& paths, double tol = kDefaultTol);

struct ConsistencyReport {
    Verdict verdict = Verdict::Consistent;
    double max_quotient = 0.0;          // max observed over the battery
    std::string worst_direction;
    double worst_extrapolated = 0.0;
};

// --- l1: projection onto rB at (x, r/||x|| x), x in K1+ with geometric tail ---

/// Witness families from the rB exclusion arguments. `target` is theta* or
/// beta_d (d > 0); `candidate` is the functional tested for membership in
/// D*P(x, rx/||x||)(target).
std::vector<WitnessPath> witnesses_l1(const GeoTailSeq& x, double r,
                                      const EvConstSeq& candidate, const EvConstSeq& target);

ConsistencyReport membership_consistency_l1(const GeoTailSeq& x, double r,
                                            const EvConstSeq& candidate, const EvConstSeq& target,
                                            int battery_size, std::uint64_t seed,
                                            double tol = kDefaultTol);

// --- c: projection onto c0 at (x, h(x)) -------------------------------------

std::vector<WitnessPath> witnesses_c(const EvConstSeq& x, const CStarFunctional& candidate,
                                     const CStarFunctional& target);

ConsistencyReport membership_consistency_c(const EvConstSeq& x, const CStarFunctional& candidate,
                                           const CStarFunctional& target, int battery_size,
                                           std::uint64_t seed, double tol = kDefaultTol);

// --- C[0,1]: projection onto P_n at (f, p) ----------------------------------

std::vector<WitnessPath> witnesses_c01(const Fn& f, const BestApprox& cert,
                                       const AtomicMeasure& candidate, const AtomicMeasure& target);

ConsistencyReport membership_consistency_c01(const Fn& f, const BestApprox& cert,
                                             const AtomicMeasure& candidate,
                                             const AtomicMeasure& target, int battery_size,
                                             std::uint64_t seed, double tol = kDefaultTol);

// --- raw quotients (exposed for direct evaluation and tests) -----------------

/// l1 quotient at an explicit admissible pair; rejects zero denominators and
/// pairs with v outside the projection set of u.
double coderivative_quotient_l1(const EvConstSeq& xstar, const EvConstSeq& ystar,
                                const L1Elem& x, const L1Elem& y,
                                const L1Elem& u, const L1Elem& v, double r);

double coderivative_quotient_c(const CStarFunctional& xstar, const CStarFunctional& ystar,
                               const EvConstSeq& x, const EvConstSeq& y,
                               const EvConstSeq& u, const EvConstSeq& v);

/// C[0,1] quotient with the primal move given as a callable difference
/// du = u - f and the projection move dv = v - p as a polynomial.
double coderivative_quotient_c01(const AtomicMeasure& xstar, const AtomicMeasure& ystar,
                                 const Fn& du, const Poly& dv, int grid_size = 4096);

// --- honest interior regime (identity) ---------------------------------------

/// Battery for the interior regime (||x|| < r, P = identity nearby).
ConsistencyReport membership_consistency_l1_interior(const L1Elem& x, double r,
                                                     const EvConstSeq& candidate,
                                                     const EvConstSeq& target, int battery_size,
                                                     std::uint64_t seed, double tol = kDefaultTol);

}  // namespace projcert
