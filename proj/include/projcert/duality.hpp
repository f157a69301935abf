#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "projcert/chebyshev.hpp"
#include "projcert/measures.hpp"
#include "projcert/sequences.hpp"

namespace projcert {

// ---------------------------------------------------------------------------
// Normalized duality mapping J(x) = { phi : <phi,x> = ||x||^2 = ||phi||^2 },
// realized as membership tests plus the explicit constructions that the
// sequence-space geometry admits.
// ---------------------------------------------------------------------------

/// Level set Delta_a (strict: Delta_a^+) of nonnegative l1 vectors with norm a.
struct SimplexDescriptor {
    double level;     // a > 0
    bool strict;      // require every entry > 0

    bool contains(const L1Elem& x, double tol = kDefaultTol) const;
};

/// k*(phi) = (phi_1/2, phi_2/2^2, ...);  maps l_inf into l1.
GeoTailSeq kstar(const EvConstSeq& phi);

/// phi in J(x) for x in l1, phi in l_inf: two-sided pairing and norm equality.
bool j_l1_membership(const L1Elem& x, const EvConstSeq& phi, double tol = kDefaultTol);

struct JValueOnSimplex {
    bool singleton = false;                // true when y lies in the strict simplex
    std::optional<EvConstSeq> value;       // beta_a when singleton
};

/// J on Delta_a: the single value beta_a on the strict simplex, a non-singleton
/// flag otherwise. Rejects y outside the positive cone.
JValueOnSimplex j_value_on_strict_simplex(const GeoTailSeq& y, double tol = kDefaultTol);

/// For y in Delta_a with y_m = 0: the dual that is a at every index except 0
/// at m. A second member of J(y) distinct from beta_a.
EvConstSeq simplex_boundary_dual(double a, int zero_index);

struct RelatedReport {
    bool related = false;
    std::optional<EvConstSeq> witness;     // common member of J(y) and J(z)
    bool search_only = true;               // a negative answer is family-relative
};

/// Generalized identity: J(y) and J(z) intersect, searched over sign-pattern
/// duals on the union of supports with a gridded free tail value.
RelatedReport generalized_identity_related(const L1Elem& y, const L1Elem& z,
                                           double tol = kDefaultTol);

/// phi in J(x) for x in c, phi in c* = l1.
bool j_c_membership(const EvConstSeq& x, const CStarFunctional& phi, double tol = kDefaultTol);

/// mu in J(f) for f in C[0,1]: atoms on the maximizing set, weights signed with
/// f, total variation = ||f||, pairing = ||f||^2. Rejects ||f|| = 0.
bool j_C01_membership(const AtomicMeasure& mu, const Fn& f, double tol = kDefaultTol,
                      int grid_size = 4096);

/// The sign functional ||z|| * sgn(z_n): always a member of J(z) for
/// finitely-supported or geometric-tailed z (tail sign is eventually constant).
EvConstSeq canonical_sign_functional(const L1Elem& z);

struct VariationalReport {
    double min_pairing = 0.0;    // min over samples of <j, u - y>
    bool holds = false;          // min >= -tol (sample-relative)
    EvConstSeq functional;       // the j(x-u) used
};

/// Checks <j(x-u), u-y> >= 0 over sampled y in C; the verdict is only as
/// strong as the sample.
VariationalReport variational_inequality_check(
    const FiniteSeq& x, const FiniteSeq& u,
    const std::function<FiniteSeq(int)>& c_sampler, int sample_count,
    double tol = kDefaultTol);

}  // namespace projcert
