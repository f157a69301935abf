#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projcert/sequences.hpp"

namespace projcert {

// ---------------------------------------------------------------------------
// Set-valued metric projection onto the closed ball rB in l1.
// For x in the positive cone with ||x||_1 > r the projection set is exactly
// the order interval [theta, x] intersected with the level set Delta_r.
// ---------------------------------------------------------------------------

/// Exact descriptor of P_rB(x) for x in K1 with ||x||_1 > r.
struct L1BallProjectionSet {
    L1Elem upper;    // the point x; must lie in K1
    double radius;   // r > 0

    /// theta <= y <= upper entrywise and ||y||_1 = r, within tol.
    bool member(const L1Elem& y, double tol = 1e-12) const;
};

/// (r/||x||_1) x, the scaled selection; valid for any x with ||x||_1 > r.
L1Elem canonical_selection(const L1Elem& x, double r);

/// Distance from x to rB: ||x||_1 - r in the exterior regime.
double l1_ball_distance(const L1Elem& x, double r);

/// Builds the exact set descriptor; rejects x outside K1 (the
/// characterization is only available there) and interior points.
L1BallProjectionSet projection_set(const L1Elem& x, double r);

struct SingletonResult {
    bool singleton = false;
    std::optional<L1Elem> unique_point;   // s(m, r) when singleton
};

/// The projection set is a singleton exactly for axis points.
SingletonResult is_singleton(const L1Elem& x, double r);

struct SampleResult {
    std::vector<L1Elem> members;
    bool singleton_note = false;   // set was a singleton; only one member exists
};

/// k distinct members of the set: the scaled selection, the deterministic
/// lambda-family on index pairs, then random convex combinations. Every
/// returned member re-passes the membership predicate.
SampleResult sample_members(const L1BallProjectionSet& set, int k, std::uint64_t seed);

/// Samples members of P_rB(z) and verifies each lies in P_rB(x); requires
/// z, x in K1 with z <= x and ||z||_1 > r.
bool monotone_inclusion_check(const L1Elem& z, const L1Elem& x, double r, int samples,
                              std::uint64_t seed = 0);

struct OracleResult {
    double min_distance = 0.0;
    std::vector<std::vector<double>> argmin;   // base-grid points within `resolution` of the min
    double grid_step = 0.0;
};

/// Independent grid-search minimization of ||x - y||_1 over the dim-dimensional
/// ball of radius r (dyadic grid, one local refinement pass for the minimum).
/// dim <= 4; x must be supported on the first dim coordinates.
OracleResult brute_force_oracle(const FiniteSeq& x, double r, int dim, double resolution);

}  // namespace projcert
