#pragma once

#include <cstdint>
#include <vector>

#include "projcert/sequences.hpp"

namespace projcert {

// ---------------------------------------------------------------------------
// Set-valued metric projection from c onto c0:
//   P_c0(x) = { y in c0 : ||x - y|| = |L(x)| },  h(x) = x - beta_{L(x)} in P_c0(x).
// ---------------------------------------------------------------------------

struct C0Projection {
    double distance;       // |L(x)|
    EvConstSeq canonical;  // h(x), tail 0
};

C0Projection project_c0(const EvConstSeq& x);

/// y in P_c0(x): tail of y is zero and ||x - y|| equals |L(x)| within tol.
bool c0_membership(const EvConstSeq& x, const EvConstSeq& y, double tol = 0.0);

/// k members of P_c0(x): h(x) plus head perturbations on the sign(L(x)) side,
/// constructed so membership holds exactly. Requires L(x) != 0.
std::vector<EvConstSeq> sample_projection_members(const EvConstSeq& x, int k, std::uint64_t seed);

}  // namespace projcert
