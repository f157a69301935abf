#include "projcert/c0_projection.hpp"

#include <cmath>
#include <random>
#include <set>

namespace projcert {

C0Projection project_c0(const EvConstSeq& x) {
    const auto split = split_limit(x);
    return {std::abs(split.limit), split.c0_part};
}

bool c0_membership(const EvConstSeq& x, const EvConstSeq& y, double tol) {
    if (y.tail() != 0.0) return false;
    return std::abs((x - y).sup_norm() - std::abs(x.tail())) <= tol;
}

std::vector<EvConstSeq> sample_projection_members(const EvConstSeq& x, int k, std::uint64_t seed) {
    const double L = x.tail();
    if (L == 0.0)
        throw std::invalid_argument(
            "sample_projection_members: P_c0(x) is the singleton {x} when L(x) = 0");

    const EvConstSeq h = project_c0(x).canonical;
    std::vector<EvConstSeq> out;
    if (k <= 0) return out;
    out.push_back(h);

    // Perturb single head coordinates by sign(L)*|L|*j/8, j = 1..4 (delta = 1/2):
    // the tail still attains the sup exactly, so membership holds with tol 0.
    std::mt19937_64 rng(seed);
    const int max_coord = std::max(h.head_size() + 4, 8);
    std::uniform_int_distribution<int> coord(1, max_coord);
    std::uniform_int_distribution<int> frac(1, 4);
    std::set<std::pair<int, int>> used;
    int guard = 0;
    while (static_cast<int>(out.size()) < k && guard++ < 64 * k) {
        const int n = coord(rng);
        const int j = frac(rng);
        if (!used.insert({n, j}).second) continue;
        const double w = L * (static_cast<double>(j) / 8.0);
        const EvConstSeq y = h + FiniteSeq::axis(n, w);
        if (c0_membership(x, y, 0.0)) out.push_back(y);
    }
    return out;
}

}  // namespace projcert
