#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "projcert/json_io.hpp"
#include "projcert/sequences.hpp"

using namespace projcert;

namespace {

std::mt19937_64 rng(20240811);

// Dyadic values keep every linear operation in the tests exact in floating
// point, so structural-equality invariants can be asserted bit-for-bit.
double dyadic(double v) { return std::ldexp(std::round(std::ldexp(v, 20)), -20); }

FiniteSeq random_finite() {
    std::uniform_int_distribution<int> idx(1, 10);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    FiniteSeq f;
    const int support = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < support; ++i) f = f + FiniteSeq::axis(idx(rng), dyadic(val(rng)));
    return f;
}

EvConstSeq random_evconst() {
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::vector<double> head(rng() % 5);
    for (auto& v : head) v = dyadic(val(rng));
    return EvConstSeq(std::move(head), dyadic(val(rng)));
}

GeoTailSeq random_geotail() {
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::vector<double> head(rng() % 4);
    for (auto& v : head) v = dyadic(val(rng));
    return GeoTailSeq(std::move(head), dyadic(val(rng)));
}

}  // namespace

TEST_CASE("norms: closed forms") {
    CHECK(FiniteSeq::from_dense({1, -2, 3}).norm1() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(EvConstSeq({5, -1}, 2).sup_norm() == doctest::Approx(5.0));
    CHECK(GeoTailSeq::geometric(1.0).norm1() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(CStarFunctional(1.0, FiniteSeq::from_dense({1})).dual_norm() == doctest::Approx(2.0));
}

TEST_CASE("pairings: closed forms") {
    // beta_3 against (1, 2)
    CHECK(pair(EvConstSeq::constant(3.0), FiniteSeq::from_dense({1, 2})) == doctest::Approx(9.0));
    // (q0=1, q1=1) against beta_2 in c: 1*2 + 1*2 = 4
    CHECK(pair(CStarFunctional(1.0, FiniteSeq::from_dense({1})), EvConstSeq::constant(2.0)) ==
          doctest::Approx(4.0));
    // beta_1 against the geometric unit: sum 1/2^n = 1
    CHECK(pair(EvConstSeq::constant(1.0), GeoTailSeq::geometric(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pairing against geometric tails matches truncation plus analytic remainder") {
    for (int rep = 0; rep < 50; ++rep) {
        const EvConstSeq phi = random_evconst();
        const GeoTailSeq x = random_geotail();
        const double exact = pair(phi, x);
        for (int N : {10, 20, 40}) {
            double s = 0.0;
            for (int n = 1; n <= N; ++n) s += phi.at(n) * x.at(n);
            s += phi.tail() * std::ldexp(x.geo(), -N);
            CHECK(std::abs(s - exact) <= 1e-12);
        }
    }
}

TEST_CASE("split_limit: decomposition and shift invariance") {
    const EvConstSeq x({3, 2}, 2);
    const auto s = split_limit(x);
    CHECK(s.limit == 2.0);
    CHECK(s.c0_part == EvConstSeq({1}, 0));
    CHECK(s.c0_part + EvConstSeq::constant(s.limit) == x);

    const EvConstSeq y({0.5, -1}, 0);
    CHECK(split_limit(y).limit == 0.0);
    CHECK(split_limit(y).c0_part == y);

    // h(x + beta_b) = h(x)
    const EvConstSeq shifted = x + EvConstSeq::constant(7.0);
    CHECK(split_limit(shifted).c0_part == s.c0_part);
}

TEST_CASE("split_limit recomposes exactly on random input") {
    for (int rep = 0; rep < 200; ++rep) {
        const EvConstSeq x = random_evconst();
        const auto s = split_limit(x);
        CHECK(s.c0_part.tail() == 0.0);
        CHECK(s.c0_part + EvConstSeq::constant(s.limit) == x);
    }
}

TEST_CASE("positive and negative parts") {
    const auto pn = positive_negative_parts(EvConstSeq({2, -3}, 0));
    CHECK(pn.plus == EvConstSeq({2, 0}, 0));
    CHECK(pn.minus == EvConstSeq({0, -3}, 0));

    const auto pn2 = positive_negative_parts(EvConstSeq::constant(-1.0));
    CHECK(pn2.plus.is_zero());
    CHECK(pn2.minus == EvConstSeq::constant(-1.0));

    const EvConstSeq nonneg({1, 0, 2}, 0.5);
    CHECK(positive_negative_parts(nonneg).minus.is_zero());

    for (int rep = 0; rep < 200; ++rep) {
        const EvConstSeq psi = random_evconst();
        const auto parts = positive_negative_parts(psi);
        CHECK(parts.plus + parts.minus == psi);
        const int n = std::max(parts.plus.head_size(), parts.minus.head_size()) + 1;
        for (int i = 1; i <= n; ++i) CHECK(parts.plus.at(i) * parts.minus.at(i) == 0.0);
    }
}

TEST_CASE("truncated negative part") {
    const EvConstSeq psi({1, -2, -3}, 0);
    CHECK(truncated_negative_part(psi, 2) == FiniteSeq::axis(2, -2));
    CHECK(truncated_negative_part(psi, 3) == FiniteSeq::axis(2, -2) + FiniteSeq::axis(3, -3));
    CHECK_THROWS_AS(truncated_negative_part(EvConstSeq({1, 2}, 2), 5), std::invalid_argument);
}

TEST_CASE("norm axioms on random pairs") {
    auto check_axioms = [](double na, double nb, double nab, double nsa, double alpha, double na2) {
        CHECK(nab <= na + nb + 1e-12);
        CHECK(nsa == doctest::Approx(std::abs(alpha) * na2).epsilon(1e-12));
    };
    std::uniform_real_distribution<double> al(-3.0, 3.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const double alpha = al(rng);
        {
            const FiniteSeq a = random_finite(), b = random_finite();
            check_axioms(a.norm1(), b.norm1(), (a + b).norm1(), (alpha * a).norm1(), alpha, a.norm1());
        }
        {
            const EvConstSeq a = random_evconst(), b = random_evconst();
            check_axioms(a.sup_norm(), b.sup_norm(), (a + b).sup_norm(), (alpha * a).sup_norm(),
                         alpha, a.sup_norm());
        }
        {
            const GeoTailSeq a = random_geotail(), b = random_geotail();
            check_axioms(a.norm1(), b.norm1(), (a + b).norm1(), (alpha * a).norm1(), alpha, a.norm1());
        }
    }
}

TEST_CASE("Hoelder: |<phi, x>| <= ||phi|| ||x||") {
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const EvConstSeq phi = random_evconst();
        const FiniteSeq x = random_finite();
        CHECK(std::abs(pair(phi, x)) <= phi.sup_norm() * x.norm1() + 1e-12);
        const GeoTailSeq g = random_geotail();
        CHECK(std::abs(pair(phi, g)) <= phi.sup_norm() * g.norm1() + 1e-12);
        const CStarFunctional cst(val(rng), random_finite());
        const EvConstSeq xc = random_evconst();
        CHECK(std::abs(pair(cst, xc)) <= cst.dual_norm() * xc.sup_norm() + 1e-12);
    }
}

TEST_CASE("canonical form: trailing head entries equal to the tail are absorbed") {
    CHECK(EvConstSeq({2, 2, 2}, 2) == EvConstSeq::constant(2.0));
    CHECK(EvConstSeq({3, 2}, 2) == EvConstSeq({3}, 2));
    CHECK(EvConstSeq({3, 2}, 2).head_size() == 1);
}

TEST_CASE("JSON round trips are lossless") {
    for (int rep = 0; rep < 100; ++rep) {
        const FiniteSeq f = random_finite();
        CHECK(json::parse(json(f).dump()).get<FiniteSeq>() == f);
        const EvConstSeq e = random_evconst();
        CHECK(json::parse(json(e).dump()).get<EvConstSeq>() == e);
        const GeoTailSeq g = random_geotail();
        CHECK(json::parse(json(g).dump()).get<GeoTailSeq>() == g);
        const CStarFunctional c(0.1234567890123456789, random_finite());
        CHECK(json::parse(json(c).dump()).get<CStarFunctional>() == c);
    }
    const double tricky = 0.1 + 0.2;
    const EvConstSeq e({tricky, -1e-308, 1e300}, 1.0 / 3.0);
    CHECK(json::parse(json(e).dump()).get<EvConstSeq>() == e);
}
