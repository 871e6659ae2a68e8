#include <cmath>
#include <random>

#include "doctest.h"
#include "dioph/heights.hpp"

using namespace dioph;

namespace {

ProjPoint Q(long a, long b) { return ProjPoint::rational(Rational(a), Rational(b)); }

bool near(const RealBall& x, double v, double tol = 1e-12) { return std::abs(x.mid_double() - v) < tol && x.width_double() < tol; }

}  // namespace

TEST_CASE("height examples") {
    CHECK(near(height(Q(1, 0), 128), 0.0));
    CHECK(near(height(Q(1, 2), 128), 0.5 * std::log(5.0)));
    CHECK(near(height(Q(-2, -4), 128), 0.5 * std::log(5.0)));
    auto K = make_field({-2, 0, 1});
    ProjPoint a(FieldElem(1), FieldElem::generator(K));
    CHECK(near(height(a, 128), 0.5 * std::log(3.0)));
}

TEST_CASE("height is invariant under rescaling") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        long a = static_cast<long>(rng() % 2001) - 1000, b = static_cast<long>(rng() % 2001) - 1000;
        if (a == 0 && b == 0) continue;
        Rational lam(static_cast<long>(rng() % 99) + 1, static_cast<long>(rng() % 97) + 1);
        lam.canonicalize();
        ProjPoint x = Q(a, b);
        ProjPoint y = ProjPoint::rational(lam * a, lam * b);
        CHECK(x == y);
        CHECK(height(x, 96).contains(height(y, 96)));
    }
    // Number-field point scaled by an element of norm 7 (an unramified prime).
    auto K = make_field({-2, 0, 1});
    FieldElem t = FieldElem::generator(K);
    FieldElem lam = t + FieldElem(3);
    ProjPoint a(FieldElem(1), t), b(lam, lam * t);
    RealBall ha = height(a, 128), hb = height(b, 128);
    CHECK(std::abs(ha.mid_double() - hb.mid_double()) < 1e-25);
    ProjPoint c(FieldElem(Rational(5, 3)), t * FieldElem(Rational(5, 3)));
    CHECK(std::abs(height(c, 128).mid_double() - ha.mid_double()) < 1e-25);
}

TEST_CASE("height finite part at a split prime") {
    // (7 : 3 + theta): N(3+theta) = 7, so the 7-adic block where theta = -3 contributes.
    auto K = make_field({-2, 0, 1});
    FieldElem t = FieldElem::generator(K);
    ProjPoint x(FieldElem(7), t + FieldElem(3));
    // Oracle: archimedean parts by double arithmetic; finite part -log 7 at one embedding.
    double s2 = std::sqrt(2.0);
    double arch = 0.5 * std::log(49 + (3 + s2) * (3 + s2)) + 0.5 * std::log(49 + (3 - s2) * (3 - s2));
    double expect = (arch - std::log(7.0)) / 2;
    CHECK(std::abs(height(x, 128).mid_double() - expect) < 1e-12);
    // A ramified candidate prime is rejected.
    ProjPoint r(t, FieldElem(2));
    CHECK_THROWS_AS(height(r, 128), Error);
}

TEST_CASE("distance examples") {
    auto inf = Place::infinity();
    CHECK(near(distance_rational(Q(1, 0), Q(0, 1), inf, 128).value, 1.0));
    auto d2 = distance_rational(Q(1, 1), Q(1, 3), Place::finite(2), 128);
    REQUIRE(d2.exact);
    CHECK(*d2.exact == Rational(1, 2));
    CHECK(near(distance_rational(Q(1, 1), Q(1, 2), inf, 128).value, 1 / std::sqrt(10.0)));
    CHECK(distance_rational(Q(2, 4), Q(1, 2), inf, 128).is_zero);
}

TEST_CASE("distance properties on random points") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        auto rnd = [&] { return static_cast<long>(rng() % 201) - 100; };
        long a = rnd(), b = rnd(), c = rnd(), d = rnd();
        if ((a == 0 && b == 0) || (c == 0 && d == 0)) continue;
        ProjPoint x = Q(a, b), y = Q(c, d);
        for (Place v : {Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5)}) {
            auto dxy = distance_rational(x, y, v, 96), dyx = distance_rational(y, x, v, 96);
            if (dxy.is_zero) {
                CHECK(x == y);
                continue;
            }
            CHECK(less_eq(dxy.value, RealBall(1L, 96)) != Verdict::False);
            CHECK(mpfr_sgn(dxy.value.lo()) >= 0);
            CHECK(mpfr_equal_p(dxy.value.lo(), dyx.value.lo()));
        }
        CHECK(distance_rational(x, x, Place::infinity(), 96).is_zero);
    }
}

TEST_CASE("proximity examples") {
    auto inf = Place::infinity();
    CHECK(proximity(Q(1, 1), {}, 128).is_point());
    std::vector<ProximityTarget> ts = {{Q(1, 3), rational_embedding(Place::finite(2), 128)},
                                       {Q(1, 3), rational_embedding(inf, 128)}};
    CHECK(near(proximity(Q(1, 1), ts, 128), std::log(2.0) + 0.5 * std::log(5.0)));
    auto K = make_field({-2, 0, 1});
    auto sig = embeddings(K, inf, 128);
    ProjPoint a(FieldElem(1), FieldElem::generator(K));
    // Independent oracle: -log(|2 - 3 sqrt2| / (sqrt13 sqrt3)) with the positive root.
    double oracle = -std::log(std::abs(2 - 3 * std::sqrt(2.0)) / (std::sqrt(13.0) * std::sqrt(3.0)));
    CHECK(near(proximity(Q(3, 2), {{a, sig[1]}}, 128), oracle));
    CHECK(std::abs(oracle - 1.0243) < 1e-3);
    // The convergent orientation (q : p) ~ (1 : sqrt2) is genuinely close.
    RealBall close = proximity(Q(12, 17), {{a, sig[1]}}, 128);
    CHECK(close.mid_double() > 4.0);
    CHECK_THROWS_AS(proximity(Q(1, 3), {{Q(1, 3), rational_embedding(inf, 128)}}, 128), Error);
}

TEST_CASE("p-adic proximity of a rational point to a quadratic target") {
    auto K = make_field({-2, 0, 1});
    auto sig = embeddings(K, Place::finite(7), 128);
    ProjPoint a(FieldElem(1), FieldElem::generator(K));
    // x = (1 : 3): theta = 3 + O(7) at one embedding, 4 = -3 at the other.
    RealBall m0 = proximity(Q(1, 3), {{a, sig[0]}}, 128), m1 = proximity(Q(1, 3), {{a, sig[1]}}, 128);
    double l7 = std::log(7.0);
    double v0 = m0.mid_double() / l7, v1 = m1.mid_double() / l7;
    CHECK(std::abs(v0 + v1 - 1.0) < 1e-12);  // exactly one embedding sees 7 | (3 - theta)
}

TEST_CASE("liouville examples and fuzz") {
    auto r = liouville_check(Q(1, 0), Q(0, 1), 128);
    CHECK(r.holds);
    CHECK(near(r.lhs, 0.0));
    CHECK(liouville_check(Q(1, 1), Q(1, 2), 128).holds);
    auto r3 = liouville_check(Q(3, 7), Q(2, 5), 128);
    CHECK(r3.holds);
    CHECK(r3.cross_term == 1);
    CHECK_THROWS_AS(liouville_check(Q(1, 2), Q(2, 4), 128), Error);
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        long a = static_cast<long>(rng() % 100000), b = static_cast<long>(rng() % 100000) - 50000;
        long c = static_cast<long>(rng() % 100000), d = static_cast<long>(rng() % 100000) - 50000;
        if ((a == 0 && b == 0) || (c == 0 && d == 0) || Q(a, b) == Q(c, d)) continue;
        auto rep = liouville_check(Q(a, b), Q(c, d), 96);
        CHECK(rep.holds);
        CHECK(std::abs(rep.lhs.mid_double() - rep.rhs.mid_double()) < 1e-20);
    }
}
