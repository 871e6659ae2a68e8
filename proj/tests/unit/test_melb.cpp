#include <cmath>
#include <random>

#include "doctest.h"
#include "dioph/melb.hpp"

using namespace dioph;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }
ProjPoint Q(long a, long b) { return ProjPoint::rational(R(a), R(b)); }

FieldPtr sqrt2() { return make_field({Integer(-2), Integer(0), Integer(1)}); }

// (c0 : c1 + c2 theta)
ProjPoint alg(const FieldPtr& K, long c0, long c1, long c2) {
    return ProjPoint(FieldElem::embed(R(c0), K), FieldElem(K, {R(c1), R(c2)}));
}

ApproximationInstance base_instance() {
    FieldPtr K = sqrt2();
    ApproximationInstance inst;
    inst.field = K;
    inst.places = {Place::infinity()};
    inst.r = MultiDegree({12, 1});
    inst.x = {Q(2, 3), Q(12, 17)};
    inst.a = {alg(K, 1, 0, 1), alg(K, 1, 0, 1)};
    inst.delta = R(1, 5);
    return inst;
}

// mu_2 on [0, 2] in double precision, from the closed form on [0, 1] and symmetry.
double mu2(double t) {
    double s = t <= 1 ? t : 2 - t;
    return s * s / 2 * (1 - 2 * s / 3);
}

// -log d(a, x) at infinity for a = (1 : alpha), x = (x0 : x1).
double m_inf(double alpha, double x0, double x1) {
    double d = std::fabs(x0 * alpha - x1) / (std::sqrt(1 + alpha * alpha) * std::sqrt(x0 * x0 + x1 * x1));
    return -std::log(d);
}

}  // namespace

TEST_CASE("parameter pipeline at q = 2, n = 2, delta = 1/5, r = (12, 1)") {
    ParamReport p = param_pipeline(2, 2, R(1, 5), MultiDegree({12, 1}), 128);
    CHECK(p.eps == R(1, 12));
    CHECK((sqr(p.t_a.ball) - RealBall(R(4, 5), 128)).contains_zero());
    CHECK((sqr(p.u_tilde.ball) - RealBall(R(17, 30), 128)).contains_zero());

    // Independent oracle for w: bisection on the double formula for mu_2 over [1, 2].
    double u = std::sqrt(17.0 / 30.0);
    double target = mu2(u) - 1.0 / 12.0;
    double lo = 1, hi = 2;
    for (int k = 0; k < 200; ++k) {
        double m = (lo + hi) / 2;
        (mu2(m) > target ? lo : hi) = m;
    }
    CHECK(p.w.ball.mid_double() == doctest::Approx(lo).epsilon(1e-12));
    CHECK(p.w.ball.mid_double() == doctest::Approx(1.603).epsilon(1e-3));
    CHECK(p.checks.size() == 11);
    for (const auto& c : p.checks) {
        INFO(c.name);
        CHECK(c.verdict == Verdict::True);
    }
    CHECK(p.all_pass);
}

TEST_CASE("parameter pipeline hypotheses and edges") {
    MultiDegree r({12, 1});
    // delta + eps > 1/2 trips the first estimate before the range check.
    try {
        param_pipeline(2, 2, R(1, 2), r, 128);
        FAIL("expected HypothesisFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisFailed);
        CHECK(std::string(e.what()).find("exceeds 1/n!") != std::string::npos);
    }
    CHECK_THROWS_AS(param_pipeline(2, 2, R(1, 4), r, 128), Error);
    CHECK_THROWS_AS(param_pipeline(2, 2, R(0), r, 128), Error);
    // eps = 1/5 is far above delta^(3/2).
    try {
        param_pipeline(2, 2, R(1, 5), MultiDegree({5, 1}), 128);
        FAIL("expected HypothesisFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisFailed);
    }

    SUBCASE("huge ratios make eps negligible") {
        ParamReport p = param_pipeline(2, 2, R(1, 5), MultiDegree({1000000, 1}), 128);
        CHECK(p.eps == R(1, 1000000));
        CHECK(p.all_pass);
        for (const auto& c : p.checks)
            if (c.strict) CHECK(greater(c.rhs - c.lhs, RealBall(R(1, 10), 128)) == Verdict::True);
    }
    SUBCASE("n = 3 and n = 4") {
        CHECK(param_pipeline(2, 3, R(1, 20), MultiDegree({1000000, 1000, 1}), 128).all_pass);
        CHECK(param_pipeline(3, 3, R(1, 20), MultiDegree({10000000, 10000, 1}), 128).all_pass);
        CHECK(param_pipeline(2, 4, R(1, 100), MultiDegree({1000000000, 1000000, 1000, 1}), 128).all_pass);
    }
}

TEST_CASE("lower bound sides on the convergent instance") {
    ApproximationInstance inst = base_instance();
    SideReport s = melb_sides(inst, 128);
    CHECK(s.verdict == Verdict::True);
    CHECK(s.archimedean_in_s);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].values.size() == 2);

    // Double-precision oracle for both sides.
    double sq2 = std::sqrt(2.0);
    double inner_plus = std::min(12 * m_inf(sq2, 2, 3), m_inf(sq2, 12, 17));
    double inner_minus = std::min(12 * m_inf(-sq2, 2, 3), m_inf(-sq2, 12, 17));
    double t = std::sqrt(0.8);
    double lhs = t * std::min(inner_plus, inner_minus);
    double hx = 12 * std::log(std::sqrt(13.0)) + std::log(std::sqrt(433.0));
    double ha = 13 * std::log(std::sqrt(3.0));
    double rhs = (1 + 4 * std::sqrt(0.2)) * hx + 10 * ha + (std::log(2.0) / 0.2 + std::log(8.0)) * 13;
    CHECK(s.lhs.mid_double() == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(s.rhs.mid_double() == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(s.slack.mid_double() > 0);
    CHECK(s.lhs.width_log2() < -90);
    CHECK(s.rhs.width_log2() < -90);
    // The minimizing embedding sends theta to -sqrt 2.
    CHECK(s.terms[0].values[s.terms[0].attained_by].mid_double() == doctest::Approx(inner_minus));
}

TEST_CASE("lower bound hypotheses") {
    ApproximationInstance inst = base_instance();
    SUBCASE("empty S") {
        inst.places.clear();
        SideReport s = melb_sides(inst, 128);
        CHECK(s.lhs.contains(R(0)));
        CHECK(s.verdict == Verdict::True);
        CHECK_FALSE(s.archimedean_in_s);
    }
    SUBCASE("delta too large") {
        inst.delta = R(1, 4);
        CHECK_THROWS_AS(melb_sides(inst, 128), Error);
    }
    SUBCASE("ratio condition") {
        inst.r = MultiDegree({11, 1});
        try {
            melb_sides(inst, 128);
            FAIL("expected HypothesisFailed");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::HypothesisFailed);
        }
    }
    SUBCASE("a point that does not generate K'") {
        inst.a[1] = alg(inst.field, 1, 2, 0);
        try {
            melb_sides(inst, 128);
            FAIL("expected NotGenerating");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotGenerating);
        }
    }
    SUBCASE("mismatched couple count") {
        inst.x.pop_back();
        CHECK_THROWS_AS(melb_sides(inst, 128), Error);
    }
}

TEST_CASE("lower bound at split and inert finite places") {
    ApproximationInstance inst = base_instance();
    // 7 splits in Q(sqrt 2); 3 and 5 are inert.
    inst.places = {Place::finite(7), Place::finite(3), Place::finite(5)};
    // x close to sqrt 2 at 7: 3^2 = 2 mod 7, and 10^2 = 100 = 2 mod 49.
    inst.x = {Q(1, 10), Q(1, 3)};
    SideReport s = melb_sides(inst, 128);
    CHECK_FALSE(s.archimedean_in_s);
    CHECK(s.verdict == Verdict::True);
    REQUIRE(s.terms.size() == 3);
    CHECK(s.terms[0].values.size() == 2);
    CHECK(s.terms[1].values.size() == 1);
    CHECK(s.terms[2].values.size() == 1);
    // min over both embeddings at 7: one of them is far from x, so the place contributes 0.
    CHECK(s.terms[0].chosen.contains(R(0)));
    // Inert places: |theta - x|_p = 1 for every Q-point with p-integral coordinates.
    CHECK(s.terms[1].chosen.contains(R(0)));
}

TEST_CASE("main theorem sides") {
    ApproximationInstance inst = base_instance();
    SUBCASE("semistability fails") {
        inst.t_a = RealValue(R(0), 128);
        inst.t_x = RealValue(R(1), 128);
        try {
            main_theorem_sides(inst, 128);
            FAIL("expected SSViolated");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SSViolated);
        }
    }
    SUBCASE("parameters from the pipeline") {
        ParamReport p = param_pipeline(2, 2, R(1, 5), inst.r, 128);
        inst.t_a = p.t_a;
        inst.t_x = RealValue(p.w.upper() + R(1, 1000), 128);
        SideReport s = main_theorem_sides(inst, 128);
        CHECK(s.verdict == Verdict::True);
        // 1 - q vol(t_a) = delta and the max over embeddings dominates the min.
        SideReport m = melb_sides(inst, 128);
        CHECK(greater_eq(s.terms[0].chosen, m.terms[0].chosen) == Verdict::True);
        CHECK(s.constants.at("vol_u").contains(R(17, 60)));
        CHECK(greater(s.constants.at("C1"), RealBall(0L, 128)) == Verdict::True);
    }
    CHECK(int_zeta1_upper(2, R(2)) == 0);
}

TEST_CASE("derived right-hand side is dominated and coefficients are monotone") {
    std::mt19937_64 rng(31);
    FieldPtr K = sqrt2();
    int checked = 0;
    for (int it = 0; it < 30; ++it) {
        ApproximationInstance inst;
        inst.field = K;
        inst.places = {Place::infinity(), Place::finite(7)};
        long r2 = 1 + static_cast<long>(rng() % 3);
        inst.r = MultiDegree({12 * r2 + static_cast<long>(rng() % 5), r2});
        for (int i = 0; i < 2; ++i) {
            inst.x.push_back(Q(1 + static_cast<long>(rng() % 20), static_cast<long>(rng() % 41) - 20));
            inst.a.push_back(alg(K, 1 + 2 * static_cast<long>(rng() % 2), static_cast<long>(rng() % 5) - 2,
                                 1 + static_cast<long>(rng() % 2)));
        }
        inst.delta = R(1, 5);
        SideReport s = melb_sides(inst, 128);
        CHECK(s.verdict == Verdict::True);
        RealBall d = derived_rhs(2, 2, R(1, 5), inst.r, s.sum_rh_x, s.sum_rh_a, 128);
        CHECK(greater_eq(s.rhs, d) == Verdict::True);
        // The h(a) coefficient is exactly q/delta = 10.
        CHECK(s.constants.at("coef_ha").contains(R(10)));

        ApproximationInstance taller = inst;
        taller.a[0] = alg(K, 1, 5, 7);
        SideReport t = melb_sides(taller, 128);
        if (greater(t.sum_rh_a, s.sum_rh_a) == Verdict::True) {
            CHECK(greater(t.rhs, s.rhs) == Verdict::True);
            ++checked;
        }
    }
    CHECK(checked > 10);
}
