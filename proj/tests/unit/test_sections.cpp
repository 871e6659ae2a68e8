#include <random>

#include "doctest.h"
#include "dioph/sections.hpp"

using namespace dioph;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }
ProjPoint Q(long a, long b) { return ProjPoint::rational(R(a), R(b)); }

MultiHomogPoly random_section(std::mt19937_64& rng, const MultiDegree& r, int density = 3) {
    MultiHomogPoly f(r);
    for_each_box_point(r, [&](const std::vector<long>& l) {
        if (static_cast<int>(rng() % density) == 0) f.set(l, FieldElem(R(static_cast<long>(rng() % 11) - 5)));
    });
    return f;
}

ProjPoint random_point(std::mt19937_64& rng) {
    long a = static_cast<long>(rng() % 7) - 3, b = static_cast<long>(rng() % 7) - 3;
    if (a == 0 && b == 0) a = 1;
    return Q(a, b);
}

// Rank over K of the K-linear Taylor conditions at every conjugate of a.
int conjugate_condition_rank(const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& abar, const MultiDegree& r,
                             const Rational& t) {
    Matrix<FieldElem> M;
    for (const auto* pts : {&a, &abar})
        for (const auto& l : lattice_points(r, t, LatticeSide::Lower)) M.push_back(taylor_functional(r, *pts, l));
    return rank(M);
}

ProjPoint conj_quadratic(const ProjPoint& p) {
    // theta -> -b - theta for minimal polynomial y^2 + b y + c.
    auto conj = [](const FieldElem& x) {
        if (!x.field()) return x;
        Rational b = x.field()->minpoly_q().coeff(1);
        FieldElem t = FieldElem::generator(x.field());
        FieldElem tbar = FieldElem(Rational(-b)) - t;
        return FieldElem(x.coord(0)) + FieldElem(x.coord(1)) * tbar;
    };
    return ProjPoint(conj(p.x0()), conj(p.x1()));
}

}  // namespace

TEST_CASE("index examples") {
    MultiDegree r({3, 1});
    MultiHomogPoly f(r);
    f.set({2, 1}, FieldElem(1));
    f.set({3, 0}, FieldElem(1));
    std::vector<ProjPoint> z{Q(1, 0), Q(1, 0)};
    CHECK(*index(f, z, Weight({R(1), R(1)})) == 3);
    CHECK(*index(f, z, Weight({R(1, 2), R(1)})) == R(3, 2));
    CHECK_FALSE(index(MultiHomogPoly(r), z, Weight({R(1), R(1)})).has_value());
    // Same local expansion at a moved point, built from the vanishing linear forms.
    ProjPoint z1 = Q(1, 2), z2 = Q(3, 1);
    BinaryForm L1 = BinaryForm::vanishing_at(z1.x0(), z1.x1()), L2 = BinaryForm::vanishing_at(z2.x0(), z2.x1());
    BinaryForm T0 = BinaryForm::monomial(1, 0);
    MultiHomogPoly g = MultiHomogPoly::tensor({L1 * L1 * T0, L2}) + MultiHomogPoly::tensor({L1 * L1 * L1, T0});
    std::vector<ProjPoint> w{z1, z2};
    CHECK(*index(g, w, Weight({R(1), R(1)})) == 3);
    CHECK(*index(g, w, Weight({R(1, 2), R(1)})) == R(3, 2));
    // At (0:1) the local parameter is T0.
    MultiHomogPoly h = MultiHomogPoly::monomial(MultiDegree({2}), {0});
    CHECK(*index(h, {Q(0, 1)}, Weight({R(1)})) == 2);
    CHECK(*index(h, {Q(1, 0)}, Weight({R(1)})) == 0);
}

TEST_CASE("index over a quadratic field") {
    auto K = make_field({-2, 0, 1});
    FieldElem th = FieldElem::generator(K);
    ProjPoint a(FieldElem(1), th);
    BinaryForm L = BinaryForm::vanishing_at(a.x0(), a.x1());
    // (T1 - theta T0)(T1 + theta T0) = T1^2 - 2 T0^2 is rational and vanishes to order 1 at a.
    BinaryForm p = L * BinaryForm::vanishing_at(FieldElem(1), -th);
    CHECK(p.is_zero() == false);
    for (const auto& c : p.c) CHECK(c.is_rational());
    MultiHomogPoly f = MultiHomogPoly::tensor({p});
    CHECK(*index(f, {a}, Weight({R(1)})) == 1);
    CHECK(*index(f * f, {a}, Weight({R(1)})) == 2);
}

TEST_CASE("index is a valuation") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 150; ++it) {
        MultiDegree r({1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 3)});
        std::vector<ProjPoint> z{random_point(rng), random_point(rng)};
        Weight b({R(1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 3)), R(static_cast<long>(rng() % 3))});
        // Bias towards high index: multiply by powers of the vanishing forms.
        auto f = random_section(rng, r) * MultiHomogPoly::tensor({BinaryForm::vanishing_at(z[0].x0(), z[0].x1()), BinaryForm::monomial(1, 0)});
        auto g = random_section(rng, f.degree());
        auto fi = index(f, z, b), gi = index(g, z, b), pi = index(f * g, z, b), si = index(f + g, z, b);
        if (fi && gi) {
            CHECK(*pi == *fi + *gi);
        } else {
            CHECK_FALSE(pi.has_value());
        }
        if (si && fi && gi) CHECK(*si >= std::min(*fi, *gi));
    }
}

TEST_CASE("kernel_single") {
    MultiDegree r({2, 2});
    std::vector<ProjPoint> z{Q(1, 2), Q(3, -1)};
    CHECK(kernel_single(z, r, R(1)).dim() == 6);
    CHECK(kernel_single(z, r, R(0)).dim() == 9);
    CHECK(kernel_single(z, r, R(0)) == SectionSubspace::full(r));
    CHECK(kernel_single(z, r, R(5, 2)).dim() == 0);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        MultiDegree s({1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 4)});
        std::vector<ProjPoint> w{random_point(rng), random_point(rng)};
        Rational t = R(static_cast<long>(rng() % 25), 12);
        SectionSubspace K = kernel_single(w, s, t);
        CHECK(K.dim() == lattice_count(s, t, LatticeSide::Upper));
        CHECK(K == kernel_single_by_conditions(w, s, t));
        for (const auto& f : K.basis_sections()) CHECK(*index(f, w, Weight::reciprocal(s)) >= t);
    }
    std::vector<ProjPoint> z3{Q(1, 1), Q(0, 1), Q(2, 5)};
    MultiDegree r3({2, 1, 3});
    CHECK(kernel_single(z3, r3, R(3, 2)) == kernel_single_by_conditions(z3, r3, R(3, 2)));
}

TEST_CASE("kernel_conjugates") {
    auto K = make_field({-2, 0, 1});
    FieldElem th = FieldElem::generator(K);
    ProjPoint a(FieldElem(1), th);
    MultiDegree r({2, 2});
    SectionSubspace W = kernel_conjugates({a, a}, r, R(1));
    CHECK(W.dim() >= 9 - 2 * 3);
    CHECK(W.dim() == 3);
    for (const auto& f : W.basis_sections()) CHECK(*index(f, {a, a}, Weight::reciprocal(r)) >= 1);
    CHECK(kernel_conjugates({a, a}, r, R(0)).dim() == 9);
    CHECK_THROWS_AS(kernel_conjugates({a, Q(1, 2)}, r, R(1)), Error);
    try {
        kernel_conjugates({ProjPoint(FieldElem(1), FieldElem(th * th)), a}, r, R(1));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotGenerating);
    }
    // Galois stability: K'-rank of the conditions at a and its conjugate equals the Q-codimension.
    auto K3 = make_field({-3, 0, 1});
    FieldElem s = FieldElem::generator(K3);
    std::mt19937_64 rng(8);
    for (int it = 0; it < 12; ++it) {
        bool use3 = it % 2;
        FieldElem g = use3 ? s : th;
        auto mk = [&] {
            long p = static_cast<long>(rng() % 5) - 2, q = 1 + static_cast<long>(rng() % 3);
            return ProjPoint(FieldElem(q), FieldElem(p) + g);
        };
        std::vector<ProjPoint> pts{mk(), mk()};
        std::vector<ProjPoint> bar{conj_quadratic(pts[0]), conj_quadratic(pts[1])};
        MultiDegree rr({1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3)});
        Rational t = R(static_cast<long>(rng() % 13), 6);
        SectionSubspace Wq = kernel_conjugates(pts, rr, t);
        long N = rr.box_size().get_si();
        CHECK(Wq.dim() == N - conjugate_condition_rank(pts, bar, rr, t));
        CHECK(Wq.dim() >= N - 2 * lattice_count(rr, t, LatticeSide::Lower).get_si());
    }
}

TEST_CASE("multiplicity") {
    // T0 T1^2 at (1:0), where T1 vanishes.
    const BinaryForm g({FieldElem(0), FieldElem(0), FieldElem(1), FieldElem(0)});
    CHECK(multiplicity(g, Q(1, 0)) == 2);
    CHECK(multiplicity(g, Q(0, 1)) == 1);
    CHECK(multiplicity(BinaryForm({FieldElem(5)}), Q(1, 3)) == 0);
    ProjPoint x = Q(2, 3);
    BinaryForm L = BinaryForm::vanishing_at(x.x0(), x.x1());
    CHECK(multiplicity(L * L * L, x) == 3);
    CHECK(multiplicity(L * L * L * BinaryForm::vanishing_at(FieldElem(1), FieldElem(1)), x) == 3);
    CHECK_THROWS_AS(multiplicity(BinaryForm::zero(2), x), Error);
}

TEST_CASE("dyson_check") {
    MultiDegree r({3, 2});
    auto full = MultiHomogPoly::monomial(r, {3, 2});
    auto rep = dyson_check(full, {{Q(1, 0), Q(1, 0)}});
    CHECK(rep.q == 0);
    CHECK(rep.lhs == 1);
    CHECK(rep.rhs == 1);
    CHECK(rep.holds);
    std::mt19937_64 rng(21);
    auto f = random_section(rng, r, 1);
    auto two = dyson_check(f, {{Q(1, 0), Q(1, 1)}, {Q(1, 2), Q(1, 3)}});
    CHECK(two.holds);
    CHECK(two.lhs < two.rhs);
    CHECK_THROWS_AS(dyson_check(f, {{Q(1, 0), Q(1, 1)}, {Q(1, 0), Q(1, 3)}}), Error);
    CHECK_THROWS_AS(dyson_check(MultiHomogPoly(r), {{Q(1, 0), Q(1, 1)}}), Error);
    // Sections of high index at two points, drawn from the intersection of kernels.
    for (int it = 0; it < 30; ++it) {
        MultiDegree s({2 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3)});
        std::vector<ProjPoint> z0{Q(1, 0), Q(1, 0)}, z1{Q(0, 1), Q(0, 1)}, z2{Q(1, 1), Q(1, -1)};
        Rational t = R(static_cast<long>(rng() % 9), 8);
        auto W = subspace_intersection(kernel_single(z0, s, t), kernel_single(z1, s, t));
        if (W.dim() == 0) continue;
        MultiHomogPoly g(s);
        for (const auto& b : W.basis_sections()) g = g + FieldElem(R(static_cast<long>(rng() % 7) - 3)) * b;
        if (g.is_zero()) continue;
        auto d = dyson_check(g, {z0, z1, z2});
        CHECK(d.holds);
        CHECK(d.indices[0] >= t);
    }
}
