#include <cmath>
#include <random>

#include "doctest.h"
#include "dioph/git.hpp"

using namespace dioph;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }
ProjPoint Q(long a, long b) { return ProjPoint::rational(R(a), R(b)); }

Matrix<Rational> random_basis(std::mt19937_64& rng) {
    while (true) {
        Matrix<Rational> g(2, std::vector<Rational>(2));
        for (auto& row : g)
            for (auto& x : row) x = R(static_cast<long>(rng() % 7) - 3);
        if (g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0) return g;
    }
}

OneParamSubgroup random_subgroup(std::mt19937_64& rng, std::size_t n, long mmax = 3) {
    std::vector<long> m;
    std::vector<Matrix<Rational>> bases;
    for (std::size_t i = 0; i < n; ++i) {
        m.push_back(static_cast<long>(rng() % (mmax + 1)));
        bases.push_back(random_basis(rng));
    }
    return OneParamSubgroup(m, bases);
}

std::vector<Rational> random_vector(std::mt19937_64& rng, std::size_t N, int density = 2) {
    std::vector<Rational> v(N, Rational(0));
    for (auto& x : v)
        if (static_cast<int>(rng() % density) == 0) x = R(static_cast<long>(rng() % 9) - 4);
    return v;
}

SectionSubspace random_subspace(std::mt19937_64& rng, const MultiDegree& r, int k) {
    Matrix<Rational> rows;
    for (int j = 0; j < k; ++j) rows.push_back(random_vector(rng, r.box_size().get_ui()));
    return SectionSubspace(r, rows);
}

Rational det(Matrix<Rational> M) {
    std::size_t n = M.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(M[p], M[c]);
            d = -d;
        }
        d *= M[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = M[i][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    return d;
}

// Definition through the Pluecker point: minus the least total weight of a
// k-subset of standard monomials with a nonzero maximal minor (standard bases).
long pluecker_oracle(const std::vector<long>& m, const SectionSubspace& W) {
    const MultiDegree& r = W.degree();
    std::vector<long> w;
    for_each_box_point(r, [&](const std::vector<long>& l) {
        long s = 0;
        for (std::size_t i = 0; i < r.n(); ++i) s += m[i] * (r[i] - 2 * l[i]);
        w.push_back(s);
    });
    std::size_t N = w.size(), k = static_cast<std::size_t>(W.dim());
    std::optional<long> best;
    std::vector<std::size_t> S(k);
    for (std::size_t i = 0; i < k; ++i) S[i] = i;
    while (true) {
        Matrix<Rational> minor;
        for (const auto& row : W.basis()) {
            std::vector<Rational> sub;
            for (std::size_t j : S) sub.push_back(row[j]);
            minor.push_back(sub);
        }
        if (det(minor) != 0) {
            long tot = 0;
            for (std::size_t j : S) tot += w[j];
            if (!best || tot < *best) best = tot;
        }
        std::size_t i = k;
        while (i > 0 && S[i - 1] == N - k + i - 1) --i;
        if (i == 0) break;
        ++S[i - 1];
        for (std::size_t j = i; j < k; ++j) S[j] = S[j - 1] + 1;
    }
    return -*best;
}

double mu2_double(double t) {
    auto f = [](double s) { return s * s / 2 * (1 - 2 * s / 3); };
    return t <= 1 ? f(t) : f(2 - t);
}

}  // namespace

TEST_CASE("one-parameter subgroup basics") {
    auto lam = OneParamSubgroup::standard({1, 2});
    auto y = lam.instability_point();
    CHECK(y[0] == Q(0, 1));
    CHECK(lam.chi(y) == std::vector<int>{1, 1});
    CHECK(lam.chi({Q(1, 0), Q(1, 1)}) == std::vector<int>{0, 0});
    CHECK(OneParamSubgroup::standard({0, 2}).chi(y) == std::vector<int>{0, 1});
    MultiDegree r({2, 3});
    CHECK(lam.p_min(r) == -8);
    CHECK(lam.p_max(r) == 8);
    CHECK(lam.weight(r, {0, 0}) == 8);
    CHECK_THROWS_AS(OneParamSubgroup({-1}, {{{R(1), R(0)}, {R(0), R(1)}}}), Error);
    CHECK_THROWS_AS(OneParamSubgroup({1}, {{{R(1), R(2)}, {R(2), R(4)}}}), Error);
    // Adapted coordinates invert the substitution: the adapted monomials come back as unit vectors.
    std::mt19937_64 rng(5);
    OneParamSubgroup g({1, 1}, {random_basis(rng), random_basis(rng)});
    MultiDegree s({2, 1});
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 1; ++b) {
            auto T = [&](std::size_t i, int which) {
                const auto& M = g.bases()[i];
                return BinaryForm({FieldElem(M[which][0]), FieldElem(M[which][1])});
            };
            BinaryForm f1({FieldElem(1)}), f2({FieldElem(1)});
            for (int j = 0; j < 2 - a; ++j) f1 = f1 * T(0, 0);
            for (int j = 0; j < a; ++j) f1 = f1 * T(0, 1);
            f2 = (b == 0) ? T(1, 0) : T(1, 1);
            auto coords = g.adapted_coordinates(s, MultiHomogPoly::tensor({f1, f2}).to_vector());
            for (std::size_t j = 0; j < coords.size(); ++j)
                CHECK(coords[j] == (j == box_index(s, {a, b}) ? 1 : 0));
        }
}

TEST_CASE("instab_subspace examples") {
    MultiDegree r({2, 2});
    auto lam = OneParamSubgroup::standard({1, 1});
    auto line = SectionSubspace::span({MultiHomogPoly::monomial(r, {0, 0})});
    auto rep = instab_subspace(lam, line);
    CHECK(rep.mu == -4);
    CHECK(rep.filtration_dims.at(4) == 1);
    CHECK(rep.filtration_dims.at(-4) == 1);
    CHECK(instab_subspace(lam, SectionSubspace::full(r)).mu == 0);
    std::vector<ProjPoint> x{Q(1, 2), Q(3, -1)};
    CHECK(lam.chi(x) == std::vector<int>{0, 0});
    CHECK(instab_subspace(lam, kernel_single(x, r, R(1))).mu == 8);
    CHECK(instab_kernel_closed_form(lam, x, r, R(1)) == 8);
    CHECK(instab_kernel_closed_form(lam, lam.instability_point(), r, R(1)) == -8);
    CHECK(instab_subspace(lam, kernel_single(lam.instability_point(), r, R(1))).mu == -8);
    CHECK(instab_kernel_closed_form(OneParamSubgroup::standard({0, 0}), x, r, R(1)) == 0);
    CHECK_THROWS_AS(instab_subspace(lam, SectionSubspace(r, {})), Error);
    // Filtration is decreasing and reproduces mu.
    std::mt19937_64 rng(2);
    for (int it = 0; it < 20; ++it) {
        auto W = random_subspace(rng, r, 1 + static_cast<int>(rng() % 5));
        auto rp = instab_subspace(lam, W);
        int prev = W.dim();
        for (const auto& [p, d] : rp.filtration_dims) {
            CHECK(d <= prev);
            prev = d;
        }
    }
}

TEST_CASE("instab_subspace matches the Pluecker definition") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 60; ++it) {
        MultiDegree r({1 + static_cast<long>(rng() % 2), 1 + static_cast<long>(rng() % 2)});
        std::vector<long> m{static_cast<long>(rng() % 4), static_cast<long>(rng() % 4)};
        int k = 1 + static_cast<int>(rng() % 3);
        auto W = random_subspace(rng, r, k);
        if (W.dim() == 0) continue;
        auto lam = OneParamSubgroup::standard(m);
        CHECK(instab_subspace(lam, W).mu == pluecker_oracle(m, W));
    }
}

TEST_CASE("line coefficient: graded weight vs index at the instability point") {
    MultiDegree r({2, 2});
    auto lam = OneParamSubgroup::standard({1, 1});
    CHECK(instab_line_via_index(lam, MultiHomogPoly::monomial(r, {0, 0})) == -4);
    // T11^2 T21^2 does not vanish at y_lambda, so ind = 0.
    CHECK(instab_line_via_index(lam, MultiHomogPoly::monomial(r, {2, 2})) == 4);
    CHECK(instab_line_via_index(OneParamSubgroup::standard({0, 0}), MultiHomogPoly::monomial(r, {1, 0})) == 0);
    CHECK_THROWS_AS(instab_line_via_index(lam, MultiHomogPoly(r)), Error);
    std::mt19937_64 rng(23);
    for (int it = 0; it < 120; ++it) {
        std::size_t n = 1 + rng() % 3;
        std::vector<long> rv;
        for (std::size_t i = 0; i < n; ++i) rv.push_back(1 + static_cast<long>(rng() % 3));
        MultiDegree s(rv);
        auto lam2 = random_subgroup(rng, n);
        auto v = random_vector(rng, s.box_size().get_ui(), 3);
        auto f = MultiHomogPoly::from_vector(s, v);
        if (f.is_zero()) continue;
        long mu_line = instab_line_via_index(lam2, f);
        CHECK(mu_line == instab_subspace(lam2, SectionSubspace::span({f})).mu);
    }
}

TEST_CASE("minimal-weight basis route agrees with the filtration") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 60; ++it) {
        MultiDegree r({1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 3)});
        auto lam = random_subgroup(rng, 2);
        auto W = random_subspace(rng, r, 1 + static_cast<int>(rng() % 6));
        if (W.dim() == 0) continue;
        CHECK(instab_min_weight_basis(lam, W) == instab_subspace(lam, W).mu);
    }
}

TEST_CASE("closed form on kernels for every chi pattern") {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (long r1 = 1; r1 <= 4; ++r1)
        for (long r2 = 1; r2 <= 4; ++r2) {
            MultiDegree r({r1, r2});
            for (int pattern = 0; pattern < 4; ++pattern) {
                std::vector<long> m{static_cast<long>(rng() % 4), static_cast<long>(rng() % 4)};
                OneParamSubgroup lam(m, {random_basis(rng), random_basis(rng)});
                auto y = lam.instability_point();
                std::vector<ProjPoint> x;
                for (std::size_t i = 0; i < 2; ++i) {
                    if (pattern >> i & 1) {
                        x.push_back(y[i]);
                    } else {
                        ProjPoint z = Q(1, static_cast<long>(rng() % 5) - 2);
                        while (z == y[i]) z = Q(1, static_cast<long>(rng() % 5) - 2);
                        x.push_back(z);
                    }
                }
                for (Rational t : {R(1, 3), R(1), R(3, 2)}) {
                    auto K = kernel_single(x, r, t);
                    if (K.dim() == 0) continue;
                    CHECK(Integer(instab_subspace(lam, K).mu) == instab_kernel_closed_form(lam, x, r, t));
                    ++checked;
                }
            }
        }
    CHECK(checked > 100);
}

TEST_CASE("mu^Z is nonnegative") {
    for (long r1 = 1; r1 <= 6; ++r1)
        for (long r2 = 1; r2 <= 5; ++r2)
            for (long k = 0; k <= 24; ++k) {
                MultiDegree r({r1, r2});
                CHECK(mu_z(r, 1, R(k, 12)) >= 0);
                CHECK(mu_z(r, 2, R(k, 12)) >= 0);
            }
}

TEST_CASE("Grassmann and inclusion inequalities") {
    MultiDegree r({2, 2});
    std::mt19937_64 rng(37);
    auto lam0 = OneParamSubgroup::standard({1, 2});
    auto W = random_subspace(rng, r, 3);
    auto same = grassmann_inequality_check(lam0, W, W);
    CHECK(same.mu1 + same.mu2 == same.mu_sum + same.mu_cap);
    auto e1 = SectionSubspace::span({MultiHomogPoly::monomial(r, {0, 0})});
    auto e2 = SectionSubspace::span({MultiHomogPoly::monomial(r, {1, 1})});
    try {
        grassmann_inequality_check(lam0, e1, e2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateIntersection);
    }
    std::size_t N = r.box_size().get_ui();
    for (int it = 0; it < 80; ++it) {
        auto lam = random_subgroup(rng, 2);
        auto c = random_vector(rng, N), a = random_vector(rng, N), b = random_vector(rng, N);
        SectionSubspace W1(r, {c, a}), W2(r, {c, b});
        if (subspace_intersection(W1, W2).dim() == 0) continue;
        CHECK(grassmann_inequality_check(lam, W1, W2).holds);
        auto big = random_subspace(rng, r, 5);
        Matrix<Rational> sub(big.basis().begin(), big.basis().begin() + std::min(2, big.dim()));
        SectionSubspace small(r, sub);
        if (small.dim() > 0) CHECK(inclusion_inequality_check(lam, small, big));
    }
    CHECK_THROWS_AS(inclusion_inequality_check(lam0, e1, e2), Error);
}

TEST_CASE("ss_condition") {
    MultiDegree r({12, 1});
    const prec_t bits = 128;
    RealValue ta(sqrt(RealBall(R(4, 5), bits)));
    CHECK(eps_qr(2, r) == R(1, 12));
    CHECK(mu(2, R(17, 10)) == R(9, 250));
    auto yes = ss_condition(2, r, ta, RealValue(R(17, 10), bits), bits);
    CHECK(yes.verdict == Verdict::True);
    // Double-precision oracle for both sides.
    double u = std::sqrt(2 * (1 + 1.0 / 12 - 2 * 0.4));
    CHECK(yes.rhs.mid_double() == doctest::Approx(mu2_double(u)).epsilon(1e-12));
    CHECK(yes.rhs.mid_double() == doctest::Approx(0.1411).epsilon(1e-3));
    CHECK(yes.lhs.mid_double() == doctest::Approx(0.036 + 1.0 / 12).epsilon(1e-12));
    CHECK(ss_condition(2, r, ta, RealValue(R(1), bits), bits).verdict == Verdict::False);
    // eps_{3,(1,1)} = 2 exceeds max mu_2 = 1/6.
    for (long k = 0; k <= 8; ++k)
        CHECK(ss_condition(3, MultiDegree({1, 1}), RealValue(R(1), bits), RealValue(R(k, 4), bits), bits).verdict ==
              Verdict::False);
    CHECK_THROWS_AS(ss_condition(2, r, ta, RealValue(R(3), bits), bits), Error);
}

TEST_CASE("ss_condition_2d") {
    const prec_t bits = 128;
    MultiDegree r({50, 1});
    // 1 - 2 vol(t_a) = 1/50 with vol(t) = t^2/2 on [0,1].
    RealValue ta(sqrt(RealBall(R(49, 50), bits)));
    double rhs = (1.0 / 50) * (1 - 2 * std::sqrt(2 * (1.0 / 50 + 2.0 / 50)));
    auto lo = ss_condition_2d(2, r, ta, RealValue(R(1, 10), bits), bits);
    CHECK(lo.rhs.mid_double() == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(lo.verdict == verdict_of(mu2_double(0.1) < rhs));
    CHECK(lo.verdict == Verdict::True);
    CHECK(ss_condition_2d(2, r, ta, RealValue(R(1, 5), bits), bits).verdict == Verdict::False);
    // 1 - vol(1) + 1/50 with q = 1: d = 1/2 gives a bracket above 1/2.
    try {
        ss_condition_2d(1, r, RealValue(R(1), bits), RealValue(R(1), bits), bits);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisFailed);
    }
    // d = 0: the right side vanishes and mu_2 >= 0 never beats it.
    for (long k = 0; k <= 8; ++k)
        CHECK(ss_condition_2d(1, r, RealValue(R(2), bits), RealValue(R(k, 4), bits), bits).verdict == Verdict::False);
    // Exact square root: t_a = 7/5, q = 1, r = (25, 8): d = 9/50, bracket = 1/2, rhs = -9/50.
    auto ex = ss_condition_2d(1, MultiDegree({25, 8}), RealValue(R(7, 5), bits), RealValue(R(1), bits), bits);
    CHECK(ex.rhs.contains(R(-9, 50)));
    CHECK(ex.rhs.width_log2() < -100);
    CHECK(ex.verdict == Verdict::False);
    CHECK_THROWS_AS(ss_condition_2d(2, MultiDegree({1, 50}), ta, RealValue(R(1), bits), bits), Error);
}

TEST_CASE("discrete semi-stability over a range of alpha") {
    const prec_t bits = 128;
    MultiDegree r({12, 1});
    RealValue ta(sqrt(RealBall(R(4, 5), bits)));
    // Asymptotic margin 0.1411 - 0.036 - 1/12 ~ 0.0218; delta = 1/100 leaves room.
    auto rows = ss_prime_discrete(2, r, ta, RealValue(R(17, 10), bits), R(1, 100), R(1, 1000), 12, 14, bits);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) CHECK(row.all == Verdict::True);
    auto bad = ss_prime_discrete(2, r, ta, RealValue(R(1), bits), R(1, 100), R(1, 1000), 12, 12, bits);
    CHECK(bad[0].all == Verdict::False);
    // Normalization: mu^Z_{alpha r,i}(t) / (alpha^{n+1} r_i prod r) tends to mu_n(t).
    for (long alpha : {20L, 40L}) {
        MultiDegree s({alpha * 3, alpha * 2});
        double ratio = Rational(mu_z(s, 1, R(7, 10))).get_d() / (double(alpha) * alpha * alpha * 3 * 6);
        CHECK(ratio == doctest::Approx(mu2_double(0.7)).epsilon(0.1));
    }
}
