#include <cmath>

#include "doctest.h"
#include "dioph/corpus.hpp"

using namespace dioph;

namespace {

std::vector<Integer> poly(long c, long b, long a) { return {Integer(c), Integer(b), Integer(a)}; }

std::vector<std::string> fractions(const ConvergentCorpus& cc) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < cc.p.size(); ++k) out.push_back(cc.p[k].get_str() + "/" + cc.q[k].get_str());
    return out;
}

}  // namespace

TEST_CASE("convergents of sqrt 2 and the golden ratio") {
    auto s2 = generate_convergents(poly(-2, 0, 1), 5);
    CHECK(fractions(s2) == std::vector<std::string>{"1/1", "3/2", "7/5", "17/12", "41/29"});
    CHECK(s2.point(1) == ProjPoint::rational(Rational(2), Rational(3)));
    auto phi = generate_convergents(poly(-1, -1, 1), 5);
    CHECK(fractions(phi) == std::vector<std::string>{"1/1", "2/1", "3/2", "5/3", "8/5"});
}

TEST_CASE("convergents are unimodular and alternate around the root") {
    for (long d : {3L, 6L, 7L, 13L, 15L, 19L}) {
        auto cc = generate_convergents(poly(-d, 0, 1), 12);
        double alpha = std::sqrt(static_cast<double>(d));
        for (std::size_t k = 0; k + 1 < cc.p.size(); ++k) {
            Integer det = cc.p[k + 1] * cc.q[k] - cc.p[k] * cc.q[k + 1];
            CHECK(abs(det) == 1);
            double e0 = cc.p[k].get_d() / cc.q[k].get_d() - alpha, e1 = cc.p[k + 1].get_d() / cc.q[k + 1].get_d() - alpha;
            if (std::fabs(e1) > 1e-12) CHECK(e0 * e1 < 0);
        }
    }
    // 2x^2 - 3x - 1 has largest root (3 + sqrt 17)/4 = 1.78..: partial quotients start 1, 1, 3.
    auto g = generate_convergents(poly(-1, -3, 2), 3);
    CHECK(g.partial_quotients == std::vector<Integer>{1, 1, 3});
}

TEST_CASE("rejected polynomials") {
    for (const auto& p : {poly(1, 0, 1), poly(-4, 0, 1), poly(2, 3, 1)}) {
        try {
            generate_convergents(p, 3);
            FAIL("expected NotRealQuadratic");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotRealQuadratic);
        }
    }
    CHECK_THROWS_AS(generate_convergents({Integer(-2), Integer(1)}, 3), Error);
}
