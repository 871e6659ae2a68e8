#pragma once

#include <vector>

#include "dioph/ball.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
struct QPoly {
    std::vector<Rational> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly from_integers(const std::vector<Integer>& coeffs);
    static QPoly monomial(const Rational& a, int k);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    const Rational& lead() const { return c.back(); }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Rational(0); }
    void trim();

    Rational eval(const Rational& x) const;
    ComplexBall eval(const ComplexBall& z) const;
    RealBall eval(const RealBall& x) const;
    QPoly derivative() const;
    // Antiderivative with zero constant term.
    QPoly antiderivative() const;
    // t -> p(t + a).
    QPoly shifted(const Rational& a) const;
    QPoly monic() const;

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rational& s, const QPoly& a);
// Euclidean division; b nonzero.
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic, or zero
// Returns monic g = gcd(a, b) with s*a + t*b = g.
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);

bool is_squarefree(const QPoly& f);

// Number of distinct real roots of f in the half-open interval (a, b], by Sturm
// sequences; f nonzero.
int count_real_roots(const QPoly& f, const Rational& a, const Rational& b);

// Certified isolation of all complex roots of a squarefree f (degree >= 1).
// Each returned ball contains exactly one root; real roots have an exact zero
// imaginary part. Order: real roots ascending, then complex pairs by real part
// with the positive-imaginary member first.
std::vector<ComplexBall> complex_roots(const QPoly& f, prec_t bits);

// Irreducibility over Q for degree <= 8 via certified root-subset search.
bool is_irreducible(const QPoly& f);

// Polynomials over Z/pZ, coefficients in [0, p), low to high.
struct ModPoly {
    Integer p;
    std::vector<Integer> c;

    ModPoly() = default;
    ModPoly(Integer modulus, std::vector<Integer> coeffs);
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim();
    ModPoly monic() const;
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p == b.p && a.c == b.c; }
};

ModPoly reduce_mod(const std::vector<Integer>& f, const Integer& p);
ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly operator%(const ModPoly& a, const ModPoly& b);
ModPoly gcd(const ModPoly& a, const ModPoly& b);
ModPoly xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t);
ModPoly powmod(const ModPoly& a, const Integer& e, const ModPoly& m);
ModPoly derivative(const ModPoly& a);

// Monic irreducible factors of a monic squarefree polynomial over F_p, sorted
// by (degree, coefficients). Deterministic for a fixed seed.
std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f, unsigned long seed = 1);

// Integer-coefficient helpers (low to high).
using ZPoly = std::vector<Integer>;
ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m);
// Remainder of a modulo a monic b, coefficients reduced mod m.
ZPoly zrem_monic(const ZPoly& a, const ZPoly& b, const Integer& m);

// Lift f = g*h (mod p), g, h monic and coprime mod p, to f = G*H (mod p^k).
void hensel_lift(const ZPoly& f, const ModPoly& g, const ModPoly& h, long k, ZPoly& G, ZPoly& H);

}  // namespace dioph
