#pragma once

#include <mpfr.h>

#include <string>

#include "dioph/error.hpp"
#include "dioph/rational.hpp"

namespace dioph {

using prec_t = long;

// Closed interval [lo, hi] with MPFR endpoints rounded outward. The true value
// always lies inside; every operation keeps that invariant.
class RealBall {
public:
    explicit RealBall(prec_t bits = 128);
    RealBall(const Rational& q, prec_t bits);
    RealBall(long v, prec_t bits);
    RealBall(const RealBall& o);
    RealBall(RealBall&& o) noexcept;
    RealBall& operator=(const RealBall& o);
    RealBall& operator=(RealBall&& o) noexcept;
    ~RealBall();

    static RealBall hull(const RealBall& a, const RealBall& b);
    static RealBall from_bounds(const Rational& lo, const Rational& hi, prec_t bits);
    static RealBall pi(prec_t bits);

    prec_t bits() const { return bits_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    Rational lower() const;
    Rational upper() const;
    double mid_double() const;
    // Upper bound on hi - lo.
    double width_double() const;
    // log2 of the width; very negative for tight balls, +inf-like for wide.
    long width_log2() const;

    bool is_point() const;
    bool contains(const Rational& q) const;
    bool contains(const RealBall& inner) const;
    bool contains_zero() const;
    bool is_finite() const;

    RealBall operator-() const;
    RealBall& operator+=(const RealBall& o);
    RealBall& operator-=(const RealBall& o);
    RealBall& operator*=(const RealBall& o);
    RealBall& operator/=(const RealBall& o);

    // Serialization pieces: midpoint decimal string and radius upper bound.
    std::string mid_string(int digits = 0) const;
    std::string rad_string() const;

    // Widen both ends by r >= 0.
    RealBall inflated(const Rational& r) const;
    // Zero-width ball at the (rounded) midpoint; not an enclosure of the value.
    RealBall midpoint() const;
    // Same ball carried at a different working precision (outward rounded).
    RealBall with_bits(prec_t bits) const;

private:
    void init(prec_t bits);
    prec_t bits_;
    mpfr_t lo_, hi_;
    friend RealBall sqr(const RealBall&);
    friend RealBall sqrt(const RealBall&);
    friend RealBall log(const RealBall&);
    friend RealBall exp(const RealBall&);
    friend RealBall root(const RealBall&, unsigned long);
    friend RealBall abs(const RealBall&);
    friend RealBall min(const RealBall&, const RealBall&);
    friend RealBall max(const RealBall&, const RealBall&);
};

RealBall operator+(RealBall a, const RealBall& b);
RealBall operator-(RealBall a, const RealBall& b);
RealBall operator*(RealBall a, const RealBall& b);
RealBall operator/(RealBall a, const RealBall& b);
RealBall operator*(const Rational& q, const RealBall& b);
RealBall operator+(const Rational& q, const RealBall& b);

RealBall sqr(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall log(const RealBall& x);
RealBall exp(const RealBall& x);
RealBall root(const RealBall& x, unsigned long n);
RealBall abs(const RealBall& x);
RealBall min(const RealBall& a, const RealBall& b);
RealBall max(const RealBall& a, const RealBall& b);
// x^(p/q) for x > 0.
RealBall pow(const RealBall& x, const Rational& e);

RealBall log_rational(const Rational& q, prec_t bits);

// Strict and weak comparisons with a third outcome when the balls overlap.
Verdict less(const RealBall& a, const RealBall& b);
Verdict less_eq(const RealBall& a, const RealBall& b);
inline Verdict greater(const RealBall& a, const RealBall& b) { return less(b, a); }
inline Verdict greater_eq(const RealBall& a, const RealBall& b) { return less_eq(b, a); }

// Rectangular complex ball.
struct ComplexBall {
    RealBall re, im;

    explicit ComplexBall(prec_t bits = 128) : re(bits), im(bits) {}
    ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}
    ComplexBall(const Rational& q, prec_t bits) : re(q, bits), im(bits) {}

    prec_t bits() const { return re.bits(); }
    bool is_real() const { return im.is_point() && mpfr_zero_p(im.lo()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    ComplexBall midpoint() const { return {re.midpoint(), im.midpoint()}; }

    ComplexBall operator-() const { return {-re, -im}; }
    ComplexBall& operator+=(const ComplexBall& o);
    ComplexBall& operator-=(const ComplexBall& o);
    ComplexBall& operator*=(const ComplexBall& o);
    ComplexBall& operator/=(const ComplexBall& o);
};

ComplexBall operator+(ComplexBall a, const ComplexBall& b);
ComplexBall operator-(ComplexBall a, const ComplexBall& b);
ComplexBall operator*(ComplexBall a, const ComplexBall& b);
ComplexBall operator/(ComplexBall a, const ComplexBall& b);
ComplexBall operator*(const Rational& q, const ComplexBall& b);

RealBall abs2(const ComplexBall& z);
RealBall abs(const ComplexBall& z);
ComplexBall conj(const ComplexBall& z);
// Principal square root; requires the ball to avoid the branch cut (-inf, 0].
ComplexBall sqrt(const ComplexBall& z);

}  // namespace dioph
