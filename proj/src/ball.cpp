#include "dioph/ball.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dioph {

namespace {

struct Tmp {
    mpfr_t v;
    explicit Tmp(prec_t bits) { mpfr_init2(v, bits); }
    ~Tmp() { mpfr_clear(v); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
};

Rational mpfr_to_rational(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw Error(ErrorKind::PrecisionExhausted, "non-finite ball endpoint");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

}  // namespace

void RealBall::init(prec_t bits) {
    if (bits < 2) bits = 2;
    bits_ = bits;
    mpfr_init2(lo_, bits);
    mpfr_init2(hi_, bits);
}

RealBall::RealBall(prec_t bits) {
    init(bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealBall::RealBall(const Rational& q, prec_t bits) {
    init(bits);
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

RealBall::RealBall(long v, prec_t bits) {
    init(bits);
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

RealBall::RealBall(const RealBall& o) {
    init(o.bits_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept {
    init(o.bits_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.bits_);
        mpfr_set_prec(hi_, o.bits_);
        bits_ = o.bits_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(bits_, o.bits_);
    }
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RealBall RealBall::hull(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.bits_, b.bits_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RealBall RealBall::from_bounds(const Rational& lo, const Rational& hi, prec_t bits) {
    RealBall r(bits);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    if (mpfr_greater_p(r.lo_, r.hi_)) throw Error(ErrorKind::DomainError, "from_bounds: lo > hi");
    return r;
}

RealBall RealBall::pi(prec_t bits) {
    RealBall r(bits);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Rational RealBall::lower() const { return mpfr_to_rational(lo_); }
Rational RealBall::upper() const { return mpfr_to_rational(hi_); }

double RealBall::mid_double() const {
    Tmp m(bits_ + 2);
    mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
    return mpfr_get_d(m.v, MPFR_RNDN);
}

double RealBall::width_double() const {
    Tmp w(bits_);
    mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
    return mpfr_get_d(w.v, MPFR_RNDU);
}

long RealBall::width_log2() const {
    Tmp w(bits_);
    mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
    if (mpfr_zero_p(w.v)) return -1000000;
    if (!mpfr_number_p(w.v)) return 1000000;
    return mpfr_get_exp(w.v);
}

bool RealBall::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool RealBall::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RealBall::contains(const RealBall& inner) const {
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool RealBall::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool RealBall::is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

RealBall RealBall::operator-() const {
    RealBall r(bits_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

RealBall& RealBall::operator+=(const RealBall& o) {
    prec_t b = std::max(bits_, o.bits_);
    RealBall r(b);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    *this = std::move(r);
    return *this;
}

RealBall& RealBall::operator-=(const RealBall& o) {
    prec_t b = std::max(bits_, o.bits_);
    RealBall r(b);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    *this = std::move(r);
    return *this;
}

RealBall& RealBall::operator*=(const RealBall& o) {
    prec_t b = std::max(bits_, o.bits_);
    RealBall r(b);
    Tmp t(b);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr c[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto x : a)
        for (auto y : c) {
            mpfr_mul(t.v, x, y, MPFR_RNDD);
            if (mpfr_nan_p(t.v)) mpfr_set_zero(t.v, 1);  // 0 * inf never arises for finite balls
            if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
            mpfr_mul(t.v, x, y, MPFR_RNDU);
            if (mpfr_nan_p(t.v)) mpfr_set_zero(t.v, 1);
            if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
            first = false;
        }
    *this = std::move(r);
    return *this;
}

RealBall& RealBall::operator/=(const RealBall& o) {
    if (o.contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "division by a ball containing zero");
    prec_t b = std::max(bits_, o.bits_);
    RealBall r(b);
    Tmp t(b);
    mpfr_srcptr a[2] = {lo_, hi_};
    mpfr_srcptr c[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto x : a)
        for (auto y : c) {
            mpfr_div(t.v, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
            mpfr_div(t.v, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
            first = false;
        }
    *this = std::move(r);
    return *this;
}

std::string RealBall::mid_string(int digits) const {
    Tmp m(bits_ + 2);
    mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
    if (digits <= 0) digits = static_cast<int>(std::max<prec_t>(6, bits_ * 30103 / 100000));
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, m.v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string RealBall::rad_string() const {
    Tmp m(bits_ + 2), d1(bits_), d2(bits_);
    mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
    mpfr_sub(d1.v, hi_, m.v, MPFR_RNDU);
    mpfr_sub(d2.v, m.v, lo_, MPFR_RNDU);
    mpfr_max(d1.v, d1.v, d2.v, MPFR_RNDU);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.3RUe", d1.v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

RealBall RealBall::inflated(const Rational& r) const {
    RealBall out(*this);
    Tmp t(bits_);
    mpfr_set_q(t.v, r.get_mpq_t(), MPFR_RNDU);
    mpfr_sub(out.lo_, out.lo_, t.v, MPFR_RNDD);
    mpfr_add(out.hi_, out.hi_, t.v, MPFR_RNDU);
    return out;
}

RealBall RealBall::midpoint() const {
    RealBall out(bits_);
    mpfr_add(out.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(out.lo_, out.lo_, 1, MPFR_RNDN);
    mpfr_set(out.hi_, out.lo_, MPFR_RNDN);
    return out;
}

RealBall RealBall::with_bits(prec_t bits) const {
    RealBall out(bits);
    mpfr_set(out.lo_, lo_, MPFR_RNDD);
    mpfr_set(out.hi_, hi_, MPFR_RNDU);
    return out;
}

RealBall operator+(RealBall a, const RealBall& b) { return a += b; }
RealBall operator-(RealBall a, const RealBall& b) { return a -= b; }
RealBall operator*(RealBall a, const RealBall& b) { return a *= b; }
RealBall operator/(RealBall a, const RealBall& b) { return a /= b; }
RealBall operator*(const Rational& q, const RealBall& b) { return RealBall(q, b.bits()) * b; }
RealBall operator+(const Rational& q, const RealBall& b) { return RealBall(q, b.bits()) + b; }

RealBall sqr(const RealBall& x) {
    RealBall r(x.bits_);
    if (mpfr_sgn(x.lo_) >= 0) {
        mpfr_sqr(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, x.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(x.hi_) <= 0) {
        mpfr_sqr(r.lo_, x.hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, x.lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        Tmp a(x.bits_), b(x.bits_);
        mpfr_sqr(a.v, x.lo_, MPFR_RNDU);
        mpfr_sqr(b.v, x.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, a.v, b.v, MPFR_RNDU);
    }
    return r;
}

// Callers pass quantities known to be nonnegative; a straddling lower end is clamped to 0.
RealBall sqrt(const RealBall& x) {
    if (mpfr_sgn(x.hi_) < 0) throw Error(ErrorKind::DomainError, "sqrt of a negative ball");
    RealBall r(x.bits_);
    if (mpfr_sgn(x.lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RealBall log(const RealBall& x) {
    if (mpfr_sgn(x.hi_) <= 0) throw Error(ErrorKind::DomainError, "log of a nonpositive ball");
    if (mpfr_sgn(x.lo_) <= 0) throw Error(ErrorKind::PrecisionExhausted, "log of a ball touching zero");
    RealBall r(x.bits_);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RealBall exp(const RealBall& x) {
    RealBall r(x.bits_);
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RealBall root(const RealBall& x, unsigned long n) {
    if (n == 0) throw Error(ErrorKind::DomainError, "zeroth root");
    if (mpfr_sgn(x.hi_) < 0) throw Error(ErrorKind::DomainError, "root of a negative ball");
    RealBall r(x.bits_);
    if (mpfr_sgn(x.lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_rootn_ui(r.lo_, x.lo_, n, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, x.hi_, n, MPFR_RNDU);
    return r;
}

RealBall abs(const RealBall& x) {
    if (mpfr_sgn(x.lo_) >= 0) return x;
    if (mpfr_sgn(x.hi_) <= 0) return -x;
    RealBall r(x.bits_);
    mpfr_set_zero(r.lo_, 1);
    Tmp a(x.bits_);
    mpfr_neg(a.v, x.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, a.v, x.hi_, MPFR_RNDU);
    return r;
}

RealBall min(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.bits_, b.bits_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RealBall max(const RealBall& a, const RealBall& b) {
    RealBall r(std::max(a.bits_, b.bits_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RealBall pow(const RealBall& x, const Rational& e) {
    if (e == 0) return RealBall(1L, x.bits());
    if (e.get_den() == 1 && e > 0) {
        unsigned long k = e.get_num().get_ui();
        RealBall r(1L, x.bits());
        RealBall b = x;
        while (k) {
            if (k & 1) r *= b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }
    // Positive base with rational exponent p/q: root first keeps monotonicity explicit.
    Integer p = e.get_num(), q = e.get_den();
    RealBall base = root(x, q.get_ui());
    bool neg = p < 0;
    if (neg) p = -p;
    RealBall r = pow(base, Rational(p));
    if (neg) r = RealBall(1L, x.bits()) / r;
    return r;
}

RealBall log_rational(const Rational& q, prec_t bits) { return log(RealBall(q, bits)); }

Verdict less(const RealBall& a, const RealBall& b) {
    if (mpfr_less_p(a.hi(), b.lo())) return Verdict::True;
    if (mpfr_greaterequal_p(a.lo(), b.hi())) return Verdict::False;
    return Verdict::Unknown;
}

Verdict less_eq(const RealBall& a, const RealBall& b) {
    if (mpfr_lessequal_p(a.hi(), b.lo())) return Verdict::True;
    if (mpfr_greater_p(a.lo(), b.hi())) return Verdict::False;
    return Verdict::Unknown;
}

ComplexBall& ComplexBall::operator+=(const ComplexBall& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexBall& ComplexBall::operator*=(const ComplexBall& o) {
    RealBall r = re * o.re - im * o.im;
    RealBall i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

ComplexBall& ComplexBall::operator/=(const ComplexBall& o) {
    RealBall d = abs2(o);
    RealBall r = (re * o.re + im * o.im) / d;
    RealBall i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
ComplexBall operator*(ComplexBall a, const ComplexBall& b) { return a *= b; }
ComplexBall operator/(ComplexBall a, const ComplexBall& b) { return a /= b; }
ComplexBall operator*(const Rational& q, const ComplexBall& b) { return {q * b.re, q * b.im}; }

RealBall abs2(const ComplexBall& z) { return sqr(z.re) + sqr(z.im); }
RealBall abs(const ComplexBall& z) {
    if (z.is_real()) return abs(z.re);
    return sqrt(abs2(z));
}
ComplexBall conj(const ComplexBall& z) { return {z.re, -z.im}; }

ComplexBall sqrt(const ComplexBall& z) {
    RealBall m = abs(z);
    if (mpfr_sgn(z.re.lo()) > 0) {
        RealBall a = sqrt((m + z.re) * RealBall(Rational(1, 2), z.bits()));
        return {a, z.im / (RealBall(2L, z.bits()) * a)};
    }
    if (!z.im.contains_zero()) {
        RealBall b = sqrt((m - z.re) * RealBall(Rational(1, 2), z.bits()));
        if (mpfr_sgn(z.im.lo()) < 0) b = -b;
        return {z.im / (RealBall(2L, z.bits()) * b), b};
    }
    throw Error(ErrorKind::PrecisionExhausted, "principal sqrt: ball meets the branch cut");
}

}  // namespace dioph
