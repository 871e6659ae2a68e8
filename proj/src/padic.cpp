#include "dioph/padic.hpp"

#include <algorithm>
#include <cctype>

#include "dioph/error.hpp"

namespace dioph {

Place Place::finite(const Integer& p) {
    if (!is_prime(p)) throw Error(ErrorKind::InputError, "place " + p.get_str() + " is not prime");
    Place v;
    v.archimedean = false;
    v.p = p;
    return v;
}

Place Place::parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorKind::InputError, "bad place '" + s + "'");
    return finite(Integer(s));
}

std::string Place::to_string() const { return archimedean ? "inf" : p.get_str(); }

Rational abs_value(const Place& v, const Rational& x) {
    if (x == 0) return Rational(0);
    if (v.archimedean) return abs(x);
    return rational_pow(v.p, -valuation(x, v.p));
}

namespace {

Integer mod(const Integer& x, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer ipow(const Integer& p, long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Product in (Z/p^k)[y]/(g).
std::vector<Integer> ring_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, const LocalRing& R, long k) {
    Integer m = ipow(R.p, k);
    ZPoly g = R.g;
    for (auto& x : g) x = mod(x, m);
    ZPoly r = zrem_monic(zmul_mod(a, b, m), g, m);
    r.resize(R.degree());
    return r;
}

}  // namespace

PadicBall PadicBall::zero(LocalRingPtr ring) {
    PadicBall z;
    z.ring_ = std::move(ring);
    z.exact_zero_ = true;
    z.u_.assign(z.ring_->degree(), Integer(0));
    return z;
}

PadicBall PadicBall::from_rational(const Rational& x, LocalRingPtr ring) {
    if (x == 0) return zero(std::move(ring));
    PadicBall b;
    b.ring_ = std::move(ring);
    const Integer& p = b.ring_->p;
    long v = dioph::valuation(x, p);
    Rational y = x * rational_pow(p, -v);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), y.get_den_mpz_t(), b.ring_->pN.get_mpz_t());
    b.exact_zero_ = false;
    b.e_ = v;
    b.N_ = b.ring_->N;
    b.u_.assign(b.ring_->degree(), Integer(0));
    b.u_[0] = mod(Integer(y.get_num()) * inv, b.ring_->pN);
    b.normalize();
    return b;
}

PadicBall PadicBall::from_coords(std::vector<Integer> u, LocalRingPtr ring) {
    PadicBall b;
    b.ring_ = std::move(ring);
    b.exact_zero_ = false;
    b.e_ = 0;
    b.N_ = b.ring_->N;
    u.resize(b.ring_->degree());
    b.u_ = std::move(u);
    b.normalize();
    return b;
}

void PadicBall::normalize() {
    if (exact_zero_) return;
    const Integer& p = ring_->p;
    if (N_ <= 0) {
        N_ = 0;
        std::fill(u_.begin(), u_.end(), Integer(0));
        return;
    }
    Integer m = ipow(p, N_);
    long v = N_;
    for (auto& x : u_) {
        x = mod(x, m);
        if (x != 0) v = std::min(v, dioph::valuation(x, p));
    }
    if (v == N_) {
        e_ += N_;
        N_ = 0;
        std::fill(u_.begin(), u_.end(), Integer(0));
        return;
    }
    if (v > 0) {
        Integer pv = ipow(p, v);
        for (auto& x : u_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
        e_ += v;
        N_ -= v;
    }
}

long PadicBall::valuation() const {
    if (exact_zero_) throw Error(ErrorKind::DomainError, "valuation of zero");
    if (N_ == 0) throw Error(ErrorKind::PrecisionExhausted, "p-adic ball contains zero");
    return e_;
}

Rational PadicBall::abs() const {
    if (exact_zero_) return Rational(0);
    return rational_pow(ring_->p, -valuation());
}

PadicBall PadicBall::operator-() const {
    PadicBall r = *this;
    if (exact_zero_ || N_ == 0) return r;
    Integer m = ipow(ring_->p, N_);
    for (auto& x : r.u_) x = mod(-x, m);
    return r;
}

PadicBall operator+(const PadicBall& a, const PadicBall& b) {
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    PadicBall r;
    r.ring_ = a.ring_;
    r.exact_zero_ = false;
    long e = std::min(a.e_, b.e_);
    long A = std::min(a.e_ + a.N_, b.e_ + b.N_);
    r.e_ = e;
    r.N_ = A - e;
    r.u_.assign(a.ring_->degree(), Integer(0));
    if (r.N_ <= 0) {
        r.e_ = A;
        r.N_ = 0;
        return r;
    }
    Integer sa = ipow(a.ring_->p, a.e_ - e), sb = ipow(a.ring_->p, b.e_ - e);
    for (size_t i = 0; i < r.u_.size(); ++i) r.u_[i] = a.u_[i] * sa + b.u_[i] * sb;
    r.normalize();
    return r;
}

PadicBall operator-(const PadicBall& a, const PadicBall& b) { return a + (-b); }

PadicBall operator*(const PadicBall& a, const PadicBall& b) {
    if (a.exact_zero_) return a;
    if (b.exact_zero_) return b;
    PadicBall r;
    r.ring_ = a.ring_;
    r.exact_zero_ = false;
    r.e_ = a.e_ + b.e_;
    r.N_ = std::min(a.N_, b.N_);
    if (r.N_ == 0) {
        r.u_.assign(a.ring_->degree(), Integer(0));
        return r;
    }
    r.u_ = ring_mul(a.u_, b.u_, *a.ring_, r.N_);
    r.normalize();
    return r;
}

PadicBall PadicBall::inverse() const {
    if (exact_zero_) throw Error(ErrorKind::DomainError, "p-adic inverse of zero");
    if (N_ == 0) throw Error(ErrorKind::PrecisionExhausted, "p-adic inverse of a ball containing zero");
    const Integer& p = ring_->p;
    ModPoly ub(p, u_), gb(p, ring_->g);
    ModPoly s, t;
    ModPoly one = xgcd(ub, gb, s, t);
    if (one.degree() != 0) throw Error(ErrorKind::InternalMismatch, "residue ring is not a field");
    std::vector<Integer> v = s.c;
    v.resize(ring_->degree());
    for (long k = 1; k < N_;) {
        k = std::min(2 * k, N_);
        Integer m = ipow(p, k);
        std::vector<Integer> uv = ring_mul(u_, v, *ring_, k);
        for (auto& x : uv) x = mod(-x, m);
        uv[0] = mod(uv[0] + 2, m);
        v = ring_mul(v, uv, *ring_, k);
    }
    PadicBall r;
    r.ring_ = ring_;
    r.exact_zero_ = false;
    r.e_ = -e_;
    r.N_ = N_;
    r.u_ = std::move(v);
    r.normalize();
    return r;
}

PadicBall operator/(const PadicBall& a, const PadicBall& b) { return a * b.inverse(); }

std::string PadicBall::to_string() const {
    if (exact_zero_) return "0";
    std::string s = ring_->p.get_str() + "^" + std::to_string(e_) + "*(";
    for (size_t i = 0; i < u_.size(); ++i) {
        if (i) s += " + ";
        s += u_[i].get_str();
        if (i) s += "*y" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s + ") + O(" + ring_->p.get_str() + "^" + std::to_string(e_ + N_) + ")";
}

std::vector<LocalRingPtr> unramified_blocks(const std::vector<Integer>& minpoly, const Integer& p, long N) {
    if (minpoly.empty() || minpoly.back() != 1) throw Error(ErrorKind::DomainError, "unramified_blocks: polynomial must be monic");
    ModPoly fb = reduce_mod(minpoly, p);
    if (gcd(fb, derivative(fb)).degree() != 0)
        throw Error(ErrorKind::RamifiedUnsupported,
                    "minimal polynomial is not squarefree mod " + p.get_str() + " (prime divides the discriminant)");
    auto factors = factor_squarefree_mod(fb);
    Integer pN = ipow(p, N);
    std::vector<LocalRingPtr> out;
    for (const auto& g : factors) {
        auto R = std::make_shared<LocalRing>();
        R->p = p;
        R->N = N;
        R->pN = pN;
        if (factors.size() == 1) {
            R->g = minpoly;
            for (auto& x : R->g) x = mod(x, pN);
        } else {
            ModPoly q, r;
            divmod(fb, g, q, r);
            ZPoly G, H;
            hensel_lift(minpoly, g, q.monic(), N, G, H);
            G.resize(g.c.size());
            G.back() = 1;
            R->g = std::move(G);
        }
        out.push_back(std::move(R));
    }
    return out;
}

}  // namespace dioph
