#include "dioph/qpoly.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numeric>

#include "dioph/error.hpp"

namespace dioph {

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

QPoly QPoly::from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (const auto& x : coeffs) v.emplace_back(x);
    return QPoly(std::move(v));
}

QPoly QPoly::monomial(const Rational& a, int k) {
    std::vector<Rational> v(k + 1);
    v[k] = a;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational QPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

ComplexBall QPoly::eval(const ComplexBall& z) const {
    ComplexBall r(z.bits());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r *= z;
        r.re += RealBall(*it, z.bits());
    }
    return r;
}

QPoly QPoly::derivative() const {
    std::vector<Rational> v;
    for (size_t i = 1; i < c.size(); ++i) v.push_back(c[i] * static_cast<long>(i));
    return QPoly(std::move(v));
}

RealBall QPoly::eval(const RealBall& x) const {
    RealBall r(x.bits());
    for (size_t i = c.size(); i-- > 0;) {
        r *= x;
        r += RealBall(c[i], x.bits());
    }
    return r;
}

QPoly QPoly::antiderivative() const {
    std::vector<Rational> d(c.size() + 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i) d[i + 1] = c[i] / Rational(static_cast<long>(i + 1));
    return QPoly(std::move(d));
}

QPoly QPoly::shifted(const Rational& a) const {
    // Horner in the polynomial ring: p(t + a) = (...(c_d (t+a) + c_{d-1})(t+a) ...).
    QPoly lin({a, Rational(1)});
    QPoly r;
    for (size_t i = c.size(); i-- > 0;) r = r * lin + QPoly({c[i]});
    return r;
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    Rational l = lead();
    QPoly r = *this;
    for (auto& x : r.c) x /= l;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> v(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(v));
}

QPoly operator*(const Rational& s, const QPoly& a) {
    std::vector<Rational> v = a.c;
    for (auto& x : v) x *= s;
    return QPoly(std::move(v));
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.is_zero()) throw Error(ErrorKind::DomainError, "polynomial division by zero");
    r = a;
    int db = b.degree();
    std::vector<Rational> qc(std::max(0, a.degree() - db + 1));
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rational f = r.lead() / b.lead();
        qc[k] = f;
        for (int i = 0; i <= db; ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    q = QPoly(std::move(qc));
}

QPoly operator%(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divmod(a, b, q, r);
    return r;
}

QPoly gcd(const QPoly& a0, const QPoly& b0) {
    QPoly a = a0, b = b0;
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly xgcd(const QPoly& a0, const QPoly& b0, QPoly& s, QPoly& t) {
    QPoly r0 = a0, r1 = b0;
    QPoly s0({Rational(1)}), s1, t0, t1({Rational(1)});
    while (!r1.is_zero()) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rational l = r0.lead();
    Rational inv = 1 / l;
    s = inv * s0;
    t = inv * t0;
    return r0.monic();
}

int count_real_roots(const QPoly& f0, const Rational& a, const Rational& b) {
    if (f0.is_zero()) throw Error(ErrorKind::DomainError, "count_real_roots of the zero polynomial");
    QPoly g = gcd(f0, f0.derivative());
    QPoly f, rem;
    divmod(f0, g, f, rem);  // squarefree part: same distinct roots
    std::vector<QPoly> seq{f, f.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = seq[seq.size() - 2] % seq.back();
        seq.push_back(Rational(-1) * r);
    }
    seq.pop_back();
    auto changes = [&](const Rational& x) {
        int n = 0, last = 0;
        for (const auto& p : seq) {
            int s = sgn(p.eval(x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++n;
            last = s;
        }
        return n;
    };
    return changes(a) - changes(b);
}

bool is_squarefree(const QPoly& f) {
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------- roots

namespace {

std::vector<std::complex<long double>> approximate_roots(const QPoly& f) {
    int d = f.degree();
    std::vector<std::complex<long double>> a(d + 1);
    QPoly m = f.monic();
    for (int i = 0; i <= d; ++i) a[i] = static_cast<long double>(m.c[i].get_d());
    // Cauchy bound for the initial circle.
    long double bound = 0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(a[i]));
    bound += 1;
    std::vector<std::complex<long double>> z(d);
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 0; k < d; ++k)
        z[k] = std::polar(bound * 0.5L, two_pi * k / d + 0.4L);
    auto eval = [&](std::complex<long double> x) {
        std::complex<long double> r = 0;
        for (int i = d; i >= 0; --i) r = r * x + a[i];
        return r;
    };
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int k = 0; k < d; ++k) {
            std::complex<long double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != k) den *= (z[k] - z[j]);
            if (std::abs(den) == 0) den = 1e-30L;
            std::complex<long double> step = eval(z[k]) / den;
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

ComplexBall to_ball(std::complex<long double> z, prec_t bits) {
    Rational re(static_cast<double>(z.real())), im(static_cast<double>(z.imag()));
    return ComplexBall(RealBall(re, bits), RealBall(im, bits));
}

// Newton refinement on midpoints; returns the refined point (zero-width ball).
ComplexBall newton_refine(const QPoly& f, const QPoly& df, ComplexBall z, prec_t bits) {
    auto expo = [](const RealBall& x) { return mpfr_zero_p(x.lo()) ? LONG_MIN / 2 : static_cast<long>(mpfr_get_exp(x.lo())); };
    for (int it = 0; it < 4 * bits + 100; ++it) {
        ComplexBall fz = f.eval(z), dz = df.eval(z);
        if (dz.contains_zero()) break;
        ComplexBall step = (fz / dz).midpoint();
        z = (z - step).midpoint();
        long es = std::max(expo(step.re), expo(step.im));
        long ez = std::max({expo(z.re), expo(z.im), 0L});
        if (es < ez - static_cast<long>(bits) + 4) break;
    }
    return z;
}

// d |f(z)| / |f'(z)| rounded up, or negative if not certifiable.
Rational disk_radius(const QPoly& f, const QPoly& df, const ComplexBall& z) {
    ComplexBall fz = f.eval(z), dz = df.eval(z);
    RealBall den = abs(dz);
    if (den.contains_zero()) return Rational(-1);
    RealBall r = RealBall(static_cast<long>(f.degree()), z.bits()) * abs(fz) / den;
    return r.upper();
}

bool boxes_disjoint(const ComplexBall& a, const ComplexBall& b) {
    auto sep = [](const RealBall& x, const RealBall& y) {
        return mpfr_less_p(x.hi(), y.lo()) || mpfr_less_p(y.hi(), x.lo());
    };
    return sep(a.re, b.re) || sep(a.im, b.im);
}

bool try_isolate(const QPoly& f, prec_t bits, std::vector<ComplexBall>& out) {
    QPoly df = f.derivative();
    int d = f.degree();
    auto approx = approximate_roots(f);
    std::vector<ComplexBall> disks, results;
    std::vector<bool> real;
    for (int k = 0; k < d; ++k) {
        ComplexBall z = newton_refine(f, df, to_ball(approx[k], bits), bits);
        Rational R = disk_radius(f, df, z);
        if (R < 0) return false;
        // A disk centred on the real axis with a unique root holds a real root.
        if (z.im.contains(Rational(0)) || abs(z.im.lower()) <= R) {
            ComplexBall x(z.re, RealBall(bits));
            Rational Rx = disk_radius(f, df, x);
            if (Rx >= 0) {
                disks.push_back(ComplexBall(x.re.inflated(Rx), RealBall(bits).inflated(Rx)));
                results.push_back(ComplexBall(x.re.inflated(Rx), RealBall(bits)));
                real.push_back(true);
                continue;
            }
        }
        disks.push_back(ComplexBall(z.re.inflated(R), z.im.inflated(R)));
        results.push_back(disks.back());
        real.push_back(false);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!boxes_disjoint(disks[i], disks[j])) return false;
    // Non-real disks must avoid the real axis, else the count of real roots is not settled.
    for (int i = 0; i < d; ++i)
        if (!real[i] && disks[i].im.contains_zero()) return false;
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (real[a] != real[b]) return static_cast<bool>(real[a]);
        double ra = results[a].re.mid_double(), rb = results[b].re.mid_double();
        if (real[a]) return ra < rb;
        if (std::abs(ra - rb) > 1e-9 * (1 + std::abs(ra))) return ra < rb;
        return results[a].im.mid_double() > results[b].im.mid_double();
    });
    out.clear();
    for (int i : idx) out.push_back(results[i]);
    return true;
}

}  // namespace

std::vector<ComplexBall> complex_roots(const QPoly& f, prec_t bits) {
    if (f.degree() < 1) throw Error(ErrorKind::DomainError, "complex_roots: degree < 1");
    if (!is_squarefree(f)) throw Error(ErrorKind::DomainError, "complex_roots: polynomial not squarefree");
    std::vector<ComplexBall> out;
    prec_t work = bits + 32;
    for (int attempt = 0; attempt < 6; ++attempt, work *= 2)
        if (try_isolate(f, work, out)) return out;
    throw Error(ErrorKind::PrecisionExhausted, "root isolation did not certify");
}

bool is_irreducible(const QPoly& f0) {
    int d = f0.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    if (d > 16) throw Error(ErrorKind::SizeLimit, "irreducibility test limited to degree 16");
    if (!is_squarefree(f0)) return false;
    // Primitive integer form, then the monic transform a^(d-1) F(y/a).
    Integer den = 1;
    for (const auto& x : f0.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> F(d + 1);
    for (int i = 0; i <= d; ++i) F[i] = Integer(f0.c[i] * den);
    Integer a = F[d];
    std::vector<Integer> G(d + 1);
    Integer apow = 1;  // a^(d-1-i)
    for (int i = d - 1; i >= 0; --i) {
        G[i] = F[i] * apow;
        apow *= a;
    }
    G[d] = 1;
    QPoly g = QPoly::from_integers(G);
    for (prec_t bits = 128; bits <= 4096; bits *= 2) {
        auto roots = complex_roots(g, bits);
        bool ambiguous = false;
        for (int k = 1; k <= d / 2; ++k) {
            std::vector<int> sel(k);
            std::iota(sel.begin(), sel.end(), 0);
            while (true) {
                // Product of (y - root) over the subset.
                std::vector<ComplexBall> prod{ComplexBall(Rational(1), bits)};
                for (int idx : sel) {
                    std::vector<ComplexBall> next(prod.size() + 1, ComplexBall(bits));
                    for (size_t i = 0; i < prod.size(); ++i) {
                        next[i + 1] += prod[i];
                        next[i] -= prod[i] * roots[idx];
                    }
                    prod = std::move(next);
                }
                bool candidate = true;
                std::vector<Integer> h(prod.size());
                for (size_t i = 0; i < prod.size() && candidate; ++i) {
                    if (!prod[i].im.contains(Rational(0))) {
                        candidate = false;
                        break;
                    }
                    Integer lo = ceil_rational(prod[i].re.lower()), hi = floor_rational(prod[i].re.upper());
                    if (lo > hi) candidate = false;
                    else if (lo < hi) ambiguous = true, candidate = false;
                    else h[i] = lo;
                }
                if (candidate) {
                    QPoly hp = QPoly::from_integers(h);
                    if ((g % hp).is_zero()) return false;
                }
                // next subset
                int i = k - 1;
                while (i >= 0 && sel[i] == d - k + i) --i;
                if (i < 0) break;
                ++sel[i];
                for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
            }
        }
        if (!ambiguous) return true;
    }
    throw Error(ErrorKind::PrecisionExhausted, "irreducibility test undecided");
}

// ---------------------------------------------------------------- ModPoly

namespace {

Integer mod(const Integer& x, const Integer& p) {
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

Integer inv_mod(const Integer& x, const Integer& p) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error(ErrorKind::DomainError, "non-invertible residue");
    return r;
}

}  // namespace

ModPoly::ModPoly(Integer modulus, std::vector<Integer> coeffs) : p(std::move(modulus)), c(std::move(coeffs)) {
    for (auto& x : c) x = mod(x, p);
    trim();
}

void ModPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

ModPoly ModPoly::monic() const {
    if (is_zero()) return *this;
    Integer inv = inv_mod(c.back(), p);
    std::vector<Integer> v = c;
    for (auto& x : v) x *= inv;
    return ModPoly(p, std::move(v));
}

ModPoly reduce_mod(const std::vector<Integer>& f, const Integer& p) { return ModPoly(p, f); }

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    std::vector<Integer> v(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = (i < a.c.size() ? a.c[i] : Integer(0)) + (i < b.c.size() ? b.c[i] : Integer(0));
    return ModPoly(a.p, std::move(v));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::vector<Integer> v(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = (i < a.c.size() ? a.c[i] : Integer(0)) - (i < b.c.size() ? b.c[i] : Integer(0));
    return ModPoly(a.p, std::move(v));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p, {});
    std::vector<Integer> v(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return ModPoly(a.p, std::move(v));
}

void divmod(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
    if (b.is_zero()) throw Error(ErrorKind::DomainError, "polynomial division by zero mod p");
    const Integer& p = a.p;
    Integer inv = inv_mod(b.c.back(), p);
    std::vector<Integer> rc = a.c;
    int db = b.degree();
    std::vector<Integer> qc(std::max(0, a.degree() - db + 1));
    for (int k = a.degree() - db; k >= 0; --k) {
        Integer f = mod(rc[k + db] * inv, p);
        qc[k] = f;
        if (f != 0)
            for (int i = 0; i <= db; ++i) rc[i + k] = mod(rc[i + k] - f * b.c[i], p);
    }
    rc.resize(std::min<size_t>(rc.size(), static_cast<size_t>(std::max(db, 0))));
    q = ModPoly(p, std::move(qc));
    r = ModPoly(p, std::move(rc));
}

ModPoly operator%(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    divmod(a, b, q, r);
    return r;
}

ModPoly gcd(const ModPoly& a0, const ModPoly& b0) {
    ModPoly a = a0, b = b0;
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ModPoly xgcd(const ModPoly& a0, const ModPoly& b0, ModPoly& s, ModPoly& t) {
    const Integer& p = a0.p;
    ModPoly r0 = a0, r1 = b0;
    ModPoly s0(p, {Integer(1)}), s1(p, {}), t0(p, {}), t1(p, {Integer(1)});
    while (!r1.is_zero()) {
        ModPoly q, r;
        divmod(r0, r1, q, r);
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    ModPoly inv(p, {inv_mod(r0.c.back(), p)});
    s = inv * s0;
    t = inv * t0;
    return r0.monic();
}

ModPoly powmod(const ModPoly& a, const Integer& e, const ModPoly& m) {
    ModPoly result(a.p, {Integer(1)});
    result = result % m;
    ModPoly base = a % m;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base) % m;
    }
    return result;
}

ModPoly derivative(const ModPoly& a) {
    std::vector<Integer> v;
    for (size_t i = 1; i < a.c.size(); ++i) v.push_back(a.c[i] * static_cast<unsigned long>(i));
    return ModPoly(a.p, std::move(v));
}

namespace {

void edf(const ModPoly& g, int degree, gmp_randclass& rng, std::vector<ModPoly>& out) {
    if (g.degree() == degree) {
        out.push_back(g.monic());
        return;
    }
    const Integer& p = g.p;
    while (true) {
        std::vector<Integer> rc(g.degree());
        for (auto& x : rc) x = rng.get_z_range(p);
        ModPoly a(p, rc);
        if (a.degree() < 1) continue;
        ModPoly b;
        if (p == 2) {
            // Absolute trace a + a^2 + ... + a^(2^(degree-1)).
            ModPoly t = a % g, acc = a % g;
            for (int i = 1; i < degree; ++i) {
                t = (t * t) % g;
                acc = acc + t;
            }
            b = acc;
        } else {
            Integer e;
            mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(degree));
            e = (e - 1) / 2;
            b = powmod(a, e, g) - ModPoly(p, {Integer(1)});
        }
        ModPoly d = gcd(b, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            ModPoly q, r;
            divmod(g, d, q, r);
            edf(d, degree, rng, out);
            edf(q.monic(), degree, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f0, unsigned long seed) {
    const Integer& p = f0.p;
    ModPoly f = f0.monic();
    std::vector<ModPoly> out;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    ModPoly x(p, {Integer(0), Integer(1)});
    ModPoly h = x;
    for (int i = 1; f.degree() >= 2 * i; ++i) {
        h = powmod(h, p, f);
        ModPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            edf(g, i, rng, out);
            ModPoly q, r;
            divmod(f, g, q, r);
            f = q.monic();
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
    });
    return out;
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly v(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
    for (auto& x : v) x = mod(x, m);
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

ZPoly zrem_monic(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r = a;
    for (auto& x : r) x = mod(x, m);
    int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(r.size()) - 1 - db; k >= 0; --k) {
        Integer f = r[k + db];
        if (f != 0)
            for (int i = 0; i <= db; ++i) r[i + k] = mod(r[i + k] - f * b[i], m);
    }
    if (static_cast<int>(r.size()) > db) r.resize(db);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

void hensel_lift(const ZPoly& f, const ModPoly& g, const ModPoly& h, long k, ZPoly& G, ZPoly& H) {
    const Integer& p = g.p;
    ModPoly s, t;
    ModPoly one = xgcd(g, h, s, t);
    if (one.degree() != 0) throw Error(ErrorKind::DomainError, "hensel_lift: factors not coprime mod p");
    G = g.c;
    H = h.c;
    Integer pj = p;  // p^j
    for (long j = 1; j < k; ++j) {
        Integer pj1 = pj * p;
        ZPoly gh = zmul_mod(G, H, pj1);
        ZPoly e(std::max(f.size(), gh.size()));
        for (size_t i = 0; i < e.size(); ++i) {
            Integer v = (i < f.size() ? f[i] : Integer(0)) - (i < gh.size() ? gh[i] : Integer(0));
            v = mod(v, pj1);
            if (!mpz_divisible_p(v.get_mpz_t(), pj.get_mpz_t()))
                throw Error(ErrorKind::InternalMismatch, "hensel_lift: residual not divisible");
            e[i] = v / pj;
        }
        ModPoly ep(p, e);
        ModPoly qq, a;
        divmod(t * ep, g, qq, a);
        ModPoly b = s * ep + qq * h;
        auto add = [&](ZPoly& X, const ModPoly& d) {
            if (X.size() < d.c.size()) X.resize(d.c.size());
            for (size_t i = 0; i < d.c.size(); ++i) X[i] = mod(X[i] + pj * d.c[i], pj1);
        };
        add(G, a);
        add(H, b);
        pj = pj1;
    }
}

}  // namespace dioph
