#include "dioph/heights.hpp"

#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

namespace {

Integer lcm_dens(const std::vector<const FieldElem*>& xs) {
    Integer den = 1;
    for (auto* x : xs)
        for (const auto& c : x->coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    return den;
}

}  // namespace

ProjPoint ProjPoint::rational(const Rational& x0, const Rational& x1) {
    if (x0 == 0 && x1 == 0) throw Error(ErrorKind::DomainError, "(0:0) is not a point of P^1");
    Integer den;
    mpz_lcm(den.get_mpz_t(), x0.get_den_mpz_t(), x1.get_den_mpz_t());
    Integer a = Integer(x0 * den), b = Integer(x1 * den), g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    ProjPoint pt;
    pt.x0_ = FieldElem(Rational(a));
    pt.x1_ = FieldElem(Rational(b));
    return pt;
}

ProjPoint::ProjPoint(FieldElem x0, FieldElem x1) {
    if (x0.is_zero() && x1.is_zero()) throw Error(ErrorKind::DomainError, "(0:0) is not a point of P^1");
    FieldPtr f = common_field(x0.field(), x1.field());
    if (!f) {
        *this = rational(x0.to_rational(), x1.to_rational());
        return;
    }
    x0_ = x0.promoted(f);
    x1_ = x1.promoted(f);
}

Integer ProjPoint::num0() const {
    if (!is_rational() || field()) throw Error(ErrorKind::DomainError, "num0 needs a Q-point");
    return Integer(x0_.to_rational());
}

Integer ProjPoint::num1() const {
    if (!is_rational() || field()) throw Error(ErrorKind::DomainError, "num1 needs a Q-point");
    return Integer(x1_.to_rational());
}

FieldElem ProjPoint::affine() const {
    if (x0_.is_zero()) throw Error(ErrorKind::DomainError, "point at infinity has no affine coordinate");
    return x1_ / x0_;
}

std::string ProjPoint::to_string() const { return "(" + x0_.to_string() + " : " + x1_.to_string() + ")"; }

bool operator==(const ProjPoint& a, const ProjPoint& b) { return (a.x0_ * b.x1_ - a.x1_ * b.x0_).is_zero(); }

RealBall height(const ProjPoint& x, prec_t bits) {
    if (!x.field()) {
        Integer a = x.num0(), b = x.num1();
        return log_rational(Rational(a * a + b * b), bits) * RealBall(Rational(1, 2), bits);
    }
    if (x.x0().is_zero() || x.x1().is_zero()) return RealBall(bits);
    FieldPtr K = x.field();
    int q = K->degree();
    // Integral primitive representative in Z[theta]; rescaling by Q* leaves h unchanged.
    Integer den = lcm_dens({&x.x0(), &x.x1()});
    FieldElem y0 = x.x0() * FieldElem(Rational(den)), y1 = x.x1() * FieldElem(Rational(den));
    Integer g = 0;
    for (const FieldElem* y : {&y0, &y1})
        for (const auto& c : y->coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    y0 = y0 / FieldElem(Rational(g));
    y1 = y1 / FieldElem(Rational(g));
    ProjPoint y(y0, y1);

    RealBall total(bits + 16);
    for (const auto& e : embeddings(K, Place::infinity(), bits + 16)) {
        EmbeddedPoint z = embed_point(y, e, bits + 16);
        total += log(point_norm(z, bits + 16));
    }
    // Finite places: only primes dividing both norms can see a non-unit coordinate.
    Integer N0 = Integer(y0.norm()), N1 = Integer(y1.norm()), G;
    mpz_gcd(G.get_mpz_t(), N0.get_mpz_t(), N1.get_mpz_t());
    if (G != 0 && abs(G) != 1) {
        for (const auto& [p, mult] : factorize(G)) {
            if (K->discriminant() % p == 0)
                throw Error(ErrorKind::RamifiedUnsupported,
                            "height needs the place " + p.get_str() + ", which divides the discriminant");
            long need = valuation(N0, p) + valuation(N1, p) + 8;
            prec_t pb = std::max<prec_t>(bits, static_cast<prec_t>(need * std::log2(p.get_d())) + 8);
            for (const auto& e : padic_blocks(K, Place::finite(p), pb)) {
                auto v0 = std::get<PadicBall>(eval_embedded(e, y0, pb));
                auto v1 = std::get<PadicBall>(eval_embedded(e, y1, pb));
                long v = std::min(v0.valuation(), v1.valuation());
                if (v != 0)
                    total -= RealBall(static_cast<long>(v) * e.local_degree(), bits + 16) * log_rational(Rational(p), bits + 16);
            }
        }
    }
    return (total / RealBall(static_cast<long>(q), bits + 16)).with_bits(bits);
}

EmbeddedPoint embed_point(const ProjPoint& x, const Embedding& sigma, prec_t bits) {
    return EmbeddedPoint{sigma.place, eval_embedded(sigma, x.x0(), bits), eval_embedded(sigma, x.x1(), bits)};
}

EmbeddedPoint embed_rational_point(const ProjPoint& x, const Place& v, const LocalRingPtr& ring, prec_t bits) {
    if (x.field()) throw Error(ErrorKind::DomainError, "embed_rational_point needs a Q-point");
    if (v.archimedean)
        return EmbeddedPoint{v, ComplexBall(x.x0().to_rational(), bits), ComplexBall(x.x1().to_rational(), bits)};
    LocalRingPtr R = ring ? ring : trivial_ring(v.p, padic_digits(v.p, bits));
    return EmbeddedPoint{v, PadicBall::from_rational(x.x0().to_rational(), R),
                         PadicBall::from_rational(x.x1().to_rational(), R)};
}

RealBall point_norm(const EmbeddedPoint& z, prec_t bits) {
    if (z.place.archimedean) {
        const auto& a = std::get<ComplexBall>(z.z0);
        const auto& b = std::get<ComplexBall>(z.z1);
        return sqrt(abs2(a) + abs2(b));
    }
    Rational a = std::get<PadicBall>(z.z0).abs(), b = std::get<PadicBall>(z.z1).abs();
    return RealBall(a > b ? a : b, bits);
}

Distance distance_v(const EmbeddedPoint& x, const EmbeddedPoint& y, prec_t bits) {
    if (!(x.place == y.place)) throw Error(ErrorKind::PlaceMismatch, "points embedded at different places");
    Distance d{RealBall(bits), std::nullopt, false};
    if (x.place.archimedean) {
        ComplexBall cross = std::get<ComplexBall>(x.z0) * std::get<ComplexBall>(y.z1) -
                            std::get<ComplexBall>(x.z1) * std::get<ComplexBall>(y.z0);
        if (cross.re.is_point() && cross.im.is_point() && cross.contains_zero()) {
            d.is_zero = true;
            return d;
        }
        d.value = abs(cross) / (point_norm(x, bits) * point_norm(y, bits));
        return d;
    }
    const auto& x0 = std::get<PadicBall>(x.z0);
    const auto& y0 = std::get<PadicBall>(y.z0);
    if (x0.ring() && y0.ring() && x0.ring() != y0.ring()) {
        const auto& r1 = *x0.ring();
        const auto& r2 = *y0.ring();
        if (!(r1.p == r2.p && r1.g == r2.g)) throw Error(ErrorKind::PlaceMismatch, "p-adic points live in different local rings");
    }
    PadicBall cross = x0 * std::get<PadicBall>(y.z1) - std::get<PadicBall>(x.z1) * y0;
    if (cross.is_exact_zero()) {
        d.is_zero = true;
        return d;
    }
    auto nx = [](const EmbeddedPoint& z) {
        Rational a = std::get<PadicBall>(z.z0).abs(), b = std::get<PadicBall>(z.z1).abs();
        return a > b ? a : b;
    };
    Rational val = cross.abs() / (nx(x) * nx(y));
    d.exact = val;
    d.value = RealBall(val, bits);
    return d;
}

Rational distance_inf_squared(const ProjPoint& x, const ProjPoint& y) {
    Integer a = x.num0(), b = x.num1(), c = y.num0(), e = y.num1();
    Integer delta = a * e - b * c;
    return Rational(delta * delta) / Rational((a * a + b * b) * (c * c + e * e));
}

Distance distance_rational(const ProjPoint& x, const ProjPoint& y, const Place& v, prec_t bits) {
    Distance d{RealBall(bits), std::nullopt, false};
    Integer a = x.num0(), b = x.num1(), c = y.num0(), e = y.num1();
    Integer delta = a * e - b * c;
    if (delta == 0) {
        d.is_zero = true;
        return d;
    }
    if (v.archimedean) {
        d.value = sqrt(RealBall(distance_inf_squared(x, y), bits));
        return d;
    }
    // Coprime representatives have max-norm 1 at every finite place.
    Rational val = abs_value(v, Rational(delta));
    d.exact = val;
    d.value = RealBall(val, bits);
    return d;
}

RealBall local_proximity(const ProjPoint& x, const ProximityTarget& t, prec_t bits) {
    prec_t b = bits;
    for (int attempt = 0; attempt < 5; ++attempt, b *= 2) {
        try {
            Embedding s = refine(t.sigma, b);
            EmbeddedPoint ea = embed_point(t.a, s, b);
            EmbeddedPoint ex = embed_point(x, s, b);
            Distance d = distance_v(ea, ex, b);
            if (d.is_zero) throw Error(ErrorKind::DistanceZero, "x coincides with the target " + t.a.to_string() + " at " + s.place.to_string());
            if (mpfr_sgn(d.value.lo()) > 0) return (-log(d.value)).with_bits(bits);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::PrecisionExhausted) throw;
        }
    }
    throw Error(ErrorKind::PrecisionExhausted, "distance to target not separated from zero");
}

RealBall proximity(const ProjPoint& x, const std::vector<ProximityTarget>& targets, prec_t bits) {
    RealBall total(bits);
    for (const auto& t : targets) total += local_proximity(x, t, bits);
    return total;
}

LiouvilleReport liouville_check(const ProjPoint& x, const ProjPoint& y, prec_t bits) {
    if (x.field() || y.field()) throw Error(ErrorKind::DomainError, "liouville_check needs Q-points");
    if (x == y) throw Error(ErrorKind::EqualPoints, "liouville_check needs distinct points");
    LiouvilleReport rep{false, Rational(0), Rational(0), RealBall(bits), RealBall(bits), {}};
    Integer a = x.num0(), b = x.num1(), c = y.num0(), e = y.num1();
    Integer delta = a * e - b * c;
    rep.cross_term = delta;
    Rational d_inf2 = distance_inf_squared(x, y);
    Rational prod = d_inf2 * Rational((a * a + b * b) * (c * c + e * e));
    RealBall lhs = -log(RealBall(d_inf2, bits)) * RealBall(Rational(1, 2), bits);
    if (abs(delta) != 1) {
        for (const auto& [p, m] : factorize(delta)) {
            Place v = Place::finite(p);
            Distance d = distance_rational(x, y, v, bits);
            prod *= *d.exact * *d.exact;
            lhs -= log(RealBall(*d.exact, bits));
            rep.primes.push_back(p);
        }
    }
    rep.product_identity = prod;
    rep.holds = prod == 1;
    rep.lhs = lhs;
    rep.rhs = height(x, bits) + height(y, bits);
    return rep;
}

}  // namespace dioph
