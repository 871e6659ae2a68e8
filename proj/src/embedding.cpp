#include "dioph/embedding.hpp"

#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

long padic_digits(const Integer& p, prec_t bits) {
    double lp = std::log2(p.get_d());
    return static_cast<long>(std::ceil(static_cast<double>(bits) / lp)) + 2;
}

std::string Embedding::describe() const {
    if (!field) return "identity at " + place.to_string();
    if (place.archimedean) return "theta -> " + root.re.mid_string(20) + (root.is_real() ? "" : " + i*(" + root.im.mid_string(20) + ")");
    std::string s = "theta -> y mod (";
    for (size_t i = ring->g.size(); i-- > 0;) {
        s += ring->g[i].get_str() + (i ? "*y^" + std::to_string(i) + " + " : "");
    }
    return s + ") over Z_" + place.p.get_str() + " to precision " + place.p.get_str() + "^" + std::to_string(ring->N);
}

std::vector<Embedding> embeddings(const FieldPtr& field, const Place& v, prec_t bits) {
    if (bits < 32) throw Error(ErrorKind::InputError, "precision must be at least 32 bits");
    std::vector<Embedding> out;
    if (v.archimedean) {
        auto roots = complex_roots(field->minpoly_q(), bits);
        for (size_t i = 0; i < roots.size(); ++i) {
            Embedding e;
            e.field = field;
            e.place = v;
            e.bits = bits;
            e.root = roots[i];
            e.block = static_cast<int>(i);
            out.push_back(std::move(e));
        }
        return out;
    }
    for (auto& e : padic_blocks(field, v, bits))
        if (e.local_degree() == 1) out.push_back(std::move(e));
    return out;
}

std::vector<Embedding> padic_blocks(const FieldPtr& field, const Place& v, prec_t bits) {
    if (v.archimedean) throw Error(ErrorKind::PlaceMismatch, "padic_blocks needs a finite place");
    auto rings = unramified_blocks(field->minpoly(), v.p, padic_digits(v.p, bits));
    std::vector<Embedding> out;
    for (size_t i = 0; i < rings.size(); ++i) {
        Embedding e;
        e.field = field;
        e.place = v;
        e.bits = bits;
        e.ring = rings[i];
        e.block = static_cast<int>(i);
        out.push_back(std::move(e));
    }
    return out;
}

LocalRingPtr trivial_ring(const Integer& p, long N) {
    auto R = std::make_shared<LocalRing>();
    R->p = p;
    R->N = N;
    mpz_pow_ui(R->pN.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(N));
    R->g = {Integer(0), Integer(1)};
    return R;
}

Embedding rational_embedding(const Place& v, prec_t bits) {
    Embedding e;
    e.place = v;
    e.bits = bits;
    if (!v.archimedean) e.ring = trivial_ring(v.p, padic_digits(v.p, bits));
    return e;
}

Embedding refine(const Embedding& e, prec_t bits) {
    if (bits <= e.bits) return e;
    if (!e.field) return rational_embedding(e.place, bits);
    if (!e.place.archimedean) {
        auto blocks = padic_blocks(e.field, e.place, bits);
        return blocks.at(e.block);
    }
    auto roots = complex_roots(e.field->minpoly_q(), bits);
    auto overlap = [](const RealBall& a, const RealBall& b) {
        return !(mpfr_less_p(a.hi(), b.lo()) || mpfr_less_p(b.hi(), a.lo()));
    };
    for (size_t i = 0; i < roots.size(); ++i) {
        if (overlap(roots[i].re, e.root.re) && overlap(roots[i].im, e.root.im)) {
            Embedding r = e;
            r.bits = bits;
            r.root = roots[i];
            r.block = static_cast<int>(i);
            return r;
        }
    }
    throw Error(ErrorKind::InternalMismatch, "refined roots do not match the embedding");
}

EmbeddedValue embed_rational(const Place& v, const Rational& x, const LocalRingPtr& ring, prec_t bits) {
    if (v.archimedean) return ComplexBall(x, bits);
    return PadicBall::from_rational(x, ring);
}

EmbeddedValue eval_embedded(const Embedding& e0, const FieldElem& x, prec_t bits) {
    if (x.field() && e0.field && x.field() != e0.field && x.field()->minpoly() != e0.field->minpoly())
        throw Error(ErrorKind::DomainError, "element does not belong to the embedded field");
    if (!e0.field && x.field()) {
        if (!x.is_rational()) throw Error(ErrorKind::DomainError, "irrational element under the identity embedding of Q");
        return eval_embedded(e0, FieldElem(x.to_rational()), bits);
    }
    const Embedding& e = bits > e0.bits ? refine(e0, bits) : e0;
    const auto& c = x.coords();
    if (e.place.archimedean) {
        prec_t b = std::max(bits, e.bits);
        if (!x.field()) return ComplexBall(c[0], b);
        ComplexBall r(b);
        for (size_t i = c.size(); i-- > 0;) {
            r *= e.root;
            r.re += RealBall(c[i], b);
        }
        return r;
    }
    if (!x.field()) return PadicBall::from_rational(c[0], e.ring);
    PadicBall theta;
    const LocalRing& R = *e.ring;
    if (R.degree() == 1) {
        theta = PadicBall::from_coords({Integer(-R.g[0])}, e.ring);
    } else {
        std::vector<Integer> u(R.degree(), Integer(0));
        u[1] = 1;
        theta = PadicBall::from_coords(std::move(u), e.ring);
    }
    PadicBall r = PadicBall::zero(e.ring);
    for (size_t i = c.size(); i-- > 0;) r = r * theta + PadicBall::from_rational(c[i], e.ring);
    return r;
}

RealBall abs_embedded(const EmbeddedValue& z, prec_t bits) {
    if (auto* c = std::get_if<ComplexBall>(&z)) return abs(*c);
    return RealBall(std::get<PadicBall>(z).abs(), bits);
}

bool is_exact_zero(const EmbeddedValue& z) {
    if (auto* c = std::get_if<ComplexBall>(&z)) return c->re.is_point() && c->im.is_point() && c->contains_zero();
    return std::get<PadicBall>(z).is_exact_zero();
}

}  // namespace dioph
