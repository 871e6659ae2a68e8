#include "dioph/numfield.hpp"

#include "dioph/error.hpp"
#include "dioph/linalg.hpp"

namespace dioph {

namespace {

// Reduce a coefficient vector modulo the monic minimal polynomial.
std::vector<Rational> reduce(std::vector<Rational> a, const std::vector<Integer>& m) {
    int q = static_cast<int>(m.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= q; --k) {
        if (a[k] == 0) continue;
        Rational f = a[k];
        for (int i = 0; i <= q; ++i) a[k - q + i] -= f * m[i];
    }
    a.resize(q);
    return a;
}

std::vector<std::vector<Rational>> mult_matrix_of(const std::vector<Rational>& x, const std::vector<Integer>& m) {
    int q = static_cast<int>(m.size()) - 1;
    std::vector<std::vector<Rational>> M(q, std::vector<Rational>(q));
    for (int j = 0; j < q; ++j) {
        std::vector<Rational> prod(x.size() + j);
        for (size_t i = 0; i < x.size(); ++i) prod[i + j] = x[i];
        prod = reduce(std::move(prod), m);
        for (int i = 0; i < q; ++i) M[i][j] = prod[i];
    }
    return M;
}

}  // namespace

NumberField::NumberField(std::vector<Integer> minpoly) : minpoly_(std::move(minpoly)) {
    while (!minpoly_.empty() && minpoly_.back() == 0) minpoly_.pop_back();
    if (minpoly_.size() < 3) throw Error(ErrorKind::DomainError, "number field needs degree >= 2");
    if (minpoly_.back() != 1) throw Error(ErrorKind::DomainError, "minimal polynomial must be monic");
    minpoly_q_ = QPoly::from_integers(minpoly_);
    if (degree() > 8) throw Error(ErrorKind::SizeLimit, "number fields limited to degree 8");
    if (!is_irreducible(minpoly_q_)) throw Error(ErrorKind::NotIrreducible, "minimal polynomial is reducible over Q");
    // disc = (-1)^(q(q-1)/2) N(f'(theta)) for monic f.
    std::vector<Rational> df = minpoly_q_.derivative().c;
    Rational n = determinant(mult_matrix_of(df, minpoly_));
    int q = degree();
    if ((q * (q - 1) / 2) % 2) n = -n;
    disc_ = Integer(n);
}

std::string NumberField::to_string() const {
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Integer& a = minpoly_[i];
        if (a == 0) continue;
        std::string mag = Integer(abs(a)).get_str();
        s += s.empty() ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + ");
        if (i == 0) s += mag;
        else {
            if (abs(a) != 1) s += mag + "*";
            s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

FieldPtr make_field(std::vector<Integer> minpoly) { return std::make_shared<const NumberField>(std::move(minpoly)); }

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a == b || a->minpoly() == b->minpoly()) return a;
    throw Error(ErrorKind::DomainError, "elements of different number fields");
}

FieldElem::FieldElem(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
    size_t q = field_ ? static_cast<size_t>(field_->degree()) : 1;
    if (c_.size() > q) {
        if (!field_) throw Error(ErrorKind::DomainError, "rational element with several coordinates");
        c_ = reduce(std::move(c_), field_->minpoly());
    }
    c_.resize(q);
}

FieldElem FieldElem::generator(FieldPtr field) {
    std::vector<Rational> v(field->degree());
    v[1] = 1;
    return FieldElem(std::move(field), std::move(v));
}

FieldElem FieldElem::embed(const Rational& x, FieldPtr field) {
    if (!field) return FieldElem(x);
    std::vector<Rational> v(field->degree());
    v[0] = x;
    return FieldElem(std::move(field), std::move(v));
}

Rational FieldElem::coord(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

bool FieldElem::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElem::to_rational() const {
    if (!is_rational()) throw Error(ErrorKind::DomainError, "element is not rational");
    return c_[0];
}

FieldElem FieldElem::promoted(const FieldPtr& field) const {
    if (!field || field_ == field) return *this;
    if (field_) {
        common_field(field_, field);
        return FieldElem(field, c_);
    }
    return embed(c_[0], field);
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    FieldPtr f = common_field(field_, o.field_);
    *this = promoted(f);
    FieldElem b = o.promoted(f);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    FieldPtr f = common_field(field_, o.field_);
    *this = promoted(f);
    FieldElem b = o.promoted(f);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
    if (!field_ && !o.field_) {
        c_[0] *= o.c_[0];
        return *this;
    }
    if (o.is_rational() || is_rational()) {
        FieldPtr f = common_field(field_, o.field_);
        const FieldElem& scal = o.is_rational() ? o : *this;
        const FieldElem& vec = o.is_rational() ? *this : o;
        Rational s = scal.c_[0];
        FieldElem r = vec.promoted(f);
        for (auto& x : r.c_) x *= s;
        *this = std::move(r);
        return *this;
    }
    FieldPtr f = common_field(field_, o.field_);
    std::vector<Rational> prod(2 * f->degree() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    *this = FieldElem(f, reduce(std::move(prod), f->minpoly()));
    return *this;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DomainError, "inverse of zero");
    if (!field_ || is_rational()) return FieldElem::embed(Rational(1) / c_[0], field_);
    QPoly s, t;
    QPoly g = xgcd(QPoly(c_), field_->minpoly_q(), s, t);
    if (g.degree() != 0) throw Error(ErrorKind::InternalMismatch, "element shares a factor with the minimal polynomial");
    return FieldElem(field_, s.c);
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
    if (o.is_rational()) {
        if (o.c_[0] == 0) throw Error(ErrorKind::DomainError, "division by zero");
        FieldPtr f = common_field(field_, o.field_);
        *this = promoted(f);
        for (auto& x : c_) x /= o.c_[0];
        return *this;
    }
    return *this *= o.inverse();
}

std::vector<std::vector<Rational>> FieldElem::mult_matrix() const {
    if (!field_) return {{c_[0]}};
    return mult_matrix_of(c_, field_->minpoly());
}

Rational FieldElem::norm() const {
    if (!field_) return c_[0];
    return determinant(mult_matrix());
}

int FieldElem::algebraic_degree() const {
    if (!field_) return 1;
    int q = field_->degree();
    Matrix<Rational> powers;
    FieldElem p = FieldElem::embed(Rational(1), field_);
    for (int i = 0; i < q; ++i) {
        powers.push_back(p.c_);
        p *= *this;
    }
    return rank(powers);
}

std::string FieldElem::to_string() const {
    if (!field_) return dioph::to_string(c_[0]);
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) s += (i ? ", " : "") + dioph::to_string(c_[i]);
    return s + "]";
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    FieldPtr f = common_field(a.field_, b.field_);
    return a.promoted(f).c_ == b.promoted(f).c_;
}

FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

}  // namespace dioph
