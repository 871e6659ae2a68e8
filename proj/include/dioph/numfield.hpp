#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dioph/qpoly.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Q(theta) with theta a root of a monic irreducible integer polynomial.
class NumberField {
public:
    // Coefficients low to high; must be monic of degree >= 2 and irreducible.
    explicit NumberField(std::vector<Integer> minpoly);

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Integer>& minpoly() const { return minpoly_; }
    const QPoly& minpoly_q() const { return minpoly_q_; }
    // Discriminant of the minimal polynomial.
    const Integer& discriminant() const { return disc_; }
    std::string to_string() const;

private:
    std::vector<Integer> minpoly_;
    QPoly minpoly_q_;
    Integer disc_;
};

using FieldPtr = std::shared_ptr<const NumberField>;
FieldPtr make_field(std::vector<Integer> minpoly);

// Element of Q (field == nullptr, one coordinate) or of a number field in the
// power basis 1, theta, ..., theta^(q-1). Mixed operations promote Q-elements.
class FieldElem {
public:
    FieldElem() : c_{Rational(0)} {}
    FieldElem(const Rational& x) : c_{x} {}  // NOLINT: implicit on purpose
    FieldElem(long x) : c_{Rational(x)} {}   // NOLINT
    FieldElem(FieldPtr field, std::vector<Rational> coords);
    static FieldElem generator(FieldPtr field);
    static FieldElem embed(const Rational& x, FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }
    // Coordinate i in the power basis; zero beyond the stored length.
    Rational coord(int i) const;

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;
    FieldElem promoted(const FieldPtr& field) const;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem& operator/=(const FieldElem& o);
    FieldElem inverse() const;

    // Norm and the degree over Q of the generated subfield.
    Rational norm() const;
    int algebraic_degree() const;
    // Rational q x q matrix of multiplication by this element (columns = images of basis).
    std::vector<std::vector<Rational>> mult_matrix() const;

    std::string to_string() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

private:
    FieldPtr field_;
    std::vector<Rational> c_;
};

FieldElem operator+(FieldElem a, const FieldElem& b);
FieldElem operator-(FieldElem a, const FieldElem& b);
FieldElem operator*(FieldElem a, const FieldElem& b);
FieldElem operator/(FieldElem a, const FieldElem& b);

inline bool is_zero(const FieldElem& x) { return x.is_zero(); }

// The common field of two operands (nullptr = Q); throws on a genuine mismatch.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace dioph
