#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dioph/combinatorics.hpp"
#include "dioph/heights.hpp"
#include "dioph/linalg.hpp"
#include "dioph/numfield.hpp"

namespace dioph {

// Binary form sum_l c[l] T0^{r-l} T1^l of degree r = c.size() - 1.
struct BinaryForm {
    std::vector<FieldElem> c;

    BinaryForm() = default;
    explicit BinaryForm(std::vector<FieldElem> coeffs) : c(std::move(coeffs)) {}
    static BinaryForm zero(int r) { return BinaryForm(std::vector<FieldElem>(r + 1, FieldElem(0))); }
    static BinaryForm monomial(int r, int l, const FieldElem& a = FieldElem(1));
    // x0 T1 - x1 T0, vanishing at (x0 : x1).
    static BinaryForm vanishing_at(const FieldElem& x0, const FieldElem& x1);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const;
    FieldPtr field() const;
    std::string to_string() const;
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c == b.c; }
};

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator*(const FieldElem& s, const BinaryForm& a);

// Section of O(r) on (P^1)^n: coefficients of the monomials
// prod_i T_{i0}^{r_i - l_i} T_{i1}^{l_i}; zero coefficients are never stored.
class MultiHomogPoly {
public:
    using Exponent = std::vector<long>;

    MultiHomogPoly() = default;
    explicit MultiHomogPoly(MultiDegree r) : r_(std::move(r)) {}
    static MultiHomogPoly monomial(const MultiDegree& r, const Exponent& l, const FieldElem& c = FieldElem(1));
    // Tensor product of one binary form per factor.
    static MultiHomogPoly tensor(const std::vector<BinaryForm>& forms);
    // From a coefficient vector in box order (l_1 slowest).
    static MultiHomogPoly from_vector(const MultiDegree& r, const std::vector<Rational>& v);

    const MultiDegree& degree() const { return r_; }
    std::size_t n() const { return r_.n(); }
    const std::map<Exponent, FieldElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldPtr field() const;
    FieldElem coeff(const Exponent& l) const;
    void set(const Exponent& l, const FieldElem& c);
    void add(const Exponent& l, const FieldElem& c);
    // Coefficients in box order; requires rational coefficients.
    std::vector<Rational> to_vector() const;
    std::string to_string() const;

    friend bool operator==(const MultiHomogPoly& a, const MultiHomogPoly& b) {
        return a.r_ == b.r_ && a.terms_ == b.terms_;
    }

private:
    void check_exponent(const Exponent& l) const;
    MultiDegree r_;
    std::map<Exponent, FieldElem> terms_;
};

MultiHomogPoly operator+(const MultiHomogPoly& a, const MultiHomogPoly& b);
MultiHomogPoly operator-(const MultiHomogPoly& a, const MultiHomogPoly& b);
// Product of sections: multidegrees add.
MultiHomogPoly operator*(const MultiHomogPoly& a, const MultiHomogPoly& b);
MultiHomogPoly operator*(const FieldElem& s, const MultiHomogPoly& a);

// Position of exponent l in box order.
std::size_t box_index(const MultiDegree& r, const std::vector<long>& l);

struct Weight {
    std::vector<Rational> b;

    Weight() = default;
    explicit Weight(std::vector<Rational> w);
    // The weight 1/r = (1/r_1, ..., 1/r_n).
    static Weight reciprocal(const MultiDegree& r);
    static Weight from_integers(const std::vector<long>& m);
    std::size_t n() const { return b.size(); }
};

// Taylor coefficients of f at z in the local parameters (T1 - xi T0 when
// x0 != 0, else T0): the exponent l_i is the power of the local parameter.
std::map<std::vector<long>, FieldElem> local_expansion(const MultiHomogPoly& f, const std::vector<ProjPoint>& z);

// min sum b_i l_i over the nonzero Taylor coefficients; nullopt encodes +inf (f = 0).
std::optional<Rational> index(const MultiHomogPoly& f, const std::vector<ProjPoint>& z, const Weight& b);

// Subspace of Gamma(O(r)) over Q in canonical reduced row echelon form.
class SectionSubspace {
public:
    SectionSubspace() = default;
    SectionSubspace(MultiDegree r, Matrix<Rational> rows);
    static SectionSubspace full(const MultiDegree& r);
    static SectionSubspace span(const std::vector<MultiHomogPoly>& fs);

    const MultiDegree& degree() const { return r_; }
    const Matrix<Rational>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    std::size_t ambient_dim() const;
    bool contains(const std::vector<Rational>& v) const;
    std::vector<MultiHomogPoly> basis_sections() const;

    friend bool operator==(const SectionSubspace& a, const SectionSubspace& b) {
        return a.r_ == b.r_ && a.basis_ == b.basis_;
    }

private:
    MultiDegree r_;
    Matrix<Rational> basis_;
};

SectionSubspace subspace_sum(const SectionSubspace& a, const SectionSubspace& b);
SectionSubspace subspace_intersection(const SectionSubspace& a, const SectionSubspace& b);

// Row l (over K) of the map f -> Taylor coefficient l at z, in box coordinates.
std::vector<FieldElem> taylor_functional(const MultiDegree& r, const std::vector<ProjPoint>& z, const std::vector<long>& l);

// {f : ind_{1/r}(f, z) >= t} for a Q-point z, spanned by the local monomials
// with exponents in the upper set.
SectionSubspace kernel_single(const std::vector<ProjPoint>& z, const MultiDegree& r, const Rational& t,
                              std::size_t max_points = kDefaultMaxLattice);
// Same subspace as the null space of the Taylor conditions on the lower set.
SectionSubspace kernel_single_by_conditions(const std::vector<ProjPoint>& z, const MultiDegree& r, const Rational& t,
                                            std::size_t max_points = kDefaultMaxLattice);

// {f over Q : ind_{1/r}(f, a) >= t} for a tuple of points generating the same
// field K'; each K'-linear condition contributes its q rational coordinates.
SectionSubspace kernel_conjugates(const std::vector<ProjPoint>& a, const MultiDegree& r, const Rational& t,
                                  std::size_t max_points = kDefaultMaxLattice);
// NotGenerating unless the affine coordinate of a generates a's field.
void check_generates(const ProjPoint& a);

// Order of vanishing of g at z; ZeroForm for g = 0.
int multiplicity(const BinaryForm& g, const ProjPoint& z);

struct DysonReport {
    std::vector<Rational> indices;  // ind_{1/r}(f, z^(sigma))
    Rational lhs;                   // sum_sigma vol(t^(sigma))
    Rational rhs;                   // 1 + eps_{q,r}
    int q = 0;                      // number of points minus one
    bool holds = false;
};

// Checks the Dyson inequality for f at the given points (exact).
DysonReport dyson_check(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& points);

}  // namespace dioph
