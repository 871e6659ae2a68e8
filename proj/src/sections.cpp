#include "dioph/sections.hpp"

#include <algorithm>

#include "dioph/error.hpp"

namespace dioph {

BinaryForm BinaryForm::monomial(int r, int l, const FieldElem& a) {
    if (l < 0 || l > r) throw Error(ErrorKind::DomainError, "monomial exponent outside [0, r]");
    BinaryForm f = zero(r);
    f.c[l] = a;
    return f;
}

BinaryForm BinaryForm::vanishing_at(const FieldElem& x0, const FieldElem& x1) {
    return BinaryForm({-x1, x0});
}

bool BinaryForm::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const FieldElem& x) { return x.is_zero(); });
}

FieldPtr BinaryForm::field() const {
    FieldPtr f;
    for (const auto& x : c) f = common_field(f, x.field());
    return f;
}

std::string BinaryForm::to_string() const {
    std::string s;
    int r = degree();
    for (int l = 0; l <= r; ++l) {
        if (c[l].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c[l].to_string() + ")";
        if (r - l) s += "*T0^" + std::to_string(r - l);
        if (l) s += "*T1^" + std::to_string(l);
    }
    return s.empty() ? "0" : s;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "adding binary forms of different degrees");
    BinaryForm s = a;
    for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] += b.c[i];
    return s;
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + FieldElem(-1) * b; }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm p = BinaryForm::zero(a.degree() + b.degree());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
    }
    return p;
}

BinaryForm operator*(const FieldElem& s, const BinaryForm& a) {
    BinaryForm p = a;
    for (auto& x : p.c) x *= s;
    return p;
}

std::size_t box_index(const MultiDegree& r, const std::vector<long>& l) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r.n(); ++i) idx = idx * static_cast<std::size_t>(r[i] + 1) + static_cast<std::size_t>(l[i]);
    return idx;
}

void MultiHomogPoly::check_exponent(const Exponent& l) const {
    if (l.size() != r_.n()) throw Error(ErrorKind::DegreeMismatch, "exponent length differs from n");
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] < 0 || l[i] > r_[i]) throw Error(ErrorKind::DomainError, "exponent outside the box of r = " + r_.to_string());
}

MultiHomogPoly MultiHomogPoly::monomial(const MultiDegree& r, const Exponent& l, const FieldElem& c) {
    MultiHomogPoly f(r);
    f.set(l, c);
    return f;
}

MultiHomogPoly MultiHomogPoly::tensor(const std::vector<BinaryForm>& forms) {
    std::vector<long> degs;
    for (const auto& g : forms) degs.push_back(g.degree());
    MultiHomogPoly f{MultiDegree::allowing_zero(degs)};
    for_each_box_point(f.r_, [&](const std::vector<long>& l) {
        FieldElem c(1);
        for (std::size_t i = 0; i < l.size() && !c.is_zero(); ++i) c *= forms[i].c[l[i]];
        if (!c.is_zero()) f.terms_[l] = c;
    });
    return f;
}

MultiHomogPoly MultiHomogPoly::from_vector(const MultiDegree& r, const std::vector<Rational>& v) {
    MultiHomogPoly f(r);
    std::size_t k = 0;
    for_each_box_point(r, [&](const std::vector<long>& l) {
        if (v.at(k) != 0) f.terms_[l] = FieldElem(v[k]);
        ++k;
    });
    if (k != v.size()) throw Error(ErrorKind::DegreeMismatch, "coefficient vector length differs from the box size");
    return f;
}

FieldPtr MultiHomogPoly::field() const {
    FieldPtr f;
    for (const auto& [l, c] : terms_) f = common_field(f, c.field());
    return f;
}

FieldElem MultiHomogPoly::coeff(const Exponent& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? FieldElem(0) : it->second;
}

void MultiHomogPoly::set(const Exponent& l, const FieldElem& c) {
    check_exponent(l);
    if (c.is_zero()) terms_.erase(l);
    else terms_[l] = c;
}

void MultiHomogPoly::add(const Exponent& l, const FieldElem& c) { set(l, coeff(l) + c); }

std::vector<Rational> MultiHomogPoly::to_vector() const {
    std::vector<Rational> v(r_.box_size().get_ui(), Rational(0));
    for (const auto& [l, c] : terms_) {
        if (!c.is_rational()) throw Error(ErrorKind::DomainError, "section has irrational coefficients");
        v[box_index(r_, l)] = c.to_rational();
    }
    return v;
}

std::string MultiHomogPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [l, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*[";
        for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
        s += "]";
    }
    return s;
}

MultiHomogPoly operator+(const MultiHomogPoly& a, const MultiHomogPoly& b) {
    if (!(a.degree() == b.degree())) throw Error(ErrorKind::DegreeMismatch, "adding sections of different multidegrees");
    MultiHomogPoly s = a;
    for (const auto& [l, c] : b.terms()) s.add(l, c);
    return s;
}

MultiHomogPoly operator-(const MultiHomogPoly& a, const MultiHomogPoly& b) { return a + FieldElem(-1) * b; }

MultiHomogPoly operator*(const MultiHomogPoly& a, const MultiHomogPoly& b) {
    if (a.n() != b.n()) throw Error(ErrorKind::DegreeMismatch, "multiplying sections on different products");
    std::vector<long> r;
    for (std::size_t i = 0; i < a.n(); ++i) r.push_back(a.degree()[i] + b.degree()[i]);
    MultiHomogPoly p{MultiDegree::allowing_zero(r)};
    for (const auto& [l, c] : a.terms())
        for (const auto& [m, d] : b.terms()) {
            std::vector<long> e(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) e[i] = l[i] + m[i];
            p.add(e, c * d);
        }
    return p;
}

MultiHomogPoly operator*(const FieldElem& s, const MultiHomogPoly& a) {
    MultiHomogPoly p(a.degree());
    if (s.is_zero()) return p;
    for (const auto& [l, c] : a.terms()) p.set(l, s * c);
    return p;
}

Weight::Weight(std::vector<Rational> w) : b(std::move(w)) {
    for (const auto& x : b)
        if (x < 0) throw Error(ErrorKind::DomainError, "weights must be nonnegative");
}

Weight Weight::reciprocal(const MultiDegree& r) {
    std::vector<Rational> w;
    r.require_positive();
    for (long x : r.values()) w.push_back(make_rational(1, x));
    return Weight(w);
}

Weight Weight::from_integers(const std::vector<long>& m) {
    std::vector<Rational> w;
    for (long x : m) w.push_back(Rational(x));
    return Weight(w);
}

namespace {

// W[k][l]: Taylor coefficient k in the local parameter at z of the monomial T0^{r-l} T1^l.
Matrix<FieldElem> taylor_matrix(long r, const ProjPoint& z) {
    Matrix<FieldElem> W(r + 1, std::vector<FieldElem>(r + 1, FieldElem(0)));
    if (z.x0().is_zero()) {
        for (long k = 0; k <= r; ++k) W[k][r - k] = FieldElem(1);
        return W;
    }
    FieldElem xi = z.x1() / z.x0();
    std::vector<FieldElem> pw{FieldElem(1)};
    for (long e = 1; e <= r; ++e) pw.push_back(pw.back() * xi);
    for (long l = 0; l <= r; ++l)
        for (long k = 0; k <= l; ++k) W[k][l] = FieldElem(Rational(binomial(l, k))) * pw[l - k];
    return W;
}

// Global coefficients of the local monomial (T1 - xi T0)^l T0^{r-l} (or T0^l T1^{r-l} at (0:1)).
std::vector<FieldElem> local_monomial(long r, const ProjPoint& z, long l) {
    std::vector<FieldElem> v(r + 1, FieldElem(0));
    if (z.x0().is_zero()) {
        v[r - l] = FieldElem(1);
        return v;
    }
    FieldElem mxi = -(z.x1() / z.x0());
    FieldElem p(1);
    for (long e = 0; e <= l; ++e) {
        long k = l - e;  // power of T1
        v[k] = FieldElem(Rational(binomial(l, e))) * p;
        p *= mxi;
    }
    return v;
}

void check_points(const MultiDegree& r, const std::vector<ProjPoint>& z) {
    if (z.size() != r.n()) throw Error(ErrorKind::DegreeMismatch, "need one point per factor");
}

void check_box(const MultiDegree& r, std::size_t max_points) {
    if (r.box_size() > Integer(static_cast<unsigned long>(max_points)))
        throw Error(ErrorKind::SizeLimit, "space of sections of dimension " + r.box_size().get_str() + " exceeds the limit");
}

}  // namespace

std::map<std::vector<long>, FieldElem> local_expansion(const MultiHomogPoly& f, const std::vector<ProjPoint>& z) {
    const MultiDegree& r = f.degree();
    check_points(r, z);
    std::vector<Matrix<FieldElem>> W;
    for (std::size_t i = 0; i < r.n(); ++i) W.push_back(taylor_matrix(r[i], z[i]));
    std::map<std::vector<long>, FieldElem> out;
    for_each_box_point(r, [&](const std::vector<long>& l) {
        FieldElem s(0);
        for (const auto& [m, c] : f.terms()) {
            FieldElem p = c;
            for (std::size_t i = 0; i < l.size() && !p.is_zero(); ++i) p *= W[i][l[i]][m[i]];
            if (!p.is_zero()) s += p;
        }
        if (!s.is_zero()) out[l] = s;
    });
    return out;
}

std::optional<Rational> index(const MultiHomogPoly& f, const std::vector<ProjPoint>& z, const Weight& b) {
    if (b.n() != f.n()) throw Error(ErrorKind::DegreeMismatch, "weight length differs from n");
    if (f.is_zero()) return std::nullopt;
    std::optional<Rational> best;
    for (const auto& [l, c] : local_expansion(f, z)) {
        Rational w = 0;
        for (std::size_t i = 0; i < l.size(); ++i) w += b.b[i] * l[i];
        if (!best || w < *best) best = w;
    }
    return best;
}

SectionSubspace::SectionSubspace(MultiDegree r, Matrix<Rational> rows) : r_(std::move(r)), basis_(std::move(rows)) {
    std::size_t N = ambient_dim();
    for (const auto& row : basis_)
        if (row.size() != N) throw Error(ErrorKind::DegreeMismatch, "basis row length differs from the box size");
    rref(basis_);
}

std::size_t SectionSubspace::ambient_dim() const { return r_.n() ? r_.box_size().get_ui() : 0; }

SectionSubspace SectionSubspace::full(const MultiDegree& r) {
    std::size_t N = r.box_size().get_ui();
    Matrix<Rational> I(N, std::vector<Rational>(N, Rational(0)));
    for (std::size_t i = 0; i < N; ++i) I[i][i] = 1;
    return SectionSubspace(r, I);
}

SectionSubspace SectionSubspace::span(const std::vector<MultiHomogPoly>& fs) {
    if (fs.empty()) throw Error(ErrorKind::DomainError, "span of an empty family needs a multidegree");
    Matrix<Rational> rows;
    for (const auto& f : fs) {
        if (!(f.degree() == fs[0].degree())) throw Error(ErrorKind::DegreeMismatch, "span of sections of different multidegrees");
        rows.push_back(f.to_vector());
    }
    return SectionSubspace(fs[0].degree(), rows);
}

bool SectionSubspace::contains(const std::vector<Rational>& v) const {
    Matrix<Rational> M = basis_;
    M.push_back(v);
    return rank(M) == dim();
}

std::vector<MultiHomogPoly> SectionSubspace::basis_sections() const {
    std::vector<MultiHomogPoly> out;
    for (const auto& row : basis_) out.push_back(MultiHomogPoly::from_vector(r_, row));
    return out;
}

SectionSubspace subspace_sum(const SectionSubspace& a, const SectionSubspace& b) {
    if (!(a.degree() == b.degree())) throw Error(ErrorKind::DegreeMismatch, "subspaces of different spaces");
    return SectionSubspace(a.degree(), row_space_sum(a.basis(), b.basis()));
}

SectionSubspace subspace_intersection(const SectionSubspace& a, const SectionSubspace& b) {
    if (!(a.degree() == b.degree())) throw Error(ErrorKind::DegreeMismatch, "subspaces of different spaces");
    return SectionSubspace(a.degree(), row_space_intersection(a.basis(), b.basis(), a.ambient_dim()));
}

std::vector<FieldElem> taylor_functional(const MultiDegree& r, const std::vector<ProjPoint>& z, const std::vector<long>& l) {
    check_points(r, z);
    std::vector<Matrix<FieldElem>> W;
    for (std::size_t i = 0; i < r.n(); ++i) W.push_back(taylor_matrix(r[i], z[i]));
    std::vector<FieldElem> row;
    row.reserve(r.box_size().get_ui());
    for_each_box_point(r, [&](const std::vector<long>& m) {
        FieldElem p(1);
        for (std::size_t i = 0; i < m.size() && !p.is_zero(); ++i) p *= W[i][l[i]][m[i]];
        row.push_back(p);
    });
    return row;
}

SectionSubspace kernel_single(const std::vector<ProjPoint>& z, const MultiDegree& r, const Rational& t, std::size_t max_points) {
    check_points(r, z);
    check_box(r, max_points);
    for (const auto& p : z)
        if (p.field()) throw Error(ErrorKind::DomainError, "kernel_single needs Q-points");
    std::vector<std::vector<std::vector<FieldElem>>> uni(r.n());
    for (std::size_t i = 0; i < r.n(); ++i)
        for (long l = 0; l <= r[i]; ++l) uni[i].push_back(local_monomial(r[i], z[i], l));
    Matrix<Rational> rows;
    for (const auto& l : lattice_points(r, t, LatticeSide::Upper, max_points)) {
        std::vector<Rational> v;
        v.reserve(r.box_size().get_ui());
        for_each_box_point(r, [&](const std::vector<long>& k) {
            Rational p = 1;
            for (std::size_t i = 0; i < k.size() && p != 0; ++i) p *= uni[i][l[i]][k[i]].to_rational();
            v.push_back(p);
        });
        rows.push_back(std::move(v));
    }
    return SectionSubspace(r, rows);
}

SectionSubspace kernel_single_by_conditions(const std::vector<ProjPoint>& z, const MultiDegree& r, const Rational& t,
                                            std::size_t max_points) {
    check_points(r, z);
    check_box(r, max_points);
    Matrix<Rational> cond;
    for (const auto& l : lattice_points(r, t, LatticeSide::Lower, max_points)) {
        std::vector<Rational> row;
        for (const auto& x : taylor_functional(r, z, l)) {
            if (!x.is_rational()) throw Error(ErrorKind::DomainError, "kernel_single needs Q-points");
            row.push_back(x.to_rational());
        }
        cond.push_back(std::move(row));
    }
    return SectionSubspace(r, nullspace(cond, r.box_size().get_ui()));
}

void check_generates(const ProjPoint& a) {
    FieldPtr K = a.field();
    if (!K) throw Error(ErrorKind::NotGenerating, "point " + a.to_string() + " is rational");
    if (a.x0().is_zero() || a.x1().is_zero()) throw Error(ErrorKind::NotGenerating, "point " + a.to_string() + " is rational");
    if (a.affine().algebraic_degree() != K->degree())
        throw Error(ErrorKind::NotGenerating, "point " + a.to_string() + " lies over a proper subfield");
}

SectionSubspace kernel_conjugates(const std::vector<ProjPoint>& a, const MultiDegree& r, const Rational& t, std::size_t max_points) {
    check_points(r, a);
    check_box(r, max_points);
    FieldPtr K;
    for (const auto& p : a) {
        check_generates(p);
        if (!K) K = p.field();
        else if (p.field()->minpoly() != K->minpoly()) throw Error(ErrorKind::NotGenerating, "points generate different fields");
    }
    int q = K->degree();
    Matrix<Rational> cond;
    for (const auto& l : lattice_points(r, t, LatticeSide::Lower, max_points)) {
        auto row = taylor_functional(r, a, l);
        for (int j = 0; j < q; ++j) {
            std::vector<Rational> qr;
            qr.reserve(row.size());
            for (const auto& x : row) qr.push_back(x.coord(j));
            cond.push_back(std::move(qr));
        }
    }
    return SectionSubspace(r, nullspace(cond, r.box_size().get_ui()));
}

int multiplicity(const BinaryForm& g0, const ProjPoint& z) {
    if (g0.is_zero()) throw Error(ErrorKind::ZeroForm, "multiplicity of the zero form");
    BinaryForm g = g0;
    int m = 0;
    while (g.degree() >= 1) {
        int d = g.degree();
        BinaryForm h = BinaryForm::zero(d - 1);
        if (z.x0().is_zero()) {
            // Divisibility by T0: no pure T1^d term.
            if (!g.c[d].is_zero()) break;
            for (int l = 0; l < d; ++l) h.c[l] = g.c[l];
        } else {
            // Synthetic division of sum c_l t^l by (t - xi).
            FieldElem xi = z.x1() / z.x0();
            FieldElem carry(0);
            for (int l = d; l >= 1; --l) {
                carry = g.c[l] + carry * xi;
                h.c[l - 1] = carry;
            }
            if (!(g.c[0] + carry * xi).is_zero()) break;
        }
        g = h;
        ++m;
    }
    return m;
}

DysonReport dyson_check(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& points) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "Dyson check needs a nonzero section");
    if (points.empty()) throw Error(ErrorKind::DomainError, "Dyson check needs at least one point");
    const MultiDegree& r = f.degree();
    for (std::size_t s = 0; s < points.size(); ++s)
        for (std::size_t t = s + 1; t < points.size(); ++t)
            for (std::size_t i = 0; i < r.n(); ++i)
                if (points[s][i] == points[t][i])
                    throw Error(ErrorKind::ProjectionClash, "points " + std::to_string(s) + " and " + std::to_string(t) +
                                                                " share projection " + std::to_string(i + 1));
    DysonReport rep;
    rep.q = static_cast<int>(points.size()) - 1;
    Weight w = Weight::reciprocal(r);
    int n = static_cast<int>(r.n());
    rep.lhs = 0;
    for (const auto& z : points) {
        Rational t = *index(f, z, w);
        rep.indices.push_back(t);
        rep.lhs += vol_lower(n, std::min(t, Rational(n)));
    }
    rep.rhs = 1 + eps_qr(std::max(rep.q, 1), r);
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace dioph
