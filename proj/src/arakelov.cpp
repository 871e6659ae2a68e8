#include "dioph/arakelov.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <type_traits>

namespace dioph {

namespace {

// Scalars at an archimedean place.
struct ArchOps {
    using T = ComplexBall;
    prec_t bits;
    T from(const Rational& q) const { return ComplexBall(q, bits); }
};

// Scalars in an unramified extension of Q_p.
struct PadicOps {
    using T = PadicBall;
    LocalRingPtr ring;
    T from(const Rational& q) const { return q == 0 ? PadicBall::zero(ring) : PadicBall::from_rational(q, ring); }
};

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
    std::vector<T> c(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return c;
}

// Matrix of the dual action on Sym^r, T0 -> u0 T0 + u1 T1 and T1 -> w0 T0 + w1 T1;
// column l is the image of T0^{r-l} T1^l, rows indexed by the power of T1.
template <class Ops>
Matrix<typename Ops::T> sym_action(const Ops& ops, const typename Ops::T& u0, const typename Ops::T& u1,
                                   const typename Ops::T& w0, const typename Ops::T& w1, long r) {
    using T = typename Ops::T;
    T zero = ops.from(0), one = ops.from(1);
    std::vector<std::vector<T>> upow{{one}}, wpow{{one}};
    for (long k = 1; k <= r; ++k) {
        upow.push_back(poly_mul(upow.back(), {u0, u1}, zero));
        wpow.push_back(poly_mul(wpow.back(), {w0, w1}, zero));
    }
    Matrix<T> M(r + 1, std::vector<T>(r + 1, zero));
    for (long l = 0; l <= r; ++l) {
        std::vector<T> img = poly_mul(upow[r - l], wpow[l], zero);
        for (long j = 0; j <= r; ++j) M[j][l] = img[j];
    }
    return M;
}

// Applies one matrix per factor to a coefficient vector in box order.
template <class T>
std::vector<T> apply_modewise(std::vector<T> v, const std::vector<Matrix<T>>& mats, const MultiDegree& r,
                              const T& zero) {
    std::size_t n = r.n();
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * static_cast<std::size_t>(r[i] + 1);
    std::size_t total = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t d = static_cast<std::size_t>(r[i] + 1), s = stride[i];
        std::vector<T> fiber(d, zero);
        for (std::size_t outer = 0; outer < total; outer += d * s)
            for (std::size_t inner = 0; inner < s; ++inner) {
                for (std::size_t l = 0; l < d; ++l) fiber[l] = v[outer + inner + l * s];
                for (std::size_t j = 0; j < d; ++j) {
                    T acc = zero;
                    for (std::size_t l = 0; l < d; ++l) acc = acc + mats[i][j][l] * fiber[l];
                    v[outer + inner + j * s] = acc;
                }
            }
    }
    return v;
}

// det(C D C^*) for complex rows C and positive weights D; PrecisionExhausted
// when a pivot ball reaches zero.
RealBall complex_gram_det(const Matrix<ComplexBall>& C, const std::vector<Rational>& w, prec_t bits) {
    std::size_t k = C.size();
    Matrix<ComplexBall> G(k, std::vector<ComplexBall>(k, ComplexBall(bits)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            ComplexBall acc(bits);
            for (std::size_t l = 0; l < w.size(); ++l) acc += w[l] * (C[a][l] * conj(C[b][l]));
            G[a][b] = acc;
            G[b][a] = conj(acc);
        }
    ComplexBall det(Rational(1), bits);
    for (std::size_t c = 0; c < k; ++c) {
        if (G[c][c].contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "Gram pivot ball contains zero");
        det *= G[c][c];
        for (std::size_t i = c + 1; i < k; ++i) {
            ComplexBall f = G[i][c] / G[c][c];
            for (std::size_t j = c; j < k; ++j) G[i][j] -= f * G[c][j];
        }
    }
    return det.re;
}

// Valuation of the gcd of the maximal minors of a p-adic matrix of full row rank,
// by full pivoting on the entry of least valuation.
long wedge_valuation(Matrix<PadicBall> M) {
    long total = 0;
    while (!M.empty()) {
        std::size_t pi = 0, pj = 0;
        std::optional<long> best;
        std::optional<long> unknown;
        for (std::size_t i = 0; i < M.size(); ++i)
            for (std::size_t j = 0; j < M[i].size(); ++j) {
                const PadicBall& z = M[i][j];
                if (z.is_exact_zero()) continue;
                if (!z.is_nonzero()) {
                    unknown = unknown ? std::min(*unknown, z.shift()) : z.shift();
                    continue;
                }
                long vz = z.valuation();
                if (!best || vz < *best) {
                    best = vz;
                    pi = i;
                    pj = j;
                }
            }
        if (!best) {
            if (unknown) throw Error(ErrorKind::PrecisionExhausted, "p-adic pivot search found only balls around zero");
            throw Error(ErrorKind::ZeroSubspace, "rows are linearly dependent");
        }
        if (unknown && *unknown < *best)
            throw Error(ErrorKind::PrecisionExhausted, "p-adic pivot not certified minimal");
        total += *best;
        PadicBall piv = M[pi][pj];
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == pi || M[i][pj].is_exact_zero()) continue;
            PadicBall f = M[i][pj] / piv;
            for (std::size_t j = 0; j < M[i].size(); ++j)
                if (!M[pi][j].is_exact_zero()) M[i][j] = M[i][j] - f * M[pi][j];
        }
        M.erase(M.begin() + static_cast<long>(pi));
        for (auto& row : M) row.erase(row.begin() + static_cast<long>(pj));
    }
    return total;
}

// Integral primitive multiple of a rational row.
std::vector<Integer> primitive_row(const std::vector<Rational>& row) {
    Integer den = 1;
    for (const auto& c : row) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& c : row) {
        Integer z = Integer(c.get_num()) * (den / c.get_den());
        g = gcd(g, z);
        out.push_back(z);
    }
    if (g != 0)
        for (auto& z : out) z /= g;
    return out;
}

Rational rational_det(Matrix<Rational> A) {
    std::size_t k = A.size();
    Rational det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && A[p][c] == 0) ++p;
        if (p == k) return 0;
        if (p != c) {
            std::swap(A[p], A[c]);
            det = -det;
        }
        det *= A[c][c];
        for (std::size_t i = c + 1; i < k; ++i) {
            if (A[i][c] == 0) continue;
            Rational f = A[i][c] / A[c][c];
            for (std::size_t j = c; j < k; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return det;
}

// Fraction-free determinant of a square integer matrix.
Integer bareiss_det(Matrix<Integer> A) {
    std::size_t k = A.size();
    if (k == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c + 1 < k; ++c) {
        if (A[c][c] == 0) {
            std::size_t p = c + 1;
            while (p < k && A[p][c] == 0) ++p;
            if (p == k) return 0;
            std::swap(A[p], A[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < k; ++i)
            for (std::size_t j = c + 1; j < k; ++j) A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) / prev;
        prev = A[c][c];
    }
    return sign * A[k - 1][k - 1];
}

// 1/2 sum log (r_i + 1).
RealBall half_log_dims(const MultiDegree& r, prec_t bits) {
    RealBall s(0L, bits);
    for (std::size_t i = 0; i < r.n(); ++i) s += log_rational(Rational(r[i] + 1), bits);
    return Rational(1, 2) * s;
}

}  // namespace

Rational HermitianStructure::monomial_norm_sq(const std::vector<long>& l) const {
    if (l.size() != r.n()) throw Error(ErrorKind::DomainError, "exponent length differs from the number of factors");
    Integer den = 1;
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (l[i] < 0 || l[i] > r[i]) throw Error(ErrorKind::DomainError, "exponent outside the box");
        den *= binomial(r[i], l[i]);
    }
    return make_rational(1, den);
}

std::vector<Rational> HermitianStructure::weights() const {
    std::vector<Rational> w;
    for_each_box_point(r, [&](const std::vector<long>& l) { w.push_back(monomial_norm_sq(l)); });
    return w;
}

Rational form_norm_sq(const BinaryForm& f) {
    Rational s = 0;
    int r = f.degree();
    for (int l = 0; l <= r; ++l) {
        if (!f.c[l].is_rational()) throw Error(ErrorKind::DomainError, "archimedean norm needs rational coefficients");
        Rational c = f.c[l].to_rational();
        s += c * c / Rational(binomial(r, l));
    }
    return s;
}

Rational section_norm_sq(const MultiHomogPoly& f) {
    HermitianStructure H(f.degree());
    Rational s = 0;
    for (const auto& [l, c] : f.terms()) {
        if (!c.is_rational()) throw Error(ErrorKind::DomainError, "archimedean norm needs rational coefficients");
        Rational q = c.to_rational();
        s += q * q * H.monomial_norm_sq(l);
    }
    return s;
}

Rational gram_determinant(const Matrix<Rational>& B, const MultiDegree& r) {
    std::vector<Rational> w = HermitianStructure(r).weights();
    std::size_t k = B.size();
    Matrix<Rational> G(k, std::vector<Rational>(k, Rational(0)));
    for (std::size_t a = 0; a < k; ++a) {
        if (B[a].size() != w.size()) throw Error(ErrorKind::DomainError, "row length differs from the box size");
        for (std::size_t b = a; b < k; ++b) {
            Rational acc = 0;
            for (std::size_t l = 0; l < w.size(); ++l)
                if (B[a][l] != 0 && B[b][l] != 0) acc += w[l] * B[a][l] * B[b][l];
            G[a][b] = G[b][a] = acc;
        }
    }
    return rational_det(std::move(G));
}

Integer maximal_minor_content(Matrix<Integer> M) {
    std::size_t k = M.size();
    if (k == 0) return 1;
    std::size_t N = M[0].size();
    if (N < k) return 0;
    Integer prod = 1;
    for (std::size_t t = 0; t < k; ++t) {
        while (true) {
            std::size_t bi = k, bj = N;
            for (std::size_t i = t; i < k; ++i)
                for (std::size_t j = t; j < N; ++j)
                    if (M[i][j] != 0 && (bi == k || abs(M[i][j]) < abs(M[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == k) return 0;
            std::swap(M[t], M[bi]);
            for (auto& row : M) std::swap(row[t], row[bj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < k; ++i) {
                if (M[i][t] == 0) continue;
                Integer q = M[i][t] / M[t][t];
                for (std::size_t j = t; j < N; ++j) M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < N; ++j) {
                if (M[t][j] == 0) continue;
                Integer q = M[t][j] / M[t][t];
                for (std::size_t i = t; i < k; ++i) M[i][j] -= q * M[i][t];
                if (M[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        prod *= abs(M[t][t]);
    }
    return prod;
}

PluckerHeightReport plucker_height(const SectionSubspace& W, prec_t bits, std::size_t max_plucker,
                                   std::size_t max_points) {
    if (W.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "height of the zero subspace");
    const MultiDegree& r = W.degree();
    if (r.box_size() > Integer(static_cast<unsigned long>(max_points)))
        throw Error(ErrorKind::SizeLimit, "box of multidegree " + r.to_string() + " exceeds the size limit");
    Matrix<Integer> B;
    Matrix<Rational> Bq;
    for (const auto& row : W.basis()) {
        B.push_back(primitive_row(row));
        std::vector<Rational> q;
        for (const auto& z : B.back()) q.emplace_back(z);
        Bq.push_back(std::move(q));
    }
    PluckerHeightReport rep{RealBall(bits), gram_determinant(Bq, r), maximal_minor_content(B), false, 0};
    if (rep.content == 0) throw Error(ErrorKind::InternalMismatch, "basis rows are dependent");

    std::size_t k = B.size(), N = B[0].size();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < k; ++i)
            if (B[i][j] != 0) {
                cols.push_back(j);
                break;
            }
    if (binomial(static_cast<long>(cols.size()), static_cast<long>(k)) <= Integer(static_cast<unsigned long>(max_plucker))) {
        // Cauchy-Binet: det(B D B^T) = sum_S det(B_S)^2 prod_{l in S} w_l.
        std::vector<Rational> w = HermitianStructure(r).weights();
        std::vector<std::size_t> S(k);
        std::iota(S.begin(), S.end(), 0);
        Rational sum = 0;
        Integer g = 0;
        std::size_t count = 0;
        while (true) {
            Matrix<Integer> minor(k, std::vector<Integer>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor[i][j] = B[i][cols[S[j]]];
            Integer d = bareiss_det(std::move(minor));
            ++count;
            if (d != 0) {
                Rational wt = 1;
                for (std::size_t j : S) wt *= w[cols[j]];
                sum += Rational(d * d) * wt;
                g = gcd(g, d);
            }
            std::size_t pos = k;
            while (pos > 0 && S[pos - 1] == cols.size() - k + pos - 1) --pos;
            if (pos == 0) break;
            ++S[pos - 1];
            for (std::size_t j = pos; j < k; ++j) S[j] = S[j - 1] + 1;
        }
        if (sum != rep.gram_det || g != rep.content)
            throw Error(ErrorKind::InternalMismatch, "Pluecker expansion disagrees with the Gram/content route");
        rep.plucker_route = true;
        rep.coordinates = count;
    }
    rep.value = Rational(1, 2) * log_rational(rep.gram_det, bits + 16) - log_rational(Rational(rep.content), bits + 16);
    rep.value = rep.value.with_bits(bits);
    return rep;
}

RealBall ub_height_rational(const std::vector<ProjPoint>& x, const MultiDegree& r, const Rational& t, prec_t bits,
                            std::size_t max_points) {
    if (x.size() != r.n()) throw Error(ErrorKind::DomainError, "need one point per factor");
    RealBall s(0L, bits + 16);
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (!x[i].is_rational()) throw Error(ErrorKind::DomainError, "rational bound needs Q-points");
        Integer c = sum_upper(r, static_cast<int>(i) + 1, t, max_points);
        if (c != 0) s += Rational(c) * height(x[i], bits + 16);
    }
    return s.with_bits(bits);
}

RationalBoundReport rational_height_bound_check(const std::vector<ProjPoint>& x, const MultiDegree& r, const Rational& t,
                                                prec_t bits, std::size_t max_plucker, std::size_t max_points) {
    SectionSubspace K = kernel_single(x, r, t, max_points);
    PluckerHeightReport h = plucker_height(K, bits, max_plucker, max_points);
    RationalBoundReport rep{h.value, ub_height_rational(x, r, t, bits, max_points), Rational(0), false};
    Rational num = Rational(h.content * h.content);
    for (std::size_t i = 0; i < r.n(); ++i) {
        Integer s = sum_upper(r, static_cast<int>(i) + 1, t, max_points);
        Integer n2 = x[i].num0() * x[i].num0() + x[i].num1() * x[i].num1();
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), n2.get_mpz_t(), s.get_ui());
        num *= Rational(pw);
    }
    rep.ratio = num / h.gram_det;
    rep.holds = rep.ratio >= 1;
    return rep;
}

RealBall ub_height_algebraic(const std::vector<ProjPoint>& a, const MultiDegree& r, const Rational& t,
                             std::optional<long> k, prec_t bits, std::size_t max_points) {
    if (a.size() != r.n()) throw Error(ErrorKind::DomainError, "need one point per factor");
    FieldPtr K;
    for (const auto& p : a) K = common_field(K, p.field());
    long q = K ? K->degree() : 1;
    long dim = k ? *k : kernel_conjugates(a, r, t, max_points).dim();
    Integer cokernel = r.box_size() - dim;
    if (cokernel < 0) throw Error(ErrorKind::DomainError, "kernel dimension exceeds the box size");
    prec_t b = bits + 16;
    RealBall inner(0L, b);
    for (std::size_t i = 0; i < r.n(); ++i) inner += Rational(r[i]) * height(a[i], b);
    inner = Rational(q) * inner + make_rational(r.total(), 2) * log_rational(Rational(2 * q), b);
    return (Rational(cokernel) * inner).with_bits(bits);
}

namespace {

struct NormalizedPoint {
    EmbeddedValue z0, z1;
};

NormalizedPoint normalize(const EmbeddedPoint& p, prec_t bits) {
    if (p.place.archimedean) {
        RealBall n = point_norm(p, bits);
        if (n.contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "point norm ball contains zero");
        ComplexBall inv(RealBall(1L, bits) / n, RealBall(bits));
        return {std::get<ComplexBall>(p.z0) * inv, std::get<ComplexBall>(p.z1) * inv};
    }
    const auto& u0 = std::get<PadicBall>(p.z0);
    const auto& u1 = std::get<PadicBall>(p.z1);
    std::optional<long> v;
    for (const auto* u : {&u0, &u1})
        if (!u->is_exact_zero()) v = v ? std::min(*v, u->valuation()) : u->valuation();
    if (!v) throw Error(ErrorKind::DomainError, "point with both coordinates zero");
    const LocalRingPtr& R = u0.ring() ? u0.ring() : u1.ring();
    PadicBall s = PadicBall::from_rational(rational_pow(R->p, -*v), R);
    return {u0 * s, u1 * s};
}

EmbeddedPoint embed_partner(const ProjPoint& x, const EmbeddedPoint& a, prec_t bits) {
    LocalRingPtr ring;
    if (!a.place.archimedean) {
        const auto& u0 = std::get<PadicBall>(a.z0);
        ring = u0.ring() ? u0.ring() : std::get<PadicBall>(a.z1).ring();
    }
    return embed_rational_point(x, a.place, ring, bits);
}

}  // namespace

GroupElement g_element(const ProjPoint& x, const EmbeddedPoint& a, prec_t bits) {
    EmbeddedPoint xe = embed_partner(x, a, bits);
    Distance d = distance_v(a, xe, bits);
    if (d.is_zero) throw Error(ErrorKind::CoincidentPoints, "x = " + x.to_string() + " coincides with the target");
    NormalizedPoint an = normalize(a, bits), xn = normalize(xe, bits);
    GroupElement g{a.place, an.z0, an.z1, xn.z0, xn.z1, EmbeddedValue{}, RealBall(bits), d.value, d.exact, RealBall(bits)};
    if (a.place.archimedean) {
        const auto &a0 = std::get<ComplexBall>(an.z0), &a1 = std::get<ComplexBall>(an.z1);
        const auto &x0 = std::get<ComplexBall>(xn.z0), &x1 = std::get<ComplexBall>(xn.z1);
        ComplexBall D = a0 * x1 - a1 * x0;
        if (D.contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "determinant ball contains zero");
        ComplexBall det = ComplexBall(Rational(1), bits) / D;
        g.abs_det = abs(det);
        g.det = det;
    } else {
        const auto &a0 = std::get<PadicBall>(an.z0), &a1 = std::get<PadicBall>(an.z1);
        const auto &x0 = std::get<PadicBall>(xn.z0), &x1 = std::get<PadicBall>(xn.z1);
        PadicBall D = a0 * x1 - a1 * x0;
        if (!D.is_nonzero()) throw Error(ErrorKind::PrecisionExhausted, "p-adic determinant not certified nonzero");
        PadicBall det = D.inverse();
        g.abs_det = RealBall(det.abs(), bits);
        g.det = det;
    }
    g.identity_defect = g.abs_det * d.value - RealBall(1L, bits);
    if (!g.identity_defect.contains_zero())
        throw Error(ErrorKind::InternalMismatch, "|det g| d_v(a, x) = 1 fails");
    return g;
}

RealBall dual_form_norm(const GroupElement& g, const EmbeddedPoint& y, prec_t bits) {
    if (!(y.place == g.place)) throw Error(ErrorKind::PlaceMismatch, "point and group element at different places");
    NormalizedPoint yn = normalize(y, bits);
    if (g.place.archimedean) {
        auto c = [](const EmbeddedValue& z) { return std::get<ComplexBall>(z); };
        ComplexBall c0 = c(yn.z0) * c(g.a1) - c(yn.z1) * c(g.a0);
        ComplexBall c1 = c(yn.z0) * c(g.x1) - c(yn.z1) * c(g.x0);
        return sqrt(abs2(c0) + abs2(c1));
    }
    auto c = [](const EmbeddedValue& z) { return std::get<PadicBall>(z); };
    PadicBall c0 = c(yn.z0) * c(g.a1) - c(yn.z1) * c(g.a0);
    PadicBall c1 = c(yn.z0) * c(g.x1) - c(yn.z1) * c(g.x0);
    return RealBall(std::max(c0.abs(), c1.abs()), bits);
}

namespace {

struct LogNorms {
    RealBall log_w, log_gw;
    long val_w = 0, val_gw = 0;  // p-adic valuations (finite places)
};

// log ||w|| and log ||g* w|| for the wedge w of the rows; theta (if given)
// multiplies the dual action factor-wise.
template <class Ops>
LogNorms wedge_log_norms(const Ops& ops, const Matrix<Rational>& rows, const MultiDegree& r,
                         const std::vector<GroupElement>& g, const std::vector<typename Ops::T>* theta, prec_t bits) {
    using T = typename Ops::T;
    std::vector<Matrix<T>> mats;
    for (std::size_t i = 0; i < r.n(); ++i) {
        T a0 = std::get<T>(g[i].a0), a1 = std::get<T>(g[i].a1), x0 = std::get<T>(g[i].x0), x1 = std::get<T>(g[i].x1);
        if (theta) {
            const T& th = (*theta)[i];
            a0 = th * a0;
            a1 = th * a1;
            x0 = th * x0;
            x1 = th * x1;
        }
        mats.push_back(sym_action(ops, a0, x0, a1, x1, r[i]));
    }
    T zero = ops.from(0);
    Matrix<T> src, img;
    for (const auto& row : rows) {
        std::vector<T> v;
        for (const auto& c : row) v.push_back(ops.from(c));
        img.push_back(apply_modewise(v, mats, r, zero));
        src.push_back(std::move(v));
    }
    LogNorms out{RealBall(bits), RealBall(bits)};
    if constexpr (std::is_same_v<T, ComplexBall>) {
        out.log_w = Rational(1, 2) * log_rational(gram_determinant(rows, r), bits);
        RealBall gd = complex_gram_det(img, HermitianStructure(r).weights(), bits);
        if (!(mpfr_sgn(gd.lo()) > 0)) throw Error(ErrorKind::PrecisionExhausted, "Gram determinant ball reaches zero");
        out.log_gw = Rational(1, 2) * log(gd);
    } else {
        RealBall lp = log_rational(Rational(ops.ring->p), bits);
        out.val_w = wedge_valuation(src);
        out.val_gw = wedge_valuation(img);
        out.log_w = Rational(-out.val_w) * lp;
        out.log_gw = Rational(-out.val_gw) * lp;
    }
    return out;
}

// Principal square root, or i sqrt(-z) when z touches the negative real axis.
ComplexBall any_sqrt(const ComplexBall& z) {
    if (mpfr_sgn(z.re.lo()) > 0) return sqrt(z);
    ComplexBall w = sqrt(-z);
    return ComplexBall(-w.im, w.re);
}

template <class F>
auto with_retries(prec_t bits, F&& f) {
    for (int attempt = 0;; ++attempt) {
        try {
            return f(bits << attempt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted || attempt == 3) throw;
        }
    }
}

}  // namespace

IotaReport iota_bound_check(const std::vector<ProjPoint>& x, const std::vector<ProjPoint>& a, const MultiDegree& r,
                            const Rational& t_x, const Rational& t_a, const Place& v, const Embedding& sigma,
                            prec_t bits, std::size_t max_points) {
    if (!(sigma.place == v))
        throw Error(ErrorKind::PlaceMismatch, "embedding " + sigma.describe() + " does not live at " + v.to_string());
    if (x.size() != r.n() || a.size() != r.n()) throw Error(ErrorKind::DomainError, "need one point per factor");
    r.require_positive();
    SectionSubspace Kx = kernel_single(x, r, t_x, max_points);
    SectionSubspace Ka = kernel_conjugates(a, r, t_a, max_points);
    if (Kx.dim() == 0 || Ka.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "a kernel is zero; no Pluecker point");

    auto run = [&](prec_t b) {
        IotaReport rep;
        rep.place = v;
        rep.k_x = Kx.dim();
        rep.k_a = Ka.dim();
        std::vector<GroupElement> g;
        for (std::size_t i = 0; i < r.n(); ++i) {
            EmbeddedPoint ae = embed_point(a[i], sigma, b);
            g.push_back(g_element(x[i], ae, b));
            rep.m.push_back(-log(g.back().distance));
            rep.det_defects.push_back(g.back().identity_defect);
        }
        // Homogeneity: g~* = theta g* on factor i, so the log ratio gains k r_i m_i / 2.
        RealBall shift(0L, b);
        for (std::size_t i = 0; i < r.n(); ++i) shift += make_rational(r[i], 2) * rep.m[i];
        // At a finite place every quantity is an exact multiple of log p; e[i] = m_i / log p.
        std::vector<Rational> e;
        Rational shift_e = 0;
        if (!v.archimedean) {
            for (std::size_t i = 0; i < r.n(); ++i) {
                e.emplace_back(-valuation(*g[i].exact_distance, v.p));
                shift_e += make_rational(r[i], 2) * e.back();
            }
        }
        auto iota = [&](const Matrix<Rational>& rows, long k, Rational& exact) {
            if (!v.archimedean) {
                LogNorms ln = wedge_log_norms(PadicOps{std::get<PadicBall>(g[0].a0).ring()}, rows, r, g, nullptr, b);
                exact = Rational(ln.val_w - ln.val_gw) + Rational(k) * shift_e;
                return RealBall(exact, b) * log_rational(Rational(v.p), b);
            }
            LogNorms ln = wedge_log_norms(ArchOps{b}, rows, r, g, nullptr, b);
            RealBall via_homogeneity = ln.log_gw - ln.log_w + Rational(k) * shift;
            std::vector<ComplexBall> theta;
            for (const auto& gi : g) theta.push_back(any_sqrt(std::get<ComplexBall>(gi.det)));
            LogNorms direct = wedge_log_norms(ArchOps{b}, rows, r, g, &theta, b);
            RealBall diff = (direct.log_gw - direct.log_w) - via_homogeneity;
            if (!diff.contains_zero())
                throw Error(ErrorKind::InternalMismatch, "explicit square root disagrees with the homogeneity shift");
            rep.explicit_theta = true;
            return via_homogeneity;
        };
        Rational ix_e, ia_e;
        rep.iota_x = iota(Kx.basis(), rep.k_x, ix_e);
        rep.iota_a = iota(Ka.basis(), rep.k_a, ia_e);

        RealBall bx(0L, b), min_rm(b);
        Rational bx_e = 0, min_rm_e = 0;
        for (std::size_t i = 0; i < r.n(); ++i) {
            Integer s = sum_upper(r, static_cast<int>(i) + 1, t_x, max_points);
            bx -= Rational(s) * rep.m[i];
            RealBall rm = Rational(r[i]) * rep.m[i];
            min_rm = i == 0 ? rm : min(min_rm, rm);
            if (!v.archimedean) {
                bx_e -= Rational(s) * e[i];
                Rational rme = r[i] * e[i];
                min_rm_e = i == 0 ? rme : std::min(min_rm_e, rme);
            }
        }
        bx += Rational(rep.k_x) * shift;
        RealBall ba = Rational(rep.k_a) * shift - Rational(rep.k_a * t_a) * min_rm;
        rep.error_term = RealBall(0L, b);
        if (v.archimedean) {
            RealBall ex = Rational(rep.k_x * r.total()) * log_rational(Rational(2), b);
            RealBall ea = Rational(rep.k_a) * (half_log_dims(r, b) +
                                               make_rational(r.total(), 2) * log_rational(Rational(3), b));
            bx += ex;
            ba += ea;
            rep.error_term = ex + ea;
        }
        rep.bound_x = bx;
        rep.bound_a = ba;
        rep.slack = (bx + ba) - (rep.iota_x + rep.iota_a);
        if (v.archimedean) {
            rep.verdict = verdict_and(less_eq(rep.iota_x, bx), less_eq(rep.iota_a, ba));
        } else {
            bx_e += rep.k_x * shift_e;
            Rational ba_e = rep.k_a * shift_e - rep.k_a * t_a * min_rm_e;
            rep.log_p_coefficients = {ix_e, ia_e, bx_e, ba_e};
            rep.verdict = verdict_of(ix_e <= bx_e && ia_e <= ba_e);
        }
        return rep;
    };
    return with_retries(bits, run);
}

RealBall quotient_lb(const std::vector<long>& b, const std::vector<long>& ranks, const std::vector<Rational>& slopes,
                     prec_t bits) {
    if (b.size() != ranks.size() || b.size() != slopes.size())
        throw Error(ErrorKind::DomainError, "b, ranks and slopes must have equal lengths");
    Rational lin = 0;
    RealBall logs(0L, bits + 16);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (ranks[i] < 1) throw Error(ErrorKind::DomainError, "ranks must be positive");
        lin += b[i] * slopes[i];
        if (b[i] != 0 && ranks[i] > 1) logs += Rational(std::abs(b[i])) * log_rational(Rational(ranks[i]), bits + 16);
    }
    return (RealBall(lin, bits + 16) - Rational(1, 2) * logs).with_bits(bits);
}

PermutationNormReport permutation_norm_check(const std::vector<long>& e, const std::vector<long>& Db,
                                             const std::vector<std::vector<int>>& sigma, std::size_t max_size,
                                             std::uint64_t seed) {
    if (e.size() != Db.size() || e.size() != sigma.size())
        throw Error(ErrorKind::DomainError, "e, Db and sigma must have equal lengths");
    Integer size = 1;
    std::size_t positions = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || Db[i] < 0) throw Error(ErrorKind::DomainError, "need e_i >= 1 and Db_i >= 0");
        if (static_cast<long>(sigma[i].size()) != Db[i])
            throw Error(ErrorKind::DomainError, "sigma_" + std::to_string(i + 1) + " must permute Db_i letters");
        std::vector<int> s = sigma[i];
        std::sort(s.begin(), s.end());
        for (long j = 0; j < Db[i]; ++j)
            if (s[j] != j) throw Error(ErrorKind::DomainError, "sigma_" + std::to_string(i + 1) + " is not a permutation");
        for (long j = 0; j < Db[i]; ++j) size *= e[i];
        positions += static_cast<std::size_t>(Db[i]);
        if (size > Integer(static_cast<unsigned long>(max_size)))
            throw Error(ErrorKind::SizeLimit, "tensor power has more than " + std::to_string(max_size) + " coordinates");
    }
    std::size_t M = size.get_ui();
    // Flattened positions with their radices, factor by factor.
    std::vector<long> radix;
    std::vector<std::size_t> source;  // eta(sigma) moves the letter at source[p] to p
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::size_t base = radix.size();
        for (long j = 0; j < Db[i]; ++j) {
            radix.push_back(e[i]);
            source.push_back(base + static_cast<std::size_t>(sigma[i][j]));
        }
    }
    std::vector<std::size_t> weight(positions, 1);
    for (std::size_t p = positions; p-- > 1;) weight[p - 1] = weight[p] * static_cast<std::size_t>(radix[p]);
    std::vector<std::size_t> image(M);
    std::vector<bool> hit(M, false);
    std::vector<long> digits(positions);
    for (std::size_t R = 0; R < M; ++R) {
        std::size_t rem = R;
        for (std::size_t p = 0; p < positions; ++p) {
            digits[p] = static_cast<long>(rem / weight[p]);
            rem %= weight[p];
        }
        std::size_t S = 0;
        for (std::size_t p = 0; p < positions; ++p) S += static_cast<std::size_t>(digits[source[p]]) * weight[p];
        image[R] = S;
        if (hit[S]) throw Error(ErrorKind::InternalMismatch, "permutation action is not a bijection of the basis");
        hit[S] = true;
    }
    PermutationNormReport rep;
    rep.basis_size = size;
    rep.bound_sq = Rational(size);
    // T = sum v_R: all coordinates 1, so the ratio is sum of squares of the image over max |T_R|^2 = 1.
    std::vector<long> ones_image(M, 0);
    for (std::size_t R = 0; R < M; ++R) ones_image[image[R]] += 1;
    Integer sq = 0;
    for (long c : ones_image) sq += c * c;
    rep.norm_sq = Rational(sq);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<long> T(M), TT(M, 0);
    Integer n_in = 0, n_out = 0;
    for (std::size_t R = 0; R < M; ++R) {
        T[R] = coeff(rng);
        n_in += T[R] * T[R];
        TT[image[R]] += T[R];
    }
    for (long c : TT) n_out += c * c;
    rep.isometry = n_in == n_out;
    rep.holds = rep.isometry && rep.norm_sq <= rep.bound_sq;
    return rep;
}

}  // namespace dioph
