#include "dioph/git.hpp"

#include <algorithm>
#include <numeric>

namespace dioph {

namespace {

// M[l][k]: coefficient of T_{i0}^{r-k} T_{i1}^k in T0^{r-l} T1^l.
Matrix<Rational> factor_change(const Matrix<Rational>& g, long r) {
    const Rational &a = g[0][0], &b = g[0][1], &c = g[1][0], &d = g[1][1];
    Rational D = a * d - b * c;
    BinaryForm t0({FieldElem(Rational(d / D)), FieldElem(Rational(-b / D))});
    BinaryForm t1({FieldElem(Rational(-c / D)), FieldElem(Rational(a / D))});
    Matrix<Rational> M;
    for (long l = 0; l <= r; ++l) {
        BinaryForm p({FieldElem(1)});
        for (long j = 0; j < r - l; ++j) p = p * t0;
        for (long j = 0; j < l; ++j) p = p * t1;
        std::vector<Rational> row;
        for (const auto& x : p.c) row.push_back(x.to_rational());
        M.push_back(std::move(row));
    }
    return M;
}

Rational pairing(const std::vector<long>& m, const MultiDegree& r) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += Rational(m[i]) * Rational(r[i]);
    return s;
}

// Weight of every box position in adapted coordinates.
std::vector<long> box_weights(const OneParamSubgroup& lambda, const MultiDegree& r) {
    std::vector<long> w;
    for_each_box_point(r, [&](const std::vector<long>& k) { w.push_back(lambda.weight(r, k)); });
    return w;
}

Matrix<Rational> adapted_basis(const OneParamSubgroup& lambda, const SectionSubspace& W) {
    Matrix<Rational> A;
    for (const auto& row : W.basis()) A.push_back(lambda.adapted_coordinates(W.degree(), row));
    return A;
}

RealValue mu_value(int n, const RealValue& t, prec_t bits) {
    if (t.is_exact()) return RealValue(mu(n, *t.exact), bits);
    return RealValue(mu(n, t.ball));
}

ConditionReport compare_values(const RealValue& lhs, const RealValue& rhs) {
    ConditionReport rep;
    rep.lhs = lhs.ball;
    rep.rhs = rhs.ball;
    if (lhs.is_exact() && rhs.is_exact())
        rep.verdict = verdict_of(*lhs.exact < *rhs.exact);
    else
        rep.verdict = less(lhs.ball, rhs.ball);
    return rep;
}

void check_range(const RealValue& t, int n, const char* what) {
    if (t.lower() < 0 || t.upper() > n)
        throw Error(ErrorKind::DomainError, std::string(what) + " must lie in [0, n]");
}

bool is_rational_square(const Rational& x, Rational& root) {
    if (x < 0) return false;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
    Integer p = sqrt(Integer(x.get_num())), q = sqrt(Integer(x.get_den()));
    root = Rational(p, q);
    root.canonicalize();
    return true;
}

// mu^Z_{R,i} constant on [lo, hi]: the upper sets at both ends coincide.
std::optional<Integer> mu_z_on(const MultiDegree& R, int i, const Rational& lo, const Rational& hi,
                               std::size_t max_points) {
    if (lo != hi &&
        lattice_count(R, lo, LatticeSide::Upper, max_points) != lattice_count(R, hi, LatticeSide::Upper, max_points))
        return std::nullopt;
    return mu_z(R, i, lo, max_points);
}

}  // namespace

OneParamSubgroup::OneParamSubgroup(std::vector<long> m, std::vector<Matrix<Rational>> bases)
    : m_(std::move(m)), bases_(std::move(bases)) {
    if (m_.empty()) throw Error(ErrorKind::DomainError, "one-parameter subgroup needs n >= 1 factors");
    if (bases_.size() != m_.size()) throw Error(ErrorKind::DomainError, "one adapted basis per factor is required");
    for (long x : m_)
        if (x < 0) throw Error(ErrorKind::DomainError, "weights m_i must be nonnegative");
    for (const auto& g : bases_) {
        if (g.size() != 2 || g[0].size() != 2 || g[1].size() != 2)
            throw Error(ErrorKind::DomainError, "adapted basis must be a 2x2 matrix");
        if (g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0)
            throw Error(ErrorKind::DomainError, "adapted basis matrix is singular");
    }
}

OneParamSubgroup OneParamSubgroup::standard(std::vector<long> m) {
    Matrix<Rational> I{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    std::vector<Matrix<Rational>> bases(m.size(), I);
    return OneParamSubgroup(std::move(m), std::move(bases));
}

std::vector<ProjPoint> OneParamSubgroup::instability_point() const {
    std::vector<ProjPoint> y;
    for (const auto& g : bases_) y.push_back(ProjPoint::rational(g[0][1], Rational(-g[0][0])));
    return y;
}

int OneParamSubgroup::chi(std::size_t i, const ProjPoint& x) const {
    if (i >= n()) throw Error(ErrorKind::DomainError, "factor index out of range");
    if (m_[i] == 0) return 0;
    const auto& g = bases_[i];
    FieldElem v = FieldElem(g[0][0]) * x.x0() + FieldElem(g[0][1]) * x.x1();
    return v.is_zero() ? 1 : 0;
}

std::vector<int> OneParamSubgroup::chi(const std::vector<ProjPoint>& x) const {
    if (x.size() != n()) throw Error(ErrorKind::DomainError, "point has the wrong number of factors");
    std::vector<int> out;
    for (std::size_t i = 0; i < n(); ++i) out.push_back(chi(i, x[i]));
    return out;
}

void OneParamSubgroup::check_degree(const MultiDegree& r) const {
    if (r.n() != n()) throw Error(ErrorKind::DegreeMismatch, "multidegree and subgroup have different n");
}

long OneParamSubgroup::weight(const MultiDegree& r, const std::vector<long>& k) const {
    check_degree(r);
    long w = 0;
    for (std::size_t i = 0; i < n(); ++i) w += m_[i] * (r[i] - 2 * k[i]);
    return w;
}

long OneParamSubgroup::p_min(const MultiDegree& r) const { return -p_max(r); }

long OneParamSubgroup::p_max(const MultiDegree& r) const {
    check_degree(r);
    long s = 0;
    for (std::size_t i = 0; i < n(); ++i) s += m_[i] * r[i];
    return s;
}

std::vector<Rational> OneParamSubgroup::adapted_coordinates(const MultiDegree& r, const std::vector<Rational>& v) const {
    check_degree(r);
    std::size_t N = r.box_size().get_ui();
    if (v.size() != N) throw Error(ErrorKind::DegreeMismatch, "coordinate vector has the wrong length");
    std::vector<Rational> cur = v;
    std::size_t stride = N;
    for (std::size_t i = 0; i < n(); ++i) {
        std::size_t s = static_cast<std::size_t>(r[i]) + 1;
        stride /= s;
        Matrix<Rational> M = factor_change(bases_[i], r[i]);
        std::vector<Rational> out(N, Rational(0));
        for (std::size_t idx = 0; idx < N; ++idx) {
            if (cur[idx] == 0) continue;
            std::size_t lo = idx % stride, mid = (idx / stride) % s, hi = idx / (stride * s);
            for (std::size_t k = 0; k < s; ++k)
                if (M[mid][k] != 0) out[(hi * s + k) * stride + lo] += cur[idx] * M[mid][k];
        }
        cur = std::move(out);
    }
    return cur;
}

InstabilityReport instab_subspace(const OneParamSubgroup& lambda, const SectionSubspace& W) {
    if (W.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "instability coefficient of the zero subspace");
    const MultiDegree& r = W.degree();
    Matrix<Rational> A = adapted_basis(lambda, W);
    std::vector<long> w = box_weights(lambda, r);
    long pmin = lambda.p_min(r), pmax = lambda.p_max(r);
    InstabilityReport rep;
    // W[p] is the kernel of the projection of W onto the coordinates of weight < p.
    for (long p = pmin; p <= pmax; ++p) {
        Matrix<Rational> P;
        for (const auto& row : A) {
            std::vector<Rational> pr;
            for (std::size_t j = 0; j < row.size(); ++j)
                if (w[j] < p) pr.push_back(row[j]);
            P.push_back(std::move(pr));
        }
        int d = (P.empty() || P[0].empty()) ? W.dim() : W.dim() - rank(P);
        rep.filtration_dims[p] = d;
    }
    long mu_val = -pmin * W.dim();
    for (long p = pmin + 1; p <= pmax; ++p) mu_val -= rep.filtration_dims[p];
    rep.mu = mu_val;
    return rep;
}

long instab_min_weight_basis(const OneParamSubgroup& lambda, const SectionSubspace& W) {
    if (W.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "instability coefficient of the zero subspace");
    const MultiDegree& r = W.degree();
    std::vector<long> w = box_weights(lambda, r);
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
    // Echelon form with columns sorted by weight: each pivot sits in the row's
    // minimal weight, and the minimal components are independent.
    Matrix<Rational> A;
    for (const auto& row : adapted_basis(lambda, W)) {
        std::vector<Rational> perm;
        for (std::size_t j : order) perm.push_back(row[j]);
        A.push_back(std::move(perm));
    }
    long total = 0;
    for (int col : rref(A)) total -= w[order[col]];
    return total;
}

Integer instab_kernel_closed_form(const OneParamSubgroup& lambda, const std::vector<ProjPoint>& x, const MultiDegree& r,
                                  const Rational& t, std::size_t max_points) {
    std::vector<int> chi = lambda.chi(x);
    if (r.n() != lambda.n()) throw Error(ErrorKind::DegreeMismatch, "multidegree and subgroup have different n");
    Integer total = 0;
    for (std::size_t i = 0; i < r.n(); ++i) {
        if (lambda.m()[i] == 0) continue;
        Integer term = Integer(lambda.m()[i]) * mu_z(r, static_cast<int>(i) + 1, t, max_points);
        total += chi[i] ? Integer(-term) : term;
    }
    return total;
}

long instab_line_via_index(const OneParamSubgroup& lambda, const MultiHomogPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "instability coefficient of the zero section");
    const MultiDegree& r = f.degree();
    std::vector<Rational> a = lambda.adapted_coordinates(r, f.to_vector());
    std::vector<long> w = box_weights(lambda, r);
    std::optional<long> wmin;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0 && (!wmin || w[j] < *wmin)) wmin = w[j];
    long graded = -*wmin;
    auto ind = index(f, lambda.instability_point(), Weight::from_integers(lambda.m()));
    Rational via_index = pairing(lambda.m(), r) - 2 * *ind;
    if (via_index != graded)
        throw Error(ErrorKind::InternalMismatch, "graded weight " + std::to_string(graded) + " vs index formula " +
                                                     via_index.get_str());
    return graded;
}

ConditionReport ss_condition(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x, prec_t bits) {
    int n = static_cast<int>(r.n());
    check_range(t_a, n, "t_a");
    check_range(t_x, n, "t_x");
    Rational eps = eps_qr(q, r);
    RealValue u = u_qr(q, r, t_a, bits);
    RealValue mx = mu_value(n, t_x, bits);
    RealValue lhs = mx.is_exact() ? RealValue(Rational(*mx.exact + eps), bits) : RealValue(eps + mx.ball);
    ConditionReport rep = compare_values(lhs, mu_value(n, u, bits));
    // mu_n peaks at n/2, so a margin at least that large can never be beaten.
    if (eps >= mu(n, make_rational(n, 2))) rep.verdict = Verdict::False;
    return rep;
}

ConditionReport ss_condition_2d(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x, prec_t bits) {
    if (r.n() != 2) throw Error(ErrorKind::DomainError, "two-dimensional condition needs n = 2");
    if (r[0] < r[1]) throw Error(ErrorKind::DomainError, "requires r_1 >= r_2");
    check_range(t_a, 2, "t_a");
    check_range(t_x, 2, "t_x");
    Rational eps = eps_qr_minmax(q + 1, r);
    RealValue lhs = mu_value(2, t_x, bits);
    if (t_a.is_exact()) {
        Rational d = 1 - q * vol_lower(2, *t_a.exact);
        Rational bracket = d + eps;
        if (bracket < 0 || bracket > Rational(1, 2))
            throw Error(ErrorKind::HypothesisFailed, "1 - q vol(t_a) + eps = " + bracket.get_str() + " not in [0, 1/2]");
        Rational s;
        if (is_rational_square(2 * bracket, s)) return compare_values(lhs, RealValue(Rational(d * (1 - 2 * s)), bits));
        RealBall rhs = d * (Rational(1) + Rational(-2) * sqrt(RealBall(Rational(2 * bracket), bits)));
        return compare_values(lhs, RealValue(rhs));
    }
    RealBall d = Rational(1) + Rational(-q) * vol_lower(2, t_a.ball);
    RealBall bracket = eps + d;
    if (bracket.upper() < 0 || bracket.lower() > Rational(1, 2))
        throw Error(ErrorKind::HypothesisFailed, "1 - q vol(t_a) + eps not in [0, 1/2]");
    RealBall two_b = Rational(2) * max(bracket, RealBall(Rational(0), bits));
    RealBall rhs = d * (Rational(1) + Rational(-2) * sqrt(two_b));
    ConditionReport rep = compare_values(lhs, RealValue(rhs));
    // The hypothesis itself is undecided at this precision.
    if (bracket.lower() < 0 || bracket.upper() > Rational(1, 2)) rep.verdict = Verdict::Unknown;
    return rep;
}

GrassmannReport grassmann_inequality_check(const OneParamSubgroup& lambda, const SectionSubspace& W1,
                                           const SectionSubspace& W2) {
    if (W1.dim() == 0 || W2.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "Grassmann check needs nonzero subspaces");
    SectionSubspace cap = subspace_intersection(W1, W2);
    if (cap.dim() == 0) throw Error(ErrorKind::DegenerateIntersection, "W1 and W2 meet only in 0");
    GrassmannReport rep;
    rep.mu1 = instab_subspace(lambda, W1).mu;
    rep.mu2 = instab_subspace(lambda, W2).mu;
    rep.mu_sum = instab_subspace(lambda, subspace_sum(W1, W2)).mu;
    rep.mu_cap = instab_subspace(lambda, cap).mu;
    rep.holds = rep.mu1 + rep.mu2 >= rep.mu_sum + rep.mu_cap;
    return rep;
}

bool inclusion_inequality_check(const OneParamSubgroup& lambda, const SectionSubspace& W1, const SectionSubspace& W2) {
    if (!(subspace_sum(W1, W2) == W2)) throw Error(ErrorKind::DomainError, "W1 is not contained in W2");
    long mu1 = instab_subspace(lambda, W1).mu, mu2 = instab_subspace(lambda, W2).mu;
    return mu1 >= mu2 - lambda.p_min(W2.degree()) * (W1.dim() - W2.dim());
}

std::vector<DiscreteSSRow> ss_prime_discrete(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x,
                                             const Rational& delta, const Rational& rho, long alpha_lo, long alpha_hi,
                                             prec_t bits, std::size_t max_points) {
    if (alpha_lo < 1 || alpha_hi < alpha_lo) throw Error(ErrorKind::DomainError, "need 1 <= alpha_lo <= alpha_hi");
    if (delta <= 0 || rho <= 0) throw Error(ErrorKind::DomainError, "delta and rho must be positive");
    std::size_t n = r.n();
    Rational eps = eps_qr(q, r);
    RealValue u = u_qr(q, r, t_a, bits);
    Rational prod_r = 1;
    for (long x : r.values()) prod_r *= x;
    std::vector<DiscreteSSRow> rows;
    for (long alpha = alpha_lo; alpha <= alpha_hi; ++alpha) {
        std::vector<long> scaled;
        for (long x : r.values()) scaled.push_back(alpha * x);
        MultiDegree R(scaled);
        Rational alpha_pow = 1;
        for (std::size_t k = 0; k <= n; ++k) alpha_pow *= alpha;
        DiscreteSSRow row;
        row.alpha = alpha;
        row.all = Verdict::True;
        for (std::size_t i = 0; i < n; ++i) {
            int ii = static_cast<int>(i) + 1;
            auto left = mu_z_on(R, ii, u.lower() + rho, u.upper() + rho, max_points);
            auto right = mu_z_on(R, ii, t_x.lower(), t_x.upper(), max_points);
            Verdict v = Verdict::Unknown;
            if (left && right) {
                Rational margin = alpha_pow * r[i] * prod_r * (eps + delta);
                v = verdict_of(Rational(*left) > Rational(*right) + margin);
            }
            row.per_factor.push_back(v);
            row.all = verdict_and(row.all, v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace dioph
