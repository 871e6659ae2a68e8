#include "dioph/wronskian.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace dioph {

namespace {

Rational factorial_ratio(long r, int rho) {
    // ((r - rho + 1)! / r!)^rho
    Rational base = 1;
    for (long k = r - rho + 2; k <= r; ++k) base /= k;
    Rational out = 1;
    for (int k = 0; k < rho; ++k) out *= base;
    return out;
}

// Laplace expansion along rows with memoization on the set of used columns;
// `one` is the unit of the ring.
template <class T>
T determinant(const std::vector<std::vector<T>>& M, const T& one) {
    std::size_t n = M.size();
    std::map<unsigned, T> memo;
    auto rec = [&](auto&& self, std::size_t row, unsigned used) -> T {
        if (row == n) return one;
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        std::optional<T> acc;
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (used & (1u << j)) continue;
            T term = M[row][j] * self(self, row + 1, used | (1u << j));
            if (sign < 0) term = FieldElem(-1) * term;
            acc = acc ? *acc + term : term;
            sign = -sign;
        }
        memo.emplace(used, *acc);
        return *acc;
    };
    return rec(rec, 0, 0u);
}

MultiHomogPoly unit_section(std::size_t n) {
    MultiHomogPoly one{MultiDegree::allowing_zero(std::vector<long>(n, 0))};
    one.set(std::vector<long>(n, 0), FieldElem(1));
    return one;
}

void require_two_factors(const MultiHomogPoly& f) {
    if (f.n() != 2) throw Error(ErrorKind::DomainError, "tensor rank and Wronskians are defined here for n = 2");
}

std::vector<long> swap_pair(const std::vector<long>& v) { return {v[1], v[0]}; }

}  // namespace

RankDecomposition tensor_rank(const MultiHomogPoly& f) {
    require_two_factors(f);
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "tensor rank of the zero section");
    long r1 = f.degree()[0], r2 = f.degree()[1];
    Matrix<FieldElem> C(r1 + 1, std::vector<FieldElem>(r2 + 1, FieldElem(0)));
    for (const auto& [l, c] : f.terms()) C[l[0]][l[1]] = c;
    // C = C[:, pivots] * rref(C): pivot columns on the left, echelon rows on the right.
    Matrix<FieldElem> E = C;
    std::vector<int> piv = rref(E);
    RankDecomposition d;
    d.rho = static_cast<int>(piv.size());
    for (std::size_t k = 0; k < piv.size(); ++k) {
        std::vector<FieldElem> col;
        for (long a = 0; a <= r1; ++a) col.push_back(C[a][piv[k]]);
        d.left.emplace_back(col);
        d.right.emplace_back(E[k]);
    }
    return d;
}

MultiHomogPoly recompose(const RankDecomposition& d) {
    if (d.left.empty() || d.left.size() != d.right.size())
        throw Error(ErrorKind::DomainError, "decomposition needs matching nonempty factor lists");
    MultiHomogPoly f = MultiHomogPoly::tensor({d.left[0], d.right[0]});
    for (std::size_t k = 1; k < d.left.size(); ++k) f = f + MultiHomogPoly::tensor({d.left[k], d.right[k]});
    return f;
}

BinaryForm partial(const BinaryForm& f, int a0, int a1) {
    int r = f.degree();
    if (a0 < 0 || a1 < 0 || a0 + a1 > r) throw Error(ErrorKind::DomainError, "derivative order exceeds the degree");
    BinaryForm g = BinaryForm::zero(r - a0 - a1);
    for (int l = a1; l <= r - a0; ++l) {
        // T0^{r-l} T1^l -> (r-l)_{a0} (l)_{a1} T0^{r-l-a0} T1^{l-a1}
        Integer k = 1;
        for (int j = 0; j < a0; ++j) k *= r - l - j;
        for (int j = 0; j < a1; ++j) k *= l - j;
        g.c[l - a1] = FieldElem(Rational(k)) * f.c[l];
    }
    return g;
}

MultiHomogPoly partial(const MultiHomogPoly& f, std::size_t i, int a0, int a1) {
    long r = f.degree()[i];
    if (a0 < 0 || a1 < 0 || a0 + a1 > r) throw Error(ErrorKind::DomainError, "derivative order exceeds the degree");
    std::vector<long> deg = f.degree().values();
    deg[i] -= a0 + a1;
    MultiHomogPoly g{MultiDegree::allowing_zero(deg)};
    for (const auto& [l, c] : f.terms()) {
        long li = l[i];
        if (li < a1 || r - li < a0) continue;
        Integer k = 1;
        for (int j = 0; j < a0; ++j) k *= r - li - j;
        for (int j = 0; j < a1; ++j) k *= li - j;
        std::vector<long> e = l;
        e[i] = li - a1;
        g.add(e, FieldElem(Rational(k)) * c);
    }
    return g;
}

BinaryForm wronskian_univ(const std::vector<BinaryForm>& forms) {
    if (forms.empty()) throw Error(ErrorKind::DomainError, "Wronskian of an empty family");
    int rho = static_cast<int>(forms.size());
    int r = forms[0].degree();
    for (const auto& g : forms)
        if (g.degree() != r) throw Error(ErrorKind::DegreeMismatch, "Wronskian needs forms of equal degree");
    if (rho > r + 1) throw Error(ErrorKind::DomainError, "more forms than the dimension r + 1");
    std::vector<std::vector<BinaryForm>> M(rho);
    for (int j = 1; j <= rho; ++j)
        for (int l = 0; l < rho; ++l) M[j - 1].push_back(partial(forms[l], rho - j, j - 1));
    BinaryForm one({FieldElem(1)});
    return FieldElem(factorial_ratio(r, rho)) * determinant(M, one);
}

MultiHomogPoly wronskian_biv_direct(const MultiHomogPoly& f, int rho) {
    require_two_factors(f);
    if (rho < 1 || rho > std::min(f.degree()[0], f.degree()[1]) + 1)
        throw Error(ErrorKind::DomainError, "rho must lie in [1, min r_i + 1]");
    std::vector<std::vector<MultiHomogPoly>> M(rho);
    for (int l1 = 1; l1 <= rho; ++l1)
        for (int l2 = 1; l2 <= rho; ++l2)
            M[l1 - 1].push_back(partial(partial(f, 0, rho - l1, l1 - 1), 1, rho - l2, l2 - 1));
    Rational norm = factorial_ratio(f.degree()[0], rho) * factorial_ratio(f.degree()[1], rho);
    return FieldElem(norm) * determinant(M, unit_section(2));
}

BivariateWronskian wronskian_biv(const MultiHomogPoly& f, const RankDecomposition& d) {
    require_two_factors(f);
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "Wronskian of the zero section");
    if (!(recompose(d) == f)) throw Error(ErrorKind::DomainError, "decomposition does not reproduce f");
    BivariateWronskian w;
    w.wr1 = wronskian_univ(d.left);
    w.wr2 = wronskian_univ(d.right);
    w.product = MultiHomogPoly::tensor({w.wr1, w.wr2});
    MultiHomogPoly direct = wronskian_biv_direct(f, d.rho);
    if (!(direct == w.product))
        throw Error(ErrorKind::InternalMismatch, "Wronskian product formula disagrees with the direct determinant");
    return w;
}

WronskianIndexReport wronskian_index_bound(const MultiHomogPoly& f, const std::vector<ProjPoint>& z, const Weight& b) {
    require_two_factors(f);
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "index bound for the zero section");
    if (b.n() != 2 || z.size() != 2) throw Error(ErrorKind::DomainError, "weight and point need two coordinates");
    f.degree().require_positive();
    WronskianIndexReport rep;
    RankDecomposition d = tensor_rank(f);
    rep.rho = d.rho;
    std::vector<long> r = f.degree().values();
    rep.swapped = r[0] < r[1];
    MultiDegree rs(rep.swapped ? swap_pair(r) : r);
    Rational M = std::max(b.b[0] * r[0], b.b[1] * r[1]);
    Rational ind_f = *index(f, z, b);
    rep.t = M == 0 ? Rational(0) : std::min(Rational(1), Rational(ind_f / M));
    BivariateWronskian w = wronskian_biv(f, d);
    rep.lhs = *index(w.product, z, b);
    Rational rho1 = rep.rho - 1;
    rep.rhs = M * (rho1 * (2 - rho1 / rs[1]) * vol_lower(2, rep.t) - rep.rho * eps_qr_minmax(2, rs));
    rep.holds = rep.lhs >= rep.rhs;
    return rep;
}

TwoWeightVolumeReport two_weight_volume_check(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& targets,
                                              const std::vector<ProjPoint>& y, const Weight& b) {
    require_two_factors(f);
    if (f.is_zero()) throw Error(ErrorKind::ZeroSection, "two-weight check for the zero section");
    if (targets.empty()) throw Error(ErrorKind::DomainError, "need q >= 1 target points");
    if (y.size() != 2 || b.n() != 2) throw Error(ErrorKind::DomainError, "point and weight need two coordinates");
    const MultiDegree& r = f.degree();
    r.require_positive();
    std::vector<std::vector<ProjPoint>> all{y};
    all.insert(all.end(), targets.begin(), targets.end());
    for (std::size_t s = 0; s < all.size(); ++s) {
        if (all[s].size() != 2) throw Error(ErrorKind::DomainError, "points need two coordinates");
        for (std::size_t u = s + 1; u < all.size(); ++u)
            for (std::size_t i = 0; i < 2; ++i)
                if (all[s][i] == all[u][i])
                    throw Error(ErrorKind::ProjectionClash, "points " + std::to_string(s) + " and " + std::to_string(u) +
                                                                " share coordinate " + std::to_string(i + 1));
    }
    TwoWeightVolumeReport rep;
    rep.max_br = std::max(b.b[0] * r[0], b.b[1] * r[1]);
    if (rep.max_br == 0) throw Error(ErrorKind::DomainError, "weight b must be nonzero");
    rep.index_y = *index(f, y, b);
    rep.lhs = vol_lower(2, std::min(Rational(1), Rational(rep.index_y / rep.max_br)));
    Weight w = Weight::reciprocal(r);
    for (const auto& z : targets) {
        Rational t = *index(f, z, w);
        rep.indices.push_back(t);
        rep.lhs += vol_lower(2, std::min(Rational(1), t));
    }
    rep.rhs = 1 + eps_qr_minmax(static_cast<int>(targets.size()) + 1, r);
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

TwoWeightDysonReport two_weight_dyson(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& targets,
                                      const std::vector<ProjPoint>& y, const Weight& b) {
    TwoWeightDysonReport rep;
    rep.volumes = two_weight_volume_check(f, targets, y, b);
    const auto& v = rep.volumes;
    Rational h = v.rhs;
    for (const auto& t : v.indices) {
        if (t > 1) throw Error(ErrorKind::HypothesisFailed, "index " + t.get_str() + " at a target exceeds 1");
        h -= vol_lower(2, t);
    }
    rep.hypothesis = h;
    if (h >= Rational(1, 2))
        throw Error(ErrorKind::HypothesisFailed, "1 - sum vol(ind) + eps = " + h.get_str() + " is not below 1/2");
    rep.index_below = v.index_y < v.max_br;
    rep.vol_y = vol_lower(2, std::min(Rational(2), Rational(v.index_y / v.max_br)));
    rep.volume_bound = rep.vol_y <= h;
    return rep;
}

}  // namespace dioph
