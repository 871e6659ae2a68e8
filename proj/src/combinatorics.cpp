#include "dioph/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "dioph/error.hpp"

namespace dioph {

MultiDegree::MultiDegree(std::vector<long> r) : r_(std::move(r)) {
    if (r_.empty()) throw Error(ErrorKind::DomainError, "multidegree needs n >= 1");
    for (long x : r_) {
        if (x < 1) throw Error(ErrorKind::DomainError, "multidegree entries must be positive");
        total_ += x;
    }
}

MultiDegree MultiDegree::allowing_zero(std::vector<long> r) {
    if (r.empty()) throw Error(ErrorKind::DomainError, "multidegree needs n >= 1");
    MultiDegree d;
    for (long x : r) {
        if (x < 0) throw Error(ErrorKind::DomainError, "multidegree entries must be nonnegative");
        d.total_ += x;
    }
    d.r_ = std::move(r);
    return d;
}

bool MultiDegree::is_positive() const {
    for (long x : r_)
        if (x < 1) return false;
    return !r_.empty();
}

void MultiDegree::require_positive() const {
    if (!is_positive()) throw Error(ErrorKind::DomainError, "multidegree " + to_string() + " must have positive entries");
}

Integer MultiDegree::box_size() const {
    Integer s = 1;
    for (long x : r_) s *= x + 1;
    return s;
}

std::string MultiDegree::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? "," : "") + std::to_string(r_[i]);
    return s + ")";
}

std::size_t PiecewisePoly::piece_index(const Rational& t) const {
    if (t < lo() || t > hi()) throw Error(ErrorKind::DomainError, "argument " + dioph::to_string(t) + " outside the domain");
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    std::size_t k = static_cast<std::size_t>(it - breaks.begin());
    return std::min(k == 0 ? 0 : k - 1, pieces.size() - 1);
}

Rational PiecewisePoly::eval(const Rational& t) const { return pieces[piece_index(t)].eval(t); }

RealBall PiecewisePoly::eval(const RealBall& t) const {
    Rational a = std::max(t.lower(), lo()), b = std::min(t.upper(), hi());
    if (a > b) throw Error(ErrorKind::DomainError, "ball outside the domain");
    std::size_t i = piece_index(a), j = piece_index(b);
    prec_t bits = t.bits();
    RealBall out = pieces[i].eval(RealBall::from_bounds(a, std::min(b, breaks[i + 1]), bits));
    for (std::size_t k = i + 1; k <= j; ++k)
        out = RealBall::hull(out, pieces[k].eval(RealBall::from_bounds(breaks[k], std::min(b, breaks[k + 1]), bits)));
    return out;
}

PiecewisePoly PiecewisePoly::derivative() const {
    PiecewisePoly d{breaks, {}};
    for (const auto& p : pieces) d.pieces.push_back(p.derivative());
    return d;
}

bool PiecewisePoly::is_continuous() const {
    for (std::size_t k = 1; k < pieces.size(); ++k)
        if (pieces[k - 1].eval(breaks[k]) != pieces[k].eval(breaks[k])) return false;
    return true;
}

namespace {

// Given P on [0, m] extended by the constant `ext` to the right and by 0 to the
// left, returns t -> int_{t-1}^{t} P on [0, m + 1].
PiecewisePoly integrate_window(const PiecewisePoly& P, const Rational& ext) {
    std::size_t m = P.pieces.size();
    // F(t) = int_0^t P, piece by piece, continuous.
    std::vector<QPoly> F;
    Rational acc = 0;
    for (std::size_t k = 0; k < m; ++k) {
        QPoly A = P.pieces[k].antiderivative();
        QPoly Fk = A + QPoly({acc - A.eval(P.breaks[k])});
        acc = Fk.eval(P.breaks[k + 1]);
        F.push_back(std::move(Fk));
    }
    Rational end = P.breaks.back();
    F.push_back(QPoly({acc - ext * end, ext}));
    PiecewisePoly out;
    for (std::size_t j = 0; j <= m + 1; ++j) out.breaks.push_back(Rational(static_cast<long>(j)));
    for (std::size_t j = 0; j <= m; ++j) {
        QPoly g = F[j];
        if (j > 0) g = g - F[j - 1].shifted(Rational(-1));
        out.pieces.push_back(std::move(g));
    }
    return out;
}

struct PiecewiseCache {
    std::mutex mu;
    std::map<int, PiecewisePoly> vol, mu_n;
};

PiecewiseCache& cache() {
    static PiecewiseCache c;
    return c;
}

const PiecewisePoly& build(std::map<int, PiecewisePoly>& table, int n, const PiecewisePoly& base, const Rational& ext) {
    if (n < 1) throw Error(ErrorKind::DomainError, "dimension must be >= 1");
    if (table.empty()) table.emplace(1, base);
    int have = table.rbegin()->first;
    for (int k = have + 1; k <= n; ++k) table.emplace(k, integrate_window(table.at(k - 1), ext));
    return table.at(n);
}

void check_domain(int n, const Rational& t) {
    if (n < 1) throw Error(ErrorKind::DomainError, "dimension must be >= 1");
    if (t < 0 || t > n) throw Error(ErrorKind::DomainError, "t = " + dioph::to_string(t) + " outside [0, " + std::to_string(n) + "]");
}

// [max(lo,a), min(hi,b)] of a ball, with DomainError if it misses [a, b] entirely.
std::pair<Rational, Rational> clamp_ball(const RealBall& t, const Rational& a, const Rational& b) {
    Rational lo = std::max(t.lower(), a), hi = std::min(t.upper(), b);
    if (lo > hi) throw Error(ErrorKind::DomainError, "ball outside the domain");
    return {lo, hi};
}

bool perfect_square(const Rational& x, Rational& root) {
    if (x < 0) return false;
    Integer n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = make_rational(rn, rd);
    return true;
}

RealValue hull(const RealValue& a, const RealValue& b, prec_t bits) {
    if (a.exact && b.exact && *a.exact == *b.exact) return a;
    Rational lo = std::min(a.lower(), b.lower()), hi = std::max(a.upper(), b.upper());
    return RealValue(RealBall::from_bounds(lo, hi, bits));
}

// Root of p = c on [x0, x1] where p - c changes sign (or vanishes at an end).
RealValue solve_piece(const QPoly& p0, const Rational& c, const Rational& x0, const Rational& x1, prec_t bits) {
    QPoly p = p0 - QPoly({c});
    if (p.eval(x0) == 0) return RealValue(x0, bits);
    if (p.eval(x1) == 0) return RealValue(x1, bits);
    if (p.degree() == 1) return RealValue(Rational(-p.c[0] / p.c[1]), bits);
    if (p.degree() == 2) {
        Rational a = p.c[2], b = p.c[1], cc = p.c[0];
        Rational disc = b * b - 4 * a * cc, s;
        if (perfect_square(disc, s)) {
            for (Rational r : {Rational((-b + s) / (2 * a)), Rational((-b - s) / (2 * a))})
                if (r >= x0 && r <= x1) return RealValue(r, bits);
        } else if (disc > 0) {
            RealBall sq = sqrt(RealBall(disc, bits + 16));
            RealBall den(Rational(2 * a), bits + 16), mb(Rational(-b), bits + 16);
            RealBall window = RealBall::from_bounds(x0, x1, bits + 16);
            int hits = 0;
            RealBall pick(bits);
            for (const RealBall& r : {RealBall((mb + sq) / den), RealBall((mb - sq) / den)}) {
                if (less(r, window) == Verdict::True || less(window, r) == Verdict::True) continue;
                ++hits;
                pick = r;
            }
            if (hits == 1) return RealValue(pick.with_bits(bits));
        }
    }
    Rational lo = x0, hi = x1, eps = rational_pow(Rational(2), -(bits + 4));
    int slo = sgn(p.eval(lo));
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / 2;
        int sm = sgn(p.eval(mid));
        if (sm == 0) return RealValue(mid, bits);
        if (sm == slo) lo = mid;
        else hi = mid;
    }
    return RealValue(RealBall::from_bounds(lo, hi, bits));
}

}  // namespace

const PiecewisePoly& vol_piecewise(int n) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    PiecewisePoly base{{Rational(0), Rational(1)}, {QPoly({Rational(0), Rational(1)})}};
    return build(c.vol, n, base, Rational(1));
}

const PiecewisePoly& mu_piecewise(int n) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    // mu_1(t) = int_t^1 (2z - 1) dz = t - t^2.
    PiecewisePoly base{{Rational(0), Rational(1)}, {QPoly({Rational(0), Rational(1), Rational(-1)})}};
    return build(c.mu_n, n, base, Rational(0));
}

Rational vol_lower(int n, const Rational& t) {
    check_domain(n, t);
    Rational s = 0;
    for (long k = 0; k <= n && t > k; ++k) {
        Rational term = Rational(binomial(n, k)) * rational_pow(Rational(t - k), n);
        s += (k % 2 ? -term : term);
    }
    return s / Rational(factorial(n));
}

RealBall vol_lower(int n, const RealBall& t) {
    auto [a, b] = clamp_ball(t, Rational(0), Rational(n));
    return RealBall::from_bounds(vol_lower(n, a), vol_lower(n, b), t.bits());
}

Rational mu(int n, const Rational& t) {
    check_domain(n, t);
    return mu_piecewise(n).eval(t);
}

RealBall mu(int n, const RealBall& t) {
    auto [a, b] = clamp_ball(t, Rational(0), Rational(n));
    Rational fa = mu(n, a), fb = mu(n, b), half(n, 2);
    half.canonicalize();
    Rational lo = std::min(fa, fb), hi = std::max(fa, fb);
    if (a < half && half < b) hi = mu(n, half);
    return RealBall::from_bounds(lo, hi, t.bits());
}

QPoly mu_small_polynomial(int n) {
    // t^n/n! - 2 t^{n+1}/(n+1)!
    std::vector<Rational> c(n + 2, Rational(0));
    c[n] = Rational(1) / Rational(factorial(n));
    c[n + 1] = Rational(-2) / Rational(factorial(n + 1));
    return QPoly(std::move(c));
}

Rational mu_small_closed_form(int n, const Rational& t) {
    if (t < 0 || t > 1) throw Error(ErrorKind::DomainError, "closed form only on [0, 1]");
    return mu_small_polynomial(n).eval(t);
}

Rational int_zeta1_lower(int n, const Rational& t) {
    // mu = int_lower (1 - 2 z_1) = vol - 2 int_lower z_1.
    return (vol_lower(n, t) - mu(n, t)) / 2;
}

Rational int_zeta1_upper(int n, const Rational& t) { return Rational(1, 2) - int_zeta1_lower(n, t); }

RealBall int_zeta1_upper(int n, const RealBall& t) {
    auto [a, b] = clamp_ball(t, Rational(0), Rational(n));
    // Nonnegative integrand over a shrinking region: decreasing in t.
    return RealBall::from_bounds(int_zeta1_upper(n, b), int_zeta1_upper(n, a), t.bits());
}

RealValue invert_monotone(const PiecewisePoly& f, const Rational& c, const Rational& a, const Rational& b, prec_t bits) {
    Rational fa = f.eval(a), fb = f.eval(b);
    if (c < std::min(fa, fb) || c > std::max(fa, fb))
        throw Error(ErrorKind::DomainError, "target " + dioph::to_string(c) + " outside the range of the function");
    if (c == fa) return RealValue(a, bits);
    if (c == fb) return RealValue(b, bits);
    std::vector<Rational> pts{a};
    for (const auto& x : f.breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Rational y0 = f.eval(pts[k]), y1 = f.eval(pts[k + 1]);
        if (y1 == c) return RealValue(pts[k + 1], bits);
        if ((y0 < c && c < y1) || (y1 < c && c < y0)) {
            std::size_t idx = f.piece_index(pts[k]);
            return solve_piece(f.pieces[idx], c, pts[k], pts[k + 1], bits);
        }
    }
    throw Error(ErrorKind::InternalMismatch, "monotone inversion found no bracketing piece");
}

RealValue t_qn(int q, int n, const Rational& delta, prec_t bits) {
    if (q < 1 || n < 1) throw Error(ErrorKind::DomainError, "t_qn needs q, n >= 1");
    if (delta < 0 || delta > 1) throw Error(ErrorKind::DomainError, "t_qn needs 0 <= delta <= 1");
    Rational target = (1 - delta) / Rational(q);
    return invert_monotone(vol_piecewise(n), target, Rational(0), Rational(n), bits);
}

RealBall big_r(int q, int n, const Rational& delta, prec_t bits) {
    if (q == 1) throw Error(ErrorKind::DomainError, "R_{q,n} is undefined for q = 1");
    if (q < 2 || n < 2) throw Error(ErrorKind::DomainError, "big_r needs q >= 2 and n >= 2");
    if (delta <= 0 || delta > 1) throw Error(ErrorKind::DomainError, "big_r needs 0 < delta <= 1");
    prec_t w = bits + 32;
    RealBall d(delta, w);
    RealBall lhs = pow(d, make_rational(n + 1, n));
    RealBall base = RealBall(1L, w) + lhs;
    RealBall rt = n == 2 ? base : root(base, static_cast<unsigned long>(n - 1));
    return (RealBall(static_cast<long>(q - 1), w) / (rt - RealBall(1L, w))).with_bits(bits);
}

Rational eps_qr(int q, const MultiDegree& r) {
    r.require_positive();
    Rational prod = 1;
    for (std::size_t i = 0; i + 1 < r.n(); ++i) {
        Rational best = 0;
        for (std::size_t j = i + 1; j < r.n(); ++j) best = std::max(best, make_rational(r[j], r[i]));
        prod *= 1 + best * (q - 1);
    }
    return prod - 1;
}

Rational eps_qr_minmax(int q, const MultiDegree& r) {
    if (r.n() != 2) throw Error(ErrorKind::DomainError, "the min/max variant of eps is defined for n = 2");
    r.require_positive();
    return Rational(q - 1) * make_rational(std::min(r[0], r[1]), std::max(r[0], r[1]));
}

namespace {

Rational clamp01(const Rational& x) { return std::min(std::max(x, Rational(0)), Rational(1)); }

RealValue invert_vol_range(int n, const Rational& lo, const Rational& hi, prec_t bits) {
    const auto& V = vol_piecewise(n);
    RealValue a = invert_monotone(V, lo, Rational(0), Rational(n), bits);
    if (lo == hi) return a;
    return hull(a, invert_monotone(V, hi, Rational(0), Rational(n), bits), bits);
}

}  // namespace

RealValue u_qr(int q, const MultiDegree& r, const RealValue& t, prec_t bits) {
    int n = static_cast<int>(r.n());
    Rational eps = eps_qr(q, r);
    // The target decreases in t.
    Rational lo = clamp01(1 + eps - q * vol_lower(n, std::min(t.upper(), Rational(n))));
    Rational hi = clamp01(1 + eps - q * vol_lower(n, std::max(t.lower(), Rational(0))));
    return invert_vol_range(n, lo, hi, bits);
}

RealValue u_tilde(int q, const MultiDegree& r, const Rational& delta, prec_t bits) {
    if (delta < 0 || delta > 1) throw Error(ErrorKind::DomainError, "u_tilde needs 0 <= delta <= 1");
    // q vol(t_qn(delta)) = 1 - delta exactly.
    Rational target = clamp01(delta + eps_qr(q, r));
    return invert_vol_range(static_cast<int>(r.n()), target, target, bits);
}

RealValue solve_mu_upper(int n, const RealValue& target, prec_t bits) {
    const auto& M = mu_piecewise(n);
    Rational half = make_rational(n, 2);
    Rational top = M.eval(half);
    auto inv = [&](const Rational& c) {
        if (c < 0 || c > top) throw Error(ErrorKind::DomainError, "mu target outside [0, mu(n/2)]");
        return invert_monotone(M, c, half, Rational(n), bits);
    };
    if (target.exact) return inv(*target.exact);
    Rational lo = std::max(target.lower(), Rational(0)), hi = std::min(target.upper(), top);
    return hull(inv(lo), inv(hi), bits);
}

RealValue w_qr(int q, const MultiDegree& r, const Rational& delta, prec_t bits) {
    int n = static_cast<int>(r.n());
    Rational eps = eps_qr(q, r);
    RealValue u = u_tilde(q, r, delta, bits + 16);
    RealValue mu_u = u.exact ? RealValue(mu(n, *u.exact), bits + 16) : RealValue(mu(n, u.ball));
    if (mu_u.upper() <= eps)
        throw Error(ErrorKind::HypothesisFailed, "mu(u~) = " + mu_u.ball.mid_string(12) + " does not exceed eps = " + dioph::to_string(eps));
    if (mu_u.lower() <= eps)
        throw Error(ErrorKind::PrecisionExhausted, "cannot separate mu(u~) from eps");
    RealValue target = mu_u.exact ? RealValue(Rational(*mu_u.exact - eps), bits + 16)
                                  : RealValue(mu_u.ball - RealBall(eps, bits + 16));
    RealValue w = solve_mu_upper(n, target, bits);
    if (!w.exact) w.ball = w.ball.with_bits(bits);
    return w;
}

int compare_weighted(const MultiDegree& r, const std::vector<long>& l, const Rational& t) {
    // Compare sum l_i L/r_i with t L, L = lcm(r).
    r.require_positive();
    Integer L = 1;
    for (long x : r.values()) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(x));
    Integer s = 0;
    for (std::size_t i = 0; i < r.n(); ++i) s += Integer(L / r[i]) * l[i];
    Integer lhs = s * t.get_den(), rhs = t.get_num() * L;
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

namespace {

void check_size(const MultiDegree& r, std::size_t max_points) {
    if (r.box_size() > Integer(static_cast<unsigned long>(max_points)))
        throw Error(ErrorKind::SizeLimit, "box of " + r.box_size().get_str() + " lattice points exceeds the limit " + std::to_string(max_points));
}

// Visits each point of the requested side with its membership decided exactly.
template <class F>
void visit_side(const MultiDegree& r, const Rational& t, LatticeSide side, std::size_t max_points, F&& f) {
    if (t < 0) throw Error(ErrorKind::DomainError, "lattice sets need t >= 0");
    r.require_positive();
    check_size(r, max_points);
    Integer L = 1;
    for (long x : r.values()) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(x));
    std::vector<Integer> wts;
    for (long x : r.values()) wts.push_back(L / x);
    Integer rhs = t.get_num() * L;
    for_each_box_point(r, [&](const std::vector<long>& l) {
        Integer s = 0;
        for (std::size_t i = 0; i < l.size(); ++i) s += wts[i] * l[i];
        bool lower = s * t.get_den() < rhs;
        if (lower == (side == LatticeSide::Lower)) f(l);
    });
}

}  // namespace

std::vector<std::vector<long>> lattice_points(const MultiDegree& r, const Rational& t, LatticeSide side, std::size_t max_points) {
    std::vector<std::vector<long>> out;
    visit_side(r, t, side, max_points, [&](const std::vector<long>& l) { out.push_back(l); });
    return out;
}

Integer lattice_count(const MultiDegree& r, const Rational& t, LatticeSide side, std::size_t max_points) {
    Integer c = 0;
    visit_side(r, t, side, max_points, [&](const std::vector<long>&) { ++c; });
    return c;
}

Integer mu_z(const MultiDegree& r, int i, const Rational& t, std::size_t max_points) {
    if (i < 1 || i > static_cast<int>(r.n())) throw Error(ErrorKind::DomainError, "index i out of range");
    Integer s = 0;
    long ri = r[i - 1];
    visit_side(r, t, LatticeSide::Upper, max_points, [&](const std::vector<long>& l) { s += 2 * l[i - 1] - ri; });
    return s;
}

Integer sum_upper(const MultiDegree& r, int i, const Rational& t, std::size_t max_points) {
    if (i < 1 || i > static_cast<int>(r.n())) throw Error(ErrorKind::DomainError, "index i out of range");
    Integer s = 0;
    visit_side(r, t, LatticeSide::Upper, max_points, [&](const std::vector<long>& l) { s += l[i - 1]; });
    return s;
}

}  // namespace dioph
