#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/qpoly.hpp"
#include "dioph/rational.hpp"

namespace dioph {

inline constexpr std::size_t kDefaultMaxLattice = 10'000'000;

// Positive integer weights r = (r_1, ..., r_n).
class MultiDegree {
public:
    MultiDegree() = default;
    explicit MultiDegree(std::vector<long> r);
    // Entries >= 0; degree-0 factors arise for derivatives and Wronskians.
    static MultiDegree allowing_zero(std::vector<long> r);
    bool is_positive() const;
    // DomainError unless every entry is positive.
    void require_positive() const;

    std::size_t n() const { return r_.size(); }
    long operator[](std::size_t i) const { return r_[i]; }
    const std::vector<long>& values() const { return r_; }
    long total() const { return total_; }
    // prod (r_i + 1), the number of monomials of multidegree r.
    Integer box_size() const;
    std::string to_string() const;

    friend bool operator==(const MultiDegree& a, const MultiDegree& b) { return a.r_ == b.r_; }

private:
    std::vector<long> r_;
    long total_ = 0;
};

// A real number known exactly (rational) or through an enclosing ball.
struct RealValue {
    std::optional<Rational> exact;
    RealBall ball;

    RealValue(const Rational& q, prec_t bits) : exact(q), ball(q, bits) {}
    explicit RealValue(RealBall b) : ball(std::move(b)) {}
    bool is_exact() const { return exact.has_value(); }
    Rational lower() const { return exact ? *exact : ball.lower(); }
    Rational upper() const { return exact ? *exact : ball.upper(); }
};

// Continuous function on [breaks.front(), breaks.back()], polynomial on each
// [breaks[k], breaks[k+1]].
struct PiecewisePoly {
    std::vector<Rational> breaks;
    std::vector<QPoly> pieces;

    Rational lo() const { return breaks.front(); }
    Rational hi() const { return breaks.back(); }
    // Index of the piece used at t; breakpoints go to the right piece except at the end.
    std::size_t piece_index(const Rational& t) const;
    Rational eval(const Rational& t) const;
    RealBall eval(const RealBall& t) const;
    PiecewisePoly derivative() const;
    // Exact equality of adjacent pieces at every interior breakpoint.
    bool is_continuous() const;
};

// vol of {zeta in [0,1]^n : sum zeta < t}, as a piecewise polynomial on [0, n]
// built by integrating the (n-1)-dimensional volume. Cached per n.
const PiecewisePoly& vol_piecewise(int n);
// mu_n on [0, n] from mu_n(t) = int_0^{min(t,1)} mu_{n-1}(t - s) ds. Cached per n.
const PiecewisePoly& mu_piecewise(int n);

// Inclusion-exclusion: (1/n!) sum_k (-1)^k C(n,k) (t - k)_+^n.
Rational vol_lower(int n, const Rational& t);
RealBall vol_lower(int n, const RealBall& t);
Rational mu(int n, const Rational& t);
RealBall mu(int n, const RealBall& t);
// t^n/n! (1 - 2t/(n+1)), valid on [0, 1].
Rational mu_small_closed_form(int n, const Rational& t);
QPoly mu_small_polynomial(int n);

// Integrals of zeta_1 over the lower and upper regions of the unit cube.
Rational int_zeta1_lower(int n, const Rational& t);
Rational int_zeta1_upper(int n, const Rational& t);
RealBall int_zeta1_upper(int n, const RealBall& t);

// Solution t in [0, n] of 1 - q vol(t) = delta.
RealValue t_qn(int q, int n, const Rational& delta, prec_t bits);
// Positive root R of (1 + (q-1)/R)^(n-1) - 1 = delta^(1 + 1/n).
RealBall big_r(int q, int n, const Rational& delta, prec_t bits);

// prod_{i<n} (1 + max_{j>i} r_j/r_i (q-1)) - 1, evaluated literally.
Rational eps_qr(int q, const MultiDegree& r);
// Two-factor variant (q-1) min(r1,r2)/max(r1,r2); requires n = 2.
Rational eps_qr_minmax(int q, const MultiDegree& r);

// vol(u) = min(max(1 + eps - q vol(t), 0), 1).
RealValue u_qr(int q, const MultiDegree& r, const RealValue& t, prec_t bits);
// u_qr at t = t_qn(q, n, delta).
RealValue u_tilde(int q, const MultiDegree& r, const Rational& delta, prec_t bits);
// Unique w in [n/2, n) with mu(u_tilde) = mu(w) + eps.
RealValue w_qr(int q, const MultiDegree& r, const Rational& delta, prec_t bits);
// Same, from an explicit u and eps (both already known).
RealValue solve_mu_upper(int n, const RealValue& target, prec_t bits);

// Solve f(t) = c on [a, b] where f is monotone there (strictly, on the piecewise
// pieces); exact when c hits a breakpoint or the active piece has degree <= 2
// with a rational root, otherwise a ball of width about 2^-bits.
RealValue invert_monotone(const PiecewisePoly& f, const Rational& c, const Rational& a, const Rational& b,
                          prec_t bits);

enum class LatticeSide { Lower, Upper };

// Integer points of prod [0, r_i] with sum l_i / r_i < t (Lower) or >= t (Upper).
std::vector<std::vector<long>> lattice_points(const MultiDegree& r, const Rational& t, LatticeSide side,
                                              std::size_t max_points = kDefaultMaxLattice);
Integer lattice_count(const MultiDegree& r, const Rational& t, LatticeSide side,
                      std::size_t max_points = kDefaultMaxLattice);
// sum over the upper set of (2 l_i - r_i); i is 1-based.
Integer mu_z(const MultiDegree& r, int i, const Rational& t, std::size_t max_points = kDefaultMaxLattice);
// sum over the upper set of l_i; i is 1-based.
Integer sum_upper(const MultiDegree& r, int i, const Rational& t, std::size_t max_points = kDefaultMaxLattice);

// Calls f(l) for each point of the box in lexicographic order (l_1 slowest).
template <class F>
void for_each_box_point(const MultiDegree& r, F&& f) {
    std::vector<long> l(r.n(), 0);
    while (true) {
        f(static_cast<const std::vector<long>&>(l));
        std::size_t k = r.n();
        while (k > 0) {
            --k;
            if (l[k] < r[k]) {
                ++l[k];
                break;
            }
            l[k] = 0;
            if (k == 0) return;
        }
        if (r.n() == 0) return;
    }
}

// sum l_i / r_i compared with t without leaving the integers.
int compare_weighted(const MultiDegree& r, const std::vector<long>& l, const Rational& t);

}  // namespace dioph
