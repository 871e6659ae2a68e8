#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/sections.hpp"

namespace dioph {

inline constexpr std::size_t kDefaultMaxPlucker = 1'000'000;

// Norms on Gamma(O(r)): at infinity the monomials prod T_{i0}^{r_i-l_i} T_{i1}^{l_i}
// are orthogonal with squared norm prod C(r_i, l_i)^{-1}; at a finite place the
// norm is the max norm in the same monomial basis.
struct HermitianStructure {
    MultiDegree r;

    explicit HermitianStructure(MultiDegree deg) : r(std::move(deg)) {}
    Rational monomial_norm_sq(const std::vector<long>& l) const;
    // Weights in box order.
    std::vector<Rational> weights() const;
};

// Archimedean squared norm of a form (rational coefficients) in Sym^r.
Rational form_norm_sq(const BinaryForm& f);
// Archimedean squared norm of a section with rational coefficients.
Rational section_norm_sq(const MultiHomogPoly& f);
// det(B D B^T) with D the monomial weights: the squared norm of the wedge of the rows.
Rational gram_determinant(const Matrix<Rational>& B, const MultiDegree& r);

// gcd of the maximal minors of a full-rank integer matrix (rows <= cols), by
// diagonalization with unimodular row and column operations.
Integer maximal_minor_content(Matrix<Integer> M);

struct PluckerHeightReport {
    RealBall value;
    Rational gram_det;             // squared archimedean norm of the integral wedge
    Integer content;               // gcd of its Pluecker coordinates
    bool plucker_route = false;    // coordinates were expanded and matched the Gram route
    std::size_t coordinates = 0;   // number of expanded coordinates (nonzero columns only)
};

// h([W]) = 1/2 log det Gram - log content for an integral basis of W.
// ZeroSubspace for W = 0; SizeLimit when the box exceeds max_points.
PluckerHeightReport plucker_height(const SectionSubspace& W, prec_t bits, std::size_t max_plucker = kDefaultMaxPlucker,
                                   std::size_t max_points = kDefaultMaxLattice);

// sum_i (sum over the upper set of l_i) h(x_i).
RealBall ub_height_rational(const std::vector<ProjPoint>& x, const MultiDegree& r, const Rational& t, prec_t bits,
                            std::size_t max_points = kDefaultMaxLattice);

struct RationalBoundReport {
    RealBall height, bound;
    // exp(2 bound - 2 height) = prod (x_i0^2 + x_i1^2)^{S_i} content^2 / Gram, exactly.
    Rational ratio;
    bool holds = false;  // ratio >= 1
};

// h([K_r(x, t)]) <= ub_height_rational(x, r, t), decided exactly.
RationalBoundReport rational_height_bound_check(const std::vector<ProjPoint>& x, const MultiDegree& r, const Rational& t,
                                                prec_t bits, std::size_t max_plucker = kDefaultMaxPlucker,
                                                std::size_t max_points = kDefaultMaxLattice);

// (prod (r_i + 1) - k) (q sum r_i h(a_i) + |r| log sqrt(2q)); k defaults to
// dim kernel_conjugates(a, r, t).
RealBall ub_height_algebraic(const std::vector<ProjPoint>& a, const MultiDegree& r, const Rational& t,
                             std::optional<long> k, prec_t bits, std::size_t max_points = kDefaultMaxLattice);

// Group element built from x and an embedded point a at the same place, with
// both representatives scaled to norm 1. The dual action sends T0 to
// a0 T0 + x0 T1 and T1 to a1 T0 + x1 T1.
struct GroupElement {
    Place place;
    EmbeddedValue a0, a1, x0, x1;  // normalized representatives
    EmbeddedValue det;             // 1 / (a0 x1 - a1 x0)
    RealBall abs_det;
    RealBall distance;             // d_v(a, x)
    std::optional<Rational> exact_distance;  // finite places
    RealBall identity_defect;      // |det| d_v - 1, a ball around 0
};

// CoincidentPoints when d_v(a, x) = 0; InternalMismatch if |det| d_v = 1 fails.
GroupElement g_element(const ProjPoint& x, const EmbeddedPoint& a, prec_t bits);

// || g * (y0 T1 - y1 T0) ||_v for y scaled to norm 1.
RealBall dual_form_norm(const GroupElement& g, const EmbeddedPoint& y, prec_t bits);

struct IotaReport {
    Place place;
    long k_x = 0, k_a = 0;          // kernel dimensions
    std::vector<RealBall> m;        // m_v(a_i, x_i) = -log d_v(a_i, x_i)
    RealBall iota_x, iota_a;        // log-norm ratios at the normalized element
    RealBall bound_x, bound_a;      // stated upper bounds, error terms included
    RealBall error_term;            // archimedean error terms (0 at finite places)
    RealBall slack;                 // bound_x + bound_a - iota_x - iota_a
    std::vector<RealBall> det_defects;  // |det g_i| d_v - 1
    bool explicit_theta = false;    // iota recomputed with an explicit square root and matched
    // Finite places: iota_x, iota_a, bound_x, bound_a as exact multiples of log p.
    std::optional<std::array<Rational, 4>> log_p_coefficients;
    Verdict verdict = Verdict::Unknown;
};

// Evaluates iota_v(g~, [K_r(x, t_x)]) and iota_v(g~, [K_{q,r}(a, t_a)]) at the
// element g~ = g / theta for the embedding sigma and compares them with the
// stated bounds. PlaceMismatch when sigma does not live at v.
IotaReport iota_bound_check(const std::vector<ProjPoint>& x, const std::vector<ProjPoint>& a, const MultiDegree& r,
                            const Rational& t_x, const Rational& t_a, const Place& v, const Embedding& sigma,
                            prec_t bits, std::size_t max_points = kDefaultMaxLattice);

// sum b_i slope_i - 1/2 sum |b_i| log rank_i.
RealBall quotient_lb(const std::vector<long>& b, const std::vector<long>& ranks, const std::vector<Rational>& slopes,
                     prec_t bits);

struct PermutationNormReport {
    Integer basis_size;      // prod e_i^{Db_i}
    Rational norm_sq;        // ||eta(sigma) T||_2^2 / max |T_R|^2 at T = sum v_R
    Rational bound_sq;       // prod e_i^{Db_i}
    bool isometry = false;   // ||eta(sigma) T||_2 = ||T||_2 on a pseudo-random integer T
    bool holds = false;
};

// sigma[i] is a permutation of {0, ..., Db_i - 1}. SizeLimit when the tensor
// power has more than max_size coordinates.
PermutationNormReport permutation_norm_check(const std::vector<long>& e, const std::vector<long>& Db,
                                             const std::vector<std::vector<int>>& sigma,
                                             std::size_t max_size = 1u << 20, std::uint64_t seed = 1);

}  // namespace dioph
