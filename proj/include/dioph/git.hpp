#pragma once

#include <map>
#include <vector>

#include "dioph/combinatorics.hpp"
#include "dioph/sections.hpp"

namespace dioph {

// Diagonalized one-parameter subgroup of SL_2^n. For factor i the adapted basis
// is T_{i0} = a T0 + b T1, T_{i1} = c T0 + d T1 with bases[i] = [[a, b], [c, d]];
// lambda(tau) scales T_{i0} by tau^{m_i} and T_{i1} by tau^{-m_i}.
class OneParamSubgroup {
public:
    OneParamSubgroup() = default;
    OneParamSubgroup(std::vector<long> m, std::vector<Matrix<Rational>> bases);
    // Adapted bases equal to the standard ones.
    static OneParamSubgroup standard(std::vector<long> m);

    std::size_t n() const { return m_.size(); }
    const std::vector<long>& m() const { return m_; }
    const std::vector<Matrix<Rational>>& bases() const { return bases_; }

    // y_lambda: the point where every T_{i0} vanishes.
    std::vector<ProjPoint> instability_point() const;
    // chi_i(x) = 1 iff T_{i0} vanishes at x_i; forced to 0 when m_i = 0.
    int chi(std::size_t i, const ProjPoint& x) const;
    std::vector<int> chi(const std::vector<ProjPoint>& x) const;

    // lambda-weight sum m_i (r_i - 2 k_i) of the adapted monomial with exponent k.
    long weight(const MultiDegree& r, const std::vector<long>& k) const;
    long p_min(const MultiDegree& r) const;
    long p_max(const MultiDegree& r) const;

    // Coordinates in the adapted monomial basis prod T_{i0}^{r_i - k_i} T_{i1}^{k_i}
    // (box order) of the section with standard coordinates v.
    std::vector<Rational> adapted_coordinates(const MultiDegree& r, const std::vector<Rational>& v) const;

private:
    void check_degree(const MultiDegree& r) const;
    std::vector<long> m_;
    std::vector<Matrix<Rational>> bases_;
};

struct InstabilityReport {
    long mu = 0;
    std::map<long, int> filtration_dims;  // p -> dim W[p] for p_min <= p <= p_max
};

// mu(lambda, [W]) from the filtration W[p] = W cap V[p] (exact ranks).
InstabilityReport instab_subspace(const OneParamSubgroup& lambda, const SectionSubspace& W);

// Same quantity through a basis whose minimal-weight components are independent:
// sum over that basis of minus the minimal weight.
long instab_min_weight_basis(const OneParamSubgroup& lambda, const SectionSubspace& W);

// sum_i (-1)^{chi_i(x)} m_i mu^Z_{r,i}(t).
Integer instab_kernel_closed_form(const OneParamSubgroup& lambda, const std::vector<ProjPoint>& x,
                                  const MultiDegree& r, const Rational& t,
                                  std::size_t max_points = kDefaultMaxLattice);

// mu(lambda, [f]) computed as minus the minimal weight and as <m, r> - 2 ind_m(f, y_lambda);
// InternalMismatch if they differ.
long instab_line_via_index(const OneParamSubgroup& lambda, const MultiHomogPoly& f);

struct ConditionReport {
    Verdict verdict = Verdict::Unknown;
    RealBall lhs;  // the side that must be smaller
    RealBall rhs;
};

// mu_n(t_x) + eps_{q,r} < mu_n(u_{q,r}(t_a)).
ConditionReport ss_condition(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x, prec_t bits);

// n = 2: mu_2(t_x) < d (1 - 2 sqrt(2 (d + eps'_{q+1,r}))) with d = 1 - q vol(t_a)
// and eps' the min/max variant. HypothesisFailed unless 0 <= d + eps' <= 1/2.
ConditionReport ss_condition_2d(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x, prec_t bits);

struct GrassmannReport {
    long mu1 = 0, mu2 = 0, mu_sum = 0, mu_cap = 0;
    bool holds = false;  // mu1 + mu2 >= mu_sum + mu_cap
};

// DegenerateIntersection when W1 cap W2 = 0; ZeroSubspace when W1 or W2 is zero.
GrassmannReport grassmann_inequality_check(const OneParamSubgroup& lambda, const SectionSubspace& W1,
                                           const SectionSubspace& W2);

// mu(W1) >= mu(W2) - p_min (dim W1 - dim W2) for W1 inside W2 (DomainError otherwise).
bool inclusion_inequality_check(const OneParamSubgroup& lambda, const SectionSubspace& W1, const SectionSubspace& W2);

struct DiscreteSSRow {
    long alpha = 0;
    std::vector<Verdict> per_factor;
    Verdict all = Verdict::Unknown;
};

// For each alpha in [alpha_lo, alpha_hi] and each i: the lattice condition
// mu^Z_{alpha r,i}(u + rho) > mu^Z_{alpha r,i}(t_x) + alpha^{n+1} r_i (r_1...r_n)(eps_{q,r} + delta).
// Ball-valued u or t_x are evaluated at both endpoints; disagreement gives Unknown.
std::vector<DiscreteSSRow> ss_prime_discrete(int q, const MultiDegree& r, const RealValue& t_a, const RealValue& t_x,
                                             const Rational& delta, const Rational& rho, long alpha_lo, long alpha_hi,
                                             prec_t bits, std::size_t max_points = kDefaultMaxLattice);

}  // namespace dioph
