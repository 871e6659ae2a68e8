#pragma once

#include <vector>

#include "dioph/sections.hpp"

namespace dioph {

// f = sum_k left[k] (x) right[k] with rho = rank of the coefficient matrix.
struct RankDecomposition {
    int rho = 0;
    std::vector<BinaryForm> left, right;
};

// Exact rank factorization of a section on P^1 x P^1; ZeroSection for f = 0.
RankDecomposition tensor_rank(const MultiHomogPoly& f);
// Sum of left (x) right.
MultiHomogPoly recompose(const RankDecomposition& d);

// d^{a0+a1} f / dT0^{a0} dT1^{a1}; degree drops by a0 + a1 (which must be <= deg f).
BinaryForm partial(const BinaryForm& f, int a0, int a1);
// Same on factor i of a section.
MultiHomogPoly partial(const MultiHomogPoly& f, std::size_t i, int a0, int a1);

// ((r - rho + 1)!/r!)^rho det(d^{rho-1} f_l / dT0^{rho-j} dT1^{j-1}), of degree rho (r - rho + 1).
BinaryForm wronskian_univ(const std::vector<BinaryForm>& forms);

// Bivariate Wronskian straight from its rho x rho determinant of mixed derivatives.
MultiHomogPoly wronskian_biv_direct(const MultiHomogPoly& f, int rho);

struct BivariateWronskian {
    BinaryForm wr1, wr2;
    MultiHomogPoly product;  // wr1 (x) wr2, equal to the direct determinant
};

// Product formula from a rank decomposition, checked against the direct
// determinant; InternalMismatch if they differ.
BivariateWronskian wronskian_biv(const MultiHomogPoly& f, const RankDecomposition& d);

struct WronskianIndexReport {
    int rho = 0;
    bool swapped = false;  // factors exchanged so that r_1 >= r_2
    Rational t;            // min(1, ind_b(f, z) / max b_i r_i)
    Rational lhs;          // ind_b(Wr(f), z)
    Rational rhs;
    bool holds = false;
};

// ind_b(Wr(f), z) >= max(b_i r_i) ((rho-1)(2 - (rho-1)/r_2) vol(t) - rho eps_{2,r}) with r_2 = min r_i.
WronskianIndexReport wronskian_index_bound(const MultiHomogPoly& f, const std::vector<ProjPoint>& z, const Weight& b);

struct TwoWeightVolumeReport {
    std::vector<Rational> indices;  // ind_{1/r}(f, z^(sigma)), sigma = 1..q
    Rational index_y;               // ind_b(f, y)
    Rational max_br;                // max b_i r_i
    Rational lhs;                   // sum over sigma = 0..q of vol(t^(sigma))
    Rational rhs;                   // 1 + eps_{q+1,r}
    bool holds = false;
};

// sum_{sigma=0}^q vol(t^(sigma)) <= 1 + eps_{q+1,r}, with t^(0) from ind_b at y and
// the other t^(sigma) from ind_{1/r}, all clamped to 1. ProjectionClash when two
// points share a coordinate.
TwoWeightVolumeReport two_weight_volume_check(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& targets,
                                              const std::vector<ProjPoint>& y, const Weight& b);

struct TwoWeightDysonReport {
    TwoWeightVolumeReport volumes;
    Rational hypothesis;      // 1 - sum vol(ind_{1/r}) + eps_{q+1,r}, required < 1/2
    bool index_below = false;  // ind_b(f, y) < max b_i r_i
    Rational vol_y;            // vol(ind_b(f, y) / max b_i r_i)
    bool volume_bound = false;  // vol_y <= hypothesis
};

// Two-weight Dyson conclusion; HypothesisFailed if some ind_{1/r}(f, z) > 1 or
// the hypothesis value is >= 1/2.
TwoWeightDysonReport two_weight_dyson(const MultiHomogPoly& f, const std::vector<std::vector<ProjPoint>>& targets,
                                      const std::vector<ProjPoint>& y, const Weight& b);

}  // namespace dioph
