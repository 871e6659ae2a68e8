#pragma once

#include <vector>

#include "dioph/heights.hpp"

namespace dioph {

// Continued fraction data for the largest real root alpha of a x^2 + b x + c.
struct ConvergentCorpus {
    std::vector<Integer> minpoly;  // c, b, a (low degree first)
    Integer P0, Q0, D;             // alpha = (P0 + sqrt D) / Q0
    std::vector<Integer> partial_quotients;
    std::vector<Integer> p, q;     // convergents p_k / q_k

    // (q_k : p_k), whose affine coordinate is p_k / q_k.
    ProjPoint point(std::size_t k) const { return ProjPoint::rational(Rational(q[k]), Rational(p[k])); }
};

// First `count` convergents by the exact periodic expansion. NotRealQuadratic
// unless the polynomial has degree 2, a non-square positive discriminant and a
// positive largest root.
ConvergentCorpus generate_convergents(const std::vector<Integer>& minpoly, std::size_t count);

}  // namespace dioph
