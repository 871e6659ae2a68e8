#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/embedding.hpp"
#include "dioph/numfield.hpp"

namespace dioph {

// Point (x0 : x1) of P^1 over Q or a number field. Q-points are kept as coprime
// integers with x0 > 0, or (0 : 1).
class ProjPoint {
public:
    ProjPoint() = default;
    static ProjPoint rational(const Rational& x0, const Rational& x1);
    ProjPoint(FieldElem x0, FieldElem x1);

    const FieldElem& x0() const { return x0_; }
    const FieldElem& x1() const { return x1_; }
    FieldPtr field() const { return common_field(x0_.field(), x1_.field()); }
    bool is_rational() const { return x0_.is_rational() && x1_.is_rational(); }
    // Canonical coprime integer representative of a Q-point.
    Integer num0() const;
    Integer num1() const;
    // Affine coordinate x1/x0; requires x0 != 0.
    FieldElem affine() const;
    std::string to_string() const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b);
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

private:
    FieldElem x0_{Rational(1)}, x1_{Rational(0)};
};

// Absolute logarithmic height with the l2 norm at archimedean places and the
// max norm at finite places, normalized by the field degree.
RealBall height(const ProjPoint& x, prec_t bits);

// Image of a point under an embedding (or, for a Q-point, at a place).
struct EmbeddedPoint {
    Place place;
    EmbeddedValue z0, z1;
};

EmbeddedPoint embed_point(const ProjPoint& x, const Embedding& sigma, prec_t bits);
// Q-point at place v; ring is required (and shared with the partner point) at finite places.
EmbeddedPoint embed_rational_point(const ProjPoint& x, const Place& v, const LocalRingPtr& ring, prec_t bits);

// ||(z0, z1)||_v: l2 at infinity, max at finite places.
RealBall point_norm(const EmbeddedPoint& z, prec_t bits);

struct Distance {
    RealBall value;
    std::optional<Rational> exact;  // set when the distance is rational and known exactly
    bool is_zero = false;           // cross term vanishes identically
};

Distance distance_v(const EmbeddedPoint& x, const EmbeddedPoint& y, prec_t bits);
// Both points over Q.
Distance distance_rational(const ProjPoint& x, const ProjPoint& y, const Place& v, prec_t bits);
// Squared archimedean distance of two Q-points, an exact rational.
Rational distance_inf_squared(const ProjPoint& x, const ProjPoint& y);

// Target a (over K') together with an embedding at the place of interest.
struct ProximityTarget {
    ProjPoint a;
    Embedding sigma;
};

// -log d_v(sigma(a), x), retrying at higher precision when the ball straddles.
RealBall local_proximity(const ProjPoint& x, const ProximityTarget& t, prec_t bits);
// Sum of local proximities; DistanceZero when x coincides with a target.
RealBall proximity(const ProjPoint& x, const std::vector<ProximityTarget>& targets, prec_t bits);

struct LiouvilleReport {
    bool holds = false;
    Rational cross_term;
    // Exact identity: prod_v d_v(x,y)^2 * ||x||^2 ||y||^2 = 1 with coprime representatives.
    Rational product_identity;
    RealBall lhs, rhs;  // sum_v -log d_v  and  h(x) + h(y)
    std::vector<Integer> primes;
};

LiouvilleReport liouville_check(const ProjPoint& x, const ProjPoint& y, prec_t bits);

}  // namespace dioph
