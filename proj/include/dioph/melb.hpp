#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dioph/combinatorics.hpp"
#include "dioph/heights.hpp"

namespace dioph {

// Couples (x_i, a_i) with x_i a Q-point and a_i a point generating K', together
// with the places S and either delta or the pair (t_a, t_x).
struct ApproximationInstance {
    FieldPtr field;  // K', of degree q >= 2 over Q
    std::vector<Place> places;
    MultiDegree r;
    std::vector<ProjPoint> x, a;
    std::optional<Rational> delta;
    std::optional<RealValue> t_a, t_x;

    int q() const { return field ? field->degree() : 1; }
    int n() const { return static_cast<int>(r.n()); }
};

// Contribution of one place: the inner min over i for each embedding, and the
// outer min (lower bound) or max (main theorem) over embeddings.
struct PlaceTerm {
    Place place;
    std::vector<std::string> embeddings;
    std::vector<RealBall> values;  // min_i r_i m_v(a_i^sigma, x_i), one per embedding
    RealBall chosen;
    std::size_t attained_by = 0;  // index into embeddings; a hull of ties picks the first
};

struct SideReport {
    RealBall lhs, rhs, slack;  // slack = rhs - lhs
    std::map<std::string, RealBall> constants;
    std::vector<PlaceTerm> terms;
    RealBall sum_rh_x, sum_rh_a;  // sum r_i h(x_i), sum r_i h(a_i)
    bool archimedean_in_s = false;  // the lower bound is stated for finite places only
    Verdict verdict = Verdict::Unknown;
};

// Checks couples, dimensions and the field of definition of each a_i.
// NotGenerating if some a_i does not generate K'.
void validate_instance(const ApproximationInstance& inst);

// Both sides of the effective lower bound with the inner minimum over all
// embeddings at each place. HypothesisFailed names the violated hypothesis.
SideReport melb_sides(const ApproximationInstance& inst, prec_t bits);

// Both sides of the main theorem at (t_a, t_x), maximum over embeddings.
// SSViolated if the semistability condition fails.
SideReport main_theorem_sides(const ApproximationInstance& inst, prec_t bits);

// Right-hand side obtained from the main theorem with t_a = t_{q,n}(delta),
// t_x -> w_{q,r}(delta) and the parameter estimates, divided by delta:
// (1 + 3/2 q delta^(1/n)) sum r_i h(x_i) + q/delta sum r_i h(a_i) + |r| C(delta)/delta
// with C(delta) = delta (1 + delta^(1/n)) log sqrt 6 + delta log sqrt 8 + (1 - delta) log sqrt(2q).
RealBall derived_rhs(int q, int n, const Rational& delta, const MultiDegree& r, const RealBall& sum_rh_x,
                     const RealBall& sum_rh_a, prec_t bits);

struct ParamCheck {
    std::string name;
    RealBall lhs, rhs;  // claim lhs <= rhs (or lhs < rhs when strict)
    bool strict = false;
    Verdict verdict = Verdict::Unknown;
};

struct ParamReport {
    RealValue t_a, u_tilde, w;
    Rational eps;
    std::vector<ParamCheck> checks;
    bool all_pass = false;
};

// t_a = t_{q,n}(delta), u~ = u_{q,r}(t_a) and w = w_{q,r}(delta), with the
// estimates used to pass from the main theorem to the lower bound re-evaluated
// on this instance. HypothesisFailed when delta + eps > 1/n!, delta is outside
// (0, 1/(2 n!)) or eps >= delta^(1 + 1/n).
ParamReport param_pipeline(int q, int n, const Rational& delta, const MultiDegree& r, prec_t bits);

}  // namespace dioph
