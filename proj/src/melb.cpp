#include "dioph/melb.hpp"

#include <algorithm>

#include "dioph/git.hpp"

namespace dioph {

namespace {

RealBall ball_of(const RealValue& v, prec_t bits) { return v.exact ? RealBall(*v.exact, bits) : v.ball.with_bits(bits); }

RealBall vol_of(int n, const RealValue& t, prec_t bits) {
    return t.exact ? RealBall(vol_lower(n, *t.exact), bits) : vol_lower(n, t.ball.with_bits(bits));
}

RealBall mu_of(int n, const RealValue& t, prec_t bits) {
    return t.exact ? RealBall(mu(n, *t.exact), bits) : mu(n, t.ball.with_bits(bits));
}

RealBall zeta_upper_of(int n, const RealValue& t, prec_t bits) {
    return t.exact ? RealBall(int_zeta1_upper(n, *t.exact), bits) : int_zeta1_upper(n, t.ball.with_bits(bits));
}

RealBall log_sqrt(long x, prec_t bits) { return log(RealBall(x, bits)) * RealBall(Rational(1, 2), bits); }

Rational inv_factorial(int n) { return Rational(1) / Rational(factorial(n)); }

// Affine coordinate generating the field of definition of a point.
FieldElem generator_of(const ProjPoint& p) { return p.x0().is_zero() ? p.x0() / p.x1() : p.x1() / p.x0(); }

std::vector<Embedding> all_embeddings(const FieldPtr& K, const Place& v, prec_t bits) {
    // At a finite place embeddings in one unramified block are Frobenius
    // conjugates and have the same distance to a Q-point, so one per block suffices.
    return v.archimedean ? embeddings(K, v, bits) : padic_blocks(K, v, bits);
}

PlaceTerm place_term(const ApproximationInstance& inst, const Place& v, bool take_max, prec_t bits) {
    PlaceTerm t;
    t.place = v;
    for (const Embedding& s : all_embeddings(inst.field, v, bits)) {
        std::optional<RealBall> inner;
        for (std::size_t i = 0; i < inst.x.size(); ++i) {
            RealBall m = RealBall(inst.r[i], bits) * local_proximity(inst.x[i], {inst.a[i], s}, bits);
            inner = inner ? min(*inner, m) : m;
        }
        t.embeddings.push_back(s.describe());
        t.values.push_back(*inner);
    }
    if (t.values.empty()) throw Error(ErrorKind::DomainError, "no embeddings of K' at " + v.to_string());
    t.chosen = t.values[0];
    for (std::size_t k = 1; k < t.values.size(); ++k) {
        t.chosen = take_max ? max(t.chosen, t.values[k]) : min(t.chosen, t.values[k]);
        bool better = take_max ? t.values[k].mid_double() > t.values[t.attained_by].mid_double()
                               : t.values[k].mid_double() < t.values[t.attained_by].mid_double();
        if (better) t.attained_by = k;
    }
    return t;
}

void fill_heights(const ApproximationInstance& inst, SideReport& rep, prec_t bits) {
    rep.sum_rh_x = RealBall(bits);
    rep.sum_rh_a = RealBall(bits);
    for (std::size_t i = 0; i < inst.x.size(); ++i) {
        RealBall ri(inst.r[i], bits);
        rep.sum_rh_x += ri * height(inst.x[i], bits);
        rep.sum_rh_a += ri * height(inst.a[i], bits);
    }
}

RealBall sum_terms(const ApproximationInstance& inst, SideReport& rep, bool take_max, prec_t bits) {
    RealBall s(bits);
    for (const Place& v : inst.places) {
        if (v.archimedean) rep.archimedean_in_s = true;
        rep.terms.push_back(place_term(inst, v, take_max, bits));
        s += rep.terms.back().chosen;
    }
    return s;
}

void finish(SideReport& rep) {
    rep.slack = rep.rhs - rep.lhs;
    rep.verdict = less_eq(rep.lhs, rep.rhs);
}

}  // namespace

void validate_instance(const ApproximationInstance& inst) {
    if (!inst.field || inst.q() < 2) throw Error(ErrorKind::DomainError, "K' must be an extension of degree q >= 2");
    if (inst.n() < 2) throw Error(ErrorKind::DomainError, "need n >= 2 couples");
    inst.r.require_positive();
    if (inst.x.size() != inst.r.n() || inst.a.size() != inst.r.n())
        throw Error(ErrorKind::DomainError, "need exactly n couples (x_i, a_i)");
    std::vector<Place> seen = inst.places;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw Error(ErrorKind::DomainError, "places in S must be distinct");
    for (std::size_t i = 0; i < inst.x.size(); ++i) {
        if (!inst.x[i].is_rational()) throw Error(ErrorKind::DomainError, "x_" + std::to_string(i + 1) + " is not a Q-point");
        const ProjPoint& a = inst.a[i];
        FieldPtr Ka = a.field();
        if (!Ka || Ka != inst.field || generator_of(a).algebraic_degree() != inst.q())
            throw Error(ErrorKind::NotGenerating, "a_" + std::to_string(i + 1) + " = " + a.to_string() + " does not generate K'");
    }
}

SideReport melb_sides(const ApproximationInstance& inst, prec_t bits) {
    validate_instance(inst);
    if (!inst.delta) throw Error(ErrorKind::DomainError, "the lower bound needs delta");
    const Rational& delta = *inst.delta;
    int q = inst.q(), n = inst.n();
    if (delta <= 0 || delta >= inv_factorial(n) / 2)
        throw Error(ErrorKind::HypothesisFailed, "delta = " + dioph::to_string(delta) + " is not in (0, 1/(2 n!))");
    RealBall R = big_r(q, n, delta, bits);
    for (int i = 0; i + 1 < n; ++i) {
        RealBall ratio(make_rational(inst.r[i], inst.r[i + 1]), bits);
        Verdict v = greater(ratio, R);
        std::string what = "r_" + std::to_string(i + 1) + "/r_" + std::to_string(i + 2) + " > R_{q,n}(delta) = " + R.mid_string(12);
        if (v == Verdict::False) throw Error(ErrorKind::HypothesisFailed, "ratio condition fails: " + what);
        if (v == Verdict::Unknown) throw Error(ErrorKind::PrecisionExhausted, "cannot decide " + what);
    }

    SideReport rep;
    fill_heights(inst, rep, bits);
    RealBall t = ball_of(t_qn(q, n, delta, bits), bits);
    RealBall dl(delta, bits);
    RealBall c_x = RealBall(1L, bits) + RealBall(2L * q, bits) * pow(dl, make_rational(1, n));
    RealBall c_a = RealBall(q, bits) / dl;
    RealBall c_r = log_sqrt(2L * q, bits) / dl + log(RealBall(8L, bits));
    rep.constants = {{"t_qn", t}, {"R_qn", R}, {"coef_hx", c_x}, {"coef_ha", c_a}, {"coef_r", c_r}};
    rep.lhs = t * sum_terms(inst, rep, false, bits);
    rep.rhs = c_x * rep.sum_rh_x + c_a * rep.sum_rh_a + c_r * RealBall(inst.r.total(), bits);
    finish(rep);
    return rep;
}

SideReport main_theorem_sides(const ApproximationInstance& inst, prec_t bits) {
    validate_instance(inst);
    if (!inst.t_a || !inst.t_x) throw Error(ErrorKind::DomainError, "the main theorem needs t_a and t_x");
    int q = inst.q(), n = inst.n();
    const RealValue& t_a = *inst.t_a;
    const RealValue& t_x = *inst.t_x;
    if (t_a.lower() < 0 || t_x.lower() < 0 || t_a.upper() > n || t_x.upper() > n)
        throw Error(ErrorKind::DomainError, "t_a and t_x must lie in [0, n]");
    ConditionReport ss = ss_condition(q, inst.r, t_a, t_x, bits);
    if (ss.verdict == Verdict::False)
        throw Error(ErrorKind::SSViolated, "mu(t_x) + eps = " + ss.lhs.mid_string(12) + " is not below mu(u(t_a)) = " + ss.rhs.mid_string(12));
    if (ss.verdict == Verdict::Unknown) throw Error(ErrorKind::PrecisionExhausted, "cannot decide the semistability condition");

    SideReport rep;
    fill_heights(inst, rep, bits);
    RealBall Q(q, bits), one(1L, bits), half(Rational(1, 2), bits);
    RealBall eps(eps_qr(q, inst.r), bits);
    RealBall q_vol_a = Q * vol_of(n, t_a, bits);
    // vol(u_{q,r}(t_a)) is the clamped value itself.
    RealBall vol_u = min(max(one + eps - q_vol_a, RealBall(0L, bits)), one);
    RealBall mu_x = mu_of(n, t_x, bits);
    RealBall shared = Q * (vol_u - mu_x) * half;
    RealBall c1 = zeta_upper_of(n, t_x, bits) + shared;
    RealBall c2 = q_vol_a + shared;
    RealBall c3 = vol_u * log_sqrt(6, bits) + (one - vol_of(n, t_x, bits)) * log_sqrt(8, bits) + q_vol_a * log_sqrt(2L * q, bits);
    rep.constants = {{"C1", c1}, {"C2", c2}, {"C3", c3}, {"vol_u", vol_u}, {"eps", eps},
                     {"ss_lhs", ss.lhs}, {"ss_rhs", ss.rhs}};
    rep.lhs = (one - q_vol_a) * ball_of(t_a, bits) * sum_terms(inst, rep, true, bits);
    rep.rhs = c1 * rep.sum_rh_x + Q * c2 * rep.sum_rh_a + c3 * RealBall(inst.r.total(), bits);
    finish(rep);
    return rep;
}

RealBall derived_rhs(int q, int n, const Rational& delta, const MultiDegree& r, const RealBall& sum_rh_x,
                     const RealBall& sum_rh_a, prec_t bits) {
    RealBall dl(delta, bits), one(1L, bits);
    RealBall root_d = pow(dl, make_rational(1, n));
    RealBall c = dl * (one + root_d) * log_sqrt(6, bits) + dl * log_sqrt(8, bits) + (one - dl) * log_sqrt(2L * q, bits);
    RealBall c_x = one + RealBall(make_rational(3 * q, 2), bits) * root_d;
    return c_x * sum_rh_x + RealBall(q, bits) / dl * sum_rh_a + RealBall(r.total(), bits) * c / dl;
}

ParamReport param_pipeline(int q, int n, const Rational& delta, const MultiDegree& r, prec_t bits) {
    if (q < 2 || n < 2) throw Error(ErrorKind::DomainError, "need q >= 2 and n >= 2");
    if (static_cast<int>(r.n()) != n) throw Error(ErrorKind::DomainError, "r must have n entries");
    r.require_positive();
    if (delta <= 0) throw Error(ErrorKind::HypothesisFailed, "delta must be positive");
    Rational eps = eps_qr(q, r);
    Rational vol_target = delta + eps;
    if (vol_target > inv_factorial(n))
        throw Error(ErrorKind::HypothesisFailed, "vol(u~) = delta + eps = " + dioph::to_string(vol_target) + " exceeds 1/n!");
    if (delta >= inv_factorial(n) / 2)
        throw Error(ErrorKind::HypothesisFailed, "delta = " + dioph::to_string(delta) + " is not below 1/(2 n!)");
    prec_t w = bits + 16;
    RealBall dl(delta, w), E(eps, w), one(1L, w);
    RealBall d_root = pow(dl, make_rational(1, n));
    RealBall eps_cap = dl * d_root;
    Verdict eps_ok = less(E, eps_cap);
    if (eps_ok == Verdict::False)
        throw Error(ErrorKind::HypothesisFailed, "eps = " + dioph::to_string(eps) + " is not below delta^(1 + 1/n) = " + eps_cap.mid_string(12));
    if (eps_ok == Verdict::Unknown) throw Error(ErrorKind::PrecisionExhausted, "cannot compare eps with delta^(1 + 1/n)");

    ParamReport rep{t_qn(q, n, delta, bits), u_tilde(q, r, delta, bits), w_qr(q, r, delta, bits), eps, {}, false};
    RealBall u = ball_of(rep.u_tilde, w), wb = ball_of(rep.w, w);
    RealBall vol_u = vol_of(n, rep.u_tilde, w);
    RealBall mu_u = mu_of(n, rep.u_tilde, w), mu_w = mu_of(n, rep.w, w);
    RealBall vt(vol_target, w);

    auto add = [&](std::string name, const RealBall& lhs, const RealBall& rhs, bool strict) {
        ParamCheck c{std::move(name), lhs.with_bits(bits), rhs.with_bits(bits), strict, Verdict::Unknown};
        c.verdict = strict ? less(lhs, rhs) : less_eq(lhs, rhs);
        rep.checks.push_back(std::move(c));
    };
    auto add_equal = [&](std::string name, const RealBall& lhs, const RealBall& rhs) {
        ParamCheck c{std::move(name), lhs.with_bits(bits), rhs.with_bits(bits), false, Verdict::Unknown};
        c.verdict = (lhs - rhs).contains_zero() ? Verdict::True : Verdict::False;
        rep.checks.push_back(std::move(c));
    };
    Rational nf = factorial(n);
    add_equal("vol(u~) = delta + eps", vol_u, vt);
    add("delta + eps <= 1/n!", vt, RealBall(inv_factorial(n), w), false);
    add("u~ <= 1", u, one, false);
    // The lower region of the unit cube carries int zeta_1 = 1/2 minus the upper part.
    RealBall zeta_low = RealBall(Rational(1, 2), w) - zeta_upper_of(n, rep.u_tilde, w);
    add("int_{lower(u~)} zeta_1 <= (delta + eps)^((n+1)/n) / 2", zeta_low,
        pow(vt, make_rational(n + 1, n)) * RealBall(Rational(1, 2), w), false);
    add("eps < mu(u~)", E, mu_u, true);
    add("mu(u~) <= eps + mu((n! delta)^(1/n))", mu_u, E + mu(n, pow(RealBall(nf * delta, w), make_rational(1, n))), false);
    add_equal("mu(u~) = mu(w) + eps", mu_u, mu_w + E);
    add("n/2 <= w", RealBall(make_rational(n, 2), w), wb, false);
    add("vol(upper(w)) <= delta", one - vol_of(n, rep.w, w), dl, false);
    add("int_{upper(w)} zeta_1 <= delta", zeta_upper_of(n, rep.w, w), dl, false);
    add("vol(u~) - mu(w) <= 3 delta^(1 + 1/n)", vol_u - mu_w, RealBall(3L, w) * eps_cap, false);
    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const ParamCheck& c) { return c.verdict == Verdict::True; });
    return rep;
}

}  // namespace dioph
