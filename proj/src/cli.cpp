#include "dioph/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include <toml.hpp>

#include "dioph/acceptance.hpp"
#include "dioph/git.hpp"
#include "dioph/melb.hpp"
#include "dioph/wronskian.hpp"

namespace dioph {

namespace {

// ---------------------------------------------------------------- input

[[noreturn]] void bad(const toml::node* n, const std::string& field, const std::string& msg) {
    std::string where = "'" + field + "'";
    if (n && n->source().begin) where += " at line " + std::to_string(n->source().begin.line);
    throw Error(ErrorKind::InputError, where + ": " + msg);
}

const toml::node& need(const toml::table& t, const std::string& key) {
    const toml::node* n = t.get(key);
    if (!n) bad(nullptr, key, "missing required field");
    return *n;
}

const toml::array& as_array(const toml::node& n, const std::string& field) {
    const toml::array* a = n.as_array();
    if (!a) bad(&n, field, "expected an array");
    return *a;
}

const toml::table& as_table(const toml::node& n, const std::string& field) {
    const toml::table* t = n.as_table();
    if (!t) bad(&n, field, "expected a table");
    return *t;
}

Rational parse_rational(const toml::node& n, const std::string& field) {
    if (auto v = n.as_integer()) return Rational(static_cast<long>(v->get()));
    if (n.is_floating_point()) bad(&n, field, "floats are not accepted; write the rational as a \"p/q\" string");
    const toml::value<std::string>* s = n.as_string();
    if (!s) bad(&n, field, "expected an integer or a \"p/q\" string");
    static const std::regex form(R"(\s*(-?\d+)\s*(/\s*(\d+))?\s*)");
    std::smatch m;
    const std::string& text = s->get();
    if (!std::regex_match(text, m, form)) bad(&n, field, "'" + text + "' is not of the form p or p/q");
    Integer num(m[1].str()), den(m[3].matched ? m[3].str() : std::string("1"));
    if (den == 0) bad(&n, field, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

long parse_long(const toml::node& n, const std::string& field) {
    auto v = n.as_integer();
    if (!v) bad(&n, field, "expected an integer");
    return static_cast<long>(v->get());
}

std::vector<long> parse_longs(const toml::node& n, const std::string& field) {
    std::vector<long> out;
    for (const auto& e : as_array(n, field)) out.push_back(parse_long(e, field));
    return out;
}

std::vector<Rational> parse_rationals(const toml::node& n, const std::string& field) {
    std::vector<Rational> out;
    for (const auto& e : as_array(n, field)) out.push_back(parse_rational(e, field));
    return out;
}

MultiDegree parse_degree(const toml::node& n, const std::string& field) {
    std::vector<long> r = parse_longs(n, field);
    if (r.empty()) bad(&n, field, "need at least one entry");
    for (long x : r)
        if (x <= 0) bad(&n, field, "entries must be positive");
    return MultiDegree(r);
}

FieldPtr parse_field(const toml::table& t) {
    const toml::node* n = t.get("field");
    if (!n) return nullptr;
    std::vector<Integer> coeffs;
    for (const auto& e : as_array(*n, "field")) coeffs.emplace_back(parse_long(e, "field"));
    if (coeffs.size() < 3) bad(n, "field", "the minimal polynomial must have degree >= 2");
    return make_field(coeffs);
}

FieldElem parse_elem(const toml::node& n, const FieldPtr& K, const std::string& field) {
    if (!n.is_array()) return K ? FieldElem::embed(parse_rational(n, field), K) : FieldElem(parse_rational(n, field));
    if (!K) bad(&n, field, "coordinate vectors need a 'field'");
    std::vector<Rational> c = parse_rationals(n, field);
    if (static_cast<int>(c.size()) != K->degree())
        bad(&n, field, "expected " + std::to_string(K->degree()) + " coordinates in the power basis");
    return FieldElem(K, c);
}

ProjPoint parse_point(const toml::node& n, const FieldPtr& K, const std::string& field) {
    const toml::array& a = as_array(n, field);
    if (a.size() != 2) bad(&n, field, "a point is [x0, x1]");
    FieldElem x0 = parse_elem(a[0], K, field), x1 = parse_elem(a[1], K, field);
    if (x0.is_zero() && x1.is_zero()) bad(&n, field, "(0 : 0) is not a point");
    return ProjPoint(x0, x1);
}

std::vector<ProjPoint> parse_points(const toml::node& n, const FieldPtr& K, const std::string& field) {
    std::vector<ProjPoint> out;
    for (const auto& e : as_array(n, field)) out.push_back(parse_point(e, K, field));
    return out;
}

std::vector<std::vector<ProjPoint>> parse_point_tuples(const toml::node& n, const FieldPtr& K, const std::string& field) {
    std::vector<std::vector<ProjPoint>> out;
    for (const auto& e : as_array(n, field)) out.push_back(parse_points(e, K, field));
    return out;
}

Place parse_place(const toml::node& n, const std::string& field) {
    if (auto v = n.as_integer()) return Place::finite(Integer(static_cast<long>(v->get())));
    const toml::value<std::string>* s = n.as_string();
    if (!s) bad(&n, field, "a place is \"inf\" or a prime");
    return Place::parse(s->get());
}

// { r = [...], terms = [{ l = [...], c = ... }] } or { r = [...], coeffs = [...] } in box order.
MultiHomogPoly parse_section(const toml::node& n, const FieldPtr& K, const std::string& field) {
    const toml::table& t = as_table(n, field);
    MultiDegree r = parse_degree(need(t, "r"), field + ".r");
    MultiHomogPoly f(r);
    if (const toml::node* c = t.get("coeffs")) {
        const toml::array& a = as_array(*c, field + ".coeffs");
        Integer box = r.box_size();
        if (Integer(static_cast<long>(a.size())) != box) bad(c, field + ".coeffs", "expected " + to_string(box) + " coefficients");
        std::size_t k = 0;
        for_each_box_point(r, [&](const std::vector<long>& l) { f.add(l, parse_elem(a[k++], K, field + ".coeffs")); });
        return f;
    }
    for (const auto& e : as_array(need(t, "terms"), field + ".terms")) {
        const toml::table& term = as_table(e, field + ".terms");
        std::vector<long> l = parse_longs(need(term, "l"), field + ".terms.l");
        if (l.size() != r.n()) bad(&e, field + ".terms.l", "exponent length differs from r");
        for (std::size_t i = 0; i < l.size(); ++i)
            if (l[i] < 0 || l[i] > r[i]) bad(&e, field + ".terms.l", "exponent outside [0, r_i]");
        f.add(l, parse_elem(need(term, "c"), K, field + ".terms.c"));
    }
    return f;
}

SectionSubspace parse_subspace(const toml::node& n, const std::string& field) {
    const toml::table& t = as_table(n, field);
    MultiDegree r = parse_degree(need(t, "r"), field + ".r");
    Matrix<Rational> rows;
    for (const auto& e : as_array(need(t, "basis"), field + ".basis")) {
        rows.push_back(parse_rationals(e, field + ".basis"));
        if (Integer(static_cast<long>(rows.back().size())) != r.box_size())
            bad(&e, field + ".basis", "rows need prod(r_i + 1) = " + to_string(r.box_size()) + " entries");
    }
    return SectionSubspace(r, rows);
}

OneParamSubgroup parse_subgroup(const toml::table& t) {
    std::vector<long> m = parse_longs(need(t, "m"), "m");
    const toml::node* b = t.get("bases");
    if (!b) return OneParamSubgroup::standard(m);
    std::vector<Matrix<Rational>> bases;
    for (const auto& e : as_array(*b, "bases")) {
        Matrix<Rational> M;
        for (const auto& row : as_array(e, "bases")) M.push_back(parse_rationals(row, "bases"));
        bases.push_back(M);
    }
    return OneParamSubgroup(m, bases);
}

std::optional<Rational> opt_rational(const toml::table& t, const std::string& key) {
    const toml::node* n = t.get(key);
    if (!n) return std::nullopt;
    return parse_rational(*n, key);
}

// ---------------------------------------------------------------- output

struct Outcome {
    Json result = Json::object();
    Json checks = Json::array();
    Verdict verdict = Verdict::True;

    void check(const std::string& name, const std::string& statement, Verdict v, Json detail = Json()) {
        Json c;
        c["check"] = name;
        c["statement"] = statement;
        c["verdict"] = to_json(v);
        if (!detail.is_null()) c["detail"] = std::move(detail);
        checks.push_back(std::move(c));
        verdict = verdict_and(verdict, v);
    }
};

struct Context {
    const RunConfig& cfg;
    const toml::table& in;
    prec_t bits() const { return cfg.precision; }
};

Json rational_list(const std::vector<Rational>& v) {
    Json j = Json::array();
    for (const auto& q : v) j.push_back(to_json(q));
    return j;
}

Json points_json(const std::vector<ProjPoint>& v) {
    Json j = Json::array();
    for (const auto& p : v) j.push_back(to_json(p));
    return j;
}

Json subspace_json(const SectionSubspace& W, bool with_basis) {
    Json j;
    j["r"] = to_json(W.degree());
    j["dim"] = W.dim();
    j["ambient_dim"] = W.ambient_dim();
    if (with_basis) {
        Json rows = Json::array();
        for (const auto& row : W.basis()) rows.push_back(rational_list(row));
        j["basis"] = rows;
    }
    return j;
}

bool small_enough(const SectionSubspace& W) { return W.ambient_dim() * static_cast<std::size_t>(W.dim()) <= 4096; }

std::vector<Embedding> embeddings_at(const FieldPtr& K, const Place& v, prec_t bits) {
    return v.archimedean ? embeddings(K, v, bits) : padic_blocks(K, v, bits);
}

// ---------------------------------------------------------------- commands

void cmd_height(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    std::vector<ProjPoint> pts;
    if (const toml::node* p = c.in.get("point")) pts.push_back(parse_point(*p, K, "point"));
    if (const toml::node* p = c.in.get("points")) {
        auto more = parse_points(*p, K, "points");
        pts.insert(pts.end(), more.begin(), more.end());
    }
    if (pts.empty()) bad(nullptr, "point", "give 'point' or 'points'");
    Json rows = Json::array();
    for (const auto& x : pts) {
        Json r;
        r["point"] = to_json(x);
        r["height"] = to_json(height(x, c.bits()));
        rows.push_back(r);
    }
    o.result["heights"] = rows;
}

void cmd_distance(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    ProjPoint x = parse_point(need(c.in, "x"), K, "x"), y = parse_point(need(c.in, "y"), K, "y");
    Place v = parse_place(need(c.in, "place"), "place");
    o.result["x"] = to_json(x);
    o.result["y"] = to_json(y);
    o.result["place"] = to_json(v);
    if (x.is_rational() && y.is_rational()) {
        Distance d = distance_rational(x, y, v, c.bits());
        o.result["distance"] = d.exact ? to_json(*d.exact) : to_json(d.value);
        if (v.archimedean) o.result["distance_squared"] = to_json(distance_inf_squared(x, y));
        if (x != y) {
            LiouvilleReport lr = liouville_check(x, y, c.bits());
            Json det;
            det["cross_term"] = to_json(lr.cross_term);
            det["product_identity"] = to_json(lr.product_identity);
            det["sum_minus_log_d"] = to_json(lr.lhs);
            det["sum_heights"] = to_json(lr.rhs);
            o.check("product_formula", "prod_v d_v(x, y) ||x|| ||y|| = 1 over the places dividing the cross term, so sum_v -log d_v(x, y) = h(x) + h(y)",
                    verdict_of(lr.holds), det);
        }
        return;
    }
    FieldPtr F = K;
    Json rows = Json::array();
    for (const Embedding& s : embeddings_at(F, v, c.bits())) {
        Distance d = distance_v(embed_point(x, s, c.bits()), embed_point(y, s, c.bits()), c.bits());
        Json r;
        r["embedding"] = s.describe();
        r["distance"] = d.exact ? to_json(*d.exact) : to_json(d.value);
        r["is_zero"] = d.is_zero;
        if (!d.is_zero && mpfr_sgn(d.value.lo()) > 0) r["minus_log_distance"] = to_json(-log(d.value));
        rows.push_back(r);
    }
    o.result["embeddings"] = rows;
}

void cmd_combi(const Context& c, Outcome& o) {
    int n = static_cast<int>(parse_long(need(c.in, "n"), "n"));
    if (n < 1 || n > 40) bad(c.in.get("n"), "n", "need 1 <= n <= 40");
    std::optional<int> q;
    if (const toml::node* qn = c.in.get("q")) q = static_cast<int>(parse_long(*qn, "q"));
    std::optional<MultiDegree> r;
    if (const toml::node* rn = c.in.get("r")) {
        r = parse_degree(*rn, "r");
        if (static_cast<int>(r->n()) != n) bad(rn, "r", "r must have n entries");
    }
    if (auto t = opt_rational(c.in, "t")) {
        if (*t < 0 || *t > n) bad(c.in.get("t"), "t", "t must lie in [0, n]");
        Json j;
        j["t"] = to_json(*t);
        j["vol_lower"] = to_json(vol_lower(n, *t));
        j["vol_upper"] = to_json(Rational(1 - vol_lower(n, *t)));
        j["mu"] = to_json(mu(n, *t));
        j["int_zeta1_lower"] = to_json(int_zeta1_lower(n, *t));
        j["int_zeta1_upper"] = to_json(int_zeta1_upper(n, *t));
        Rational sym = mu(n, Rational(n - *t));
        o.check("mu_symmetry", "mu_n(t) = mu_n(n - t)", verdict_of(sym == mu(n, *t)));
        if (*t <= 1)
            o.check("mu_closed_form", "mu_n(t) = t^n/n! (1 - 2t/(n+1)) on [0, 1]", verdict_of(mu_small_closed_form(n, *t) == mu(n, *t)));
        if (q && r) {
            RealValue u = u_qr(*q, *r, RealValue(*t, c.bits()), c.bits());
            j["u_qr"] = to_json(u);
        }
        if (r) {
            j["lattice_lower"] = to_json(lattice_count(*r, *t, LatticeSide::Lower, c.cfg.max_lattice));
            j["lattice_upper"] = to_json(lattice_count(*r, *t, LatticeSide::Upper, c.cfg.max_lattice));
        }
        o.result["at_t"] = j;
    }
    if (r && q) o.result["eps_qr"] = to_json(eps_qr(*q, *r));
    if (auto delta = opt_rational(c.in, "delta")) {
        if (!q) bad(nullptr, "q", "delta needs q");
        Json j;
        j["delta"] = to_json(*delta);
        j["t_qn"] = to_json(t_qn(*q, n, *delta, c.bits()));
        if (*q >= 2 && n >= 2 && *delta > 0) j["R_qn"] = to_json(big_r(*q, n, *delta, c.bits()));
        if (r) {
            j["u_tilde"] = to_json(u_tilde(*q, *r, *delta, c.bits()));
            try {
                j["w_qr"] = to_json(w_qr(*q, *r, *delta, c.bits()));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::HypothesisFailed) throw;
                j["w_qr"] = std::string("undefined: ") + e.what();
            }
        }
        o.result["at_delta"] = j;
    }
}

void cmd_index(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    MultiHomogPoly f = parse_section(need(c.in, "f"), K, "f");
    std::vector<ProjPoint> z = parse_points(need(c.in, "z"), K, "z");
    if (z.size() != f.n()) bad(c.in.get("z"), "z", "need one point per factor");
    Weight b = c.in.get("b") ? Weight(parse_rationals(*c.in.get("b"), "b")) : Weight::reciprocal(f.degree());
    if (b.n() != f.n()) bad(c.in.get("b"), "b", "need one weight per factor");
    std::optional<Rational> ind = index(f, z, b);
    o.result["section"] = f.to_string();
    o.result["z"] = points_json(z);
    o.result["b"] = rational_list(b.b);
    o.result["index"] = ind ? to_json(*ind) : Json("+inf");
}

struct KernelSpec {
    MultiDegree r;
    Rational t;
    std::vector<ProjPoint> points;
    bool rational = true;
};

KernelSpec parse_kernel(const toml::table& t, const FieldPtr& K, const std::string& prefix) {
    auto name = [&](const char* key) { return prefix.empty() ? std::string(key) : prefix + "." + key; };
    KernelSpec k;
    k.r = parse_degree(need(t, "r"), name("r"));
    k.t = parse_rational(need(t, "t"), name("t"));
    k.points = parse_points(need(t, "points"), K, name("points"));
    if (k.points.size() != k.r.n()) bad(t.get("points"), name("points"), "need one point per factor");
    for (const auto& p : k.points) k.rational = k.rational && p.is_rational();
    return k;
}

SectionSubspace build_kernel(const KernelSpec& k, std::size_t max_points) {
    return k.rational ? kernel_single(k.points, k.r, k.t, max_points) : kernel_conjugates(k.points, k.r, k.t, max_points);
}

void cmd_kernel(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    KernelSpec k = parse_kernel(c.in, K, "");
    std::size_t cap = c.cfg.max_lattice;
    SectionSubspace W = build_kernel(k, cap);
    o.result["points"] = points_json(k.points);
    o.result["t"] = to_json(k.t);
    o.result["kernel"] = subspace_json(W, small_enough(W));
    Integer upper = lattice_count(k.r, k.t, LatticeSide::Upper, cap);
    Integer lower = lattice_count(k.r, k.t, LatticeSide::Lower, cap);
    o.result["lattice_upper"] = to_json(upper);
    o.result["lattice_lower"] = to_json(lower);
    if (k.rational) {
        SectionSubspace V = kernel_single_by_conditions(k.points, k.r, k.t, cap);
        o.check("kernel_dimension", "dim K_r(x, t) = #(integer points of the box with sum l_i/r_i >= t)",
                verdict_of(Integer(W.dim()) == upper));
        o.check("kernel_routes", "monomial span and null space of the Taylor conditions coincide", verdict_of(V == W));
    } else {
        int q = k.points[0].field()->degree();
        Integer bound = k.r.box_size() - Integer(q) * lower;
        o.result["dimension_lower_bound"] = to_json(bound);
        o.check("kernel_dimension", "dim K_{q,r}(a, t) >= prod(r_i + 1) - q #(integer points with sum l_i/r_i < t)",
                verdict_of(Integer(W.dim()) >= bound));
    }
}

void cmd_instab(const Context& c, Outcome& o) {
    OneParamSubgroup lambda = parse_subgroup(c.in);
    FieldPtr K = parse_field(c.in);
    std::optional<KernelSpec> k;
    SectionSubspace W;
    if (const toml::node* s = c.in.get("subspace")) {
        W = parse_subspace(*s, "subspace");
    } else if (const toml::node* kn = c.in.get("kernel")) {
        k = parse_kernel(as_table(*kn, "kernel"), K, "kernel");
        W = build_kernel(*k, c.cfg.max_lattice);
    } else {
        bad(nullptr, "subspace", "give 'subspace' or 'kernel'");
    }
    if (W.dim() == 0) throw Error(ErrorKind::ZeroSubspace, "the subspace is zero");
    InstabilityReport rep = instab_subspace(lambda, W);
    long mw = instab_min_weight_basis(lambda, W);
    o.result["subspace"] = subspace_json(W, small_enough(W));
    o.result["mu"] = rep.mu;
    Json dims = Json::object();
    for (const auto& [p, d] : rep.filtration_dims) dims[std::to_string(p)] = d;
    o.result["filtration_dims"] = dims;
    o.result["mu_min_weight_basis"] = mw;
    o.check("instability_routes", "filtration formula equals the minimal-weight basis sum", verdict_of(mw == rep.mu));
    if (k && k->rational) {
        Integer closed = instab_kernel_closed_form(lambda, k->points, k->r, k->t, c.cfg.max_lattice);
        o.result["mu_closed_form"] = to_json(closed);
        o.check("instability_closed_form", "mu(lambda, [K_r(x, t)]) = sum_i (-1)^chi_i(x) m_i mu^Z_{r,i}(t)",
                verdict_of(closed == Integer(rep.mu)));
    }
}

void cmd_ss_check(const Context& c, Outcome& o) {
    int q = static_cast<int>(parse_long(need(c.in, "q"), "q"));
    MultiDegree r = parse_degree(need(c.in, "r"), "r");
    RealValue t_a(parse_rational(need(c.in, "t_a"), "t_a"), c.bits());
    RealValue t_x(parse_rational(need(c.in, "t_x"), "t_x"), c.bits());
    ConditionReport s = ss_condition(q, r, t_a, t_x, c.bits());
    o.result["eps_qr"] = to_json(eps_qr(q, r));
    o.result["mu_t_x_plus_eps"] = to_json(s.lhs);
    o.result["mu_u_t_a"] = to_json(s.rhs);
    o.check("semistability", "mu_n(t_x) + eps_{q,r} < mu_n(u_{q,r}(t_a))", s.verdict);
    const toml::node* two = c.in.get("two_dim");
    if (two && two->value_or(false)) {
        ConditionReport s2 = ss_condition_2d(q, r, t_a, t_x, c.bits());
        o.result["two_dim_lhs"] = to_json(s2.lhs);
        o.result["two_dim_rhs"] = to_json(s2.rhs);
        o.check("semistability_two_dim", "mu_2(t_x) < d (1 - 2 sqrt(2 (d + eps'))) with d = 1 - q vol(t_a)", s2.verdict);
    }
}

void cmd_dyson2(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    MultiHomogPoly f = parse_section(need(c.in, "f"), K, "f");
    auto targets = parse_point_tuples(need(c.in, "targets"), K, "targets");
    std::vector<ProjPoint> y = parse_points(need(c.in, "y"), K, "y");
    Weight b(parse_rationals(need(c.in, "b"), "b"));
    TwoWeightDysonReport rep = two_weight_dyson(f, targets, y, b);
    const auto& v = rep.volumes;
    o.result["indices"] = rational_list(v.indices);
    o.result["index_y"] = to_json(v.index_y);
    o.result["max_br"] = to_json(v.max_br);
    o.result["volume_sum"] = to_json(v.lhs);
    o.result["volume_bound"] = to_json(v.rhs);
    o.result["hypothesis_value"] = to_json(rep.hypothesis);
    o.result["vol_y"] = to_json(rep.vol_y);
    o.check("two_weight_volumes", "sum_{sigma=0..q} vol(t^(sigma)) <= 1 + eps_{q+1,r}", verdict_of(v.holds));
    o.check("two_weight_index", "ind_b(f, y) < max_i b_i r_i", verdict_of(rep.index_below));
    o.check("two_weight_volume_at_y", "vol(ind_b(f, y)/max b_i r_i) <= 1 - sum vol(ind) + eps_{q+1,r}", verdict_of(rep.volume_bound));
}

void cmd_dyson_n(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    MultiHomogPoly f = parse_section(need(c.in, "f"), K, "f");
    auto pts = parse_point_tuples(need(c.in, "points"), K, "points");
    DysonReport rep = dyson_check(f, pts);
    o.result["indices"] = rational_list(rep.indices);
    o.result["volume_sum"] = to_json(rep.lhs);
    o.result["bound"] = to_json(rep.rhs);
    o.result["q"] = rep.q;
    o.check("dyson", "sum_{sigma=0..q} vol(t^(sigma)) <= 1 + eps_{q,r} with t^(sigma) = ind_{1/r}(f, z^(sigma))",
            verdict_of(rep.holds));
}

ApproximationInstance parse_instance(const toml::table& t, prec_t bits) {
    ApproximationInstance inst;
    inst.field = parse_field(t);
    if (!inst.field) bad(nullptr, "field", "missing required field");
    if (const toml::node* p = t.get("places"))
        for (const auto& e : as_array(*p, "places")) inst.places.push_back(parse_place(e, "places"));
    inst.r = parse_degree(need(t, "r"), "r");
    inst.x = parse_points(need(t, "x"), nullptr, "x");
    inst.a = parse_points(need(t, "a"), inst.field, "a");
    inst.delta = opt_rational(t, "delta");
    if (auto ta = opt_rational(t, "t_a")) inst.t_a = RealValue(*ta, bits);
    if (auto tx = opt_rational(t, "t_x")) inst.t_x = RealValue(*tx, bits);
    return inst;
}

Json side_json(const SideReport& s) {
    Json j;
    j["lhs"] = to_json(s.lhs);
    j["rhs"] = to_json(s.rhs);
    j["slack"] = to_json(s.slack);
    j["sum_r_h_x"] = to_json(s.sum_rh_x);
    j["sum_r_h_a"] = to_json(s.sum_rh_a);
    Json consts = Json::object();
    for (const auto& [k, v] : s.constants) consts[k] = to_json(v);
    j["constants"] = consts;
    Json terms = Json::array();
    for (const auto& t : s.terms) {
        Json tj;
        tj["place"] = to_json(t.place);
        Json per = Json::array();
        for (std::size_t k = 0; k < t.values.size(); ++k) {
            Json e;
            e["embedding"] = t.embeddings[k];
            e["min_i_r_i_m_v"] = to_json(t.values[k]);
            per.push_back(e);
        }
        tj["embeddings"] = per;
        tj["chosen"] = to_json(t.chosen);
        tj["attained_by"] = t.embeddings[t.attained_by];
        terms.push_back(tj);
    }
    j["places"] = terms;
    j["archimedean_place_in_S"] = s.archimedean_in_s;
    return j;
}

Json param_json(const ParamReport& p) {
    Json j;
    j["t_a"] = to_json(p.t_a);
    j["u_tilde"] = to_json(p.u_tilde);
    j["w"] = to_json(p.w);
    j["eps_qr"] = to_json(p.eps);
    Json checks = Json::array();
    for (const auto& c : p.checks) {
        Json e;
        e["name"] = c.name;
        e["lhs"] = to_json(c.lhs);
        e["rhs"] = to_json(c.rhs);
        e["strict"] = c.strict;
        e["verdict"] = to_json(c.verdict);
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["all_pass"] = p.all_pass;
    return j;
}

const char* kLowerBoundStatement =
    "t_{q,n}(delta) sum_{v in S} min_sigma min_i r_i m_v(a_i^sigma, x_i) <= (1 + 2q delta^(1/n)) sum r_i h(x_i) "
    "+ (q/delta) sum r_i h(a_i) + (log sqrt(2q)/delta + log 8) |r|";
const char* kMainStatement =
    "(1 - q vol(t_a)) t_a sum_{v in S} max_sigma min_i r_i m_v(a_i^sigma, x_i) <= C1 sum r_i h(x_i) + q C2 sum r_i h(a_i) + C3 |r|";

void cmd_melb(const Context& c, Outcome& o) {
    ApproximationInstance inst = parse_instance(c.in, c.bits());
    if (!inst.delta) bad(nullptr, "delta", "missing required field");
    SideReport s = melb_sides(inst, c.bits());
    o.result["lower_bound"] = side_json(s);
    o.check("lower_bound", kLowerBoundStatement, s.verdict);
    if (s.archimedean_in_s) o.result["note"] = "S contains the archimedean place; the lower bound is stated for finite places";
    ParamReport p = param_pipeline(inst.q(), inst.n(), *inst.delta, inst.r, c.bits());
    o.result["parameters"] = param_json(p);
    for (const auto& pc : p.checks) o.check("parameters: " + pc.name, pc.name, pc.verdict);
    RealBall d = derived_rhs(inst.q(), inst.n(), *inst.delta, inst.r, s.sum_rh_x, s.sum_rh_a, c.bits());
    o.result["derived_rhs"] = to_json(d);
    o.check("derived_rhs", "the right-hand side derived from the main theorem is at most the stated one", less_eq(d, s.rhs));
}

void cmd_main_thm(const Context& c, Outcome& o) {
    ApproximationInstance inst = parse_instance(c.in, c.bits());
    if (!inst.t_a || !inst.t_x) {
        if (!inst.delta) bad(nullptr, "t_a", "give t_a and t_x, or delta");
        ParamReport p = param_pipeline(inst.q(), inst.n(), *inst.delta, inst.r, c.bits());
        Rational offset = opt_rational(c.in, "t_x_offset").value_or(Rational(1, 1000));
        if (offset <= 0) bad(c.in.get("t_x_offset"), "t_x_offset", "must be positive");
        inst.t_a = p.t_a;
        inst.t_x = RealValue(p.w.upper() + offset, c.bits());
        o.result["parameters"] = param_json(p);
    }
    o.result["t_a"] = to_json(*inst.t_a);
    o.result["t_x"] = to_json(*inst.t_x);
    SideReport s = main_theorem_sides(inst, c.bits());
    o.check("semistability", "mu_n(t_x) + eps_{q,r} < mu_n(u_{q,r}(t_a))", Verdict::True);
    o.result["main_theorem"] = side_json(s);
    o.check("main_theorem", kMainStatement, s.verdict);
}

void cmd_plucker(const Context& c, Outcome& o) {
    FieldPtr K = parse_field(c.in);
    if (const toml::node* s = c.in.get("subspace")) {
        SectionSubspace W = parse_subspace(*s, "subspace");
        PluckerHeightReport h = plucker_height(W, c.bits(), c.cfg.max_plucker, c.cfg.max_lattice);
        o.result["subspace"] = subspace_json(W, small_enough(W));
        o.result["height"] = to_json(h.value);
        o.result["gram_det"] = to_json(h.gram_det);
        o.result["content"] = to_json(h.content);
        o.result["plucker_route"] = h.plucker_route;
        o.result["coordinates"] = h.coordinates;
        return;
    }
    const toml::node* kn = c.in.get("kernel");
    if (!kn) bad(nullptr, "subspace", "give 'subspace' or 'kernel'");
    KernelSpec k = parse_kernel(as_table(*kn, "kernel"), K, "kernel");
    SectionSubspace W = build_kernel(k, c.cfg.max_lattice);
    o.result["kernel"] = subspace_json(W, small_enough(W));
    if (W.dim() == 0) {
        o.result["note"] = "the kernel is zero; its height is not defined";
        return;
    }
    PluckerHeightReport h = plucker_height(W, c.bits(), c.cfg.max_plucker, c.cfg.max_lattice);
    o.result["height"] = to_json(h.value);
    o.result["plucker_route"] = h.plucker_route;
    if (k.rational) {
        RationalBoundReport b = rational_height_bound_check(k.points, k.r, k.t, c.bits(), c.cfg.max_plucker, c.cfg.max_lattice);
        o.result["bound"] = to_json(b.bound);
        o.result["exact_ratio"] = to_json(b.ratio);
        o.check("height_bound_rational", "h([K_r(x, t)]) <= sum_i (sum over the upper set of l_i) h(x_i)", verdict_of(b.holds));
    } else {
        RealBall ub = ub_height_algebraic(k.points, k.r, k.t, W.dim(), c.bits(), c.cfg.max_lattice);
        o.result["bound"] = to_json(ub);
        o.result["slack"] = to_json(ub - h.value);
        o.check("height_bound_algebraic", "h([K_{q,r}(a, t)]) <= (prod(r_i + 1) - k)(q sum r_i h(a_i) + |r| log sqrt(2q))",
                less_eq(h.value, ub));
    }
}

void cmd_suite(const Context& c, Outcome& o) {
    AcceptanceOptions opt;
    opt.bits = c.bits();
    opt.seed = c.cfg.seed;
    if (const toml::node* only = c.in.get("criteria"))
        for (long id : parse_longs(*only, "criteria")) {
            if (id < 1 || id > kCriterionCount) bad(only, "criteria", "criteria are numbered 1 to 12");
            opt.only.push_back(static_cast<int>(id));
        }
    Json rows = Json::array();
    for (const CriterionResult& r : run_acceptance(opt)) {
        Json j;
        j["id"] = r.id;
        j["name"] = r.name;
        j["passed"] = r.passed;
        j["summary"] = r.summary;
        j["detail"] = r.detail;
        rows.push_back(j);
        o.check("criterion " + std::to_string(r.id), r.name, verdict_of(r.passed));
    }
    o.result["criteria"] = rows;
}

using Handler = std::function<void(const Context&, Outcome&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"height", cmd_height},   {"distance", cmd_distance}, {"combi", cmd_combi},       {"index", cmd_index},
        {"kernel", cmd_kernel},   {"instab", cmd_instab},     {"ss-check", cmd_ss_check}, {"dyson2", cmd_dyson2},
        {"dyson-n", cmd_dyson_n}, {"melb", cmd_melb},         {"main-thm", cmd_main_thm}, {"plucker", cmd_plucker},
        {"suite", cmd_suite},
    };
    return h;
}

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::HypothesisFailed:
        case ErrorKind::SSViolated:
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::InternalMismatch:
            return false;
        default:
            return true;
    }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"height", "distance", "combi",  "index",    "kernel",
                                                   "instab", "ss-check", "dyson2", "dyson-n", "melb",
                                                   "main-thm", "plucker", "suite"};
    return names;
}

void apply_env_overrides(RunConfig& cfg) {
    auto env = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    auto number = [](const std::string& name, const std::string& s) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size()) throw Error(ErrorKind::InputError, name + " must be a nonnegative integer, got '" + s + "'");
        return v;
    };
    if (auto v = env("DIOPH_PRECISION")) cfg.precision = static_cast<prec_t>(number("DIOPH_PRECISION", *v));
    if (auto v = env("DIOPH_SEED")) cfg.seed = number("DIOPH_SEED", *v);
    if (auto v = env("DIOPH_MAX_LATTICE")) cfg.max_lattice = number("DIOPH_MAX_LATTICE", *v);
    if (auto v = env("DIOPH_MAX_PLUCKER")) cfg.max_plucker = number("DIOPH_MAX_PLUCKER", *v);
    if (auto v = env("DIOPH_INPUT")) cfg.input = *v;
    if (auto v = env("DIOPH_OUTPUT")) cfg.output = *v;
}

RunResult run_text(const RunConfig& cfg, const std::string& toml_text) {
    Json report;
    report["command"] = cfg.command;
    report["precision"] = cfg.precision;
    report["seed"] = cfg.seed;
    RunResult out;
    auto fail = [&](int code, const std::string& kind, const std::string& msg) {
        Json e;
        e["kind"] = kind;
        e["message"] = msg;
        report["verdict"] = to_json(Verdict::Unknown);
        report["error"] = e;
        out.exit_code = code;
        out.report = render(report);
        return out;
    };
    auto it = handlers().find(cfg.command);
    if (it == handlers().end()) return fail(kExitInput, "InputError", "unknown command '" + cfg.command + "'");
    if (cfg.precision < 32) return fail(kExitInput, "InputError", "precision must be at least 32 bits");
    toml::table in;
    try {
        in = toml::parse(toml_text, cfg.input.empty() ? std::string_view("<input>") : std::string_view(cfg.input));
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << e.description() << " at line " << e.source().begin.line << ", column " << e.source().begin.column;
        return fail(kExitInput, "InputError", msg.str());
    }
    Outcome o;
    try {
        it->second(Context{cfg, in}, o);
    } catch (const Error& e) {
        return fail(is_input_error(e.kind()) ? kExitInput : kExitFailed, std::string(to_string(e.kind())), e.what());
    } catch (const std::exception& e) {
        return fail(kExitInput, "InputError", e.what());
    }
    report["verdict"] = to_json(o.verdict);
    report["checks"] = o.checks;
    report["result"] = o.result;
    out.exit_code = o.verdict == Verdict::True ? kExitOk : kExitFailed;
    out.report = render(report);
    return out;
}

RunResult run(const RunConfig& cfg) {
    std::string text;
    if (!cfg.input.empty()) {
        std::ifstream f(cfg.input);
        if (!f) {
            Json report;
            report["command"] = cfg.command;
            report["verdict"] = to_json(Verdict::Unknown);
            report["error"] = {{"kind", "InputError"}, {"message", "cannot read " + cfg.input}};
            return {kExitInput, render(report)};
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    RunResult res = run_text(cfg, text);
    if (!cfg.output.empty()) {
        std::ofstream f(cfg.output);
        if (!f) throw Error(ErrorKind::InputError, "cannot write " + cfg.output);
        f << res.report;
    }
    return res;
}

}  // namespace dioph
