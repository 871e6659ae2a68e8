#include "dioph/corpus.hpp"

namespace dioph {

ConvergentCorpus generate_convergents(const std::vector<Integer>& minpoly, std::size_t count) {
    if (minpoly.size() != 3 || minpoly[2] == 0)
        throw Error(ErrorKind::NotRealQuadratic, "need a polynomial of degree exactly 2");
    Integer a = minpoly[2], b = minpoly[1], c = minpoly[0];
    if (a < 0) a = -a, b = -b, c = -c;
    Integer D = b * b - 4 * a * c;
    if (D <= 0) throw Error(ErrorKind::NotRealQuadratic, "discriminant " + to_string(D) + " is not positive");
    Integer s = sqrt(D);
    if (s * s == D) throw Error(ErrorKind::NotRealQuadratic, "discriminant " + to_string(D) + " is a square");
    ConvergentCorpus out;
    out.minpoly = {c, b, a};
    // alpha = (-b + sqrt D) / (2a) and 2a divides D - b^2 = -4ac.
    out.P0 = -b;
    out.Q0 = 2 * a;
    out.D = D;
    if (out.P0 + s < 0 || (out.P0 + s == 0))
        throw Error(ErrorKind::NotRealQuadratic, "largest root is not positive");
    Integer P = out.P0, Q = out.Q0;
    Integer p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;  // p_{-1}, p_{-2} shifted
    for (std::size_t k = 0; k < count; ++k) {
        // floor((P + sqrt D) / Q) for irrational sqrt D.
        Integer ak;
        if (Q > 0) {
            mpz_fdiv_q(ak.get_mpz_t(), Integer(P + s).get_mpz_t(), Q.get_mpz_t());
        } else {
            Integer absq = -Q;
            mpz_fdiv_q(ak.get_mpz_t(), Integer(P + s).get_mpz_t(), absq.get_mpz_t());
            ak = -(ak + 1);
        }
        out.partial_quotients.push_back(ak);
        Integer pn = ak * p_prev + p_cur, qn = ak * q_prev + q_cur;
        p_cur = p_prev, q_cur = q_prev;
        p_prev = pn, q_prev = qn;
        out.p.push_back(pn);
        out.q.push_back(qn);
        Integer Pn = ak * Q - P;
        Integer rem = D - Pn * Pn;
        if (rem % Q != 0) throw Error(ErrorKind::InternalMismatch, "continued fraction recursion lost integrality");
        Q = rem / Q;
        P = Pn;
    }
    for (std::size_t k = 0; k + 1 < out.p.size(); ++k) {
        Integer d = out.p[k] * out.q[k + 1] - out.p[k + 1] * out.q[k];
        if (abs(d) != 1) throw Error(ErrorKind::InternalMismatch, "consecutive convergents are not unimodular");
    }
    return out;
}

}  // namespace dioph
