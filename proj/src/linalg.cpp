#include "dioph/linalg.hpp"

#include <algorithm>

namespace dioph {

Integer maximal_minor_gcd(IntMatrix B) {
    size_t k = B.size();
    if (k == 0) return Integer(1);
    size_t n = B[0].size();
    Integer prod = 1;
    for (size_t t = 0; t < k; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            size_t bi = k, bj = n;
            for (size_t i = t; i < k; ++i)
                for (size_t j = t; j < n; ++j)
                    if (B[i][j] != 0 && (bi == k || abs(B[i][j]) < abs(B[bi][bj]))) bi = i, bj = j;
            if (bi == k) return Integer(0);  // rank deficient
            std::swap(B[t], B[bi]);
            for (size_t i = 0; i < k; ++i) std::swap(B[i][t], B[i][bj]);
            bool clean = true;
            const Integer piv = B[t][t];
            for (size_t i = t + 1; i < k; ++i) {
                if (B[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), B[i][t].get_mpz_t(), piv.get_mpz_t());
                for (size_t j = t; j < n; ++j) B[i][j] -= q * B[t][j];
                if (B[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (B[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), B[t][j].get_mpz_t(), piv.get_mpz_t());
                for (size_t i = t; i < k; ++i) B[i][j] -= q * B[i][t];
                if (B[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        prod *= abs(B[t][t]);
    }
    return prod;
}

IntMatrix primitive_integer_rows(const Matrix<Rational>& M) {
    IntMatrix out;
    out.reserve(M.size());
    for (const auto& row : M) {
        Integer den = 1;
        for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> r(row.size());
        Integer g = 0;
        for (size_t j = 0; j < row.size(); ++j) {
            r[j] = Integer(row[j] * den);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[j].get_mpz_t());
        }
        if (g > 1)
            for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dioph
