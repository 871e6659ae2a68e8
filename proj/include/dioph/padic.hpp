#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dioph/qpoly.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// A place of Q: archimedean, or finite at a prime p.
struct Place {
    bool archimedean = true;
    Integer p = 0;

    static Place infinity() { return Place{}; }
    static Place finite(const Integer& p);  // checks primality
    // "inf" or a decimal prime.
    static Place parse(const std::string& s);
    std::string to_string() const;

    friend bool operator==(const Place& a, const Place& b) {
        return a.archimedean == b.archimedean && (a.archimedean || a.p == b.p);
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.archimedean != b.archimedean) return a.archimedean;
        return !a.archimedean && a.p < b.p;
    }
};

// Normalized |x|_v with |p|_p = 1/p; exact for rationals at every place.
Rational abs_value(const Place& v, const Rational& x);

// Unramified local ring Z_p[y]/(g) with g monic, irreducible mod p, known mod p^N.
struct LocalRing {
    Integer p;
    long N;
    Integer pN;
    ZPoly g;
    int degree() const { return static_cast<int>(g.size()) - 1; }
};
using LocalRingPtr = std::shared_ptr<const LocalRing>;

// p^e * (u + O(p^N)) with u in Z_p[y]/(g) of unit content (some coordinate prime to p).
// N counts relative digits; N == 0 means only "value in p^e O" is known.
class PadicBall {
public:
    PadicBall() = default;
    static PadicBall zero(LocalRingPtr ring);
    static PadicBall from_rational(const Rational& x, LocalRingPtr ring);
    // Element given by integer coordinates in the power basis of y, known mod p^N.
    static PadicBall from_coords(std::vector<Integer> u, LocalRingPtr ring);

    const LocalRingPtr& ring() const { return ring_; }
    bool is_exact_zero() const { return exact_zero_; }
    // True when the value is known to be nonzero.
    bool is_nonzero() const { return !exact_zero_ && N_ > 0; }
    long shift() const { return e_; }
    long rel_precision() const { return N_; }
    long abs_precision() const { return e_ + N_; }
    const std::vector<Integer>& unit() const { return u_; }

    // Exact valuation; PrecisionExhausted if the ball contains zero.
    long valuation() const;
    // |x|_p = p^(-valuation) in C_p with |p| = 1/p.
    Rational abs() const;

    PadicBall operator-() const;
    PadicBall inverse() const;
    std::string to_string() const;

    friend PadicBall operator+(const PadicBall& a, const PadicBall& b);
    friend PadicBall operator-(const PadicBall& a, const PadicBall& b);
    friend PadicBall operator*(const PadicBall& a, const PadicBall& b);
    friend PadicBall operator/(const PadicBall& a, const PadicBall& b);

private:
    void normalize();
    LocalRingPtr ring_;
    bool exact_zero_ = true;
    long e_ = 0;
    long N_ = 0;
    std::vector<Integer> u_;
};

// Unramified decomposition of a monic integer polynomial at p: Hensel lifts of the
// irreducible factors mod p to precision p^N. RamifiedUnsupported when the
// reduction mod p is not squarefree.
std::vector<LocalRingPtr> unramified_blocks(const std::vector<Integer>& minpoly, const Integer& p, long N);

}  // namespace dioph
