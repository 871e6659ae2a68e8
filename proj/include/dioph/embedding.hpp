#pragma once

#include <variant>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/numfield.hpp"
#include "dioph/padic.hpp"

namespace dioph {

// A Q-linear embedding sigma of K' into C_v, fixed by the image of theta.
// Archimedean: a certified isolating ball for a complex root of the minimal
// polynomial. Finite: theta maps to the class of y in an unramified block
// Z_p[y]/(g) (for a degree-1 block, y is the Hensel-lifted root itself).
struct Embedding {
    FieldPtr field;
    Place place;
    prec_t bits = 128;
    ComplexBall root;     // archimedean only
    LocalRingPtr ring;    // finite only
    int block = 0;        // index of the block (finite) or root (archimedean)

    int local_degree() const { return place.archimedean ? 1 : ring->degree(); }
    bool is_real() const { return place.archimedean && root.is_real(); }
    std::string describe() const;
};

// Archimedean: all q roots (real ascending, then conjugate pairs).
// Finite: the roots of the minimal polynomial lying in Q_p (degree-1 blocks).
std::vector<Embedding> embeddings(const FieldPtr& field, const Place& v, prec_t bits);

// One representative embedding per unramified block at a finite place (every
// block, any local degree). The local degrees sum to the field degree.
std::vector<Embedding> padic_blocks(const FieldPtr& field, const Place& v, prec_t bits);

// The identity "embedding" of Q at a place (field == nullptr); at finite places
// it carries the local ring Z_p.
Embedding rational_embedding(const Place& v, prec_t bits);
LocalRingPtr trivial_ring(const Integer& p, long N);

// Same embedding at a higher working precision.
Embedding refine(const Embedding& e, prec_t bits);

using EmbeddedValue = std::variant<ComplexBall, PadicBall>;

// sigma(x); rational inputs map exactly (point balls, or full-precision p-adics).
EmbeddedValue eval_embedded(const Embedding& e, const FieldElem& x, prec_t bits);
EmbeddedValue embed_rational(const Place& v, const Rational& x, const LocalRingPtr& ring, prec_t bits);

// |sigma(x)|_v as a ball (archimedean) or exact rational promoted to a ball.
RealBall abs_embedded(const EmbeddedValue& z, prec_t bits);
bool is_exact_zero(const EmbeddedValue& z);

// p-adic precision (in digits) used for a requested number of bits.
long padic_digits(const Integer& p, prec_t bits);

}  // namespace dioph
