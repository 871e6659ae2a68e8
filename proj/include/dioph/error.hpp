#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

enum class ErrorKind {
    DomainError,
    SizeLimit,
    RamifiedUnsupported,
    PrecisionExhausted,
    DistanceZero,
    EqualPoints,
    HypothesisFailed,
    NotGenerating,
    NotIrreducible,
    ZeroForm,
    ZeroSection,
    ZeroSubspace,
    ProjectionClash,
    InternalMismatch,
    DegreeMismatch,
    DegenerateIntersection,
    CoincidentPoints,
    SSViolated,
    NotRealQuadratic,
    PlaceMismatch,
    InputError,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Tri-state outcome of a rigorous comparison.
enum class Verdict { True, False, Unknown };

std::string_view to_string(Verdict v);

inline Verdict verdict_and(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False) return Verdict::False;
    if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
    return Verdict::True;
}

inline Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }

}  // namespace dioph
