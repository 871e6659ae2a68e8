#include "dioph/rational.hpp"

#include <algorithm>
#include <cctype>

#include "dioph/error.hpp"

namespace dioph {

std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::RamifiedUnsupported: return "RamifiedUnsupported";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::DistanceZero: return "DistanceZero";
        case ErrorKind::EqualPoints: return "EqualPoints";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::NotGenerating: return "NotGenerating";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::ZeroForm: return "ZeroForm";
        case ErrorKind::ZeroSection: return "ZeroSection";
        case ErrorKind::ZeroSubspace: return "ZeroSubspace";
        case ErrorKind::ProjectionClash: return "ProjectionClash";
        case ErrorKind::InternalMismatch: return "InternalMismatch";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::DegenerateIntersection: return "DegenerateIntersection";
        case ErrorKind::CoincidentPoints: return "CoincidentPoints";
        case ErrorKind::SSViolated: return "SSViolated";
        case ErrorKind::NotRealQuadratic: return "NotRealQuadratic";
        case ErrorKind::PlaceMismatch: return "PlaceMismatch";
        case ErrorKind::InputError: return "InputError";
    }
    return "Unknown";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "True";
        case Verdict::False: return "False";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.empty()) throw Error(ErrorKind::InputError, "empty integer in '" + std::string(whole) + "'");
    size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw Error(ErrorKind::InputError, "bad integer in '" + std::string(whole) + "'");
    for (size_t i = start; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
            throw Error(ErrorKind::InputError, "not an exact rational: '" + std::string(whole) + "'");
    if (t[0] == '+') t.erase(0, 1);
    return Integer(t);
}

}  // namespace

Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s, s));
    Integer num = parse_integer(s.substr(0, slash), s);
    Integer den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw Error(ErrorKind::InputError, "zero denominator in '" + std::string(s) + "'");
    return make_rational(num, den);
}

long valuation(const Integer& x, const Integer& p) {
    if (x == 0) throw Error(ErrorKind::DomainError, "valuation of zero");
    Integer y = x;
    long v = 0;
    while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

long valuation(const Rational& x, const Integer& p) {
    return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

Rational rational_pow(const Integer& p, long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(r);
    return make_rational(Integer(1), r);
}

Rational rational_pow(const Rational& x, long e) {
    Integer n = x.get_num(), d = x.get_den();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer nn, dd;
    mpz_pow_ui(nn.get_mpz_t(), n.get_mpz_t(), k);
    mpz_pow_ui(dd.get_mpz_t(), d.get_mpz_t(), k);
    if (e < 0) std::swap(nn, dd);
    if (dd == 0) throw Error(ErrorKind::DomainError, "negative power of zero");
    return make_rational(nn, dd);
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

Integer pollard_rho(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return Integer(2);
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto f = [&](const Integer& v) {
            Integer w = v * v + c;
            mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
            return w;
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Integer diff = x - y;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_rec(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Integer d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factorize(const Integer& n0) {
    if (n0 == 0) throw Error(ErrorKind::DomainError, "factorize(0)");
    Integer n = n0;
    mpz_abs(n.get_mpz_t(), n.get_mpz_t());
    std::vector<Integer> primes;
    for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(static_cast<unsigned long>(p));
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, int>> res;
    for (const auto& p : primes) {
        if (!res.empty() && res.back().first == p)
            ++res.back().second;
        else
            res.emplace_back(p, 1);
    }
    return res;
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer floor_rational(const Rational& x) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Integer ceil_rational(const Rational& x) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

}  // namespace dioph
