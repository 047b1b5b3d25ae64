#pragma once

// Exact integer/rational helpers shared by every module.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pellinv {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Integer& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    // keep r * r representable
    r = std::min<std::uint64_t>(r, 0xFFFFFFFFULL);
    while (r * r > n) --r;
    while (r < 0xFFFFFFFFULL && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_u64(std::uint64_t n) {
    auto r = isqrt_u64(n);
    return r * r == n;
}

// Floor division and nonnegative remainder for a positive modulus.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// num/den in canonical form (GMP requires it for comparisons).
inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer floor(const Rational& r) {
    return floor_div(r.get_num(), r.get_den());
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool fits_i64(const Integer& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

inline std::int64_t to_i64(const Integer& n) { return mpz_get_si(n.get_mpz_t()); }

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Sign of a + b*sqrt(d) for d > 0 non-square, decided by squaring.
int sign_of_surd(const Rational& a, const Rational& b, const Integer& d);

// Parses a decimal integer; throws pellinv::Error(InvalidArgument) on junk.
Integer parse_integer(const std::string& text);

// Parses "p/q", a decimal like "1.25", or an integer into an exact rational.
Rational parse_rational(const std::string& text);

// Renders a rational with a fixed number of significant digits.
std::string to_decimal(const Rational& r, int significant = 12);
std::string to_decimal(long double x, int significant = 12);

}  // namespace pellinv
