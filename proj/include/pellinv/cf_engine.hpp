#pragma once

// Exact periodic continued fractions of omega_d, convergents, the norms nu_n,
// and finite expansions of rationals. No floating point anywhere.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pellinv/arith.hpp"

namespace pellinv {

// Which order is being expanded: Z[sqrt d] (omega = sqrt d) or, for d = 1 mod 4,
// Z[(1 + sqrt d)/2].
enum class Ring : std::uint8_t { Sqrt = 0, HalfSqrt = 1 };

inline int ring_index(Ring r) { return static_cast<int>(r); }
Ring ring_from_index(long index);
// omega_d's ring as fixed by d mod 4.
Ring natural_ring(const Integer& d);

// Throws SquareInput / RingMismatch / InvalidArgument for a bad (d, ring).
void require_omega(const Integer& d, Ring ring);

// (P + sqrt d) / Q with Q | d - P^2.
struct QuadraticSurd {
    Integer P;
    Integer Q;
    Integer d;

    static QuadraticSurd omega(const Integer& d, Ring ring);

    Integer floor() const;
    // The total quotient after removing floor(): 1 / (this - floor()).
    QuadraticSurd next() const;

    bool operator==(const QuadraticSurd& o) const { return P == o.P && Q == o.Q && d == o.d; }
};

struct Expansion {
    Ring ring = Ring::Sqrt;
    Integer d;
    Integer a0;
    std::vector<Integer> period;  // [a_1, ..., a_l]

    std::size_t length() const { return period.size(); }
    // a_1 .. a_{l-1}
    std::span<const Integer> palindrome() const {
        return std::span<const Integer>(period).first(period.size() - 1);
    }
    // Partial quotient a_n of the infinite expansion, n >= 0.
    const Integer& term(std::size_t n) const;
    // D = d for ring 1, 4d for ring 0.
    Integer discriminant() const { return ring == Ring::Sqrt ? Integer(4 * d) : d; }
};

struct Convergent {
    long n = 0;
    Integer p;
    Integer q;
};

// a + b * omega_d
struct QuadraticInteger {
    Integer a;
    Integer b;
    Integer d;
    Ring ring = Ring::Sqrt;

    Integer norm() const;
    QuadraticInteger operator*(const QuadraticInteger& o) const;
    // Sign of the real embedding of (this - k), exact.
    int compare(const Integer& k) const;
    // Real embedding rendered as (u + v sqrt d), u and v rational.
    Rational rational_part() const;
    Rational sqrt_coefficient() const;
    bool operator==(const QuadraticInteger& o) const {
        return a == o.a && b == o.b && d == o.d && ring == o.ring;
    }
};

Expansion expand_omega(const Integer& d, Ring ring);

// Period length only; uses machine integers when d is small enough.
std::size_t period_length(const Integer& d, Ring ring);

// Iterates p_n/q_n for n = -2, -1, 0, 1, ...
class ConvergentStream {
public:
    explicit ConvergentStream(const Expansion& e);
    const Convergent& current() const { return cur_; }
    const Convergent& previous() const { return prev_; }
    void advance();

private:
    const Expansion* exp_;
    Convergent prev_;  // n - 1
    Convergent cur_;   // n
};

std::vector<Convergent> convergents(const Expansion& e, std::size_t count);
// Convergent with index n >= -2 (seeds (q,p) = (1,0), (0,1) at -2, -1).
Convergent convergent_at(const Expansion& e, long n);

struct XiNu {
    QuadraticInteger xi;
    Integer nu;
};

// xi_n = conjugate of (p_n - q_n omega_d), nu_n = (-1)^(n+1) N(xi_n).
XiNu xi_nu(const Integer& d, Ring ring, long n);
XiNu xi_nu(const Expansion& e, long n);

struct QuotientBoundCheck {
    Integer D;
    long n = 0;
    Integer nu;
    // delta_n = delta_rational + delta_sqrt * sqrt(d)
    Rational delta_rational;
    Rational delta_sqrt;
    bool delta_within = false;  // |delta_n| < 4 / (q_n^2 sqrt D)
    bool alpha_below = false;   // alpha_{n+1} < sqrt D / nu_n
    // D <= 16: the delta bound is not evaluated; passed reflects the tabulated
    // expansions and alpha_below instead.
    bool small_discriminant = false;
    bool passed = false;
};

QuotientBoundCheck verify_quotient_bound(const Integer& d, Ring ring, long n);

struct TwoExpansions {
    std::vector<Integer> long_form;   // ends in 1
    std::vector<Integer> short_form;  // last term > 1
    bool unit = false;                // p/q == 1: [0, 1] and [1]
};

TwoExpansions rational_two_expansions(const Integer& p, const Integer& q);

// Plain Euclid expansion of p/q (q > 0), the short form.
std::vector<Integer> euclid_expansion(const Integer& p, const Integer& q);

Rational cf_to_rational(std::span<const Integer> seq);

}  // namespace pellinv
