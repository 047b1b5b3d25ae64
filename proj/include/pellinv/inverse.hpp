#pragma once

// The inverse problem: given x/y, which d make a0*y + x + y*omega_d (or its
// ring 1 analogue) a unit. Attached intervals around (p/q)^2, their integer
// content decided by congruences, the induced quadratic progressions of d, and
// the independent palindrome parameterization they must agree with.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pellinv/cf_engine.hpp"
#include "pellinv/symmetry.hpp"

namespace pellinv {

struct InverseKey {
    Integer y;
    Integer x;
    Sign sign = Sign::Minus;
    Ring ring = Ring::Sqrt;
};

// Validates gcd(x, y) = 1, 0 <= x < y (x is reduced mod y) and x^2 = sign mod y.
InverseKey make_key(const Integer& y, const Integer& x, Sign sign, Ring ring);

// Case number 1..4 for a (ring, sign) pair.
int case_id(Ring ring, Sign sign);

enum class Side { Minus, Plus };

struct AttachedInterval {
    Ring ring = Ring::Sqrt;
    Side side = Side::Minus;
    Rational lo;  // open interval (lo, hi)
    Rational hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo < v && v < hi; }
};

struct AttachedIntervals {
    AttachedInterval minus;
    AttachedInterval plus;
    Rational center;  // p^2/q^2 or (2p/q - 1)^2
    Rational A;
    Rational B;
    std::size_t m = 0;  // p/q = [a_0, ..., a_m, 1]
};

// Requires gcd(p, q) = 1 and p/q >= 4 (BelowThreshold otherwise).
AttachedIntervals attached_intervals(const Integer& p, const Integer& q, Ring ring);

struct IntervalHit {
    Integer d;
    Integer norm;  // N(p - q omega_d)
    int case_id = 0;
};

// Decided purely by the congruence conditions; no interval arithmetic.
std::optional<IntervalHit> integer_in_interval(const Integer& p, const Integer& q, Ring ring, Side side);

// [a_0, ..., a_n, tail] for a rational tail.
Rational cf_with_tail(std::span<const Integer> seq, const Rational& tail);

struct Progression {
    InverseKey key;
    Integer frak_a;   // least a0 >= 1 in the admissible class
    Integer y_tilde;  // common difference of a0
    int case_id = 0;
};

// The a0 progression of a key, if the case congruence is solvable.
std::optional<Progression> progression(const InverseKey& key);

// All admissible (sign, ring) progressions for (y, x); NotRepresentable if none.
std::vector<Progression> progressions_for_key(const Integer& y, const Integer& x);

// d for a given a0 (exact; throws if non-integral, which would be a bug).
Integer progression_d(const InverseKey& key, const Integer& a0);
// N(a0 y + x - y omega_d), expected to equal the key's sign.
Integer progression_norm(const InverseKey& key, const Integer& a0, const Integer& d);

struct ProgressionElement {
    Integer a0;
    Integer d;
    Integer norm;
};

struct ProgressionElements {
    std::vector<ProgressionElement> elements;
    std::vector<ProgressionElement> skipped;  // d <= 0 or d a perfect square
};

ProgressionElements progression_elements(const Progression& prog, std::size_t count);
// All valid elements with d <= bound.
ProgressionElements progression_elements_upto(const Progression& prog, const Integer& bound);

struct HalterKoch {
    SymmetricSeq seq;
    Integer lead;   // q_n^2
    Integer A;
    Integer B;
    Integer q_n;
    Integer shift;  // (-1)^n q_{n-1} r_{n-1}
    bool ring0_feasible = false;
    bool ring1_feasible = false;

    Integer f(const Integer& T) const { return lead * T * T + A * T + B; }
    bool feasible(Ring ring) const { return ring == Ring::Sqrt ? ring0_feasible : ring1_feasible; }
    // Elements d <= bound in increasing order (empty when infeasible).
    std::vector<Integer> elements(Ring ring, const Integer& bound) const;
};

HalterKoch halter_koch_progression(const SymmetricSeq& seq);
HalterKoch halter_koch_progression(std::span<const Integer> terms);

struct CrossCheckEntry {
    Sign sign = Sign::Minus;
    Ring ring = Ring::Sqrt;
    SymmetricSeq palindrome;
    bool progression_feasible = false;
    bool halter_koch_feasible = false;
    std::vector<Integer> from_progression;
    std::vector<Integer> from_halter_koch;
    bool equal = false;
};

struct CrossCheckReport {
    Integer y;
    Integer x;
    Integer bound;
    std::vector<CrossCheckEntry> entries;
    bool all_equal = false;
};

CrossCheckReport cross_check_parameterizations(const Integer& y, const Integer& x, const Integer& bound);

}  // namespace pellinv
