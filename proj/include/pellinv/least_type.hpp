#pragma once

// Reduced families: the d-progression of a key with a period-deficient least
// element removed. Every non-square d sits in exactly one reduced family per
// ring; d is "least" when it is that family's smallest element.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pellinv/inverse.hpp"

namespace pellinv {

struct FamilyRecord {
    InverseKey key;
    Progression progression;
    std::size_t palindrome_length = 0;  // n; retained elements have period n + 1

    std::optional<Integer> discarded_least;
    std::size_t discarded_period = 0;
    // False when a discarded period does not divide n + 1.
    bool discarded_period_divides = true;

    Integer least;     // smallest retained element
    Integer least_a0;  // its a0 in the progression

    // Retained elements with d <= bound, increasing.
    std::vector<ProgressionElement> elements_upto(const Integer& bound) const;
    // First `count` retained elements.
    std::vector<ProgressionElement> elements(std::size_t count) const;
};

// Throws NotRepresentable for a bad key, RingInfeasible if the ring's case
// congruence has no solution for this key.
FamilyRecord reduced_family(const InverseKey& key);
FamilyRecord reduced_family(const Integer& y, const Integer& x, Sign sign, Ring ring);

struct Classification {
    Integer d;
    Ring ring = Ring::Sqrt;
    InverseKey key;
    SymmetricSeq palindrome;
    Integer family_a0;  // a0 of d inside its progression
    Integer y_tilde;
    Integer family_least;
    bool is_least = false;
};

Classification classify(const Integer& d, Ring ring);

bool is_squarefree(std::uint64_t n);

// Least-type field test for a square-free d > 1, ring chosen by d mod 4.
bool is_least_type_field(const Integer& d);

struct UnitBoundCheck {
    Integer a0;  // floor(omega_d)
    Integer y_tilde;
    bool a0_exceeds = false;  // a0 > y_tilde
    bool d_exceeds = false;   // d > y_tilde^2
    bool passed = false;
};

// For a non-least d; throws IsLeast otherwise.
UnitBoundCheck non_least_unit_bound(const Integer& d, Ring ring);

}  // namespace pellinv
