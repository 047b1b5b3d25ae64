#pragma once

// Counting over ranges of d: square-free sieves, least-type densities,
// predecessor-sequence densities and the partial zeta diagnostic.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pellinv/arith.hpp"
#include "pellinv/cf_engine.hpp"

namespace pellinv {

class SieveTable {
public:
    explicit SieveTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    bool is_squarefree(std::uint64_t n) const { return n >= 1 && n <= limit_ && flags_[n] != 0; }
    std::uint64_t count() const;
    std::uint64_t count_in_class(std::uint64_t c, std::uint64_t k) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint8_t> flags_;
};

SieveTable squarefree_sieve(std::uint64_t limit);

// |{n <= limit square-free, n = c mod k}|; throws NotCoprimeClass unless gcd(c, k) = 1.
std::uint64_t squarefree_in_class(std::uint64_t limit, std::uint64_t c, std::uint64_t k);

// Per-d flags over [0, limit]: 1 when d is a non-square that is not least.
struct NonLeastMaps {
    std::uint64_t limit = 0;
    std::vector<std::uint8_t> ring0;
    std::vector<std::uint8_t> ring1;  // only d = 1 mod 4 are meaningful
    std::uint64_t overlaps = 0;       // d claimed by two families; must stay 0
};

// Enumerates every family that can hold a non-least d <= limit.
NonLeastMaps non_least_by_families(std::uint64_t limit);
// Classifies each d separately; the slow oracle for the above.
NonLeastMaps non_least_by_classification(std::uint64_t limit, unsigned jobs);

struct DensityReport {
    std::uint64_t N = 0;
    std::uint64_t nonsquare = 0;       // non-square d in [1, N]
    std::uint64_t nonsquare_1mod4 = 0;
    std::uint64_t least0 = 0;          // non-square d least to ring 0
    std::uint64_t least1 = 0;          // non-square d = 1 mod 4 least to ring 1
    std::uint64_t squarefree = 0;      // |S(N)|, includes 1
    std::array<std::uint64_t, 4> squarefree_mod4{};
    std::uint64_t squarefree_least0 = 0;
    std::uint64_t squarefree_least1 = 0;  // among square-free d = 1 mod 4
    std::uint64_t fields = 0;             // square-free d in (1, N]
    std::uint64_t least_type_fields = 0;
    std::uint64_t non_least_type_fields = 0;
    std::uint64_t overlaps = 0;

    Rational ratio0() const;           // squarefree_least0 / |S(N)|
    Rational ratio1() const;           // squarefree_least1 / |S(N; 1, 4)|
    Rational least_type_ratio() const; // least_type_fields / fields
    Rational non_least_per_n() const;  // non_least_type_fields / N
};

DensityReport density_report(const NonLeastMaps& maps);
DensityReport least_type_density(std::uint64_t limit);
DensityReport least_type_density_oracle(std::uint64_t limit, unsigned jobs);

struct PredecessorReport {
    std::vector<Integer> prefix;
    Ring ring = Ring::Sqrt;
    std::uint64_t N = 0;
    std::uint64_t count = 0;
    Rational ratio;     // count/N, or 4 count/N in ring 1
    Rational expected;  // 1/(q_m (q_m + q_{m-1}))
    long double abs_error = 0;
};

// Non-square d <= N (d = 1 mod 4 in ring 1) whose omega_d starts a0; prefix.
PredecessorReport predecessor_density(std::span<const Integer> prefix, std::uint64_t limit, Ring ring,
                                      unsigned jobs);

struct ZetaDiagnostic {
    Rational s;
    std::uint64_t N = 0;
    long double sum_least = 0;       // over d <= N least to ring 0
    long double sum_nonsquare = 0;   // over non-square d <= N
    long double difference = 0;      // sum_nonsquare - sum_least
    long double complete_nonsquare = 0;  // zeta(s) - zeta(2s)
    long double gap_to_complete = 0;     // complete_nonsquare - sum_least
};

// `maps` must cover at least N.
ZetaDiagnostic zeta_partial_diagnostic(const Rational& s, std::uint64_t limit, const NonLeastMaps& maps);
ZetaDiagnostic zeta_partial_diagnostic(const Rational& s, std::uint64_t limit);

}  // namespace pellinv
