#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pellinv/cf_engine.hpp"

namespace pellinv {

struct FundamentalUnit {
    QuadraticInteger unit;  // > 1 in the real embedding
    int norm = 1;           // +1 or -1
    std::size_t period = 0;
};

// X^2 - D Y^2 = 4
struct PellSolution {
    Integer X;
    Integer Y;
    Integer D;
};

// Built from the (l-1)-th convergent of omega_d.
FundamentalUnit fundamental_unit(const Integer& d, Ring ring);
FundamentalUnit fundamental_unit(const Expansion& e);

// First `count` positive solutions of X^2 - D Y^2 = 4, as powers of the
// smallest norm +1 unit (epsilon, or epsilon^2 when N(epsilon) = -1).
std::vector<PellSolution> pell4_solutions(const Integer& d, Ring ring, std::size_t count);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

struct AacResult {
    Integer t;  // epsilon_p = (t + u sqrt p) / 2
    Integer u;
    Integer u_mod_p;
    bool holds = false;  // u != 0 mod p
};

AacResult aac_check(std::uint64_t p);

struct UnitSize {
    double log_unit = 0.0;
    std::size_t period = 0;
};

// log(epsilon_d) from the exact unit, relative error well below 1e-12.
UnitSize unit_size_stats(const Integer& d, Ring ring);
double log_of(const QuadraticInteger& x);

}  // namespace pellinv
