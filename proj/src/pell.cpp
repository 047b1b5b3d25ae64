#include "pellinv/pell.hpp"

#include <cmath>
#include <string>

#include "pellinv/error.hpp"

namespace pellinv {

FundamentalUnit fundamental_unit(const Expansion& e) {
    const long last = static_cast<long>(e.length()) - 1;
    XiNu xn = xi_nu(e, last);
    if (xn.nu != 1) {
        throw Error(Errc::InvalidArgument, "internal: nu_{l-1} != 1 for d = " + e.d.get_str());
    }
    FundamentalUnit fu;
    fu.norm = sgn(xn.xi.norm());
    fu.unit = std::move(xn.xi);
    fu.period = e.length();
    return fu;
}

FundamentalUnit fundamental_unit(const Integer& d, Ring ring) {
    return fundamental_unit(expand_omega(d, ring));
}

std::vector<PellSolution> pell4_solutions(const Integer& d, Ring ring, std::size_t count) {
    const FundamentalUnit fu = fundamental_unit(d, ring);
    const QuadraticInteger base = fu.norm == 1 ? fu.unit : fu.unit * fu.unit;
    const Integer D = ring == Ring::Sqrt ? Integer(4 * d) : d;
    std::vector<PellSolution> out;
    out.reserve(count);
    QuadraticInteger power = base;
    for (std::size_t k = 0; k < count; ++k) {
        // a + b omega = (X + Y sqrt D) / 2
        PellSolution s = ring == Ring::Sqrt ? PellSolution{2 * power.a, power.b, D}
                                            : PellSolution{2 * power.a + power.b, power.b, D};
        if (s.X * s.X - s.D * s.Y * s.Y != 4) {
            throw Error(Errc::InvalidArgument, "internal: Pell solution check failed");
        }
        out.push_back(std::move(s));
        power = power * base;
    }
    return out;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are deterministic below 3.3e24.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

AacResult aac_check(std::uint64_t p) {
    if (!is_prime_u64(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (p % 4 != 1) throw Error(Errc::WrongResidue, std::to_string(p) + " is not 1 mod 4");
    const Integer P(std::to_string(p));
    const FundamentalUnit fu = fundamental_unit(P, Ring::HalfSqrt);
    AacResult r;
    r.t = 2 * fu.unit.a + fu.unit.b;
    r.u = fu.unit.b;
    r.u_mod_p = mod(r.u, P);
    r.holds = r.u_mod_p != 0;
    return r;
}

double log_of(const QuadraticInteger& x) {
    if (x.compare(Integer(0)) <= 0) throw Error(Errc::InvalidArgument, "log of a non-positive value");
    const mp_bitcnt_t prec =
        128 + mpz_sizeinbase(x.a.get_mpz_t(), 2) + mpz_sizeinbase(x.b.get_mpz_t(), 2);
    mpf_class root(x.d, prec);
    root = sqrt(root);
    mpf_class value(x.rational_part(), prec);
    mpf_class coeff(x.sqrt_coefficient(), prec);
    value += coeff * root;
    long exp = 0;
    const double mantissa = mpf_get_d_2exp(&exp, value.get_mpf_t());
    return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

UnitSize unit_size_stats(const Integer& d, Ring ring) {
    const FundamentalUnit fu = fundamental_unit(d, ring);
    return {log_of(fu.unit), fu.period};
}

}  // namespace pellinv
