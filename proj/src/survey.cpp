#include "pellinv/survey.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "pellinv/error.hpp"
#include "pellinv/inverse.hpp"
#include "pellinv/least_type.hpp"
#include "pellinv/symmetry.hpp"

namespace pellinv {

namespace {

// Runs body(t) for t in [0, jobs) on separate threads, rethrowing the first failure.
template <typename Body>
void run_workers(unsigned jobs, Body body) {
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        body(0u);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            try {
                body(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return Rational(0);
    return make_rational(Integer(static_cast<unsigned long>(num)), Integer(static_cast<unsigned long>(den)));
}

}  // namespace

SieveTable::SieveTable(std::uint64_t limit) : limit_(limit), flags_(limit + 1, 1) {
    flags_[0] = 0;
    for (std::uint64_t p = 2; p * p <= limit_; ++p) {
        const std::uint64_t sq = p * p;
        for (std::uint64_t m = sq; m <= limit_; m += sq) flags_[m] = 0;
    }
}

std::uint64_t SieveTable::count() const {
    return static_cast<std::uint64_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

std::uint64_t SieveTable::count_in_class(std::uint64_t c, std::uint64_t k) const {
    if (k == 0) throw Error(Errc::InvalidArgument, "modulus must be positive");
    std::uint64_t total = 0;
    for (std::uint64_t n = c % k == 0 ? k : c % k; n <= limit_; n += k) total += flags_[n];
    return total;
}

SieveTable squarefree_sieve(std::uint64_t limit) {
    if (limit < 1) throw Error(Errc::InvalidArgument, "sieve limit must be at least 1");
    return SieveTable(limit);
}

std::uint64_t squarefree_in_class(std::uint64_t limit, std::uint64_t c, std::uint64_t k) {
    if (k == 0) throw Error(Errc::InvalidArgument, "modulus must be positive");
    if (std::gcd(c, k) != 1) {
        throw Error(Errc::NotCoprimeClass, "gcd(" + std::to_string(c) + ", " + std::to_string(k) + ") != 1");
    }
    return squarefree_sieve(limit).count_in_class(c, k);
}

NonLeastMaps non_least_by_families(std::uint64_t limit) {
    NonLeastMaps maps;
    maps.limit = limit;
    maps.ring0.assign(limit + 1, 0);
    maps.ring1.assign(limit + 1, 0);
    const Integer bound(static_cast<unsigned long>(limit));

    // A non-least d has d > y_tilde^2 >= y^2/4.
    const std::uint64_t y_max = 2 * isqrt_u64(limit) + 2;
    for (std::uint64_t y = 1; y <= y_max; ++y) {
        for (std::uint64_t x = 0; x < y || (y == 1 && x == 0); ++x) {
            if (std::gcd(x, y) != 1) continue;
            const std::uint64_t r = (x * x) % y;
            for (Sign sign : {Sign::Minus, Sign::Plus}) {
                const std::uint64_t target = sign == Sign::Plus ? 1 % y : (y - 1) % y;
                if (r != target) continue;
                for (Ring ring : {Ring::Sqrt, Ring::HalfSqrt}) {
                    const InverseKey key = make_key(Integer(static_cast<unsigned long>(y)),
                                                    Integer(static_cast<unsigned long>(x)), sign, ring);
                    const auto prog = progression(key);
                    if (!prog) continue;
                    // Non-least elements sit at a0 >= frak_a + y_tilde.
                    if (progression_d(key, Integer(prog->frak_a + prog->y_tilde)) > bound) continue;
                    const FamilyRecord fam = reduced_family(key);
                    auto& map = ring == Ring::Sqrt ? maps.ring0 : maps.ring1;
                    const auto elements = fam.elements_upto(bound);
                    for (std::size_t i = 1; i < elements.size(); ++i) {
                        const auto d = mpz_get_ui(elements[i].d.get_mpz_t());
                        if (map[d]) ++maps.overlaps;
                        map[d] = 1;
                    }
                }
            }
        }
    }
    return maps;
}

NonLeastMaps non_least_by_classification(std::uint64_t limit, unsigned jobs) {
    NonLeastMaps maps;
    maps.limit = limit;
    maps.ring0.assign(limit + 1, 0);
    maps.ring1.assign(limit + 1, 0);
    jobs = std::max(1u, jobs);
    // Strided split; each d is written by exactly one worker.
    run_workers(jobs, [&](unsigned t) {
        for (std::uint64_t d = 2 + t; d <= limit; d += jobs) {
            if (is_square_u64(d)) continue;
            const Integer D(static_cast<unsigned long>(d));
            maps.ring0[d] = classify(D, Ring::Sqrt).is_least ? 0 : 1;
            if (d % 4 == 1) maps.ring1[d] = classify(D, Ring::HalfSqrt).is_least ? 0 : 1;
        }
    });
    return maps;
}

Rational DensityReport::ratio0() const { return ratio(squarefree_least0, squarefree); }
Rational DensityReport::ratio1() const { return ratio(squarefree_least1, squarefree_mod4[1]); }
Rational DensityReport::least_type_ratio() const { return ratio(least_type_fields, fields); }
Rational DensityReport::non_least_per_n() const { return ratio(non_least_type_fields, N); }

DensityReport density_report(const NonLeastMaps& maps) {
    DensityReport rep;
    rep.N = maps.limit;
    rep.overlaps = maps.overlaps;
    const SieveTable sieve(maps.limit);
    for (std::uint64_t n = 1; n <= maps.limit; ++n) {
        const bool nonsquare = !is_square_u64(n);
        const bool one_mod4 = n % 4 == 1;
        const bool least0 = nonsquare && !maps.ring0[n];
        const bool least1 = nonsquare && one_mod4 && !maps.ring1[n];
        rep.nonsquare += nonsquare;
        rep.nonsquare_1mod4 += nonsquare && one_mod4;
        rep.least0 += least0;
        rep.least1 += least1;
        if (!sieve.is_squarefree(n)) continue;
        ++rep.squarefree;
        ++rep.squarefree_mod4[n % 4];
        rep.squarefree_least0 += least0;
        rep.squarefree_least1 += least1;
        if (n == 1) continue;
        ++rep.fields;
        if (one_mod4 ? least1 : least0) {
            ++rep.least_type_fields;
        } else {
            ++rep.non_least_type_fields;
        }
    }
    return rep;
}

DensityReport least_type_density(std::uint64_t limit) {
    if (limit < 10) throw Error(Errc::InvalidArgument, "density survey needs N >= 10");
    return density_report(non_least_by_families(limit));
}

DensityReport least_type_density_oracle(std::uint64_t limit, unsigned jobs) {
    if (limit < 10) throw Error(Errc::InvalidArgument, "density survey needs N >= 10");
    return density_report(non_least_by_classification(limit, jobs));
}

namespace {

bool begins_with(std::int64_t d, std::int64_t P, std::int64_t Q, std::span<const std::int64_t> prefix) {
    const std::int64_t s = static_cast<std::int64_t>(isqrt_u64(static_cast<std::uint64_t>(d)));
    std::int64_t a = (P + s) / Q;
    for (std::int64_t want : prefix) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        a = (P + s) / Q;
        if (a != want) return false;
    }
    return true;
}

}  // namespace

PredecessorReport predecessor_density(std::span<const Integer> prefix, std::uint64_t limit, Ring ring,
                                      unsigned jobs) {
    if (prefix.empty()) throw Error(Errc::EmptySequence, "prefix must be nonempty");
    if (limit < 1) throw Error(Errc::InvalidArgument, "N must be positive");
    if (limit > (std::uint64_t{1} << 40)) throw Error(Errc::InvalidArgument, "N too large for the survey");
    const ContinuantMatrix m = continuant(prefix);
    std::vector<std::int64_t> terms;
    for (const auto& a : prefix) terms.push_back(fits_i64(a) ? to_i64(a) : INT64_MAX);

    jobs = std::max(1u, jobs);
    std::vector<std::uint64_t> counts(jobs, 0);
    run_workers(jobs, [&](unsigned t) {
        std::uint64_t c = 0;
        for (std::uint64_t d = 2 + t; d <= limit; d += jobs) {
            if (ring == Ring::HalfSqrt && d % 4 != 1) continue;
            if (is_square_u64(d)) continue;
            const auto sd = static_cast<std::int64_t>(d);
            if (ring == Ring::Sqrt ? begins_with(sd, 0, 1, terms) : begins_with(sd, 1, 2, terms)) ++c;
        }
        counts[t] = c;
    });

    PredecessorReport rep;
    rep.prefix.assign(prefix.begin(), prefix.end());
    rep.ring = ring;
    rep.N = limit;
    rep.count = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    rep.ratio = ratio(ring == Ring::Sqrt ? rep.count : 4 * rep.count, limit);
    rep.expected = make_rational(Integer(1), Integer(m.q_n * (m.q_n + m.q_prev)));
    rep.abs_error = std::fabs(static_cast<long double>(Rational(rep.ratio - rep.expected).get_d()));
    return rep;
}

ZetaDiagnostic zeta_partial_diagnostic(const Rational& s, std::uint64_t limit, const NonLeastMaps& maps) {
    if (s <= 1) throw Error(Errc::InvalidArgument, "s must exceed 1");
    if (limit < 100) throw Error(Errc::InvalidArgument, "zeta diagnostic needs N >= 100");
    if (maps.limit < limit) throw Error(Errc::InvalidArgument, "classification maps do not cover N");
    ZetaDiagnostic z;
    z.s = s;
    z.N = limit;
    const long double sv = s.get_d();
    // Add from the small terms up.
    for (std::uint64_t d = limit; d >= 2; --d) {
        if (is_square_u64(d)) continue;
        const long double term = std::pow(static_cast<long double>(d), -sv);
        z.sum_nonsquare += term;
        if (!maps.ring0[d]) z.sum_least += term;
    }
    z.difference = z.sum_nonsquare - z.sum_least;
    z.complete_nonsquare = boost::math::zeta(sv) - boost::math::zeta(2 * sv);
    z.gap_to_complete = z.complete_nonsquare - z.sum_least;
    return z;
}

ZetaDiagnostic zeta_partial_diagnostic(const Rational& s, std::uint64_t limit) {
    if (limit < 100) throw Error(Errc::InvalidArgument, "zeta diagnostic needs N >= 100");
    return zeta_partial_diagnostic(s, limit, non_least_by_families(limit));
}

}  // namespace pellinv
