#include <doctest.h>

#include "oracles.hpp"
#include "pellinv/cf_engine.hpp"
#include "pellinv/error.hpp"

using namespace pellinv;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
    std::vector<Integer> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("expand_omega: tabulated and hand examples") {
    auto e2 = expand_omega(Integer(2), Ring::Sqrt);
    CHECK(e2.a0 == 1);
    CHECK(e2.period == ints({2}));
    auto e3 = expand_omega(Integer(3), Ring::Sqrt);
    CHECK(e3.a0 == 1);
    CHECK(e3.period == ints({1, 2}));
    auto e5 = expand_omega(Integer(5), Ring::HalfSqrt);
    CHECK(e5.a0 == 1);
    CHECK(e5.period == ints({1}));
    auto e13 = expand_omega(Integer(13), Ring::HalfSqrt);
    CHECK(e13.a0 == 2);
    CHECK(e13.period == ints({3}));
    auto e6 = expand_omega(Integer(6), Ring::Sqrt);
    CHECK(e6.a0 == 2);
    CHECK(e6.period == ints({2, 4}));
}

TEST_CASE("expand_omega: errors") {
    CHECK(code_of([] { expand_omega(Integer(4), Ring::Sqrt); }) == Errc::SquareInput);
    CHECK(code_of([] { expand_omega(Integer(7), Ring::HalfSqrt); }) == Errc::RingMismatch);
    CHECK(code_of([] { expand_omega(Integer(1), Ring::HalfSqrt); }) == Errc::SquareInput);
    CHECK_THROWS_AS(expand_omega(Integer(0), Ring::Sqrt), Error);
    CHECK_THROWS_AS(expand_omega(Integer(-3), Ring::Sqrt), Error);
}

TEST_CASE("expand_omega matches a float oracle and has the expected shape, d <= 2000") {
    for (long d = 2; d <= 2000; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && d % 4 != 1) continue;
            const Expansion e = expand_omega(Integer(d), ring_from_index(ring));
            const std::size_t l = e.length();
            const auto ref = oracle::partial_quotients(d, ring, 2 * l + 3);
            REQUIRE(ref[0] == e.a0);
            for (std::size_t i = 1; i < ref.size(); ++i) CHECK(ref[i] == e.term(i));
            CHECK(oracle::smallest_period(ref) == l);
            CHECK(e.period.back() == (ring == 0 ? Integer(2 * e.a0) : Integer(2 * e.a0 - 1)));
            const auto pal = e.palindrome();
            CHECK(std::equal(pal.begin(), pal.end(), pal.rbegin()));
            CHECK(period_length(Integer(d), ring_from_index(ring)) == l);
        }
    }
}

TEST_CASE("period_length agrees with the big-integer path beyond machine range") {
    // n^2 + 1 = [n; (2n)], n^2 + 2 = [n; (n, 2n)]
    const Integer n = pow(Integer(10), 20);
    const Expansion e1 = expand_omega(n * n + 1, Ring::Sqrt);
    CHECK(e1.a0 == n);
    CHECK(e1.period == std::vector<Integer>{Integer(2 * n)});
    CHECK(period_length(n * n + 1, Ring::Sqrt) == 1);
    const Expansion e2 = expand_omega(n * n + 2, Ring::Sqrt);
    CHECK(e2.period == std::vector<Integer>{n, Integer(2 * n)});
    CHECK(period_length(n * n + 2, Ring::Sqrt) == 2);
}

TEST_CASE("convergents") {
    const auto c6 = convergents(expand_omega(Integer(6), Ring::Sqrt), 3);
    REQUIRE(c6.size() == 3);
    CHECK((c6[0].p == 2 && c6[0].q == 1 && c6[0].n == 0));
    CHECK((c6[1].p == 5 && c6[1].q == 2));
    CHECK((c6[2].p == 22 && c6[2].q == 9));
    const auto c5 = convergents(expand_omega(Integer(5), Ring::HalfSqrt), 2);
    CHECK((c5[0].p == 1 && c5[0].q == 1 && c5[1].p == 2 && c5[1].q == 1));
    const auto e41 = expand_omega(Integer(41), Ring::Sqrt);
    const auto one = convergents(e41, 1);
    CHECK((one[0].p == e41.a0 && one[0].q == 1));
    CHECK((convergent_at(e41, -2).p == 0 && convergent_at(e41, -2).q == 1));
    CHECK((convergent_at(e41, -1).p == 1 && convergent_at(e41, -1).q == 0));
    CHECK_THROWS_AS(convergent_at(e41, -3), Error);
}

TEST_CASE("determinant identity for convergents") {
    for (long d = 2; d <= 300; ++d) {
        if (oracle::is_square(d)) continue;
        const auto e = expand_omega(Integer(d), Ring::Sqrt);
        const auto cs = convergents(e, 3 * e.length() + 2);
        Integer p_prev = 1, q_prev = 0;
        for (const auto& c : cs) {
            const Integer lhs = c.p * q_prev - p_prev * c.q;
            CHECK(lhs == (c.n % 2 == 0 ? -1 : 1));
            CHECK(gcd(c.p, c.q) == 1);
            p_prev = c.p;
            q_prev = c.q;
        }
    }
}

TEST_CASE("xi_nu examples") {
    auto x0 = xi_nu(Integer(6), Ring::Sqrt, 0);
    CHECK((x0.xi.a == 2 && x0.xi.b == 1 && x0.nu == 2));
    auto x1 = xi_nu(Integer(6), Ring::Sqrt, 1);
    CHECK((x1.xi.a == 5 && x1.xi.b == 2 && x1.nu == 1));
    auto x5 = xi_nu(Integer(5), Ring::HalfSqrt, 0);
    CHECK((x5.xi.a == 0 && x5.xi.b == 1 && x5.nu == 1));
    CHECK(x5.xi.norm() == -1);
    CHECK_THROWS_AS(xi_nu(Integer(6), Ring::Sqrt, -1), Error);
}

TEST_CASE("nu_n = 1 exactly when l divides n + 1, d <= 2000, n < 3l") {
    for (long d = 2; d <= 2000; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && d % 4 != 1) continue;
            const auto e = expand_omega(Integer(d), ring_from_index(ring));
            const std::size_t l = e.length();
            ConvergentStream s(e);
            for (std::size_t n = 0; n < 3 * l; ++n) {
                s.advance();
                const auto& c = s.current();
                // independent norm of p - q omega
                const oracle::Int nrm = oracle::norm(c.p, -c.q, d, ring);
                const oracle::Int nu = (n % 2 == 0 ? -1 : 1) * nrm;
                CHECK(nu >= 1);
                CHECK((nu == 1) == ((n + 1) % l == 0));
                if (n < 3) CHECK(xi_nu(e, static_cast<long>(n)).nu == nu);
            }
        }
    }
}

TEST_CASE("verify_quotient_bound examples") {
    CHECK(verify_quotient_bound(Integer(19), Ring::Sqrt, 2).passed);
    CHECK(verify_quotient_bound(Integer(41), Ring::Sqrt, 1).passed);
    const auto small = verify_quotient_bound(Integer(13), Ring::HalfSqrt, 0);
    CHECK(small.small_discriminant);
    CHECK(small.passed);
    for (auto [d, ring] : {std::pair{2L, Ring::Sqrt}, {3L, Ring::Sqrt}, {5L, Ring::HalfSqrt}}) {
        const auto r = verify_quotient_bound(Integer(d), ring, 0);
        CHECK(r.small_discriminant);
        CHECK(r.passed);
    }
    CHECK_FALSE(verify_quotient_bound(Integer(19), Ring::Sqrt, 0).small_discriminant);
}

TEST_CASE("verify_quotient_bound agrees with a float evaluation, d <= 150") {
    for (long d = 5; d <= 150; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && (d % 4 != 1 || d <= 16)) continue;
            const auto e = expand_omega(Integer(d), ring_from_index(ring));
            const std::size_t l = e.length();
            const auto alpha = oracle::total_quotients(d, ring, 2 * l + 2, 1024);
            const long D = ring == 0 ? 4 * d : d;
            mpf_class sqrtD(D, 1024);
            sqrtD = sqrt(sqrtD);
            oracle::Int p_prev = 1, q_prev = 0, p = 0, q = 1;
            // advance to n = 0 first: (p_{-1}, q_{-1}) = (1, 0), (p_{-2}, q_{-2}) = (0, 1)
            oracle::Int pm2 = 0, qm2 = 1;
            p = 1;
            q = 0;
            for (std::size_t n = 0; n < 2 * l; ++n) {
                const oracle::Int a = e.term(n);
                const oracle::Int pn = a * p + pm2, qn = a * q + qm2;
                pm2 = p;
                qm2 = q;
                p = pn;
                q = qn;
                p_prev = pm2;
                q_prev = qm2;
                const oracle::Int nu = abs(oracle::norm(p, -q, d, ring));
                mpf_class delta(0, 1024);
                delta = alpha[n + 1] - sqrtD / mpf_class(nu, 1024) + mpf_class(q_prev, 1024) / mpf_class(q, 1024);
                mpf_class bound(0, 1024);
                bound = 4 / (mpf_class(q * q, 1024) * sqrtD);
                const bool within = abs(delta) < bound;
                const bool below = alpha[n + 1] < sqrtD / mpf_class(nu, 1024);
                const auto r = verify_quotient_bound(Integer(d), ring_from_index(ring), static_cast<long>(n));
                CHECK(r.delta_within == within);
                CHECK(r.alpha_below == below);
                CHECK(r.passed);
            }
        }
    }
}

TEST_CASE("rational_two_expansions") {
    auto t75 = rational_two_expansions(Integer(7), Integer(5));
    CHECK(t75.long_form == ints({1, 2, 1, 1}));
    CHECK(t75.short_form == ints({1, 2, 2}));
    auto t92 = rational_two_expansions(Integer(9), Integer(2));
    CHECK(t92.long_form == ints({4, 1, 1}));
    CHECK(t92.short_form == ints({4, 2}));
    auto t31 = rational_two_expansions(Integer(3), Integer(1));
    CHECK(t31.long_form == ints({2, 1}));
    CHECK(t31.short_form == ints({3}));
    auto t11 = rational_two_expansions(Integer(1), Integer(1));
    CHECK(t11.unit);
    CHECK(t11.short_form == ints({1}));
    CHECK(t11.long_form == ints({0, 1}));
    CHECK(code_of([] { rational_two_expansions(Integer(4), Integer(2)); }) == Errc::NotCoprime);
}

TEST_CASE("cf_to_rational inverts both expansions, q <= 200") {
    for (long q = 1; q <= 200; ++q) {
        for (long p = 1; p <= 2 * q + 3; ++p) {
            if (oracle::Int(gcd(Integer(p), Integer(q))) != 1) continue;
            const auto t = rational_two_expansions(Integer(p), Integer(q));
            const Rational expect(p, q);
            CHECK(cf_to_rational(t.long_form) == expect);
            CHECK(cf_to_rational(t.short_form) == expect);
            CHECK(t.long_form.back() == 1);
            CHECK(t.long_form.size() % 2 != t.short_form.size() % 2);
            CHECK(oracle::fold(t.short_form) == expect);
        }
    }
}

TEST_CASE("cf_to_rational examples and errors") {
    CHECK(cf_to_rational(ints({0, 2, 2})) == Rational(2, 5));
    CHECK(cf_to_rational(ints({1, 2, 2})) == Rational(7, 5));
    CHECK(cf_to_rational(ints({5})) == Rational(5));
    CHECK(code_of([] { cf_to_rational(std::vector<Integer>{}); }) == Errc::EmptySequence);
    CHECK(code_of([] { cf_to_rational(ints({1, 0, 2})); }) == Errc::NonpositiveTerm);
}

TEST_CASE("QuadraticInteger arithmetic") {
    const QuadraticInteger w{Integer(0), Integer(1), Integer(13), Ring::HalfSqrt};
    const auto w2 = w * w;  // omega^2 = omega + 3
    CHECK((w2.a == 3 && w2.b == 1));
    const QuadraticInteger u{Integer(1), Integer(1), Integer(13), Ring::HalfSqrt};
    CHECK(u.norm() == -1);
    CHECK(u.compare(Integer(3)) > 0);  // (3 + sqrt 13)/2 ~ 3.30
    CHECK(u.compare(Integer(4)) < 0);
    CHECK(u.rational_part() == Rational(3, 2));
    CHECK(u.sqrt_coefficient() == Rational(1, 2));
}
