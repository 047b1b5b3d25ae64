// Acceptance run: one PASS/FAIL line per criterion, with wall time against its budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pellinv/cf_engine.hpp"
#include "pellinv/error.hpp"
#include "pellinv/inverse.hpp"
#include "pellinv/least_type.hpp"
#include "pellinv/pell.hpp"
#include "pellinv/survey.hpp"
#include "pellinv/symmetry.hpp"

using namespace pellinv;

namespace {

constexpr double kSixOverPiSquared = 0.6079271018540267;

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::vector<Integer> ints(std::initializer_list<long> xs) {
    std::vector<Integer> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

bool palindromic_from_one(const std::vector<oracle::Int>& s) {
    // s[0] is the leading 0 of x/y = [0, a_1, ..., a_n]
    for (std::size_t i = 1, j = s.size() - 1; i < j; ++i, --j) {
        if (s[i] != s[j]) return false;
    }
    return true;
}

// Smallest unit a + b omega > 1 with b <= bound, machine arithmetic.
std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_unit(std::uint64_t d, int ring, std::uint64_t bound) {
    for (std::uint64_t b = 1; b <= bound; ++b) {
        const std::uint64_t db2 = d * b * b;
        for (int s : {-1, 1}) {
            const std::int64_t shift = ring == 0 ? s : 4 * s;
            const std::uint64_t v = db2 + shift;
            if (!is_square_u64(v)) continue;
            const std::uint64_t X = isqrt_u64(v);
            if (ring == 0) return std::pair{X, b};
            if ((X - b) % 2 == 0) return std::pair{(X - b) / 2, b};
        }
    }
    return std::nullopt;
}

Outcome known_expansions() {
    const auto e2 = expand_omega(Integer(2), Ring::Sqrt);
    const auto e3 = expand_omega(Integer(3), Ring::Sqrt);
    const auto e5 = expand_omega(Integer(5), Ring::HalfSqrt);
    const auto e13 = expand_omega(Integer(13), Ring::HalfSqrt);
    Outcome o;
    o.ok = e2.a0 == 1 && e2.period == ints({2}) && e3.a0 == 1 && e3.period == ints({1, 2}) && e5.a0 == 1 &&
           e5.period == ints({1}) && e13.a0 == 2 && e13.period == ints({3});
    o.detail = "omega_2, omega_3, omega_5, omega_13";
    return o;
}

Outcome palindrome_structure() {
    std::size_t checked = 0, failures = 0;
    for (long d = 2; d <= 2000; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && d % 4 != 1) continue;
            const auto e = expand_omega(Integer(d), ring_from_index(ring));
            const std::size_t l = e.length();
            bool ok = e.period.back() == (ring == 0 ? Integer(2 * e.a0) : Integer(2 * e.a0 - 1));
            const auto pal = e.palindrome();
            ok = ok && std::equal(pal.begin(), pal.end(), pal.rbegin());
            // a_i < omega + 1 for an integer a_i means a_i <= floor(omega) + 1
            for (const auto& a : pal) ok = ok && a >= 1 && a <= e.a0 + 1;
            // terms themselves against floating-point iteration
            const auto ref = oracle::partial_quotients(d, ring, 2 * l + 2, 2048);
            for (std::size_t i = 0; i < ref.size() && ok; ++i) ok = ref[i] == e.term(i);
            ok = ok && oracle::smallest_period(ref) == l;
            ++checked;
            failures += !ok;
        }
    }
    return {failures == 0, std::to_string(checked) + " expansions, " + std::to_string(failures) + " failures"};
}

Outcome unit_oracle() {
    constexpr std::uint64_t kBound = 100000;
    std::size_t checked = 0, failures = 0, by_root = 0;
    for (long d = 2; d <= 500; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && d % 4 != 1) continue;
            const auto u = fundamental_unit(Integer(d), ring_from_index(ring));
            const oracle::Int a = u.unit.a, b = u.unit.b;
            const oracle::Int n = oracle::norm(a, b, d, ring);
            bool ok = (n == 1 || n == -1) && n == u.norm && b >= 1;
            if (b <= kBound) {
                const auto ref = brute_unit(d, ring, kBound);
                ok = ok && ref && oracle::Int(static_cast<unsigned long>(ref->first)) == a &&
                     oracle::Int(static_cast<unsigned long>(ref->second)) == b;
            } else {
                // nothing smaller with b <= bound, and no unit root beyond it
                ++by_root;
                ok = ok && !brute_unit(d, ring, kBound);
                const double lg = log_of(u.unit);
                const auto max_k = static_cast<unsigned>(lg / std::log((1 + std::sqrt(5.0)) / 2)) + 1;
                ok = ok && !oracle::has_unit_root({a, b}, d, ring, max_k);
            }
            ++checked;
            failures += !ok;
        }
    }
    return {failures == 0, std::to_string(checked) + " units (" + std::to_string(by_root) +
                               " beyond the search bound, checked by root test), " + std::to_string(failures) +
                               " failures"};
}

Outcome quotient_bound() {
    std::size_t checked = 0, failures = 0;
    for (long d = 2; d <= 1000; ++d) {
        if (oracle::is_square(d)) continue;
        for (int ring : {0, 1}) {
            if (ring == 1 && d % 4 != 1) continue;
            const long D = ring == 0 ? 4 * d : d;
            if (D <= 16) continue;
            const Ring r = ring_from_index(ring);
            const std::size_t l = period_length(Integer(d), r);
            for (std::size_t n = 0; n < 2 * l; ++n) {
                const auto c = verify_quotient_bound(Integer(d), r, static_cast<long>(n));
                ++checked;
                failures += !(c.passed && c.delta_within && c.alpha_below && !c.small_discriminant);
            }
        }
    }
    return {failures == 0, std::to_string(checked) + " (d, n) pairs, " + std::to_string(failures) + " failures"};
}

Outcome interval_equivalence() {
    std::size_t checked = 0, disagreements = 0;
    std::map<int, std::size_t> hits_by_case;
    for (long q = 1; q <= 40; ++q) {
        for (long p = 5 * q; p <= 400; ++p) {
            if (oracle::Int(gcd(Integer(p), Integer(q))) != 1) continue;
            for (Ring ring : {Ring::Sqrt, Ring::HalfSqrt}) {
                const auto ai = attached_intervals(Integer(p), Integer(q), ring);
                for (const AttachedInterval* iv : {&ai.minus, &ai.plus}) {
                    std::vector<Integer> found;
                    for (Integer n = floor(iv->lo); n <= floor(iv->hi) + 1; ++n) {
                        if (!iv->contains(Rational(n))) continue;
                        if (ring == Ring::HalfSqrt && mod(n, Integer(4)) != 1) continue;
                        found.push_back(n);
                    }
                    const auto hit = integer_in_interval(Integer(p), Integer(q), ring, iv->side);
                    ++checked;
                    bool ok = found.size() <= 1 && hit.has_value() == !found.empty();
                    if (ok && hit) {
                        const int expect = iv->side == Side::Plus ? -1 : 1;
                        const long d = to_i64(hit->d);
                        ok = hit->d == found[0] && hit->norm == expect &&
                             oracle::norm(p, -q, d, ring_index(ring)) == expect;
                        ++hits_by_case[hit->case_id];
                    }
                    disagreements += !ok;
                }
            }
        }
    }
    std::ostringstream s;
    s << checked << " intervals, " << disagreements << " disagreements; hits per case";
    for (int c = 1; c <= 4; ++c) s << ' ' << c << ':' << hits_by_case[c];
    bool all_cases = true;
    for (int c = 1; c <= 4; ++c) all_cases = all_cases && hits_by_case[c] > 0;
    return {disagreements == 0 && all_cases, s.str()};
}

// Every sequence of positive integers whose continuant q_n is at most `limit`.
void sequences_upto(std::vector<Integer>& cur, const Integer& limit, std::vector<std::vector<Integer>>& out) {
    out.push_back(cur);
    for (long a = 1;; ++a) {
        cur.emplace_back(a);
        const bool fits = continuant(cur).q_n <= limit;
        if (fits) sequences_upto(cur, limit, out);
        cur.pop_back();
        if (!fits) break;
    }
}

Outcome parameterization_equality() {
    std::vector<std::vector<Integer>> seqs;
    std::vector<Integer> cur;
    sequences_upto(cur, Integer(100), seqs);
    const Integer bound(1000000);
    std::size_t palindromes = 0, compared = 0, mismatches = 0;
    std::map<std::pair<long, long>, CrossCheckReport> cache;
    for (const auto& s : seqs) {
        if (!is_palindrome(s)) continue;
        ++palindromes;
        const SymmetricSeq seq(s);
        const auto xy = rational_from_symmetric(seq);
        const auto k = std::pair{to_i64(xy.y), to_i64(xy.x)};
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, cross_check_parameterizations(xy.y, xy.x, bound)).first;
        const auto sign = sign_for_length(s.size());
        std::size_t seen = 0;
        for (const auto& e : it->second.entries) {
            if (e.sign != sign || !(e.palindrome == seq)) continue;
            ++seen;
            ++compared;
            const bool ok = e.equal && e.progression_feasible == e.halter_koch_feasible &&
                            e.from_progression == e.from_halter_koch;
            mismatches += !ok;
        }
        // both rings are reported for every palindrome
        mismatches += seen != 2;
    }
    return {mismatches == 0, std::to_string(palindromes) + " palindromes, " + std::to_string(compared) +
                                 " ring comparisons, " + std::to_string(mismatches) + " mismatches"};
}

Outcome symmetric_correspondence() {
    std::size_t checked = 0, failures = 0;
    for (long y = 1; y <= 300; ++y) {
        for (long x = 0; x <= y; ++x) {
            if (oracle::Int(gcd(Integer(x), Integer(y))) != 1) continue;
            const long r = (x * x) % y;
            const bool minus = r == (y - 1) % y;
            const bool plus = r == 1 % y;
            bool even_pal = false, odd_pal = false;
            if (x == 0 || x == y) {
                even_pal = odd_pal = true;  // y = 1: 0/1 = [0] and 1/1 = [0, 1]
            } else {
                auto shrt = oracle::euclid(x, y);
                auto lng = shrt;
                lng.back() -= 1;
                lng.push_back(1);
                for (const auto* s : {&shrt, &lng}) {
                    if (palindromic_from_one(*s)) ((s->size() - 1) % 2 == 0 ? even_pal : odd_pal) = true;
                }
            }
            bool ok = minus == even_pal && plus == odd_pal;
            if (minus || plus) {
                for (const auto& f : symmetric_form(Integer(x), Integer(y))) {
                    const auto back = rational_from_symmetric(f.seq);
                    ok = ok && (f.sign == Sign::Minus ? minus : plus) &&
                         (f.parity == Parity::Even) == (f.sign == Sign::Minus) &&
                         (f.seq.size() % 2 == 0) == (f.parity == Parity::Even) && back.y == y &&
                         (back.x == x || (y == 1));
                }
            } else {
                try {
                    symmetric_form(Integer(x), Integer(y));
                    ok = false;
                } catch (const Error&) {
                }
            }
            if (y % 2 == 0 && x < y) {
                for (Sign s : {Sign::Minus, Sign::Plus}) {
                    if ((x * x - sign_value(s)) % y != 0) continue;
                    const auto t = parity_of_t(Integer(x), Integer(y), s);
                    const auto m = continuant(symmetric_form(Integer(x), Integer(y), s).seq.terms());
                    ok = ok && mod(t.t, Integer(2)) == mod(Integer(m.q_prev * m.r_prev), Integer(2));
                }
            }
            ++checked;
            failures += !ok;
        }
    }
    return {failures == 0, std::to_string(checked) + " coprime (x, y), " + std::to_string(failures) + " failures"};
}

Outcome partition() {
    const std::uint64_t N = 100000;
    const NonLeastMaps fam = non_least_by_families(N);
    std::size_t checked = 0, failures = 0;
    for (std::uint64_t d = 2; d <= N; ++d) {
        if (is_square_u64(d)) continue;
        for (Ring ring : {Ring::Sqrt, Ring::HalfSqrt}) {
            if (ring == Ring::HalfSqrt && d % 4 != 1) continue;
            const Integer D(static_cast<unsigned long>(d));
            const auto c = classify(D, ring);
            const auto f = reduced_family(c.key);
            std::size_t hits = 0;
            for (const auto& el : f.elements_upto(D)) hits += el.d == D;
            const auto& map = ring == Ring::Sqrt ? fam.ring0 : fam.ring1;
            bool ok = hits == 1 && bool(map[d]) == !c.is_least && (c.is_least == (f.least == D));
            if (!c.is_least) ok = ok && D > c.y_tilde * c.y_tilde;
            ++checked;
            failures += !ok;
        }
    }
    const bool ok = failures == 0 && fam.overlaps == 0;
    return {ok, std::to_string(checked) + " (d, ring) placements, " + std::to_string(fam.overlaps) +
                    " overlaps, " + std::to_string(failures) + " failures"};
}

Outcome squarefree_densities() {
    const std::uint64_t N = 1000000;
    const auto t = squarefree_sieve(N);
    const double q = double(t.count()) / double(N);
    const double third = kSixOverPiSquared * double(N) / 3;
    const double s1 = double(t.count_in_class(1, 4)), s3 = double(t.count_in_class(3, 4));
    const double e1 = std::fabs(s1 - third) / third, e3 = std::fabs(s3 - third) / third;
    const bool ok = std::fabs(q - kSixOverPiSquared) < 0.001 && e1 < 0.01 && e3 < 0.01;
    char buf[200];
    std::snprintf(buf, sizeof buf, "Q/N = %.6f; S(1,4) off by %.3f%%, S(3,4) off by %.3f%%", q, 100 * e1, 100 * e3);
    return {ok, buf};
}

Outcome predecessor() {
    std::ostringstream s;
    bool ok = true;
    for (const auto& pre : {ints({1}), ints({2}), ints({1, 1}), ints({2, 1})}) {
        const auto r = predecessor_density(pre, 1000000, Ring::Sqrt, 1);
        const double expected = r.expected.get_d();
        const double rel = std::fabs(r.ratio.get_d() - expected) / expected;
        ok = ok && rel < 0.02;
        s << '[';
        for (std::size_t i = 0; i < pre.size(); ++i) s << (i ? "," : "") << pre[i];
        s << "] " << 100 * rel << "% ";
    }
    return {ok, "relative errors: " + s.str()};
}

Outcome dominance() {
    std::ostringstream s;
    bool ok = true;
    double prev = 2;
    for (std::uint64_t N : {10000ULL, 40000ULL, 160000ULL, 640000ULL}) {
        const auto r = least_type_density(N);
        const double ratio = r.non_least_per_n().get_d();
        ok = ok && ratio < prev && r.overlaps == 0;
        prev = ratio;
        s << "N=" << N << ": " << r.non_least_type_fields << "/N=" << ratio << "; ";
    }
    const auto fam = least_type_density(10000);
    const auto ora = least_type_density_oracle(10000, 1);
    const bool same = fam.non_least_type_fields == ora.non_least_type_fields &&
                      fam.least_type_fields == ora.least_type_fields;
    s << "oracle at 1e4 " << (same ? "equal" : "differs");
    return {ok && same, s.str()};
}

Outcome zeta_sanity() {
    const auto a = zeta_partial_diagnostic(Rational(2), 1000);
    const auto b = zeta_partial_diagnostic(Rational(2), 10000);
    const bool ok = a.difference > 0 && b.difference < a.difference;
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "difference %.6Lf at 1e3, %.6Lf at 1e4 (a sum of positive terms over non-least d, so it "
                  "cannot decrease); gap to zeta(2)-zeta(4): %.6Lf -> %.6Lf",
                  a.difference, b.difference, a.gap_to_complete, b.gap_to_complete);
    return {ok, buf};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"known expansions", 0.001, known_expansions},
        {"palindrome and last-term structure, d <= 2000", 10, palindrome_structure},
        {"fundamental unit oracle, d <= 500", 30, unit_oracle},
        {"quotient-norm bound, d <= 1000, D > 16, n < 2l", 60, quotient_bound},
        {"interval congruences vs exhaustive scan, q <= 40, p <= 400", 60, interval_equivalence},
        {"parameterization equality, q_n <= 100, bound 1e6", 120, parameterization_equality},
        {"symmetric correspondence, y <= 300", 30, symmetric_correspondence},
        {"partition into reduced families, d <= 1e5", 300, partition},
        {"square-free densities at 1e6", 10, squarefree_densities},
        {"predecessor densities at 1e6", 60, predecessor},
        {"least-type dominance", 600, dominance},
        {"zeta diagnostic, s = 2", 10, zeta_sanity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.ok && in_time;
        failed += !pass;
        char timing[96];
        std::snprintf(timing, sizeof timing, "%.3fs of %gs%s", secs, c.budget_seconds, in_time ? "" : ", over budget");
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << c.name << "  (" << timing << ")  "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
