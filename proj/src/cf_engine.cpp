#include "pellinv/cf_engine.hpp"

#include <string>

#include "pellinv/error.hpp"

namespace pellinv {

namespace {

std::string show(const Integer& n) { return n.get_str(); }

// Machine-word version of the surd recurrence for period lengths. All states
// satisfy 0 < P <= sqrt d and 0 < Q < 2 sqrt d + 1, so d < 2^61 is ample.
std::size_t period_length_small(std::int64_t d, Ring ring) {
    const std::int64_t s = static_cast<std::int64_t>(isqrt_u64(static_cast<std::uint64_t>(d)));
    std::int64_t P = ring == Ring::Sqrt ? 0 : 1;
    std::int64_t Q = ring == Ring::Sqrt ? 1 : 2;
    auto step = [&](std::int64_t& p, std::int64_t& q) {
        const std::int64_t a = (p + s) / q;
        p = a * q - p;
        q = static_cast<std::int64_t>((static_cast<__int128>(d) - static_cast<__int128>(p) * p) / q);
    };
    step(P, Q);
    const std::int64_t P1 = P;
    const std::int64_t Q1 = Q;
    std::size_t len = 0;
    do {
        step(P, Q);
        ++len;
    } while (P != P1 || Q != Q1);
    return len;
}

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 61;

}  // namespace

Ring ring_from_index(long index) {
    if (index == 0) return Ring::Sqrt;
    if (index == 1) return Ring::HalfSqrt;
    throw Error(Errc::InvalidArgument, "ring must be 0 or 1, got " + std::to_string(index));
}

Ring natural_ring(const Integer& d) {
    return mod(d, Integer(4)) == 1 ? Ring::HalfSqrt : Ring::Sqrt;
}

void require_omega(const Integer& d, Ring ring) {
    if (d <= 0) throw Error(Errc::InvalidArgument, "d must be positive, got " + show(d));
    if (is_square(d)) throw Error(Errc::SquareInput, "square input: d = " + show(d));
    if (ring == Ring::HalfSqrt && mod(d, Integer(4)) != 1) {
        throw Error(Errc::RingMismatch, "ring 1 needs d = 1 mod 4, got d = " + show(d));
    }
}

QuadraticSurd QuadraticSurd::omega(const Integer& d, Ring ring) {
    if (ring == Ring::Sqrt) return {Integer(0), Integer(1), d};
    return {Integer(1), Integer(2), d};
}

Integer QuadraticSurd::floor() const { return floor_div(P + isqrt(d), Q); }

QuadraticSurd QuadraticSurd::next() const {
    const Integer a = floor();
    Integer p = a * Q - P;
    Integer q = (d - p * p) / Q;
    return {std::move(p), std::move(q), d};
}

const Integer& Expansion::term(std::size_t n) const {
    if (n == 0) return a0;
    return period[(n - 1) % period.size()];
}

Expansion expand_omega(const Integer& d, Ring ring) {
    require_omega(d, ring);
    Expansion e;
    e.ring = ring;
    e.d = d;
    QuadraticSurd state = QuadraticSurd::omega(d, ring);
    e.a0 = state.floor();
    state = state.next();
    // omega + floor(omega) (or its ring 1 analogue) is reduced, so the
    // expansion is purely periodic from alpha_1 on: the first return to
    // alpha_1 closes the minimal period.
    const QuadraticSurd first = state;
    do {
        e.period.push_back(state.floor());
        state = state.next();
    } while (!(state == first));
    return e;
}

std::size_t period_length(const Integer& d, Ring ring) {
    require_omega(d, ring);
    if (d < kSmallLimit) return period_length_small(to_i64(d), ring);
    return expand_omega(d, ring).length();
}

ConvergentStream::ConvergentStream(const Expansion& e) : exp_(&e) {
    prev_ = {-2, Integer(0), Integer(1)};
    cur_ = {-1, Integer(1), Integer(0)};
}

void ConvergentStream::advance() {
    const long n = cur_.n + 1;
    const Integer& a = exp_->term(static_cast<std::size_t>(n));
    Convergent next{n, a * cur_.p + prev_.p, a * cur_.q + prev_.q};
    prev_ = std::move(cur_);
    cur_ = std::move(next);
}

std::vector<Convergent> convergents(const Expansion& e, std::size_t count) {
    std::vector<Convergent> out;
    out.reserve(count);
    ConvergentStream s(e);
    for (std::size_t i = 0; i < count; ++i) {
        s.advance();
        out.push_back(s.current());
    }
    return out;
}

Convergent convergent_at(const Expansion& e, long n) {
    if (n < -2) throw Error(Errc::InvalidArgument, "convergent index must be >= -2");
    ConvergentStream s(e);
    if (n == -2) return s.previous();
    while (s.current().n < n) s.advance();
    return s.current();
}

Integer QuadraticInteger::norm() const {
    if (ring == Ring::Sqrt) return a * a - b * b * d;
    return a * a + a * b + b * b * ((1 - d) / 4);
}

QuadraticInteger QuadraticInteger::operator*(const QuadraticInteger& o) const {
    if (ring == Ring::Sqrt) return {a * o.a + b * o.b * d, a * o.b + b * o.a, d, ring};
    // omega^2 = omega + (d - 1)/4
    const Integer bb = b * o.b;
    return {a * o.a + bb * ((d - 1) / 4), a * o.b + b * o.a + bb, d, ring};
}

Rational QuadraticInteger::rational_part() const {
    if (ring == Ring::Sqrt) return Rational(a);
    return make_rational(Integer(2 * a + b), Integer(2));
}

Rational QuadraticInteger::sqrt_coefficient() const {
    if (ring == Ring::Sqrt) return Rational(b);
    return make_rational(b, Integer(2));
}

int QuadraticInteger::compare(const Integer& k) const {
    return sign_of_surd(rational_part() - k, sqrt_coefficient(), d);
}

XiNu xi_nu(const Expansion& e, long n) {
    if (n < 0) throw Error(Errc::InvalidArgument, "xi_nu needs n >= 0");
    const Convergent c = convergent_at(e, n);
    QuadraticInteger xi = e.ring == Ring::Sqrt
                              ? QuadraticInteger{c.p, c.q, e.d, e.ring}
                              : QuadraticInteger{c.p - c.q, c.q, e.d, e.ring};
    Integer nu = xi.norm();
    if (n % 2 == 0) nu = -nu;
    if (nu < 1) {
        throw Error(Errc::InvalidArgument, "internal: nu_n < 1 for d = " + show(e.d));
    }
    return {std::move(xi), std::move(nu)};
}

XiNu xi_nu(const Integer& d, Ring ring, long n) { return xi_nu(expand_omega(d, ring), n); }

QuotientBoundCheck verify_quotient_bound(const Integer& d, Ring ring, long n) {
    if (n < 0) throw Error(Errc::InvalidArgument, "verify_quotient_bound needs n >= 0");
    const Expansion e = expand_omega(d, ring);
    QuotientBoundCheck out;
    out.D = e.discriminant();
    out.n = n;

    const Convergent prev = convergent_at(e, n - 1);
    const Convergent cur = convergent_at(e, n);
    out.nu = xi_nu(e, n).nu;

    QuadraticSurd alpha = QuadraticSurd::omega(d, ring);
    for (long i = 0; i <= n; ++i) alpha = alpha.next();

    // sqrt D = c sqrt d
    const Integer c = ring == Ring::Sqrt ? 2 : 1;
    const Rational inv_q = make_rational(Integer(1), alpha.Q);
    const Rational c_over_nu = make_rational(c, out.nu);

    // sqrt D / nu - alpha > 0
    out.alpha_below = sign_of_surd(make_rational(Integer(-alpha.P), alpha.Q), c_over_nu - inv_q, d) > 0;

    out.delta_rational = make_rational(alpha.P, alpha.Q) + make_rational(prev.q, cur.q);
    out.delta_sqrt = inv_q - c_over_nu;

    if (out.D <= 16) {
        out.small_discriminant = true;
        // The four tabulated expansions of the small discriminants.
        bool tabulated = false;
        if (ring == Ring::Sqrt && d == 2) tabulated = e.a0 == 1 && e.period == std::vector<Integer>{2};
        if (ring == Ring::Sqrt && d == 3) tabulated = e.a0 == 1 && e.period == std::vector<Integer>{1, 2};
        if (ring == Ring::HalfSqrt && d == 5) tabulated = e.a0 == 1 && e.period == std::vector<Integer>{1};
        if (ring == Ring::HalfSqrt && d == 13) tabulated = e.a0 == 2 && e.period == std::vector<Integer>{3};
        out.passed = tabulated && out.alpha_below;
        return out;
    }

    // |delta| sqrt D < 4 / q_n^2, with delta sqrt D = (v c d) + (u c) sqrt d.
    const Rational k = make_rational(Integer(4), Integer(cur.q * cur.q));
    const Rational x_rat = out.delta_sqrt * c * d;
    const Rational x_sqrt = out.delta_rational * c;
    out.delta_within = sign_of_surd(x_rat - k, x_sqrt, d) < 0 && sign_of_surd(x_rat + k, x_sqrt, d) > 0;
    out.passed = out.delta_within && out.alpha_below;
    return out;
}

std::vector<Integer> euclid_expansion(const Integer& p, const Integer& q) {
    if (q <= 0) throw Error(Errc::InvalidArgument, "denominator must be positive");
    std::vector<Integer> out;
    Integer num = p;
    Integer den = q;
    while (den != 0) {
        Integer a = floor_div(num, den);
        Integer r = num - a * den;
        out.push_back(std::move(a));
        num = std::move(den);
        den = std::move(r);
    }
    return out;
}

TwoExpansions rational_two_expansions(const Integer& p, const Integer& q) {
    if (q <= 0 || p <= 0) throw Error(Errc::InvalidArgument, "p/q must be positive");
    if (gcd(p, q) != 1) throw Error(Errc::NotCoprime, "p and q must be coprime");
    TwoExpansions out;
    if (p == q) {
        out.unit = true;
        out.long_form = {Integer(0), Integer(1)};
        out.short_form = {Integer(1)};
        return out;
    }
    out.short_form = euclid_expansion(p, q);
    out.long_form = out.short_form;
    out.long_form.back() -= 1;
    out.long_form.push_back(Integer(1));
    return out;
}

Rational cf_to_rational(std::span<const Integer> seq) {
    if (seq.empty()) throw Error(Errc::EmptySequence, "empty continued fraction");
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i] <= 0) throw Error(Errc::NonpositiveTerm, "partial quotients after a0 must be positive");
    }
    // Fold from the back: x = a_i + 1/x.
    Integer num = seq.back();
    Integer den = 1;
    for (std::size_t i = seq.size() - 1; i-- > 0;) {
        Integer next = seq[i] * num + den;
        den = std::move(num);
        num = std::move(next);
    }
    return make_rational(num, den);
}

}  // namespace pellinv
