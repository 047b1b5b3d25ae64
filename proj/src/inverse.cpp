#include "pellinv/inverse.hpp"

#include <string>

#include "pellinv/error.hpp"

namespace pellinv {

namespace {

bool congruent(const Integer& x, const Integer& y, Sign s) {
    return mod(Integer(x * x - sign_value(s)), y) == 0;
}

void require_interval_input(const Integer& p, const Integer& q) {
    if (p <= 0 || q <= 0) throw Error(Errc::InvalidArgument, "p and q must be positive");
    if (gcd(p, q) != 1) throw Error(Errc::NotCoprime, "p and q must be coprime");
    if (p < 4 * q) {
        throw Error(Errc::BelowThreshold, "p/q = " + p.get_str() + "/" + q.get_str() + " is below 4");
    }
}

Rational image(Ring ring, const Rational& v) {
    if (ring == Ring::Sqrt) return v * v;
    Rational w = 2 * v - 1;
    return w * w;
}

// c with 2 a0 = c (mod y) for the key's case.
Integer case_residue(const InverseKey& key) {
    const Integer& x = key.x;
    const Integer& y = key.y;
    Integer c = x * ((1 - sign_value(key.sign) * x * x) / y);
    if (key.ring == Ring::HalfSqrt) c += 1;
    return mod(c, y);
}

}  // namespace

int case_id(Ring ring, Sign sign) {
    if (ring == Ring::Sqrt) return sign == Sign::Minus ? 1 : 2;
    return sign == Sign::Minus ? 3 : 4;
}

InverseKey make_key(const Integer& y, const Integer& x, Sign sign, Ring ring) {
    if (y <= 0 || x < 0 || x > y) {
        throw Error(Errc::InvalidArgument, "key needs y > 0 and 0 <= x <= y");
    }
    if (gcd(x, y) != 1) throw Error(Errc::NotCoprime, "x and y must be coprime");
    if (!congruent(x, y, sign)) {
        throw Error(Errc::NotRepresentable, x.get_str() + "^2 != " + std::to_string(sign_value(sign)) +
                                                " mod " + y.get_str());
    }
    return {y, mod(x, y), sign, ring};
}

Rational cf_with_tail(std::span<const Integer> seq, const Rational& tail) {
    Integer p_prev = 1, p = seq.empty() ? Integer(0) : seq[0];
    Integer q_prev = 0, q = 1;
    if (seq.empty()) return tail;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        Integer pn = seq[i] * p + p_prev;
        Integer qn = seq[i] * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    return (tail * p + p_prev) / (tail * q + q_prev);
}

AttachedIntervals attached_intervals(const Integer& p, const Integer& q, Ring ring) {
    require_interval_input(p, q);
    const TwoExpansions ex = rational_two_expansions(p, q);
    const std::vector<Integer>& lng = ex.long_form;
    const std::vector<Integer>& shrt = ex.short_form;

    AttachedIntervals out;
    out.m = lng.size() - 2;
    const Integer& a0 = lng[0];

    // Denominators q_{m-1}, q_m of [a_0..a_{m-1}] and [a_0..a_m].
    Integer den_prev = 0, den = 1;  // q_{-1}, q_0
    for (std::size_t i = 1; i <= out.m; ++i) {
        Integer next = lng[i] * den + den_prev;
        den_prev = std::move(den);
        den = std::move(next);
    }
    const Rational four_thirds_a0 = make_rational(Integer(4 * a0), Integer(3));
    const Rational lambda_a = four_thirds_a0 - make_rational(den_prev, q);
    const Rational lambda_b = four_thirds_a0 - make_rational(den, q);
    out.A = cf_with_tail(shrt, lambda_a);
    out.B = cf_with_tail(lng, lambda_b);

    const Rational pq = make_rational(p, q);
    out.center = image(ring, pq);
    Rational lo = image(ring, out.m % 2 == 1 ? out.A : out.B);
    Rational hi = image(ring, out.m % 2 == 1 ? out.B : out.A);
    if (!(lo < out.center && out.center < hi)) {
        throw Error(Errc::InvalidArgument, "internal: attached interval does not straddle its center");
    }
    out.minus = {ring, Side::Minus, lo, out.center};
    out.plus = {ring, Side::Plus, out.center, hi};
    return out;
}

std::optional<IntervalHit> integer_in_interval(const Integer& p, const Integer& q, Ring ring, Side side) {
    require_interval_input(p, q);
    const Integer a0 = floor_div(p, q);
    const Integer k = p - a0 * q;
    const Sign sign = side == Side::Plus ? Sign::Minus : Sign::Plus;
    if (!congruent(k, q, sign)) return std::nullopt;
    const InverseKey key{q, k, sign, ring};
    if (mod(Integer(2 * a0 - case_residue(key)), q) != 0) return std::nullopt;
    IntervalHit hit;
    hit.d = progression_d(key, a0);
    hit.norm = progression_norm(key, a0, hit.d);
    hit.case_id = case_id(ring, sign);
    return hit;
}

std::optional<Progression> progression(const InverseKey& key) {
    const Integer c = case_residue(key);
    Progression prog{key, Integer(0), Integer(0), case_id(key.ring, key.sign)};
    Integer r;
    if (mod(key.y, Integer(2)) == 1) {
        prog.y_tilde = key.y;
        r = mod(Integer(c * ((key.y + 1) / 2)), key.y);
    } else {
        if (mod(c, Integer(2)) != 0) return std::nullopt;
        prog.y_tilde = key.y / 2;
        r = mod(Integer(c / 2), prog.y_tilde);
    }
    prog.frak_a = r == 0 ? prog.y_tilde : r;
    return prog;
}

std::vector<Progression> progressions_for_key(const Integer& y, const Integer& x) {
    if (y <= 0 || x < 0 || x > y) throw Error(Errc::InvalidArgument, "key needs y > 0 and 0 <= x <= y");
    if (gcd(x, y) != 1) throw Error(Errc::NotCoprime, "x and y must be coprime");
    std::vector<Progression> out;
    for (Sign s : {Sign::Minus, Sign::Plus}) {
        if (!congruent(x, y, s)) continue;
        for (Ring ring : {Ring::Sqrt, Ring::HalfSqrt}) {
            if (auto prog = progression(make_key(y, x, s, ring))) out.push_back(*prog);
        }
    }
    if (out.empty()) {
        throw Error(Errc::NotRepresentable, x.get_str() + "^2 is not +-1 mod " + y.get_str());
    }
    return out;
}

Integer progression_d(const InverseKey& key, const Integer& a0) {
    const int s = sign_value(key.sign);
    Integer num;
    if (key.ring == Ring::Sqrt) {
        const Integer p = a0 * key.y + key.x;
        num = p * p - s;
    } else {
        const Integer w = (2 * a0 - 1) * key.y + 2 * key.x;
        num = w * w - 4 * s;
    }
    const Integer y2 = key.y * key.y;
    if (mod(num, y2) != 0) {
        throw Error(Errc::NotInteger, "internal: progression element is not an integer");
    }
    return num / y2;
}

Integer progression_norm(const InverseKey& key, const Integer& a0, const Integer& d) {
    const Integer p = a0 * key.y + key.x;
    const Integer& q = key.y;
    if (key.ring == Ring::Sqrt) return p * p - q * q * d;
    // 4 N(p - q omega) = (2p - q)^2 - q^2 d
    const Integer w = 2 * p - q;
    const Integer four_n = w * w - q * q * d;
    if (mod(four_n, Integer(4)) != 0) {
        throw Error(Errc::NotInteger, "internal: ring 1 norm is not integral");
    }
    return four_n / 4;
}

namespace {

template <typename Stop>
ProgressionElements walk(const Progression& prog, Stop stop) {
    ProgressionElements out;
    for (Integer a0 = prog.frak_a;; a0 += prog.y_tilde) {
        Integer d = progression_d(prog.key, a0);
        if (stop(out, d)) break;
        Integer norm = d > 0 ? progression_norm(prog.key, a0, d) : Integer(0);
        ProgressionElement el{a0, std::move(d), std::move(norm)};
        if (el.d <= 0 || is_square(el.d)) {
            out.skipped.push_back(std::move(el));
        } else {
            out.elements.push_back(std::move(el));
        }
    }
    return out;
}

}  // namespace

ProgressionElements progression_elements(const Progression& prog, std::size_t count) {
    return walk(prog, [count](const ProgressionElements& acc, const Integer&) {
        return acc.elements.size() >= count;
    });
}

ProgressionElements progression_elements_upto(const Progression& prog, const Integer& bound) {
    // d increases with a0 for a0 >= 1 in every case.
    return walk(prog, [&bound](const ProgressionElements&, const Integer& d) { return d > bound; });
}

HalterKoch halter_koch_progression(const SymmetricSeq& seq) {
    const ContinuantMatrix m = continuant(seq.terms());
    const int sgn_n = seq.size() % 2 == 0 ? 1 : -1;
    HalterKoch hk;
    hk.seq = seq;
    hk.q_n = m.q_n;
    hk.lead = m.q_n * m.q_n;
    hk.A = 4 * m.q_prev + 2 * sgn_n * m.q_n * m.q_prev * m.r_prev;
    hk.B = m.q_prev * m.q_prev * m.r_prev * m.r_prev + 4 * sgn_n * m.r_prev * m.r_prev;
    hk.shift = sgn_n * m.q_prev * m.r_prev;
    const bool qn_odd = mod(m.q_n, Integer(2)) == 1;
    const Integer qr = m.q_prev * m.r_prev;
    hk.ring0_feasible = qn_odd || mod(qr, Integer(2)) == 0;
    hk.ring1_feasible = qn_odd || mod(Integer(qr + 1), Integer(2)) == 0;
    return hk;
}

HalterKoch halter_koch_progression(std::span<const Integer> terms) {
    return halter_koch_progression(SymmetricSeq(std::vector<Integer>(terms.begin(), terms.end())));
}

std::vector<Integer> HalterKoch::elements(Ring ring, const Integer& bound) const {
    std::vector<Integer> out;
    if (!feasible(ring)) return out;
    // f is increasing on the admissible range q_n T + shift (+1) > 0.
    const Integer offset = ring == Ring::Sqrt ? shift : Integer(shift + 1);
    for (Integer T = floor_div(Integer(-offset), q_n) + 1;; ++T) {
        const Integer value = f(T);
        if (ring == Ring::Sqrt) {
            if (value > 4 * bound) break;
            if (mod(value, Integer(4)) != 0) continue;
            Integer d = value / 4;
            if (d > 0 && !is_square(d)) out.push_back(std::move(d));
        } else {
            if (value > bound) break;
            if (mod(value, Integer(4)) != 1) continue;
            if (value > 0 && !is_square(value)) out.push_back(value);
        }
    }
    return out;
}

CrossCheckReport cross_check_parameterizations(const Integer& y, const Integer& x, const Integer& bound) {
    CrossCheckReport report{y, x, bound, {}, true};
    for (const SymmetricForm& form : symmetric_form(x, y)) {
        const HalterKoch hk = halter_koch_progression(form.seq);
        for (Ring ring : {Ring::Sqrt, Ring::HalfSqrt}) {
            CrossCheckEntry e;
            e.sign = form.sign;
            e.ring = ring;
            e.palindrome = form.seq;
            const auto prog = progression(make_key(y, x, form.sign, ring));
            e.progression_feasible = prog.has_value();
            e.halter_koch_feasible = hk.feasible(ring);
            if (prog) {
                for (auto& el : progression_elements_upto(*prog, bound).elements) {
                    e.from_progression.push_back(std::move(el.d));
                }
            }
            e.from_halter_koch = hk.elements(ring, bound);
            e.equal = e.progression_feasible == e.halter_koch_feasible &&
                      e.from_progression == e.from_halter_koch;
            report.all_equal = report.all_equal && e.equal;
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

}  // namespace pellinv
