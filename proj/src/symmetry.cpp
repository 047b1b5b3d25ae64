#include "pellinv/symmetry.hpp"

#include <algorithm>

#include "pellinv/cf_engine.hpp"
#include "pellinv/error.hpp"

namespace pellinv {

bool is_palindrome(std::span<const Integer> seq) {
    return std::equal(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(seq.size() / 2), seq.rbegin());
}

SymmetricSeq::SymmetricSeq(std::vector<Integer> terms) : terms_(std::move(terms)) {
    for (const auto& a : terms_) {
        if (a <= 0) throw Error(Errc::NonpositiveTerm, "palindrome terms must be positive");
    }
    if (!is_palindrome(terms_)) throw Error(Errc::NotPalindrome, "sequence is not a palindrome");
}

ContinuantMatrix continuant(std::span<const Integer> seq) {
    ContinuantMatrix m;
    for (const auto& a : seq) {
        if (a <= 0) throw Error(Errc::NonpositiveTerm, "continuant terms must be positive");
        // [[q, q'], [r, r']] * [[a, 1], [1, 0]]
        Integer q = a * m.q_n + m.q_prev;
        Integer r = a * m.r_n + m.r_prev;
        m.q_prev = std::move(m.q_n);
        m.r_prev = std::move(m.r_n);
        m.q_n = std::move(q);
        m.r_n = std::move(r);
        ++m.n;
    }
    return m;
}

namespace {

bool congruent(const Integer& x, const Integer& y, Sign s) {
    return mod(Integer(x * x - sign_value(s)), y) == 0;
}

}  // namespace

std::vector<SymmetricForm> symmetric_form(const Integer& x, const Integer& y) {
    if (y <= 0 || x < 0 || x > y) {
        throw Error(Errc::InvalidArgument, "symmetric_form needs y > 0 and 0 <= x <= y");
    }
    if (gcd(x, y) != 1) throw Error(Errc::NotCoprime, "x and y must be coprime");
    if (y == 1) {
        // 0/1 = [0] and 1/1 = [0, 1] name the same key modulo 1.
        return {SymmetricForm{SymmetricSeq{}, Parity::Even, Sign::Minus},
                SymmetricForm{SymmetricSeq({Integer(1)}), Parity::Odd, Sign::Plus}};
    }
    const bool minus = congruent(x, y, Sign::Minus);
    const bool plus = congruent(x, y, Sign::Plus);
    if (!minus && !plus) {
        throw Error(Errc::NotRepresentable,
                    x.get_str() + "^2 is not +-1 mod " + y.get_str());
    }
    const TwoExpansions both = rational_two_expansions(x, y);
    std::vector<SymmetricForm> out;
    for (const auto* form : {&both.short_form, &both.long_form}) {
        std::span<const Integer> tail = std::span<const Integer>(*form).subspan(1);
        if (!is_palindrome(tail)) continue;
        const Sign s = sign_for_length(tail.size());
        if (!congruent(x, y, s)) {
            throw Error(Errc::InvalidArgument, "internal: palindrome parity disagrees with x^2 mod y");
        }
        out.push_back({SymmetricSeq(std::vector<Integer>(tail.begin(), tail.end())),
                       parity_of(tail.size()), s});
    }
    if (out.size() != static_cast<std::size_t>(minus) + static_cast<std::size_t>(plus)) {
        throw Error(Errc::InvalidArgument, "internal: missing palindrome for a representable x/y");
    }
    std::sort(out.begin(), out.end(),
              [](const SymmetricForm& a, const SymmetricForm& b) { return a.seq.size() < b.seq.size(); });
    return out;
}

SymmetricForm symmetric_form(const Integer& x, const Integer& y, Sign sign) {
    for (auto& f : symmetric_form(x, y)) {
        if (f.sign == sign) return f;
    }
    throw Error(Errc::NotRepresentable, x.get_str() + "^2 != " + std::to_string(sign_value(sign)) +
                                            " mod " + y.get_str());
}

RationalXY rational_from_symmetric(std::span<const Integer> terms) {
    if (!is_palindrome(terms)) throw Error(Errc::NotPalindrome, "sequence is not a palindrome");
    const ContinuantMatrix m = continuant(terms);
    return {m.r_n, m.q_n};
}

RationalXY rational_from_symmetric(const SymmetricSeq& seq) { return rational_from_symmetric(seq.terms()); }

TParity parity_of_t(const Integer& x, const Integer& y, Sign sign) {
    if (y <= 0) throw Error(Errc::InvalidArgument, "y must be positive");
    const Integer num = x * x - sign_value(sign);
    if (mod(num, y) != 0) {
        throw Error(Errc::NotInteger, "(x^2 - sign)/y is not an integer");
    }
    TParity out;
    out.t = num / y;
    out.parity = mod(out.t, Integer(2)) == 0 ? Parity::Even : Parity::Odd;
    return out;
}

}  // namespace pellinv
