#include "pellinv/arith.hpp"

#include <cmath>
#include <cstdio>

#include "pellinv/error.hpp"

namespace pellinv {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "invalid argument";
        case Errc::SquareInput: return "square input";
        case Errc::RingMismatch: return "ring mismatch";
        case Errc::EmptySequence: return "empty sequence";
        case Errc::NonpositiveTerm: return "nonpositive term";
        case Errc::NotPalindrome: return "not a palindrome";
        case Errc::NotCoprime: return "not coprime";
        case Errc::NotRepresentable: return "not representable";
        case Errc::NotInteger: return "not an integer";
        case Errc::BelowThreshold: return "below threshold";
        case Errc::NotPrime: return "not prime";
        case Errc::WrongResidue: return "wrong residue";
        case Errc::RingInfeasible: return "ring infeasible";
        case Errc::NotSquareFree: return "not square-free";
        case Errc::IsLeast: return "is least";
        case Errc::NotCoprimeClass: return "not a coprime class";
    }
    return "unknown";
}

int sign_of_surd(const Rational& a, const Rational& b, const Integer& d) {
    const int sa = sgn(a);
    const int sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 with b^2 d.
    const int cmp_sq = cmp(Rational(a * a), Rational(b * b * d));
    if (cmp_sq == 0) {
        throw Error(Errc::SquareInput, "sign_of_surd: d must be a non-square");
    }
    return cmp_sq > 0 ? sa : sb;
}

Integer parse_integer(const std::string& text) {
    Integer n;
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty() || n.set_str(s, 10) != 0) {
        throw Error(Errc::InvalidArgument, "not an integer: '" + text + "'");
    }
    return n;
}

Rational parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        Integer den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator: '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(Errc::InvalidArgument, "not a decimal: '" + text + "'");
        }
        bool negative = !whole.empty() && whole.front() == '-';
        Integer w = (whole.empty() || whole == "-" || whole == "+") ? Integer(0) : parse_integer(whole);
        Integer scale = pow(Integer(10), frac.size());
        Integer f = parse_integer(frac);
        Rational r(negative ? Integer(w * scale - f) : Integer(w * scale + f), scale);
        r.canonicalize();
        return r;
    }
    return Rational(parse_integer(text));
}

std::string to_decimal(long double x, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", significant, x);
    return buf;
}

std::string to_decimal(const Rational& r, int significant) {
    // mpf keeps enough bits that the 12-digit rendering is exact-rounded.
    mpf_class f(r, 256);
    mp_exp_t exp = 0;
    std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant));
    if (digits.empty() || digits == "0") return "0";
    bool negative = digits.front() == '-';
    if (negative) digits.erase(0, 1);
    std::string out = negative ? "-" : "";
    // Positional rendering when the exponent is modest, mirroring %g.
    if (exp > significant || exp < -4) {
        out += digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exp - 1);
        return out;
    }
    if (exp <= 0) {
        out += "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
        out += digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
        out += digits.substr(0, static_cast<std::size_t>(exp)) + "." +
               digits.substr(static_cast<std::size_t>(exp));
    }
    return out;
}

}  // namespace pellinv
