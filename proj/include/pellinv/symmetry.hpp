#pragma once

// Palindromic partial-quotient blocks, the continuant matrix, and the
// correspondence between x/y with x^2 = +-1 (mod y) and palindromes.

#include <cstddef>
#include <span>
#include <vector>

#include "pellinv/arith.hpp"

namespace pellinv {

enum class Parity { Even, Odd };

// Residue of x^2 modulo y that a key satisfies.
enum class Sign : int { Minus = -1, Plus = 1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
// Palindromes of even length pair with x^2 = -1, odd length with x^2 = +1.
inline Sign sign_for_length(std::size_t n) { return n % 2 == 0 ? Sign::Minus : Sign::Plus; }
inline Parity parity_of(std::size_t n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

class SymmetricSeq {
public:
    SymmetricSeq() = default;
    // Throws NotPalindrome / NonpositiveTerm.
    explicit SymmetricSeq(std::vector<Integer> terms);

    const std::vector<Integer>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    bool operator==(const SymmetricSeq& o) const { return terms_ == o.terms_; }

private:
    std::vector<Integer> terms_;
};

bool is_palindrome(std::span<const Integer> seq);

// Ordered product of [[a_i, 1], [1, 0]] = [[q_n, q_{n-1}], [r_n, r_{n-1}]].
struct ContinuantMatrix {
    std::size_t n = 0;
    Integer q_n = 1;
    Integer q_prev = 0;
    Integer r_n = 0;
    Integer r_prev = 1;

    Integer determinant() const { return q_n * r_prev - q_prev * r_n; }
};

ContinuantMatrix continuant(std::span<const Integer> seq);

struct SymmetricForm {
    SymmetricSeq seq;
    Parity parity = Parity::Even;
    Sign sign = Sign::Minus;
};

// The palindromic expansion(s) of x/y = [0, a_1, ..., a_n]. One entry in
// general; two when y | 2. For y = 1 both the empty block (0/1) and [1]
// (1/1 = [0, 1]) are returned.
std::vector<SymmetricForm> symmetric_form(const Integer& x, const Integer& y);

// The variant with the given residue sign; throws NotRepresentable if absent.
SymmetricForm symmetric_form(const Integer& x, const Integer& y, Sign sign);

struct RationalXY {
    Integer x;
    Integer y;
};

RationalXY rational_from_symmetric(const SymmetricSeq& seq);
RationalXY rational_from_symmetric(std::span<const Integer> terms);

struct TParity {
    Integer t;
    Parity parity = Parity::Even;
};

// t = (x^2 - sign) / y; NotInteger unless x^2 = sign (mod y).
TParity parity_of_t(const Integer& x, const Integer& y, Sign sign);

}  // namespace pellinv
