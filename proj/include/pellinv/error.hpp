#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pellinv {

enum class Errc {
    InvalidArgument,
    SquareInput,
    RingMismatch,
    EmptySequence,
    NonpositiveTerm,
    NotPalindrome,
    NotCoprime,
    NotRepresentable,
    NotInteger,
    BelowThreshold,
    NotPrime,
    WrongResidue,
    RingInfeasible,
    NotSquareFree,
    IsLeast,
    NotCoprimeClass,
};

std::string_view errc_name(Errc code);

// Domain error carrying a machine-readable code. Every precondition failure in
// the library surfaces as one of these.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace pellinv
