#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadring {

enum class Errc {
    not_squarefree,
    degenerate_d,
    invalid_element,
    ring_mismatch,
    division_by_zero,
    overflow,
    unsupported_ring,
    both_zero,
    zero_element,
    not_prime,
    precondition_violated,
    unsupported_congruence_ring,
    real_ring_unsupported,
    imaginary_ring,
    real_ring_infinite_units,
    unsupported_real_ring,
    zero_or_unit,
    not_coprime,
    window_too_wide,
    non_positive_window,
    law_param_mismatch,
    degenerate_sector,
    empty_after_reduction,
    zero_target,
    cap_exceeded,
    parse_error,
    undecidable,
};

constexpr std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::not_squarefree: return "NotSquarefree";
    case Errc::degenerate_d: return "DegenerateD";
    case Errc::invalid_element: return "InvalidElement";
    case Errc::ring_mismatch: return "RingMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::overflow: return "Overflow";
    case Errc::unsupported_ring: return "UnsupportedRing";
    case Errc::both_zero: return "BothZero";
    case Errc::zero_element: return "ZeroElement";
    case Errc::not_prime: return "NotPrime";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::unsupported_congruence_ring: return "UnsupportedCongruenceRing";
    case Errc::real_ring_unsupported: return "RealRingUnsupported";
    case Errc::imaginary_ring: return "ImaginaryRing";
    case Errc::real_ring_infinite_units: return "RealRingInfiniteUnits";
    case Errc::unsupported_real_ring: return "UnsupportedRealRing";
    case Errc::zero_or_unit: return "ZeroOrUnit";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::window_too_wide: return "WindowTooWide";
    case Errc::non_positive_window: return "NonPositiveWindow";
    case Errc::law_param_mismatch: return "LawParamMismatch";
    case Errc::degenerate_sector: return "DegenerateSector";
    case Errc::empty_after_reduction: return "EmptyAfterReduction";
    case Errc::zero_target: return "ZeroTarget";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::undecidable: return "Undecidable";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the Errc codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace quadring
