#pragma once

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "gaussian.hpp"
#include "invariants.hpp"

namespace quadring {

/// {z : lo < arg z < hi, r < |z| < R}; an absent R means no outer bound.
/// Counting uses the half-open angle range [lo, hi) instead.
struct AnnularSector {
    Angle lo;
    Angle hi;
    Rational r = 0;
    std::optional<Rational> R;
};

/// The real interval (a, b); as a ratio window for a'/a it is (a, b].
struct RealInterval {
    QuadRational a;
    QuadRational b;
};

using Region = std::variant<AnnularSector, RealInterval>;

inline void validate_sector(const AnnularSector& s) {
    if (!(s.lo < s.hi)) fail(Errc::degenerate_sector, "sector needs lo < hi");
    if (s.hi - s.lo > Angle::full_turn()) fail(Errc::degenerate_sector, "sector is wider than a full turn");
    if (s.r < 0) fail(Errc::degenerate_sector, "negative inner radius");
    if (s.R && !(s.r < *s.R)) fail(Errc::degenerate_sector, "sector needs r < R");
}

// --- congruence classes -------------------------------------------------------

struct CongruenceClass {
    QuadInt residue;
    QuadInt modulus;
};

inline CongruenceClass make_congruence_class(const QuadInt& residue, const QuadInt& modulus) {
    require_same_ring(residue.ring(), modulus.ring());
    if (modulus.is_zero() || is_unit(modulus))
        fail(Errc::precondition_violated, "a congruence modulus must be a nonzero nonunit");
    return {residue, modulus};
}

/// Prime counting and search need gcd(residue, modulus) to be a unit.
inline void require_coprime(const CongruenceClass& c) {
    detail::require_gaussian(c.modulus.ring(), "congruence classes");
    if (c.modulus.is_zero() || is_unit(c.modulus))
        fail(Errc::precondition_violated, "a congruence modulus must be a nonzero nonunit");
    if (c.residue.is_zero() || !is_unit(gaussian_gcd(c.residue, c.modulus)))
        fail(Errc::not_coprime, to_string(c.residue) + " and " + to_string(c.modulus) + " are not coprime");
}

inline bool in_class(const QuadInt& a, const CongruenceClass& c) { return congruent_mod(a, c.residue, c.modulus); }

// --- angles -------------------------------------------------------------------

namespace detail {

/// lo shifted by a multiple of 2*pi into [0, 2*pi), with the shift.
inline std::pair<Angle, Angle> reduce_range(const Angle& lo, const Angle& hi) {
    const Angle turn = Angle::full_turn();
    const auto k = static_cast<std::int64_t>(std::floor(lo.to_double() / turn.to_double()));
    Angle shift = Rational(k) * turn;
    while (lo - shift < Angle::zero()) shift = shift - turn;
    while (!(lo - shift < turn)) shift = shift + turn;
    return {lo - shift, hi - shift};
}

} // namespace detail

/// Whether arg(a) + 2*pi*k lies in [lo, hi) (open: (lo, hi)) for some k.
/// Requires hi - lo <= 2*pi.
inline bool arg_in_range(const QuadInt& a, const Angle& lo, const Angle& hi, bool open) {
    const auto [l, h] = detail::reduce_range(lo, hi);
    const Angle turn = Angle::full_turn();
    const auto lo_cmp = compare_arg(a, l);
    if ((open ? lo_cmp > 0 : lo_cmp >= 0) && compare_arg(a, h) < 0) return true;
    if (h > turn) return compare_arg(a, h - turn) < 0;
    return false;
}

inline bool in_open_sector(const QuadInt& a, const AnnularSector& s) {
    if (!arg_in_range(a, s.lo, s.hi, true)) return false;
    const Rational n{norm(a)};
    if (!(n > s.r * s.r)) return false;
    return !s.R || n < *s.R * *s.R;
}

// --- real rings ---------------------------------------------------------------

/// a > 0 and a' > 0, decided on integer coordinates.
inline bool totally_positive_check(const QuadInt& a) {
    if (a.ring().is_imaginary()) fail(Errc::imaginary_ring, "total positivity is defined for real rings");
    const Integer d = a.ring().d();
    // a and a' are both positive iff u > 0 and u^2 > d v^2
    return a.u() > 0 && a.u() * a.u() > d * a.v() * a.v();
}

/// Sign of a'/a - c for totally positive a.
inline int compare_ratio(const QuadInt& a, const QuadRational& c) {
    return (QuadRational(conjugate(a)) - c * QuadRational(a)).sign();
}

inline QuadRational conjugate_ratio(const QuadInt& a) { return QuadRational(conjugate(a)) / QuadRational(a); }

/// A totally positive associate, if any exists.
inline std::optional<QuadInt> totally_positive_associate(const QuadInt& a) {
    if (a.is_zero()) fail(Errc::zero_element, "zero has no associates");
    QuadInt b = a;
    if (norm(b) < 0) {
        const QuadInt eta = fundamental_unit(a.ring());
        if (norm(eta) > 0) return std::nullopt;
        b *= eta;
    }
    if (!totally_positive_check(b)) b = -b;
    return b;
}

/// The totally positive associate eps^k * a with ratio in (s, 1], where eps is
/// the smallest totally positive unit > 1 and s = eps'/eps.
inline QuadInt ratio_normalized(const QuadInt& a) {
    const QuadInt eps = totally_positive_unit(a.ring());
    const QuadInt eps_inv = conjugate(eps);
    QuadInt b = a;
    // ratio <= 1 iff v >= 0; multiplying by eps scales the ratio by s < 1
    while (b.v() < 0) b *= eps;
    for (;;) {
        QuadInt up = b * eps_inv;
        if (up.v() < 0) return b;
        b = std::move(up);
    }
}

/// Associates of a lying in the window. Imaginary rings: the units u with
/// arg(u*a) in [lo, hi) (radii are not consulted). Real rings: the totally
/// positive associates with a'/a in (lo, hi], a finite geometric family.
inline std::vector<QuadInt> associates_in_window(const QuadInt& a, const Region& window) {
    if (a.is_zero()) fail(Errc::zero_element, "zero has no associates");
    std::vector<QuadInt> out;
    if (a.ring().is_imaginary()) {
        const auto* s = std::get_if<AnnularSector>(&window);
        if (!s) fail(Errc::precondition_violated, "imaginary rings take a sector window");
        validate_sector(*s);
        for (const QuadInt& u : units_of(a.ring())) {
            QuadInt b = u * a;
            if (arg_in_range(b, s->lo, s->hi, false)) out.push_back(std::move(b));
        }
        std::sort(out.begin(), out.end(), [](const QuadInt& x, const QuadInt& y) { return coordinate_order(x, y) < 0; });
        return out;
    }
    const auto* w = std::get_if<RealInterval>(&window);
    if (!w) fail(Errc::precondition_violated, "real rings take a ratio window");
    if (w->a.sign() <= 0 || !(w->a < w->b)) fail(Errc::non_positive_window, "ratio windows need 0 < a < b");
    const auto tp = totally_positive_associate(a);
    if (!tp) return out;
    const QuadInt eps = totally_positive_unit(a.ring());
    const QuadInt eps_inv = conjugate(eps);
    // ratios of eps^k * b are ratio(b) * s^k; walk down from above the window
    QuadInt b = ratio_normalized(*tp);
    while (compare_ratio(b, w->b) <= 0) b *= eps_inv;
    for (;;) {
        b *= eps;
        if (compare_ratio(b, w->a) <= 0) break;
        if (compare_ratio(b, w->b) <= 0) out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const QuadInt& x, const QuadInt& y) { return coordinate_order(x, y) < 0; });
    return out;
}

} // namespace quadring
