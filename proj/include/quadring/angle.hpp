#pragma once

#include <cmath>
#include <compare>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "units.hpp"

namespace quadring {

/// An angle pi_coeff*pi + radians with exact rational parts. Keeping the pi
/// part separate lets unit rotations (multiples of 2*pi/g) stay exact.
struct Angle {
    Rational pi_coeff;
    Rational radians;

    static Angle pi_times(Rational c) { return {std::move(c), 0}; }
    static Angle from_radians(Rational r) { return {0, std::move(r)}; }
    static Angle zero() { return {}; }
    static Angle full_turn() { return pi_times(2); }

    double to_double() const {
        return quadring::to_double(pi_coeff) * std::numbers::pi + quadring::to_double(radians);
    }

    friend Angle operator+(const Angle& a, const Angle& b) { return {a.pi_coeff + b.pi_coeff, a.radians + b.radians}; }
    friend Angle operator-(const Angle& a, const Angle& b) { return {a.pi_coeff - b.pi_coeff, a.radians - b.radians}; }
    friend Angle operator*(const Rational& k, const Angle& a) { return {k * a.pi_coeff, k * a.radians}; }
    friend bool operator==(const Angle&, const Angle&) = default;
};

namespace detail {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

inline HighPrecision to_high(const Rational& q) {
    return HighPrecision(numerator_of(q)) / HighPrecision(denominator_of(q));
}

inline HighPrecision to_high(const Angle& a) {
    return to_high(a.pi_coeff) * boost::math::constants::pi<HighPrecision>() + to_high(a.radians);
}

inline std::strong_ordering ordering_of(int s) {
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

constexpr double fast_margin = 1e-9;
inline const HighPrecision& slow_margin() {
    static const HighPrecision m("1e-40");
    return m;
}

} // namespace detail

/// Sign of an angle. Exact when either part vanishes (pi is irrational);
/// otherwise certified by a wide double margin, then 50-digit arithmetic.
inline int sign(const Angle& a) {
    if (a.radians.is_zero()) return sign(a.pi_coeff);
    if (a.pi_coeff.is_zero()) return sign(a.radians);
    const double approx = a.to_double();
    const double scale = std::abs(quadring::to_double(a.pi_coeff)) * 4 + std::abs(quadring::to_double(a.radians)) + 1;
    if (std::abs(approx) > detail::fast_margin * scale) return approx < 0 ? -1 : 1;
    const auto precise = detail::to_high(a);
    if (abs(precise) > detail::slow_margin()) return precise < 0 ? -1 : 1;
    fail(Errc::undecidable, "angle sign not decidable at 50 digits");
}

inline std::strong_ordering operator<=>(const Angle& a, const Angle& b) { return detail::ordering_of(sign(a - b)); }

/// Accepts radians ("0.1", "-1/3", "1e-3") or pi multiples ("pi", "pi/4",
/// "3pi/4", "0.5*pi", "2pi").
inline Angle parse_angle(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    const auto at = s.find("pi");
    if (at == std::string::npos) return Angle::from_radians(parse_rational(s));
    std::string coef = s.substr(0, at);
    std::string rest = s.substr(at + 2);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    Rational c = 1;
    if (coef == "-") {
        c = -1;
    } else if (!coef.empty() && coef != "+") {
        c = parse_rational(coef);
    }
    if (!rest.empty()) {
        if (rest.front() != '/') fail(Errc::parse_error, "bad angle '" + std::string(text) + "'");
        Rational den = parse_rational(rest.substr(1));
        if (den.is_zero()) fail(Errc::division_by_zero, "bad angle '" + std::string(text) + "'");
        c /= den;
    }
    return Angle::pi_times(c);
}

inline std::string to_string(const Angle& a) {
    if (a.pi_coeff.is_zero()) return to_string(a.radians);
    std::string out = to_string(a.pi_coeff) + "*pi";
    if (!a.radians.is_zero()) out += (a.radians.sign() < 0 ? "-" : "+") + to_string(abs(a.radians));
    return out;
}

// --- arguments of elements of imaginary rings -------------------------------
//
// The embedding sends (u + v sqrt(d))/2 to u/2 + i v sqrt(|d|)/2, so the real
// part has the sign of u and the imaginary part the sign of v.

/// 0 when arg lies in [0, pi), 1 when in [pi, 2*pi).
template <class T>
int half_plane(const T& u, const T& v) {
    if (v > 0) return 0;
    if (v == 0 && u > 0) return 0;
    return 1;
}

/// Exact comparison of arg(a) and arg(b), both in [0, 2*pi), via the sign of
/// the imaginary part of conj(a)*b.
template <class T>
std::strong_ordering compare_arg_exact(const T& u1, const T& v1, const T& u2, const T& v2) {
    const int h1 = half_plane(u1, v1);
    const int h2 = half_plane(u2, v2);
    if (h1 != h2) return h1 <=> h2;
    const T cross = u1 * v2 - v1 * u2;
    if (cross > 0) return std::strong_ordering::less;
    if (cross < 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare_arg_exact(const QuadInt& a, const QuadInt& b) {
    require_same_ring(a.ring(), b.ring());
    return compare_arg_exact(a.u(), a.v(), b.u(), b.v());
}

/// arg in [0, 2*pi) as a double; heuristics only.
inline double arg_double(std::int64_t d, double u, double v) {
    double a = std::atan2(v * std::sqrt(static_cast<double>(-d)), u);
    if (a < 0) a += 2 * std::numbers::pi;
    return a;
}

inline double arg_double(const QuadInt& a) {
    return arg_double(a.ring().d(), quadring::to_double(a.u()), quadring::to_double(a.v()));
}

/// Field directions: arg(a) is a rational multiple of pi only at multiples of
/// pi/g (pi/4 for d = -1, pi/6 for d = -3, pi/2 otherwise), because a/conj(a)
/// is then a root of unity of the field. Returns the element at angle
/// k*pi/g for the integer k = c*g, when c*g is an integer.
inline std::optional<QuadInt> exact_direction(const Ring& ring, const Rational& pi_coeff) {
    const int g = unit_count(ring);
    const Rational k_rational = pi_coeff * g;
    if (denominator_of(k_rational) != 1) return std::nullopt;
    const Integer k = numerator_of(k_rational) % (2 * g);
    const int steps = static_cast<int>(k < 0 ? k + 2 * g : k);
    QuadInt base = QuadInt::one(ring);
    if (steps % 2 == 1) {
        switch (g) {
        case 4: base = QuadInt(ring, 2, 2); break;    // 1 + i at pi/4
        case 6: base = QuadInt(ring, 3, 1); break;    // (3 + sqrt(-3))/2 at pi/6
        default: base = QuadInt(ring, 0, 2); break;   // sqrt(d) at pi/2
        }
    }
    return base * pow(unit_generator(ring), static_cast<unsigned>(steps / 2));
}

namespace detail {

inline std::strong_ordering compare_arg_slow(std::int64_t d, const Integer& u, const Integer& v, const Angle& theta) {
    using boost::multiprecision::atan2;
    const HighPrecision two_pi = 2 * boost::math::constants::pi<HighPrecision>();
    HighPrecision a = atan2(HighPrecision(v) * boost::multiprecision::sqrt(HighPrecision(-d)), HighPrecision(u));
    if (a < 0) a += two_pi;
    const HighPrecision diff = a - to_high(theta);
    if (abs(diff) > slow_margin()) return diff < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    fail(Errc::undecidable, "argument comparison not decidable at 50 digits");
}

} // namespace detail

/// Compares arg(a) in [0, 2*pi) with theta (any real angle). Exact when the
/// two are equal or theta is a field direction; certified otherwise.
inline std::strong_ordering compare_arg(std::int64_t d, const Integer& u, const Integer& v, double arg_estimate,
                                        const Angle& theta) {
    const double t = theta.to_double();
    const double diff = arg_estimate - t;
    if (std::abs(diff) > detail::fast_margin * (1 + std::abs(t)))
        return diff < 0 ? std::strong_ordering::less : std::strong_ordering::greater;

    if (theta.radians.is_zero()) {
        // 0 <= arg < 2*pi, so only directions in that range can tie.
        if (theta.pi_coeff < 0) return std::strong_ordering::greater;
        if (theta.pi_coeff >= 2) return std::strong_ordering::less;
        const Ring ring = Ring::make(d);
        if (auto dir = exact_direction(ring, theta.pi_coeff))
            return compare_arg_exact(u, v, dir->u(), dir->v());
    }
    return detail::compare_arg_slow(d, u, v, theta);
}

inline std::strong_ordering compare_arg(const QuadInt& a, const Angle& theta) {
    if (a.ring().is_real()) fail(Errc::real_ring_unsupported, "arguments are defined for imaginary rings only");
    if (a.is_zero()) fail(Errc::zero_element, "argument of zero");
    return compare_arg(a.ring().d(), a.u(), a.v(), arg_double(a), theta);
}

/// theta_lo <= arg(a) < theta_hi.
inline bool arg_in_half_open(const QuadInt& a, const Angle& lo, const Angle& hi) {
    return compare_arg(a, lo) >= 0 && compare_arg(a, hi) < 0;
}

/// theta_lo < arg(a) < theta_hi.
inline bool arg_in_open(const QuadInt& a, const Angle& lo, const Angle& hi) {
    return compare_arg(a, lo) > 0 && compare_arg(a, hi) < 0;
}

} // namespace quadring
