#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "angle.hpp"
#include "ring.hpp"
#include "units.hpp"

namespace quadring {

enum class SplitKind { split, inert, ramified };

inline std::string_view to_string(SplitKind k) {
    switch (k) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
    }
    return "?";
}

/// A verified prime element together with the rational prime below it.
struct PrimeElement {
    QuadInt element;
    Integer absolute_norm;
    SplitKind kind;
    Integer rational_prime;
};

inline bool operator==(const PrimeElement& a, const PrimeElement& b) {
    return a.element == b.element && a.absolute_norm == b.absolute_norm && a.kind == b.kind &&
           a.rational_prime == b.rational_prime;
}

namespace detail {

inline SplitKind splitting_type_u64(std::int64_t discriminant, std::uint64_t p) {
    if (p == 2) {
        const std::int64_t r = mod_floor(discriminant, 8);
        if (r % 2 == 0) return SplitKind::ramified;
        return r == 1 ? SplitKind::split : SplitKind::inert;
    }
    const auto residue = static_cast<std::uint64_t>(mod_floor(discriminant, static_cast<std::int64_t>(p)));
    if (residue == 0) return SplitKind::ramified;
    return powmod(residue, (p - 1) / 2, p) == 1 ? SplitKind::split : SplitKind::inert;
}

struct Half64 {
    std::int64_t u;
    std::int64_t v;
};

/// b with b^2 = D (mod 4p) and b = D (mod 2): the ideal (p, (b + sqrt(D))/2).
inline std::int64_t ideal_root(std::int64_t discriminant, std::uint64_t p) {
    const auto pp = static_cast<std::int64_t>(p);
    if (p == 2) {
        for (std::int64_t b = 0; b < 4; ++b)
            if (mod_floor(b - discriminant, 2) == 0 && mod_floor(b * b - discriminant, 8) == 0) return b;
        fail(Errc::precondition_violated, "2 is inert");
    }
    const auto residue = static_cast<std::uint64_t>(mod_floor(discriminant, pp));
    auto b = static_cast<std::int64_t>(sqrt_mod_prime(residue, p));
    if (mod_floor(b - discriminant, 2) != 0) b = pp - b;
    return b;
}

/// Gauss-Lagrange reduction of a two-dimensional lattice in half coordinates
/// under the positive definite form u^2 + c*v^2 (c > 0).
inline void lagrange_reduce(i128& x1u, i128& x1v, i128& x2u, i128& x2v, i128 c) {
    auto form = [c](i128 u, i128 v) { return u * u + c * v * v; };
    auto inner = [c](i128 au, i128 av, i128 bu, i128 bv) { return au * bu + c * av * bv; };
    if (form(x1u, x1v) > form(x2u, x2v)) {
        std::swap(x1u, x2u);
        std::swap(x1v, x2v);
    }
    for (;;) {
        const i128 mu = round_div(inner(x1u, x1v, x2u, x2v), form(x1u, x1v));
        x2u -= mu * x1u;
        x2v -= mu * x1v;
        if (form(x2u, x2v) >= form(x1u, x1v)) break;
        std::swap(x1u, x2u);
        std::swap(x1v, x2v);
    }
}

/// Imaginary case: the ideal above p is principal iff its shortest vector
/// has norm p, so NoSolution is exact.
inline std::optional<Half64> solve_norm_imaginary(std::int64_t d, std::int64_t discriminant, std::uint64_t p) {
    const std::int64_t b = ideal_root(discriminant, p);
    i128 x1u = 2 * static_cast<i128>(p), x1v = 0;
    i128 x2u = b, x2v = discriminant == d ? 1 : 2;
    lagrange_reduce(x1u, x1v, x2u, x2v, -static_cast<i128>(d));
    if (x1u * x1u - static_cast<i128>(d) * x1v * x1v != 4 * static_cast<i128>(p)) return std::nullopt;
    return Half64{checked_i64(x1u), checked_i64(x1v)};
}

inline int sign_half(i128 u, i128 v, std::int64_t d) {
    // sign of u + v*sqrt(d), d > 0 non-square
    const int su = u > 0 ? 1 : u < 0 ? -1 : 0;
    const int sv = v > 0 ? 1 : v < 0 ? -1 : 0;
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    return u * u > static_cast<i128>(d) * v * v ? su : sv;
}

struct UnitData {
    std::int64_t eta_u;
    std::int64_t eta_v;
    int eta_norm;
    long double eta;
};

inline UnitData unit_data(const Ring& ring) {
    const QuadInt eta = fundamental_unit(ring);
    return {to_i64(eta.u()), to_i64(eta.v()), norm(eta) == 1 ? 1 : -1,
            (static_cast<long double>(to_i64(eta.u())) +
             static_cast<long double>(to_i64(eta.v())) * std::sqrt(static_cast<long double>(ring.d()))) /
                2};
}

inline Half64 mul_half(std::int64_t d, i128 au, i128 av, i128 bu, i128 bv) {
    return {checked_i64((au * bu + d * av * bv) / 2), checked_i64((au * bv + av * bu) / 2)};
}

/// Real case: every generator has an associate with |a| < eta*sqrt(p) and
/// |a'| <= sqrt(p); those lie in a ball of the Minkowski lattice of the ideal,
/// which a reduced basis enumerates completely with a few points.
inline std::optional<Half64> solve_norm_real(std::int64_t d, std::int64_t discriminant, std::uint64_t p,
                                             const UnitData& units) {
    const std::int64_t b = ideal_root(discriminant, p);
    i128 f1u = 2 * static_cast<i128>(p), f1v = 0;
    i128 f2u = b, f2v = discriminant == d ? 1 : 2;
    lagrange_reduce(f1u, f1v, f2u, f2v, d);

    const auto m1 = static_cast<long double>(f1u * f1u + d * f1v * f1v);
    const auto b12 = static_cast<long double>(f1u * f2u + d * f1v * f2v);
    // Gram determinant of u^2 + d v^2 is d * (lattice determinant)^2, and the
    // lattice determinant is preserved by the reduction.
    const i128 lattice_det = 2 * static_cast<i128>(p) * (discriminant == d ? 1 : 2);
    const auto det2 = static_cast<long double>(d) * static_cast<long double>(lattice_det) *
                      static_cast<long double>(lattice_det);
    const long double bound = 2.0L * static_cast<long double>(p) * (units.eta * units.eta + 1) * (1 + 1e-9L) + 4;
    const auto j_max = static_cast<std::int64_t>(std::floor(std::sqrt(bound * m1 / det2))) + 1;

    std::optional<Half64> best;
    int best_sign = 0;
    auto consider = [&](i128 u, i128 v) {
        const i128 q4 = u * u - static_cast<i128>(d) * v * v;
        if (q4 != 4 * static_cast<i128>(p) && q4 != -4 * static_cast<i128>(p)) return;
        if (sign_half(u, v, d) < 0) {
            u = -u;
            v = -v;
        }
        const int s = q4 > 0 ? 1 : -1;
        const Half64 cand{checked_i64(u), checked_i64(v)};
        auto key = [](const Half64& h, int sgn) {
            return std::tuple(-sgn, h.v < 0 ? -h.v : h.v, h.u, h.v);
        };
        if (!best || key(cand, s) < key(*best, best_sign)) {
            best = cand;
            best_sign = s;
        }
    };
    for (std::int64_t j = -j_max; j <= j_max; ++j) {
        const long double jj = static_cast<long double>(j);
        const long double disc = m1 * bound - det2 * jj * jj;
        if (disc < 0) continue;
        const long double center = -b12 * jj / m1;
        const long double half_width = std::sqrt(disc) / m1;
        const auto i_lo = static_cast<std::int64_t>(std::floor(center - half_width)) - 1;
        const auto i_hi = static_cast<std::int64_t>(std::ceil(center + half_width)) + 1;
        for (std::int64_t i = i_lo; i <= i_hi; ++i) consider(i * f1u + j * f2u, i * f1v + j * f2v);
    }
    if (!best) return std::nullopt;
    if (best_sign < 0 && units.eta_norm < 0) {
        Half64 h = mul_half(d, best->u, best->v, units.eta_u, units.eta_v);
        if (sign_half(h.u, h.v, d) < 0) h = {-h.u, -h.v};
        best = h;
    }
    return best;
}

} // namespace detail

/// Behaviour of the rational prime p in the ring: ramified iff p divides the
/// discriminant, otherwise the Kronecker symbol (D/p) decides.
inline SplitKind splitting_type(const Integer& p, const Ring& ring) {
    if (!is_rational_prime(p)) fail(Errc::not_prime, p.str() + " is not a rational prime");
    return detail::splitting_type_u64(ring.discriminant(), to_u64(p));
}

/// Rotates an element of an imaginary ring by units into arg in [0, 2*pi/g).
inline QuadInt wedge_representative(const QuadInt& a) {
    const Ring& ring = a.ring();
    const QuadInt gen = unit_generator(ring);
    QuadInt out = a;
    for (int k = 0; k < unit_count(ring); ++k) {
        if (compare_arg_exact(out, gen) < 0) return out;
        out *= gen;
    }
    return out;
}

/// An element of absolute norm p, or nullopt when none exists (only possible
/// when the class number exceeds 1). Imaginary results lie in the wedge
/// [0, 2*pi/g); real results are positive and totally positive when any
/// generator of positive norm exists.
inline std::optional<QuadInt> solve_norm_equation(const Integer& p, const Ring& ring) {
    const SplitKind kind = splitting_type(p, ring);
    if (kind == SplitKind::inert)
        fail(Errc::precondition_violated, p.str() + " is inert for d=" + std::to_string(ring.d()));
    const std::uint64_t pp = to_u64(p);
    if (pp > (1ULL << 52)) fail(Errc::overflow, "norm equation solver supports p < 2^52");
    std::optional<detail::Half64> h;
    if (ring.is_imaginary()) {
        h = detail::solve_norm_imaginary(ring.d(), ring.discriminant(), pp);
    } else {
        h = detail::solve_norm_real(ring.d(), ring.discriminant(), pp, detail::unit_data(ring));
    }
    if (!h) return std::nullopt;
    QuadInt a(ring, h->u, h->v);
    return ring.is_imaginary() ? wedge_representative(a) : a;
}

/// A nonzero element is prime iff |N(a)| is a rational prime, or a is an
/// associate of an inert rational prime.
inline std::optional<PrimeElement> as_prime_element(const QuadInt& a) {
    if (a.is_zero()) return std::nullopt;
    const Integer n = abs(norm(a));
    if (n <= 1) return std::nullopt;
    if (is_rational_prime(n)) return PrimeElement{a, n, splitting_type(n, a.ring()), n};
    Integer r;
    if (!is_square(n, &r) || !is_rational_prime(r)) return std::nullopt;
    if (splitting_type(r, a.ring()) != SplitKind::inert) return std::nullopt;
    if (!divides(QuadInt::integer(a.ring(), r), a)) return std::nullopt;
    return PrimeElement{a, n, SplitKind::inert, r};
}

inline bool is_prime_element(const QuadInt& a) { return as_prime_element(a).has_value(); }

inline PrimeElement require_prime(const QuadInt& a) {
    auto p = as_prime_element(a);
    if (!p) fail(Errc::precondition_violated, to_string(a) + " is not a prime element");
    return *p;
}

} // namespace quadring
