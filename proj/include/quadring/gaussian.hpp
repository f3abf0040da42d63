#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "primality.hpp"

namespace quadring {

namespace detail {

inline void require_gaussian(const Ring& ring, const char* what) {
    if (!ring.is_gaussian())
        fail(Errc::unsupported_ring, std::string(what) + " is only provided for d = -1 (got d=" +
                                         std::to_string(ring.d()) + ")");
}

} // namespace detail

/// The associate with argument in [0, pi/2): real part > 0, imaginary part >= 0.
inline QuadInt first_quadrant_associate(const QuadInt& a) {
    detail::require_gaussian(a.ring(), "first_quadrant_associate");
    if (a.is_zero()) return a;
    return wedge_representative(a);
}

/// Euclidean gcd in Z[i] with nearest-lattice-point quotients, normalized to
/// the first-quadrant associate.
inline QuadInt gaussian_gcd(const QuadInt& a, const QuadInt& b) {
    require_same_ring(a.ring(), b.ring());
    detail::require_gaussian(a.ring(), "gaussian_gcd");
    if (a.is_zero() && b.is_zero()) fail(Errc::both_zero, "gcd(0, 0) is undefined");
    const Ring ring = a.ring();
    // work in ordinary coordinates x + y i
    Integer ax = a.u() / 2, ay = a.v() / 2;
    Integer bx = b.u() / 2, by = b.v() / 2;
    while (!(bx.is_zero() && by.is_zero())) {
        const Integer n = bx * bx + by * by;
        // a * conj(b) / N(b), rounded coordinatewise
        const Integer re = ax * bx + ay * by;
        const Integer im = ay * bx - ax * by;
        const Integer qx = round_of(Rational(re, n));
        const Integer qy = round_of(Rational(im, n));
        Integer rx = ax - (qx * bx - qy * by);
        Integer ry = ay - (qx * by + qy * bx);
        ax = std::move(bx);
        ay = std::move(by);
        bx = std::move(rx);
        by = std::move(ry);
    }
    return first_quadrant_associate(QuadInt::from_coords(ring, ax, ay));
}

struct GaussianFactorization {
    QuadInt unit;
    std::vector<std::pair<PrimeElement, int>> factors;  // first-quadrant primes, ordered by (norm, u, v)
};

/// gamma = unit * prod(pi_k ^ e_k), primes normalized to arg in [0, pi/2).
inline GaussianFactorization factor_gaussian(const QuadInt& gamma) {
    detail::require_gaussian(gamma.ring(), "factor_gaussian");
    if (gamma.is_zero()) fail(Errc::zero_element, "cannot factor zero");
    const Ring ring = gamma.ring();
    std::uint64_t n = to_u64(norm(gamma));

    std::vector<std::uint64_t> rational_primes;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        rational_primes.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) rational_primes.push_back(n);

    QuadInt rest = gamma;
    GaussianFactorization out{QuadInt::one(ring), {}};
    auto strip = [&](const QuadInt& pi, SplitKind kind, std::uint64_t p) {
        int e = 0;
        while (auto q = try_divide(rest, pi)) {
            rest = *q;
            ++e;
        }
        if (e > 0) out.factors.emplace_back(PrimeElement{pi, abs(norm(pi)), kind, Integer(p)}, e);
    };
    for (std::uint64_t p : rational_primes) {
        const SplitKind kind = detail::splitting_type_u64(ring.discriminant(), p);
        if (kind == SplitKind::inert) {
            strip(QuadInt::integer(ring, p), kind, p);
            continue;
        }
        const QuadInt pi = *solve_norm_equation(Integer(p), ring);  // Z[i] is a PID
        strip(pi, kind, p);
        if (kind == SplitKind::split) strip(first_quadrant_associate(conjugate(pi)), kind, p);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.absolute_norm != y.first.absolute_norm) return x.first.absolute_norm < y.first.absolute_norm;
        return coordinate_order(x.first.element, y.first.element) < 0;
    });
    out.unit = rest;
    return out;
}

/// Number of invertible residue classes modulo gamma in Z[i]:
/// N(gamma) * prod over distinct prime divisors of (1 - 1/N(pi)).
inline Integer euler_phi_gaussian(const QuadInt& gamma) {
    detail::require_gaussian(gamma.ring(), "euler_phi_gaussian");
    if (gamma.is_zero() || is_unit(gamma)) fail(Errc::zero_or_unit, "phi is defined for nonzero nonunits");
    const auto f = factor_gaussian(gamma);
    Integer phi = norm(gamma);
    for (const auto& [pi, e] : f.factors) phi = phi / pi.absolute_norm * (pi.absolute_norm - 1);
    return phi;
}

} // namespace quadring
