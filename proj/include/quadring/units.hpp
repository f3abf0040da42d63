#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ring.hpp"

namespace quadring {

/// Number of units of an imaginary quadratic ring.
inline int unit_count(const Ring& ring) {
    if (ring.is_real()) fail(Errc::real_ring_infinite_units, "real quadratic rings have infinitely many units");
    if (ring.d() == -1) return 4;
    if (ring.d() == -3) return 6;
    return 2;
}

/// The unit of smallest positive argument 2*pi/g.
inline QuadInt unit_generator(const Ring& ring) {
    switch (unit_count(ring)) {
    case 4: return QuadInt(ring, 0, 2);  // i
    case 6: return QuadInt(ring, 1, 1);  // (1 + sqrt(-3))/2
    default: return QuadInt(ring, -2, 0);
    }
}

/// All units in counter-clockwise order starting at 1.
inline std::vector<QuadInt> units_of(const Ring& ring) {
    std::vector<QuadInt> out;
    const QuadInt gen = unit_generator(ring);
    QuadInt u = QuadInt::one(ring);
    for (int k = 0; k < unit_count(ring); ++k) {
        out.push_back(u);
        u *= gen;
    }
    return out;
}

namespace detail {

/// Continued fraction of (P0 + sqrt(d))/Q0 in exact integers. The first
/// index with Q_{i+1} == Q0 closes the period and yields the fundamental unit.
inline QuadInt fundamental_unit_uncached(const Ring& ring) {
    const Integer d = ring.d();
    const bool half = ring.basis_mode() == BasisMode::half;
    const Integer p0 = half ? 1 : 0;
    const Integer q0 = half ? 2 : 1;
    const Integer s = isqrt(d);

    Integer p = p0, q = q0;
    Integer a_prev2 = 0, a_prev1 = 1;  // convergent numerators A_{-2}, A_{-1}
    Integer b_prev2 = 1, b_prev1 = 0;  // denominators
    for (int iter = 0; iter < 1'000'000; ++iter) {
        const Integer a = (p + s) / q;  // q > 0 throughout for these seeds
        const Integer num = a * a_prev1 + a_prev2;
        const Integer den = a * b_prev1 + b_prev2;
        a_prev2 = a_prev1;
        a_prev1 = num;
        b_prev2 = b_prev1;
        b_prev1 = den;
        p = a * q - p;
        q = (d - p * p) / q;
        if (q == q0) {
            // element q0*A - p0*B + B*sqrt(d) over q0, converted to half coordinates
            const Integer g = q0 * num - p0 * den;
            return QuadInt(ring, 2 * g / q0, 2 * den / q0);
        }
    }
    fail(Errc::precondition_violated, "continued fraction period too long for d=" + std::to_string(ring.d()));
}

} // namespace detail

/// The smallest unit greater than 1 of a real quadratic ring.
inline QuadInt fundamental_unit(const Ring& ring) {
    if (ring.is_imaginary()) fail(Errc::imaginary_ring, "imaginary rings have no fundamental unit");
    static std::mutex mutex;
    static std::map<std::int64_t, QuadInt> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(ring.d()); it != cache.end()) return it->second;
    }
    QuadInt eta = detail::fundamental_unit_uncached(ring);
    std::lock_guard lock(mutex);
    return cache.emplace(ring.d(), eta).first->second;
}

/// The smallest totally positive unit greater than 1: eta or eta^2.
inline QuadInt totally_positive_unit(const Ring& ring) {
    QuadInt eta = fundamental_unit(ring);
    return norm(eta) == 1 ? eta : eta * eta;
}

} // namespace quadring
