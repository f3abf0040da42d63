#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "primality.hpp"
#include "region.hpp"

namespace quadring {

/// One prime element up to units. Imaginary rings store the associate with
/// arg in [0, 2*pi/g); real rings store the totally positive associate with
/// conjugate ratio in (s, 1] and skip primes without a totally positive
/// associate.
struct PrimeRecord {
    std::int64_t u;
    std::int64_t v;
    std::uint64_t norm;
    std::uint64_t p;
    SplitKind kind;
    double key;  // imaginary: arg; real: ln(a'/a)
};

/// All records of norm <= limit, ordered by (norm, u, v).
struct PrimeSnapshot {
    std::shared_ptr<const std::vector<PrimeRecord>> records;
    std::uint64_t limit = 0;

    const std::vector<PrimeRecord>& all() const { return *records; }

    /// Index range of records with lo < norm <= hi.
    std::pair<std::size_t, std::size_t> norm_range(std::uint64_t lo, std::uint64_t hi) const {
        const auto& r = *records;
        auto first = std::upper_bound(r.begin(), r.end(), lo, [](std::uint64_t x, const PrimeRecord& e) { return x < e.norm; });
        auto last = std::upper_bound(r.begin(), r.end(), hi, [](std::uint64_t x, const PrimeRecord& e) { return x < e.norm; });
        return {static_cast<std::size_t>(first - r.begin()), static_cast<std::size_t>(std::max(first, last) - r.begin())};
    }
};

namespace detail {

struct RealUnits {
    std::int64_t eps_u;
    std::int64_t eps_v;
    double log_s;
};

inline RealUnits real_units(const Ring& ring) {
    const QuadInt eps = totally_positive_unit(ring);
    const double e = (to_double(eps.u()) + to_double(eps.v()) * std::sqrt(static_cast<double>(ring.d()))) / 2;
    return {to_i64(eps.u()), to_i64(eps.v()), -2 * std::log(e)};
}

inline Half64 ratio_normalized_half(std::int64_t d, Half64 a, const RealUnits& units) {
    while (a.v < 0) a = mul_half(d, a.u, a.v, units.eps_u, units.eps_v);
    for (;;) {
        const Half64 up = mul_half(d, a.u, a.v, units.eps_u, -units.eps_v);
        if (up.v < 0) return a;
        a = up;
    }
}

inline double log_ratio(std::int64_t d, std::int64_t u, std::int64_t v, std::uint64_t n) {
    const double a = (static_cast<double>(u) + static_cast<double>(v) * std::sqrt(static_cast<double>(d))) / 2;
    return std::log(static_cast<double>(n)) - 2 * std::log(a);
}

inline PrimeRecord imaginary_record(const Ring& ring, std::int64_t u, std::int64_t v, std::uint64_t n, std::uint64_t p,
                                    SplitKind kind) {
    const QuadInt w = wedge_representative(QuadInt(ring, u, v));
    const auto wu = to_i64(w.u()), wv = to_i64(w.v());
    return {wu, wv, n, p, kind, arg_double(ring.d(), static_cast<double>(wu), static_cast<double>(wv))};
}

/// Records for the primes of norm in (lo, hi].
inline std::vector<PrimeRecord> build_segment(const Ring& ring, std::uint64_t lo, std::uint64_t hi) {
    std::vector<PrimeRecord> out;
    const std::int64_t d = ring.d();
    const std::int64_t disc = ring.discriminant();
    std::optional<UnitData> unit_info;
    std::optional<RealUnits> tp_units;
    if (ring.is_real()) {
        unit_info = unit_data(ring);
        tp_units = real_units(ring);
    }
    auto add_real = [&](Half64 a, std::uint64_t p, SplitKind kind) {
        a = ratio_normalized_half(d, a, *tp_units);
        out.push_back({a.u, a.v, p, p, kind, log_ratio(d, a.u, a.v, p)});
    };

    for (std::uint64_t p : primes_in_range(lo + 1, hi + 1)) {
        const SplitKind kind = splitting_type_u64(disc, p);
        if (kind == SplitKind::inert) continue;
        if (ring.is_imaginary()) {
            const auto a = solve_norm_imaginary(d, disc, p);
            if (!a) continue;
            out.push_back(imaginary_record(ring, a->u, a->v, p, p, kind));
            if (kind == SplitKind::split) out.push_back(imaginary_record(ring, a->u, -a->v, p, p, kind));
        } else {
            const auto a = solve_norm_real(d, disc, p, *unit_info);
            if (!a) continue;
            const i128 q4 = static_cast<i128>(a->u) * a->u - static_cast<i128>(d) * a->v * a->v;
            if (q4 < 0) continue;  // no totally positive generator
            add_real(*a, p, kind);
            if (kind == SplitKind::split) add_real({a->u, -a->v}, p, kind);
        }
    }
    for (std::uint64_t p : primes_in_range(isqrt_u64(lo) + 1, isqrt_u64(hi) + 1)) {
        if (splitting_type_u64(disc, p) != SplitKind::inert) continue;
        const auto u = static_cast<std::int64_t>(2 * p);
        out.push_back({u, 0, p * p, p, SplitKind::inert, 0.0});
    }
    std::sort(out.begin(), out.end(), [](const PrimeRecord& x, const PrimeRecord& y) {
        return std::tie(x.norm, x.u, x.v) < std::tie(y.norm, y.u, y.v);
    });
    return out;
}

} // namespace detail

/// Per-ring record tables, grown by doubling and shared as immutable
/// snapshots, so concurrent readers never observe a partial table.
inline PrimeSnapshot prime_snapshot(const Ring& ring, std::uint64_t limit) {
    static std::mutex mutex;
    static std::map<std::int64_t, PrimeSnapshot> cache;
    std::lock_guard lock(mutex);
    PrimeSnapshot& entry = cache[ring.d()];
    if (entry.records && entry.limit >= limit) return entry;
    const std::uint64_t old_limit = entry.records ? entry.limit : 1;
    const std::uint64_t new_limit = std::max({limit, 2 * old_limit, std::uint64_t{1} << 12});
    auto records = std::make_shared<std::vector<PrimeRecord>>();
    if (entry.records) *records = *entry.records;
    auto segment = detail::build_segment(ring, old_limit, new_limit);
    records->insert(records->end(), segment.begin(), segment.end());
    entry.records = std::move(records);
    entry.limit = new_limit;
    return entry;
}

} // namespace quadring
