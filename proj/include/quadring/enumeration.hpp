#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "parallel.hpp"
#include "prime_table.hpp"

namespace quadring {

namespace detail {

/// An angle with its double image and the margin outside which the double
/// comparison is trusted.
struct AngleBound {
    Angle exact;
    double value;
    double margin;

    explicit AngleBound(const Angle& a)
        : exact(a), value(a.to_double()), margin(fast_margin * (1 + std::abs(a.to_double()))) {}
};

/// Membership of the associates of imaginary-ring records in an angle range,
/// decided in doubles away from the endpoints and exactly near them.
class SectorTest {
public:
    /// Requires 0 <= lo < hi <= lo + 2*pi; hi may exceed 2*pi.
    SectorTest(const Ring& ring, const Angle& lo, const Angle& hi)
        : ring_(ring), lo_(lo), hi_(hi), g_(quadring::unit_count(ring)) {
        for (const QuadInt& u : units_of(ring)) units_.emplace_back(to_i64(u.u()), to_i64(u.v()));
        step_ = 2 * std::numbers::pi / g_;
        if (hi > Angle::full_turn()) wrapped_hi_.emplace(hi - Angle::full_turn());
    }

    int unit_count() const { return g_; }

    Half64 associate(const PrimeRecord& rec, int k) const {
        return mul_half(ring_.d(), rec.u, rec.v, units_[k].first, units_[k].second);
    }

    double arg_of(const PrimeRecord& rec, int k) const { return rec.key + k * step_; }

    /// Sign of arg(associate) - bound.
    int compare(const PrimeRecord& rec, int k, const AngleBound& b) const {
        const double diff = arg_of(rec, k) - b.value;
        if (diff > b.margin) return 1;
        if (diff < -b.margin) return -1;
        const Half64 h = associate(rec, k);
        const auto c = compare_arg(QuadInt(ring_, h.u, h.v), b.exact);
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }

    bool half_open(const PrimeRecord& rec, int k) const {
        if (compare(rec, k, lo_) >= 0 && compare(rec, k, hi_) < 0) return true;
        return wrapped_hi_ && compare(rec, k, *wrapped_hi_) < 0;
    }
    bool open(const PrimeRecord& rec, int k) const {
        if (compare(rec, k, lo_) > 0 && compare(rec, k, hi_) < 0) return true;
        return wrapped_hi_ && compare(rec, k, *wrapped_hi_) < 0;
    }

private:
    Ring ring_;
    AngleBound lo_;
    AngleBound hi_;
    std::optional<AngleBound> wrapped_hi_;
    int g_;
    double step_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> units_;
};

inline void require_sector_range(const Angle& lo, const Angle& hi) {
    if (!(lo < hi)) fail(Errc::degenerate_sector, "sector needs theta1 < theta2");
    if (lo < Angle::zero() || hi > Angle::full_turn())
        fail(Errc::precondition_violated, "sector angles must satisfy 0 <= theta1 < theta2 <= 2*pi");
}

/// The real-ring ratio window (a, b] in doubles and exactly.
class RatioTest {
public:
    RatioTest(const Ring& ring, const QuadRational& a, const QuadRational& b)
        : ring_(ring), a_(a), b_(b), units_(real_units(ring)),
          log_a_(std::log(a.to_double())), log_b_(std::log(b.to_double())) {}

    /// Exponents j for which eps^j * rec has ratio in (a, b].
    template <class Emit>
    void for_each_match(const PrimeRecord& rec, Emit&& emit) const {
        // ratio of eps^j * rec is exp(key + j*log_s), log_s < 0
        const double j_lo = (log_b_ - rec.key) / units_.log_s;
        const double j_hi = (log_a_ - rec.key) / units_.log_s;
        const auto first = static_cast<std::int64_t>(std::floor(j_lo)) - 1;
        const auto last = static_cast<std::int64_t>(std::ceil(j_hi)) + 1;
        for (std::int64_t j = first; j <= last; ++j)
            if (matches(rec, j)) emit(j);
    }

    bool matches(const PrimeRecord& rec, std::int64_t j) const {
        const double l = rec.key + static_cast<double>(j) * units_.log_s;
        const int above_a = compare(rec, j, l, log_a_, a_);
        if (above_a <= 0) return false;
        return compare(rec, j, l, log_b_, b_) <= 0;
    }

    QuadInt associate(const PrimeRecord& rec, std::int64_t j) const {
        const QuadInt eps(ring_, units_.eps_u, units_.eps_v);
        const QuadInt step = j >= 0 ? eps : conjugate(eps);
        return QuadInt(ring_, rec.u, rec.v) * pow(step, static_cast<unsigned>(j >= 0 ? j : -j));
    }

private:
    int compare(const PrimeRecord& rec, std::int64_t j, double l, double bound_log, const QuadRational& bound) const {
        const double diff = l - bound_log;
        if (std::abs(diff) > fast_margin * (1 + std::abs(bound_log) + std::abs(l))) return diff > 0 ? 1 : -1;
        return compare_ratio(associate(rec, j), bound);
    }

    Ring ring_;
    QuadRational a_;
    QuadRational b_;
    RealUnits units_;
    double log_a_;
    double log_b_;
};

inline void require_ratio_window(const Ring& ring, const QuadRational& a, const QuadRational& b) {
    if (ring.is_imaginary()) fail(Errc::imaginary_ring, "ratio windows are for real rings (use a sector)");
    if (a.sign() <= 0 || !(a < b)) fail(Errc::non_positive_window, "ratio window needs 0 < a < b");
    const QuadInt eta = fundamental_unit(ring);
    if (!(b < a * QuadRational(eta * eta)))
        fail(Errc::window_too_wide, "ratio window needs b/a < eta^2 = " + to_string(eta * eta));
}

inline std::uint64_t x_to_limit(const Integer& x) {
    if (x < 0) return 0;
    if (x > Integer(1) << 62) fail(Errc::overflow, "norm bound too large");
    return to_u64(x);
}

} // namespace detail

/// Every prime element of absolute norm <= max_norm passing the filters, each
/// associate separately, ordered by (norm, u, v). Imaginary filters are
/// sectors with arg in [lo, hi) (and r^2 <= N < R^2 when radii are set); real
/// rings need a ratio window (a, b] and yield its totally positive primes.
inline std::vector<PrimeElement> prime_stream(const Ring& ring, const Integer& max_norm,
                                              const std::optional<Region>& filter = std::nullopt,
                                              const std::optional<CongruenceClass>& congruence = std::nullopt) {
    if (max_norm < 2) fail(Errc::precondition_violated, "max_norm must be at least 2");
    if (congruence) {
        if (!ring.is_gaussian()) fail(Errc::unsupported_congruence_ring, "congruence filters need d = -1");
        require_same_ring(ring, congruence->modulus.ring());
        require_coprime(*congruence);
    }
    const std::uint64_t limit = detail::x_to_limit(max_norm);
    const PrimeSnapshot snap = prime_snapshot(ring, limit);
    const auto [first, last] = snap.norm_range(0, limit);
    const auto& recs = snap.all();

    std::vector<PrimeElement> out;
    std::vector<PrimeElement> group;
    auto flush = [&] {
        std::sort(group.begin(), group.end(),
                  [](const PrimeElement& x, const PrimeElement& y) { return coordinate_order(x.element, y.element) < 0; });
        out.insert(out.end(), group.begin(), group.end());
        group.clear();
    };
    auto emit = [&](const PrimeRecord& rec, QuadInt a) {
        if (congruence && !in_class(a, *congruence)) return;
        if (!group.empty() && group.front().absolute_norm != rec.norm) flush();
        group.push_back(PrimeElement{std::move(a), Integer(rec.norm), rec.kind, Integer(rec.p)});
    };

    if (ring.is_imaginary()) {
        AnnularSector s{Angle::zero(), Angle::full_turn(), 0, std::nullopt};
        if (filter) {
            const auto* f = std::get_if<AnnularSector>(&*filter);
            if (!f) fail(Errc::precondition_violated, "imaginary rings take a sector filter");
            s = *f;
            validate_sector(s);
            detail::require_sector_range(s.lo, s.hi);
        }
        const detail::SectorTest test(ring, s.lo, s.hi);
        for (std::size_t i = first; i < last; ++i) {
            const PrimeRecord& rec = recs[i];
            const Rational n{Integer(rec.norm)};
            if (n < s.r * s.r || (s.R && !(n < *s.R * *s.R))) continue;
            for (int k = 0; k < test.unit_count(); ++k) {
                if (!test.half_open(rec, k)) continue;
                const auto h = test.associate(rec, k);
                emit(rec, QuadInt(ring, h.u, h.v));
            }
        }
    } else {
        const auto* w = filter ? std::get_if<RealInterval>(&*filter) : nullptr;
        if (!w) fail(Errc::precondition_violated, "real rings need a ratio window filter (a, b]");
        if (w->a.sign() <= 0 || !(w->a < w->b)) fail(Errc::non_positive_window, "ratio window needs 0 < a < b");
        const detail::RatioTest test(ring, w->a, w->b);
        for (std::size_t i = first; i < last; ++i)
            test.for_each_match(recs[i], [&](std::int64_t j) { emit(recs[i], test.associate(recs[i], j)); });
    }
    flush();
    return out;
}

/// Number of primes with N <= x and arg in [theta1, theta2), 0 <= theta1 < theta2 <= 2*pi.
inline std::uint64_t count_sector(const Ring& ring, const Integer& x, const Angle& theta1, const Angle& theta2,
                                  unsigned threads = 1) {
    if (ring.is_real()) fail(Errc::real_ring_unsupported, "count_sector needs d < 0 (use count_ratio)");
    detail::require_sector_range(theta1, theta2);
    const std::uint64_t limit = detail::x_to_limit(x);
    if (limit < 2) return 0;
    const PrimeSnapshot snap = prime_snapshot(ring, limit);
    const auto [first, last] = snap.norm_range(0, limit);
    const detail::SectorTest test(ring, theta1, theta2);
    const auto& recs = snap.all();
    return parallel_sum(last - first, threads, [&](std::size_t b, std::size_t e) {
        std::uint64_t c = 0;
        for (std::size_t i = first + b; i < first + e; ++i)
            for (int k = 0; k < test.unit_count(); ++k) c += test.half_open(recs[i], k) ? 1 : 0;
        return c;
    });
}

/// count_sector restricted to primes congruent to the class residue, in Z[i].
inline std::uint64_t count_sector_congruence(const Integer& x, const Angle& theta1, const Angle& theta2,
                                             const CongruenceClass& cls, unsigned threads = 1) {
    const Ring ring = cls.modulus.ring();
    detail::require_gaussian(ring, "count_sector_congruence");
    require_coprime(cls);
    detail::require_sector_range(theta1, theta2);
    const std::uint64_t limit = detail::x_to_limit(x);
    if (limit < 2) return 0;
    const PrimeSnapshot snap = prime_snapshot(ring, limit);
    const auto [first, last] = snap.norm_range(0, limit);
    const detail::SectorTest test(ring, theta1, theta2);
    const auto& recs = snap.all();
    return parallel_sum(last - first, threads, [&](std::size_t b, std::size_t e) {
        std::uint64_t c = 0;
        for (std::size_t i = first + b; i < first + e; ++i) {
            for (int k = 0; k < test.unit_count(); ++k) {
                if (!test.half_open(recs[i], k)) continue;
                const auto h = test.associate(recs[i], k);
                if (in_class(QuadInt(ring, h.u, h.v), cls)) ++c;
            }
        }
        return c;
    });
}

/// Totally positive primes with 0 < N <= x and a < rho'/rho <= b, b/a < eta^2.
inline std::uint64_t count_ratio(const Ring& ring, const Integer& x, const QuadRational& a, const QuadRational& b,
                                 unsigned threads = 1) {
    detail::require_ratio_window(ring, a, b);
    const std::uint64_t limit = detail::x_to_limit(x);
    if (limit < 2) return 0;
    const PrimeSnapshot snap = prime_snapshot(ring, limit);
    const auto [first, last] = snap.norm_range(0, limit);
    const detail::RatioTest test(ring, a, b);
    const auto& recs = snap.all();
    return parallel_sum(last - first, threads, [&](std::size_t lo, std::size_t hi) {
        std::uint64_t c = 0;
        for (std::size_t i = first + lo; i < first + hi; ++i) test.for_each_match(recs[i], [&](std::int64_t) { ++c; });
        return c;
    });
}

inline std::uint64_t count_ratio(const Ring& ring, const Integer& x, const Rational& a, const Rational& b,
                                 unsigned threads = 1) {
    return count_ratio(ring, x, QuadRational(ring, a), QuadRational(ring, b), threads);
}

/// CSV with header `norm,u,v,kind,rational_prime`; u, v are half coordinates.
inline void write_prime_csv(std::ostream& out, const std::vector<PrimeElement>& primes) {
    out << "norm,u,v,kind,rational_prime\n";
    for (const auto& p : primes)
        out << p.absolute_norm << ',' << p.element.u() << ',' << p.element.v() << ',' << to_string(p.kind) << ','
            << p.rational_prime << '\n';
}

} // namespace quadring
