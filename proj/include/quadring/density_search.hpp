#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enumeration.hpp"

namespace quadring {

struct SearchOptions {
    Integer cap = 10'000'000;  // bound on the norms of both primes
    unsigned threads = 1;
};

/// numerator/denominator lies strictly inside target; transcript lists the
/// exact tests that establish it.
struct QuotientWitness {
    PrimeElement numerator;
    PrimeElement denominator;
    Ring ring;
    Region target;
    std::uint64_t search_cost = 0;
    std::vector<std::string> transcript;
};

/// A reduced target plus the unit u with original quotient = u * reduced
/// quotient. Imaginary sectors are rotated so that lo lies in [0, 2*pi/g);
/// pieces splits the reduced sector at multiples of 2*pi/g.
struct CanonicalTarget {
    Region reduced;
    QuadInt unit;
    std::vector<AnnularSector> pieces;
};

namespace detail {

inline bool record_check(std::vector<std::string>& log, const std::string& what, bool ok) {
    log.push_back(what + ": " + (ok ? "true" : "false"));
    return ok;
}

inline bool check_prime(std::vector<std::string>& log, const std::string& name, const QuadInt& a) {
    const auto p = as_prime_element(a);
    if (!p) return record_check(log, name + " " + to_string(a) + " is prime", false);
    if (p->kind == SplitKind::inert)
        return record_check(log, name + " " + to_string(a) + " is an associate of the inert rational prime " +
                                     p->rational_prime.str(), true);
    return record_check(log, "|N(" + name + ")| = " + p->absolute_norm.str() + " is a rational prime", true);
}

inline Angle wedge_angle(const Ring& ring) { return Angle::pi_times(Rational(2, unit_count(ring))); }

/// k with k*step <= a < (k+1)*step.
inline std::int64_t angle_floor(const Angle& a, const Angle& step) {
    auto k = static_cast<std::int64_t>(std::floor(a.to_double() / step.to_double()));
    while (a < Rational(k) * step) --k;
    while (!(a < Rational(k + 1) * step)) ++k;
    return k;
}

inline QuadRational real_c(const Ring& ring) {
    const QuadInt eta = fundamental_unit(ring);
    return (QuadRational(ring, 1) + QuadRational(eta * eta)) / QuadRational(ring, 2);
}

inline void require_search_sector(const AnnularSector& s) {
    validate_sector(s);
    if (!(s.r > 0) || !s.R) fail(Errc::degenerate_sector, "search sectors need 0 < r < R < infinity");
}

/// Rotate by multiples of 2*pi only, so that lo lies in [0, 2*pi).
inline AnnularSector turn_reduced(const AnnularSector& s) {
    const auto [lo, hi] = reduce_range(s.lo, s.hi);
    return {lo, hi, s.r, s.R};
}

} // namespace detail

inline CanonicalTarget canonicalize_target(const Ring& ring, const Region& region) {
    if (ring.is_imaginary()) {
        const auto* s = std::get_if<AnnularSector>(&region);
        if (!s) fail(Errc::precondition_violated, "imaginary rings take sector targets");
        validate_sector(*s);
        const Angle w = detail::wedge_angle(ring);
        const std::int64_t k = detail::angle_floor(s->lo, w);
        const Angle shift = Rational(k) * w;
        AnnularSector red{s->lo - shift, s->hi - shift, s->r, s->R};
        const int g = unit_count(ring);
        const auto steps = static_cast<unsigned>(((k % g) + g) % g);
        CanonicalTarget out{red, pow(unit_generator(ring), steps), {}};
        Angle cut = red.lo;
        for (std::int64_t m = 1; cut < red.hi; ++m) {
            const Angle next = std::min(Rational(m) * w, red.hi, [](const Angle& x, const Angle& y) { return x < y; });
            out.pieces.push_back({cut, next, red.r, red.R});
            cut = next;
        }
        return out;
    }
    const auto* iv = std::get_if<RealInterval>(&region);
    if (!iv) fail(Errc::precondition_violated, "real rings take interval targets");
    require_same_ring(ring, iv->a.ring());
    require_same_ring(ring, iv->b.ring());
    if (!(iv->a < iv->b)) fail(Errc::empty_after_reduction, "interval (a, b) needs a < b");
    QuadRational a = iv->a, b = iv->b;
    QuadInt unit = QuadInt::one(ring);
    if (b.sign() <= 0) {
        a = -iv->b;
        b = -iv->a;
        unit = -unit;
    }
    const QuadRational c = detail::real_c(ring);
    if (a.sign() <= 0) a = b / c;  // positive part (0, b), shrunk to width c
    const QuadInt eta = fundamental_unit(ring);
    if (!(b < a * QuadRational(eta * eta))) b = a * c;
    return {RealInterval{a, b}, unit, {}};
}

/// Exact verification that num/den lies strictly inside the target.
inline bool verify_quotient(const QuadInt& num, const QuadInt& den, const Region& target,
                            std::vector<std::string>& log) {
    require_same_ring(num.ring(), den.ring());
    bool ok = detail::check_prime(log, "numerator", num);
    ok = detail::check_prime(log, "denominator", den) && ok;
    if (num.ring().is_imaginary()) {
        const auto& s = std::get<AnnularSector>(target);
        const Rational q{norm(num), norm(den)};
        ok = detail::record_check(log, "N(numerator)/N(denominator) = " + to_string(q) + " > r^2 = " + to_string(s.r * s.r),
                                  q > s.r * s.r) && ok;
        if (s.R)
            ok = detail::record_check(log, "N(numerator)/N(denominator) = " + to_string(q) + " < R^2 = " +
                                               to_string(*s.R * *s.R),
                                      q < *s.R * *s.R) && ok;
        const QuadInt z = num * conjugate(den);
        const auto [lo, hi] = detail::reduce_range(s.lo, s.hi);
        const std::string name = "arg(numerator*conj(denominator)) = arg(" + to_string(z) + ")";
        ok = detail::record_check(log, name + " in (" + to_string(s.lo) + ", " + to_string(s.hi) + ") mod 2*pi",
                                  arg_in_range(z, lo, hi, true)) && ok;
        return ok;
    }
    const auto& iv = std::get<RealInterval>(target);
    const QuadRational q = QuadRational(num) / QuadRational(den);
    const std::string qs = "(" + to_string(q) + ")";
    ok = detail::record_check(log, "sign(" + qs + " - (" + to_string(iv.a) + ")) > 0", (q - iv.a).sign() > 0) && ok;
    ok = detail::record_check(log, "sign((" + to_string(iv.b) + ") - " + qs + ") > 0", (iv.b - q).sign() > 0) && ok;
    return ok;
}

inline bool verify_witness(const QuotientWitness& w, std::vector<std::string>* log = nullptr) {
    std::vector<std::string> local;
    return verify_quotient(w.numerator.element, w.denominator.element, w.target, log ? *log : local);
}

inline bool verify_witness(const QuotientWitness& w, const CongruenceClass& class1, const CongruenceClass& class2,
                           std::vector<std::string>* log = nullptr) {
    std::vector<std::string> local;
    auto& out = log ? *log : local;
    bool ok = verify_quotient(w.numerator.element, w.denominator.element, w.target, out);
    ok = detail::record_check(out, "numerator = " + to_string(class1.residue) + " mod " + to_string(class1.modulus),
                              in_class(w.numerator.element, class1)) && ok;
    ok = detail::record_check(out, "denominator = " + to_string(class2.residue) + " mod " + to_string(class2.modulus),
                              in_class(w.denominator.element, class2)) && ok;
    return ok;
}

namespace detail {

struct SectorHit {
    QuadInt num;
    PrimeRecord num_rec;
    QuadInt den;
    PrimeRecord den_rec;
    std::uint64_t cost;
};

/// Candidates pi1 strictly inside the sector by increasing norm; for each,
/// pi2 over the annulus N(pi1)/R^2 < N(pi2) < N(pi1)/r^2 with the quotient
/// inside the sector. The returned hit is the first in sequential order
/// whatever the thread count.
template <class Accept1, class Accept2>
std::optional<SectorHit> search_sector(const Ring& ring, const AnnularSector& s, const SearchOptions& opt,
                                       Accept1 accept1, Accept2 accept2) {
    const std::uint64_t cap = x_to_limit(opt.cap);
    const unsigned threads = std::max(1U, opt.threads);
    const SectorTest test(ring, s.lo, s.hi);
    const double lo_d = s.lo.to_double();
    const double width = (s.hi - s.lo).to_double();
    const double two_pi = 2 * std::numbers::pi;
    const double margin = 1e-8 * (1 + std::abs(lo_d) + width);
    const Rational r2 = s.r * s.r, R2 = *s.R * *s.R;

    struct Candidate {
        std::size_t index;
        int k;
        std::uint64_t lo2;
        std::uint64_t hi2;
    };
    struct Result {
        bool found = false;
        std::size_t index2 = 0;
        int k2 = 0;
        std::uint64_t cost = 0;
    };

    PrimeSnapshot snap = prime_snapshot(ring, std::min<std::uint64_t>(cap, 1 << 16));
    std::size_t next = 0;
    std::uint64_t spent = 0;
    const std::size_t batch_size = 32 * static_cast<std::size_t>(threads);
    bool exhausted = false;

    while (!exhausted) {
        std::vector<Candidate> batch;
        std::uint64_t need = 0;
        while (batch.size() < batch_size) {
            if (next == snap.all().size()) {
                if (snap.limit >= cap) {
                    exhausted = true;
                    break;
                }
                snap = prime_snapshot(ring, std::min(cap, 2 * snap.limit));
                continue;
            }
            const PrimeRecord& rec = snap.all()[next];
            if (rec.norm > cap) {
                exhausted = true;
                break;
            }
            for (int k = 0; k < test.unit_count(); ++k) {
                if (!test.open(rec, k)) continue;
                const Half64 h = test.associate(rec, k);
                if (!accept1(QuadInt(ring, h.u, h.v))) continue;
                const Rational n1{Integer(rec.norm)};
                const Integer lo2 = floor_of(n1 / R2);
                Integer hi2 = ceil_of(n1 / r2) - 1;
                if (hi2 > Integer(cap)) hi2 = cap;
                if (hi2 <= lo2) continue;
                batch.push_back({next, k, to_u64(lo2), to_u64(hi2)});
                need = std::max(need, to_u64(hi2));
            }
            ++next;
        }
        if (batch.empty()) break;
        const PrimeSnapshot full = prime_snapshot(ring, need);
        std::vector<Result> results(batch.size());
        parallel_chunks(batch.size(), threads, [&](std::size_t first, std::size_t last) {
            for (std::size_t c = first; c < last; ++c) {
                const Candidate& cand = batch[c];
                const PrimeRecord& rec = full.all()[cand.index];
                const double arg1 = test.arg_of(rec, cand.k);
                const Half64 h1 = test.associate(rec, cand.k);
                const QuadInt pi1(ring, h1.u, h1.v);
                Result& res = results[c];
                res.cost = 1;
                const auto [b, e] = full.norm_range(cand.lo2, cand.hi2);
                for (std::size_t j = b; j < e && !res.found; ++j) {
                    if (j == cand.index) continue;  // associates of pi1 give unit quotients
                    const PrimeRecord& rec2 = full.all()[j];
                    for (int k2 = 0; k2 < test.unit_count(); ++k2) {
                        ++res.cost;
                        double t = std::fmod(arg1 - test.arg_of(rec2, k2) - lo_d, two_pi);
                        if (t < 0) t += two_pi;
                        if (t > width + margin && t < two_pi - margin) continue;
                        const Half64 h2 = test.associate(rec2, k2);
                        const QuadInt pi2(ring, h2.u, h2.v);
                        if (!(t > margin && t < width - margin) && !arg_in_range(pi1 * conjugate(pi2), s.lo, s.hi, true))
                            continue;
                        if (!accept2(pi2)) continue;
                        res.found = true;
                        res.index2 = j;
                        res.k2 = k2;
                        break;
                    }
                }
            }
        });
        for (std::size_t c = 0; c < batch.size(); ++c) {
            spent += results[c].cost;
            if (!results[c].found) continue;
            const PrimeRecord& rec = full.all()[batch[c].index];
            const PrimeRecord& rec2 = full.all()[results[c].index2];
            const Half64 h1 = test.associate(rec, batch[c].k);
            const Half64 h2 = test.associate(rec2, results[c].k2);
            return SectorHit{QuadInt(ring, h1.u, h1.v), rec, QuadInt(ring, h2.u, h2.v), rec2, spent};
        }
        snap = full;
    }
    return std::nullopt;
}

inline PrimeElement element_of(QuadInt a, const PrimeRecord& rec) {
    return {std::move(a), Integer(rec.norm), rec.kind, Integer(rec.p)};
}

inline QuotientWitness finish(QuotientWitness w) {
    if (!verify_witness(w, &w.transcript))
        throw std::logic_error("internal error: witness failed exact verification");
    return w;
}

[[noreturn]] inline void cap_exceeded(const SearchOptions& opt) {
    fail(Errc::cap_exceeded, "no witness with prime norms up to " + opt.cap.str() + "; raise the cap");
}

} // namespace detail

/// A quotient of primes strictly inside an open annular sector, d < 0.
inline QuotientWitness find_quotient_sector(const Ring& ring, const AnnularSector& sector,
                                            const SearchOptions& opt = {}) {
    if (ring.is_real()) fail(Errc::real_ring_unsupported, "sector search needs d < 0 (use find_quotient_interval)");
    detail::require_search_sector(sector);
    const CanonicalTarget canon = canonicalize_target(ring, sector);
    const auto& red = std::get<AnnularSector>(canon.reduced);
    auto any = [](const QuadInt&) { return true; };
    auto hit = detail::search_sector(ring, red, opt, any, any);
    if (!hit) detail::cap_exceeded(opt);
    return detail::finish({detail::element_of(canon.unit * hit->num, hit->num_rec), detail::element_of(hit->den, hit->den_rec),
                           ring, sector, hit->cost, {}});
}

/// As find_quotient_sector with pi1 in class1 and pi2 in class2, in Z[i].
/// Units do not preserve classes, so the sector is not rotated.
inline QuotientWitness find_quotient_sector_congruent(const AnnularSector& sector, const CongruenceClass& class1,
                                                      const CongruenceClass& class2, const SearchOptions& opt = {}) {
    const Ring ring = class1.modulus.ring();
    detail::require_gaussian(ring, "find_quotient_sector_congruent");
    require_same_ring(ring, class2.modulus.ring());
    require_coprime(class1);
    require_coprime(class2);
    detail::require_search_sector(sector);
    const AnnularSector red = detail::turn_reduced(sector);
    auto hit = detail::search_sector(
        ring, red, opt, [&](const QuadInt& a) { return in_class(a, class1); },
        [&](const QuadInt& a) { return in_class(a, class2); });
    if (!hit) detail::cap_exceeded(opt);
    QuotientWitness w{detail::element_of(hit->num, hit->num_rec), detail::element_of(hit->den, hit->den_rec), ring,
                      sector, hit->cost, {}};
    if (!verify_witness(w, class1, class2, &w.transcript))
        throw std::logic_error("internal error: witness failed exact verification");
    return w;
}

/// A quotient pi'/pi inside the interval, d > 0: pi totally positive with
/// a < pi'/pi <= m, m = (a + b)/2, after canonicalization.
inline QuotientWitness find_quotient_interval(const Ring& ring, const RealInterval& interval,
                                              const SearchOptions& opt = {}) {
    if (ring.is_imaginary()) fail(Errc::imaginary_ring, "interval search needs d > 0 (use find_quotient_sector)");
    const CanonicalTarget canon = canonicalize_target(ring, interval);
    const auto& red = std::get<RealInterval>(canon.reduced);
    const QuadRational m = (red.a + red.b) / QuadRational(ring, 2);
    const detail::RatioTest test(ring, red.a, m);
    const std::uint64_t cap = detail::x_to_limit(opt.cap);

    PrimeSnapshot snap = prime_snapshot(ring, std::min<std::uint64_t>(cap, 1 << 16));
    std::uint64_t cost = 0;
    for (std::size_t i = 0;; ++i) {
        if (i == snap.all().size()) {
            if (snap.limit >= cap) break;
            snap = prime_snapshot(ring, std::min(cap, 2 * snap.limit));
            --i;
            continue;
        }
        const PrimeRecord& rec = snap.all()[i];
        if (rec.norm > cap) break;
        ++cost;
        std::optional<std::int64_t> match;
        test.for_each_match(rec, [&](std::int64_t j) {
            if (!match) match = j;
        });
        if (!match) continue;
        const QuadInt pi = test.associate(rec, *match);
        return detail::finish({detail::element_of(canon.unit * conjugate(pi), rec), detail::element_of(pi, rec), ring,
                               interval, cost, {}});
    }
    detail::cap_exceeded(opt);
}

/// Two inert rational primes p1/p2 inside (a, b), 0 < a < b, both of norm at
/// most the cap, by increasing p2.
inline QuotientWitness inert_rational_fallback(const Ring& ring, const RealInterval& interval,
                                               const SearchOptions& opt = {}) {
    if (ring.is_imaginary()) fail(Errc::imaginary_ring, "the inert fallback is for real rings");
    require_same_ring(ring, interval.a.ring());
    if (!(interval.a < interval.b)) fail(Errc::empty_after_reduction, "interval (a, b) needs a < b");
    if (interval.a.sign() <= 0) fail(Errc::non_positive_window, "the inert fallback needs 0 < a");
    const std::uint64_t cap = detail::x_to_limit(opt.cap);
    std::vector<std::uint64_t> inert;
    for (std::uint64_t p : primes_in_range(2, isqrt_u64(cap) + 1))
        if (detail::splitting_type_u64(ring.discriminant(), p) == SplitKind::inert) inert.push_back(p);

    const double a = interval.a.to_double();
    std::uint64_t cost = 0;
    for (std::uint64_t p2 : inert) {
        ++cost;
        const QuadRational lo = interval.a * QuadRational(ring, Rational(Integer(p2)));
        const QuadRational hi = interval.b * QuadRational(ring, Rational(Integer(p2)));
        auto it = std::lower_bound(inert.begin(), inert.end(), static_cast<double>(p2) * a * (1 - 1e-9),
                                   [](std::uint64_t p, double x) { return static_cast<double>(p) < x; });
        for (; it != inert.end(); ++it) {
            const QuadRational p1(ring, Rational(Integer(*it)));
            if (!(lo < p1)) continue;
            ++cost;
            if (!(p1 < hi)) break;
            if (*it == p2) continue;
            const QuadInt num = QuadInt::integer(ring, *it), den = QuadInt::integer(ring, p2);
            return detail::finish({PrimeElement{num, Integer(*it) * *it, SplitKind::inert, Integer(*it)},
                                   PrimeElement{den, Integer(p2) * p2, SplitKind::inert, Integer(p2)}, ring, interval, cost,
                                   {}});
        }
    }
    detail::cap_exceeded(opt);
}

/// A point x + i*y of the complex plane with rational coordinates.
struct ComplexPoint {
    Rational re;
    Rational im;
};

namespace detail {

/// Rounds to a multiple of 10^-12, keeping search regions readable.
inline Rational tidy(double x) {
    const double scaled = std::round(x * 1e12);
    return Rational(Integer(static_cast<long long>(scaled)), Integer(1'000'000'000'000LL));
}

} // namespace detail

/// A quotient of primes within eps of a complex target (d < 0): the eps-disk
/// is replaced by an inscribed annular sector, and the final distance is
/// checked exactly.
inline QuotientWitness approximate(const Ring& ring, const ComplexPoint& target, const Rational& eps,
                                   const SearchOptions& opt = {}) {
    if (ring.is_real()) fail(Errc::precondition_violated, "complex targets need d < 0");
    if (eps <= 0) fail(Errc::precondition_violated, "epsilon must be positive");
    if (target.re.is_zero() && target.im.is_zero()) fail(Errc::zero_target, "0 is not a quotient of primes");
    const double x = to_double(target.re), y = to_double(target.im), e = to_double(eps);
    const double rho = std::hypot(x, y);
    const double theta = std::atan2(y, x);
    const double delta = std::min(e * 0.577, rho / 2);
    const double room = (e * e - delta * delta) / (2 * rho * (rho + delta));
    const double phi = room >= 2 ? 0.999 * std::numbers::pi : std::min(0.999 * std::acos(1 - room), 0.999 * std::numbers::pi);
    const Rational c_rho = detail::tidy(rho), c_theta = detail::tidy(theta), half_angle = detail::tidy(phi);
    const Rational d_q = detail::tidy(delta * 0.999);
    const AnnularSector sector{Angle::from_radians(c_theta - half_angle), Angle::from_radians(c_theta + half_angle),
                               c_rho - d_q, c_rho + d_q};
    QuotientWitness w = find_quotient_sector(ring, sector, opt);

    // |q - c|^2 < eps^2 with q = X + Y*sqrt(d), embedded as X + i*Y*sqrt(|d|)
    const QuadRational q = QuadRational(w.numerator.element) / QuadRational(w.denominator.element);
    const Rational abs_d{Integer(-ring.d())};
    const Rational dx = q.x() - target.re;
    const Rational lhs = eps * eps - dx * dx - q.y() * q.y() * abs_d - target.im * target.im;
    const bool ok = sign_plus_sqrt(lhs, 2 * q.y() * target.im, Integer(-ring.d())) > 0;
    detail::record_check(w.transcript, "|quotient - (" + to_string(target.re) + "+" + to_string(target.im) + "i)|^2 < " +
                                           to_string(eps * eps), ok);
    if (!ok) throw std::logic_error("internal error: inscribed sector left the epsilon disk");
    return w;
}

/// A quotient pi'/pi within eps of a real target (d > 0).
inline QuotientWitness approximate(const Ring& ring, const QuadRational& target, const Rational& eps,
                                   const SearchOptions& opt = {}) {
    if (ring.is_imaginary()) fail(Errc::precondition_violated, "real targets need d > 0");
    if (eps <= 0) fail(Errc::precondition_violated, "epsilon must be positive");
    const QuadRational e(ring, eps);
    QuotientWitness w = find_quotient_interval(ring, RealInterval{target - e, target + e}, opt);
    const QuadRational q = QuadRational(w.numerator.element) / QuadRational(w.denominator.element);
    const bool ok = (q - target - e).sign() < 0 && (q - target + e).sign() > 0;
    detail::record_check(w.transcript, "|quotient - (" + to_string(target) + ")| < " + to_string(eps), ok);
    if (!ok) throw std::logic_error("internal error: witness left the epsilon interval");
    return w;
}

} // namespace quadring
