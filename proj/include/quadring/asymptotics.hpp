#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "enumeration.hpp"

namespace quadring {

enum class Law { pnt, gaussian_sector, gaussian_congruence, imaginary_sector, real_ratio };

inline std::string_view to_string(Law law) {
    switch (law) {
    case Law::pnt: return "pnt";
    case Law::gaussian_sector: return "gaussian_sector";
    case Law::gaussian_congruence: return "gaussian_congruence";
    case Law::imaginary_sector: return "imaginary_sector";
    case Law::real_ratio: return "real_ratio";
    }
    return "?";
}

inline Law parse_law(std::string_view s) {
    for (Law l : {Law::pnt, Law::gaussian_sector, Law::gaussian_congruence, Law::imaginary_sector, Law::real_ratio})
        if (to_string(l) == s) return l;
    fail(Errc::parse_error, "unknown law '" + std::string(s) + "'");
}

/// Parameters of a law: the sector for the three sector laws (default: full
/// circle), the class for gaussian_congruence, the window for real_ratio.
struct LawParams {
    std::optional<Angle> theta1;
    std::optional<Angle> theta2;
    std::optional<CongruenceClass> cls;
    std::optional<QuadRational> a;
    std::optional<QuadRational> b;
    ClassNumberTable classes;
};

namespace detail {

inline double x_over_log_x(double x) { return x / std::log(x); }

inline double sector_term(int g, std::int64_t h, const Angle& t1, const Angle& t2, double x) {
    return g * (t2 - t1).to_double() / (2 * std::numbers::pi * static_cast<double>(h)) * x_over_log_x(x);
}

inline std::pair<Angle, Angle> law_sector(const LawParams& p) {
    if (p.theta1.has_value() != p.theta2.has_value())
        fail(Errc::law_param_mismatch, "sector laws need both theta1 and theta2");
    if (!p.theta1) return {Angle::zero(), Angle::full_turn()};
    require_sector_range(*p.theta1, *p.theta2);
    return {*p.theta1, *p.theta2};
}

inline void check_params(Law law, const Ring& ring, const LawParams& p) {
    const bool sector_law = law == Law::gaussian_sector || law == Law::gaussian_congruence || law == Law::imaginary_sector;
    if (!sector_law && (p.theta1 || p.theta2)) fail(Errc::law_param_mismatch, "this law takes no sector");
    if (law != Law::gaussian_congruence && p.cls) fail(Errc::law_param_mismatch, "only gaussian_congruence takes a class");
    if (law != Law::real_ratio && (p.a || p.b)) fail(Errc::law_param_mismatch, "only real_ratio takes a window");
    switch (law) {
    case Law::pnt: return;
    case Law::gaussian_sector:
        if (!ring.is_gaussian()) fail(Errc::law_param_mismatch, "gaussian_sector needs d = -1");
        return;
    case Law::gaussian_congruence:
        if (!ring.is_gaussian()) fail(Errc::law_param_mismatch, "gaussian_congruence needs d = -1");
        if (!p.cls) fail(Errc::law_param_mismatch, "gaussian_congruence needs a congruence class");
        require_same_ring(ring, p.cls->modulus.ring());
        require_coprime(*p.cls);
        return;
    case Law::imaginary_sector:
        if (!ring.is_imaginary()) fail(Errc::law_param_mismatch, "imaginary_sector needs d < 0");
        return;
    case Law::real_ratio:
        if (!ring.is_real()) fail(Errc::law_param_mismatch, "real_ratio needs d > 0");
        if (!p.a || !p.b) fail(Errc::law_param_mismatch, "real_ratio needs a window (a, b]");
        require_same_ring(ring, p.a->ring());
        require_same_ring(ring, p.b->ring());
        require_ratio_window(ring, *p.a, *p.b);
        return;
    }
}

} // namespace detail

/// Main term of the counting law at x > 1.
inline double predicted_main_term(Law law, const Ring& ring, const LawParams& params, double x) {
    if (!(x > 1)) fail(Errc::precondition_violated, "main terms need x > 1");
    detail::check_params(law, ring, params);
    switch (law) {
    case Law::pnt: return detail::x_over_log_x(x);
    case Law::gaussian_sector: {
        const auto [t1, t2] = detail::law_sector(params);
        return detail::sector_term(4, 1, t1, t2, x);
    }
    case Law::gaussian_congruence: {
        const auto [t1, t2] = detail::law_sector(params);
        const Integer phi = euler_phi_gaussian(params.cls->modulus);
        return detail::sector_term(4, to_i64(phi), t1, t2, x);
    }
    case Law::imaginary_sector: {
        const auto [t1, t2] = detail::law_sector(params);
        return detail::sector_term(unit_count(ring), class_number(ring, params.classes), t1, t2, x);
    }
    case Law::real_ratio: {
        const QuadInt eta = fundamental_unit(ring);
        const double log_eta2 = 2 * std::log(QuadRational(eta).to_double());
        const double width = std::log(params.b->to_double()) - std::log(params.a->to_double());
        const auto h = static_cast<double>(class_number(ring, params.classes));
        return width / (2 * h * log_eta2) * detail::x_over_log_x(x);
    }
    }
    fail(Errc::law_param_mismatch, "unknown law");
}

inline std::uint64_t rational_prime_count(std::uint64_t x) { return primes_in_range(2, x + 1).size(); }

struct CountRow {
    std::uint64_t x;
    std::uint64_t empirical;
    double predicted;
    double ratio;
};

struct CountReport {
    Law law;
    Ring ring;
    LawParams params;
    std::vector<CountRow> rows;
};

/// Exact count behind the law at x.
inline std::uint64_t empirical_count(Law law, const Ring& ring, const LawParams& params, std::uint64_t x,
                                     unsigned threads = 1) {
    detail::check_params(law, ring, params);
    switch (law) {
    case Law::pnt: return rational_prime_count(x);
    case Law::gaussian_sector:
    case Law::imaginary_sector: {
        const auto [t1, t2] = detail::law_sector(params);
        return count_sector(ring, x, t1, t2, threads);
    }
    case Law::gaussian_congruence: {
        const auto [t1, t2] = detail::law_sector(params);
        return count_sector_congruence(x, t1, t2, *params.cls, threads);
    }
    case Law::real_ratio: return count_ratio(ring, x, *params.a, *params.b, threads);
    }
    fail(Errc::law_param_mismatch, "unknown law");
}

inline CountReport convergence_report(Law law, const Ring& ring, const LawParams& params,
                                      const std::vector<std::uint64_t>& xs, unsigned threads = 1) {
    detail::check_params(law, ring, params);
    if (xs.empty()) fail(Errc::precondition_violated, "empty x grid");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 100) fail(Errc::precondition_violated, "grid values must be at least 100");
        if (i > 0 && xs[i] <= xs[i - 1]) fail(Errc::precondition_violated, "grid must be strictly increasing");
    }
    CountReport report{law, ring, params, {}};
    for (std::uint64_t x : xs) {
        const std::uint64_t n = empirical_count(law, ring, params, x, threads);
        const double pred = predicted_main_term(law, ring, params, static_cast<double>(x));
        report.rows.push_back({x, n, pred, static_cast<double>(n) / pred});
    }
    return report;
}

/// Fixed six-decimal rendering, independent of locale and platform printf
/// defaults.
inline std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline void write_report_csv(std::ostream& out, const CountReport& r) {
    out << "x,empirical,predicted,ratio\n";
    for (const auto& row : r.rows)
        out << row.x << ',' << row.empirical << ',' << format_fixed(row.predicted) << ',' << format_fixed(row.ratio) << '\n';
}

} // namespace quadring
