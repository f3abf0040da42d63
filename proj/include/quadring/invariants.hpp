#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "gaussian.hpp"
#include "units.hpp"

namespace quadring {

/// Class numbers of real rings: an audited built-in table that a config file
/// may extend or override.
class ClassNumberTable {
public:
    ClassNumberTable() : entries_{{2, 1}, {3, 1}, {5, 1}, {6, 1}, {7, 1}, {11, 1}, {13, 1}} {}

    std::optional<std::int64_t> lookup(std::int64_t d) const {
        if (auto it = entries_.find(d); it != entries_.end()) return it->second;
        return std::nullopt;
    }
    void set(std::int64_t d, std::int64_t h) { entries_[d] = h; }
    const std::map<std::int64_t, std::int64_t>& entries() const noexcept { return entries_; }

    /// Reads `h.<d> = <integer>` lines; '#' starts a comment.
    void load(std::istream& in) {
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            const std::string key = trim(line.substr(0, eq == std::string::npos ? 0 : eq));
            if (eq == std::string::npos || key.rfind("h.", 0) != 0)
                fail(Errc::parse_error, "config line " + std::to_string(line_no) + ": expected 'h.<d> = <integer>'");
            const Rational d = parse_rational(key.substr(2));
            const Rational h = parse_rational(trim(line.substr(eq + 1)));
            if (denominator_of(d) != 1 || denominator_of(h) != 1 || h < 1 || d < 2)
                fail(Errc::parse_error, "config line " + std::to_string(line_no) + ": bad class number entry");
            set(to_i64(numerator_of(d)), to_i64(numerator_of(h)));
        }
    }

    static ClassNumberTable from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) fail(Errc::parse_error, "cannot open config file '" + path + "'");
        ClassNumberTable table;
        table.load(in);
        return table;
    }

private:
    std::map<std::int64_t, std::int64_t> entries_;
};

/// Number of reduced primitive forms (A, B, C) with B^2 - 4AC = D < 0:
/// |B| <= A <= C, and B >= 0 whenever |B| = A or A = C.
inline std::int64_t count_reduced_forms(std::int64_t discriminant) {
    if (discriminant >= 0) fail(Errc::precondition_violated, "reduced form count needs D < 0");
    const std::int64_t abs_d = -discriminant;
    std::int64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= abs_d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - discriminant, 2) != 0) continue;
            const std::int64_t num = b * b - discriminant;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

inline std::int64_t class_number(const Ring& ring, const ClassNumberTable& table = {}) {
    if (ring.is_imaginary()) return count_reduced_forms(ring.discriminant());
    if (auto h = table.lookup(ring.d())) return *h;
    fail(Errc::unsupported_real_ring, "no class number available for d=" + std::to_string(ring.d()) +
                                          " (add 'h." + std::to_string(ring.d()) + " = <h>' to a config file)");
}

/// The constants entering the prime-counting laws of one ring.
struct RingInvariants {
    std::optional<int> g;                // absent: infinitely many units
    std::optional<QuadInt> eta;          // real rings only
    int eta_norm = 0;
    std::int64_t h = 0;
    std::optional<QuadInt> tp_unit;      // smallest totally positive unit > 1
    std::optional<QuadInt> tp_ratio_scale;  // factor on a'/a when a is multiplied by tp_unit
};

inline RingInvariants compute_invariants(const Ring& ring, const ClassNumberTable& table = {}) {
    RingInvariants inv;
    inv.h = class_number(ring, table);
    if (ring.is_imaginary()) {
        inv.g = unit_count(ring);
        return inv;
    }
    const QuadInt eta = fundamental_unit(ring);
    inv.eta = eta;
    inv.eta_norm = norm(eta) == 1 ? 1 : -1;
    const QuadInt eps = totally_positive_unit(ring);
    inv.tp_unit = eps;
    // eps * eps' = 1, so eps'/eps = eps'^2
    inv.tp_ratio_scale = conjugate(eps) * conjugate(eps);
    return inv;
}

} // namespace quadring
