// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "quadring/quadring.hpp"

using namespace quadring;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Angle pi_frac(int n, int m) { return Angle::pi_times(Rational(n, m)); }

double gaussian_ratio(std::uint64_t x) {
    const Ring g = make_ring(-1);
    const double n = static_cast<double>(count_sector(g, x, Angle::zero(), Angle::full_turn()));
    return n / (4.0 * static_cast<double>(x) / std::log(static_cast<double>(x)));
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    const double r3 = gaussian_ratio(1000), r5 = gaussian_ratio(100000);
    // exhaustive lattice scan as the oracle for the 10^5 count
    const auto scan = oracle::imaginary_primes(-1, 100000, 0, 7).size();
    const auto count = count_sector(make_ring(-1), 100000, Angle::zero(), Angle::full_turn());
    const double t = seconds_since(t0);
    const bool ok = r5 >= 0.90 && r5 <= 1.25 && std::abs(r5 - 1) < std::abs(r3 - 1) && scan == count && t < 10;
    return {ok, "ratio(1e3)=" + fixed(r3) + " ratio(1e5)=" + fixed(r5) + " count=" + std::to_string(count) +
                    " scan=" + std::to_string(scan) + " time=" + fixed(t, 2) + "s"};
}

Outcome criterion2() {
    const Ring g = make_ring(-1);
    std::vector<std::uint64_t> c;
    for (int k = 0; k < 8; ++k) c.push_back(count_sector(g, 100000, pi_frac(k, 4), pi_frac(k + 1, 4)));
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    bool rotation = true;
    for (int k = 0; k < 8; ++k) rotation = rotation && c[k] == c[(k + 2) % 8];
    const double spread = static_cast<double>(*hi) / static_cast<double>(*lo);
    std::string counts;
    for (auto n : c) counts += (counts.empty() ? "" : "/") + std::to_string(n);
    return {spread <= 1.10 && rotation, "wedges " + counts + " max/min=" + fixed(spread)};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    const Ring g = make_ring(-1);
    const QuadInt three = QuadInt::integer(g, 3);
    const auto phi = euler_phi_gaussian(three);
    const auto phi_oracle = oracle::euler_phi_gaussian(3, 0);
    std::vector<std::uint64_t> counts;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const QuadInt beta = QuadInt::from_coords(g, a, b);
            if (!is_unit(gaussian_gcd(beta, three))) continue;
            counts.push_back(count_sector_congruence(100000, Angle::zero(), Angle::full_turn(), make_congruence_class(beta, three)));
        }
    std::uint64_t sum = 0;
    for (auto n : counts) sum += n;
    // primes dividing 3: the associates of 3 itself
    std::uint64_t dividing = 0;
    for (const auto& p : prime_stream(g, 9))
        if (divides(p.element, three)) ++dividing;
    const auto total = count_sector(g, 100000, Angle::zero(), Angle::full_turn());
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    const double diff = static_cast<double>(*hi - *lo) / static_cast<double>(*lo);
    const double t = seconds_since(t0);
    std::string list;
    for (auto n : counts) list += (list.empty() ? "" : "/") + std::to_string(n);
    const bool ok = phi == 8 && phi_oracle == 8 && counts.size() == 8 && diff <= 0.15 && sum + dividing == total && t < 30;
    return {ok, "phi(3)=" + phi.str() + " (oracle " + std::to_string(phi_oracle) + ") classes " + list + " max diff=" +
                    fixed(100 * diff, 2) + "% sum+" + std::to_string(dividing) + "=" + std::to_string(sum + dividing) +
                    " total=" + std::to_string(total) + " time=" + fixed(t, 2) + "s"};
}

Outcome criterion4() {
    const auto t0 = Clock::now();
    const Ring r = make_ring(2);
    LawParams p;
    p.a = QuadRational(r, 1);
    p.b = QuadRational(r, 3);
    const auto rep = convergence_report(Law::real_ratio, r, p, {1000, 10000, 100000});
    const auto scan = oracle::ratio_primes(2, 100000, 1, 3).size();
    const double t = seconds_since(t0);
    const double r3 = rep.rows[0].ratio, r4 = rep.rows[1].ratio, r5 = rep.rows[2].ratio;
    const bool in_band = r5 >= 0.70 && r5 <= 1.30;
    const bool trend = std::abs(r5 - 1) < std::abs(r3 - 1);
    const bool ok = in_band && trend && scan == rep.rows[2].empirical && t < 60;
    return {ok, "counts " + std::to_string(rep.rows[0].empirical) + "/" + std::to_string(rep.rows[1].empirical) + "/" +
                    std::to_string(rep.rows[2].empirical) + " (scan " + std::to_string(scan) + ") ratios " + fixed(r3) + "/" +
                    fixed(r4) + "/" + fixed(r5) + " band " + (in_band ? "ok" : "FAIL") + " trend " +
                    (trend ? "ok" : "FAIL") + " time=" + fixed(t, 2) + "s"};
}

/// |q - c|^2 < eps^2 for q in an imaginary field, exactly.
bool inside_disk(const QuotientWitness& w, const ComplexPoint& c, const Rational& eps) {
    const QuadRational q = QuadRational(w.numerator.element) / QuadRational(w.denominator.element);
    const Integer abs_d = -Integer(w.ring.d());
    const Rational a = eps * eps - (q.x() - c.re) * (q.x() - c.re) - q.y() * q.y() * Rational(abs_d) - c.im * c.im;
    return sign_plus_sqrt(a, 2 * q.y() * c.im, abs_d) > 0;
}

Outcome criterion5() {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> modulus(0.1, 10), angle(0, 2 * std::numbers::pi);
    const Rational eps(1, 20);
    int ok_count = 0, total = 0;
    double worst = 0;
    std::string failures;
    for (std::int64_t d : {-1, -2, -3, -7, -11}) {
        const Ring ring = make_ring(d);
        for (int i = 0; i < 100; ++i) {
            const double m = modulus(rng), t = angle(rng);
            const ComplexPoint c{detail::tidy(m * std::cos(t)), detail::tidy(m * std::sin(t))};
            ++total;
            const auto t0 = Clock::now();
            try {
                const auto w = approximate(ring, c, eps);
                const double dt = seconds_since(t0);
                worst = std::max(worst, dt);
                const bool good = is_prime_element(w.numerator.element) && is_prime_element(w.denominator.element) &&
                                  verify_witness(w) && inside_disk(w, c, eps) && dt < 5;
                if (good) ++ok_count;
                else failures += " d=" + std::to_string(d) + "#" + std::to_string(i);
            } catch (const std::exception& e) {
                failures += " d=" + std::to_string(d) + "#" + std::to_string(i) + "(" + e.what() + ")";
            }
        }
    }
    return {ok_count == total, std::to_string(ok_count) + "/" + std::to_string(total) + " disks verified, slowest " +
                                   fixed(worst, 3) + "s" + (failures.empty() ? "" : "; failed:" + failures)};
}

/// Annular sector inscribed in the open disk of radius rho around c.
AnnularSector inscribed_sector(double m, double t, double rho) {
    const double delta = rho * 0.5;
    const double phi = 0.999 * std::acos(1 - (rho * rho - delta * delta) / (2 * m * (m + delta)));
    const Rational cm = detail::tidy(m), ct = detail::tidy(t), cphi = detail::tidy(phi), cd = detail::tidy(delta);
    return {Angle::from_radians(ct - cphi), Angle::from_radians(ct + cphi), cm - cd, cm + cd};
}

Outcome criterion6() {
    const Ring g = make_ring(-1);
    const QuadInt one = QuadInt::one(g);
    const std::vector<std::pair<CongruenceClass, CongruenceClass>> pairs{
        {make_congruence_class(one, parse_quad_int(g, "1+i")), make_congruence_class(one, parse_quad_int(g, "1+i"))},
        {make_congruence_class(one, QuadInt::integer(g, 3)), make_congruence_class(QuadInt::integer(g, 2), QuadInt::integer(g, 3))}};
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> modulus(0.5, 2), angle(0, 2 * std::numbers::pi);
    int ok_count = 0, total = 0;
    std::string failures;
    for (int i = 0; i < 20; ++i) {
        const double m = modulus(rng), t = angle(rng);
        const AnnularSector s = inscribed_sector(m, t, 0.05);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            ++total;
            try {
                const auto& [c1, c2] = pairs[k];
                const auto w = find_quotient_sector_congruent(s, c1, c2);
                const bool good = verify_witness(w, c1, c2) && congruent_mod(w.numerator.element, c1.residue, c1.modulus) &&
                                  congruent_mod(w.denominator.element, c2.residue, c2.modulus);
                if (good) ++ok_count;
                else failures += " #" + std::to_string(i) + "/" + std::to_string(k);
            } catch (const std::exception& e) {
                failures += " #" + std::to_string(i) + "/" + std::to_string(k) + "(" + e.what() + ")";
            }
        }
    }
    return {ok_count == total, std::to_string(ok_count) + "/" + std::to_string(total) + " congruence witnesses verified" +
                                   (failures.empty() ? "" : "; failed:" + failures)};
}

Outcome criterion7() {
    int ok_count = 0, total = 0;
    std::string notes;
    for (std::int64_t d : {2, 3, 5}) {
        const Ring r = make_ring(d);
        const std::vector<std::string> targets{d == 2 ? "sqrt(2)" : "1.41421356237", "1.6180339887", "3.14159", "0.001",
                                               "1000"};
        for (const auto& text : targets) {
            ++total;
            const QuadRational target = parse_field_element(r, text);
            const Rational eps(1, 1000);
            const RealInterval iv{target - QuadRational(r, eps), target + QuadRational(r, eps)};
            const auto t0 = Clock::now();
            bool proof_ok = false, good = false;
            std::string why;
            try {
                const auto w = approximate(r, target, eps);
                const bool form = w.numerator.element == conjugate(w.denominator.element) ||
                                  w.numerator.element == -conjugate(w.denominator.element);
                const QuadRational q = QuadRational(w.numerator.element) / QuadRational(w.denominator.element);
                const bool close = (q - iv.a).sign() > 0 && (iv.b - q).sign() > 0;
                proof_ok = true;
                good = form && close && verify_witness(w) && is_prime_element(w.numerator.element) &&
                       is_prime_element(w.denominator.element);
                why = good ? "" : "unsound";
            } catch (const Error& e) {
                why = errc_name(e.code());
            }
            const double dt = seconds_since(t0);
            // the inert fallback must agree on solvability inside (0.3, 3.0)
            if (QuadRational(r, Rational(3, 10)) < target && target < QuadRational(r, 3)) {
                bool fallback_ok = false;
                try {
                    fallback_ok = verify_witness(inert_rational_fallback(r, iv));
                } catch (const Error&) {
                }
                if (fallback_ok != proof_ok) {
                    good = false;
                    why += " fallback disagrees";
                }
            }
            if (good) ++ok_count;
            else notes += " d=" + std::to_string(d) + ":" + text + "(" + why + ", " + fixed(dt, 2) + "s)";
        }
    }
    return {ok_count == total, std::to_string(ok_count) + "/" + std::to_string(total) + " real targets verified" +
                                   (notes.empty() ? "" : "; failed:" + notes)};
}

Outcome criterion8() {
    const std::vector<std::pair<std::int64_t, std::string>> units{
        {2, "1+1*sqrt(2)"}, {3, "2+1*sqrt(3)"}, {5, "1/2+1/2*sqrt(5)"}, {13, "3/2+1/2*sqrt(13)"}};
    bool ok = true;
    std::string detail;
    for (const auto& [d, want] : units) {
        const QuadInt eta = fundamental_unit(make_ring(d));
        const auto pell = oracle::pell_unit(d, 1000);
        const bool good = to_string(eta) == want && eta.u() == pell.u && eta.v() == pell.v;
        ok = ok && good;
        detail += "d=" + std::to_string(d) + ":" + to_string(eta) + (good ? "" : "(!)") + " ";
    }
    std::vector<std::int64_t> ufd;
    bool forms_agree = true;
    for (std::int64_t d = -200; d <= -1; ++d) {
        if (!oracle::squarefree(d)) continue;
        const auto h = class_number(make_ring(d));
        forms_agree = forms_agree && h == oracle::form_count(oracle::discriminant(d));
        if (h == 1) ufd.push_back(d);
    }
    const std::vector<std::int64_t> nine{-163, -67, -43, -19, -11, -7, -3, -2, -1};
    ok = ok && ufd == nine && forms_agree;
    std::string list;
    for (auto d : ufd) list += (list.empty() ? "" : ",") + std::to_string(d);
    return {ok, detail + "h=1 for d in {" + list + "} (" + std::to_string(ufd.size()) + " rings)"};
}

Outcome criterion9() {
    const auto t0 = Clock::now();
    std::size_t checked = 0, mismatches = 0;
    for (std::int64_t d : {-1, -2, 2, 5}) {
        const Ring r = make_ring(d);
        const auto small = oracle::elements_up_to(d, 300);
        for (const auto& h : small) {
            ++checked;
            if (is_prime_element(QuadInt(r, h.u, h.v)) != oracle::irreducible(d, h, small)) ++mismatches;
        }
    }
    const Ring g = make_ring(-1);
    std::size_t phis = 0, phi_bad = 0;
    for (int a = -15; a <= 15; ++a)
        for (int b = -15; b <= 15; ++b) {
            const int n = a * a + b * b;
            if (n <= 1 || n > 200) continue;
            ++phis;
            if (euler_phi_gaussian(QuadInt::from_coords(g, a, b)) != oracle::euler_phi_gaussian(a, b)) ++phi_bad;
        }
    const double t = seconds_since(t0);
    return {mismatches == 0 && phi_bad == 0 && t < 60,
            std::to_string(checked) + " elements (" + std::to_string(mismatches) + " mismatches), " + std::to_string(phis) +
                " moduli for phi (" + std::to_string(phi_bad) + " mismatches), time=" + fixed(t, 2) + "s"};
}

std::string capture(const std::string& args) {
    const std::string cmd = std::string(QUADRING_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return "status=" + std::to_string(WEXITSTATUS(status)) + "\n" + out;
}

Outcome criterion10() {
    const std::vector<std::string> commands{
        "verify --law gaussian_sector --d -1 --xs 1e3,1e4,1e5",
        "verify --law real_ratio --d 2 --window 1:3 --xs 1e3,1e4,1e5 --format json",
        "find --d -1 --sector 0.1:0.2 --r 0.9 --R 1.1",
        "find --d -7 --sector 4:4.05 --r 0.3 --R 0.31",
        "find --d 5 --interval 2.718:2.7183",
        "find --d -1 --sector 0:0.5 --r 1 --R 2 --class1 1:3 --class2 2:3",
    };
    bool ok = true;
    std::string bad;
    for (const auto& c : commands) {
        const std::string base = capture(c);
        bool same = base.rfind("status=0\n", 0) == 0;
        for (int run = 0; run < 2; ++run) same = same && capture(c) == base;
        for (const char* t : {" --threads 1", " --threads 8"}) same = same && capture(c + t) == base;
        if (!same) bad += " [" + c + "]";
        ok = ok && same;
    }
    return {ok, std::to_string(commands.size()) + " commands x 3 runs + threads 1/8" +
                    (bad.empty() ? ", byte-identical" : "; differing:" + bad)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Gaussian main-term fit", criterion1},
        {"angular equidistribution", criterion2},
        {"congruence equidistribution", criterion3},
        {"real ratio law", criterion4},
        {"complex density witnesses", criterion5},
        {"congruence density witnesses", criterion6},
        {"real density witnesses", criterion7},
        {"invariants", criterion8},
        {"oracle equivalence", criterion9},
        {"determinism", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
