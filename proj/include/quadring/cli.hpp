#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymptotics.hpp"
#include "density_search.hpp"

namespace quadring::cli {

enum class Subcommand { info, primes, count, invariants, verify, find, approx };
enum class Format { csv, json, text };
enum class Method { proof, inert };

/// Bad command lines; the CLI exits with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandPlan {
    Subcommand command = Subcommand::info;
    std::optional<std::int64_t> d;
    Format format = Format::text;
    Integer cap = 10'000'000;
    unsigned threads = 1;
    std::optional<std::string> config;

    Integer bound = 0;  // --max-norm (primes) or --x (count)
    std::optional<std::pair<Angle, Angle>> sector;
    std::optional<Rational> r;
    std::optional<Rational> R;
    // parsed once the ring is known
    std::optional<std::pair<std::string, std::string>> window;
    std::optional<std::pair<std::string, std::string>> cls;
    std::optional<std::pair<std::string, std::string>> cls2;
    std::optional<Law> law;
    std::vector<std::uint64_t> xs;
    std::optional<std::string> target;
    std::optional<Rational> eps;
    Method method = Method::proof;
};

namespace detail {

inline std::pair<std::string, std::string> split_pair(const std::string& flag, const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
        throw UsageError(flag + " expects two values separated by ':' (got '" + text + "')");
    return {text.substr(0, colon), text.substr(colon + 1)};
}

template <class F>
auto flag_value(const std::string& flag, F&& parse) {
    try {
        return parse();
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

inline Integer parse_integer(const std::string& flag, const std::string& text) {
    const Rational q = flag_value(flag, [&] { return parse_rational(text); });
    if (denominator_of(q) != 1) throw UsageError(flag + " expects an integer (got '" + text + "')");
    return numerator_of(q);
}

inline std::uint64_t parse_positive(const std::string& flag, const std::string& text) {
    const Integer n = parse_integer(flag, text);
    if (n < 1 || n > Integer(1) << 62) throw UsageError(flag + " is out of range (got '" + text + "')");
    return to_u64(n);
}

} // namespace detail

/// Parses argv without the program name.
inline CommandPlan parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Prime elements of quadratic rings and dense prime quotients", "quadring"};
    app.require_subcommand(1);
    struct Raw {
        std::string d, format, cap, threads, config, max_norm, x, sector, r, R, window, interval, cls, cls1, cls2, law, xs,
            target, eps, method;
    } raw;
    auto common = [&](CLI::App* sub, bool needs_d) {
        auto* opt = sub->add_option("--d", raw.d, "squarefree d of Q(sqrt(d))");
        if (needs_d) opt->required();
        sub->add_option("--format", raw.format, "csv | json | text");
        sub->add_option("--cap", raw.cap, "bound on prime norms during search (default 10000000)");
        sub->add_option("--threads", raw.threads, "worker threads (output does not depend on it)");
        sub->add_option("--config", raw.config, "file with 'h.<d> = <integer>' class-number overrides");
    };
    auto* info = app.add_subcommand("info", "describe the ring");
    common(info, true);
    auto* primes = app.add_subcommand("primes", "stream prime elements ordered by norm");
    common(primes, true);
    primes->add_option("--max-norm", raw.max_norm, "largest absolute norm");
    primes->add_option("--sector", raw.sector, "arg range lo:hi (radians, or pi forms like pi/4)");
    primes->add_option("--r", raw.r, "inner radius");
    primes->add_option("--R", raw.R, "outer radius");
    primes->add_option("--window", raw.window, "conjugate ratio window a:b (real rings)");
    primes->add_option("--class", raw.cls, "congruence class residue:modulus (d = -1)");
    auto* count = app.add_subcommand("count", "count primes in a sector or ratio window");
    common(count, true);
    count->add_option("--x", raw.x, "norm bound");
    count->add_option("--sector", raw.sector, "arg range lo:hi, default 0:2pi");
    count->add_option("--window", raw.window, "conjugate ratio window a:b (real rings)");
    count->add_option("--class", raw.cls, "congruence class residue:modulus (d = -1)");
    auto* invariants = app.add_subcommand("invariants", "unit count, fundamental unit, class number");
    common(invariants, true);
    auto* verify = app.add_subcommand("verify", "empirical counts against predicted main terms");
    common(verify, false);
    verify->add_option("--law", raw.law, "pnt | gaussian_sector | gaussian_congruence | imaginary_sector | real_ratio")
        ->required();
    verify->add_option("--xs", raw.xs, "comma-separated grid, e.g. 1e3,1e4,1e5")->required();
    verify->add_option("--sector", raw.sector, "arg range lo:hi, default 0:2pi");
    verify->add_option("--class", raw.cls, "congruence class residue:modulus");
    verify->add_option("--window", raw.window, "ratio window a:b");
    auto* find = app.add_subcommand("find", "find a prime quotient inside a sector or interval");
    common(find, true);
    find->add_option("--sector", raw.sector, "open arg range lo:hi");
    find->add_option("--r", raw.r, "inner radius");
    find->add_option("--R", raw.R, "outer radius");
    find->add_option("--interval", raw.interval, "open interval a:b (real rings)");
    find->add_option("--class1", raw.cls1, "class of the numerator, residue:modulus (d = -1)");
    find->add_option("--class2", raw.cls2, "class of the denominator, residue:modulus (d = -1)");
    find->add_option("--method", raw.method, "proof (pi'/pi) | inert (rational inert primes)");
    auto* approx = app.add_subcommand("approx", "approximate a point by a prime quotient");
    common(approx, true);
    approx->add_option("--target", raw.target, "point: a+bi (d < 0) or an element of Q(sqrt(d))")->required();
    approx->add_option("--eps", raw.eps, "positive tolerance")->required();
    approx->add_option("--method", raw.method, "proof | inert (real rings)");

    std::vector<const char*> argv{"quadring"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CommandPlan plan;
    const std::vector<std::pair<CLI::App*, Subcommand>> subs{
        {info, Subcommand::info},     {primes, Subcommand::primes}, {count, Subcommand::count},
        {invariants, Subcommand::invariants}, {verify, Subcommand::verify}, {find, Subcommand::find},
        {approx, Subcommand::approx}};
    for (const auto& [sub, kind] : subs)
        if (sub->parsed()) plan.command = kind;

    switch (plan.command) {
    case Subcommand::info:
    case Subcommand::count: plan.format = Format::text; break;
    case Subcommand::primes:
    case Subcommand::verify: plan.format = Format::csv; break;
    default: plan.format = Format::json; break;
    }
    if (!raw.format.empty()) {
        if (raw.format == "csv") plan.format = Format::csv;
        else if (raw.format == "json") plan.format = Format::json;
        else if (raw.format == "text") plan.format = Format::text;
        else throw UsageError("--format must be csv, json or text (got '" + raw.format + "')");
    }
    if (!raw.d.empty()) {
        const Integer d = detail::parse_integer("--d", raw.d);
        if (d > Integer(1) << 62 || d < -(Integer(1) << 62)) throw UsageError("--d is out of range");
        plan.d = to_i64(d);
    }
    if (!raw.cap.empty()) plan.cap = detail::parse_positive("--cap", raw.cap);
    if (!raw.threads.empty()) {
        const auto t = detail::parse_positive("--threads", raw.threads);
        if (t > 1024) throw UsageError("--threads must be at most 1024");
        plan.threads = static_cast<unsigned>(t);
    }
    if (!raw.config.empty()) plan.config = raw.config;
    if (!raw.sector.empty()) {
        const auto [lo, hi] = detail::split_pair("--sector", raw.sector);
        plan.sector = detail::flag_value("--sector", [&] { return std::pair(parse_angle(lo), parse_angle(hi)); });
    }
    if (!raw.r.empty()) plan.r = detail::flag_value("--r", [&] { return parse_rational(raw.r); });
    if (!raw.R.empty()) plan.R = detail::flag_value("--R", [&] { return parse_rational(raw.R); });
    if (!raw.window.empty()) plan.window = detail::split_pair("--window", raw.window);
    if (!raw.interval.empty()) plan.window = detail::split_pair("--interval", raw.interval);
    if (!raw.cls.empty()) plan.cls = detail::split_pair("--class", raw.cls);
    if (!raw.cls1.empty()) plan.cls = detail::split_pair("--class1", raw.cls1);
    if (!raw.cls2.empty()) plan.cls2 = detail::split_pair("--class2", raw.cls2);
    if (!raw.law.empty()) plan.law = detail::flag_value("--law", [&] { return parse_law(raw.law); });
    if (!raw.xs.empty()) {
        std::stringstream ss(raw.xs);
        std::string item;
        while (std::getline(ss, item, ',')) plan.xs.push_back(detail::parse_positive("--xs", item));
    }
    if (!raw.target.empty()) plan.target = raw.target;
    if (!raw.eps.empty()) plan.eps = detail::flag_value("--eps", [&] { return parse_rational(raw.eps); });
    if (!raw.method.empty()) {
        if (raw.method == "proof") plan.method = Method::proof;
        else if (raw.method == "inert") plan.method = Method::inert;
        else throw UsageError("--method must be proof or inert (got '" + raw.method + "')");
    }
    if (!raw.max_norm.empty()) plan.bound = detail::parse_positive("--max-norm", raw.max_norm);
    if (!raw.x.empty()) plan.bound = detail::parse_positive("--x", raw.x);

    // compatibility checks, before any computation
    const bool real = plan.d && *plan.d > 0;
    const bool gaussian = plan.d && *plan.d == -1;
    auto forbid = [](bool present, const std::string& what) {
        if (present) throw UsageError(what);
    };
    switch (plan.command) {
    case Subcommand::primes:
    case Subcommand::count: {
        if (real) {
            forbid(plan.sector.has_value() || plan.r || plan.R, "real rings take --window, not --sector/--r/--R");
            if (!plan.window) throw UsageError("real rings need --window a:b");
        } else {
            forbid(plan.window.has_value(), "--window is for real rings (d > 0)");
        }
        forbid(plan.cls && !gaussian, "--class needs --d -1");
        const std::string flag = plan.command == Subcommand::primes ? "--max-norm" : "--x";
        if (plan.bound == 0) throw UsageError(flag + " is required");
        if (plan.bound < 2) throw UsageError(flag + " must be at least 2");
        break;
    }
    case Subcommand::verify: {
        if (plan.law == Law::pnt) {
            forbid(plan.sector || plan.cls || plan.window, "pnt takes no --sector, --class or --window");
        } else if (!plan.d) {
            throw UsageError("--d is required for this law");
        }
        forbid(plan.cls && plan.law != Law::gaussian_congruence, "--class is only for gaussian_congruence");
        forbid(plan.law == Law::gaussian_congruence && !plan.cls, "gaussian_congruence needs --class");
        forbid(plan.window && plan.law != Law::real_ratio, "--window is only for real_ratio");
        forbid(plan.law == Law::real_ratio && !plan.window, "real_ratio needs --window");
        forbid(plan.sector && plan.law == Law::real_ratio, "real_ratio takes --window, not --sector");
        if (plan.xs.empty()) throw UsageError("--xs needs at least one value");
        break;
    }
    case Subcommand::find:
        if (real) {
            forbid(plan.sector || plan.r || plan.R || plan.cls || plan.cls2, "real rings take --interval");
            if (!plan.window) throw UsageError("real rings need --interval a:b");
        } else {
            forbid(plan.window.has_value(), "--interval is for real rings (d > 0)");
            forbid(plan.method == Method::inert, "--method inert is for real rings");
            if (!plan.sector || !plan.r || !plan.R) throw UsageError("imaginary rings need --sector, --r and --R");
            forbid(plan.cls.has_value() != plan.cls2.has_value(), "--class1 and --class2 go together");
            forbid(plan.cls && !gaussian, "--class1/--class2 need --d -1");
        }
        break;
    case Subcommand::approx:
        forbid(!real && plan.method == Method::inert, "--method inert is for real rings");
        break;
    default: break;
    }
    return plan;
}

namespace detail {

using nlohmann::ordered_json;

inline CongruenceClass class_of(const Ring& ring, const std::pair<std::string, std::string>& text) {
    return make_congruence_class(parse_quad_int(ring, text.first), parse_quad_int(ring, text.second));
}

inline ordered_json region_json(const Region& region) {
    ordered_json j;
    if (const auto* s = std::get_if<AnnularSector>(&region)) {
        j["kind"] = "sector";
        j["theta1"] = to_string(s->lo);
        j["theta2"] = to_string(s->hi);
        j["r"] = to_string(s->r);
        j["R"] = s->R ? to_string(*s->R) : std::string("inf");
    } else {
        const auto& iv = std::get<RealInterval>(region);
        j["kind"] = "interval";
        j["a"] = to_string(iv.a);
        j["b"] = to_string(iv.b);
    }
    return j;
}

inline ordered_json prime_json(const PrimeElement& p) {
    ordered_json j;
    j["element"] = to_string(p.element);
    j["norm"] = p.absolute_norm.str();
    j["kind"] = std::string(to_string(p.kind));
    j["rational_prime"] = p.rational_prime.str();
    return j;
}

inline void emit_witness(std::ostream& out, Format format, const QuotientWitness& w, const ordered_json& extra) {
    if (format == Format::json) {
        ordered_json j;
        j["d"] = w.ring.d();
        j["numerator"] = to_string(w.numerator.element);
        j["denominator"] = to_string(w.denominator.element);
        j["numerator_prime"] = prime_json(w.numerator);
        j["denominator_prime"] = prime_json(w.denominator);
        j["target"] = region_json(w.target);
        for (const auto& [k, v] : extra.items()) j[k] = v;
        j["transcript"] = w.transcript;
        j["search_cost"] = w.search_cost;
        out << j.dump(2) << '\n';
    } else if (format == Format::csv) {
        out << "numerator,denominator,search_cost\n"
            << to_string(w.numerator.element) << ',' << to_string(w.denominator.element) << ',' << w.search_cost << '\n';
    } else {
        out << "(" << to_string(w.numerator.element) << ") / (" << to_string(w.denominator.element) << ")\n";
        for (const auto& t : w.transcript) out << "  " << t << '\n';
        out << "search_cost: " << w.search_cost << '\n';
    }
}

inline ClassNumberTable load_classes(const CommandPlan& plan) {
    return plan.config ? ClassNumberTable::from_file(*plan.config) : ClassNumberTable{};
}

inline void run_info(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    if (plan.format == Format::json) {
        ordered_json j;
        j["d"] = ring.d();
        j["basis"] = std::string(to_string(ring.basis_mode()));
        j["signature"] = std::string(to_string(ring.signature()));
        j["discriminant"] = ring.discriminant();
        out << j.dump(2) << '\n';
    } else if (plan.format == Format::csv) {
        out << "d,basis,signature,discriminant\n"
            << ring.d() << ',' << to_string(ring.basis_mode()) << ',' << to_string(ring.signature()) << ','
            << ring.discriminant() << '\n';
    } else {
        out << "d: " << ring.d() << "\nbasis: " << to_string(ring.basis_mode())
            << "\nsignature: " << to_string(ring.signature()) << "\ndiscriminant: " << ring.discriminant() << '\n';
    }
}

inline std::pair<Angle, Angle> sector_or_full(const CommandPlan& plan) {
    return plan.sector ? *plan.sector : std::pair(Angle::zero(), Angle::full_turn());
}

inline RealInterval window_of(const Ring& ring, const std::pair<std::string, std::string>& w) {
    return {parse_field_element(ring, w.first), parse_field_element(ring, w.second)};
}

inline void run_primes(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    std::optional<Region> filter;
    if (ring.is_real()) {
        filter = window_of(ring, *plan.window);
    } else if (plan.sector || plan.r || plan.R) {
        const auto [lo, hi] = sector_or_full(plan);
        filter = AnnularSector{lo, hi, plan.r.value_or(0), plan.R};
    }
    std::optional<CongruenceClass> cls;
    if (plan.cls) cls = class_of(ring, *plan.cls);
    const auto primes = prime_stream(ring, plan.bound, filter, cls);
    if (plan.format == Format::csv) {
        write_prime_csv(out, primes);
    } else if (plan.format == Format::json) {
        ordered_json j = ordered_json::array();
        for (const auto& p : primes) j.push_back(prime_json(p));
        out << j.dump(2) << '\n';
    } else {
        for (const auto& p : primes)
            out << to_string(p.element) << "  norm " << p.absolute_norm << "  " << to_string(p.kind) << "  p = "
                << p.rational_prime << '\n';
    }
}

inline void run_count(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    std::uint64_t n = 0;
    if (ring.is_real()) {
        const auto w = window_of(ring, *plan.window);
        n = count_ratio(ring, plan.bound, w.a, w.b, plan.threads);
    } else {
        const auto [lo, hi] = sector_or_full(plan);
        n = plan.cls ? count_sector_congruence(plan.bound, lo, hi, class_of(ring, *plan.cls), plan.threads)
                     : count_sector(ring, plan.bound, lo, hi, plan.threads);
    }
    if (plan.format == Format::json) {
        ordered_json j;
        j["d"] = ring.d();
        j["x"] = plan.bound.str();
        j["count"] = n;
        out << j.dump(2) << '\n';
    } else if (plan.format == Format::csv) {
        out << "x,count\n" << plan.bound << ',' << n << '\n';
    } else {
        out << n << '\n';
    }
}

inline void run_invariants(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    const RingInvariants inv = compute_invariants(ring, load_classes(plan));
    ordered_json j;
    j["d"] = ring.d();
    j["g"] = inv.g ? ordered_json(*inv.g) : ordered_json("infinite");
    if (inv.eta) {
        j["eta"] = to_string(*inv.eta);
        j["eta_norm"] = inv.eta_norm;
    }
    j["h"] = inv.h;
    if (inv.tp_unit) {
        j["tp_unit"] = to_string(*inv.tp_unit);
        j["tp_ratio_scale"] = to_string(*inv.tp_ratio_scale);
    }
    if (plan.format == Format::json) {
        out << j.dump(2) << '\n';
    } else if (plan.format == Format::csv) {
        std::string header, row;
        for (const auto& [k, v] : j.items()) {
            header += (header.empty() ? "" : ",") + k;
            row += (row.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        out << header << '\n' << row << '\n';
    } else {
        for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
}

inline void run_verify(const CommandPlan& plan, std::ostream& out) {
    const Ring ring = make_ring(plan.d.value_or(-1));
    LawParams params;
    params.classes = load_classes(plan);
    if (*plan.law == Law::real_ratio) {
        const auto w = window_of(ring, *plan.window);
        params.a = w.a;
        params.b = w.b;
    } else if (*plan.law != Law::pnt && plan.sector) {
        params.theta1 = plan.sector->first;
        params.theta2 = plan.sector->second;
    }
    if (plan.cls) params.cls = class_of(ring, *plan.cls);
    const CountReport report = convergence_report(*plan.law, ring, params, plan.xs, plan.threads);
    if (plan.format == Format::csv) {
        write_report_csv(out, report);
    } else if (plan.format == Format::json) {
        ordered_json j;
        j["law"] = std::string(to_string(report.law));
        j["d"] = report.law == Law::pnt ? ordered_json(nullptr) : ordered_json(ring.d());
        ordered_json p = ordered_json::object();
        if (params.theta1) {
            p["theta1"] = to_string(*params.theta1);
            p["theta2"] = to_string(*params.theta2);
        } else if (report.law != Law::pnt && report.law != Law::real_ratio) {
            p["theta1"] = "0";
            p["theta2"] = "2*pi";
        }
        if (params.cls) {
            p["residue"] = to_string(params.cls->residue);
            p["modulus"] = to_string(params.cls->modulus);
        }
        if (params.a) {
            p["a"] = to_string(*params.a);
            p["b"] = to_string(*params.b);
        }
        j["params"] = p;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json r;
            r["x"] = row.x;
            r["empirical"] = row.empirical;
            r["predicted"] = format_fixed(row.predicted);
            r["ratio"] = format_fixed(row.ratio);
            rows.push_back(r);
        }
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    } else {
        out << "law: " << to_string(report.law) << '\n';
        out << std::setw(12) << "x" << std::setw(12) << "empirical" << std::setw(18) << "predicted" << std::setw(12)
            << "ratio" << '\n';
        for (const auto& row : report.rows)
            out << std::setw(12) << row.x << std::setw(12) << row.empirical << std::setw(18) << format_fixed(row.predicted)
                << std::setw(12) << format_fixed(row.ratio) << '\n';
    }
}

inline SearchOptions search_options(const CommandPlan& plan) { return {plan.cap, plan.threads}; }

inline void run_find(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    const SearchOptions opt = search_options(plan);
    if (ring.is_real()) {
        const RealInterval iv = window_of(ring, *plan.window);
        const auto w = plan.method == Method::inert ? inert_rational_fallback(ring, iv, opt)
                                                    : find_quotient_interval(ring, iv, opt);
        emit_witness(out, plan.format, w, ordered_json::object());
        return;
    }
    const AnnularSector s{plan.sector->first, plan.sector->second, *plan.r, *plan.R};
    if (plan.cls) {
        const auto c1 = class_of(ring, *plan.cls), c2 = class_of(ring, *plan.cls2);
        ordered_json extra;
        extra["class1"] = {{"residue", to_string(c1.residue)}, {"modulus", to_string(c1.modulus)}};
        extra["class2"] = {{"residue", to_string(c2.residue)}, {"modulus", to_string(c2.modulus)}};
        emit_witness(out, plan.format, find_quotient_sector_congruent(s, c1, c2, opt), extra);
        return;
    }
    emit_witness(out, plan.format, find_quotient_sector(ring, s, opt), ordered_json::object());
}

inline void run_approx(const CommandPlan& plan, const Ring& ring, std::ostream& out) {
    const SearchOptions opt = search_options(plan);
    ordered_json extra;
    extra["epsilon"] = to_string(*plan.eps);
    if (ring.is_real()) {
        const QuadRational t = parse_field_element(ring, *plan.target);
        extra["target_point"] = to_string(t);
        if (plan.method == Method::inert) {
            if (*plan.eps <= 0) fail(Errc::precondition_violated, "epsilon must be positive");
            const QuadRational e(ring, *plan.eps);
            emit_witness(out, plan.format, inert_rational_fallback(ring, {t - e, t + e}, opt), extra);
        } else {
            emit_witness(out, plan.format, approximate(ring, t, *plan.eps, opt), extra);
        }
        return;
    }
    const ParsedQuad p = parse_quad_text(*plan.target);
    if (p.radicand && *p.radicand != -1)
        fail(Errc::parse_error, "complex targets are written a+bi (got '" + *plan.target + "')");
    const ComplexPoint c{p.rational_part, p.radical_part};
    extra["target_point"] = to_string(c.re) + (c.im.sign() < 0 ? "-" : "+") + to_string(abs(c.im)) + "i";
    emit_witness(out, plan.format, approximate(ring, c, *plan.eps, opt), extra);
}

} // namespace detail

/// Executes a validated plan; returns the exit status. Output goes to out,
/// diagnostics to err.
inline int run(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
    try {
        std::ostringstream buffer;  // nothing reaches out unless the command succeeds
        if (plan.command == Subcommand::verify) {
            detail::run_verify(plan, buffer);
        } else {
            const Ring ring = make_ring(*plan.d);
            switch (plan.command) {
            case Subcommand::info: detail::run_info(plan, ring, buffer); break;
            case Subcommand::primes: detail::run_primes(plan, ring, buffer); break;
            case Subcommand::count: detail::run_count(plan, ring, buffer); break;
            case Subcommand::invariants: detail::run_invariants(plan, ring, buffer); break;
            case Subcommand::find: detail::run_find(plan, ring, buffer); break;
            case Subcommand::approx: detail::run_approx(plan, ring, buffer); break;
            case Subcommand::verify: break;
            }
        }
        out << buffer.str();
        return 0;
    } catch (const Error& e) {
        err << "quadring: " << e.what() << '\n';
        if (e.code() == Errc::cap_exceeded) return 3;
        if (e.code() == Errc::parse_error) return 2;
        return 4;
    } catch (const std::exception& e) {
        err << "quadring: internal error: " << e.what() << '\n';
        return 1;
    }
}

inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandPlan plan;
    try {
        plan = parse_args(args);
    } catch (const UsageError& e) {
        err << "quadring: usage: " << e.what() << '\n';
        return 2;
    }
    return run(plan, out, err);
}

} // namespace quadring::cli
