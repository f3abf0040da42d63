#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace quadring {

enum class BasisMode { standard, half };
enum class Signature { imaginary, real };

/// The ring of integers of Q(sqrt(d)). Z[sqrt(d)] unless d = 1 mod 4, where
/// it is Z[(1 + sqrt(d))/2].
class Ring {
public:
    static Ring make(std::int64_t d) {
        if (d == 0 || d == 1) fail(Errc::degenerate_d, "d must not be 0 or 1 (got " + std::to_string(d) + ")");
        const std::uint64_t a = d < 0 ? static_cast<std::uint64_t>(-(d + 1)) + 1 : static_cast<std::uint64_t>(d);
        if (a > 1'000'000'000'000ULL) fail(Errc::precondition_violated, "|d| above 10^12 is not supported");
        for (std::uint64_t p = 2; p * p <= a; ++p) {
            if (a % (p * p) == 0)
                fail(Errc::not_squarefree, std::to_string(d) + " is divisible by " + std::to_string(p * p));
        }
        return Ring(d);
    }

    std::int64_t d() const noexcept { return d_; }
    BasisMode basis_mode() const noexcept { return mod_floor(d_, 4) == 1 ? BasisMode::half : BasisMode::standard; }
    Signature signature() const noexcept { return d_ < 0 ? Signature::imaginary : Signature::real; }
    std::int64_t discriminant() const noexcept { return basis_mode() == BasisMode::half ? d_ : 4 * d_; }
    bool is_imaginary() const noexcept { return d_ < 0; }
    bool is_real() const noexcept { return d_ > 0; }
    bool is_gaussian() const noexcept { return d_ == -1; }

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    explicit Ring(std::int64_t d) : d_(d) {}
    std::int64_t d_;
};

inline Ring make_ring(std::int64_t d) { return Ring::make(d); }

inline std::string_view to_string(BasisMode m) { return m == BasisMode::half ? "half" : "standard"; }
inline std::string_view to_string(Signature s) { return s == Signature::imaginary ? "imaginary" : "real"; }

inline void require_same_ring(const Ring& a, const Ring& b) {
    if (a != b)
        fail(Errc::ring_mismatch, "elements of d=" + std::to_string(a.d()) + " and d=" + std::to_string(b.d()));
}

/// An element (u + v*sqrt(d))/2 of the ring. u = v mod 2 always, and both are
/// even in the standard basis.
class QuadInt {
public:
    QuadInt(Ring ring, Integer u, Integer v) : ring_(ring), u_(std::move(u)), v_(std::move(v)) {
        if (!valid(ring_, u_, v_))
            fail(Errc::invalid_element, "half-coordinates (" + u_.str() + ", " + v_.str() +
                                            ") are not in the ring of integers for d=" + std::to_string(ring_.d()));
    }

    /// a + b*sqrt(d) with integer a, b.
    static QuadInt from_coords(Ring ring, const Integer& a, const Integer& b) { return QuadInt(ring, 2 * a, 2 * b); }
    static QuadInt integer(Ring ring, const Integer& n) { return QuadInt(ring, 2 * n, 0); }
    static QuadInt zero(Ring ring) { return QuadInt(ring, 0, 0); }
    static QuadInt one(Ring ring) { return QuadInt(ring, 2, 0); }

    static bool valid(const Ring& ring, const Integer& u, const Integer& v) {
        const bool u_odd = boost::multiprecision::bit_test(u, 0);
        const bool v_odd = boost::multiprecision::bit_test(v, 0);
        if (u_odd != v_odd) return false;
        return ring.basis_mode() == BasisMode::half || !u_odd;
    }

    const Ring& ring() const noexcept { return ring_; }
    const Integer& u() const noexcept { return u_; }
    const Integer& v() const noexcept { return v_; }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool is_rational() const { return v_.is_zero(); }

    QuadInt operator-() const { return {unchecked{}, ring_, -u_, -v_}; }

    friend QuadInt operator+(const QuadInt& a, const QuadInt& b) {
        require_same_ring(a.ring_, b.ring_);
        return {unchecked{}, a.ring_, a.u_ + b.u_, a.v_ + b.v_};
    }
    friend QuadInt operator-(const QuadInt& a, const QuadInt& b) {
        require_same_ring(a.ring_, b.ring_);
        return {unchecked{}, a.ring_, a.u_ - b.u_, a.v_ - b.v_};
    }
    friend QuadInt operator*(const QuadInt& a, const QuadInt& b) {
        require_same_ring(a.ring_, b.ring_);
        const Integer d = a.ring_.d();
        return {unchecked{}, a.ring_, (a.u_ * b.u_ + d * a.v_ * b.v_) / 2, (a.u_ * b.v_ + a.v_ * b.u_) / 2};
    }
    QuadInt& operator+=(const QuadInt& o) { return *this = *this + o; }
    QuadInt& operator-=(const QuadInt& o) { return *this = *this - o; }
    QuadInt& operator*=(const QuadInt& o) { return *this = *this * o; }

    friend bool operator==(const QuadInt& a, const QuadInt& b) {
        return a.ring_ == b.ring_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

    /// Lexicographic on (u, v); the canonical coordinate order of streams.
    friend std::strong_ordering coordinate_order(const QuadInt& a, const QuadInt& b) {
        if (a.u_ != b.u_) return a.u_ < b.u_ ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a.v_ != b.v_) return a.v_ < b.v_ ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    struct unchecked {};
    QuadInt(unchecked, Ring ring, Integer u, Integer v) : ring_(ring), u_(std::move(u)), v_(std::move(v)) {}

    Ring ring_;
    Integer u_;
    Integer v_;
};

enum class ArithOp { add, sub, mul, neg };

inline QuadInt ring_arith(ArithOp op, const QuadInt& a, const QuadInt& b) {
    require_same_ring(a.ring(), b.ring());
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    }
    fail(Errc::precondition_violated, "unknown arithmetic op");
}

inline QuadInt conjugate(const QuadInt& a) { return QuadInt(a.ring(), a.u(), -a.v()); }

/// N(a) = a * conjugate(a) = (u^2 - d v^2) / 4.
inline Integer norm(const QuadInt& a) { return (a.u() * a.u() - Integer(a.ring().d()) * a.v() * a.v()) / 4; }

inline bool is_unit(const QuadInt& a) {
    Integer n = norm(a);
    return n == 1 || n == -1;
}

/// q with q*den == num, if it exists in the ring.
inline std::optional<QuadInt> try_divide(const QuadInt& num, const QuadInt& den) {
    require_same_ring(num.ring(), den.ring());
    if (den.is_zero()) fail(Errc::division_by_zero, "division by zero element");
    const QuadInt p = num * conjugate(den);
    const Integer n = norm(den);
    if (p.u() % n != 0 || p.v() % n != 0) return std::nullopt;
    Integer u = p.u() / n;
    Integer v = p.v() / n;
    if (!QuadInt::valid(num.ring(), u, v)) return std::nullopt;
    return QuadInt(num.ring(), std::move(u), std::move(v));
}

inline bool divides(const QuadInt& divisor, const QuadInt& value) { return try_divide(value, divisor).has_value(); }

/// a = b (mod g) iff g divides b - a.
inline bool congruent_mod(const QuadInt& a, const QuadInt& b, const QuadInt& g) {
    if (g.is_zero()) fail(Errc::division_by_zero, "congruence modulo zero");
    return divides(g, b - a);
}

inline QuadInt pow(QuadInt base, unsigned exponent) {
    QuadInt result = QuadInt::one(base.ring());
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

/// An element x + y*sqrt(d) of the field Q(sqrt(d)).
class QuadRational {
public:
    QuadRational(Ring ring, Rational x = 0, Rational y = 0) : ring_(ring), x_(std::move(x)), y_(std::move(y)) {}
    QuadRational(const QuadInt& a) // NOLINT(google-explicit-constructor)
        : ring_(a.ring()), x_(Rational(a.u(), 2)), y_(Rational(a.v(), 2)) {}

    const Ring& ring() const noexcept { return ring_; }
    const Rational& x() const noexcept { return x_; }
    const Rational& y() const noexcept { return y_; }
    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    QuadRational operator-() const { return {ring_, -x_, -y_}; }
    friend QuadRational operator+(const QuadRational& a, const QuadRational& b) {
        require_same_ring(a.ring_, b.ring_);
        return {a.ring_, a.x_ + b.x_, a.y_ + b.y_};
    }
    friend QuadRational operator-(const QuadRational& a, const QuadRational& b) {
        require_same_ring(a.ring_, b.ring_);
        return {a.ring_, a.x_ - b.x_, a.y_ - b.y_};
    }
    friend QuadRational operator*(const QuadRational& a, const QuadRational& b) {
        require_same_ring(a.ring_, b.ring_);
        const Rational d{Integer(a.ring_.d())};
        return {a.ring_, a.x_ * b.x_ + d * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_};
    }
    friend QuadRational operator/(const QuadRational& a, const QuadRational& b) {
        require_same_ring(a.ring_, b.ring_);
        const Rational n = b.norm();
        if (n.is_zero()) fail(Errc::division_by_zero, "division by zero in Q(sqrt(d))");
        const QuadRational p = a * b.conjugate();
        return {a.ring_, p.x_ / n, p.y_ / n};
    }
    friend bool operator==(const QuadRational& a, const QuadRational& b) {
        return a.ring_ == b.ring_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    QuadRational conjugate() const { return {ring_, x_, -y_}; }
    Rational norm() const { return x_ * x_ - Rational(Integer(ring_.d())) * y_ * y_; }

    /// Exact sign of the real number x + y*sqrt(d); real fields only.
    int sign() const {
        if (ring_.is_imaginary() && !y_.is_zero())
            fail(Errc::imaginary_ring, "sign of a non-real element of an imaginary field");
        return sign_plus_sqrt(x_, y_, Integer(ring_.is_real() ? ring_.d() : 0));
    }

    double to_double() const {
        if (ring_.is_imaginary()) return quadring::to_double(x_);
        return quadring::to_double(x_) + quadring::to_double(y_) * std::sqrt(static_cast<double>(ring_.d()));
    }

    /// The element as a ring integer, if it is one.
    std::optional<QuadInt> to_quad_int() const {
        Rational u = 2 * x_;
        Rational v = 2 * y_;
        if (denominator_of(u) != 1 || denominator_of(v) != 1) return std::nullopt;
        if (!QuadInt::valid(ring_, numerator_of(u), numerator_of(v))) return std::nullopt;
        return QuadInt(ring_, numerator_of(u), numerator_of(v));
    }

    /// Total order of real numbers; real fields only.
    friend std::strong_ordering operator<=>(const QuadRational& a, const QuadRational& b) {
        int s = (a - b).sign();
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    Ring ring_;
    Rational x_;
    Rational y_;
};

// --- canonical text form ------------------------------------------------------

inline std::string format_quad(const Rational& a, const Rational& b, std::int64_t d) {
    std::string out = to_string(a);
    out += b.sign() < 0 ? "-" : "+";
    out += to_string(b.sign() < 0 ? Rational(-b) : b);
    out += "*sqrt(" + std::to_string(d) + ")";
    return out;
}

/// `a+b*sqrt(d)` with exact fractions, e.g. `1/2+1/2*sqrt(5)`.
inline std::string to_string(const QuadInt& a) { return format_quad(Rational(a.u(), 2), Rational(a.v(), 2), a.ring().d()); }
inline std::string to_string(const QuadRational& a) { return format_quad(a.x(), a.y(), a.ring().d()); }

/// Result of parsing `p + q*sqrt(n)` (or `p + q*i`): radicand absent when q == 0.
struct ParsedQuad {
    Rational rational_part;
    Rational radical_part;
    std::optional<std::int64_t> radicand;
};

/// Grammar: a signed sum of terms, each `coef`, `coef*sqrt(n)`, `coef*i`,
/// `coef i`, `sqrt(n)` or `i`. Coefficients are integers, fractions or
/// decimals. Whitespace is ignored.
inline ParsedQuad parse_quad_text(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    auto bad = [&](const std::string& why) { fail(Errc::parse_error, "cannot parse '" + std::string(text) + "': " + why); };
    if (s.empty()) bad("empty");

    ParsedQuad out;
    bool any_radical = false;
    std::size_t i = 0;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (i != 0) {
            bad("expected '+' or '-'");
        }
        if (i >= s.size()) bad("dangling sign");

        // coefficient: digits, '.', '/', exponent
        std::size_t start = i;
        while (i < s.size()) {
            char c = s[i];
            bool exponent_sign = (c == '+' || c == '-') && i > start && (s[i - 1] == 'e' || s[i - 1] == 'E');
            if ((c >= '0' && c <= '9') || c == '.' || c == '/' || c == 'e' || c == 'E' || exponent_sign) {
                ++i;
            } else {
                break;
            }
        }
        Rational coef = 1;
        bool has_coef = i > start;
        if (has_coef) coef = parse_rational(std::string_view(s).substr(start, i - start));
        if (i < s.size() && s[i] == '*') {
            if (!has_coef) bad("'*' without coefficient");
            ++i;
        }
        std::optional<std::int64_t> radicand;
        if (i < s.size() && s[i] == 'i') {
            radicand = -1;
            ++i;
        } else if (s.compare(i, 5, "sqrt(") == 0) {
            i += 5;
            std::size_t close = s.find(')', i);
            if (close == std::string::npos) bad("unclosed sqrt(");
            Rational n = parse_rational(std::string_view(s).substr(i, close - i));
            if (denominator_of(n) != 1) bad("sqrt argument must be an integer");
            radicand = to_i64(numerator_of(n));
            i = close + 1;
        } else if (!has_coef) {
            bad("expected a number, 'i' or 'sqrt('");
        }
        if (negative) coef = -coef;
        if (radicand) {
            if (any_radical && out.radicand != radicand) bad("mixed radicands");
            any_radical = true;
            out.radicand = radicand;
            out.radical_part += coef;
        } else {
            out.rational_part += coef;
        }
    }
    if (out.radical_part.is_zero()) out.radicand.reset();
    return out;
}

/// Parse an element of Q(sqrt(d)); `i` is accepted as sqrt(-1) when d = -1.
inline QuadRational parse_field_element(const Ring& ring, std::string_view text) {
    ParsedQuad p = parse_quad_text(text);
    if (p.radicand && *p.radicand != ring.d())
        fail(Errc::parse_error, "'" + std::string(text) + "' uses sqrt(" + std::to_string(*p.radicand) +
                                    ") but the ring has d=" + std::to_string(ring.d()));
    return QuadRational(ring, p.rational_part, p.radical_part);
}

inline QuadInt parse_quad_int(const Ring& ring, std::string_view text) {
    auto value = parse_field_element(ring, text).to_quad_int();
    if (!value) fail(Errc::invalid_element, "'" + std::string(text) + "' is not an integer of the ring");
    return *value;
}

} // namespace quadring
