#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace quadring {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using i128 = __int128;
using u128 = unsigned __int128;

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
    if (n.sign() < 0) fail(Errc::precondition_violated, "isqrt of a negative number");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n, Integer* root = nullptr) {
    if (n.sign() < 0) return false;
    Integer s = isqrt(n);
    if (root) *root = s;
    return s * s == n;
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::int64_t to_i64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        fail(Errc::overflow, "value does not fit in 64 bits");
    return static_cast<std::int64_t>(x);
}

inline std::uint64_t to_u64(const Integer& x) {
    if (x.sign() < 0 || x > std::numeric_limits<std::uint64_t>::max())
        fail(Errc::overflow, "value does not fit in unsigned 64 bits");
    return static_cast<std::uint64_t>(x);
}

inline std::int64_t checked_i64(i128 x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        fail(Errc::overflow, "intermediate value does not fit in 64 bits");
    return static_cast<std::int64_t>(x);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& n) { return n.convert_to<double>(); }

/// Exact rational value of a finite double.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) fail(Errc::precondition_violated, "non-finite value");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r{Integer(m)};
    if (exp > 0) r *= Rational(Integer(1) << exp);
    if (exp < 0) r /= Rational(Integer(1) << -exp);
    return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a.sign() < 0) != (b.sign() < 0))) --q;
    return q;
}

inline Integer floor_of(const Rational& q) { return floor_div(numerator_of(q), denominator_of(q)); }
inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

/// Nearest integer, halves rounded up.
inline Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

inline std::string to_string(const Integer& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Sign of A + B*sqrt(n), n >= 0, decided exactly.
inline int sign_plus_sqrt(const Rational& a, const Rational& b, const Integer& n) {
    Integer root;
    if (is_square(n, &root)) return sign(a + b * Rational(root));
    int sa = sign(a), sb = sign(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with n b^2
    Rational lhs = a * a;
    Rational rhs = Rational(n) * b * b;
    return lhs > rhs ? sa : sb;
}

/// Locale-independent parse of "12", "-3/4", "1.25", "1e-3", "2.5E+2".
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { fail(Errc::parse_error, "not a number: '" + std::string(text) + "'"); };
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) bad();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) fail(Errc::division_by_zero, "zero denominator in '" + std::string(text) + "'");
        return num / den;
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    Integer digits = 0;
    int scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            any_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') bad();
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) bad();
        int exponent = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') bad();
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 4000) bad();
        }
        scale += exp_negative ? -exponent : exponent;
    }
    Rational value{digits};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(scale)));
    if (scale > 0) value *= Rational(ten_pow);
    if (scale < 0) value /= Rational(ten_pow);
    return negative ? -value : value;
}

// --- machine-word number theory ---------------------------------------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace detail {

inline bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic Miller-Rabin. The seven-base set is exact below 341550071728321;
/// above that the first twelve prime bases are exact for every 64-bit n.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    static constexpr std::uint64_t small_bases[] = {2, 3, 5, 7, 11, 13, 17};
    static constexpr std::uint64_t large_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 341550071728321ULL) {
        for (auto a : small_bases)
            if (!detail::miller_rabin_round(n, a, d, r)) return false;
        return true;
    }
    for (auto a : large_bases)
        if (!detail::miller_rabin_round(n, a, d, r)) return false;
    return true;
}

inline bool is_rational_prime(const Integer& n) {
    if (n < 2) return false;
    return is_prime_u64(to_u64(n));
}

/// All primes in [lo, hi), segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi <= 2 || hi <= lo) return out;
    lo = std::max<std::uint64_t>(lo, 2);
    const std::uint64_t root = isqrt_u64(hi - 1);
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
    }
    constexpr std::uint64_t segment = 1 << 20;
    std::vector<bool> mark;
    for (std::uint64_t start = lo; start < hi; start += segment) {
        std::uint64_t end = std::min(hi, start + segment);
        mark.assign(end - start, true);
        for (std::uint64_t p : base) {
            if (p * p >= end) break;
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t j = first; j < end; j += p) mark[j - start] = false;
        }
        for (std::uint64_t i = 0; i < end - start; ++i)
            if (mark[i]) out.push_back(start + i);
    }
    return out;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a residue.
inline std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = static_cast<std::uint64_t>(s);
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Round-half-up of n/m for m > 0 in 128-bit arithmetic.
inline i128 round_div(i128 n, i128 m) {
    i128 num = 2 * n + m;
    i128 den = 2 * m;
    i128 q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return q;
}

} // namespace quadring
