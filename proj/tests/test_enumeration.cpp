#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "quadring/quadring.hpp"

using namespace quadring;

namespace {

QuadInt q(const Ring& r, const char* text) { return parse_quad_int(r, text); }

Angle pi_frac(int n, int m) { return Angle::pi_times(Rational(n, m)); }

std::set<std::pair<Integer, Integer>> coords(const std::vector<PrimeElement>& ps) {
    std::set<std::pair<Integer, Integer>> out;
    for (const auto& p : ps) out.insert({p.element.u(), p.element.v()});
    return out;
}

std::set<std::pair<Integer, Integer>> coords(const std::vector<oracle::H>& hs) {
    std::set<std::pair<Integer, Integer>> out;
    for (const auto& h : hs) out.insert({Integer(h.u), Integer(h.v)});
    return out;
}

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::undecidable;
}

} // namespace

TEST(PrimeStream, Examples) {
    const Ring g = make_ring(-1);
    const auto two = prime_stream(g, 2);
    EXPECT_EQ(coords(two), coords(std::vector<oracle::H>{{2, 2}, {-2, 2}, {-2, -2}, {2, -2}}));

    const auto quarter = prime_stream(g, 10, AnnularSector{Angle::zero(), pi_frac(1, 2)});
    ASSERT_EQ(quarter.size(), 4u);
    EXPECT_EQ(quarter[0].element, q(g, "1+i"));
    EXPECT_EQ(quarter[1].element, q(g, "1+2i"));
    EXPECT_EQ(quarter[2].element, q(g, "2+i"));
    EXPECT_EQ(quarter[3].element, q(g, "3"));
    EXPECT_EQ(quarter[3].kind, SplitKind::inert);
    EXPECT_EQ(quarter[3].absolute_norm, 9);
}

TEST(PrimeStream, OrderedAndMatchesLatticeScan) {
    for (std::int64_t d : {-1, -2, -3, -5, -7, -11}) {
        const Ring r = make_ring(d);
        const auto s = prime_stream(r, 3000);
        for (std::size_t i = 1; i < s.size(); ++i) {
            const bool ordered = s[i - 1].absolute_norm < s[i].absolute_norm ||
                                 (s[i - 1].absolute_norm == s[i].absolute_norm &&
                                  coordinate_order(s[i - 1].element, s[i].element) < 0);
            EXPECT_TRUE(ordered) << d << " at " << i;
        }
        for (const auto& p : s) {
            EXPECT_TRUE(is_prime_element(p.element));
            EXPECT_EQ(abs(norm(p.element)), p.absolute_norm);
        }
        EXPECT_EQ(coords(s), coords(oracle::imaginary_primes(d, 3000, 0, 7))) << d;
    }
}

TEST(PrimeStream, RadiusAndCongruenceFilters) {
    const Ring g = make_ring(-1);
    const auto ring_band = prime_stream(g, 500, AnnularSector{Angle::zero(), Angle::full_turn(), Rational(10), Rational(15)});
    for (const auto& p : ring_band) {
        EXPECT_GE(p.absolute_norm, 100);
        EXPECT_LT(p.absolute_norm, 225);
    }
    const auto cls = make_congruence_class(QuadInt::one(g), QuadInt::integer(g, 3));
    const auto filtered = prime_stream(g, 500, std::nullopt, cls);
    for (const auto& p : filtered) EXPECT_TRUE(congruent_mod(p.element, QuadInt::one(g), QuadInt::integer(g, 3)));
    EXPECT_EQ(filtered.size(), count_sector_congruence(500, Angle::zero(), Angle::full_turn(), cls));
    const Ring r2 = make_ring(-2);
    const auto other = make_congruence_class(QuadInt::one(r2), QuadInt::integer(r2, 3));
    EXPECT_EQ(code_of([&] { prime_stream(r2, 50, std::nullopt, other); }), Errc::unsupported_congruence_ring);
}

TEST(PrimeStream, RealWindow) {
    const Ring r = make_ring(2);
    const QuadRational eta(q(r, "1+sqrt(2)"));
    const QuadRational one(r, 1);
    // the totally positive associates of 2+sqrt(2) have ratios eta^(2-4k):
    // eta^-2 sits on the open end of (eta^-2, 1], so the window is empty
    EXPECT_TRUE(prime_stream(r, 2, RealInterval{one / (eta * eta), one}).empty());
    const auto s = prime_stream(r, 2, RealInterval{one / (eta * eta * eta), one / eta});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].element, q(r, "2+sqrt(2)"));

    for (std::int64_t d : {2, 3, 5}) {
        const Ring rd = make_ring(d);
        const auto got = prime_stream(rd, 3000, RealInterval{QuadRational(rd, 1), QuadRational(rd, 3)});
        EXPECT_EQ(coords(got), coords(oracle::ratio_primes(d, 3000, 1, 3))) << d;
        for (const auto& p : got) EXPECT_TRUE(totally_positive_check(p.element));
    }
    EXPECT_EQ(code_of([&] { prime_stream(r, 10); }), Errc::precondition_violated);
}

TEST(PrimeStream, Csv) {
    const Ring g = make_ring(-1);
    std::ostringstream out;
    write_prime_csv(out, prime_stream(g, 10, AnnularSector{Angle::zero(), pi_frac(1, 2)}));
    EXPECT_EQ(out.str(), "norm,u,v,kind,rational_prime\n2,2,2,ramified,2\n5,2,4,split,5\n5,4,2,split,5\n9,6,0,inert,3\n");
}

TEST(CountSector, Examples) {
    const Ring g = make_ring(-1);
    EXPECT_EQ(count_sector(g, 2, Angle::zero(), Angle::full_turn()), 4u);
    EXPECT_EQ(count_sector(g, 10, Angle::zero(), pi_frac(1, 2)), 4u);
    std::uint64_t quarters = 0;
    for (int k = 0; k < 4; ++k) quarters += count_sector(g, 5000, pi_frac(k, 2), pi_frac(k + 1, 2));
    EXPECT_EQ(quarters, count_sector(g, 5000, Angle::zero(), Angle::full_turn()));
    EXPECT_EQ(code_of([&] { count_sector(g, 10, pi_frac(1, 2), pi_frac(1, 4)); }), Errc::degenerate_sector);
    EXPECT_EQ(code_of([&] { count_sector(make_ring(2), 10, Angle::zero(), pi_frac(1, 4)); }), Errc::real_ring_unsupported);
}

TEST(CountSector, MatchesLatticeScan) {
    const std::vector<std::pair<double, double>> sectors{{0.3, 1.7}, {2.0, 5.5}, {0.05, 0.06}};
    for (std::int64_t d : {-1, -2, -3, -7}) {
        const Ring r = make_ring(d);
        for (const auto& [lo, hi] : sectors) {
            const auto a = Angle::from_radians(Rational(Integer(std::llround(lo * 100)), 100));
            const auto b = Angle::from_radians(Rational(Integer(std::llround(hi * 100)), 100));
            EXPECT_EQ(count_sector(r, 20000, a, b), oracle::imaginary_primes(d, 20000, lo, hi).size()) << d << " " << lo;
        }
    }
}

TEST(CountSector, PartitionAdditivity) {
    std::mt19937_64 rng(5);
    for (std::int64_t d : {-1, -3, -5}) {
        const Ring r = make_ring(d);
        const std::uint64_t total = count_sector(r, 30000, Angle::zero(), Angle::full_turn());
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Angle> cuts{Angle::zero()};
            std::uniform_int_distribution<int> den(1, 12);
            std::set<Rational> fracs;
            for (int i = 0; i < 6; ++i) {
                const int m = den(rng);
                fracs.insert(Rational(std::uniform_int_distribution<int>(1, 2 * m - 1)(rng), m));
            }
            for (const auto& f : fracs) cuts.push_back(Angle::pi_times(f));
            cuts.push_back(Angle::full_turn());
            std::uint64_t sum = 0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += count_sector(r, 30000, cuts[i], cuts[i + 1]);
            EXPECT_EQ(sum, total) << d;
        }
    }
}

TEST(CountSector, UnitRotationEquivariance) {
    for (std::int64_t d : {-1, -2, -3, -7, -11}) {
        const Ring r = make_ring(d);
        const Angle turn = Angle::pi_times(Rational(2, unit_count(r)));
        const Angle a = Angle::from_radians(Rational(1, 10)), b = Angle::from_radians(Rational(7, 10));
        const std::uint64_t base = count_sector(r, 40000, a, b);
        EXPECT_GT(base, 0u);
        EXPECT_EQ(count_sector(r, 40000, a + turn, b + turn), base) << d;
    }
}

TEST(CountSector, MonotoneAndConsistentWithStream) {
    const Ring g = make_ring(-1);
    std::uint64_t prev = 0;
    for (std::uint64_t x = 2; x <= 4000; x += 37) {
        const auto c = count_sector(g, x, Angle::from_radians(Rational(1, 3)), pi_frac(5, 4));
        EXPECT_GE(c, prev);
        prev = c;
    }
    for (std::int64_t d : {-1, -3, -6}) {
        const Ring r = make_ring(d);
        const AnnularSector s{Angle::from_radians(Rational(2, 5)), pi_frac(3, 2)};
        EXPECT_EQ(prime_stream(r, 7000, s).size(), count_sector(r, 7000, s.lo, s.hi));
    }
}

TEST(CountSector, ThreadIndependent) {
    const Ring g = make_ring(-1);
    const auto one = count_sector(g, 100000, Angle::from_radians(Rational(1, 7)), pi_frac(3, 2), 1);
    EXPECT_EQ(count_sector(g, 100000, Angle::from_radians(Rational(1, 7)), pi_frac(3, 2), 8), one);
}

TEST(AnnulusGrowth, DifferencesPositiveAndNondecreasing) {
    const Ring g = make_ring(-1);
    std::vector<std::uint64_t> diffs;
    for (int k = 0; k <= 7; ++k) {
        const std::uint64_t x = 1000ULL << k;
        diffs.push_back(count_sector(g, 2 * x, Angle::zero(), pi_frac(1, 4)) - count_sector(g, x, Angle::zero(), pi_frac(1, 4)));
    }
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        EXPECT_GT(diffs[k], 0u);
        if (k > 0) EXPECT_GE(diffs[k], diffs[k - 1]);
    }
}

TEST(CountSectorCongruence, Examples) {
    const Ring g = make_ring(-1);
    const QuadInt one = QuadInt::one(g);
    const auto odd = make_congruence_class(one, q(g, "1+i"));
    std::uint64_t want = 0;
    for (const auto& h : oracle::imaginary_primes(-1, 50, 0, 7))
        want += oracle::divides(-1, {2, 2}, {h.u - 2, h.v}) ? 1 : 0;
    EXPECT_EQ(count_sector_congruence(50, Angle::zero(), Angle::full_turn(), odd), want);

    const auto zero_mod_2 = make_congruence_class(QuadInt::zero(g), QuadInt::integer(g, 2));
    EXPECT_EQ(code_of([&] { count_sector_congruence(100, Angle::zero(), Angle::full_turn(), zero_mod_2); }),
              Errc::not_coprime);

    const auto mod3 = make_congruence_class(one, QuadInt::integer(g, 3));
    std::uint64_t want3 = 0;
    for (const auto& h : oracle::imaginary_primes(-1, 2, 0, 7)) want3 += oracle::divides(-1, {6, 0}, {h.u - 2, h.v}) ? 1 : 0;
    EXPECT_EQ(count_sector_congruence(2, Angle::zero(), Angle::full_turn(), mod3), want3);
}

TEST(CountSectorCongruence, ClassesPartitionTheCount) {
    const Ring g = make_ring(-1);
    const QuadInt three = QuadInt::integer(g, 3);
    std::uint64_t sum = 0;
    int classes = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const QuadInt beta = QuadInt::from_coords(g, a, b);
            if (!is_unit(gaussian_gcd(beta, three))) continue;
            ++classes;
            sum += count_sector_congruence(20000, Angle::zero(), Angle::full_turn(), make_congruence_class(beta, three));
        }
    EXPECT_EQ(classes, 8);
    // the four associates of 3 divide the modulus
    EXPECT_EQ(sum + 4, count_sector(g, 20000, Angle::zero(), Angle::full_turn()));
}

TEST(TotallyPositive, Examples) {
    const Ring r = make_ring(2);
    EXPECT_FALSE(totally_positive_check(q(r, "1+sqrt(2)")));
    EXPECT_TRUE(totally_positive_check(q(r, "3+sqrt(2)")));
    EXPECT_TRUE(totally_positive_check(q(r, "2+sqrt(2)")));
    EXPECT_FALSE(totally_positive_check(q(r, "-2-sqrt(2)")));
}

TEST(CountRatio, Examples) {
    const Ring r = make_ring(2);
    EXPECT_EQ(count_ratio(r, 2, Rational(1, 10), Rational(1, 2)), oracle::ratio_primes(2, 2, 0.1, 0.5).size());
    EXPECT_EQ(code_of([&] { count_ratio(r, 2, Rational(1, 10), Rational(10)); }), Errc::window_too_wide);
    EXPECT_EQ(code_of([&] { count_ratio(r, 2, Rational(0), Rational(1)); }), Errc::non_positive_window);
    EXPECT_EQ(count_ratio(r, 10000, Rational(1), Rational(3)), 372u);
}

TEST(CountRatio, MatchesScanOracle) {
    for (std::int64_t d : {2, 3, 5, 13}) {
        const Ring r = make_ring(d);
        for (const auto& [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 5}, {1, 3}}) {
            const double eta2 = std::pow(QuadRational(fundamental_unit(r)).to_double(), 2);
            if (static_cast<double>(b) / a >= eta2) continue;
            EXPECT_EQ(count_ratio(r, 20000, Rational(a), Rational(b)), oracle::ratio_primes(d, 20000, a, b).size())
                << d << " (" << a << ", " << b << "]";
        }
    }
}

TEST(CountRatio, WindowEquivariance) {
    for (std::int64_t d : {2, 3, 5}) {
        const Ring r = make_ring(d);
        const QuadRational s(*compute_invariants(r).tp_ratio_scale);
        const QuadRational a(r, Rational(6, 5)), b(r, Rational(12, 5));
        const auto base = count_ratio(r, 30000, a, b);
        EXPECT_GT(base, 0u);
        EXPECT_EQ(count_ratio(r, 30000, a * s, b * s), base) << d;
        EXPECT_EQ(count_ratio(r, 30000, a / s, b / s), base) << d;
    }
}

TEST(CountRatio, MonotoneAndThreadIndependent) {
    const Ring r = make_ring(2);
    std::uint64_t prev = 0;
    for (std::uint64_t x = 2; x <= 20000; x += 997) {
        const auto c = count_ratio(r, x, Rational(1), Rational(3));
        EXPECT_GE(c, prev);
        prev = c;
    }
    EXPECT_EQ(count_ratio(r, 100000, Rational(1), Rational(3), 8), count_ratio(r, 100000, Rational(1), Rational(3), 1));
}
