#include <gtest/gtest.h>

#include <random>

#include "quadring/quadring.hpp"

using namespace quadring;

namespace {

QuadInt q(const Ring& r, const char* text) { return parse_quad_int(r, text); }

Angle rad(int num, int den) { return Angle::from_radians(Rational(num, den)); }

QuadRational fe(const Ring& r, const char* text) { return parse_field_element(r, text); }

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::undecidable;
}

void expect_sound(const QuotientWitness& w) {
    EXPECT_TRUE(is_prime_element(w.numerator.element));
    EXPECT_TRUE(is_prime_element(w.denominator.element));
    std::vector<std::string> log;
    EXPECT_TRUE(verify_witness(w, &log));
    EXPECT_FALSE(log.empty());
}

} // namespace

TEST(Canonicalize, QuarterTurn) {
    const Ring g = make_ring(-1);
    const AnnularSector s{Angle::pi_times(Rational(3, 4)), Angle::pi_times(1), Rational(1, 2), Rational(2)};
    const auto c = canonicalize_target(g, s);
    const auto& red = std::get<AnnularSector>(c.reduced);
    EXPECT_EQ(red.lo, Angle::pi_times(Rational(1, 4)));
    EXPECT_EQ(red.hi, Angle::pi_times(Rational(1, 2)));
    EXPECT_EQ(c.unit, q(g, "i"));
}

TEST(Canonicalize, RealIntervals) {
    const Ring r = make_ring(2);
    const auto neg = canonicalize_target(r, RealInterval{QuadRational(r, -3), QuadRational(r, -2)});
    const auto& n = std::get<RealInterval>(neg.reduced);
    EXPECT_EQ(n.a, QuadRational(r, 2));
    EXPECT_EQ(n.b, QuadRational(r, 3));
    EXPECT_EQ(neg.unit, QuadInt::integer(r, -1));

    const auto wide = canonicalize_target(r, RealInterval{QuadRational(r, 1), QuadRational(r, 100)});
    const auto& w = std::get<RealInterval>(wide.reduced);
    EXPECT_EQ(w.a, QuadRational(r, 1));
    EXPECT_EQ(w.b, fe(r, "2+sqrt(2)"));  // (1 + eta^2)/2
    EXPECT_EQ(code_of([&] { canonicalize_target(r, RealInterval{QuadRational(r, 2), QuadRational(r, 2)}); }),
              Errc::empty_after_reduction);
}

TEST(Canonicalize, RoundTripLandsInOriginalSector) {
    const Ring g = make_ring(-3);
    for (int k = 0; k < 12; ++k) {
        const Angle lo = Angle::pi_times(Rational(k, 6)) + rad(1, 10);
        const AnnularSector s{lo, lo + rad(3, 10), Rational(1, 2), Rational(3, 2)};
        const auto w = find_quotient_sector(g, s);
        expect_sound(w);
    }
}

TEST(FindSector, Examples) {
    const Ring g = make_ring(-1);
    const AnnularSector s{rad(1, 10), rad(2, 10), Rational(9, 10), Rational(11, 10)};
    const auto w = find_quotient_sector(g, s);
    expect_sound(w);
    EXPECT_EQ(w.numerator.element, q(g, "15+2i"));
    EXPECT_EQ(w.denominator.element, q(g, "16-i"));

    // a small sector around 1, rotated from (-eps, eps)
    const AnnularSector around_one{rad(-1, 100), rad(1, 100), Rational(99, 100), Rational(101, 100)};
    expect_sound(find_quotient_sector(g, around_one));

    const AnnularSector tiny{Angle::zero(), rad(1, 1000), Rational(1), Rational(10001, 10000)};
    EXPECT_EQ(code_of([&] { find_quotient_sector(g, tiny, {10, 1}); }), Errc::cap_exceeded);
    EXPECT_EQ(code_of([&] { find_quotient_sector(make_ring(2), s); }), Errc::real_ring_unsupported);
    const AnnularSector empty{rad(1, 10), rad(1, 10), Rational(1), Rational(2)};
    EXPECT_EQ(code_of([&] { find_quotient_sector(g, empty); }), Errc::degenerate_sector);
}

TEST(FindSector, RandomTargetsAreSoundAndThreadIndependent) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi), modulus(0.2, 5);
    for (std::int64_t d : {-1, -2, -3, -7, -11, -5}) {
        const Ring r = make_ring(d);
        for (int i = 0; i < 8; ++i) {
            const Rational t = detail::tidy(angle(rng)), m = detail::tidy(modulus(rng));
            const AnnularSector s{Angle::from_radians(t), Angle::from_radians(t + Rational(1, 20)), m * Rational(19, 20),
                                  m * Rational(21, 20)};
            const auto w1 = find_quotient_sector(r, s, {10'000'000, 1});
            expect_sound(w1);
            const auto w4 = find_quotient_sector(r, s, {10'000'000, 4});
            EXPECT_EQ(w1.numerator.element, w4.numerator.element);
            EXPECT_EQ(w1.denominator.element, w4.denominator.element);
            EXPECT_EQ(w1.search_cost, w4.search_cost);
            EXPECT_EQ(w1.transcript, w4.transcript);
        }
    }
}

TEST(FindSectorCongruent, Examples) {
    const Ring g = make_ring(-1);
    const QuadInt one = QuadInt::one(g);
    const auto odd = make_congruence_class(one, q(g, "1+i"));
    const AnnularSector near_one{rad(-1, 20), rad(1, 20), Rational(9, 10), Rational(11, 10)};
    const auto w = find_quotient_sector_congruent(near_one, odd, odd);
    expect_sound(w);
    EXPECT_TRUE(verify_witness(w, odd, odd));
    EXPECT_EQ(norm(w.numerator.element) % 2, 1);

    const auto c1 = make_congruence_class(one, QuadInt::integer(g, 3));
    const auto c2 = make_congruence_class(QuadInt::integer(g, 2), QuadInt::integer(g, 3));
    const AnnularSector s{Angle::zero(), rad(1, 2), Rational(1), Rational(2)};
    const auto w3 = find_quotient_sector_congruent(s, c1, c2);
    EXPECT_TRUE(verify_witness(w3, c1, c2));
    EXPECT_TRUE(congruent_mod(w3.numerator.element, one, QuadInt::integer(g, 3)));
    EXPECT_TRUE(congruent_mod(w3.denominator.element, QuadInt::integer(g, 2), QuadInt::integer(g, 3)));

    const auto bad = make_congruence_class(QuadInt::zero(g), QuadInt::integer(g, 3));
    EXPECT_EQ(code_of([&] { find_quotient_sector_congruent(s, bad, c1); }), Errc::not_coprime);
}

TEST(FindInterval, Examples) {
    const Ring r = make_ring(2);
    const RealInterval iv{fe(r, "1.4"), fe(r, "1.5")};
    const auto w = find_quotient_interval(r, iv);
    expect_sound(w);
    EXPECT_EQ(w.numerator.element, conjugate(w.denominator.element));
    EXPECT_EQ(w.numerator.element, q(r, "25+3*sqrt(2)"));

    const auto neg = find_quotient_interval(r, RealInterval{fe(r, "-1.5"), fe(r, "-1.4")});
    expect_sound(neg);
    EXPECT_EQ(neg.numerator.element, -conjugate(neg.denominator.element));

    EXPECT_EQ(code_of([&] { find_quotient_interval(r, RealInterval{fe(r, "2"), fe(r, "2")}); }), Errc::empty_after_reduction);
}

TEST(FindInterval, WideAndStraddlingIntervals) {
    for (std::int64_t d : {2, 3, 5, 6, 7}) {
        const Ring r = make_ring(d);
        for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
                 {"1", "100"}, {"-1", "1"}, {"-7", "-6.9"}, {"0.001", "0.002"}, {"999", "1001"}}) {
            const auto w = find_quotient_interval(r, RealInterval{fe(r, a), fe(r, b)});
            expect_sound(w);
        }
    }
}

TEST(InertFallback, Examples) {
    const Ring r = make_ring(2);
    const auto w = inert_rational_fallback(r, RealInterval{fe(r, "0.5"), fe(r, "0.7")});
    expect_sound(w);
    EXPECT_EQ(w.numerator.element, QuadInt::integer(r, 3));
    EXPECT_EQ(w.denominator.element, QuadInt::integer(r, 5));
    expect_sound(inert_rational_fallback(r, RealInterval{fe(r, "0.99"), fe(r, "1.01")}));
    EXPECT_EQ(code_of([&] { inert_rational_fallback(r, RealInterval{fe(r, "2"), fe(r, "2")}); }),
              Errc::empty_after_reduction);
}

TEST(InertFallback, AgreesOnSolvabilityWithProofMethod) {
    const Ring r = make_ring(2);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> start(300, 2900);
    for (int i = 0; i < 20; ++i) {
        const Rational a(start(rng), 1000);
        const RealInterval iv{QuadRational(r, a), QuadRational(r, a + Rational(1, 100))};
        expect_sound(find_quotient_interval(r, iv));
        expect_sound(inert_rational_fallback(r, iv));
    }
}

TEST(Approximate, Examples) {
    const Ring g = make_ring(-1);
    const auto w = approximate(g, ComplexPoint{1, 0}, Rational(1, 100));
    expect_sound(w);
    const QuadRational quo = QuadRational(w.numerator.element) / QuadRational(w.denominator.element);
    EXPECT_LT(to_double(quo.x() - 1) * to_double(quo.x() - 1) + to_double(quo.y() * quo.y()), 1e-4);

    const Ring r = make_ring(2);
    const auto s = approximate(r, fe(r, "sqrt(2)"), Rational(1, 1000));
    expect_sound(s);
    const QuadRational qs = QuadRational(s.numerator.element) / QuadRational(s.denominator.element);
    EXPECT_LT(std::abs(qs.to_double() - std::sqrt(2.0)), 1e-3);

    EXPECT_EQ(code_of([&] { approximate(g, ComplexPoint{1, 0}, Rational(0)); }), Errc::precondition_violated);
    EXPECT_EQ(code_of([&] { approximate(g, ComplexPoint{0, 0}, Rational(1, 10)); }), Errc::zero_target);
}

TEST(Approximate, ComplexTargetsInOtherRings) {
    for (std::int64_t d : {-2, -3, -7}) {
        const Ring r = make_ring(d);
        for (const auto& c : {ComplexPoint{Rational(-3, 2), Rational(7, 10)}, ComplexPoint{Rational(1, 5), Rational(-4)}}) {
            const auto w = approximate(r, c, Rational(1, 50));
            expect_sound(w);
        }
    }
}
