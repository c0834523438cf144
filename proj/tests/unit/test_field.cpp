#include <doctest.h>

#include <random>
#include <type_traits>

#include "ospcert/errors.hpp"
#include "ospcert/field.hpp"

using namespace ospcert;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    return Rational(num(rng), den(rng));
}

QuadScalar random_quad(std::mt19937_64& rng) { return QuadScalar(random_rational(rng), random_rational(rng)); }

QuadScalar q(long a, long b) { return QuadScalar(Rational(a), Rational(b)); }

}  // namespace

TEST_SUITE("field") {
    TEST_CASE("rational arithmetic examples") {
        CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
        CHECK(Rational(2, 3) * Rational(3, 2) == Rational(1));
        CHECK(Rational(0) + Rational(7, 9) == Rational(7, 9));
        CHECK(scalar_inv(Rational(1, 4)) == Rational(4));
        CHECK_THROWS_AS(scalar_inv(Rational(0)), MathError);
        CHECK_THROWS_AS(Rational(1, 0), MathError);
    }

    TEST_CASE("rationals stay normalized") {
        Rational r(6, -4);
        CHECK(r.num() == -3);
        CHECK(r.den() == 2);
        CHECK(r.to_string() == "-3/2");
        CHECK(Rational(4, 2).to_string() == "2");
        CHECK((Rational(1, 6) + Rational(1, 3)).den() == 2);
    }

    TEST_CASE("rational parsing") {
        CHECK(Rational::parse("-7/21") == Rational(-1, 3));
        CHECK(Rational::parse("12") == Rational(12));
        CHECK_THROWS_AS(Rational::parse("1/0"), MathError);
        CHECK_THROWS_AS(Rational::parse("1.5"), UsageError);
        CHECK_THROWS_AS(Rational::parse(""), UsageError);
        CHECK_THROWS_AS(Rational::parse("--1"), UsageError);
    }

    TEST_CASE("sqrt2 arithmetic examples") {
        CHECK(q(1, 1) + q(1, -1) == QuadScalar(2));
        CHECK(QuadScalar::sqrt2() * QuadScalar::sqrt2() == QuadScalar(2));
        CHECK(q(1, 1) * q(1, -1) == QuadScalar(-1));
        CHECK(scalar_inv(q(1, 1)) == q(-1, 1));
        CHECK_THROWS_AS(scalar_inv(QuadScalar(0)), MathError);
        CHECK(q(3, -2).norm() == Rational(1));
        CHECK(q(1, 2).to_string() == "1+2*sqrt2");
    }

    TEST_CASE("promotion embeds Q into Q(sqrt2)") {
        CHECK(promote(Rational(3, 2)) == QuadScalar(Rational(3, 2), Rational(0)));
        CHECK(promote(Rational(0)).is_zero());
        CHECK(promote(Rational(-5)) == QuadScalar(-5));
        CHECK(demote(QuadScalar(7)) == Rational(7));
        CHECK_THROWS_AS(demote(QuadScalar::sqrt2()), UsageError);
        // Mixing fields without promote() does not compile.
        CHECK_FALSE(std::is_convertible_v<Rational, QuadScalar>);
        CHECK_FALSE(std::is_convertible_v<QuadScalar, Rational>);
    }

    TEST_CASE("field axioms on random triples") {
        std::mt19937_64 rng(2024);
        for (int t = 0; t < 300; ++t) {
            Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));

            QuadScalar x = random_quad(rng), y = random_quad(rng), z = random_quad(rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            if (!x.is_zero()) CHECK(x * x.inverse() == QuadScalar(1));
        }
    }

    TEST_CASE("promote is a ring homomorphism") {
        std::mt19937_64 rng(99);
        for (int t = 0; t < 200; ++t) {
            Rational a = random_rational(rng), b = random_rational(rng);
            CHECK(promote(a * b) == promote(a) * promote(b));
            CHECK(promote(a + b) == promote(a) + promote(b));
        }
    }

    TEST_CASE("zero test is exact") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 500; ++t) {
            QuadScalar x = random_quad(rng);
            CHECK(x.is_zero() == (x.a().is_zero() && x.b().is_zero()));
            if (!x.is_zero()) CHECK_FALSE(x.norm().is_zero());
        }
    }
}
