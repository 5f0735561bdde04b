#include <catch2/catch_amalgamated.hpp>

#include "pingpong/matrix2.hpp"
#include "pingpong/model.hpp"
#include "pingpong/rational.hpp"
#include "pingpong/word.hpp"

using namespace pingpong;

TEST_CASE("rational arithmetic is exact") {
    Rational half(1, 2);
    REQUIRE(half + half == Rational(1));
    REQUIRE(Rational(7, 2) - Rational(3) == half);
    REQUIRE(Rational(2, 4) == half);
    REQUIRE(Rational(-3, -6) == half);
    REQUIRE(Rational(5, 2).ceil() == 3);
    REQUIRE(Rational(-5, 2).ceil() == -2);
    REQUIRE(Rational(4, 2).ceil() == 2);
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(7, 3).str() == "7/3");
}

TEST_CASE("dist propagates the approximate flag") {
    Dist a = Dist::exact(Rational(3, 2));
    Dist b = Dist::approximate(1.5);
    REQUIRE((a + a).is_exact());
    REQUIRE((a + b).is_approximate());
    REQUIRE(Dist::infinity() > a);
    REQUIRE((3 * a) == Dist::exact(Rational(9, 2)));
}

TEST_CASE("free reduction") {
    Model f2 = Model::free_group(2);
    REQUIRE(f2.print(f2.parse("a a^-1 b")) == "b");
    REQUIRE(f2.parse("abb^-1a^-1").is_identity());
    REQUIRE(f2.print(f2.parse("aaab")) == "a^3b");
    REQUIRE(f2.print(f2.inverse(f2.parse("ab"))) == "b^-1a^-1");
    REQUIRE(f2.length(f2.parse("a^3b")) == 4);
    // idempotence
    GroupElement g = f2.parse("aba^-1b^-1");
    REQUIRE(f2.element(g.word) == g);
}

TEST_CASE("free product reduction mod factor orders") {
    Model psl = Model::free_product({2, 3});
    REQUIRE(psl.parse("ss").is_identity());
    REQUIRE(psl.parse("tttt") == psl.parse("t"));
    REQUIRE(psl.print(psl.parse("t^-1")) == "t^2");
    REQUIRE(psl.print(psl.parse("stt")) == "st^2");
    REQUIRE(psl.length(psl.parse("st^2s")) == 3);
    REQUIRE(psl.parse("st^2sst^1t^2").word.size() == 2);  // st^2 s s t^3 -> st^2
    REQUIRE(psl.print(psl.inverse(psl.parse("st"))) == "t^2s");
}

TEST_CASE("parse errors carry a position") {
    Model f2 = Model::free_group(2);
    REQUIRE_THROWS_AS(f2.parse("axb"), parse_error);
    REQUIRE_THROWS_AS(f2.parse("a^"), parse_error);
    Model psl = Model::free_product({2, 3});
    REQUIRE_THROWS_AS(psl.parse("ab"), parse_error);
}

TEST_CASE("exact matrices: products, powers, projective identity") {
    Model psl = Model::free_product({2, 3});
    REQUIRE(psl.matrix_eval(psl.identity()).is_projective_identity());
    Mat2 s = psl.matrix_eval(psl.parse("s"));
    REQUIRE((s * s).is_projective_identity());
    Mat2 t = psl.matrix_eval(psl.parse("t"));
    REQUIRE((t * t * t).is_projective_identity());
    REQUIRE_FALSE((t * t).is_projective_identity());

    // st has infinite order: |trace| >= 2 and no small power is the identity
    Mat2 st = psl.matrix_eval(psl.parse("st"));
    long long tr = st.trace();
    REQUIRE((tr >= 2 || tr <= -2));
    for (int n = 1; n <= 12; ++n)
        REQUIRE_FALSE(mat2_power(st, n).is_projective_identity());
}

TEST_CASE("matrix evaluation is a homomorphism up to sign") {
    Model psl = Model::free_product({2, 3});
    auto elts = psl.enumerate_elements(3);
    for (const auto& g : elts)
        for (const auto& h : elts) {
            Mat2 lhs = psl.matrix_eval(psl.mul(g, h));
            Mat2 rhs = psl.matrix_eval(g) * psl.matrix_eval(h);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("shortlex candidate order") {
    Model psl = Model::free_product({2, 3});
    auto elts = psl.enumerate_elements(2);
    REQUIRE(psl.print(elts[0]) == "1");
    REQUIRE(psl.print(elts[1]) == "s");
    REQUIRE(psl.print(elts[2]) == "t");
    REQUIRE(psl.print(elts[3]) == "t^2");
    REQUIRE(psl.print(elts[4]) == "st");
    for (std::size_t i = 1; i < elts.size(); ++i)
        REQUIRE(psl.shortlex_less(elts[i - 1], elts[i]));
}

TEST_CASE("random elements are deterministic and have the requested length") {
    Model f2 = Model::free_group(2);
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL}) {
        GroupElement a = f2.random_element(5, seed);
        GroupElement b = f2.random_element(5, seed);
        REQUIRE(a == b);
        REQUIRE(f2.length(a) == 5);
    }
    Model psl = Model::free_product({2, 3});
    GroupElement g = psl.random_element(4, 7);
    REQUIRE(psl.length(g) == 4);
    REQUIRE(g.word.size() == 4);  // alternating syllables
    REQUIRE(psl.random_element(0, 3).is_identity());
}
