#include "nicf/errors.hpp"
#include "nicf/qring.hpp"
#include "support.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace nicf;
using testing::kEuclidean;

TEST_CASE("field ids") {
    CHECK_THROWS_AS(FieldId(4), InvalidField);
    CHECK_THROWS_AS(FieldId(0), InvalidField);
    CHECK_NOTHROW(FieldId(5));
    CHECK_THROWS_AS(FieldId(5).require_euclidean(), InvalidField);
    for (long d : kEuclidean) CHECK(FieldId(d).is_euclidean());
    CHECK(FieldId(3).omega_norm() == 1);
    CHECK(FieldId(11).omega_norm() == 3);
    CHECK(FieldId(2).discriminant() == -8);
    CHECK(FieldId(7).discriminant() == -7);
}

TEST_CASE("w satisfies its minimal polynomial") {
    for (long d : kEuclidean) {
        FieldId f(d);
        QuadInt w = QuadInt::omega(f);
        QuadInt lhs = w * w - w * mpz_class(f.omega_trace()) + QuadInt::integer(f.omega_norm(), f);
        CHECK(lhs.is_zero());
    }
}

TEST_CASE("ring operations agree with the complex embedding") {
    std::mt19937_64 rng(11);
    for (long d : kEuclidean) {
        FieldId f(d);
        for (int i = 0; i < 300; ++i) {
            QuadInt x = testing::random_int(rng, f, 1000), y = testing::random_int(rng, f, 1000);
            std::complex<double> cx = testing::to_c(x), cy = testing::to_c(y);
            CHECK(std::abs(testing::to_c(x * y) - cx * cy) <= 1e-9 * (1 + std::abs(cx * cy)));
            CHECK(std::abs(testing::to_c(x + y) - (cx + cy)) <= 1e-9);
            CHECK(std::abs(testing::to_c(x.conj()) - std::conj(cx)) <= 1e-9);
            CHECK(std::abs(x.norm().get_d() - std::norm(cx)) <= 1e-9 * (1 + std::norm(cx)));
            CHECK((x * y).norm() == x.norm() * y.norm());
            CHECK(x.twice_real() == (x + x.conj()).a());
        }
    }
}

TEST_CASE("pretty and canonical text") {
    FieldId g(1), e(3);
    CHECK(QuadInt(1, 2, g).pretty() == "1+2i");
    CHECK(QuadInt(0, -2, g).pretty() == "-2i");
    CHECK(QuadInt(3, -1, g).pretty() == "3-i");
    CHECK(QuadInt(-3, 0, g).pretty() == "-3");
    CHECK(QuadInt(2, -1, e).pretty() == "2-w");
    CHECK(QuadInt(2, -1, e).to_string() == "2-1*w");
    CHECK(QuadInt::parse("-w", e) == QuadInt(0, -1, e));
    CHECK(QuadInt::parse("2-5*w", e) == QuadInt(2, -5, e));
    CHECK(QuadInt::parse("3", e) == QuadInt(3, 0, e));
    CHECK(QuadInt::parse("1+2i", g) == QuadInt(1, 2, g));
    CHECK_THROWS_AS(QuadInt::parse("1+", g), ParseError);
}

TEST_CASE("canonical text round-trips") {
    std::mt19937_64 rng(5);
    for (long d : kEuclidean) {
        FieldId f(d);
        for (int i = 0; i < 200; ++i) {
            QuadInt x = testing::random_int(rng, f, 100000);
            CHECK(QuadInt::parse(x.to_string(), f) == x);
            CHECK(QuadInt::parse(x.pretty(), f) == x);
        }
    }
}

TEST_CASE("field mismatch") {
    CHECK_THROWS_AS(QuadInt(1, 1, FieldId(1)) + QuadInt(1, 1, FieldId(2)), FieldMismatch);
}

TEST_CASE("KElement normal form and inverses") {
    FieldId f(7);
    KElement x(QuadInt(4, 6, f), 8);
    CHECK(x.den() == 4);
    CHECK(x.num() == QuadInt(2, 3, f));
    CHECK(KElement(QuadInt(2, 2, f), -4) == KElement(QuadInt(-1, -1, f), 2));
    CHECK_THROWS_AS(KElement(QuadInt(0, 0, f)).inverse(), DivisionByZero);

    std::mt19937_64 rng(3);
    for (long d : kEuclidean) {
        FieldId g(d);
        KElement one(QuadInt(1, 0, g));
        for (int i = 0; i < 300; ++i) {
            KElement a = testing::random_k(rng, g, 50, 30), b = testing::random_k(rng, g, 50, 30);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(a * a.inverse() == one);
            CHECK((a / b) * b == a);
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK(a.norm() == testing::norm_form(a.coord_a(), a.coord_b(), d));
            CHECK(a - b + b == a);
        }
    }
}

TEST_CASE("squarefree") {
    CHECK(is_squarefree(1));
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
    CHECK_FALSE(is_squarefree(49));
}
