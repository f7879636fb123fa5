#include "nicf/errors.hpp"
#include "nicf/expr.hpp"
#include "nicf/realg.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>

using namespace nicf;
using C = std::complex<long double>;

namespace {

C oracle(const Expr& e, long d) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Integer: return C(e.value().get_d());
        case K::ImagUnit: return C(0, 1);
        case K::Omega: {
            long double s = std::sqrt((long double)d);
            return d % 4 == 3 ? C(0.5L, s / 2) : C(0, s);
        }
        case K::Sqrt: {
            C x = oracle(e.lhs(), d);
            if (x.imag() == 0) x = C(x.real(), 0.0L);
            return std::sqrt(x);
        }
        case K::Root: return C(std::pow((long double)e.value().get_d(), 1.0L / e.root_index()));
        case K::UnitRoot:
            if (mpq_class r = 4 * e.value(); r.get_den() == 1) {
                static const C quarter[] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
                return quarter[mpz_class(r.get_num() % 4).get_si()];
            }
            return std::polar(1.0L, 2 * std::numbers::pi_v<long double> * (long double)e.value().get_d());
        case K::Add: return oracle(e.lhs(), d) + oracle(e.rhs(), d);
        case K::Sub: return oracle(e.lhs(), d) - oracle(e.rhs(), d);
        case K::Mul: return oracle(e.lhs(), d) * oracle(e.rhs(), d);
        case K::Div: return oracle(e.lhs(), d) / oracle(e.rhs(), d);
        case K::Neg: return -oracle(e.lhs(), d);
    }
    return {};
}

mpq_class q(long a, long b) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

Expr random_tree(std::mt19937_64& rng, int depth) {
    long pick = testing::uniform(rng, 0, depth > 0 ? 9 : 4);
    switch (pick) {
        case 0: return Expr::integer(testing::uniform(rng, -9, 9));
        case 1: return Expr::omega();
        case 2: return Expr::unit_root(q(testing::uniform(rng, 0, 11), 12));
        case 3: return Expr::root(testing::uniform(rng, 2, 4), q(testing::uniform(rng, 1, 20), testing::uniform(rng, 1, 5)));
        case 4: return Expr::rational(q(testing::uniform(rng, -30, 30), testing::uniform(rng, 1, 7)));
        case 5: return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
        case 6: return random_tree(rng, depth - 1) - random_tree(rng, depth - 1);
        case 7: return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
        case 8: return Expr::sqrt(random_tree(rng, depth - 1));
        default: return random_tree(rng, depth - 1) / (random_tree(rng, depth - 1) + Expr::integer(20));
    }
}

}  // namespace

TEST_CASE("sqrt(3)*e(1/5) over d = 1") {
    auto z = RefinableComplex::parse("sqrt(3)*e(1/5)", FieldId(1));
    CHECK_FALSE(z.is_exact());
    Ball b = z.eval_adaptive();
    C ref = std::sqrt(3.0L) * std::polar(1.0L, 2 * std::numbers::pi_v<long double> / 5);
    CHECK(std::abs(b.re_double() - (double)ref.real()) < 1e-15);
    CHECK(std::abs(b.im_double() - (double)ref.imag()) < 1e-15);
    CHECK(std::abs(b.im_double() - 1.6472782070926638) < 1e-15);
    CHECK(b.rad_double() < 1e-35);
}

TEST_CASE("exact detection") {
    FieldId g(1), f(2);
    auto r = RefinableComplex::parse("10/3", g);
    REQUIRE(r.is_exact());
    CHECK(*r.exact() == KElement::rational(mpq_class(10, 3), g));
    auto s = RefinableComplex::parse("(1+2*i)/(3-i)", g);
    REQUIRE(s.is_exact());
    CHECK(*s.exact() == KElement(QuadInt(1, 2, g)) / KElement(QuadInt(3, -1, g)));
    CHECK(RefinableComplex::parse("w*w", f).is_exact());
    CHECK_FALSE(RefinableComplex::parse("i", f).is_exact());
    CHECK_FALSE(RefinableComplex::parse("sqrt(4)", g).is_exact());
    CHECK_THROWS_AS(RefinableComplex::parse("1/(w-w)", f), DivisionByZero);
}

TEST_CASE("parse errors carry offsets") {
    auto offset_of = [](const char* text) -> long {
        try {
            parse_expr(text);
        } catch (const ParseError& e) {
            return (long)e.offset();
        }
        return -1;
    };
    CHECK(offset_of("sqrt(") == 5);
    CHECK(offset_of("1+*2") == 2);
    CHECK(offset_of("foo(2)") == 0);
    CHECK(offset_of("2)") == 1);
    CHECK(offset_of("e(1/0)") >= 2);
    CHECK(offset_of("1+2") == -1);
}

TEST_CASE("printing round-trips") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        Expr e = random_tree(rng, 3);
        INFO(e.to_string(), " -> ", parse_expr(e.to_string()).to_string());
        CHECK(parse_expr(e.to_string()) == e);
    }
}

TEST_CASE("balls enclose an independent long double evaluation") {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int i = 0; i < 600; ++i) {
        long d = testing::kEuclidean[i % 5];
        Expr e = random_tree(rng, 3);
        RefinableComplex z(e, FieldId(d));
        auto lo = z.eval(128), hi = z.eval(512);
        if (!lo || !hi) continue;
        ++checked;
        CHECK(lo->overlaps(*hi));
        CHECK(hi->rad_double() <= lo->rad_double());
        C ref = oracle(e, d);
        double scale = 1 + (double)std::abs(ref);
        CHECK(std::abs(hi->re_double() - (double)ref.real()) <= 1e-12 * scale);
        CHECK(std::abs(hi->im_double() - (double)ref.imag()) <= 1e-12 * scale);
    }
    CHECK(checked > 400);
}

TEST_CASE("exact elements embed consistently") {
    std::mt19937_64 rng(29);
    for (long d : testing::kEuclidean) {
        FieldId f(d);
        for (int i = 0; i < 100; ++i) {
            KElement x = testing::random_k(rng, f, 1000, 97);
            Ball b = ball_of(x, 128);
            CHECK(b.overlaps(embed(x).eval_adaptive()));
            auto c = testing::to_c(x);
            CHECK(std::abs(b.re_double() - c.real()) < 1e-12);
            CHECK(std::abs(b.im_double() - c.imag()) < 1e-12);
            CHECK(*is_exact_in_K(expr_of(x), f) == x);
        }
    }
}

TEST_CASE("near-zero divisors") {
    auto z = RefinableComplex::parse("1/(sqrt(2)*sqrt(2)-2)", FieldId(1));
    setenv("NICF_PRECISION_CAP", "1024", 1);
    CHECK(precision_cap() == 1024);
    CHECK_THROWS_AS(z.eval_adaptive(), DivisionNearZero);
    unsetenv("NICF_PRECISION_CAP");
    CHECK(precision_cap() == (1L << 20));
}

TEST_CASE("guard bits") {
    auto z = RefinableComplex::parse("sqrt(3)*e(1/5)", FieldId(1));
    CHECK(z.guard_bits() == 2 * (long)z.expr().node_count());
}
