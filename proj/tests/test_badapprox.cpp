#include "nicf/badapprox.hpp"
#include "nicf/cf.hpp"
#include "nicf/constants.hpp"
#include "nicf/errors.hpp"
#include "nicf/expr.hpp"
#include "nicf/realg.hpp"
#include "nicf/voronoi.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace nicf;

namespace {

mpq_class horner(const RationalPoly& f, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * x + f[k];
    return acc;
}

mpq_class power(const mpq_class& x, std::size_t m) {
    mpq_class r = 1;
    for (std::size_t k = 0; k < m; ++k) r *= x;
    return r;
}

mpq_class ratio(long a, long b) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

Ball value(const Expr& e, FieldId f) { return RefinableComplex(e, f).eval_adaptive(256); }

}  // namespace

TEST_CASE("certificate for diag(1, -3)") {
    Certificate c = certify(HermitianForm::diag(1, -3, FieldId(1)));
    CHECK(c.anisotropic);
    CHECK(c.delta == -3);
    CHECK(c.validity == Validity::ProvedEuclidean);
    REQUIRE(c.beta);
    CHECK(std::abs(c.eta->re_double() - 4.46410161513775) < 1e-12);
    CHECK(std::abs(c.beta->re_double() - 7.22749793069808) < 1e-12);
    CHECK(std::abs(c.z_min->re_double() - 0.153365032414492) < 1e-12);
    CHECK(std::abs(c.cprime->re_double() - 0.00563483482326589) < 1e-14);
    CHECK(to_json(c) ==
          "{\"d\":1,\"form\":[1,\"0\",-3],\"anisotropic\":true,\"delta\":-3,\"eta\":4.46410161513775,"
          "\"beta\":7.22749793069808,\"z_min\":0.153365032414492,\"cprime\":0.00563483482326589,"
          "\"validity\":\"proved-euclidean\"}");
}

TEST_CASE("cprime is decreasing and matches its closed form") {
    for (long d : testing::kEuclidean) {
        FieldId f(d);
        double prev = 1e9;
        for (int b = 1; b <= 40; ++b) {
            double v = cprime(Ball::from_integer(b, 128), f).re_double();
            CHECK(v < prev);
            prev = v;
            double r = std::sqrt(rho(f).square().get_d());
            double alpha = alpha_ball(f).re_double();
            CHECK(alpha >= 2);
            CHECK(std::abs(v * alpha * (b + 1) * (b + 1 + r) - 1) < 1e-13);
        }
    }
}

TEST_CASE("isotropic and non-Euclidean certificates") {
    Certificate iso = certify(HermitianForm::diag(1, -4, FieldId(1)));
    CHECK_FALSE(iso.anisotropic);
    CHECK(iso.validity == Validity::Refused);
    CHECK_FALSE(iso.cprime);
    REQUIRE(iso.witness);
    CHECK(iso.witness->norm() == 4);
    CHECK(witness_string(iso) == "4=N(2)");
    Certificate ext = certify(HermitianForm::diag(1, -3, FieldId(5)));
    CHECK(ext.anisotropic);
    CHECK(ext.validity == Validity::ProvedExistenceOnly);
    CHECK_FALSE(ext.beta);
    CHECK(std::string(validity_name(ext.validity)) == "proved-existence-only");
    CHECK_THROWS_AS(certify(HermitianForm::diag(1, 3, FieldId(1))), DomainError);
}

TEST_CASE("palindromic lifts") {
    CHECK(palindromic_lift({-2, 0, 1}).f == RationalPoly{1, 0, 0, 0, 1});
    CHECK(palindromic_lift({-5, 1}).f == RationalPoly{1, -5, 1});
    CHECK(palindromic_lift({0, 1}).f == RationalPoly{1, 0, 1});
    CHECK(palindromic_lift({-5, 1}).m == 1);
    CHECK_FALSE(palindromic_lift({-5, 1}).irreducibility_verified);
    CHECK(is_palindromic({1, 2, 1}));
    CHECK_FALSE(is_palindromic({1, 2, 3}));
}

TEST_CASE("palindromic lifts agree with t^m g(t + 1/t)") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        RationalPoly g(testing::uniform(rng, 2, 7));
        for (auto& c : g) c = ratio(testing::uniform(rng, -20, 20), testing::uniform(rng, 1, 9));
        if (g.back() == 0) g.back() = 1;
        PalindromicWitness p = palindromic_lift(g);
        CHECK(p.m == g.size() - 1);
        CHECK(p.f.size() == 2 * p.m + 1);
        CHECK(is_palindromic(p.f));
        for (int k = 0; k < 3; ++k) {
            mpq_class t = ratio(testing::uniform(rng, -50, 50), testing::uniform(rng, 1, 13));
            if (t == 0) continue;
            CHECK(horner(p.f, t) == power(t, p.m) * horner(g, t + 1 / t));
        }
    }
}

TEST_CASE("lifts through a root of g vanish on the unit circle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        mpq_class u = ratio(testing::uniform(rng, -19, 19), 10);
        RationalPoly g = {-u, 1};
        RationalPoly h = {ratio(testing::uniform(rng, -5, 5), 3), 1};
        RationalPoly gh = {g[0] * h[0], g[0] * h[1] + g[1] * h[0], g[1] * h[1]};
        FieldId f(testing::kEuclidean[i % 5]);
        PalindromicWitness p = palindromic_lift(gh, Expr::rational(u), f);
        REQUIRE(p.w.size() == 2);
        CHECK(is_palindromic(p.f));
        for (const Expr& w : p.w) {
            Ball b = value(w, f);
            CHECK(evaluate(p.f, b).contains_zero());
            CHECK(std::abs(std::hypot(b.re_double(), b.im_double()) - 1) < 1e-15);
        }
    }
    CHECK_THROWS_AS(palindromic_lift({-2, 0, 1}, Expr::integer(1), FieldId(1)), DomainError);
}

TEST_CASE("unit circle points") {
    FieldId g(1);
    Ball w0 = value(unit_circle_algebraic(Expr::integer(0), 1, g), g);
    CHECK(w0.contains(0, 1));
    Ball w1 = value(unit_circle_algebraic(Expr::integer(1), -1, g), g);
    CHECK(std::abs(w1.re_double() - 0.5) < 1e-15);
    CHECK(std::abs(w1.im_double() + std::sqrt(3.0) / 2) < 1e-15);
    Ball w5 = value(unit_circle_algebraic(parse_expr("(sqrt(5)-1)/2"), 1, g), g);
    std::complex<double> ref = std::polar(1.0, 2 * std::numbers::pi / 5);
    CHECK(std::abs(w5.re_double() - ref.real()) < 1e-15);
    CHECK(std::abs(w5.im_double() - ref.imag()) < 1e-15);
    CHECK_THROWS_AS(unit_circle_algebraic(Expr::integer(2), 1, g), DomainError);
    CHECK_THROWS_AS(unit_circle_algebraic(Expr::integer(3), 1, g), DomainError);
    CHECK_THROWS_AS(unit_circle_algebraic(parse_expr("i"), 1, g), DomainError);
}

TEST_CASE("circle forms") {
    FieldId g(1);
    HermitianForm H = circle_form(KElement(QuadInt(0, 0, g)), 3);
    CHECK(H == HermitianForm::diag(1, -3, g));
    KElement t(QuadInt(1, 2, g), 3);
    mpq_class n(5, 7);
    HermitianForm G = circle_form(t, n);
    Circle c = zero_circle(G);
    CHECK(c.center == t);
    CHECK(c.radius2 == n);
}

TEST_CASE("constructions") {
    FieldId g(1);
    KElement zero(QuadInt(0, 0, g));
    Construction c3 = construct_badly_approximable(zero, 3, parse_expr("(sqrt(5)-1)/2"), 1, g);
    Expansion e = expand(RefinableComplex(c3.expr, g), 10);
    CHECK(bracket(e) == "[1+2i; -1+i, -3, 2+2i, -1+3i, -2, -2i, 2+2i, 3-i, -2+2i]");
    CHECK(c3.certificate.validity == Validity::ProvedEuclidean);

    Construction c6 = construct_badly_approximable(zero, 6, parse_expr("2*root(3,2)/sqrt(6)"), 1, g);
    Ball z6 = value(c6.expr, g);
    CHECK(z6.overlaps(value(parse_expr("root(3,2)+sqrt(root(3,4)-6)"), g)));
    CHECK(c6.certificate.anisotropic);

    CHECK_THROWS_AS(construct_badly_approximable(zero, 4, parse_expr("1/2"), 1, g), DomainError);
    CHECK_THROWS_AS(construct_badly_approximable(zero, 2, parse_expr("1/2"), 1, g), DomainError);
}

TEST_CASE("constructed points obey the certified bounds") {
    FieldId g(1);
    KElement zero(QuadInt(0, 0, g));
    Construction c = construct_badly_approximable(zero, 3, parse_expr("1/3"), -1, g);
    Expansion e = expand(RefinableComplex(c.expr, g), 300);
    REQUIRE(c.certificate.beta);
    double beta = c.certificate.beta->re_double(), cp = c.certificate.cprime->re_double();
    for (std::size_t n = 0; n < e.size(); ++n) {
        CHECK(std::sqrt(e.quotient(n).norm().get_d()) <= beta);
        CHECK(e.diagnostics()[n].approx_error >= cp);
    }
}
