#include "nicf/cf.hpp"
#include "nicf/realg.hpp"
#include "nicf/voronoi.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace nicf;
using testing::kEuclidean;
using CL = std::complex<long double>;

namespace {

std::vector<std::string> pretty(const Expansion& e) {
    std::vector<std::string> out;
    for (const auto& a : e.quotients()) out.push_back(a.pretty());
    return out;
}

// Partial quotients in long double; stops early near a rounding tie.
std::vector<QuadInt> float_expansion(CL z, FieldId f, std::size_t terms) {
    long double s = std::sqrt((long double)f.d());
    CL w = f.half_basis() ? CL(0.5L, s / 2) : CL(0, s);
    std::vector<QuadInt> out;
    for (std::size_t n = 0; n < terms; ++n) {
        long b0 = std::lround(z.imag() / w.imag());
        long a0 = std::lround(z.real() - b0 * w.real());
        long double best = 1e30L, second = 1e30L;
        QuadInt pick(f);
        for (long a = a0 - 2; a <= a0 + 2; ++a)
            for (long b = b0 - 2; b <= b0 + 2; ++b) {
                long double dist = std::abs(z - (CL(a) + (long double)b * w));
                if (dist < best) {
                    second = best;
                    best = dist;
                    pick = QuadInt(a, b, f);
                } else if (dist < second) {
                    second = dist;
                }
            }
        if (second - best < 1e-9L) break;
        out.push_back(pick);
        CL r = z - (CL(pick.a().get_d()) + (long double)pick.b().get_d() * w);
        if (std::abs(r) < 1e-12L) break;
        z = 1.0L / r;
    }
    return out;
}

// [a_0; a_1, ..., a_n] by backward evaluation.
KElement fold(const std::vector<QuadInt>& a, std::size_t n) {
    KElement x(a[n]);
    for (std::size_t k = n; k-- > 0;) x = KElement(a[k]) + x.inverse();
    return x;
}

}  // namespace

TEST_CASE("golden expansion of sqrt(3)*e(1/5)") {
    auto z = RefinableComplex::parse("sqrt(3)*e(1/5)", FieldId(1));
    Expansion e = expand(z, 10);
    std::vector<std::string> want = {"1+2i", "-1+i", "-3", "2+2i", "-1+3i", "-2", "-2i", "2+2i", "3-i", "-2+2i"};
    CHECK(pretty(e) == want);
    CHECK(bracket(e) == "[1+2i; -1+i, -3, 2+2i, -1+3i, -2, -2i, 2+2i, 3-i, -2+2i]");
    CHECK(e.status() == ExpansionStatus::Running);
    CHECK(e.precision_high_water() >= kStartPrecision);
    CHECK(to_json(e).rfind("{\"d\":1,\"z\":\"sqrt(3)*e(1/5)\",\"quotients\":[[1,2],[-1,1],[-3,0],", 0) == 0);
}

TEST_CASE("rational input terminates") {
    auto z = RefinableComplex::parse("10/3", FieldId(1));
    Expansion e = expand(z, 20);
    CHECK(bracket(e) == "[3; 3]");
    CHECK(e.status() == ExpansionStatus::TerminatedRational);
    CHECK(std::string(status_name(e.status())) == "terminated-rational");
    CHECK(e.precision_high_water() == 0);
    CHECK(convergent(e, 1) == KElement::rational(mpq_class(10, 3), FieldId(1)));
}

TEST_CASE("ball path agrees with a long double expansion") {
    std::mt19937_64 rng(7);
    const char* inputs[] = {"sqrt(2)", "sqrt(3)*e(1/5)", "root(3,2)+w/7", "e(1/7)*sqrt(5)/3", "sqrt(w+2)", "(1+sqrt(7))/(3-w)"};
    for (long d : kEuclidean) {
        FieldId f(d);
        for (const char* text : inputs) {
            auto z = RefinableComplex::parse(text, f);
            Ball b = z.eval_adaptive();
            Expansion e = expand(z, 12);
            auto ref = float_expansion(CL(b.re_double(), b.im_double()), f, 8);
            INFO(d, " ", std::string(text));
            REQUIRE(ref.size() >= 5);
            for (std::size_t n = 0; n < ref.size(); ++n) CHECK(e.quotient(n) == ref[n]);
        }
    }
}

TEST_CASE("exact path agrees with brute-force rounding") {
    std::mt19937_64 rng(13);
    for (long d : kEuclidean) {
        FieldId f(d);
        for (int i = 0; i < 200; ++i) {
            KElement z = testing::random_k(rng, f, 100000, 77777);
            Expansion e = expand_exact(z, 200);
            REQUIRE(e.status() == ExpansionStatus::TerminatedRational);
            KElement x = z;
            std::vector<QuadInt> ref;
            bool tie = false;
            while (true) {
                auto a = testing::brute_nearest(x);
                if (!a) {
                    tie = true;
                    break;
                }
                ref.push_back(*a);
                KElement r = x - KElement(*a);
                if (r.is_zero()) break;
                x = r.inverse();
            }
            if (tie) continue;
            CHECK(e.quotients() == ref);
            CHECK(convergent(e, e.size() - 1) == z);
            CHECK(fold(e.quotients(), e.size() - 1) == z);
        }
    }
}

TEST_CASE("convergent recurrences") {
    std::mt19937_64 rng(19);
    for (long d : kEuclidean) {
        FieldId f(d);
        auto z = RefinableComplex::parse("sqrt(3)*e(1/5)+w/3", f);
        Expansion e = expand(z, 40);
        REQUIRE(e.size() == 40);
        CHECK(e.p(-1) == QuadInt(1, 0, f));
        CHECK(e.q(-1) == QuadInt(0, 0, f));
        CHECK(e.p(-2) == QuadInt(0, 0, f));
        CHECK(e.q(-2) == QuadInt(1, 0, f));
        for (std::size_t n = 0; n < e.size(); ++n) {
            ConvergentMatrix m = e.matrix(n);
            CHECK(m.det() == QuadInt(n % 2 == 0 ? -1 : 1, 0, f));
            CHECK(KElement(m.p) / KElement(m.q) == fold(e.quotients(), n));
            if (n >= 1) CHECK(e.q(n).norm() > e.q(n - 1).norm());
        }
    }
}

TEST_CASE("diagnostics match ball recomputation") {
    auto z = RefinableComplex::parse("sqrt(3)*e(1/5)", FieldId(1));
    Expansion e = expand(z, 50);
    auto orbit = remainder_orbit(e);
    REQUIRE(orbit.size() == e.size());
    double rho1 = std::sqrt(0.5);
    for (std::size_t n = 0; n + 1 < e.size(); ++n) {
        RemainderView r = remainder(e, n);
        CHECK(std::abs(std::hypot(r.z_n.re_double(), r.z_n.im_double()) - e.diagnostics()[n].abs_remainder) < 1e-12);
        CHECK(std::abs(r.z_n.re_double() - orbit[n].real()) < 1e-12);
        CHECK(std::abs(r.z_n.im_double() - orbit[n].imag()) < 1e-12);
        CHECK(e.diagnostics()[n].abs_remainder <= rho1 + 1e-12);
        CHECK(std::abs(approx_error(e, n).re_double() - e.diagnostics()[n].approx_error) < 1e-12);
        REQUIRE(r.inv);
        if (n + 1 < e.size()) {
            RemainderView next = remainder(e, n + 1);
            CHECK(next.z_n.overlaps(add_integer(*r.inv, 0) - ball_of(e.quotient(n + 1), 128)));
        }
    }
    std::string csv = diagnostics_csv(e);
    CHECK(csv.rfind("n,a_n,abs_z_n,approx_error\n0,1+2*w,", 0) == 0);
}

TEST_CASE("index errors") {
    auto z = RefinableComplex::parse("sqrt(2)", FieldId(2));
    Expansion e = expand(z, 5);
    CHECK_THROWS(e.quotient(5));
    CHECK_THROWS(e.matrix(7));
}

TEST_CASE("precision exhaustion is a status") {
    setenv("NICF_PRECISION_CAP", "256", 1);
    auto z = RefinableComplex::parse("sqrt(3)*e(1/5)", FieldId(1));
    Expansion e = expand(z, 400);
    unsetenv("NICF_PRECISION_CAP");
    CHECK(e.status() == ExpansionStatus::PrecisionExhausted);
    CHECK(e.size() > 10);
    CHECK(e.size() < 400);
    Expansion full = expand(z, e.size());
    CHECK(full.quotients() == e.quotients());
}
