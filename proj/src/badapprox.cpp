#include "nicf/badapprox.hpp"

#include "nicf/constants.hpp"
#include "nicf/errors.hpp"
#include "nicf/realg.hpp"

#include <json.hpp>

#include <cstdio>

namespace nicf {

Ball cprime(const Ball& beta, FieldId field, long bits) {
    field.require_euclidean();
    const Ball zero = Ball::from_integer(0, beta.prec());
    if (!certainly_less(zero, beta.real_part())) throw DomainError("beta must be positive");
    const Ball alpha = alpha_ball(field, bits);
    const Ball r = rho_ball(field, bits);
    const Ball b1 = add_integer(beta, 1);
    auto inv = inverse(alpha * b1 * (b1 + r));
    if (!inv) throw DivisionNearZero();
    return inv->real_part();
}

const char* validity_name(Validity v) {
    switch (v) {
        case Validity::ProvedEuclidean: return "proved-euclidean";
        case Validity::ProvedExistenceOnly: return "proved-existence-only";
        case Validity::Refused: return "refused";
    }
    return "refused";
}

Certificate certify(const HermitianForm& H, long bits) {
    if (!H.is_indefinite()) throw DomainError("form is definite");
    Certificate c{H, false, H.delta(), {}, {}, {}, {}, Validity::Refused, {}};
    if (is_isotropic(H)) {
        c.witness = norm_witness(mpq_class(-c.delta), H.field());
        return c;
    }
    c.anisotropic = true;
    if (!H.field().is_euclidean()) {
        c.validity = Validity::ProvedExistenceOnly;
        return c;
    }
    OrbitBounds b = orbit_bounds(H, bits);
    c.eta = b.eta.real_part();
    c.beta = b.a_max.real_part();
    c.z_min = b.z_min.real_part();
    c.cprime = cprime(*c.beta, H.field(), bits);
    c.validity = Validity::ProvedEuclidean;
    return c;
}

namespace {

double digits15(const Ball& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x.re_double());
    return std::strtod(buf, nullptr);
}

}  // namespace

std::string pretty_element(const KElement& x) {
    if (x.is_integral()) return x.num().pretty();
    return "(" + x.num().pretty() + ")/" + x.den().get_str();
}

std::string witness_string(const Certificate& c) {
    if (!c.witness) return "";
    return mpz_class(-c.delta).get_str() + "=N(" + pretty_element(*c.witness) + ")";
}

std::string to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["d"] = c.field().d();
    j["form"] = nlohmann::ordered_json::array(
        {nlohmann::ordered_json::parse(c.form.A().get_str()), c.form.B().pretty(),
         nlohmann::ordered_json::parse(c.form.C().get_str())});
    j["anisotropic"] = c.anisotropic;
    j["delta"] = nlohmann::ordered_json::parse(c.delta.get_str());
    if (c.eta) j["eta"] = digits15(*c.eta);
    if (c.beta) j["beta"] = digits15(*c.beta);
    if (c.z_min) j["z_min"] = digits15(*c.z_min);
    if (c.cprime) j["cprime"] = digits15(*c.cprime);
    j["validity"] = validity_name(c.validity);
    if (c.witness) j["witness"] = witness_string(c);
    return j.dump();
}

Ball evaluate(const RationalPoly& f, const Ball& x) {
    Ball acc = Ball::from_integer(0, x.prec());
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + Ball::from_rational(*it, x.prec());
    return acc;
}

bool is_palindromic(const RationalPoly& f) {
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] != f[f.size() - 1 - k]) return false;
    }
    return true;
}

PalindromicWitness palindromic_lift(const RationalPoly& g) {
    RationalPoly h = g;
    while (!h.empty() && h.back() == 0) h.pop_back();
    if (h.size() < 2) throw DomainError("g must have degree at least 1");
    PalindromicWitness out;
    out.g = h;
    out.m = h.size() - 1;
    const std::size_t m = out.m;
    out.f.assign(2 * m + 1, mpq_class(0));
    // f(t) = sum_k g_k t^(m-k) (t^2 + 1)^k
    std::vector<mpz_class> binom{1};
    for (std::size_t k = 0; k <= m; ++k) {
        for (std::size_t j = 0; j <= k; ++j) out.f[m - k + 2 * j] += h[k] * binom[j];
        std::vector<mpz_class> next(k + 2, 0);
        for (std::size_t j = 0; j <= k; ++j) {
            next[j] += binom[j];
            next[j + 1] += binom[j];
        }
        binom = std::move(next);
    }
    return out;
}

namespace {

Ball checked_real_u(const Expr& u, FieldId field, long bits) {
    const RefinableComplex rc(u, field);
    for (long p = bits; p <= 8192; p *= 2) {
        const Ball b = rc.eval_adaptive(p);
        if (!(b - b.conj()).contains_zero()) throw DomainError("u is not real");
        const Ball two = Ball::from_integer(2, b.prec());
        const Ball a = b.abs();
        if (certainly_less(a, two)) return b;
        if (certainly_less(two, a)) throw DomainError("u lies outside [-2, 2]");
        if (rc.is_exact()) break;
    }
    throw DomainError("u = 2 or u = -2 is excluded");
}

}  // namespace

Expr unit_circle_algebraic(const Expr& u, int sign, FieldId field) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    checked_real_u(u, field, 128);
    Expr s = Expr::imag_unit() * Expr::sqrt(Expr::integer(4) - u * u);
    Expr w = (sign > 0 ? u + s : u - s) / Expr::integer(2);
    const Ball wb = RefinableComplex(w, field).eval_adaptive(256);
    if (!add_integer(wb * wb.conj(), -1).contains_zero()) throw Error("|w| = 1 check failed");
    return w;
}

PalindromicWitness palindromic_lift(const RationalPoly& g, const Expr& u, FieldId field) {
    PalindromicWitness out = palindromic_lift(g);
    const Ball ub = checked_real_u(u, field, 256);
    if (!evaluate(out.g, ub).contains_zero()) throw DomainError("u is not a root of g");
    out.u = u;
    for (int sign : {1, -1}) {
        Expr w = unit_circle_algebraic(u, sign, field);
        const Ball wb = RefinableComplex(w, field).eval_adaptive(256);
        if (!evaluate(out.f, wb).contains_zero()) throw Error("f(w) check failed");
        out.w.push_back(std::move(w));
    }
    return out;
}

HermitianForm circle_form(const KElement& t, const mpq_class& n) {
    if (n <= 0) throw DomainError("n must be positive");
    const FieldId f = t.field();
    const mpz_class& D = t.den();
    const QuadInt& T = t.num();
    const mpz_class r = n.get_num(), s = n.get_den();
    // s |D z - T|^2 = D^2 r
    mpz_class A = D * D * s;
    QuadInt B = T * (D * s);
    mpz_class C = s * T.norm() - D * D * r;
    mpz_class g = gcd(gcd(A, C), gcd(B.a(), B.b()));
    if (g > 1) {
        A /= g;
        C /= g;
        B = QuadInt(B.a() / g, B.b() / g, f);
    }
    return HermitianForm(A, B, C);
}

Construction construct_badly_approximable(const KElement& t, const mpq_class& n, const Expr& u, int sign,
                                          FieldId field) {
    if (!(t.field() == field)) throw FieldMismatch();
    if (is_norm(n, field)) throw DomainError("n is a norm from K; no certificate by this route");
    Expr w = unit_circle_algebraic(u, sign, field);
    Expr z = Expr::sqrt(Expr::rational(n)) * w;
    if (!t.is_zero()) z = expr_of(t) + z;
    return Construction{z, certify(circle_form(t, n))};
}

}  // namespace nicf
