#pragma once

#include "nicf/ball.hpp"
#include "nicf/expr.hpp"
#include "nicf/hermitian.hpp"
#include "nicf/qring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nicf {

/// C' = 1/(alpha (beta + 1)(beta + rho + 1)); Euclidean fields only.
Ball cprime(const Ball& beta, FieldId field, long bits = 128);

enum class Validity { ProvedEuclidean, ProvedExistenceOnly, Refused };
const char* validity_name(Validity v);

struct Certificate {
    HermitianForm form;
    bool anisotropic = false;
    mpz_class delta;
    /// Present only for anisotropic forms over Euclidean fields.
    std::optional<Ball> eta, beta, z_min, cprime;
    Validity validity = Validity::Refused;
    /// For isotropic forms: x with N(x) = -Delta, if found.
    std::optional<KElement> witness;

    FieldId field() const { return form.field(); }
};

Certificate certify(const HermitianForm& H, long bits = 128);
/// `{"d":..,"form":[A,"B",C],"anisotropic":..,"delta":..,"eta":..,...}`
std::string to_json(const Certificate& c);
/// "4=N(2)"
std::string witness_string(const Certificate& c);
/// "2", "(1+i)/2", ...
std::string pretty_element(const KElement& x);

/// Coefficients in increasing degree.
using RationalPoly = std::vector<mpq_class>;

Ball evaluate(const RationalPoly& f, const Ball& x);
bool is_palindromic(const RationalPoly& f);

struct PalindromicWitness {
    std::optional<Expr> u;
    RationalPoly g;
    std::size_t m = 0;
    /// t^m g(t + 1/t)
    RationalPoly f;
    /// (u + sqrt(u^2 - 4))/2 and (u - sqrt(u^2 - 4))/2 when u is given.
    std::vector<Expr> w;
    /// Irreducibility of g is the caller's claim; never checked.
    bool irreducibility_verified = false;
};

PalindromicWitness palindromic_lift(const RationalPoly& g);
/// As above, also records the unit-circle values over u; requires g(u) = 0
/// to hold on balls.
PalindromicWitness palindromic_lift(const RationalPoly& g, const Expr& u, FieldId field);

/// w = (u + sign i sqrt(4 - u^2))/2 for real u with |u| < 2.
Expr unit_circle_algebraic(const Expr& u, int sign, FieldId field);

struct Construction {
    Expr expr;
    Certificate certificate;
};

/// z = t + sqrt(n) w, with the primitive integral form whose zero set is
/// |z - t|^2 = n. Throws DomainError when n is a norm.
Construction construct_badly_approximable(const KElement& t, const mpq_class& n, const Expr& u, int sign,
                                          FieldId field);

/// Primitive integral form with zero set |z - t|^2 = n.
HermitianForm circle_form(const KElement& t, const mpq_class& n);

}  // namespace nicf
