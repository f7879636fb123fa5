#pragma once

#include "nicf/ball.hpp"
#include "nicf/cf.hpp"
#include "nicf/qring.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nicf {

/// 2x2 matrix over the ring of integers, row-major.
struct Mat2 {
    QuadInt a, b, c, d;

    static Mat2 identity(FieldId f) { return {QuadInt(1, 0, f), QuadInt(0, 0, f), QuadInt(0, 0, f), QuadInt(1, 0, f)}; }
    QuadInt det() const { return a * d - b * c; }
    FieldId field() const { return a.field(); }
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend bool operator==(const Mat2& x, const Mat2& y) = default;
};

/// True when N(det g) = 1.
bool is_unimodular(const Mat2& g);

/// H(z, w) = A|z|^2 - B conj(z) w - conj(B) z conj(w) + C|w|^2, i.e. the
/// Hermitian matrix [[A, -B], [-conj(B), C]].
class HermitianForm {
public:
    HermitianForm(mpz_class A, QuadInt B, mpz_class C);
    static HermitianForm diag(const mpz_class& A, const mpz_class& C, FieldId field);
    /// `[A, b0+b1*w, C]`.
    static HermitianForm parse(std::string_view text, FieldId field);

    const mpz_class& A() const noexcept { return A_; }
    const QuadInt& B() const noexcept { return B_; }
    const mpz_class& C() const noexcept { return C_; }
    FieldId field() const noexcept { return B_.field(); }

    /// AC - N(B)
    mpz_class delta() const { return A_ * C_ - B_.norm(); }
    bool is_indefinite() const { return delta() < 0; }

    /// Exact value at integral (z, w).
    mpz_class operator()(const QuadInt& z, const QuadInt& w) const;
    /// Ball for H(z, 1).
    Ball at(const Ball& z) const;
    /// Ball for H(1, w).
    Ball at_second(const Ball& w) const;

    HermitianForm scaled(const mpz_class& m) const { return HermitianForm(A_ * m, B_ * m, C_ * m); }
    std::string to_string() const;

    friend bool operator==(const HermitianForm& x, const HermitianForm& y) {
        return x.A_ == y.A_ && x.B_ == y.B_ && x.C_ == y.C_;
    }

private:
    mpz_class A_;
    QuadInt B_;
    mpz_class C_;
};

struct FormLess {
    bool operator()(const HermitianForm& x, const HermitianForm& y) const;
};

/// |det g| (g^-1)^* H g^-1; throws DomainError unless g is unimodular.
HermitianForm act(const Mat2& g, const HermitianForm& H);

/// Zero set of H(z, 1): circle |z - center|^2 = radius2 when A != 0, else
/// the line 2 Re(conj(B) z) = C.
struct Circle {
    bool is_line = false;
    KElement center{FieldId(1)};
    mpq_class radius2;
    QuadInt line_b{FieldId(1)};
    mpz_class line_c;
};

Circle zero_circle(const HermitianForm& H);
/// Zero set of w -> H(1, w), the circle through the remainders z_n of
/// points on Z(H): center conj(B)/C, radius^2 = -Delta/C^2.
Circle remainder_circle(const HermitianForm& H);

/// Part of a circle inside the cell V, in degrees counter-clockwise.
struct CellArc {
    double from_deg = 0;
    double to_deg = 0;
};

/// Double-precision clipping of a circle to V (empty for lines).
std::vector<CellArc> arcs_in_cell(const Circle& c, FieldId field);

/// Local-global test for n in N(K^*), via Hilbert symbols (n, D_K)_p.
bool is_norm(const mpq_class& n, FieldId field);
/// Hilbert symbol (a, b)_p for nonzero integers; p = 0 stands for infinity.
int hilbert_symbol(const mpz_class& a, const mpz_class& b, const mpz_class& p);
/// Some x in K with N(x) = n, searching denominators up to max_den.
std::optional<KElement> norm_witness(const mpq_class& n, FieldId field, long max_den = 50);
bool is_isotropic(const HermitianForm& H);

struct OrbitStep {
    std::size_t n = 0;
    HermitianForm form;
    /// Index of the first occurrence of this form.
    std::size_t first_seen = 0;
};

struct FormOrbit {
    HermitianForm base;
    std::vector<OrbitStep> steps;
    /// Distinct forms with their first index.
    std::map<HermitianForm, std::size_t, FormLess> distinct;
};

/// H_n = g_n^* H g_n for n < count, checking A_n = H(p_n, q_n), C_n = A_{n-1}
/// and Delta(H_n) = Delta(H) exactly.
FormOrbit orbit(const HermitianForm& H, const Expansion& e, std::size_t count);

/// Columns n, A_n, B_n_a, B_n_b, C_n, first_seen.
std::string orbit_csv(const FormOrbit& o);
/// `{"d":..,"forms":N,"arcs":[{"form":..,"first_seen":..,"center":[x,y],"radius":r,
/// "pieces":[{"from_deg":a,"to_deg":b}]}]}`, one entry per distinct form.
std::string orbit_arcs_json(const FormOrbit& o);

/// max{|A|, |A| k^2 + 4 |B| k + 2 k sqrt(-Delta)} with k = kappa_d.
Ball eta(const HermitianForm& H, long bits = 128);

struct OrbitBounds {
    Ball eta{64};
    /// 1/(sqrt(-Delta) + sqrt(eta^2 - Delta))
    Ball z_min{64};
    /// rho + sqrt(-Delta) + sqrt(eta^2 - Delta)
    Ball a_max{64};
};

OrbitBounds orbit_bounds(const HermitianForm& H, long bits = 128);

struct ExteriorDisk {
    KElement center;
    mpq_class radius;
};

/// Image under g of {|z - p/q| < C/|q|^2}: the exterior {|w - a/c| > 1/C}.
ExteriorDisk disk_image(const Mat2& g, const QuadInt& p, const QuadInt& q, const mpq_class& C);

}  // namespace nicf
