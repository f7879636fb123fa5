#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace nicf {

/// The imaginary quadratic field K = Q(sqrt(-d)), d > 0 squarefree.
///
/// The ring of integers has Z-basis (1, w) with w = sqrt(-d) when
/// d = 1, 2 (mod 4) and w = (1 + sqrt(-d))/2 when d = 3 (mod 4). All
/// arithmetic below is expressed through the trace and norm of w.
class FieldId {
public:
    explicit FieldId(long d);

    long d() const noexcept { return d_; }
    bool is_euclidean() const noexcept;
    /// True when w = (1 + sqrt(-d))/2.
    bool half_basis() const noexcept { return d_ % 4 == 3; }
    /// Trace of w (0 or 1).
    long omega_trace() const noexcept { return half_basis() ? 1 : 0; }
    /// Norm of w: d, or (1 + d)/4.
    long omega_norm() const noexcept { return half_basis() ? (1 + d_) / 4 : d_; }
    /// Field discriminant D_K (-d or -4d).
    long discriminant() const noexcept { return half_basis() ? -d_ : -4 * d_; }

    /// Throws InvalidField unless d is one of 1, 2, 3, 7, 11.
    void require_euclidean() const;

    friend bool operator==(const FieldId&, const FieldId&) = default;

private:
    long d_;
};

bool is_squarefree(long n);

/// Exact element a + b*w of the ring of integers.
class QuadInt {
public:
    explicit QuadInt(FieldId field) : field_(field) {}
    QuadInt(mpz_class a, mpz_class b, FieldId field)
        : a_(std::move(a)), b_(std::move(b)), field_(field) {}

    static QuadInt omega(FieldId field) { return QuadInt(0, 1, field); }
    static QuadInt integer(const mpz_class& n, FieldId field) { return QuadInt(n, 0, field); }

    const mpz_class& a() const noexcept { return a_; }
    const mpz_class& b() const noexcept { return b_; }
    FieldId field() const noexcept { return field_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadInt conj() const;
    mpz_class norm() const;
    /// 2*Re(x) as an integer (2a + b*trace(w)).
    mpz_class twice_real() const { return 2 * a_ + b_ * field_.omega_trace(); }

    QuadInt operator-() const { return QuadInt(-a_, -b_, field_); }
    QuadInt& operator+=(const QuadInt& y);
    QuadInt& operator-=(const QuadInt& y);
    QuadInt& operator*=(const QuadInt& y);
    QuadInt& operator*=(const mpz_class& k);

    friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
    friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y);
    friend QuadInt operator*(QuadInt x, const mpz_class& k) { return x *= k; }

    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Canonical text `a+b*w` (both terms, explicit sign on b, no spaces).
    std::string to_string() const;
    /// Human notation for bracket output: `1+2i` over d = 1, `2-w` otherwise.
    std::string pretty() const;
    /// Parses the canonical form as well as looser spellings (`3`, `-w`, `2-5*w`).
    static QuadInt parse(std::string_view text, FieldId field);

private:
    mpz_class a_;
    mpz_class b_;
    FieldId field_;
};

/// Strict weak order on (a, b); used for deterministic containers.
struct QuadIntLess {
    bool operator()(const QuadInt& x, const QuadInt& y) const {
        int c = cmp(x.a(), y.a());
        return c < 0 || (c == 0 && cmp(x.b(), y.b()) < 0);
    }
};

/// Element num/den of K with den > 0 and gcd(den, a, b) = 1.
class KElement {
public:
    explicit KElement(FieldId field) : num_(field), den_(1) {}
    KElement(QuadInt num) : num_(std::move(num)), den_(1) {}  // NOLINT implicit
    KElement(QuadInt num, mpz_class den);

    static KElement rational(const mpq_class& q, FieldId field);

    const QuadInt& num() const noexcept { return num_; }
    const mpz_class& den() const noexcept { return den_; }
    FieldId field() const noexcept { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == 1; }
    /// Coordinates in the (1, w) basis.
    mpq_class coord_a() const { return mpq_class(num_.a(), den_); }
    mpq_class coord_b() const { return mpq_class(num_.b(), den_); }

    KElement conj() const { return KElement(num_.conj(), den_); }
    mpq_class norm() const;
    KElement inverse() const;

    KElement operator-() const { return KElement(-num_, den_); }
    friend KElement operator+(const KElement& x, const KElement& y);
    friend KElement operator-(const KElement& x, const KElement& y);
    friend KElement operator*(const KElement& x, const KElement& y);
    friend KElement operator/(const KElement& x, const KElement& y);
    friend bool operator==(const KElement& x, const KElement& y) {
        return x.den_ == y.den_ && x.num_ == y.num_;
    }

    /// `(a+b*w)/den`, or the canonical QuadInt text when den = 1.
    std::string to_string() const;

private:
    void normalize();

    QuadInt num_;
    mpz_class den_;
};

}  // namespace nicf
