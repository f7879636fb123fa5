#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace nicf {

/// Owning RAII wrapper around an mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64);
    Real(double v, mpfr_prec_t prec);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(value_); }

    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }
    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Decimal in scientific or plain notation with `digits` significant digits.
    std::string to_string(int digits) const;

private:
    mpfr_t value_;
};

/// Radii are kept at this precision and always rounded upward.
inline constexpr mpfr_prec_t kRadiusPrec = 32;

/// Complex ball {c : |c - center| <= radius}.
///
/// `known_real` records that the exact value is real; the imaginary part of
/// the center is then exactly zero and the radius bounds a real error. The
/// flag lets square roots of negative reals pick the principal branch
/// (i*sqrt(-x)) instead of straddling the cut.
class Ball {
public:
    explicit Ball(mpfr_prec_t prec);

    static Ball from_rational(const mpq_class& q, mpfr_prec_t prec);
    static Ball from_integer(const mpz_class& n, mpfr_prec_t prec);
    static Ball imag_unit(mpfr_prec_t prec);
    static Ball sqrt_of(unsigned long n, mpfr_prec_t prec);
    /// e^{2 pi i r}.
    static Ball unit_root(const mpq_class& r, mpfr_prec_t prec);
    /// Positive real k-th root of q >= 0.
    static Ball real_root(unsigned long k, const mpq_class& q, mpfr_prec_t prec);
    /// Real ball enclosing [lo, hi].
    static Ball from_interval(const Real& lo, const Real& hi, mpfr_prec_t prec);
    /// Point ball from decimal strings (test and plotting helper).
    static Ball from_decimal(const std::string& re, const std::string& im, const std::string& rad,
                             mpfr_prec_t prec);

    mpfr_prec_t prec() const noexcept { return re_.prec(); }
    const Real& re() const noexcept { return re_; }
    const Real& im() const noexcept { return im_; }
    const Real& rad() const noexcept { return rad_; }
    bool known_real() const noexcept { return real_; }
    bool is_exact() const noexcept { return rad_.is_zero(); }
    bool is_exact_zero() const noexcept { return is_exact() && re_.is_zero() && im_.is_zero(); }

    /// True when the ball may contain 0 (|center| <= radius, with rounding slack).
    bool contains_zero() const;
    /// True when the ball and `other` may share a point.
    bool overlaps(const Ball& other) const;
    /// True when `point` (exact) lies in the ball.
    bool contains(const mpq_class& re, const mpq_class& im) const;

    /// Upper and lower bounds of |z| over the ball.
    Real abs_upper() const;
    Real abs_lower() const;
    /// Real ball enclosing |z|.
    Ball abs() const;
    /// Ball enclosing the conjugates.
    Ball conj() const;
    /// Real ball enclosing Re(z).
    Ball real_part() const;

    double re_double() const { return re_.to_double(); }
    double im_double() const { return im_.to_double(); }
    double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    /// Enlarge the radius by `extra` (rounded up).
    void inflate(const Real& extra);
    /// Same ball at a different center precision; the radius absorbs rounding.
    Ball with_prec(mpfr_prec_t prec) const;

    std::string to_string(int digits = 20) const;

    friend Ball operator+(const Ball& x, const Ball& y);
    friend Ball operator-(const Ball& x, const Ball& y);
    friend Ball operator*(const Ball& x, const Ball& y);
    friend Ball operator-(const Ball& x);
    friend Ball scale(const Ball& x, const mpz_class& k);
    friend Ball scale(const Ball& x, const mpq_class& k);
    friend Ball add_integer(const Ball& x, const mpz_class& k);
    friend std::optional<Ball> inverse(const Ball& y);
    friend std::optional<Ball> sqrt(const Ball& y);

private:
    Real re_;
    Real im_;
    Real rad_;
    bool real_ = false;
};

Ball operator+(const Ball& x, const Ball& y);
Ball operator-(const Ball& x, const Ball& y);
Ball operator*(const Ball& x, const Ball& y);
Ball operator-(const Ball& x);
Ball scale(const Ball& x, const mpz_class& k);
Ball scale(const Ball& x, const mpq_class& k);
Ball add_integer(const Ball& x, const mpz_class& k);
/// nullopt when y may contain 0.
std::optional<Ball> inverse(const Ball& y);
std::optional<Ball> divide(const Ball& x, const Ball& y);
/// Principal square root; nullopt when the ball meets 0 (and is not exactly
/// 0) or straddles the negative real axis without being known real.
std::optional<Ball> sqrt(const Ball& y);

/// Real ball enclosing max(x, y) of two real balls.
Ball max(const Ball& x, const Ball& y);

/// Real-ball comparisons that hold for every pair of points.
bool certainly_less(const Ball& x, const Ball& y);
bool certainly_less_equal(const Ball& x, const Ball& y);

}  // namespace nicf
