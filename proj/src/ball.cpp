#include "nicf/ball.hpp"

#include "nicf/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace nicf {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.prec());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rg", digits, value_) < 0) return "nan";
    std::string s(buf);
    mpfr_free_str(buf);
    if (s == "-0") s = "0";
    return s;
}

namespace {

// rad += ulp(v) when the operation that produced v was inexact.
void add_ulp(Real& rad, mpfr_srcptr v, int ternary) {
    if (ternary == 0 || mpfr_zero_p(v)) return;
    mpfr_t u;
    mpfr_init2(u, kRadiusPrec);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(v) - mpfr_get_prec(v), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), u, MPFR_RNDU);
    mpfr_clear(u);
}

// rad += mag * 2^shift
void add_scaled(Real& rad, const Real& mag, long shift) {
    mpfr_t u;
    mpfr_init2(u, kRadiusPrec);
    mpfr_mul_2si(u, mag.get(), shift, MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), u, MPFR_RNDU);
    mpfr_clear(u);
}

Real mag_up(const Real& re, const Real& im) {
    Real r(kRadiusPrec);
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDU);
    return r;
}

Real mag_down(const Real& re, const Real& im) {
    Real r(kRadiusPrec);
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDD);
    return r;
}

mpfr_prec_t join(const Ball& x, const Ball& y) { return std::max(x.prec(), y.prec()); }

}  // namespace

Ball::Ball(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kRadiusPrec) {}

Ball Ball::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.re_.get(), q.get_mpq_t(), MPFR_RNDN);
    add_ulp(b.rad_, b.re_.get(), t);
    b.real_ = true;
    return b;
}

Ball Ball::from_integer(const mpz_class& n, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_z(b.re_.get(), n.get_mpz_t(), MPFR_RNDN);
    add_ulp(b.rad_, b.re_.get(), t);
    b.real_ = true;
    return b;
}

Ball Ball::imag_unit(mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_set_ui(b.im_.get(), 1, MPFR_RNDN);
    return b;
}

Ball Ball::sqrt_of(unsigned long n, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_sqrt_ui(b.re_.get(), n, MPFR_RNDN);
    add_ulp(b.rad_, b.re_.get(), t);
    b.real_ = true;
    return b;
}

Ball Ball::unit_root(const mpq_class& r, mpfr_prec_t prec) {
    // reduce to s in (-1/2, 1/2]
    mpz_class k;
    mpq_class twice = 2 * r;
    mpz_fdiv_q(k.get_mpz_t(), twice.get_num_mpz_t(), twice.get_den_mpz_t());  // floor(2r)
    mpz_class n = (k + 1) / 2;  // nearest integer, ties toward +inf
    mpq_class s = r - mpq_class(n);
    if (s <= mpq_class(-1, 2)) s += 1;
    Ball b(prec);
    if (s == 0) {
        mpfr_set_ui(b.re_.get(), 1, MPFR_RNDN);
        b.real_ = true;
        return b;
    }
    if (s == mpq_class(1, 2)) {
        mpfr_set_si(b.re_.get(), -1, MPFR_RNDN);
        b.real_ = true;
        return b;
    }
    if (s == mpq_class(1, 4) || s == mpq_class(-1, 4)) {
        mpfr_set_si(b.im_.get(), s > 0 ? 1 : -1, MPFR_RNDN);
        return b;
    }
    Real theta(prec);
    mpfr_const_pi(theta.get(), MPFR_RNDN);
    mpq_class two_s = 2 * s;
    mpfr_mul_q(theta.get(), theta.get(), two_s.get_mpq_t(), MPFR_RNDN);
    // |theta| <= pi, two roundings: error <= 2^{-prec+3}; sin and cos are 1-Lipschitz.
    int t = mpfr_sin_cos(b.im_.get(), b.re_.get(), theta.get(), MPFR_RNDN);
    Real one(1.0, kRadiusPrec);
    add_scaled(b.rad_, one, -static_cast<long>(prec) + 4);
    add_ulp(b.rad_, b.re_.get(), t == 0 ? 0 : 1);
    add_ulp(b.rad_, b.im_.get(), t == 0 ? 0 : 1);
    return b;
}

Ball Ball::real_root(unsigned long k, const mpq_class& q, mpfr_prec_t prec) {
    if (k == 0) throw DomainError("root index must be positive");
    if (q < 0) throw DomainError("root() needs a nonnegative rational");
    Ball b(prec);
    b.real_ = true;
    if (q == 0) return b;
    Real num(prec), den(prec);
    int t1 = mpfr_set_z(num.get(), q.get_num_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_rootn_ui(num.get(), num.get(), k, MPFR_RNDN);
    int t3 = mpfr_set_z(den.get(), q.get_den_mpz_t(), MPFR_RNDN);
    int t4 = mpfr_rootn_ui(den.get(), den.get(), k, MPFR_RNDN);
    int t5 = mpfr_div(b.re_.get(), num.get(), den.get(), MPFR_RNDN);
    if (t1 || t2 || t3 || t4 || t5) {
        // five correctly rounded steps: relative error below 2^{-prec+3}
        Real mag(kRadiusPrec);
        mpfr_abs(mag.get(), b.re_.get(), MPFR_RNDU);
        add_scaled(b.rad_, mag, -static_cast<long>(prec) + 3);
    }
    return b;
}

Ball Ball::from_interval(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    Ball b(prec);
    Real sum(prec + 8);
    mpfr_add(sum.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(b.re_.get(), sum.get(), 1, MPFR_RNDN);
    // radius: max(hi - c, c - lo)
    Real up(kRadiusPrec), down(kRadiusPrec);
    mpfr_sub(up.get(), hi.get(), b.re_.get(), MPFR_RNDU);
    mpfr_sub(down.get(), b.re_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(b.rad_.get(), up.get(), down.get(), MPFR_RNDU);
    b.real_ = true;
    return b;
}

Ball Ball::from_decimal(const std::string& re, const std::string& im, const std::string& rad,
                        mpfr_prec_t prec) {
    Ball b(prec);
    int t1 = mpfr_set_str(b.re_.get(), re.c_str(), 10, MPFR_RNDN);
    int t2 = mpfr_set_str(b.im_.get(), im.c_str(), 10, MPFR_RNDN);
    mpfr_set_str(b.rad_.get(), rad.c_str(), 10, MPFR_RNDU);
    // mpfr_set_str returns 0 on success; rounding is not reported, so add one ulp each.
    if (t1 != 0 || t2 != 0) throw ParseError("bad decimal", 0);
    add_ulp(b.rad_, b.re_.get(), 1);
    add_ulp(b.rad_, b.im_.get(), 1);
    return b;
}

bool Ball::contains_zero() const {
    Real m = mag_down(re_, im_);
    return mpfr_lessequal_p(m.get(), rad_.get()) != 0;
}

bool Ball::overlaps(const Ball& other) const {
    mpfr_prec_t p = std::max(prec(), other.prec()) + 64;
    Real dre(p), dim(p);
    mpfr_sub(dre.get(), re_.get(), other.re_.get(), MPFR_RNDN);
    mpfr_sub(dim.get(), im_.get(), other.im_.get(), MPFR_RNDN);
    Real dist = mag_down(dre, dim);
    // slack for the two roundings above
    mpfr_mul_2si(dre.get(), dist.get(), -(static_cast<long>(p) - 4), MPFR_RNDU);
    mpfr_sub(dist.get(), dist.get(), dre.get(), MPFR_RNDD);
    Real rsum(kRadiusPrec);
    mpfr_add(rsum.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
    return mpfr_lessequal_p(dist.get(), rsum.get()) != 0;
}

bool Ball::contains(const mpq_class& re, const mpq_class& im) const {
    Ball p(prec() + 64);
    int t1 = mpfr_set_q(p.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(p.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    add_ulp(p.rad_, p.re_.get(), t1);
    add_ulp(p.rad_, p.im_.get(), t2);
    return overlaps(p);
}

Real Ball::abs_upper() const {
    Real m = mag_up(re_, im_);
    mpfr_add(m.get(), m.get(), rad_.get(), MPFR_RNDU);
    return m;
}

Real Ball::abs_lower() const {
    Real m = mag_down(re_, im_);
    mpfr_sub(m.get(), m.get(), rad_.get(), MPFR_RNDD);
    if (m.sign() < 0) mpfr_set_zero(m.get(), 1);
    return m;
}

Ball Ball::abs() const {
    Ball b(prec());
    int t = mpfr_hypot(b.re_.get(), re_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    add_ulp(b.rad_, b.re_.get(), t);
    b.real_ = true;
    return b;
}

Ball Ball::conj() const {
    Ball b(*this);
    mpfr_neg(b.im_.get(), im_.get(), MPFR_RNDN);
    return b;
}

Ball Ball::real_part() const {
    Ball b(prec());
    mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    b.real_ = true;
    return b;
}

void Ball::inflate(const Real& extra) { mpfr_add(rad_.get(), rad_.get(), extra.get(), MPFR_RNDU); }

Ball Ball::with_prec(mpfr_prec_t prec) const {
    Ball b(prec);
    int t1 = mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
    int t2 = mpfr_set(b.im_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    add_ulp(b.rad_, b.re_.get(), t1);
    add_ulp(b.rad_, b.im_.get(), t2);
    b.real_ = real_;
    return b;
}

std::string Ball::to_string(int digits) const {
    std::string s = re_.to_string(digits);
    std::string i = im_.to_string(digits);
    if (i[0] != '-') i = "+" + i;
    return "(" + s + i + "i +/- " + rad_.to_string(3) + ")";
}

Ball operator+(const Ball& x, const Ball& y) {
    Ball b(join(x, y));
    int t1 = mpfr_add(b.re_.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
    int t2 = mpfr_add(b.im_.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
    mpfr_add(b.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
    add_ulp(b.rad_, b.re_.get(), t1);
    add_ulp(b.rad_, b.im_.get(), t2);
    b.real_ = x.real_ && y.real_;
    return b;
}

Ball operator-(const Ball& x) {
    Ball b(x);
    mpfr_neg(b.re_.get(), x.re_.get(), MPFR_RNDN);
    mpfr_neg(b.im_.get(), x.im_.get(), MPFR_RNDN);
    return b;
}

Ball operator-(const Ball& x, const Ball& y) {
    Ball b(join(x, y));
    int t1 = mpfr_sub(b.re_.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
    int t2 = mpfr_sub(b.im_.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
    mpfr_add(b.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
    add_ulp(b.rad_, b.re_.get(), t1);
    add_ulp(b.rad_, b.im_.get(), t2);
    b.real_ = x.real_ && y.real_;
    return b;
}

Ball operator*(const Ball& x, const Ball& y) {
    const mpfr_prec_t p = join(x, y);
    Ball b(p);
    Real t1(p), t2(p), t3(p), t4(p);
    int e1 = mpfr_mul(t1.get(), x.re_.get(), y.re_.get(), MPFR_RNDN);
    int e2 = mpfr_mul(t2.get(), x.im_.get(), y.im_.get(), MPFR_RNDN);
    int e3 = mpfr_mul(t3.get(), x.re_.get(), y.im_.get(), MPFR_RNDN);
    int e4 = mpfr_mul(t4.get(), x.im_.get(), y.re_.get(), MPFR_RNDN);
    int e5 = mpfr_sub(b.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
    int e6 = mpfr_add(b.im_.get(), t3.get(), t4.get(), MPFR_RNDN);
    add_ulp(b.rad_, t1.get(), e1);
    add_ulp(b.rad_, t2.get(), e2);
    add_ulp(b.rad_, t3.get(), e3);
    add_ulp(b.rad_, t4.get(), e4);
    add_ulp(b.rad_, b.re_.get(), e5);
    add_ulp(b.rad_, b.im_.get(), e6);
    // |cx| ry + |cy| rx + rx ry
    if (!x.rad_.is_zero() || !y.rad_.is_zero()) {
        Real mx = mag_up(x.re_, x.im_), my = mag_up(y.re_, y.im_), acc(kRadiusPrec);
        mpfr_mul(acc.get(), mx.get(), y.rad_.get(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), my.get(), x.rad_.get(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
    }
    b.real_ = x.real_ && y.real_;
    if (b.real_) mpfr_set_zero(b.im_.get(), 1);
    return b;
}

Ball scale(const Ball& x, const mpz_class& k) {
    Ball b(x.prec());
    int t1 = mpfr_mul_z(b.re_.get(), x.re_.get(), k.get_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_mul_z(b.im_.get(), x.im_.get(), k.get_mpz_t(), MPFR_RNDN);
    if (!x.rad_.is_zero()) {
        mpz_class ak = abs(k);
        Real kk(kRadiusPrec);
        mpfr_set_z(kk.get(), ak.get_mpz_t(), MPFR_RNDU);
        mpfr_mul(b.rad_.get(), x.rad_.get(), kk.get(), MPFR_RNDU);
    }
    add_ulp(b.rad_, b.re_.get(), t1);
    add_ulp(b.rad_, b.im_.get(), t2);
    b.real_ = x.real_;
    return b;
}

Ball scale(const Ball& x, const mpq_class& k) {
    Ball b(x.prec());
    int t1 = mpfr_mul_q(b.re_.get(), x.re_.get(), k.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_mul_q(b.im_.get(), x.im_.get(), k.get_mpq_t(), MPFR_RNDN);
    if (!x.rad_.is_zero()) {
        mpq_class ak = abs(k);
        Real kk(kRadiusPrec);
        mpfr_set_q(kk.get(), ak.get_mpq_t(), MPFR_RNDU);
        mpfr_mul(b.rad_.get(), x.rad_.get(), kk.get(), MPFR_RNDU);
    }
    add_ulp(b.rad_, b.re_.get(), t1);
    add_ulp(b.rad_, b.im_.get(), t2);
    b.real_ = x.real_;
    return b;
}

Ball add_integer(const Ball& x, const mpz_class& k) {
    Ball b(x);
    int t = mpfr_add_z(b.re_.get(), x.re_.get(), k.get_mpz_t(), MPFR_RNDN);
    add_ulp(b.rad_, b.re_.get(), t);
    return b;
}

std::optional<Ball> inverse(const Ball& y) {
    Real ml = mag_down(y.re_, y.im_);
    if (mpfr_lessequal_p(ml.get(), y.rad_.get())) {
        if (y.is_exact_zero()) throw DivisionByZero();
        return std::nullopt;
    }
    const mpfr_prec_t p = y.prec();
    Ball b(p);
    Real n(p), sq(p);
    int e1 = mpfr_sqr(n.get(), y.re_.get(), MPFR_RNDN);
    int e2 = mpfr_sqr(sq.get(), y.im_.get(), MPFR_RNDN);
    int e3 = mpfr_add(n.get(), n.get(), sq.get(), MPFR_RNDN);
    int e4 = mpfr_div(b.re_.get(), y.re_.get(), n.get(), MPFR_RNDN);
    int e5 = mpfr_div(b.im_.get(), y.im_.get(), n.get(), MPFR_RNDN);
    mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
    Real inv_ml(kRadiusPrec);
    mpfr_ui_div(inv_ml.get(), 1, ml.get(), MPFR_RNDU);
    if (e1 || e2 || e3 || e4 || e5) add_scaled(b.rad_, inv_ml, -static_cast<long>(p) + 4);
    if (!y.rad_.is_zero()) {
        // r / (|c| (|c| - r))
        Real gap(kRadiusPrec), acc(kRadiusPrec);
        mpfr_sub(gap.get(), ml.get(), y.rad_.get(), MPFR_RNDD);
        mpfr_mul(gap.get(), gap.get(), ml.get(), MPFR_RNDD);
        mpfr_div(acc.get(), y.rad_.get(), gap.get(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
    }
    b.real_ = y.real_;
    if (b.real_) mpfr_set_zero(b.im_.get(), 1);
    return b;
}

std::optional<Ball> divide(const Ball& x, const Ball& y) {
    auto inv = inverse(y);
    if (!inv) return std::nullopt;
    return x * *inv;
}

std::optional<Ball> sqrt(const Ball& y) {
    if (y.is_exact_zero()) {
        Ball z(y.prec());
        z.real_ = true;
        return z;
    }
    if (y.real_) {
        Real lo(y.prec() + 8), hi(y.prec() + 8);
        mpfr_sub(lo.get(), y.re_.get(), y.rad_.get(), MPFR_RNDD);
        mpfr_add(hi.get(), y.re_.get(), y.rad_.get(), MPFR_RNDU);
        if (lo.sign() <= 0 && hi.sign() >= 0) return std::nullopt;
        // sqrt(y) or i*sqrt(-y); |sqrt(a) - sqrt(b)| <= |a - b| / sqrt(|b|)
        const bool negative = hi.sign() < 0;
        Ball b(y.prec());
        Real v(y.prec());
        mpfr_abs(v.get(), y.re_.get(), MPFR_RNDN);
        Real& target = negative ? b.im_ : b.re_;
        int t = mpfr_sqrt(target.get(), v.get(), MPFR_RNDN);
        add_ulp(b.rad_, target.get(), t);
        if (!y.rad_.is_zero()) {
            Real low(kRadiusPrec), acc(kRadiusPrec);
            mpfr_abs(low.get(), y.re_.get(), MPFR_RNDD);
            mpfr_sqrt(low.get(), low.get(), MPFR_RNDD);
            mpfr_div(acc.get(), y.rad_.get(), low.get(), MPFR_RNDU);
            mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
        }
        b.real_ = !negative;
        return b;
    }
    Real ml = mag_down(y.re_, y.im_);
    if (mpfr_lessequal_p(ml.get(), y.rad_.get())) return std::nullopt;
    {
        // would the ball reach the cut (-inf, 0]?
        Real reach(kRadiusPrec);
        mpfr_sub(reach.get(), y.re_.get(), y.rad_.get(), MPFR_RNDD);
        Real aim(kRadiusPrec);
        mpfr_abs(aim.get(), y.im_.get(), MPFR_RNDD);
        if (reach.sign() <= 0 && mpfr_lessequal_p(aim.get(), y.rad_.get())) return std::nullopt;
    }
    const mpfr_prec_t p = y.prec();
    Ball b(p);
    Real m(p), s(p), t(p);
    mpfr_hypot(m.get(), y.re_.get(), y.im_.get(), MPFR_RNDN);
    if (y.re_.sign() >= 0) {
        mpfr_add(s.get(), m.get(), y.re_.get(), MPFR_RNDN);
        mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
        mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);
        mpfr_div(t.get(), y.im_.get(), s.get(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
    } else {
        mpfr_sub(t.get(), m.get(), y.re_.get(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
        mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
        if (y.im_.sign() < 0) mpfr_neg(t.get(), t.get(), MPFR_RNDN);
        mpfr_div(s.get(), y.im_.get(), t.get(), MPFR_RNDN);
        mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
    }
    mpfr_set(b.re_.get(), s.get(), MPFR_RNDN);
    mpfr_set(b.im_.get(), t.get(), MPFR_RNDN);
    // rounding: a handful of correctly rounded steps, relative error < 2^{-p+4}
    Real root_mag(kRadiusPrec);
    mpfr_hypot(root_mag.get(), s.get(), t.get(), MPFR_RNDU);
    add_scaled(b.rad_, root_mag, -static_cast<long>(p) + 4);
    if (!y.rad_.is_zero()) {
        Real lo(kRadiusPrec), acc(kRadiusPrec);
        mpfr_sqrt(lo.get(), ml.get(), MPFR_RNDD);
        mpfr_div(acc.get(), y.rad_.get(), lo.get(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), acc.get(), MPFR_RNDU);
    }
    return b;
}

Ball max(const Ball& x, const Ball& y) {
    if (certainly_less_equal(y, x)) return x;
    if (certainly_less_equal(x, y)) return y;
    mpfr_prec_t p = std::max(x.prec(), y.prec());
    Real xl(p + 8), xh(p + 8), yl(p + 8), yh(p + 8);
    mpfr_sub(xl.get(), x.re().get(), x.rad().get(), MPFR_RNDD);
    mpfr_add(xh.get(), x.re().get(), x.rad().get(), MPFR_RNDU);
    mpfr_sub(yl.get(), y.re().get(), y.rad().get(), MPFR_RNDD);
    mpfr_add(yh.get(), y.re().get(), y.rad().get(), MPFR_RNDU);
    mpfr_max(xl.get(), xl.get(), yl.get(), MPFR_RNDD);
    mpfr_max(xh.get(), xh.get(), yh.get(), MPFR_RNDU);
    return Ball::from_interval(xl, xh, p);
}

bool certainly_less(const Ball& x, const Ball& y) {
    mpfr_prec_t p = std::max(x.prec(), y.prec()) + 8;
    Real hi(p), lo(p);
    mpfr_add(hi.get(), x.re().get(), x.rad().get(), MPFR_RNDU);
    mpfr_sub(lo.get(), y.re().get(), y.rad().get(), MPFR_RNDD);
    return mpfr_less_p(hi.get(), lo.get()) != 0;
}

bool certainly_less_equal(const Ball& x, const Ball& y) {
    mpfr_prec_t p = std::max(x.prec(), y.prec()) + 8;
    Real hi(p), lo(p);
    mpfr_add(hi.get(), x.re().get(), x.rad().get(), MPFR_RNDU);
    mpfr_sub(lo.get(), y.re().get(), y.rad().get(), MPFR_RNDD);
    return mpfr_lessequal_p(hi.get(), lo.get()) != 0;
}

}  // namespace nicf
