#include "nicf/qring.hpp"

#include "nicf/errors.hpp"

#include <cctype>

namespace nicf {

bool is_squarefree(long n) {
    if (n <= 0) return false;
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

FieldId::FieldId(long d) : d_(d) {
    if (!is_squarefree(d)) {
        throw InvalidField("d must be a positive squarefree integer, got " + std::to_string(d));
    }
}

bool FieldId::is_euclidean() const noexcept {
    return d_ == 1 || d_ == 2 || d_ == 3 || d_ == 7 || d_ == 11;
}

void FieldId::require_euclidean() const {
    if (!is_euclidean()) throw InvalidField("d must be 1,2,3,7,11");
}

namespace {

void check_same(const QuadInt& x, const QuadInt& y) {
    if (!(x.field() == y.field())) throw FieldMismatch();
}

}  // namespace

QuadInt QuadInt::conj() const {
    return QuadInt(a_ + b_ * field_.omega_trace(), -b_, field_);
}

mpz_class QuadInt::norm() const {
    mpz_class n = a_ * a_ + b_ * b_ * field_.omega_norm();
    if (field_.half_basis()) n += a_ * b_;
    return n;
}

QuadInt& QuadInt::operator+=(const QuadInt& y) {
    check_same(*this, y);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& y) {
    check_same(*this, y);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& y) {
    *this = *this * y;
    return *this;
}

QuadInt& QuadInt::operator*=(const mpz_class& k) {
    a_ *= k;
    b_ *= k;
    return *this;
}

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    check_same(x, y);
    // w^2 = t*w - n
    const FieldId f = x.field_;
    mpz_class be = x.b_ * y.b_;
    mpz_class a = x.a_ * y.a_ - be * f.omega_norm();
    mpz_class b = x.a_ * y.b_ + x.b_ * y.a_;
    if (f.half_basis()) b += be;
    return QuadInt(std::move(a), std::move(b), f);
}

std::string QuadInt::to_string() const {
    std::string s = a_.get_str();
    if (b_ >= 0) s += '+';
    s += b_.get_str();
    s += "*w";
    return s;
}

std::string QuadInt::pretty() const {
    const char* unit = field_.d() == 1 ? "i" : "w";
    if (b_ == 0) return a_.get_str();
    std::string s;
    if (a_ != 0) s = a_.get_str();
    if (b_ > 0 && a_ != 0) s += '+';
    if (b_ == -1) {
        s += '-';
    } else if (b_ != 1) {
        s += b_.get_str();
    }
    s += unit;
    return s;
}

QuadInt QuadInt::parse(std::string_view text, FieldId field) {
    // term ((+|-) term)*, term := integer | integer '*'? ('w'|'i') | ('w'|'i')
    std::size_t pos = 0;
    mpz_class a = 0, b = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool any = false;
    skip();
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (any) {
            throw ParseError("expected '+' or '-'", pos);
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        mpz_class coef = 1;
        bool has_digits = pos > start;
        if (has_digits) coef = mpz_class(std::string(text.substr(start, pos - start)));
        skip();
        bool omega_term = false;
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
            if (pos >= text.size() || (text[pos] != 'w' && text[pos] != 'i')) {
                throw ParseError("expected 'w' after '*'", pos);
            }
        }
        if (pos < text.size() && (text[pos] == 'w' || text[pos] == 'i')) {
            if (text[pos] == 'i' && field.d() != 1) throw ParseError("'i' is not in this ring", pos);
            omega_term = true;
            ++pos;
        } else if (!has_digits) {
            throw ParseError("expected integer or 'w'", pos);
        }
        skip();
        (omega_term ? b : a) += sign * coef;
        any = true;
    }
    if (!any) throw ParseError("empty integer", 0);
    return QuadInt(a, b, field);
}

KElement::KElement(QuadInt num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DivisionByZero();
    normalize();
}

KElement KElement::rational(const mpq_class& q, FieldId field) {
    return KElement(QuadInt(q.get_num(), 0, field), q.get_den());
}

void KElement::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.a().get_mpz_t(), num_.b().get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        mpz_class a = num_.a() / g, b = num_.b() / g;
        num_ = QuadInt(std::move(a), std::move(b), num_.field());
        den_ /= g;
    }
}

mpq_class KElement::norm() const {
    mpq_class n(num_.norm(), den_ * den_);
    n.canonicalize();
    return n;
}

KElement KElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    // den/num = den*conj(num)/N(num)
    return KElement(num_.conj() * den_, num_.norm());
}

KElement operator+(const KElement& x, const KElement& y) {
    return KElement(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

KElement operator-(const KElement& x, const KElement& y) {
    return KElement(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

KElement operator*(const KElement& x, const KElement& y) {
    return KElement(x.num_ * y.num_, x.den_ * y.den_);
}

KElement operator/(const KElement& x, const KElement& y) {
    if (y.is_zero()) throw DivisionByZero();
    // (xn/xd) / (yn/yd) = xn*yd*conj(yn) / (xd*N(yn))
    return KElement(x.num_ * y.num_.conj() * y.den_, x.den_ * y.num_.norm());
}

std::string KElement::to_string() const {
    if (den_ == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/" + den_.get_str();
}

}  // namespace nicf
