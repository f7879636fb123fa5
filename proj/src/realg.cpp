#include "nicf/realg.hpp"

#include "nicf/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace nicf {

long precision_cap() {
    if (const char* env = std::getenv("NICF_PRECISION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 16) return v;
    }
    return kDefaultPrecisionCap;
}

std::optional<KElement> is_exact_in_K(const Expr& e, FieldId field) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Integer: return KElement(QuadInt::integer(e.value().get_num(), field));
        case K::Omega: return KElement(QuadInt::omega(field));
        case K::ImagUnit:
            if (field.d() != 1) return std::nullopt;
            return KElement(QuadInt::omega(field));
        case K::Neg: {
            auto x = is_exact_in_K(e.lhs(), field);
            if (!x) return std::nullopt;
            return -*x;
        }
        case K::Add:
        case K::Sub:
        case K::Mul:
        case K::Div: {
            auto x = is_exact_in_K(e.lhs(), field);
            if (!x) return std::nullopt;
            auto y = is_exact_in_K(e.rhs(), field);
            if (!y) return std::nullopt;
            if (e.kind() == K::Add) return *x + *y;
            if (e.kind() == K::Sub) return *x - *y;
            if (e.kind() == K::Mul) return *x * *y;
            return *x / *y;
        }
        default: return std::nullopt;
    }
}

Ball ball_of(const KElement& x, mpfr_prec_t prec) {
    const FieldId f = x.field();
    const long t = f.omega_trace();
    const mpq_class& a = x.coord_a();
    const mpq_class& b = x.coord_b();
    mpq_class re = a + b * mpq_class(t, 2);
    Ball out = Ball::from_rational(re, prec);
    if (b == 0) return out;
    mpq_class im_scale = t == 0 ? b : mpq_class(b / 2);
    Ball im = scale(Ball::sqrt_of(static_cast<unsigned long>(f.d()), prec), im_scale);
    return out + Ball::imag_unit(prec) * im;
}

Ball ball_of(const QuadInt& x, mpfr_prec_t prec) { return ball_of(KElement(x), prec); }

Expr expr_of(const QuadInt& x) {
    if (x.b() == 0) return Expr::integer(x.a());
    Expr w = x.b() == 1 ? Expr::omega() : Expr::integer(x.b()) * Expr::omega();
    if (x.a() == 0) return w;
    return Expr::integer(x.a()) + w;
}

Expr expr_of(const KElement& x) {
    if (x.den() == 1) return expr_of(x.num());
    return expr_of(x.num()) / Expr::integer(x.den());
}

RefinableComplex::RefinableComplex(Expr expr, FieldId field)
    : expr_(std::move(expr)), field_(field), exact_(is_exact_in_K(expr_, field)) {}

RefinableComplex RefinableComplex::parse(std::string_view text, FieldId field) {
    return RefinableComplex(parse_expr(text), field);
}

RefinableComplex embed(const QuadInt& x) { return RefinableComplex(expr_of(x), x.field()); }
RefinableComplex embed(const KElement& x) { return RefinableComplex(expr_of(x), x.field()); }

namespace {

std::optional<Ball> eval_node(const Expr& e, FieldId field, mpfr_prec_t prec, EvalFailure& why) {
    using K = Expr::Kind;
    if (auto k = is_exact_in_K(e, field)) return ball_of(*k, prec);
    switch (e.kind()) {
        case K::ImagUnit: return Ball::imag_unit(prec);
        case K::Root: return Ball::real_root(e.root_index(), e.value(), prec);
        case K::UnitRoot: return Ball::unit_root(e.value(), prec);
        case K::Sqrt: {
            auto x = eval_node(e.lhs(), field, prec, why);
            if (!x) return std::nullopt;
            auto r = sqrt(*x);
            if (!r) why = EvalFailure::SqrtCut;
            return r;
        }
        case K::Neg: {
            auto x = eval_node(e.lhs(), field, prec, why);
            if (!x) return std::nullopt;
            return -*x;
        }
        case K::Add:
        case K::Sub:
        case K::Mul:
        case K::Div: {
            auto x = eval_node(e.lhs(), field, prec, why);
            if (!x) return std::nullopt;
            auto y = eval_node(e.rhs(), field, prec, why);
            if (!y) return std::nullopt;
            if (e.kind() == K::Add) return *x + *y;
            if (e.kind() == K::Sub) return *x - *y;
            if (e.kind() == K::Mul) return *x * *y;
            auto q = divide(*x, *y);
            if (!q) why = EvalFailure::NearZeroDivisor;
            return q;
        }
        default: break;
    }
    throw DomainError("unexpected expression node");
}

}  // namespace

std::optional<Ball> RefinableComplex::eval(long bits, EvalFailure* why) const {
    if (bits < 16) throw DomainError("precision must be at least 16 bits");
    EvalFailure reason = EvalFailure::None;
    const mpfr_prec_t prec = bits + guard_bits();
    std::optional<Ball> b;
    if (exact_) {
        b = ball_of(*exact_, prec);
    } else {
        b = eval_node(expr_, field_, prec, reason);
    }
    if (why) *why = reason;
    return b;
}

Ball RefinableComplex::eval_adaptive(long start) const {
    const long cap = precision_cap();
    EvalFailure why = EvalFailure::None;
    for (long bits = std::max(start, 16L); bits <= cap; bits *= 2) {
        if (auto b = eval(bits, &why)) return *b;
    }
    if (why == EvalFailure::NearZeroDivisor) throw DivisionNearZero();
    throw PrecisionExhausted(cap);
}

}  // namespace nicf
