#pragma once

#include "nicf/ball.hpp"
#include "nicf/expr.hpp"
#include "nicf/qring.hpp"

#include <optional>
#include <string_view>

namespace nicf {

inline constexpr long kStartPrecision = 128;
inline constexpr long kDefaultPrecisionCap = 1L << 20;

/// Hard cap for adaptive loops; NICF_PRECISION_CAP overrides the default.
long precision_cap();

/// Why an evaluation at fixed precision produced no ball.
enum class EvalFailure { None, SqrtCut, NearZeroDivisor };

/// A parsed number bound to a field, evaluable to a ball at any precision.
class RefinableComplex {
public:
    RefinableComplex(Expr expr, FieldId field);
    static RefinableComplex parse(std::string_view text, FieldId field);

    const Expr& expr() const noexcept { return expr_; }
    FieldId field() const noexcept { return field_; }
    /// Exact value when the tree only uses integers, w (and i over d = 1)
    /// and field operations.
    const std::optional<KElement>& exact() const noexcept { return exact_; }
    bool is_exact() const noexcept { return exact_.has_value(); }

    /// Guard budget in bits (2 per tree node).
    long guard_bits() const noexcept { return 2 * static_cast<long>(expr_.node_count()); }

    /// Ball enclosing the value, computed with `bits + guard_bits()` working
    /// precision. Empty when the precision does not suffice.
    std::optional<Ball> eval(long bits, EvalFailure* why = nullptr) const;

    /// Doubles the precision from `start` until eval succeeds. Throws
    /// DivisionNearZero or PrecisionExhausted at the cap.
    Ball eval_adaptive(long start = kStartPrecision) const;

private:
    Expr expr_;
    FieldId field_;
    std::optional<KElement> exact_;
};

/// Folds the tree into K when possible. Throws DivisionByZero for an exact
/// zero denominator.
std::optional<KElement> is_exact_in_K(const Expr& e, FieldId field);
inline std::optional<KElement> is_exact_in_K(const RefinableComplex& z) { return z.exact(); }

RefinableComplex embed(const QuadInt& x);
RefinableComplex embed(const KElement& x);

/// Ball for the complex embedding (Im sqrt(-d) > 0) of an element of K.
Ball ball_of(const KElement& x, mpfr_prec_t prec);
Ball ball_of(const QuadInt& x, mpfr_prec_t prec);

/// Expression for a + b*w (and a KElement over its denominator).
Expr expr_of(const QuadInt& x);
Expr expr_of(const KElement& x);

}  // namespace nicf
