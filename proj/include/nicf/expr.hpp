#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace nicf {

/// Immutable expression tree for input numbers.
///
/// Grammar (whitespace ignored):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-'? atom
///   atom   := integer | 'i' | 'w' | func '(' args ')' | '(' expr ')'
///   func   := sqrt(expr) | root(k, rational) | e(rational)
///
/// `root(k, q)` is the positive real k-th root of q >= 0 and `e(q)` is
/// e^{2 pi i q}. Rational arguments are folded when parsing.
class Expr {
public:
    enum class Kind { Integer, ImagUnit, Omega, Sqrt, Root, UnitRoot, Add, Sub, Mul, Div, Neg };

    static Expr integer(const mpz_class& n);
    /// Integer literal or a quotient of literals, with a leading Neg if q < 0.
    static Expr rational(const mpq_class& q);
    static Expr imag_unit();
    static Expr omega();
    static Expr sqrt(Expr x);
    static Expr root(unsigned long k, const mpq_class& q);
    static Expr unit_root(const mpq_class& q);

    Kind kind() const noexcept;
    /// Integer: the literal; Root/UnitRoot: the rational argument.
    const mpq_class& value() const noexcept;
    unsigned long root_index() const noexcept;
    /// Operand of unary nodes and left operand of binary nodes.
    const Expr& lhs() const;
    const Expr& rhs() const;

    std::size_t node_count() const noexcept;
    /// Emits text that parses back to an identical tree.
    std::string to_string() const;

    friend Expr operator+(Expr x, Expr y);
    friend Expr operator-(Expr x, Expr y);
    friend Expr operator*(Expr x, Expr y);
    friend Expr operator/(Expr x, Expr y);
    friend Expr operator-(Expr x);

    friend bool operator==(const Expr& x, const Expr& y);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Kind kind, Expr a, Expr b);

    std::shared_ptr<const Node> node_;
};

/// Throws ParseError (with byte offset) on malformed input or unknown functions.
Expr parse_expr(std::string_view text);

}  // namespace nicf
