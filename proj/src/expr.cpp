#include "nicf/expr.hpp"

#include "nicf/errors.hpp"

#include <cctype>
#include <optional>

namespace nicf {

struct Expr::Node {
    Kind kind;
    mpq_class value;
    unsigned long index = 0;
    std::optional<Expr> a;
    std::optional<Expr> b;
    std::size_t count = 1;
};

Expr Expr::make(Kind kind, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->count = 1 + a.node_count() + b.node_count();
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::move(n));
}

Expr Expr::integer(const mpz_class& v) {
    if (v < 0) return -integer(-v);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Integer;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::rational(const mpq_class& q) {
    if (q < 0) return -rational(-q);
    if (q.get_den() == 1) return integer(q.get_num());
    return integer(q.get_num()) / integer(q.get_den());
}

Expr Expr::imag_unit() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ImagUnit;
    return Expr(std::move(n));
}

Expr Expr::omega() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Omega;
    return Expr(std::move(n));
}

Expr Expr::sqrt(Expr x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sqrt;
    n->count = 1 + x.node_count();
    n->a = std::move(x);
    return Expr(std::move(n));
}

Expr Expr::root(unsigned long k, const mpq_class& q) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Root;
    n->index = k;
    n->value = q;
    return Expr(std::move(n));
}

Expr Expr::unit_root(const mpq_class& q) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::UnitRoot;
    n->value = q;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
const mpq_class& Expr::value() const noexcept { return node_->value; }
unsigned long Expr::root_index() const noexcept { return node_->index; }
const Expr& Expr::lhs() const { return *node_->a; }
const Expr& Expr::rhs() const { return *node_->b; }
std::size_t Expr::node_count() const noexcept { return node_->count; }

Expr operator+(Expr x, Expr y) { return Expr::make(Expr::Kind::Add, std::move(x), std::move(y)); }
Expr operator-(Expr x, Expr y) { return Expr::make(Expr::Kind::Sub, std::move(x), std::move(y)); }
Expr operator*(Expr x, Expr y) { return Expr::make(Expr::Kind::Mul, std::move(x), std::move(y)); }
Expr operator/(Expr x, Expr y) { return Expr::make(Expr::Kind::Div, std::move(x), std::move(y)); }

Expr operator-(Expr x) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::Neg;
    n->count = 1 + x.node_count();
    n->a = std::move(x);
    return Expr(std::move(n));
}

bool operator==(const Expr& x, const Expr& y) {
    if (x.node_ == y.node_) return true;
    const auto& a = *x.node_;
    const auto& b = *y.node_;
    if (a.kind != b.kind || a.index != b.index || a.value != b.value) return false;
    if (a.a.has_value() != b.a.has_value() || a.b.has_value() != b.b.has_value()) return false;
    if (a.a && !(*a.a == *b.a)) return false;
    if (a.b && !(*a.b == *b.b)) return false;
    return true;
}

namespace {

std::string rational_text(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// 0: sum level, 1: product level, 2: factor, 3: atom
int level(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 0;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 1;
        case Expr::Kind::Neg: return 2;
        default: return 3;
    }
}

void emit(const Expr& e, int required, std::string& out) {
    const bool paren = level(e.kind()) < required;
    if (paren) out += '(';
    switch (e.kind()) {
        case Expr::Kind::Integer: out += e.value().get_num().get_str(); break;
        case Expr::Kind::ImagUnit: out += 'i'; break;
        case Expr::Kind::Omega: out += 'w'; break;
        case Expr::Kind::Sqrt:
            out += "sqrt(";
            emit(e.lhs(), 0, out);
            out += ')';
            break;
        case Expr::Kind::Root:
            out += "root(" + std::to_string(e.root_index()) + "," + rational_text(e.value()) + ")";
            break;
        case Expr::Kind::UnitRoot: out += "e(" + rational_text(e.value()) + ")"; break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            emit(e.lhs(), 0, out);
            out += e.kind() == Expr::Kind::Add ? '+' : '-';
            emit(e.rhs(), 1, out);
            break;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            emit(e.lhs(), 1, out);
            out += e.kind() == Expr::Kind::Mul ? '*' : '/';
            emit(e.rhs(), 2, out);
            break;
        case Expr::Kind::Neg:
            out += '-';
            emit(e.lhs(), 3, out);
            break;
    }
    if (paren) out += ')';
}

// Folds an argument that must be a rational constant.
std::optional<mpq_class> fold_rational(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Integer: return e.value();
        case K::Neg: {
            auto v = fold_rational(e.lhs());
            if (!v) return std::nullopt;
            return mpq_class(-*v);
        }
        case K::Add:
        case K::Sub:
        case K::Mul:
        case K::Div: {
            auto x = fold_rational(e.lhs());
            auto y = fold_rational(e.rhs());
            if (!x || !y) return std::nullopt;
            if (e.kind() == K::Add) return mpq_class(*x + *y);
            if (e.kind() == K::Sub) return mpq_class(*x - *y);
            if (e.kind() == K::Mul) return mpq_class(*x * *y);
            if (*y == 0) throw DivisionByZero();
            return mpq_class(*x / *y);
        }
        default: return std::nullopt;
    }
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) {
                e = std::move(e) + term();
            } else if (accept('-')) {
                e = std::move(e) - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (accept('*')) {
                e = std::move(e) * factor();
            } else if (accept('/')) {
                e = std::move(e) / factor();
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (accept('-')) return -atom();
        return atom();
    }

    mpq_class rational_arg() {
        skip();
        std::size_t at = pos_;
        Expr e = expr();
        std::optional<mpq_class> v;
        try {
            v = fold_rational(e);
        } catch (const DivisionByZero&) {
            throw ParseError("zero denominator in rational argument", at);
        }
        if (!v) throw ParseError("expected a rational argument", at);
        return *v;
    }

    Expr atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Expr::integer(mpz_class(std::string(s_.substr(start, pos_ - start))));
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "i") return Expr::imag_unit();
            if (name == "w") return Expr::omega();
            if (name == "sqrt") {
                expect('(');
                Expr x = expr();
                expect(')');
                return Expr::sqrt(std::move(x));
            }
            if (name == "root") {
                expect('(');
                skip();
                std::size_t at = pos_;
                mpq_class k = rational_arg();
                if (k.get_den() != 1 || k <= 0 || !k.get_num().fits_ulong_p()) {
                    throw ParseError("root index must be a positive integer", at);
                }
                expect(',');
                mpq_class q = rational_arg();
                if (q < 0) throw ParseError("root() needs a nonnegative rational", at);
                expect(')');
                return Expr::root(k.get_num().get_ui(), q);
            }
            if (name == "e") {
                expect('(');
                mpq_class q = rational_arg();
                expect(')');
                return Expr::unit_root(q);
            }
            throw ParseError("unknown function '" + name + "'", start);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string Expr::to_string() const {
    std::string out;
    emit(*this, 0, out);
    return out;
}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace nicf
