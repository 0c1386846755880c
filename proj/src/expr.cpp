#include "goldarc/expr.hpp"

#include "goldarc/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace goldarc {

namespace ex {

ExprPtr number(const mpq_class& q) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::number;
    e->value = q;
    return e;
}

ExprPtr var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::variable;
    e->name = std::move(name);
    return e;
}

ExprPtr phi() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::phi;
    return e;
}

ExprPtr pi() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::pi;
    return e;
}

ExprPtr unary(ExprKind kind, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(arg)};
    return e;
}

ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr sum(std::string index, ExprPtr lo, ExprPtr hi, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::sum;
    e->name = std::move(index);
    e->args = {std::move(lo), std::move(hi), std::move(body)};
    return e;
}

}  // namespace ex

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { number, ident, op, end };

struct Token {
    Tok kind;
    std::string text;
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (cur_.kind != Tok::end) fail("unexpected '" + cur_.text + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("in expression \"" + std::string(src_) + "\": " + what);
    }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ >= src_.size()) {
            cur_ = {Tok::end, ""};
            return;
        }
        char c = src_[pos_];
        std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            cur_ = {Tok::number, std::string(src_.substr(start, pos_ - start))};
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_ = {Tok::ident, std::string(src_.substr(start, pos_ - start))};
        } else if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            ++pos_;
            cur_ = {Tok::op, std::string(1, c)};
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    bool at_op(char c) const { return cur_.kind == Tok::op && cur_.text[0] == c; }

    void expect(char c) {
        if (!at_op(c)) fail(std::string("expected '") + c + "'");
        advance();
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (at_op('+') || at_op('-')) {
            ExprKind k = at_op('+') ? ExprKind::add : ExprKind::sub;
            advance();
            lhs = ex::binary(k, lhs, term());
        }
        return lhs;
    }

    bool starts_operand() const {
        return cur_.kind == Tok::number || cur_.kind == Tok::ident || at_op('(');
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            if (at_op('*') || at_op('/')) {
                ExprKind k = at_op('*') ? ExprKind::mul : ExprKind::div;
                advance();
                lhs = ex::binary(k, lhs, unary());
            } else if (starts_operand()) {
                lhs = ex::binary(ExprKind::mul, lhs, power());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        if (at_op('-')) {
            advance();
            ExprPtr arg = unary();
            if (arg->kind == ExprKind::number) return ex::number(-arg->value);
            return ex::unary(ExprKind::neg, arg);
        }
        if (at_op('+')) {
            advance();
            return unary();
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (at_op('^')) {
            advance();
            return ex::binary(ExprKind::pow, base, unary());
        }
        return base;
    }

    ExprPtr primary() {
        if (cur_.kind == Tok::number) {
            mpq_class q(cur_.text);
            advance();
            return ex::number(q);
        }
        if (at_op('(')) {
            advance();
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (cur_.kind != Tok::ident) fail(cur_.kind == Tok::end ? "unexpected end" : "unexpected '" + cur_.text + "'");
        std::string name = cur_.text;
        advance();
        if (name == "phi") return ex::phi();
        if (name == "pi") return ex::pi();
        if (name == "sum") {
            expect('(');
            if (cur_.kind != Tok::ident) fail("sum index must be an identifier");
            std::string index = cur_.text;
            advance();
            expect(',');
            ExprPtr lo = expr();
            expect(',');
            ExprPtr hi = expr();
            expect(',');
            ExprPtr body = expr();
            expect(')');
            return ex::sum(index, lo, hi, body);
        }
        static const std::map<std::string, ExprKind, std::less<>> functions = {
            {"atan", ExprKind::atan}, {"arctan", ExprKind::atan}, {"log", ExprKind::log},
            {"sqrt", ExprKind::sqrt}, {"fib", ExprKind::fib},     {"lucas", ExprKind::lucas},
        };
        if (auto it = functions.find(name); it != functions.end()) {
            expect('(');
            ExprPtr arg = expr();
            expect(')');
            return ex::unary(it->second, arg);
        }
        if (at_op('(')) fail("unknown function '" + name + "'");
        return ex::var(name);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_{Tok::end, ""};
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::neg: return 3;
        case ExprKind::pow: return 4;
        case ExprKind::number:
            if (e.value < 0) return 3;
            if (e.value.get_den() != 1) return 2;
            return 5;
        default: return 5;
    }
}

std::string wrap(const Expr& e, bool paren) {
    std::string s = to_string(e);
    return paren ? "(" + s + ")" : s;
}

const char* function_name(ExprKind k) {
    switch (k) {
        case ExprKind::sqrt: return "sqrt";
        case ExprKind::fib: return "fib";
        case ExprKind::lucas: return "lucas";
        case ExprKind::atan: return "atan";
        case ExprKind::log: return "log";
        default: return "?";
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    switch (e.kind) {
        case ExprKind::number: return e.value.get_str();
        case ExprKind::variable: return e.name;
        case ExprKind::phi: return "phi";
        case ExprKind::pi: return "pi";
        case ExprKind::sqrt:
        case ExprKind::fib:
        case ExprKind::lucas:
        case ExprKind::atan:
        case ExprKind::log: return std::string(function_name(e.kind)) + "(" + to_string(*e.args[0]) + ")";
        case ExprKind::neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) <= 3);
        case ExprKind::add:
            return to_string(*e.args[0]) + " + " + wrap(*e.args[1], precedence(*e.args[1]) < 1);
        case ExprKind::sub:
            return to_string(*e.args[0]) + " - " + wrap(*e.args[1], precedence(*e.args[1]) <= 1 || precedence(*e.args[1]) == 3);
        case ExprKind::mul:
            return wrap(*e.args[0], precedence(*e.args[0]) < 2) + "*" +
                   wrap(*e.args[1], precedence(*e.args[1]) <= 3 && !(e.args[1]->kind == ExprKind::mul));
        case ExprKind::div:
            return wrap(*e.args[0], precedence(*e.args[0]) < 2) + "/" + wrap(*e.args[1], precedence(*e.args[1]) <= 3);
        case ExprKind::pow:
            return wrap(*e.args[0], precedence(*e.args[0]) <= 4) + "^" + wrap(*e.args[1], precedence(*e.args[1]) < 5);
        case ExprKind::sum:
            return "sum(" + e.name + ", " + to_string(*e.args[0]) + ", " + to_string(*e.args[1]) + ", " +
                   to_string(*e.args[2]) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Evaluation

bool has_transcendental(const Expr& e) {
    if (e.kind == ExprKind::pi || e.kind == ExprKind::atan || e.kind == ExprKind::log) return true;
    return std::any_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return has_transcendental(*a); });
}

namespace {

void collect_free(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
    if (e.kind == ExprKind::variable) {
        if (!bound.count(e.name)) out.insert(e.name);
        return;
    }
    if (e.kind == ExprKind::sum) {
        collect_free(*e.args[0], bound, out);
        collect_free(*e.args[1], bound, out);
        bool inserted = bound.insert(e.name).second;
        collect_free(*e.args[2], bound, out);
        if (inserted) bound.erase(e.name);
        return;
    }
    for (const auto& a : e.args) collect_free(*a, bound, out);
}

long lookup(const Env& env, const std::string& name) {
    auto it = env.find(name);
    if (it == env.end()) throw DomainError("unbound variable '" + name + "'");
    return it->second;
}

}  // namespace

std::vector<std::string> free_variables(const Expr& e) {
    std::set<std::string> bound, out;
    collect_free(e, bound, out);
    return {out.begin(), out.end()};
}

long eval_index(const Expr& e, const Env& env) {
    // Fast path for the affine shapes that dominate the catalog.
    switch (e.kind) {
        case ExprKind::number:
            if (e.value.get_den() == 1 && e.value.get_num().fits_slong_p()) return e.value.get_num().get_si();
            break;
        case ExprKind::variable: return lookup(env, e.name);
        case ExprKind::add: return eval_index(*e.args[0], env) + eval_index(*e.args[1], env);
        case ExprKind::sub: return eval_index(*e.args[0], env) - eval_index(*e.args[1], env);
        case ExprKind::neg: return -eval_index(*e.args[0], env);
        case ExprKind::mul:
            if (e.args[0]->kind == ExprKind::number || e.args[0]->kind == ExprKind::variable)
                return eval_index(*e.args[0], env) * eval_index(*e.args[1], env);
            break;
        default: break;
    }
    auto v = eval_exact(e, env);
    if (!v || !v->is_integer() || !v->coeff().a().fits_slong_p())
        throw DomainError("expression " + to_string(e) + " is not a machine integer");
    return v->coeff().a().get_si();
}

std::optional<RealScalar> eval_exact(const Expr& e, const Env& env) {
    auto child = [&](std::size_t i) { return eval_exact(*e.args[i], env); };
    switch (e.kind) {
        case ExprKind::number: return RealScalar(QPhi::rational(e.value.get_num(), e.value.get_den()));
        case ExprKind::variable: return RealScalar(lookup(env, e.name));
        case ExprKind::phi: return RealScalar(QPhi::phi());
        case ExprKind::pi:
        case ExprKind::atan:
        case ExprKind::log: return std::nullopt;
        case ExprKind::sqrt: {
            auto a = child(0);
            if (!a || !a->is_rational()) return std::nullopt;
            return RealScalar::sqrt_of(a->coeff().to_rational());
        }
        case ExprKind::fib: return RealScalar(QPhi(fib(eval_index(*e.args[0], env))));
        case ExprKind::lucas: return RealScalar(QPhi(lucas(eval_index(*e.args[0], env))));
        case ExprKind::neg: {
            auto a = child(0);
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprKind::add:
        case ExprKind::sub: {
            auto a = child(0);
            if (!a) return std::nullopt;
            auto b = child(1);
            if (!b) return std::nullopt;
            if (e.kind == ExprKind::sub) b = -*b;
            if (!RealScalar::addable(*a, *b)) return std::nullopt;
            return *a + *b;
        }
        case ExprKind::mul: {
            auto a = child(0);
            if (!a) return std::nullopt;
            auto b = child(1);
            if (!b) return std::nullopt;
            return *a * *b;
        }
        case ExprKind::div: {
            auto a = child(0);
            if (!a) return std::nullopt;
            auto b = child(1);
            if (!b) return std::nullopt;
            if (b->is_zero()) throw DegenerateArgument("division by zero in " + to_string(e));
            return *a / *b;
        }
        case ExprKind::pow: {
            long n = eval_index(*e.args[1], env);
            auto a = child(0);
            if (!a) return std::nullopt;
            if (n < 0 && a->is_zero()) throw DegenerateArgument("zero to a negative power in " + to_string(e));
            return pow(*a, n);
        }
        case ExprKind::sum: {
            long lo = eval_index(*e.args[0], env), hi = eval_index(*e.args[1], env);
            Env inner = env;
            RealScalar acc;
            for (long i = lo; i <= hi; ++i) {
                inner[e.name] = i;
                auto t = eval_exact(*e.args[2], inner);
                if (!t || !RealScalar::addable(acc, *t)) return std::nullopt;
                acc = acc + *t;
            }
            return acc;
        }
    }
    return std::nullopt;
}

namespace {

/// floor(log2 |x|) from a low-precision evaluation, or nullopt if x looks
/// like zero at 2048 bits.
std::optional<long> rough_magnitude(const Expr& e, const Env& env) {
    for (long p : {32L, 128L, 512L, 2048L}) {
        FixedReal v = eval_fixed(e, env, p);
        if (!below_pow2(v, p - 2)) return v.magnitude_bits();
    }
    return std::nullopt;
}

/// Bits b with |x| < 2^b, b >= 0.
long upper_bits(const Expr& e, const Env& env) {
    auto m = rough_magnitude(e, env);
    return m ? std::max(0L, *m + 2) : 0L;
}

long bit_length(unsigned long v) {
    long n = 0;
    for (; v != 0; v >>= 1) ++n;
    return n;
}

}  // namespace

FixedReal eval_fixed(const Expr& e, const Env& env, long prec) {
    if (!has_transcendental(e)) {
        if (auto v = eval_exact(e, env)) return to_fixed(*v, prec);
    }
    const auto& args = e.args;
    switch (e.kind) {
        case ExprKind::pi: return pi(prec);
        case ExprKind::atan: return arctan(eval_fixed(*args[0], env, prec + 2), prec + 2);
        case ExprKind::log: {
            auto m = rough_magnitude(*args[0], env);
            if (!m) throw std::domain_error("logarithm of zero in " + to_string(e));
            long extra = std::max(0L, 1 - *m);
            return log(eval_fixed(*args[0], env, prec + 3 + extra), prec + 2);
        }
        case ExprKind::sqrt: {
            auto m = rough_magnitude(*args[0], env);
            if (!m) return FixedReal(0, prec);
            long extra = std::max(0L, 1 - *m / 2);
            return sqrt(eval_fixed(*args[0], env, prec + 2 + extra), prec + 1);
        }
        case ExprKind::neg: return -eval_fixed(*args[0], env, prec);
        case ExprKind::add: return eval_fixed(*args[0], env, prec + 1) + eval_fixed(*args[1], env, prec + 1);
        case ExprKind::sub: return eval_fixed(*args[0], env, prec + 1) - eval_fixed(*args[1], env, prec + 1);
        case ExprKind::mul: {
            long ba = upper_bits(*args[0], env), bb = upper_bits(*args[1], env);
            FixedReal a = eval_fixed(*args[0], env, prec + 2 + bb);
            FixedReal b = eval_fixed(*args[1], env, prec + 2 + ba);
            return mul(a, b, prec + 2);
        }
        case ExprKind::div: {
            auto mb = rough_magnitude(*args[1], env);
            if (!mb) throw DegenerateArgument("division by (numerically) zero in " + to_string(e));
            long lower = *mb - 1;  // |b| >= 2^lower
            long ba = upper_bits(*args[0], env);
            FixedReal a = eval_fixed(*args[0], env, prec + 2 + std::max(0L, -lower));
            long pb = prec + 3 + std::max(0L, ba - 2 * lower + 1);
            pb = std::max(pb, 2 - lower);
            FixedReal b = eval_fixed(*args[1], env, pb);
            return div(a, b, prec + 2);
        }
        case ExprKind::pow: {
            long n = eval_index(*args[1], env);
            if (n < 0) {
                auto inv = ex::binary(ExprKind::div, ex::number(1),
                                      ex::binary(ExprKind::pow, args[0], ex::number(-n)));
                return eval_fixed(*inv, env, prec);
            }
            if (n == 0) return FixedReal::from_integer(1);
            long ba = upper_bits(*args[0], env);
            long w = prec + 4 + (n - 1) * (ba + 1) + 2 * bit_length(static_cast<unsigned long>(n));
            FixedReal base = eval_fixed(*args[0], env, w);
            FixedReal acc = base;
            for (long i = 1; i < n; ++i) acc = mul(acc, base, w);
            return acc.truncated(prec + 1);
        }
        case ExprKind::sum: {
            long lo = eval_index(*args[0], env), hi = eval_index(*args[1], env);
            if (hi < lo) return FixedReal(0, prec);
            long w = prec + 1 + bit_length(static_cast<unsigned long>(hi - lo + 1));
            Env inner = env;
            FixedReal acc(0, w);
            for (long i = lo; i <= hi; ++i) {
                inner[e.name] = i;
                acc = acc + eval_fixed(*args[2], inner, w);
            }
            return acc;
        }
        default: break;
    }
    // Algebraic node whose exact value needs unlike radicals; evaluate children.
    throw std::domain_error("cannot evaluate " + to_string(e));
}

ExprPtr scalar_expr(const RealScalar& x) {
    const QPhi& c = x.coeff();
    ExprPtr num;
    if (c.b() == 0) {
        num = ex::number(mpq_class(c.a()));
    } else {
        ExprPtr phi_term = c.b() == 1 ? ex::phi() : ex::binary(ExprKind::mul, ex::number(mpq_class(c.b())), ex::phi());
        num = c.a() == 0 ? phi_term : ex::binary(ExprKind::add, ex::number(mpq_class(c.a())), phi_term);
    }
    ExprPtr e = c.den() == 1 ? num : ex::binary(ExprKind::div, num, ex::number(mpq_class(c.den())));
    if (!x.in_qphi()) e = ex::binary(ExprKind::mul, e, ex::unary(ExprKind::sqrt, ex::number(mpq_class(x.radicand()))));
    return e;
}

// ---------------------------------------------------------------------------
// Linear forms

namespace {

std::optional<mpq_class> rational_constant(const Expr& e) {
    if (has_transcendental(e) || !free_variables(e).empty()) return std::nullopt;
    auto v = eval_exact(e, Env{});
    if (!v || !v->is_rational()) return std::nullopt;
    return v->coeff().to_rational();
}

void collect_linear(const Expr& e, const mpq_class& c, std::map<std::string, mpq_class>& out) {
    switch (e.kind) {
        case ExprKind::add:
            collect_linear(*e.args[0], c, out);
            collect_linear(*e.args[1], c, out);
            return;
        case ExprKind::sub:
            collect_linear(*e.args[0], c, out);
            collect_linear(*e.args[1], -c, out);
            return;
        case ExprKind::neg: collect_linear(*e.args[0], -c, out); return;
        case ExprKind::number: out["1"] += c * e.value; return;
        case ExprKind::mul:
            if (auto q = rational_constant(*e.args[0])) {
                collect_linear(*e.args[1], c * *q, out);
                return;
            }
            if (auto q = rational_constant(*e.args[1])) {
                collect_linear(*e.args[0], c * *q, out);
                return;
            }
            break;
        case ExprKind::div:
            if (auto q = rational_constant(*e.args[1]); q && *q != 0) {
                collect_linear(*e.args[0], c / *q, out);
                return;
            }
            break;
        default: break;
    }
    out[to_string(e)] += c;
}

}  // namespace

std::map<std::string, mpq_class> linear_form(const Expr& e) {
    std::map<std::string, mpq_class> out;
    collect_linear(e, mpq_class(1), out);
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace goldarc
