#pragma once

// Expression trees for the constants, identity sides and arctangent
// arguments in the catalogs, with three evaluators:
//
//   eval_index  integer-valued subexpressions (Fibonacci indices, bounds)
//   eval_exact  exact evaluation in Q(phi)*sqrt(r) when the tree is algebraic
//   eval_fixed  fixed-point evaluation with absolute error <= 2^(-prec)

#include "goldarc/fixed.hpp"
#include "goldarc/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goldarc {

enum class ExprKind {
    number,    // rational literal
    variable,  // record parameter or summation index
    phi,
    pi,
    sqrt,   // sqrt of a non-negative rational-valued child
    fib,    // F_(child)
    lucas,  // L_(child)
    atan,
    log,
    neg,
    add,
    sub,
    mul,
    div,
    pow,  // child[0] ^ child[1], integer exponent
    sum,  // finite sum over `name` from child[0] to child[1] of child[2]
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    mpq_class value;  // number
    std::string name;  // variable, or the index of a sum
    std::vector<ExprPtr> args;
};

/// Parameter and index bindings.
using Env = std::map<std::string, long, std::less<>>;

namespace ex {
ExprPtr number(const mpq_class& q);
ExprPtr var(std::string name);
ExprPtr phi();
ExprPtr pi();
ExprPtr unary(ExprKind kind, ExprPtr arg);
ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr sum(std::string index, ExprPtr lo, ExprPtr hi, ExprPtr body);
}  // namespace ex

/// Parses the catalog expression syntax: + - * / ^, implicit multiplication
/// ("2k"), constants phi and pi, functions atan, log, sqrt, fib, lucas and
/// sum(index, lo, hi, body). Throws ParseError.
ExprPtr parse_expr(std::string_view text);

std::string to_string(const Expr& e);

/// Integer value of an index-like expression. Throws DomainError if the value
/// is not an integer or does not fit a long.
long eval_index(const Expr& e, const Env& env);

/// Exact value, or nullopt when the tree contains pi/atan/log or a sum of
/// unlike radicals. Throws DegenerateArgument on division by zero.
std::optional<RealScalar> eval_exact(const Expr& e, const Env& env);

/// Fixed-point value within 2^(-prec). Throws DegenerateArgument on division
/// by zero and std::domain_error outside a function's domain.
FixedReal eval_fixed(const Expr& e, const Env& env, long prec);

bool has_transcendental(const Expr& e);

/// Expression tree denoting an exact scalar.
ExprPtr scalar_expr(const RealScalar& x);

/// Free variables (summation indices excluded inside their sums).
std::vector<std::string> free_variables(const Expr& e);

/// Decomposes e into sum of (rational coefficient * atom), where atoms are
/// maximal subtrees that are not sums, differences, negations or rational
/// multiples. Keyed by the atom's canonical text.
std::map<std::string, mpq_class> linear_form(const Expr& e);

}  // namespace goldarc
