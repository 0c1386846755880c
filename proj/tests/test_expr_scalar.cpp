#include "goldarc/error.hpp"
#include "goldarc/expr.hpp"
#include "goldarc/scalar.hpp"

#include <doctest.h>

using namespace goldarc;

namespace {

RealScalar exact(const char* text, const Env& env = {}) {
    auto v = eval_exact(*parse_expr(text), env);
    REQUIRE(v.has_value());
    return *v;
}

FixedReal approx(const char* text, long prec, const Env& env = {}) { return eval_fixed(*parse_expr(text), env, prec); }

}  // namespace

TEST_CASE("parser precedence and implicit multiplication") {
    CHECK(exact("1 + 2*3") == RealScalar(7));
    CHECK(exact("2^3^2") == RealScalar(512));
    CHECK(exact("-2^2") == RealScalar(-4));
    CHECK(exact("(1 + 2) 3") == RealScalar(9));
    CHECK(exact("2k + 1", {{"k", 4}}) == RealScalar(9));
    CHECK(exact("1/2/2") == RealScalar(QPhi::rational(1, 4)));
    CHECK(exact("2 phi^2") == RealScalar(QPhi(ZPhi(2, 2))));
    CHECK(exact("phi^(-1)") == RealScalar(QPhi(ZPhi(-1, 1))));
}

TEST_CASE("parser rejects malformed text") {
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("1 +"), ParseError);
    CHECK_THROWS_AS(parse_expr("atan(1"), ParseError);
    CHECK_THROWS_AS(parse_expr("1 $ 2"), ParseError);
    CHECK_THROWS_AS(parse_expr("frob(2)"), ParseError);
}

TEST_CASE("to_string round trips through the parser") {
    for (const char* text : {"atan(phi^(2k-1))", "2 atan(1) - (1/2) atan(2/lucas(2k-1))",
                             "sum(k, 1, n, atan(1/(fib(2k+1) sqrt(5))))", "sqrt(3) atan(sqrt(3)/5)",
                             "-(1/2) log(phi) + pi/4"}) {
        ExprPtr e = parse_expr(text);
        ExprPtr again = parse_expr(to_string(*e));
        CHECK(to_string(*again) == to_string(*e));
    }
}

TEST_CASE("eval_index") {
    Env env{{"k", 3}};
    CHECK(eval_index(*parse_expr("2k - 1"), env) == 5);
    CHECK(eval_index(*parse_expr("fib(2k)"), env) == 8);
    CHECK(eval_index(*parse_expr("lucas(-3)"), env) == -4);
    CHECK_THROWS_AS(eval_index(*parse_expr("k/2"), env), DomainError);
    CHECK_THROWS_AS(eval_index(*parse_expr("n"), env), DomainError);
}

TEST_CASE("eval_exact on algebraic trees") {
    CHECK(exact("sqrt(5)") == RealScalar(QPhi::sqrt5()));
    CHECK(exact("2 phi - 1") == RealScalar(QPhi::sqrt5()));
    CHECK(exact("sqrt(12)") == RealScalar(QPhi(2L), 3));
    CHECK(exact("sqrt(3) sqrt(5)") == RealScalar(QPhi::sqrt5(), 3));
    CHECK(exact("sqrt(15)") == RealScalar(QPhi::sqrt5(), 3));
    CHECK(exact("sqrt(2) sqrt(2)") == RealScalar(2));
    CHECK(exact("fib(10)/lucas(10)") == RealScalar(QPhi::rational(55, 123)));
    CHECK(exact("sum(j, 1, 4, phi^j)") == RealScalar(phi_pow(1) + phi_pow(2) + phi_pow(3) + phi_pow(4)));
    CHECK(exact("sum(j, 3, 2, j)") == RealScalar(0));
    CHECK_FALSE(eval_exact(*parse_expr("atan(1)"), {}).has_value());
    CHECK_FALSE(eval_exact(*parse_expr("sqrt(2) + sqrt(3)"), {}).has_value());
    CHECK_THROWS_AS(eval_exact(*parse_expr("1/(phi^2 - phi - 1)"), {}), DegenerateArgument);
}

TEST_CASE("eval_fixed") {
    CHECK(within(approx("4 atan(1)", 128), pi(128), 126));
    CHECK(within(approx("log(phi)", 128), log(to_fixed(QPhi::phi(), 200), 130), 126));
    CHECK(within(approx("sqrt(2) + sqrt(3)", 100), sqrt_int(2, 110) + sqrt_int(3, 110), 98));
    CHECK(approx("atan(1/2)", 128).to_decimal(30) == "0.463647609000806116214256231461");
    CHECK(within(approx("sum(k, 1, n, atan(1/lucas(2k)))", 128, {{"n", 5}}),
                 approx("atan(phi^11) - atan(phi)", 128), 125));
    CHECK_THROWS_AS(approx("1/(fib(0))", 64), DegenerateArgument);
    CHECK_THROWS_AS(approx("log(1 - phi)", 64), std::domain_error);
}

TEST_CASE("has_transcendental and free_variables") {
    CHECK(has_transcendental(*parse_expr("1 + atan(2)")));
    CHECK(has_transcendental(*parse_expr("pi")));
    CHECK_FALSE(has_transcendental(*parse_expr("sqrt(5) phi^3")));
    auto vars = free_variables(*parse_expr("sum(k, 1, n, atan(1/lucas(2k)))"));
    REQUIRE(vars.size() == 1);
    CHECK(vars[0] == "n");
}

TEST_CASE("linear_form groups rational multiples of atoms") {
    auto lf = linear_form(*parse_expr("2 atan(1) - (1/2) atan(1/2) + atan(1) / 3 - atan(1/2)"));
    REQUIRE(lf.size() == 2);
    CHECK(lf.at(to_string(*parse_expr("atan(1)"))) == mpq_class(7, 3));
    CHECK(lf.at(to_string(*parse_expr("atan(1/2)"))) == mpq_class(-3, 2));
    auto cancel = linear_form(*parse_expr("atan(phi) - atan(phi)"));
    for (const auto& [atom, c] : cancel) CHECK(c == 0);
}

TEST_CASE("scalar_expr denotes the same value") {
    for (RealScalar x : {RealScalar(QPhi(ZPhi(3, -5), 7)), RealScalar(QPhi::sqrt5(), 3), RealScalar(-2),
                         RealScalar(QPhi(ZPhi(1, 1), 2), 2)}) {
        auto back = eval_exact(*scalar_expr(x), {});
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
}

TEST_CASE("RealScalar arithmetic") {
    RealScalar s3(QPhi(1L), 3), s5(QPhi::sqrt5());
    CHECK(s3 * s3 == RealScalar(3));
    CHECK(s3 * s5 == RealScalar(QPhi::sqrt5(), 3));
    CHECK((s3 + s3) == RealScalar(QPhi(2L), 3));
    CHECK_FALSE(RealScalar::addable(s3, RealScalar(QPhi(1L), 2)));
    CHECK_THROWS_AS(s3 + RealScalar(QPhi(1L), 2), std::domain_error);
    CHECK(s3 / s3 == RealScalar(1));
    CHECK(pow(s3, 4) == RealScalar(9));
    CHECK(pow(s3, -1) == RealScalar(QPhi::rational(1, 3), 3));
    CHECK(RealScalar::sqrt_of(mpq_class(27, 4)) == RealScalar(QPhi::rational(3, 2), 3));
    CHECK(RealScalar::sqrt_of(mpq_class(1, 5)) == RealScalar(QPhi::sqrt5() / QPhi(5L)));
    CHECK(sign(RealScalar(QPhi(ZPhi(2, -1)), 7)) > 0);
    CHECK(sign(-s3) < 0);
    CHECK(abs(-s3) == s3);
    CHECK(within(to_fixed(RealScalar(QPhi::sqrt5(), 3), 100), sqrt_int(15, 110), 99));
}
