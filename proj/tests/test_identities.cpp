#include "goldarc/error.hpp"
#include "goldarc/identities.hpp"
#include "goldarc/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace goldarc;

namespace {

const IdentityRecord& rec(const char* id) {
    const IdentityRecord* r = find_identity(catalog_list(), id);
    REQUIRE_MESSAGE(r != nullptr, id);
    return *r;
}

ExprPtr minus(ExprPtr a, ExprPtr b) { return ex::binary(ExprKind::sub, std::move(a), std::move(b)); }

FixedReal side_gap(const IdentityRecord& r, long v, long prec) {
    Env env{{r.param, v}};
    return eval_fixed(*r.lhs, env, prec) - eval_fixed(*r.rhs, env, prec);
}

}  // namespace

TEST_CASE("catalog contents") {
    const auto& cat = catalog_list();
    CHECK(cat.size() >= 30);
    std::set<std::string> names;
    for (const auto& r : cat) {
        CHECK(names.insert(r.id).second);
        for (const auto& a : r.aliases) CHECK(names.insert(a).second);
        CHECK(r.lhs);
        CHECK(r.rhs);
        CHECK_FALSE(r.anchor.empty());
    }
    CHECK(rec("wdgo3gg").source == Source::external_cited);
    CHECK(rec("cq625h1").source == Source::external_cited);
    CHECK(rec("eq3").source == Source::this_work);
    CHECK(&rec("nhfkxe6") == &rec("eq13"));
    CHECK(&rec("eq10") == &rec("eq10-lemma"));
    CHECK(find_identity(cat, "no-such-id") == nullptr);
    CHECK(rec("eq12").kind == IdentityKind::finite_sum);
    CHECK(rec("golzqcc").kind == IdentityKind::infinite_sum);
    CHECK(std::string(to_string(IdentityKind::infinite_sum)) == "infinite-sum");
    CHECK(std::string(to_string(Source::external_cited)) == "external-cited");
}

TEST_CASE("parameter domains") {
    const IdentityRecord& r = rec("eq3");
    CHECK(r.param == "k");
    CHECK(r.domain.contains(1));
    CHECK_FALSE(r.domain.contains(0));
    CHECK_THROWS_AS(r.bind(0), DomainError);
    CHECK_THROWS_AS(r.bind(std::nullopt), DomainError);
    CHECK(r.bind(4).at("k") == 4);
    CHECK(r.domain.sweep(3) == std::vector<long>{1, 2, 3});

    const ParamDomain& d = rec("eq22a").domain;
    CHECK(d.sweep(2) == std::vector<long>{-2, -1, 2});
    CHECK_FALSE(d.contains(0));
    CHECK_FALSE(d.contains(1));
    CHECK(rec("eq13").bind(std::nullopt).empty());
    CHECK_THROWS_AS(rec("eq13").bind(1), DomainError);
}

TEST_CASE("exact argument steps on worked values") {
    ExactResult a = verify_exact_args(rec("eq3"), 5);
    REQUIRE(a.steps.size() == 1);
    CHECK(a.pass());
    CHECK(*a.steps[0].combined == QPhi::rational(2, 76));

    ExactResult b = verify_exact_args(rec("eq10"), 2);
    CHECK(b.pass());
    CHECK(*b.steps[0].combined == QPhi::rational(1, 7));

    ExactResult c = verify_exact_args(rec("eq7"), 1);
    REQUIRE(c.steps.size() == 2);
    CHECK(c.pass());
    CHECK(*c.steps[0].combined == QPhi(1L));
    CHECK(*c.steps[1].combined == QPhi(-1L));

    CHECK_THROWS_AS(verify_exact_args(rec("eq12"), 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_exact_args(rec("eq17"), 0), DomainError);
}

TEST_CASE("exact steps over a long parameter range") {
    for (const char* id : {"eq3", "eq7", "eq10-lemma", "eq8", "eq9", "eq16", "eq17", "eq18", "eq19", "eq20", "eq21"}) {
        CAPTURE(id);
        for (long k : rec(id).domain.sweep(1, 60)) REQUIRE(verify_exact_args(rec(id), k).pass());
    }
}

TEST_CASE("numeric verification") {
    NumericResult r = verify_numeric(rec("eq22a"), 3, 192);
    CHECK(r.pass);
    CHECK(below_pow2(r.residual, 192));
    CHECK(verify_numeric(rec("eq13"), std::nullopt, 256).pass);
    CHECK_THROWS_AS(verify_numeric(rec("eq22a"), 1, 64), DomainError);
}

TEST_CASE("odd-power identities are off by pi/2 for negative k") {
    const FixedReal half_pi = ldexp(pi(100), -1);
    for (const char* id : {"eq8", "eq9"}) {
        CAPTURE(id);
        for (long k = -6; k <= -1; ++k) {
            CAPTURE(k);
            CHECK(within(abs(side_gap(rec(id), k, 96)), half_pi, 90));
        }
        for (long k = 1; k <= 6; ++k) CHECK(below_pow2(side_gap(rec(id), k, 96), 90));
    }
}

TEST_CASE("three-Lucas identity is the difference of the two reciprocal identities") {
    const IdentityRecord& b = rec("myyri84");
    const IdentityRecord& c = rec("kfqaolk");
    const IdentityRecord& s = rec("szjec8z");
    ExprPtr diff = minus(minus(b.lhs, b.rhs), minus(c.lhs, c.rhs));
    ExprPtr target = minus(s.lhs, s.rhs);
    auto lhs_form = linear_form(*diff);
    auto rhs_form = linear_form(*target);
    std::erase_if(lhs_form, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs_form, [](const auto& kv) { return kv.second == 0; });
    CHECK(lhs_form == rhs_form);
    for (long n : s.domain.sweep(10)) CHECK(verify_numeric(s, n, 128).pass);
}

TEST_CASE("both telescoped odd-power sums agree") {
    for (long n = 0; n <= 20; ++n) {
        Env env{{"n", n}};
        CHECK(within(eval_fixed(*rec("eq12").rhs, env, 128), eval_fixed(*rec("tjjg38v").rhs, env, 128), 126));
    }
}

TEST_CASE("infinite sums") {
    for (std::string id : {"golzqcc", "q0o0cvy", "s3-infinite"}) {
        CAPTURE(id);
        CHECK(verify_infinite(rec(id.c_str()), 64, 128).pass);
        // residual and bound differ by about x^3/3 ~ 2^-270 here
        InfiniteResult fine = verify_infinite(rec(id.c_str()), 64, 320);
        CHECK(fine.residual < fine.tail_bound);
        CHECK(fine.residual.sign() > 0);
        double ratio = decay_ratio(rec(id.c_str()), 10, 40);
        CHECK(std::abs(ratio - std::pow((1 + std::sqrt(5.0)) / 2, -2)) <= 0.05);
    }
    InfiniteResult one = verify_infinite(rec("s3-infinite"), 1, 128);
    FixedReal expect = arctan(to_fixed(phi_pow(-4), 140), 130);
    CHECK(within(one.residual, expect, 60));
    CHECK(verify_infinite(rec("cq625h1"), 64, 128, 3).pass);
    CHECK_THROWS_AS(verify_infinite(rec("eq3"), 64, 128, 1), std::invalid_argument);
}

TEST_CASE("a wrong record fails") {
    auto bad = parse_identity_catalog(
        "identity bad\n"
        "  params: k >= 1\n"
        "  lhs: atan(phi^(2k-1))\n"
        "  rhs: 2 atan(1) - (1/2) atan(1/lucas(2k-1))\n"
        "  step: sum; x = 1/phi^(2k-1); y = 1/phi^(2k-1); expected = 1/lucas(2k-1); branch = 0\n"
        "  anchor: deliberately wrong\n"
        "end\n");
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(verify_numeric(bad[0], 2, 128).pass);
    CHECK_FALSE(verify_exact_args(bad[0], 2).pass());
    SweepOptions opt;
    opt.bound = 5;
    auto rows = verify_record(bad[0], opt);
    REQUIRE_FALSE(rows.empty());
    for (const auto& row : rows) {
        CHECK_FALSE(row.pass());
        CHECK(row.failures == row.cases);
    }
}

TEST_CASE("a wrong branch multiple fails") {
    auto bad = parse_identity_catalog(
        "identity bad-branch\n"
        "  params: k >= 1\n"
        "  lhs: atan(phi^(2k+1)) + atan(phi^(2k-1))\n"
        "  rhs: pi - atan(1/fib(2k))\n"
        "  step: sum; x = phi^(2k+1); y = phi^(2k-1); expected = -1/fib(2k); branch = 0\n"
        "  anchor: wrong branch\n"
        "end\n");
    ExactResult r = verify_exact_args(bad[0], 3);
    CHECK(r.steps[0].exact_ok);
    CHECK_FALSE(r.steps[0].branch_ok);
}

TEST_CASE("catalog parse errors") {
    CHECK_THROWS_AS(parse_identity_catalog("identity x\n  lhs: 1\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_identity_catalog("identity x\n  params: k >> 1\n  lhs: 1\n  rhs: 1\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_identity_catalog("identity x\n  params: none\n  lhs: k\n  rhs: 1\n  anchor: a\nend\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_identity_catalog("identity x\n  params: none\n  lhs: 1\n  rhs: 1\n  kind: odd\nend\n"),
                    ParseError);
}

TEST_CASE("sweep over the catalog at a small bound") {
    SweepOptions opt;
    opt.bound = 8;
    auto rows = verify_all(catalog_list(), opt);
    CHECK(rows.size() >= catalog_list().size());
    for (const auto& row : rows) {
        CAPTURE(row.id);
        CAPTURE(row.detail);
        CHECK(row.pass());
        CHECK(row.cases > 0);
    }
}
