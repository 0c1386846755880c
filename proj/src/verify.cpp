#include "goldarc/verify.hpp"

#include "goldarc/error.hpp"

#include <cmath>
#include <stdexcept>

namespace goldarc {

namespace {

constexpr long kGuard = 16;
constexpr long kBranchBits = 64;

QPhi exact_qphi(const Expr& e, const Env& env) {
    auto v = eval_exact(e, env);
    if (!v || !v->in_qphi()) throw std::domain_error(to_string(e) + " is not an element of Q(phi)");
    return v->coeff();
}

long bit_length(unsigned long v) {
    long n = 0;
    for (; v != 0; v >>= 1) ++n;
    return n;
}

FixedReal partial_sum(const InfiniteSum& s, const Env& env, long start, long n_terms, long prec) {
    const long w = prec + 1 + bit_length(static_cast<unsigned long>(n_terms) + 1);
    Env inner = env;
    FixedReal acc(0, w);
    for (long i = 0; i < n_terms; ++i) {
        inner[s.index] = start + i;
        acc = acc + eval_fixed(*s.term, inner, w);
    }
    return acc;
}

const InfiniteSum& series_of(const IdentityRecord& r) {
    if (!r.series) throw std::invalid_argument("record '" + r.id + "' is not an infinite sum");
    return *r.series;
}

}  // namespace

NumericResult verify_numeric(const IdentityRecord& r, std::optional<long> param, long p) {
    Env env = r.bind(param);
    if (r.kind == IdentityKind::infinite_sum)
        throw std::invalid_argument("record '" + r.id + "' is an infinite sum; use verify_infinite");
    FixedReal l = eval_fixed(*r.lhs, env, p + kGuard);
    FixedReal rh = eval_fixed(*r.rhs, env, p + kGuard);
    NumericResult out;
    out.residual = abs(l - rh);
    out.pass = below_pow2(out.residual, p);
    return out;
}

bool ExactResult::pass() const {
    for (const auto& s : steps)
        if (!s.pass()) return false;
    return !steps.empty();
}

ExactResult verify_exact_args(const IdentityRecord& r, std::optional<long> param) {
    if (r.steps.empty()) throw std::invalid_argument("record '" + r.id + "' has no exact argument steps");
    Env env = r.bind(param);
    const long w = kBranchBits + 16;
    const FixedReal pi_w = pi(w);
    ExactResult out;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const ArgStep& st = r.steps[i];
        StepReport rep;
        rep.index = i;
        try {
            QPhi x = exact_qphi(*st.x, env), y = exact_qphi(*st.y, env);
            rep.expected = exact_qphi(*st.expected, env);
            rep.combined = arctan_arg_combine(x, y, st.mode);
            rep.exact_ok = *rep.combined == *rep.expected;

            FixedReal ax = arctan(to_fixed(x, w), w), ay = arctan(to_fixed(y, w), w);
            FixedReal lhs = st.mode == CombineMode::sum ? ax + ay : ax - ay;
            FixedReal rhs = arctan(to_fixed(*rep.expected, w), w) +
                            mul(FixedReal::from_rational(st.branch, w), pi_w, w);
            rep.branch_ok = within(lhs, rhs, kBranchBits - 4);
            if (!rep.exact_ok)
                rep.error = "combined " + rep.combined->to_string() + " != expected " + rep.expected->to_string();
            else if (!rep.branch_ok)
                rep.error = "branch multiple " + st.branch.get_str() + " pi does not match";
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
        out.steps.push_back(std::move(rep));
    }
    return out;
}

InfiniteResult verify_infinite(const IdentityRecord& r, long n_terms, long p, std::optional<long> param) {
    const InfiniteSum& s = series_of(r);
    if (n_terms < 0) throw std::invalid_argument("n_terms must be non-negative");
    Env env = r.bind(param);
    const long start = eval_index(*s.start, env);
    FixedReal lhs = eval_fixed(*r.lhs, env, p + kGuard);
    FixedReal partial = partial_sum(s, env, start, n_terms, p + kGuard);
    Env tail_env = env;
    tail_env["N"] = n_terms;
    InfiniteResult out;
    out.residual = abs(lhs - partial);
    out.tail_bound = eval_fixed(*s.tail, tail_env, p + kGuard);
    out.pass = out.residual <= out.tail_bound + FixedReal(1, p);
    return out;
}

double decay_ratio(const IdentityRecord& r, long from, long to, std::optional<long> param) {
    if (to <= from) throw std::invalid_argument("decay_ratio needs from < to");
    const long p = 64 + 2 * to;
    double a = verify_infinite(r, from, p, param).residual.to_double();
    double b = verify_infinite(r, to, p, param).residual.to_double();
    return std::pow(b / a, 1.0 / static_cast<double>(to - from));
}

const char* to_string(VerifyMode m) {
    switch (m) {
        case VerifyMode::numeric: return "numeric";
        case VerifyMode::exact: return "exact";
        case VerifyMode::infinite: return "infinite";
    }
    return "?";
}

std::vector<ReportRow> verify_record(const IdentityRecord& r, const SweepOptions& opt, std::optional<long> param) {
    std::vector<std::optional<long>> values;
    std::string params;
    if (param) {
        r.bind(param);  // domain check
        values.push_back(param);
        params = r.param + "=" + std::to_string(*param);
    } else if (!r.has_param()) {
        values.push_back(std::nullopt);
        params = "-";
    } else {
        for (long v : r.domain.sweep(opt.bound)) values.push_back(v);
        params = r.domain.describe(r.param) + ", |" + r.param + "| <= " + std::to_string(opt.bound);
    }
    auto label = [&](const std::optional<long>& v) {
        return v ? r.param + "=" + std::to_string(*v) : std::string("-");
    };

    std::vector<ReportRow> rows;
    auto new_row = [&](VerifyMode m) {
        ReportRow row;
        row.id = r.id;
        row.source = r.source;
        row.mode = m;
        row.params = params;
        row.max_residual = FixedReal(0, opt.prec);
        return row;
    };
    auto fail = [](ReportRow& row, const std::string& what) {
        ++row.failures;
        if (row.detail.empty()) row.detail = what;
    };

    if (r.kind == IdentityKind::infinite_sum) {
        ReportRow row = new_row(VerifyMode::infinite);
        for (const auto& v : values) {
            ++row.cases;
            try {
                InfiniteResult res = verify_infinite(r, opt.n_terms, opt.prec, v);
                if (res.residual > row.max_residual) row.max_residual = res.residual;
                if (!res.pass) fail(row, label(v) + ": residual exceeds tail bound " + res.tail_bound.to_hex());
            } catch (const std::exception& e) {
                fail(row, label(v) + ": " + e.what());
            }
        }
        if (row.detail.empty()) row.detail = "n_terms=" + std::to_string(opt.n_terms);
        rows.push_back(std::move(row));
    } else {
        ReportRow row = new_row(VerifyMode::numeric);
        for (const auto& v : values) {
            ++row.cases;
            try {
                NumericResult res = verify_numeric(r, v, opt.prec);
                if (res.residual > row.max_residual) row.max_residual = res.residual;
                if (!res.pass) fail(row, label(v) + ": residual " + res.residual.to_hex());
            } catch (const std::exception& e) {
                fail(row, label(v) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }

    if (!r.steps.empty()) {
        ReportRow row = new_row(VerifyMode::exact);
        for (const auto& v : values) {
            ++row.cases;
            try {
                ExactResult res = verify_exact_args(r, v);
                for (const auto& s : res.steps)
                    if (!s.pass()) fail(row, label(v) + " step " + std::to_string(s.index + 1) + ": " + s.error);
            } catch (const std::exception& e) {
                fail(row, label(v) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ReportRow> verify_all(const std::vector<IdentityRecord>& records, const SweepOptions& opt) {
    std::vector<ReportRow> rows;
    for (const auto& r : records) {
        auto part = verify_record(r, opt);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace goldarc
