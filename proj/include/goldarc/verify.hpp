#pragma once

// Numeric, exact-argument and infinite-sum verification of identity records.

#include "goldarc/fixed.hpp"
#include "goldarc/identities.hpp"

#include <optional>
#include <string>
#include <vector>

namespace goldarc {

struct NumericResult {
    FixedReal residual;  // |lhs - rhs|, both sides evaluated within 2^-(p+16)
    bool pass = false;   // residual <= 2^-p
};

/// Throws DomainError outside the record's domain and DegenerateArgument on
/// division by zero.
NumericResult verify_numeric(const IdentityRecord& r, std::optional<long> param, long p);

struct StepReport {
    std::size_t index = 0;
    std::optional<QPhi> combined;  // arctan_arg_combine(x, y, mode)
    std::optional<QPhi> expected;
    bool exact_ok = false;
    bool branch_ok = false;
    std::string error;

    bool pass() const { return exact_ok && branch_ok; }
};

struct ExactResult {
    std::vector<StepReport> steps;
    bool pass() const;
};

/// Exact Q(phi) check of every step plus a 64-bit numeric check of the branch
/// multiple. Throws DomainError outside the domain and std::invalid_argument
/// for records without steps.
ExactResult verify_exact_args(const IdentityRecord& r, std::optional<long> param);

struct InfiniteResult {
    FixedReal residual;    // |lhs - partial sum|
    FixedReal tail_bound;  // analytic bound on the discarded remainder
    bool pass = false;     // residual <= tail_bound + 2^-p
};

/// Throws std::invalid_argument for records that are not infinite sums.
InfiniteResult verify_infinite(const IdentityRecord& r, long n_terms, long p, std::optional<long> param = {});

/// Geometric-mean ratio of consecutive partial residuals over n_terms in
/// [from, to].
double decay_ratio(const IdentityRecord& r, long from, long to, std::optional<long> param = {});

enum class VerifyMode { numeric, exact, infinite };
const char* to_string(VerifyMode m);

struct ReportRow {
    std::string id;
    Source source = Source::this_work;
    VerifyMode mode = VerifyMode::numeric;
    std::string params;      // swept values, e.g. "k=1..50"
    std::size_t cases = 0;
    std::size_t failures = 0;
    FixedReal max_residual;  // numeric and infinite modes
    std::string detail;      // first failure, or domain notes

    bool pass() const { return failures == 0; }
};

struct SweepOptions {
    long bound = 50;
    long prec = 128;
    long n_terms = 64;
};

/// One row per (record, applicable mode).
std::vector<ReportRow> verify_all(const std::vector<IdentityRecord>& records, const SweepOptions& opt);

/// Rows for a single record (all params in the sweep, or just `param`).
std::vector<ReportRow> verify_record(const IdentityRecord& r, const SweepOptions& opt,
                                     std::optional<long> param = {});

}  // namespace goldarc
