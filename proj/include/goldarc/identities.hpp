#pragma once

// Parameterized arctangent identities and their verification data.

#include "goldarc/expr.hpp"
#include "goldarc/golden.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goldarc {

/// Integer domain of a record's single parameter.
struct ParamDomain {
    enum class Kind { none, at_least, nonzero };
    Kind kind = Kind::none;
    long min = 0;                // at_least
    std::vector<long> excludes;  // degenerate values removed from the domain

    bool contains(long v) const;
    /// In-domain values with |v| <= bound, ascending.
    std::vector<long> sweep(long bound) const;
    std::vector<long> sweep(long lo, long hi) const;
    std::string describe(const std::string& param) const;
};

/// arctan x (+/-) arctan y = arctan(expected) + branch * pi, with x, y and
/// expected exact in Q(phi).
struct ArgStep {
    ExprPtr x;
    ExprPtr y;
    CombineMode mode = CombineMode::sum;
    ExprPtr expected;
    mpq_class branch = 0;
};

/// lhs = sum_{index >= start} term; tail(N) bounds the remainder after N terms.
struct InfiniteSum {
    std::string index;
    ExprPtr start;
    ExprPtr term;
    ExprPtr tail;
};

enum class IdentityKind { closed, finite_sum, infinite_sum };
enum class Source { this_work, external_cited };

struct IdentityRecord {
    std::string id;
    std::vector<std::string> aliases;
    std::string param;  // empty when the record has no parameter
    ParamDomain domain;
    ExprPtr lhs;
    ExprPtr rhs;  // for infinite sums, the formal series
    std::vector<ArgStep> steps;
    IdentityKind kind = IdentityKind::closed;
    Source source = Source::this_work;
    std::string anchor;
    std::optional<InfiniteSum> series;
    std::string note;

    bool has_param() const { return !param.empty(); }
    /// Env binding the parameter; throws DomainError when v is missing,
    /// superfluous or outside the domain.
    Env bind(std::optional<long> v) const;
};

const char* to_string(IdentityKind k);
const char* to_string(Source s);

/// Throws ParseError.
std::vector<IdentityRecord> parse_identity_catalog(std::string_view text);

/// The registry compiled into the library.
const std::vector<IdentityRecord>& catalog_list();

std::vector<IdentityRecord> load_identity_catalog(const std::string& path);

/// Lookup by id or alias; nullptr when absent.
const IdentityRecord* find_identity(const std::vector<IdentityRecord>& catalog, std::string_view id);

}  // namespace goldarc
