#pragma once

#include <stdexcept>
#include <string>

namespace goldarc {

/// Division by zero inside Q(phi), or an arctangent combination whose
/// combined angle is +-pi/2.
class DegenerateArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A parameter assignment outside a record's declared domain.
class DomainError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Digit extraction could not certify a digit window.
class BoundaryRisk : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed catalog text or expression.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace goldarc
