#pragma once

// Binary fixed-point reals of arbitrary precision.
//
// A FixedReal is the exact dyadic rational scaled * 2^(-frac_bits). Every
// operation taking a precision `prec` returns a value within 2^(-prec) of the
// exact result (of the dyadic inputs). Exact-by-construction operations
// (+, -, negation) take no precision and never round.

#include "goldarc/golden.hpp"

#include <string>

namespace goldarc {

class FixedReal {
public:
    FixedReal() = default;
    FixedReal(BigInt scaled, long frac_bits);

    static FixedReal from_integer(const BigInt& v, long frac_bits = 1);
    /// Nearest-rounded; error <= 2^(-prec-1).
    static FixedReal from_rational(const mpq_class& q, long prec);

    int sign() const { return sgn(scaled_); }
    BigInt mantissa() const { return abs(scaled_); }
    const BigInt& scaled() const { return scaled_; }
    long frac_bits() const { return frac_bits_; }
    bool is_zero() const { return scaled_ == 0; }

    /// Re-expressed with `prec` fractional bits, truncating toward zero.
    FixedReal truncated(long prec) const;

    /// floor(log2 |x|) for x != 0.
    long magnitude_bits() const;

    double to_double() const;
    /// Truncated toward zero to `digits` decimal places.
    std::string to_decimal(int digits) const;
    /// Hex mantissa with binary exponent, e.g. "-0x1ap-4".
    std::string to_hex() const;

    FixedReal operator-() const { return FixedReal(-scaled_, frac_bits_); }
    friend FixedReal operator+(const FixedReal& x, const FixedReal& y);
    friend FixedReal operator-(const FixedReal& x, const FixedReal& y);
    friend int compare(const FixedReal& x, const FixedReal& y);
    friend bool operator==(const FixedReal& x, const FixedReal& y) { return compare(x, y) == 0; }
    friend bool operator<(const FixedReal& x, const FixedReal& y) { return compare(x, y) < 0; }
    friend bool operator<=(const FixedReal& x, const FixedReal& y) { return compare(x, y) <= 0; }
    friend bool operator>(const FixedReal& x, const FixedReal& y) { return compare(x, y) > 0; }
    friend bool operator>=(const FixedReal& x, const FixedReal& y) { return compare(x, y) >= 0; }

private:
    BigInt scaled_ = 0;
    long frac_bits_ = 1;
};

FixedReal abs(const FixedReal& x);

/// Exact product scaled by 2^shift (shift may be negative).
FixedReal ldexp(const FixedReal& x, long shift);

/// |x - y| <= 2^(-bits), decided exactly.
bool within(const FixedReal& x, const FixedReal& y, long bits);

/// |x| <= 2^(-bits), decided exactly.
bool below_pow2(const FixedReal& x, long bits);

FixedReal mul(const FixedReal& x, const FixedReal& y, long prec);
/// Throws DegenerateArgument when y == 0.
FixedReal div(const FixedReal& x, const FixedReal& y, long prec);

enum class FixedOp { add, sub, mul, div };
FixedReal fx_arith(const FixedReal& x, const FixedReal& y, FixedOp op, long prec);

/// Throws std::domain_error for x < 0.
FixedReal sqrt(const FixedReal& x, long prec);

/// |x| > 1 is reduced with arctan x = sign(x) pi/2 - arctan(1/x); |x| <= 1 is
/// halved with x <- x/(1 + sqrt(1 + x^2)) until |x| < 1/4, then summed by
/// Taylor series.
FixedReal arctan(const FixedReal& x, long prec);

/// Natural log via atanh series after reduction by powers of two.
/// Throws std::domain_error for x <= 0.
FixedReal log(const FixedReal& x, long prec);

/// pi = 16 arctan(1/5) - 4 arctan(1/239).
FixedReal pi(long prec);

/// Real embedding of (a + b phi)/den.
FixedReal to_fixed(const QPhi& x, long prec);

/// sqrt(n) for a non-negative integer.
FixedReal sqrt_int(const BigInt& n, long prec);

}  // namespace goldarc
