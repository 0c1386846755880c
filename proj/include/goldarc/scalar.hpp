#pragma once

#include "goldarc/fixed.hpp"
#include "goldarc/golden.hpp"

#include <iosfwd>
#include <string>

namespace goldarc {

/// c * sqrt(r) with c in Q(phi) and r a square-free positive integer prime
/// to 5 (factors of 5 are absorbed into c through sqrt 5 = 2 phi - 1).
/// Covers every constant the catalogs need: rationals, phi powers, sqrt 5,
/// and the sqrt 2, sqrt 3, sqrt 15 multiples.
class RealScalar {
public:
    RealScalar() = default;
    RealScalar(long v) : coeff_(v) {}
    RealScalar(QPhi c) : coeff_(std::move(c)) {}
    RealScalar(QPhi c, const BigInt& radicand);

    /// sqrt(q) for rational q >= 0.
    static RealScalar sqrt_of(const mpq_class& q);

    const QPhi& coeff() const { return coeff_; }
    const BigInt& radicand() const { return radicand_; }

    bool is_zero() const { return coeff_.is_zero(); }
    bool in_qphi() const { return radicand_ == 1; }
    bool is_rational() const { return in_qphi() && coeff_.is_rational(); }
    bool is_integer() const { return in_qphi() && coeff_.is_integer(); }

    RealScalar operator-() const { return RealScalar(-coeff_, radicand_); }
    /// Sums require equal radicands (or a zero operand); otherwise throws
    /// std::domain_error.
    friend RealScalar operator+(const RealScalar& x, const RealScalar& y);
    friend RealScalar operator-(const RealScalar& x, const RealScalar& y) { return x + (-y); }
    friend RealScalar operator*(const RealScalar& x, const RealScalar& y);
    friend RealScalar operator/(const RealScalar& x, const RealScalar& y);
    friend bool operator==(const RealScalar& x, const RealScalar& y) {
        return x.coeff_ == y.coeff_ && x.radicand_ == y.radicand_;
    }

    /// True when x + y is representable.
    static bool addable(const RealScalar& x, const RealScalar& y) {
        return x.is_zero() || y.is_zero() || x.radicand_ == y.radicand_;
    }

    std::string to_string() const;

private:
    QPhi coeff_;
    BigInt radicand_ = 1;
};

RealScalar pow(const RealScalar& x, long n);
int sign(const RealScalar& x);
RealScalar abs(const RealScalar& x);

/// Error <= 2^(-prec).
FixedReal to_fixed(const RealScalar& x, long prec);

std::ostream& operator<<(std::ostream& os, const RealScalar& x);

}  // namespace goldarc
