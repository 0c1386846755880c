#pragma once

// Exact arithmetic in Z[phi] and Q(phi), phi = (1 + sqrt 5)/2, together with
// Fibonacci and Lucas numbers for arbitrary integer index.

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace goldarc {

using BigInt = mpz_class;

/// F_n and F_{n+1}.
struct FibPair {
    BigInt f_n;
    BigInt f_n1;
};

/// Fast doubling; defined for n >= 0.
FibPair fib_pair(unsigned long n);

/// F_n for any integer n, with F_{-n} = (-1)^(n+1) F_n.
BigInt fib(long n);

/// L_n = F_{n-1} + F_{n+1}.
BigInt lucas(long n);

/// a + b*phi with integer coefficients.
struct ZPhi {
    BigInt a;
    BigInt b;

    ZPhi() = default;
    ZPhi(BigInt a_, BigInt b_) : a(std::move(a_)), b(std::move(b_)) {}

    static ZPhi phi() { return {0, 1}; }
    /// sqrt 5 = 2 phi - 1
    static ZPhi sqrt5() { return {-1, 2}; }

    bool is_zero() const { return a == 0 && b == 0; }

    /// Image under phi -> 1 - phi (the other root of x^2 = x + 1).
    ZPhi conjugate() const { return {a + b, -b}; }

    /// N(a + b phi) = a^2 + ab - b^2, multiplicative.
    BigInt norm() const { return a * a + a * b - b * b; }

    ZPhi operator-() const { return {-a, -b}; }
    ZPhi& operator+=(const ZPhi& o);
    ZPhi& operator-=(const ZPhi& o);
    ZPhi& operator*=(const ZPhi& o);

    friend ZPhi operator+(ZPhi x, const ZPhi& y) { return x += y; }
    friend ZPhi operator-(ZPhi x, const ZPhi& y) { return x -= y; }
    friend ZPhi operator*(ZPhi x, const ZPhi& y) { return x *= y; }
    friend bool operator==(const ZPhi& x, const ZPhi& y) { return x.a == y.a && x.b == y.b; }
};

/// Sign of a + b*phi as a real number, decided exactly.
int sign(const ZPhi& x);

/// Element (a + b phi)/den of Q(phi), kept canonical: den > 0 and
/// gcd(a, b, den) = 1. Equality is therefore component-wise.
class QPhi {
public:
    QPhi() : num_(0, 0), den_(1) {}
    QPhi(long v) : num_(v, 0), den_(1) {}
    QPhi(BigInt v) : num_(std::move(v), 0), den_(1) {}
    QPhi(ZPhi num) : num_(std::move(num)), den_(1) {}
    /// Throws DegenerateArgument if den == 0.
    QPhi(ZPhi num, BigInt den);

    static QPhi rational(BigInt num, BigInt den) { return QPhi(ZPhi(std::move(num), 0), std::move(den)); }
    static QPhi phi() { return QPhi(ZPhi::phi()); }
    static QPhi sqrt5() { return QPhi(ZPhi::sqrt5()); }

    const BigInt& a() const { return num_.a; }
    const BigInt& b() const { return num_.b; }
    const BigInt& den() const { return den_; }
    const ZPhi& num() const { return num_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.b == 0; }
    bool is_integer() const { return num_.b == 0 && den_ == 1; }
    /// Only meaningful when is_rational().
    mpq_class to_rational() const;

    QPhi inverse() const;

    QPhi operator-() const { return QPhi(-num_, den_, Canonical{}); }
    QPhi& operator+=(const QPhi& o);
    QPhi& operator-=(const QPhi& o);
    QPhi& operator*=(const QPhi& o);
    QPhi& operator/=(const QPhi& o);

    friend QPhi operator+(QPhi x, const QPhi& y) { return x += y; }
    friend QPhi operator-(QPhi x, const QPhi& y) { return x -= y; }
    friend QPhi operator*(QPhi x, const QPhi& y) { return x *= y; }
    friend QPhi operator/(QPhi x, const QPhi& y) { return x /= y; }
    friend bool operator==(const QPhi& x, const QPhi& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

    std::string to_string() const;

private:
    struct Canonical {};
    QPhi(ZPhi num, BigInt den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    ZPhi num_;
    BigInt den_;
};

/// -1, 0 or +1 according to the real embedding.
int sign(const QPhi& x);
/// Real-order comparison.
int compare(const QPhi& x, const QPhi& y);
QPhi abs(const QPhi& x);

/// phi^n, exact; den is always 1 because phi is a unit.
QPhi phi_pow(long n);

/// x^n for integer n (n < 0 requires x != 0).
QPhi pow(const QPhi& x, long n);

enum class ArithOp { add, sub, mul, div };
QPhi qphi_arith(const QPhi& x, const QPhi& y, ArithOp op);

enum class CombineMode { sum, diff };

/// Argument of the combined arctangent: (x + y)/(1 - xy) for sum,
/// (x - y)/(1 + xy) for diff. Branch multiples of pi are the caller's job.
/// Throws DegenerateArgument when the denominator is exactly zero.
QPhi arctan_arg_combine(const QPhi& x, const QPhi& y, CombineMode mode);

std::ostream& operator<<(std::ostream& os, const QPhi& x);
std::ostream& operator<<(std::ostream& os, const ZPhi& x);

}  // namespace goldarc
