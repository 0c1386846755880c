#include "goldarc/scalar.hpp"

#include "goldarc/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace goldarc {

namespace {

constexpr unsigned long kMaxRadicand = 1UL << 40;

/// r = square^2 * rest with rest square-free.
void split_square(const BigInt& r, BigInt& square, BigInt& rest) {
    if (r > kMaxRadicand) throw std::domain_error("radicand too large: " + r.get_str());
    unsigned long n = r.get_ui();
    unsigned long sq = 1;
    for (unsigned long d = 2; d * d <= n; ++d) {
        while (n % (d * d) == 0) {
            n /= d * d;
            sq *= d;
        }
    }
    square = sq;
    rest = n;
}

}  // namespace

RealScalar::RealScalar(QPhi c, const BigInt& radicand) : coeff_(std::move(c)) {
    if (radicand <= 0) throw std::domain_error("radicand must be positive");
    if (coeff_.is_zero()) return;
    BigInt square, rest;
    split_square(radicand, square, rest);
    coeff_ *= QPhi(square);
    if (rest % 5 == 0) {
        rest /= 5;
        coeff_ *= QPhi::sqrt5();
    }
    radicand_ = rest;
}

RealScalar RealScalar::sqrt_of(const mpq_class& q) {
    if (q < 0) throw std::domain_error("square root of a negative rational");
    if (q == 0) return RealScalar();
    // sqrt(p/s) = sqrt(p s)/s
    BigInt num = q.get_num(), den = q.get_den();
    return RealScalar(QPhi::rational(1, den), BigInt(num * den));
}

RealScalar operator+(const RealScalar& x, const RealScalar& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.radicand_ != y.radicand_)
        throw std::domain_error("sum of unlike radicals " + x.to_string() + " + " + y.to_string());
    return RealScalar(x.coeff_ + y.coeff_, x.radicand_);
}

RealScalar operator*(const RealScalar& x, const RealScalar& y) {
    return RealScalar(x.coeff_ * y.coeff_, BigInt(x.radicand_ * y.radicand_));
}

RealScalar operator/(const RealScalar& x, const RealScalar& y) {
    if (y.is_zero()) throw DegenerateArgument("division by zero: " + x.to_string() + " / 0");
    // c1 sqrt(r1) / (c2 sqrt(r2)) = (c1 / (c2 r2)) sqrt(r1 r2)
    return RealScalar(x.coeff_ / (y.coeff_ * QPhi(y.radicand_)), BigInt(x.radicand_ * y.radicand_));
}

RealScalar pow(const RealScalar& x, long n) {
    if (n < 0) return RealScalar(1L) / pow(x, -n);
    RealScalar result(1L), base = x;
    for (unsigned long e = static_cast<unsigned long>(n); e != 0; e >>= 1) {
        if (e & 1UL) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

int sign(const RealScalar& x) { return sign(x.coeff()); }

RealScalar abs(const RealScalar& x) { return sign(x) < 0 ? -x : x; }

FixedReal to_fixed(const RealScalar& x, long prec) {
    if (x.in_qphi()) return to_fixed(x.coeff(), prec);
    // Both factors at prec + 3 + (bits of the other factor's magnitude).
    FixedReal c_rough = to_fixed(x.coeff(), 8);
    long c_bits = std::max(0L, abs(c_rough).magnitude_bits() + 2);
    long r_bits = static_cast<long>(mpz_sizeinbase(x.radicand().get_mpz_t(), 2)) / 2 + 2;
    FixedReal c = to_fixed(x.coeff(), prec + 3 + r_bits);
    FixedReal r = sqrt_int(x.radicand(), prec + 3 + c_bits);
    return mul(c, r, prec + 2);
}

std::string RealScalar::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const RealScalar& x) {
    if (x.in_qphi()) return os << x.coeff();
    if (x.coeff() == QPhi(1L)) return os << "sqrt(" << x.radicand() << ")";
    return os << "(" << x.coeff() << ")*sqrt(" << x.radicand() << ")";
}

}  // namespace goldarc
