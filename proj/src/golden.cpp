#include "goldarc/golden.hpp"

#include "goldarc/error.hpp"

#include <ostream>
#include <sstream>

namespace goldarc {

FibPair fib_pair(unsigned long n) {
    // Invariant: (f, g) = (F_m, F_{m+1}) for m = the bits of n consumed so far.
    BigInt f = 0, g = 1;
    int top = 0;
    for (unsigned long t = n; t != 0; t >>= 1) ++top;
    for (int bit = top - 1; bit >= 0; --bit) {
        BigInt f2 = f * (2 * g - f);  // F_{2m}
        BigInt g2 = f * f + g * g;    // F_{2m+1}
        if ((n >> bit) & 1UL) {
            f = g2;
            g = f2 + g2;
        } else {
            f = std::move(f2);
            g = std::move(g2);
        }
    }
    return {std::move(f), std::move(g)};
}

BigInt fib(long n) {
    if (n >= 0) return fib_pair(static_cast<unsigned long>(n)).f_n;
    unsigned long m = static_cast<unsigned long>(-(n + 1)) + 1;
    BigInt v = fib_pair(m).f_n;
    // F_{-m} = (-1)^(m+1) F_m
    return (m % 2 == 0) ? BigInt(-v) : v;
}

BigInt lucas(long n) {
    if (n >= 0) {
        FibPair p = fib_pair(static_cast<unsigned long>(n));
        // L_n = F_{n-1} + F_{n+1} = 2 F_{n+1} - F_n
        return 2 * p.f_n1 - p.f_n;
    }
    unsigned long m = static_cast<unsigned long>(-(n + 1)) + 1;
    BigInt v = lucas(static_cast<long>(m));
    // L_{-m} = (-1)^m L_m
    return (m % 2 == 0) ? v : BigInt(-v);
}

ZPhi& ZPhi::operator+=(const ZPhi& o) {
    a += o.a;
    b += o.b;
    return *this;
}

ZPhi& ZPhi::operator-=(const ZPhi& o) {
    a -= o.a;
    b -= o.b;
    return *this;
}

ZPhi& ZPhi::operator*=(const ZPhi& o) {
    // phi^2 = 1 + phi
    BigInt bb = b * o.b;
    BigInt na = a * o.a + bb;
    BigInt nb = a * o.b + o.a * b + bb;
    a = std::move(na);
    b = std::move(nb);
    return *this;
}

int sign(const ZPhi& x) {
    // 2(a + b phi) = u + v sqrt5 with u = 2a + b, v = b.
    BigInt u = 2 * x.a + x.b;
    const BigInt& v = x.b;
    int su = sgn(u), sv = sgn(v);
    if (su >= 0 && sv >= 0) return (su > 0 || sv > 0) ? 1 : 0;
    if (su <= 0 && sv <= 0) return -1;
    int c = cmp(BigInt(u * u), BigInt(5 * v * v));
    int s = c > 0 ? 1 : -1;  // c == 0 impossible: sqrt 5 is irrational
    return su > 0 ? s : -s;
}

QPhi::QPhi(ZPhi num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DegenerateArgument("Q(phi) element with zero denominator");
    normalize();
}

void QPhi::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num_.a.get_mpz_t(), num_.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        mpz_divexact(num_.a.get_mpz_t(), num_.a.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(num_.b.get_mpz_t(), num_.b.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

mpq_class QPhi::to_rational() const {
    mpq_class q(num_.a, den_);
    q.canonicalize();
    return q;
}

QPhi QPhi::inverse() const {
    if (is_zero()) throw DegenerateArgument("inverse of zero in Q(phi)");
    // (a + b phi)^(-1) = (a + b - b phi) / N(a + b phi)
    BigInt n = num_.norm();
    return QPhi(ZPhi(num_.conjugate().a * den_, num_.conjugate().b * den_), n);
}

QPhi& QPhi::operator+=(const QPhi& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = ZPhi(num_.a * o.den_, num_.b * o.den_) + ZPhi(o.num_.a * den_, o.num_.b * den_);
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

QPhi& QPhi::operator-=(const QPhi& o) { return *this += -o; }

QPhi& QPhi::operator*=(const QPhi& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

QPhi& QPhi::operator/=(const QPhi& o) {
    if (o.is_zero()) throw DegenerateArgument("division by zero in Q(phi)");
    return *this *= o.inverse();
}

std::string QPhi::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

int sign(const QPhi& x) { return sign(x.num()); }

int compare(const QPhi& x, const QPhi& y) { return sign(x - y); }

QPhi abs(const QPhi& x) { return sign(x) < 0 ? -x : x; }

QPhi phi_pow(long n) {
    if (n >= 0) {
        // phi^n = F_{n-1} + F_n phi
        FibPair p = fib_pair(static_cast<unsigned long>(n));
        return QPhi(ZPhi(p.f_n1 - p.f_n, p.f_n));
    }
    // phi^(-m) = (-1)^m (F_{m+1} - F_m phi)
    unsigned long m = static_cast<unsigned long>(-(n + 1)) + 1;
    FibPair p = fib_pair(m);
    ZPhi v(p.f_n1, -p.f_n);
    return QPhi(m % 2 == 0 ? v : -v);
}

QPhi pow(const QPhi& x, long n) {
    if (n < 0) return pow(x.inverse(), -n);
    QPhi result(1L), base = x;
    for (unsigned long e = static_cast<unsigned long>(n); e != 0; e >>= 1) {
        if (e & 1UL) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

QPhi qphi_arith(const QPhi& x, const QPhi& y, ArithOp op) {
    switch (op) {
        case ArithOp::add: return x + y;
        case ArithOp::sub: return x - y;
        case ArithOp::mul: return x * y;
        case ArithOp::div: return x / y;
    }
    return {};
}

QPhi arctan_arg_combine(const QPhi& x, const QPhi& y, CombineMode mode) {
    QPhi xy = x * y;
    if (mode == CombineMode::sum) {
        QPhi den = QPhi(1L) - xy;
        if (den.is_zero()) throw DegenerateArgument("1 - xy = 0: combined angle is +-pi/2");
        return (x + y) / den;
    }
    QPhi den = QPhi(1L) + xy;
    if (den.is_zero()) throw DegenerateArgument("1 + xy = 0: combined angle is +-pi/2");
    return (x - y) / den;
}

std::ostream& operator<<(std::ostream& os, const ZPhi& x) {
    if (x.b == 0) return os << x.a;
    if (x.a != 0) os << x.a << (x.b < 0 ? " - " : " + ");
    else if (x.b < 0) os << "-";
    BigInt mb = abs(x.b);
    if (mb != 1) os << mb << "*";
    return os << "phi";
}

std::ostream& operator<<(std::ostream& os, const QPhi& x) {
    if (x.den() == 1) return os << x.num();
    if (x.is_rational()) return os << x.a() << "/" << x.den();
    return os << "(" << x.num() << ")/" << x.den();
}

}  // namespace goldarc
