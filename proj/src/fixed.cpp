#include "goldarc/fixed.hpp"

#include "goldarc/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goldarc {

namespace {

constexpr long kGuardBits = 64;

BigInt pow2(long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r;
}

/// v * 2^s, truncated toward zero when s < 0.
BigInt shifted(const BigInt& v, long s) {
    BigInt r;
    if (s >= 0)
        mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(s));
    else
        mpz_tdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-s));
    return r;
}

/// v * 2^s, rounded to nearest (ties away from zero) when s < 0.
BigInt shifted_round(const BigInt& v, long s) {
    if (s >= 0) return shifted(v, s);
    BigInt half = pow2(-s - 1);
    BigInt adj = v >= 0 ? BigInt(v + half) : BigInt(v - half);
    return shifted(adj, s);
}

/// num/den rounded to nearest, den > 0.
BigInt div_round(const BigInt& num, const BigInt& den) {
    BigInt twice = 2 * num;
    BigInt q;
    if (twice >= 0)
        q = (twice + den) / (2 * den);
    else
        q = -((-twice + den) / (2 * den));
    return q;
}

BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

long bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

/// arctan of x * 2^(-w), |x| <= 2^w; result scaled by 2^w with error of a
/// few hundred ulps at most.
BigInt atan_raw(BigInt x, long w) {
    const BigInt one = pow2(w);
    const BigInt quarter = pow2(w - 2);
    long halvings = 0;
    while (abs(x) >= quarter) {
        BigInt x2 = shifted(BigInt(x * x), -w);
        BigInt root = isqrt(shifted(BigInt(one + x2), w));
        x = shifted(x, w) / (one + root);
        ++halvings;
    }
    BigInt x2 = shifted(BigInt(x * x), -w);
    BigInt sum = 0, term = x;
    for (unsigned long k = 0; term != 0; ++k) {
        BigInt t = term / static_cast<unsigned long>(2 * k + 1);
        if (k % 2 == 0)
            sum += t;
        else
            sum -= t;
        term = shifted(BigInt(term * x2), -w);
    }
    return shifted(sum, halvings);
}

/// atanh of x * 2^(-w), |x| <= 2^(w-1); scaled by 2^w.
BigInt atanh_raw(const BigInt& x, long w) {
    BigInt x2 = shifted(BigInt(x * x), -w);
    BigInt sum = 0, term = x;
    for (unsigned long k = 0; term != 0; ++k) {
        sum += term / static_cast<unsigned long>(2 * k + 1);
        term = shifted(BigInt(term * x2), -w);
    }
    return sum;
}

BigInt pi_raw(long w) {
    const BigInt one = pow2(w);
    BigInt a = atan_raw(BigInt(one / 5), w);
    BigInt b = atan_raw(BigInt(one / 239), w);
    return 16 * a - 4 * b;
}

BigInt ln2_raw(long w) { return 2 * atanh_raw(BigInt(pow2(w) / 3), w); }

/// x re-expressed with w fractional bits (truncating).
BigInt at_bits(const FixedReal& x, long w) { return shifted(x.scaled(), w - x.frac_bits()); }

}  // namespace

FixedReal::FixedReal(BigInt scaled, long frac_bits) : scaled_(std::move(scaled)), frac_bits_(frac_bits) {
    if (frac_bits_ < 1) {
        scaled_ = shifted(scaled_, 1 - frac_bits_);
        frac_bits_ = 1;
    }
}

FixedReal FixedReal::from_integer(const BigInt& v, long frac_bits) {
    return FixedReal(shifted(v, std::max(1L, frac_bits)), std::max(1L, frac_bits));
}

FixedReal FixedReal::from_rational(const mpq_class& q, long prec) {
    return FixedReal(div_round(shifted(q.get_num(), prec), q.get_den()), prec);
}

FixedReal FixedReal::truncated(long prec) const { return FixedReal(shifted(scaled_, prec - frac_bits_), prec); }

long FixedReal::magnitude_bits() const { return bit_length(scaled_) - 1 - frac_bits_; }

double FixedReal::to_double() const {
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, scaled_.get_mpz_t());
    return std::ldexp(m, static_cast<int>(exp - frac_bits_));
}

std::string FixedReal::to_decimal(int digits) const {
    BigInt mag = abs(scaled_);
    BigInt int_part = shifted(mag, -frac_bits_);
    BigInt frac = mag - shifted(int_part, frac_bits_);
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
    BigInt frac_digits = shifted(BigInt(frac * ten_pow), -frac_bits_);
    std::string out = sign() < 0 ? "-" : "";
    out += int_part.get_str();
    if (digits > 0) {
        std::string f = frac_digits.get_str();
        out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

std::string FixedReal::to_hex() const {
    std::string out = sign() < 0 ? "-0x" : "0x";
    out += BigInt(abs(scaled_)).get_str(16);
    out += "p-" + std::to_string(frac_bits_);
    return out;
}

FixedReal operator+(const FixedReal& x, const FixedReal& y) {
    long p = std::max(x.frac_bits_, y.frac_bits_);
    return FixedReal(at_bits(x, p) + at_bits(y, p), p);
}

FixedReal operator-(const FixedReal& x, const FixedReal& y) { return x + (-y); }

int compare(const FixedReal& x, const FixedReal& y) {
    long p = std::max(x.frac_bits_, y.frac_bits_);
    return cmp(at_bits(x, p), at_bits(y, p));
}

FixedReal abs(const FixedReal& x) { return x.sign() < 0 ? -x : x; }

FixedReal ldexp(const FixedReal& x, long shift) {
    if (shift >= 0) return FixedReal(shifted(x.scaled(), shift), x.frac_bits());
    return FixedReal(x.scaled(), x.frac_bits() - shift);
}

bool below_pow2(const FixedReal& x, long bits) {
    // |s| * 2^(-p) <= 2^(-bits)  <=>  |s| <= 2^(p - bits)
    long e = x.frac_bits() - bits;
    if (e < 0) return x.is_zero();
    return abs(x.scaled()) <= pow2(e);
}

bool within(const FixedReal& x, const FixedReal& y, long bits) { return below_pow2(x - y, bits); }

FixedReal mul(const FixedReal& x, const FixedReal& y, long prec) {
    BigInt prod = x.scaled() * y.scaled();
    return FixedReal(shifted(prod, prec - x.frac_bits() - y.frac_bits()), prec);
}

FixedReal div(const FixedReal& x, const FixedReal& y, long prec) {
    if (y.is_zero()) throw DegenerateArgument("fixed-point division by zero");
    // x/y * 2^prec = xs * 2^(prec + py - px) / ys
    long e = prec + y.frac_bits() - x.frac_bits();
    BigInt num = shifted(x.scaled(), std::max(0L, e));
    BigInt den = shifted(y.scaled(), std::max(0L, -e));
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return FixedReal(q, prec);
}

FixedReal fx_arith(const FixedReal& x, const FixedReal& y, FixedOp op, long prec) {
    switch (op) {
        case FixedOp::add: return (x + y).truncated(std::max(prec, std::max(x.frac_bits(), y.frac_bits())));
        case FixedOp::sub: return (x - y).truncated(std::max(prec, std::max(x.frac_bits(), y.frac_bits())));
        case FixedOp::mul: return mul(x, y, prec);
        case FixedOp::div: return div(x, y, prec);
    }
    return {};
}

FixedReal sqrt(const FixedReal& x, long prec) {
    if (x.sign() < 0) throw std::domain_error("square root of a negative fixed-point value");
    // floor(sqrt(s * 2^(2q - px))) * 2^(-q), 2q >= px, then truncated to prec.
    long q = std::max(prec, (x.frac_bits() + 1) / 2);
    BigInt r = isqrt(shifted(x.scaled(), 2 * q - x.frac_bits()));
    return FixedReal(shifted(r, prec - q), prec);
}

FixedReal sqrt_int(const BigInt& n, long prec) { return sqrt(FixedReal::from_integer(n), prec); }

FixedReal arctan(const FixedReal& x, long prec) {
    if (x.is_zero()) return FixedReal(0, prec);
    const long w = prec + kGuardBits;
    const BigInt one = pow2(w);
    BigInt xs = at_bits(abs(x), w);
    BigInt r;
    if (abs(x) <= FixedReal::from_integer(1)) {
        r = atan_raw(xs, w);
    } else {
        // 1/|x| at w bits; the truncation error passes through arctan' <= 1.
        BigInt inv = shifted(BigInt(1), w + x.frac_bits()) / BigInt(abs(x.scaled()));
        r = shifted(pi_raw(w), -1) - atan_raw(inv, w);
    }
    if (x.sign() < 0) r = -r;
    return FixedReal(shifted_round(r, -kGuardBits), prec);
}

FixedReal log(const FixedReal& x, long prec) {
    if (x.sign() <= 0) throw std::domain_error("logarithm of a non-positive fixed-point value");
    // x = 2^e * y with y in [3/4, 3/2); ln x = e ln 2 + 2 atanh((y-1)/(y+1)).
    long e = x.magnitude_bits();
    const long w = prec + kGuardBits + bit_length(BigInt(std::abs(e) + 1));
    const BigInt one = pow2(w);
    BigInt y = shifted(x.scaled(), w - x.frac_bits() - e);
    if (y * 2 >= 3 * one) {
        y = shifted(y, -1);
        ++e;
    }
    BigInt z = shifted(BigInt(y - one), w) / (y + one);
    BigInt r = 2 * atanh_raw(z, w);
    if (e != 0) r += BigInt(e) * ln2_raw(w);
    return FixedReal(shifted_round(r, prec - w), prec);
}

FixedReal pi(long prec) {
    const long w = prec + kGuardBits;
    return FixedReal(shifted_round(pi_raw(w), -kGuardBits), prec);
}

FixedReal to_fixed(const QPhi& x, long prec) {
    // (a + b phi)/den = (2a + b + b sqrt5) / (2 den)
    const long q = prec + bit_length(x.b()) + 4;
    BigInt root5 = isqrt(shifted(BigInt(5), 2 * q));
    BigInt num = shifted(BigInt(2 * x.a() + x.b()), q) + x.b() * root5;
    BigInt den = 2 * x.den();
    // num/den * 2^(prec - q), rounded; q > prec.
    return FixedReal(div_round(num, shifted(den, q - prec)), prec);
}

}  // namespace goldarc
