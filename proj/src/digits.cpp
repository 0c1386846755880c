// Digit extraction for integer-base, degree-1 series:
//
//   frac(b^d * C) = frac( sum_{k <= d} sum_j a_j (b^(d-k) mod n)/n
//                       + sum_{k > d} sum_j a_j b^(d-k)/n ),   n = k l + j
//
// The first part is exact modular arithmetic; each fractional part is then
// floored into a w-bit fixed-point accumulator taken modulo 1.

#include "goldarc/bbp.hpp"
#include "goldarc/error.hpp"

#include <cmath>
#include <stdexcept>

namespace goldarc {

namespace {

using u128 = unsigned __int128;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
    if (n == 1) return 0;
    std::uint64_t r = 1;
    b %= n;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>(static_cast<u128>(r) * b % n);
        b = static_cast<std::uint64_t>(static_cast<u128>(b) * b % n);
        e >>= 1;
    }
    return r;
}

long bit_length(const BigInt& v) { return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

BigInt ipow(std::uint64_t b, std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

std::vector<std::uint64_t> split_digits(BigInt v, std::uint64_t radix, std::size_t count) {
    std::vector<std::uint64_t> out(count);
    BigInt r;
    for (std::size_t i = count; i-- > 0;) {
        out[i] = mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), radix);
    }
    return out;
}

struct Prepared {
    std::uint64_t radix;
    std::vector<BigInt> coeffs;  // integer coefficients with the prefactor numerator folded in
    std::uint64_t shift;         // prefactor = B^-shift after folding
};

Prepared prepare(const BBPFormula& f) {
    if (std::string why = extraction_ineligibility(f); !why.empty())
        throw std::invalid_argument("formula '" + f.name + "' is not digit-extractable: " + why);
    Prepared p;
    p.radix = f.base.coeff().a().get_ui();
    mpq_class pref = f.prefactor.coeff().to_rational();
    BigInt den = pref.get_den();
    // smallest e with den | B^e
    std::uint64_t e = 0;
    BigInt be = 1;
    while (be % den != 0) {
        be *= p.radix;
        ++e;
    }
    BigInt mult = pref.get_num() * (be / den);
    for (const auto& a : f.coeffs) p.coeffs.push_back(a.coeff().a() * mult);
    p.shift = e;
    return p;
}

}  // namespace

std::string extraction_ineligibility(const BBPFormula& f) {
    if (f.degree != 1) return "degree s = " + std::to_string(f.degree) + ", extraction needs s = 1";
    if (!f.base.is_integer() || f.base.coeff().a() < 2 || !f.base.coeff().a().fits_ulong_p())
        return "base " + f.base.to_string() + " is not an integer >= 2";
    for (const auto& a : f.coeffs)
        if (!a.is_integer()) return "coefficient " + a.to_string() + " is not an integer";
    if (!f.prefactor.is_rational()) return "prefactor " + f.prefactor.to_string() + " is not rational";
    BigInt d = f.prefactor.coeff().den();
    const BigInt b = f.base.coeff().a();
    BigInt g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t());
        if (g == 1) break;
        d /= g;
    }
    if (d != 1)
        return "prefactor denominator " + f.prefactor.coeff().den().get_str() + " does not divide a power of the base";
    return {};
}

DigitWindow extract_digits(const BBPFormula& f, std::uint64_t position, std::size_t count, long guard_bits) {
    if (count == 0 || count > kMaxDigitCount)
        throw std::invalid_argument("digit count must be in [1, " + std::to_string(kMaxDigitCount) + "]");
    if (position > kMaxDigitPosition)
        throw std::invalid_argument("digit position above " + std::to_string(kMaxDigitPosition));
    const Prepared p = prepare(f);
    const std::uint64_t B = p.radix;
    const std::uint64_t l = f.length();
    // frac(B^d * B^-shift * S) = frac(B^D * S), D = d - shift
    const long long D = static_cast<long long>(position) - static_cast<long long>(p.shift);

    BigInt abs_sum = 0;
    for (const auto& a : p.coeffs) abs_sum += abs(a);

    const BigInt radix_m = ipow(B, count);
    const long modular_terms = D >= 0 ? static_cast<long>((D + 1) * static_cast<long long>(l)) : 0;
    const double log2B = std::log2(static_cast<double>(B));
    const long direct_estimate =
        static_cast<long>(l) * (static_cast<long>((bit_length(radix_m) + guard_bits + 96 + bit_length(abs_sum)) / log2B) + 4);
    const long floors = modular_terms + direct_estimate + 2;
    const long w = bit_length(radix_m) + guard_bits + bit_length(BigInt(floors)) + 2;

    BigInt acc = 0, t;
    if (D >= 0) {
        for (std::uint64_t k = 0; k <= static_cast<std::uint64_t>(D); ++k) {
            for (std::uint64_t j = 0; j < l; ++j) {
                const BigInt& a = p.coeffs[j];
                if (a == 0) continue;
                const std::uint64_t n = k * l + j + 1;
                BigInt am;
                mpz_fdiv_r_ui(am.get_mpz_t(), a.get_mpz_t(), n);
                std::uint64_t r = static_cast<std::uint64_t>(
                    static_cast<u128>(am.get_ui()) * powmod(B, static_cast<std::uint64_t>(D) - k, n) % n);
                if (r == 0) continue;
                mpz_set_ui(t.get_mpz_t(), r);
                mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(w));
                mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), n);
                acc += t;
            }
        }
    }
    // Direct tail: a_j * 2^w / (B^(k-D) n), until the remainder is below one ulp.
    const BigInt stop = abs_sum << static_cast<unsigned long>(w + 2);
    std::uint64_t k = D >= 0 ? static_cast<std::uint64_t>(D) + 1 : 0;
    BigInt scale = ipow(B, static_cast<std::uint64_t>(static_cast<long long>(k) - D));
    long direct_floors = 0;
    for (; scale <= stop; ++k, scale *= B) {
        for (std::uint64_t j = 0; j < l; ++j) {
            const BigInt& a = p.coeffs[j];
            if (a == 0) continue;
            BigInt num = a << static_cast<unsigned long>(w);
            BigInt den = scale * (k * l + j + 1);
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            acc += t;
            ++direct_floors;
        }
    }
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(w));

    // Accumulated value sits in [true - floors - 1, true + 1] ulps.
    const BigInt scaled = acc * radix_m;
    BigInt digits_value, rem;
    mpz_fdiv_q_2exp(digits_value.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(w));
    mpz_fdiv_r_2exp(rem.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(w));
    const BigInt one = BigInt(1) << static_cast<unsigned long>(w);
    const BigInt distance = rem < one - rem ? rem : BigInt(one - rem);
    const BigInt uncertainty = BigInt(modular_terms + direct_floors + 2) * radix_m;
    BigInt threshold = one >> static_cast<unsigned long>(std::max(0L, guard_bits - 16));
    if (threshold < uncertainty) threshold = uncertainty;

    DigitWindow out;
    out.radix = B;
    out.position = position;
    out.guard_bits = guard_bits;
    out.boundary_risk = distance <= threshold;
    out.digits = split_digits(digits_value, B, count);
    return out;
}

DigitWindow bbp_digits(const BBPFormula& f, std::uint64_t position, std::size_t count) {
    DigitWindow w = extract_digits(f, position, count, 64);
    if (!w.boundary_risk) return w;
    w = extract_digits(f, position, count, 128);
    if (w.boundary_risk)
        throw BoundaryRisk("digits " + std::to_string(position + 1) + ".." + std::to_string(position + count) +
                           " of '" + f.name + "' sit on a digit boundary even with 128 guard bits");
    return w;
}

std::vector<std::uint64_t> radix_digits(const FixedReal& x, std::uint64_t radix, std::uint64_t position,
                                        std::size_t count) {
    BigInt frac;
    mpz_fdiv_r_2exp(frac.get_mpz_t(), x.scaled().get_mpz_t(), static_cast<unsigned long>(x.frac_bits()));
    BigInt v = frac * ipow(radix, position + count);
    mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(x.frac_bits()));
    BigInt window;
    mpz_fdiv_r(window.get_mpz_t(), v.get_mpz_t(), ipow(radix, count).get_mpz_t());
    return split_digits(window, radix, count);
}

long digits_precision(std::uint64_t radix, std::uint64_t position, std::size_t count) {
    return static_cast<long>(std::ceil(static_cast<double>(position + count) * std::log2(static_cast<double>(radix)))) + 64;
}

}  // namespace goldarc
