#include "goldarc/phinary.hpp"

#include "goldarc/error.hpp"

#include <cmath>
#include <stdexcept>

namespace goldarc {

namespace {

// Greedy digits of x >= 0 from the top position down to -n_frac. When
// `threshold` is non-null, decisions with 0 < |remainder - phi^m| < threshold
// set `uncertain`.
GoldenDigits greedy(const QPhi& x, std::size_t n_frac, const QPhi* threshold, bool stop_at_zero) {
    if (sign(x) < 0) throw std::domain_error("golden-base expansion of a negative value");
    GoldenDigits out;
    long top = 0;
    while (compare(phi_pow(top + 1), x) <= 0) ++top;
    const long bottom = -static_cast<long>(n_frac);
    QPhi rem = x;
    bool skip = false;
    for (long m = top; m >= bottom; --m) {
        if (stop_at_zero && m < 0 && rem.is_zero()) break;
        bool one = false;
        if (!skip) {
            QPhi d = rem - phi_pow(m);
            int s = sign(d);
            if (threshold && s != 0 && compare(abs(d), *threshold) < 0) out.uncertain = true;
            one = s >= 0;
            if (one) rem = d;
        }
        skip = one;
        (m >= 0 ? out.int_digits : out.frac_digits).push_back(one);
    }
    return out;
}

}  // namespace

std::string GoldenDigits::to_string(std::size_t group) const {
    std::string s;
    if (int_digits.empty()) s = "0";
    for (bool b : int_digits) s += b ? '1' : '0';
    s += '.';
    std::size_t last = frac_digits.size();
    while (last > 0 && !frac_digits[last - 1]) --last;
    for (std::size_t i = 0; i < last; ++i) {
        if (group && i && i % group == 0) s += ' ';
        s += frac_digits[i] ? '1' : '0';
    }
    return s;
}

GoldenDigits GoldenDigits::parse(std::string_view text) {
    GoldenDigits d;
    bool frac = false;
    for (char c : text) {
        if (c == ' ' || c == '_') continue;
        if (c == '.') {
            if (frac) throw ParseError("golden-base string has two radix points");
            frac = true;
        } else if (c == '0' || c == '1') {
            (frac ? d.frac_digits : d.int_digits).push_back(c == '1');
        } else {
            throw ParseError(std::string("golden-base digit '") + c + "' is not 0 or 1");
        }
    }
    return d;
}

long golden_precision(std::size_t n_frac) {
    return static_cast<long>(std::ceil(static_cast<double>(n_frac) * std::log2((1 + std::sqrt(5.0)) / 2))) + 64;
}

GoldenDigits to_golden_base(const FixedReal& x, std::size_t n_frac) {
    if (x.sign() < 0) throw std::domain_error("golden-base expansion of a negative value");
    if (x.frac_bits() < golden_precision(n_frac))
        throw std::invalid_argument("golden-base expansion to " + std::to_string(n_frac) + " digits needs " +
                                    std::to_string(golden_precision(n_frac)) + " input bits, got " +
                                    std::to_string(x.frac_bits()));
    BigInt den = BigInt(1) << static_cast<unsigned long>(x.frac_bits());
    QPhi exact = QPhi::rational(x.scaled(), den);
    // 2^-48 in units of the last digit's weight, floored at the input spacing.
    QPhi threshold = QPhi::rational(1, BigInt(1) << static_cast<unsigned long>(x.frac_bits() - 16));
    return greedy(exact, n_frac, &threshold, false);
}

GoldenDigits to_golden_base(const QPhi& x, std::size_t n_frac) { return greedy(x, n_frac, nullptr, true); }

bool has_adjacent_ones(const GoldenDigits& d) {
    bool prev = false;
    for (bool b : d.int_digits) {
        if (b && prev) return true;
        prev = b;
    }
    for (bool b : d.frac_digits) {
        if (b && prev) return true;
        prev = b;
    }
    return false;
}

QPhi from_golden_base(const GoldenDigits& d) {
    if (has_adjacent_ones(d)) throw std::invalid_argument("golden-base digits contain adjacent 1s");
    ZPhi acc;
    const long top = static_cast<long>(d.int_digits.size()) - 1;
    for (std::size_t i = 0; i < d.int_digits.size(); ++i)
        if (d.int_digits[i]) acc += phi_pow(top - static_cast<long>(i)).num();
    for (std::size_t i = 0; i < d.frac_digits.size(); ++i)
        if (d.frac_digits[i]) acc += phi_pow(-static_cast<long>(i) - 1).num();
    return QPhi(acc);
}

}  // namespace goldarc
