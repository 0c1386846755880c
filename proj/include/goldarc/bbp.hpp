#pragma once

// Polylogarithm-constant series
//
//   P(s, b, l, A) = sum_{k >= 0} b^(-k) sum_{j=1..l} a_j / (k l + j)^s
//
// multiplied by a prefactor: evaluation for integer, rational and phi-power
// bases, digit extraction for integer bases, and the algebra used to build new
// formulas from old ones (rebasing, length stretching, linear combination).

#include "goldarc/expr.hpp"
#include "goldarc/fixed.hpp"
#include "goldarc/scalar.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace goldarc {

struct BBPFormula {
    std::string name;
    unsigned degree = 1;  // s
    RealScalar base;
    std::vector<RealScalar> coeffs;  // A; its size is the length l
    RealScalar prefactor{1L};
    ExprPtr lhs;  // the constant the formula claims to equal; may be null
    std::string note;

    std::size_t length() const { return coeffs.size(); }
};

/// Same s, base, length, prefactor and coefficients (exact comparison).
bool same_series(const BBPFormula& x, const BBPFormula& y);

/// Throws std::domain_error unless |base| > 1 and the formula is non-empty.
void check_convergent(const BBPFormula& f);

/// Terms needed so the prefactor-scaled tail is at most 2^(-prec-2).
long bbp_terms_needed(const BBPFormula& f, long prec);

/// Power of two bounding |prefactor| * (sum |a_j|) * |b|^(-terms) / (1 - 1/|b|),
/// i.e. the discarded tail after `terms` terms.
FixedReal bbp_tail_bound(const BBPFormula& f, long terms);

/// prefactor * (first `terms` terms of the series), within 2^(-prec).
FixedReal bbp_partial(const BBPFormula& f, long terms, long prec);

/// prefactor * P(s, b, l, A) within 2^(-prec).
FixedReal bbp_eval(const BBPFormula& f, long prec);

enum class ArctanKind {
    recip_u,             // arctan(1/u)        = u^-3       P(1, u^4,    4, (u^2, 0, -1, 0))
    recip_2u_minus_1,    // arctan(1/(2u - 1)) = (16u^7)^-1 P(1, 16u^8, 8, (8u^6, 8u^5, 4u^4, 0, -2u^2, -2u, -1, 0))
    recip_2u_plus_1,     // arctan(1/(2u + 1)) = (16u^7)^-1 P(1, 16u^8, 8, (8u^6, -8u^5, 4u^4, 0, -2u^2, 2u, -1, 0))
};

/// Throws std::domain_error unless u > 0 and the resulting base exceeds 1.
BBPFormula general_arctan_formula(ArctanKind kind, const RealScalar& u);

/// Same value written in base b^r with length l*r: slot t*l + j (t < r) gets
/// a_j * b^(r-1-t), and the prefactor absorbs b^-(r-1).
BBPFormula rebase(const BBPFormula& f, unsigned r);

/// Same value and base, length l*m: a_j moves to slot m*j scaled by m^s,
/// using 1/(kl + j)^s = m^s/(k(ml) + mj)^s.
BBPFormula stretch(const BBPFormula& f, unsigned m);

/// sum_i c_i f_i for formulas sharing s, base and length. All-rational
/// results are normalized to a primitive integer coefficient vector with a
/// positive rational prefactor. Throws std::invalid_argument on mismatch.
BBPFormula linear_combine(const std::vector<std::pair<mpq_class, BBPFormula>>& terms);

// ---------------------------------------------------------------------------
// Digit extraction

/// Empty when digit extraction applies; otherwise the violated rule.
/// Eligible: s = 1, integer base >= 2, integer coefficients, rational
/// prefactor whose denominator divides a power of the base.
std::string extraction_ineligibility(const BBPFormula& f);

struct DigitWindow {
    std::uint64_t radix = 0;
    std::uint64_t position = 0;  // digits position+1 .. position+count
    std::vector<std::uint64_t> digits;
    bool boundary_risk = false;
    long guard_bits = 0;
};

/// One extraction pass with the given guard bits; boundary_risk is set when
/// the accumulator lies within max(2^-(guard-16), error bound) of a
/// last-digit boundary (in units of the last digit).
DigitWindow extract_digits(const BBPFormula& f, std::uint64_t position, std::size_t count, long guard_bits);

/// Digits position+1 .. position+count of frac(value) in radix `base`.
/// Retries once with doubled guard bits; throws BoundaryRisk if the risk
/// persists and std::invalid_argument for ineligible formulas.
DigitWindow bbp_digits(const BBPFormula& f, std::uint64_t position, std::size_t count);

inline constexpr std::uint64_t kMaxDigitPosition = 10'000'000;
inline constexpr std::size_t kMaxDigitCount = 1024;

/// Digits position+1 .. position+count of frac(x) in the given radix, read
/// directly off a fixed-point value.
std::vector<std::uint64_t> radix_digits(const FixedReal& x, std::uint64_t radix, std::uint64_t position,
                                        std::size_t count);

/// Fractional bits needed so radix_digits of a 2^(-prec)-accurate value is
/// reliable up to boundary cases: (position + count) log2(radix) + 64.
long digits_precision(std::uint64_t radix, std::uint64_t position, std::size_t count);

}  // namespace goldarc
