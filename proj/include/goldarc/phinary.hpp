#pragma once

// Canonical golden-ratio-base expansions: digits {0, 1}, no two adjacent 1s.

#include "goldarc/fixed.hpp"
#include "goldarc/golden.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace goldarc {

struct GoldenDigits {
    std::vector<bool> int_digits;   // phi^m .. phi^0, most significant first
    std::vector<bool> frac_digits;  // phi^-1, phi^-2, ...
    /// Some greedy decision was closer to its boundary than the input's
    /// precision can certify.
    bool uncertain = false;

    /// "10.01"; trailing fractional zeros dropped; `group` > 0 inserts a space
    /// every `group` fractional digits.
    std::string to_string(std::size_t group = 0) const;

    /// Parses "101.0010"; throws ParseError on other characters.
    static GoldenDigits parse(std::string_view text);
};

/// Input bits needed for n_frac digits: ceil(n_frac log2 phi) + 64.
long golden_precision(std::size_t n_frac);

/// Greedy expansion of a fixed-point value, treated as exact, with
/// n_frac fractional digits. Throws std::domain_error for x < 0 and
/// std::invalid_argument when x.frac_bits() < golden_precision(n_frac).
GoldenDigits to_golden_base(const FixedReal& x, std::size_t n_frac);

/// Exact greedy expansion; stops early when the remainder is zero.
GoldenDigits to_golden_base(const QPhi& x, std::size_t n_frac);

/// Exact value sum d_i phi^i. Throws std::invalid_argument on adjacent 1s.
QPhi from_golden_base(const GoldenDigits& d);

bool has_adjacent_ones(const GoldenDigits& d);

}  // namespace goldarc
