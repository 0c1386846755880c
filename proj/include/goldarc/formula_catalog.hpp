#pragma once

// Named BBP-type formulas, loaded from catalog text.

#include "goldarc/bbp.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace goldarc {

struct FormulaCatalog {
    std::vector<BBPFormula> formulas;

    /// nullptr when absent.
    const BBPFormula* find(std::string_view name) const;
    std::vector<std::string> names() const;
};

/// Throws ParseError on malformed text or non-exact scalars.
FormulaCatalog parse_formula_catalog(std::string_view text);

/// The catalog compiled into the library.
const FormulaCatalog& default_formula_catalog();

/// Reads and parses a catalog file.
FormulaCatalog load_formula_catalog(const std::string& path);

/// The binary and base-5 formulas rebuilt from the general arctangent
/// formulas with rebase, stretch and linear_combine, keyed by catalog name.
std::map<std::string, BBPFormula> derived_formulas();

}  // namespace goldarc
