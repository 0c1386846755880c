#pragma once

// Block-structured catalog text:
//
//   # comment
//   formula arctan-phi
//     base: 16
//     coeffs: 8, 16, 4, 0, -2, -4, -1, 0
//   end
//
// Keys may repeat; their order is kept.

#include "goldarc/error.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace goldarc::detail {

struct Block {
    std::string type;  // "formula", "identity"
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> fields;

    /// Last value for key, or empty.
    std::string get(std::string_view key) const;
    std::vector<std::string> all(std::string_view key) const;
    bool has(std::string_view key) const;
    [[noreturn]] void fail(const std::string& what) const;
};

std::vector<Block> parse_blocks(std::string_view text);

std::string trim(std::string_view s);

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep);

}  // namespace goldarc::detail
