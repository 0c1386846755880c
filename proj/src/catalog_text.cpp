#include "catalog_text.hpp"

#include <cctype>

namespace goldarc::detail {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::string Block::get(std::string_view key) const {
    for (auto it = fields.rbegin(); it != fields.rend(); ++it)
        if (it->first == key) return it->second;
    return {};
}

std::vector<std::string> Block::all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : fields)
        if (k == key) out.push_back(v);
    return out;
}

bool Block::has(std::string_view key) const {
    for (const auto& f : fields)
        if (f.first == key) return true;
    return false;
}

void Block::fail(const std::string& what) const {
    throw ParseError(type + " '" + name + "' (line " + std::to_string(line) + "): " + what);
}

std::vector<Block> parse_blocks(std::string_view text) {
    std::vector<Block> out;
    Block* open = nullptr;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto where = [&] { return " at line " + std::to_string(lineno); };
        if (!open) {
            auto sp = line.find(' ');
            if (sp == std::string::npos) throw ParseError("expected '<type> <name>'" + where());
            Block b;
            b.type = line.substr(0, sp);
            b.name = trim(line.substr(sp + 1));
            b.line = lineno;
            out.push_back(std::move(b));
            open = &out.back();
            continue;
        }
        if (line == "end") {
            open = nullptr;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'" + where());
        open->fields.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
    }
    if (open) throw ParseError(open->type + " '" + open->name + "' is missing 'end'");
    return out;
}

}  // namespace goldarc::detail
