#include "goldarc/identities.hpp"

#include "catalog_text.hpp"
#include "goldarc/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace goldarc {

namespace embedded {
extern const std::string_view identities;
}

bool ParamDomain::contains(long v) const {
    if (std::find(excludes.begin(), excludes.end(), v) != excludes.end()) return false;
    switch (kind) {
        case Kind::none: return false;
        case Kind::at_least: return v >= min;
        case Kind::nonzero: return v != 0;
    }
    return false;
}

std::vector<long> ParamDomain::sweep(long lo, long hi) const {
    std::vector<long> out;
    for (long v = lo; v <= hi; ++v)
        if (contains(v)) out.push_back(v);
    return out;
}

std::vector<long> ParamDomain::sweep(long bound) const { return sweep(-bound, bound); }

std::string ParamDomain::describe(const std::string& param) const {
    std::string s;
    switch (kind) {
        case Kind::none: return "no parameter";
        case Kind::at_least: s = param + " >= " + std::to_string(min); break;
        case Kind::nonzero: s = param + " != 0"; break;
    }
    if (!excludes.empty()) {
        s += ", excluding";
        for (long e : excludes) s += " " + std::to_string(e);
    }
    return s;
}

Env IdentityRecord::bind(std::optional<long> v) const {
    if (!has_param()) {
        if (v) throw DomainError("record '" + id + "' takes no parameter");
        return {};
    }
    if (!v) throw DomainError("record '" + id + "' needs a value for " + param);
    if (!domain.contains(*v))
        throw DomainError(param + " = " + std::to_string(*v) + " is outside the domain of '" + id + "' (" +
                          domain.describe(param) + ")");
    return Env{{param, *v}};
}

const char* to_string(IdentityKind k) {
    switch (k) {
        case IdentityKind::closed: return "closed";
        case IdentityKind::finite_sum: return "finite-sum";
        case IdentityKind::infinite_sum: return "infinite-sum";
    }
    return "?";
}

const char* to_string(Source s) { return s == Source::external_cited ? "external-cited" : "this-work"; }

namespace {

ExprPtr expr_field(const detail::Block& b, const std::string& text) {
    try {
        return parse_expr(text);
    } catch (const ParseError& e) {
        b.fail(e.what());
    }
}

// "k >= 1", "n != 0", "n != 0; exclude 1, -1", "none"
void parse_params(const detail::Block& b, IdentityRecord& r) {
    std::string text = b.get("params");
    if (text.empty() || text == "none") return;
    auto parts = detail::split_top(text, ';');
    const std::string& head = parts[0];
    auto op = head.find_first_of("!>");
    if (op == std::string::npos || op + 1 >= head.size() || head[op + 1] != '=') b.fail("bad params '" + text + "'");
    r.param = detail::trim(head.substr(0, op));
    std::string rhs = detail::trim(head.substr(op + 2));
    if (head[op] == '>') {
        r.domain.kind = ParamDomain::Kind::at_least;
        r.domain.min = std::stol(rhs);
    } else {
        if (rhs != "0") b.fail("only '!= 0' is supported");
        r.domain.kind = ParamDomain::Kind::nonzero;
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::string p = parts[i];
        if (p.rfind("exclude", 0) != 0) b.fail("bad params clause '" + p + "'");
        for (const auto& v : detail::split_top(p.substr(7), ',')) r.domain.excludes.push_back(std::stol(v));
    }
}

// "sum; x = ...; y = ...; expected = ...; branch = 1/2"
ArgStep parse_step(const detail::Block& b, const std::string& text) {
    auto parts = detail::split_top(text, ';');
    ArgStep s;
    if (parts[0] == "sum")
        s.mode = CombineMode::sum;
    else if (parts[0] == "diff")
        s.mode = CombineMode::diff;
    else
        b.fail("step mode must be 'sum' or 'diff'");
    for (std::size_t i = 1; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string::npos) b.fail("bad step clause '" + parts[i] + "'");
        std::string key = detail::trim(parts[i].substr(0, eq));
        std::string val = detail::trim(parts[i].substr(eq + 1));
        if (key == "x")
            s.x = expr_field(b, val);
        else if (key == "y")
            s.y = expr_field(b, val);
        else if (key == "expected")
            s.expected = expr_field(b, val);
        else if (key == "branch")
            s.branch = mpq_class(val);
        else
            b.fail("unknown step key '" + key + "'");
    }
    if (!s.x || !s.y || !s.expected) b.fail("step needs x, y and expected");
    s.branch.canonicalize();
    return s;
}

void require_bound(const detail::Block& b, const Expr& e, const std::string& param, const std::string& extra = {}) {
    for (const auto& v : free_variables(e))
        if (v != param && v != extra) b.fail("unbound variable '" + v + "' in '" + to_string(e) + "'");
}

void check_bound(const detail::Block& b, const IdentityRecord& r) {
    require_bound(b, *r.lhs, r.param);
    if (r.series) {
        require_bound(b, *r.series->start, r.param);
        require_bound(b, *r.series->term, r.param, r.series->index);
        require_bound(b, *r.series->tail, r.param, "N");
    } else {
        require_bound(b, *r.rhs, r.param);
    }
    for (const auto& s : r.steps)
        for (const auto* e : {s.x.get(), s.y.get(), s.expected.get()}) require_bound(b, *e, r.param);
}

IdentityRecord build(const detail::Block& b) {
    IdentityRecord r;
    r.id = b.name;
    for (const auto& a : b.all("alias")) r.aliases.push_back(a);
    parse_params(b, r);
    std::string kind = b.get("kind");
    if (kind.empty() || kind == "closed")
        r.kind = IdentityKind::closed;
    else if (kind == "finite-sum")
        r.kind = IdentityKind::finite_sum;
    else if (kind == "infinite-sum")
        r.kind = IdentityKind::infinite_sum;
    else
        b.fail("unknown kind '" + kind + "'");
    std::string source = b.get("source");
    if (source.empty() || source == "this-work")
        r.source = Source::this_work;
    else if (source == "external-cited")
        r.source = Source::external_cited;
    else
        b.fail("unknown source '" + source + "'");
    r.anchor = b.get("anchor");
    r.note = b.get("note");
    if (!b.has("lhs")) b.fail("missing lhs");
    r.lhs = expr_field(b, b.get("lhs"));
    if (r.kind == IdentityKind::infinite_sum) {
        InfiniteSum s;
        s.index = b.get("index");
        if (s.index.empty() || !b.has("start") || !b.has("term") || !b.has("tail"))
            b.fail("infinite sums need index, start, term and tail");
        s.start = expr_field(b, b.get("start"));
        s.term = expr_field(b, b.get("term"));
        s.tail = expr_field(b, b.get("tail"));
        r.rhs = ex::sum(s.index, s.start, ex::var("inf"), s.term);
        r.series = std::move(s);
    } else {
        if (!b.has("rhs")) b.fail("missing rhs");
        r.rhs = expr_field(b, b.get("rhs"));
    }
    for (const auto& st : b.all("step")) r.steps.push_back(parse_step(b, st));
    check_bound(b, r);
    return r;
}

}  // namespace

std::vector<IdentityRecord> parse_identity_catalog(std::string_view text) {
    std::vector<IdentityRecord> out;
    for (const auto& b : detail::parse_blocks(text)) {
        if (b.type != "identity") b.fail("expected an 'identity' block");
        IdentityRecord r = build(b);
        if (find_identity(out, r.id)) b.fail("duplicate id");
        for (const auto& a : r.aliases)
            if (find_identity(out, a)) b.fail("duplicate alias '" + a + "'");
        out.push_back(std::move(r));
    }
    return out;
}

const std::vector<IdentityRecord>& catalog_list() {
    static const std::vector<IdentityRecord> cat = parse_identity_catalog(embedded::identities);
    return cat;
}

std::vector<IdentityRecord> load_identity_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read identity catalog " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_identity_catalog(ss.str());
}

const IdentityRecord* find_identity(const std::vector<IdentityRecord>& catalog, std::string_view id) {
    for (const auto& r : catalog) {
        if (r.id == id) return &r;
        for (const auto& a : r.aliases)
            if (a == id) return &r;
    }
    return nullptr;
}

}  // namespace goldarc
