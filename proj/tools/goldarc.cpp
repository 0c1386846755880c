// goldarc: evaluate, extract digits of, and verify golden-ratio arctangent
// constants from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 digit-boundary failure.

#include "goldarc/bbp.hpp"
#include "goldarc/error.hpp"
#include "goldarc/formula_catalog.hpp"
#include "goldarc/identities.hpp"
#include "goldarc/phinary.hpp"
#include "goldarc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace goldarc;
using nlohmann::json;

constexpr int kUsage = 1;
constexpr int kVerifyFail = 2;
constexpr int kBoundary = 3;
constexpr long kMaxFibIndex = 10'000'000;

struct Config {
    long prec = 128;
    std::string output = "plain";
    std::string formulas_path;
    std::string identities_path;

    bool structured() const { return output == "structured"; }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Config& cfg, const json& j, const std::string& plain) {
    if (cfg.structured())
        std::cout << j.dump() << '\n';
    else
        std::cout << plain << '\n';
}

FormulaCatalog formulas(const Config& cfg) {
    return cfg.formulas_path.empty() ? default_formula_catalog() : load_formula_catalog(cfg.formulas_path);
}

std::vector<IdentityRecord> identities(const Config& cfg) {
    return cfg.identities_path.empty() ? catalog_list() : load_identity_catalog(cfg.identities_path);
}

const BBPFormula& lookup(const FormulaCatalog& cat, const std::string& name) {
    if (const BBPFormula* f = cat.find(name)) return *f;
    std::string list;
    for (const auto& n : cat.names()) list += "  " + n + "\n";
    throw UsageError("unknown constant '" + name + "'; known constants:\n" + list);
}

std::string digit_text(const std::vector<std::uint64_t>& digits, std::uint64_t radix) {
    std::string s;
    if (radix <= 16) {
        for (auto d : digits) s += "0123456789abcdef"[d];
        return s;
    }
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + std::to_string(digits[i]);
    return s;
}

// ---------------------------------------------------------------------------

int cmd_eval(const Config& cfg, const std::string& name) {
    const FormulaCatalog cat = formulas(cfg);
    const BBPFormula& f = lookup(cat, name);
    FixedReal v = bbp_eval(f, cfg.prec);
    int digits = static_cast<int>(std::floor(static_cast<double>(cfg.prec) * std::log10(2.0)));
    std::string dec = v.to_decimal(digits);
    std::string bound = "2^-" + std::to_string(cfg.prec) + " + 10^-" + std::to_string(digits);
    emit(cfg,
         {{"command", "eval"}, {"name", name}, {"value", dec}, {"prec", cfg.prec}, {"digits", digits},
          {"error_bound", bound}},
         name + " = " + dec + "  (|error| <= " + bound + ")");
    return 0;
}

int cmd_digits(const Config& cfg, const std::string& name, std::uint64_t pos, std::size_t count) {
    const FormulaCatalog cat = formulas(cfg);
    const BBPFormula& f = lookup(cat, name);
    if (std::string why = extraction_ineligibility(f); !why.empty())
        throw UsageError("'" + name + "' is not digit-extractable: " + why +
                         " (extraction needs degree 1, an integer base >= 2, integer coefficients and a "
                         "prefactor whose denominator divides a power of the base)");
    DigitWindow w = bbp_digits(f, pos, count);
    std::string text = digit_text(w.digits, w.radix);
    emit(cfg,
         {{"command", "digits"}, {"name", name}, {"radix", w.radix}, {"position", pos}, {"count", count},
          {"digits", w.digits}, {"text", text}, {"guard_bits", w.guard_bits}},
         name + " base " + std::to_string(w.radix) + " digits " + std::to_string(pos + 1) + ".." +
             std::to_string(pos + count) + ": " + text);
    return 0;
}

json row_json(const ReportRow& r) {
    return {{"command", "verify"},
            {"id", r.id},
            {"source", to_string(r.source)},
            {"mode", to_string(r.mode)},
            {"params", r.params},
            {"cases", r.cases},
            {"failures", r.failures},
            {"max_residual", r.max_residual.to_hex()},
            {"status", r.pass() ? "PASS" : "FAIL"},
            {"detail", r.detail}};
}

std::string row_text(const ReportRow& r) {
    std::string s = std::string(r.pass() ? "PASS" : "FAIL") + "  " + r.id + "  " + to_string(r.mode) + "  [" +
                    r.params + "]  cases=" + std::to_string(r.cases);
    if (r.mode != VerifyMode::exact) s += "  max_residual=" + r.max_residual.to_hex();
    if (r.source == Source::external_cited) s += "  (external-cited)";
    if (!r.detail.empty()) s += "  " + r.detail;
    return s;
}

int cmd_verify(const Config& cfg, const std::string& id, bool all, std::optional<long> param, long bound,
               long n_terms) {
    const auto cat = identities(cfg);
    SweepOptions opt{bound, cfg.prec, n_terms};
    std::vector<ReportRow> rows;
    if (all || id.empty()) {
        if (param) throw UsageError("a parameter value needs a record id");
        rows = verify_all(cat, opt);
    } else {
        const IdentityRecord* r = find_identity(cat, id);
        if (!r) throw UsageError("unknown identity '" + id + "'");
        try {
            rows = verify_record(*r, opt, param);
        } catch (const DomainError& e) {
            emit(cfg, {{"command", "verify"}, {"id", r->id}, {"status", "EXCLUDED"}, {"detail", e.what()}},
                 "EXCLUDED  " + r->id + "  " + e.what());
            return 0;
        }
    }
    std::size_t failed = 0;
    for (const auto& r : rows) {
        emit(cfg, row_json(r), row_text(r));
        if (!r.pass()) ++failed;
    }
    emit(cfg,
         {{"command", "verify"}, {"summary", true}, {"rows", rows.size()}, {"failed", failed},
          {"status", failed ? "FAIL" : "PASS"}},
         std::to_string(rows.size() - failed) + "/" + std::to_string(rows.size()) + " rows passed");
    return failed ? kVerifyFail : 0;
}

int cmd_phinary(const Config& cfg, const std::string& what, std::size_t n_frac, std::size_t group) {
    const FormulaCatalog cat = formulas(cfg);
    GoldenDigits d;
    const long p = golden_precision(n_frac);
    if (const BBPFormula* f = cat.find(what)) {
        d = to_golden_base(bbp_eval(*f, p + 2).truncated(p), n_frac);
    } else {
        ExprPtr e;
        try {
            e = parse_expr(what);
        } catch (const ParseError&) {
            lookup(cat, what);  // reports the known names
        }
        if (!free_variables(*e).empty()) lookup(cat, what);
        std::optional<RealScalar> exact = has_transcendental(*e) ? std::nullopt : eval_exact(*e, Env{});
        if (exact && exact->in_qphi()) {
            if (sign(exact->coeff()) < 0) throw UsageError("phinary needs a non-negative value");
            d = to_golden_base(exact->coeff(), n_frac);
        } else {
            FixedReal v = eval_fixed(*e, Env{}, p + 2).truncated(p);
            if (v.sign() < 0) throw UsageError("phinary needs a non-negative value");
            d = to_golden_base(v, n_frac);
        }
    }
    std::string text = d.to_string(group);
    emit(cfg,
         {{"command", "phinary"}, {"input", what}, {"digits", n_frac}, {"text", d.to_string()},
          {"uncertain", d.uncertain}},
         text + (d.uncertain ? "  (trailing digits uncertain)" : ""));
    return 0;
}

int cmd_fib(const Config& cfg, long n, bool is_lucas) {
    if (n > kMaxFibIndex || n < -kMaxFibIndex)
        throw UsageError("index " + std::to_string(n) + " outside [-10^7, 10^7]");
    BigInt v = is_lucas ? lucas(n) : fib(n);
    std::string s = v.get_str();
    emit(cfg, {{"command", is_lucas ? "lucas" : "fib"}, {"n", n}, {"value", s}}, s);
    return 0;
}

std::string formula_summary(const BBPFormula& f) {
    std::string s = f.name + "  P(" + std::to_string(f.degree) + ", " + f.base.to_string() + ", " +
                    std::to_string(f.length()) + ", A) * " + f.prefactor.to_string();
    if (f.lhs) s += "  = " + to_string(*f.lhs);
    s += extraction_ineligibility(f).empty() ? "  [digits]" : "";
    return s;
}

int cmd_catalog(const Config& cfg, const std::string& which) {
    if (which != "identities") {
        for (const auto& f : formulas(cfg).formulas) {
            json coeffs = json::array();
            for (const auto& a : f.coeffs) coeffs.push_back(a.to_string());
            emit(cfg,
                 {{"command", "catalog"}, {"type", "formula"}, {"name", f.name}, {"degree", f.degree},
                  {"base", f.base.to_string()}, {"length", f.length()}, {"coeffs", coeffs},
                  {"prefactor", f.prefactor.to_string()}, {"lhs", f.lhs ? to_string(*f.lhs) : ""},
                  {"digit_extractable", extraction_ineligibility(f).empty()}},
                 formula_summary(f));
        }
    }
    if (which != "formulas") {
        for (const auto& r : identities(cfg)) {
            std::string domain = r.has_param() ? r.domain.describe(r.param) : "no parameter";
            emit(cfg,
                 {{"command", "catalog"}, {"type", "identity"}, {"id", r.id}, {"aliases", r.aliases},
                  {"domain", domain}, {"kind", to_string(r.kind)}, {"source", to_string(r.source)},
                  {"lhs", to_string(*r.lhs)}, {"rhs", to_string(*r.rhs)}, {"steps", r.steps.size()},
                  {"anchor", r.anchor}},
                 r.id + "  [" + domain + ", " + to_string(r.kind) + ", " + to_string(r.source) + "]  " +
                     to_string(*r.lhs) + " = " + to_string(*r.rhs));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"goldarc: golden-ratio arctangent identities and BBP-type formulas"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--prec", cfg.prec, "Precision in bits")
        ->envname("GOLDARC_PREC")
        ->check(CLI::Range(16L, 1L << 20));
    app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"plain", "structured"}));
    app.add_option("--formulas", cfg.formulas_path, "Formula catalog file (default: built in)");
    app.add_option("--identities", cfg.identities_path, "Identity catalog file (default: built in)");

    std::string name;
    auto* eval = app.add_subcommand("eval", "Evaluate a catalog constant");
    eval->add_option("name", name, "Constant name")->required();

    std::uint64_t pos = 0;
    std::size_t count = 8;
    auto* digits = app.add_subcommand("digits", "Extract digits of an integer-base formula");
    digits->add_option("name", name, "Constant name")->required();
    digits->add_option("--pos", pos, "Digits after this position")->check(CLI::Range(0UL, kMaxDigitPosition));
    digits->add_option("--count", count, "Number of digits")->check(CLI::Range(1UL, kMaxDigitCount));

    std::string id;
    bool all = false;
    std::optional<long> k, n, p;
    long bound = 50, n_terms = 64;
    auto* verify = app.add_subcommand("verify", "Verify identities");
    verify->add_option("id", id, "Record id or alias");
    verify->add_flag("--all", all, "Verify every record");
    verify->add_option("--k", k, "Parameter value");
    verify->add_option("--n", n, "Parameter value");
    verify->add_option("--p", p, "Parameter value");
    verify->add_option("--bound", bound, "Sweep |param| <= bound")->check(CLI::Range(1L, 100000L));
    verify->add_option("--terms", n_terms, "Terms for infinite sums")->check(CLI::Range(1L, 100000L));

    std::string what;
    std::size_t n_frac = 32, group = 0;
    auto* phin = app.add_subcommand("phinary", "Golden-ratio-base digits of a constant or literal");
    phin->add_option("value", what, "Constant name or expression")->required();
    phin->add_option("--digits", n_frac, "Fractional digits")->check(CLI::Range(0UL, 100000UL));
    phin->add_option("--group", group, "Space every N fractional digits");

    long index = 0;
    auto* fibc = app.add_subcommand("fib", "Fibonacci number F_n");
    fibc->add_option("n", index, "Index")->required();
    auto* lucc = app.add_subcommand("lucas", "Lucas number L_n");
    lucc->add_option("n", index, "Index")->required();

    std::string which = "all";
    auto* cat = app.add_subcommand("catalog", "List catalog entries");
    cat->add_option("which", which, "formulas | identities | all")
        ->check(CLI::IsMember({"formulas", "identities", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) return cmd_eval(cfg, name);
        if (*digits) return cmd_digits(cfg, name, pos, count);
        if (*verify) {
            int given = (k ? 1 : 0) + (n ? 1 : 0) + (p ? 1 : 0);
            if (given > 1) throw UsageError("give at most one of --k, --n, --p");
            std::optional<long> param = k ? k : n ? n : p;
            return cmd_verify(cfg, id, all, param, bound, n_terms);
        }
        if (*phin) return cmd_phinary(cfg, what, n_frac, group);
        if (*fibc) return cmd_fib(cfg, index, false);
        if (*lucc) return cmd_fib(cfg, index, true);
        if (*cat) return cmd_catalog(cfg, which);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    } catch (const BoundaryRisk& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBoundary;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
