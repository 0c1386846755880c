#include "goldarc/formula_catalog.hpp"

#include "catalog_text.hpp"
#include "goldarc/error.hpp"

#include <fstream>
#include <sstream>

namespace goldarc {

namespace embedded {
extern const std::string_view formulas;
}

namespace {

RealScalar exact_scalar(const detail::Block& b, const std::string& text) {
    try {
        if (auto v = eval_exact(*parse_expr(text), Env{})) return *v;
    } catch (const ParseError& e) {
        b.fail(e.what());
    }
    b.fail("'" + text + "' is not an exact scalar");
}

BBPFormula build(const detail::Block& b) {
    BBPFormula f;
    f.name = b.name;
    if (b.has("degree")) {
        long s = std::stol(b.get("degree"));
        if (s < 1) b.fail("degree must be positive");
        f.degree = static_cast<unsigned>(s);
    }
    if (!b.has("base") || !b.has("coeffs")) b.fail("needs 'base' and 'coeffs'");
    f.base = exact_scalar(b, b.get("base"));
    for (const auto& c : detail::split_top(b.get("coeffs"), ','))
        f.coeffs.push_back(exact_scalar(b, c));
    if (b.has("prefactor")) f.prefactor = exact_scalar(b, b.get("prefactor"));
    if (b.has("lhs")) {
        try {
            f.lhs = parse_expr(b.get("lhs"));
        } catch (const ParseError& e) {
            b.fail(e.what());
        }
    }
    f.note = b.get("note");
    try {
        check_convergent(f);
    } catch (const std::domain_error& e) {
        b.fail(e.what());
    }
    return f;
}

}  // namespace

const BBPFormula* FormulaCatalog::find(std::string_view name) const {
    for (const auto& f : formulas)
        if (f.name == name) return &f;
    return nullptr;
}

std::vector<std::string> FormulaCatalog::names() const {
    std::vector<std::string> out;
    for (const auto& f : formulas) out.push_back(f.name);
    return out;
}

FormulaCatalog parse_formula_catalog(std::string_view text) {
    FormulaCatalog cat;
    for (const auto& b : detail::parse_blocks(text)) {
        if (b.type != "formula") b.fail("expected a 'formula' block");
        if (cat.find(b.name)) b.fail("duplicate formula name");
        cat.formulas.push_back(build(b));
    }
    return cat;
}

const FormulaCatalog& default_formula_catalog() {
    static const FormulaCatalog cat = parse_formula_catalog(embedded::formulas);
    return cat;
}

FormulaCatalog load_formula_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read formula catalog " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_formula_catalog(ss.str());
}

std::map<std::string, BBPFormula> derived_formulas() {
    const RealScalar phi(QPhi::phi());
    const RealScalar sqrt5(QPhi::sqrt5());

    const BBPFormula one = general_arctan_formula(ArctanKind::recip_2u_minus_1, RealScalar(1L));
    const BBPFormula half = general_arctan_formula(ArctanKind::recip_u, RealScalar(2L));
    const BBPFormula quarter = general_arctan_formula(ArctanKind::recip_u, RealScalar(4L));
    const BBPFormula eighth = general_arctan_formula(ArctanKind::recip_u, RealScalar(8L));

    auto named = [](BBPFormula f, const std::string& name) {
        f.name = name;
        return f;
    };
    using Terms = std::vector<std::pair<mpq_class, BBPFormula>>;
    std::map<std::string, BBPFormula> out;

    out["atan-one"] = named(linear_combine(Terms{{1, one}}), "atan-one");
    out["atan-half"] = named(linear_combine(Terms{{1, half}}), "atan-half");
    out["atan-quarter"] = named(linear_combine(Terms{{1, quarter}}), "atan-quarter");
    out["atan-eighth"] = named(linear_combine(Terms{{1, eighth}}), "atan-eighth");

    // base 16, length 8
    const BBPFormula half8 = stretch(half, 2);
    out["arctan-phi"] = named(linear_combine(Terms{{1, one}, {mpq_class(1, 2), half8}}), "arctan-phi");
    out["arctan-phi3"] = named(linear_combine(Terms{{2, one}, {mpq_class(-1, 2), half8}}), "arctan-phi3");
    out["arctan-phi5"] = named(linear_combine(Terms{{1, one}, {mpq_class(3, 2), half8}}), "arctan-phi5");

    // base 2^12, length 24
    out["arctan-phi7"] = named(linear_combine(Terms{{3, rebase(one, 3)},
                                                    {mpq_class(-3, 2), stretch(rebase(half, 3), 2)},
                                                    {-1, stretch(eighth, 6)}}),
                               "arctan-phi7");
    // base 256, length 16
    out["arctan-phi9"] = named(linear_combine(Terms{{2, rebase(one, 2)},
                                                    {mpq_class(1, 2), stretch(rebase(half, 2), 2)},
                                                    {-1, stretch(quarter, 4)}}),
                               "arctan-phi9");

    // sqrt 5 times arctan(1/sqrt 5) and arctan(1/sqrt 5^3)
    auto times_sqrt5 = [&](BBPFormula f) {
        f.prefactor = f.prefactor * sqrt5;
        f.lhs = ex::binary(ExprKind::mul, ex::unary(ExprKind::sqrt, ex::number(5)), f.lhs);
        return f;
    };
    const BBPFormula r5 = times_sqrt5(general_arctan_formula(ArctanKind::recip_u, sqrt5));
    const BBPFormula r125 = times_sqrt5(general_arctan_formula(ArctanKind::recip_u, RealScalar(5L) * sqrt5));
    out["arctan-phi-over-sqrt5-combo"] =
        named(linear_combine(Terms{{1, rebase(r5, 3)}, {1, stretch(r125, 3)}}), "arctan-phi-over-sqrt5-combo");
    out["sqrt5-atan-phi2-phi6"] = named(linear_combine(Terms{{1, r5}}), "sqrt5-atan-phi2-phi6");
    out["sqrt5-atan-phi4-phi6"] = named(linear_combine(Terms{{1, r125}}), "sqrt5-atan-phi4-phi6");

    // phi-nary instances of the general formulas
    out["arctan-inv-phi"] = named(general_arctan_formula(ArctanKind::recip_u, phi), "arctan-inv-phi");
    out["atan-inv-sqrt5"] = named(general_arctan_formula(ArctanKind::recip_2u_minus_1, phi), "atan-inv-sqrt5");
    out["atan-inv-phi3"] = named(general_arctan_formula(ArctanKind::recip_2u_plus_1, phi), "atan-inv-phi3");
    return out;
}

}  // namespace goldarc
