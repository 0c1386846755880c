#include "goldarc/bbp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goldarc {

namespace {

long bit_length(unsigned long v) {
    long n = 0;
    for (; v != 0; v >>= 1) ++n;
    return n;
}

double approx(const RealScalar& x) { return to_fixed(x, 64).to_double(); }

/// Exact test |x| > 1.
bool exceeds_one(const RealScalar& x) {
    RealScalar sq = x * x;  // c^2 r, always in Q(phi)
    return compare(sq.coeff(), QPhi(1L)) > 0;
}

double coeff_abs_sum(const BBPFormula& f) {
    double s = 0;
    for (const auto& a : f.coeffs) s += std::fabs(approx(a));
    return s;
}

/// log2 of the tail bound |prefactor| (sum |a_j|) |b|^-terms / (1 - 1/|b|).
double tail_log2(const BBPFormula& f, long terms) {
    double b = std::fabs(approx(f.base));
    double a = coeff_abs_sum(f) * std::fabs(approx(f.prefactor));
    if (a == 0) return -INFINITY;
    return std::log2(a) - static_cast<double>(terms) * std::log2(b) - std::log2(1 - 1 / b);
}

RealScalar scale(const RealScalar& x, const mpq_class& q) {
    return x * RealScalar(QPhi::rational(q.get_num(), q.get_den()));
}

}  // namespace

bool same_series(const BBPFormula& x, const BBPFormula& y) {
    return x.degree == y.degree && x.base == y.base && x.prefactor == y.prefactor && x.coeffs == y.coeffs;
}

void check_convergent(const BBPFormula& f) {
    if (f.coeffs.empty()) throw std::domain_error("formula '" + f.name + "' has no coefficients");
    if (f.degree < 1) throw std::domain_error("formula '" + f.name + "' has degree 0");
    if (!exceeds_one(f.base))
        throw std::domain_error("formula '" + f.name + "': |base| = |" + f.base.to_string() + "| must exceed 1");
}

long bbp_terms_needed(const BBPFormula& f, long prec) {
    check_convergent(f);
    double b = std::fabs(approx(f.base));
    double a = coeff_abs_sum(f) * std::fabs(approx(f.prefactor));
    if (a == 0) return 0;
    double need = (static_cast<double>(prec) + 2 + std::log2(a) - std::log2(1 - 1 / b)) / std::log2(b);
    return std::max(1L, static_cast<long>(std::ceil(need)) + 2);
}

FixedReal bbp_tail_bound(const BBPFormula& f, long terms) {
    check_convergent(f);
    double l = tail_log2(f, terms);
    if (std::isinf(l)) return FixedReal(0, 1);
    long e = static_cast<long>(std::ceil(l)) + 1;
    if (e >= 0) return FixedReal::from_integer(BigInt(1) << static_cast<unsigned long>(e));
    return FixedReal(1, -e);
}

FixedReal bbp_partial(const BBPFormula& f, long terms, long prec) {
    check_convergent(f);
    const double b = std::fabs(approx(f.base));
    const double asum = coeff_abs_sum(f);
    const double pref = std::fabs(approx(f.prefactor));
    auto bits_of = [](double v) { return v > 1 ? static_cast<long>(std::ceil(std::log2(v))) : 0L; };
    const long w = prec + 12 + 2 * bit_length(static_cast<unsigned long>(terms) + 1) + bits_of(asum) + bits_of(pref) +
                   bits_of(1 / (1 - 1 / b)) + bit_length(f.length());

    const FixedReal inv_base = to_fixed(RealScalar(1L) / f.base, w);
    std::vector<FixedReal> a;
    a.reserve(f.length());
    for (const auto& c : f.coeffs) a.push_back(to_fixed(c, w));

    const unsigned long l = f.length();
    FixedReal power = FixedReal::from_integer(1, w);
    FixedReal acc(0, w);
    BigInt denom;
    for (long k = 0; k < terms; ++k) {
        BigInt inner = 0;
        for (unsigned long j = 0; j < l; ++j) {
            if (a[j].is_zero()) continue;
            mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(k) * l + j + 1, f.degree);
            BigInt q;
            mpz_tdiv_q(q.get_mpz_t(), a[j].scaled().get_mpz_t(), denom.get_mpz_t());
            inner += q;
        }
        acc = acc + mul(power, FixedReal(inner, w), w);
        power = mul(power, inv_base, w);
    }
    return mul(acc, to_fixed(f.prefactor, w), prec + 2);
}

FixedReal bbp_eval(const BBPFormula& f, long prec) { return bbp_partial(f, bbp_terms_needed(f, prec), prec); }

BBPFormula general_arctan_formula(ArctanKind kind, const RealScalar& u) {
    if (sign(u) <= 0) throw std::domain_error("general arctangent formula needs u > 0, got " + u.to_string());
    BBPFormula f;
    f.degree = 1;
    const RealScalar zero;
    const RealScalar one(1L);
    auto p = [&](long n) { return pow(u, n); };
    ExprPtr u_expr = scalar_expr(u);
    auto two_u = ex::binary(ExprKind::mul, ex::number(2), u_expr);
    switch (kind) {
        case ArctanKind::recip_u:
            f.base = p(4);
            f.coeffs = {p(2), zero, -one, zero};
            f.prefactor = one / p(3);
            f.lhs = ex::unary(ExprKind::atan, ex::binary(ExprKind::div, ex::number(1), u_expr));
            break;
        case ArctanKind::recip_2u_minus_1:
        case ArctanKind::recip_2u_plus_1: {
            const bool minus = kind == ArctanKind::recip_2u_minus_1;
            const RealScalar s(minus ? 1L : -1L);
            f.base = RealScalar(16L) * p(8);
            f.coeffs = {RealScalar(8L) * p(6), s * RealScalar(8L) * p(5), RealScalar(4L) * p(4), zero,
                        RealScalar(-2L) * p(2), -s * RealScalar(2L) * u, -one, zero};
            f.prefactor = one / (RealScalar(16L) * p(7));
            f.lhs = ex::unary(ExprKind::atan,
                              ex::binary(ExprKind::div, ex::number(1),
                                         ex::binary(minus ? ExprKind::sub : ExprKind::add, two_u, ex::number(1))));
            break;
        }
    }
    if (!exceeds_one(f.base))
        throw std::domain_error("general arctangent formula diverges for u = " + u.to_string());
    return f;
}

BBPFormula rebase(const BBPFormula& f, unsigned r) {
    if (r == 0) throw std::invalid_argument("rebase factor must be positive");
    if (r == 1) return f;
    BBPFormula g = f;
    const std::size_t l = f.length();
    g.base = pow(f.base, static_cast<long>(r));
    g.coeffs.assign(l * r, RealScalar());
    for (unsigned t = 0; t < r; ++t) {
        RealScalar w = pow(f.base, static_cast<long>(r - 1 - t));
        for (std::size_t j = 0; j < l; ++j) g.coeffs[t * l + j] = f.coeffs[j] * w;
    }
    g.prefactor = f.prefactor / pow(f.base, static_cast<long>(r - 1));
    return g;
}

BBPFormula stretch(const BBPFormula& f, unsigned m) {
    if (m == 0) throw std::invalid_argument("stretch factor must be positive");
    if (m == 1) return f;
    BBPFormula g = f;
    const std::size_t l = f.length();
    RealScalar factor = pow(RealScalar(static_cast<long>(m)), static_cast<long>(f.degree));
    g.coeffs.assign(l * m, RealScalar());
    // Slot j (1-based) moves to slot m*j.
    for (std::size_t j = 0; j < l; ++j) g.coeffs[m * (j + 1) - 1] = f.coeffs[j] * factor;
    return g;
}

BBPFormula linear_combine(const std::vector<std::pair<mpq_class, BBPFormula>>& terms) {
    if (terms.empty()) throw std::invalid_argument("linear_combine of no formulas");
    const BBPFormula& first = terms.front().second;
    for (const auto& [c, f] : terms) {
        if (f.degree != first.degree || !(f.base == first.base) || f.length() != first.length())
            throw std::invalid_argument("linear_combine: formulas '" + first.name + "' and '" + f.name +
                                        "' differ in degree, base or length");
    }
    const std::size_t l = first.length();

    BBPFormula out;
    out.degree = first.degree;
    out.base = first.base;

    ExprPtr lhs;
    bool lhs_complete = true;
    for (const auto& [c, f] : terms) {
        if (!f.lhs) {
            lhs_complete = false;
            continue;
        }
        ExprPtr t = c == 1 ? f.lhs : ex::binary(ExprKind::mul, ex::number(c), f.lhs);
        lhs = lhs ? ex::binary(ExprKind::add, lhs, t) : t;
    }
    if (lhs_complete) out.lhs = lhs;

    // Fold prefactors into the coefficients.
    std::vector<RealScalar> folded(l);
    for (const auto& [c, f] : terms)
        for (std::size_t i = 0; i < l; ++i) folded[i] = folded[i] + scale(f.prefactor * f.coeffs[i], c);

    bool rational = std::all_of(folded.begin(), folded.end(), [](const RealScalar& x) { return x.is_rational(); });
    if (rational) {
        // Primitive integer vector times a positive rational prefactor.
        BigInt lcm = 1, g = 0;
        for (const auto& x : folded) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.coeff().den().get_mpz_t());
        std::vector<BigInt> ints(l);
        for (std::size_t i = 0; i < l; ++i) {
            mpq_class q = folded[i].coeff().to_rational() * lcm;
            ints[i] = q.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
        }
        if (g == 0) g = 1;
        out.coeffs.resize(l);
        for (std::size_t i = 0; i < l; ++i) out.coeffs[i] = RealScalar(QPhi(BigInt(ints[i] / g)));
        out.prefactor = RealScalar(QPhi::rational(g, lcm));
        return out;
    }

    bool shared_prefactor = std::all_of(terms.begin(), terms.end(),
                                        [&](const auto& t) { return t.second.prefactor == first.prefactor; });
    if (shared_prefactor) {
        out.prefactor = first.prefactor;
        out.coeffs.assign(l, RealScalar());
        for (const auto& [c, f] : terms)
            for (std::size_t i = 0; i < l; ++i) out.coeffs[i] = out.coeffs[i] + scale(f.coeffs[i], c);
        return out;
    }
    out.prefactor = RealScalar(1L);
    out.coeffs = std::move(folded);
    return out;
}

}  // namespace goldarc
