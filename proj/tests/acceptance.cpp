// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "goldarc/bbp.hpp"
#include "goldarc/formula_catalog.hpp"
#include "goldarc/golden.hpp"
#include "goldarc/identities.hpp"
#include "goldarc/phinary.hpp"
#include "goldarc/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

using namespace goldarc;

namespace {

// Tolerances, as log2 of the allowed absolute error.
constexpr long kSweepPrec = 128;
constexpr long kSweepBound = 50;
constexpr long kSweepResidualBits = 128;
constexpr long kExactMaxK = 200;
constexpr long kBinaryPrec = 128;
constexpr long kBinaryBits = 124;
constexpr long kPhiPrec = 256;
constexpr long kPhiBits = 248;
constexpr long kInfiniteTerms = 64;
constexpr double kDecayTolerance = 0.05;
constexpr int kRoundTrips = 10'000;
constexpr int kRandomCases = 10'000;
constexpr double kSweepSeconds = 60.0;
constexpr double kDigitSeconds = 5.0;

int failures = 0;

void report(const char* tag, bool ok, const std::string& what) {
    std::printf("%s %s  %s\n", tag, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const BBPFormula& formula(const std::string& name) {
    const BBPFormula* f = default_formula_catalog().find(name);
    if (!f) throw std::runtime_error("missing formula " + name);
    return *f;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void ac1_identity_sweep() {
    auto t0 = std::chrono::steady_clock::now();
    SweepOptions opt;
    opt.bound = kSweepBound;
    opt.prec = kSweepPrec;
    opt.n_terms = kInfiniteTerms;
    const auto& cat = catalog_list();
    auto rows = verify_all(cat, opt);
    std::size_t cases = 0, bad = 0;
    bool residual_ok = true;
    std::string first;
    for (const auto& r : rows) {
        cases += r.cases;
        if (!r.pass()) {
            ++bad;
            if (first.empty()) first = r.id + ": " + r.detail;
        }
        if (r.mode == VerifyMode::numeric && r.cases > 0 && !below_pow2(r.max_residual, kSweepResidualBits) &&
            !r.max_residual.is_zero())
            residual_ok = false;
    }
    double secs = seconds_since(t0);
    bool ok = cat.size() >= 30 && bad == 0 && residual_ok && secs < kSweepSeconds;
    report("AC1", ok,
           fmt("identity sweep p=%ld |param|<=%ld: %zu records, %zu rows, %zu cases, %zu failing rows, %.1fs%s%s",
               kSweepPrec, kSweepBound, cat.size(), rows.size(), cases, bad, secs, first.empty() ? "" : "; ",
               first.c_str()));
}

void ac2_exact_arguments() {
    const char* ids[] = {"eq3", "eq7", "eq10-lemma", "eq8", "eq9", "eq16", "eq17", "eq18", "eq19", "eq20", "eq21"};
    std::size_t steps = 0, bad = 0;
    std::string first;
    for (const char* id : ids) {
        const IdentityRecord* r = find_identity(catalog_list(), id);
        if (!r) {
            ++bad;
            first = std::string("missing ") + id;
            continue;
        }
        for (long k : r->domain.sweep(1, kExactMaxK)) {
            ExactResult res = verify_exact_args(*r, k);
            steps += res.steps.size();
            if (!res.pass()) {
                ++bad;
                if (first.empty()) first = fmt("%s k=%ld", id, k);
            }
        }
    }
    report("AC2", bad == 0 && steps > 0,
           fmt("exact Q(phi) argument steps, 1 <= k <= %ld: %zu steps checked, %zu failures%s%s", kExactMaxK, steps,
               bad, first.empty() ? "" : "; first ", first.c_str()));
}

void ac3_binary_formulas() {
    auto derived = derived_formulas();
    const std::map<std::string, long> power = {
        {"arctan-phi", 1}, {"arctan-phi3", 3}, {"arctan-phi5", 5}, {"arctan-phi7", 7}, {"arctan-phi9", 9}};
    bool ok = true;
    std::string notes;
    for (const auto& [name, n] : power) {
        const BBPFormula& entry = formula(name);
        bool same = derived.count(name) && same_series(derived.at(name), entry);
        FixedReal oracle = arctan(to_fixed(phi_pow(n), kBinaryPrec + 16), kBinaryPrec + 8);
        bool close = within(bbp_eval(entry, kBinaryPrec), oracle, kBinaryBits);
        if (!same || !close) {
            ok = false;
            notes += " " + name + (same ? "" : "(coeffs)") + (close ? "" : "(value)");
        }
    }
    std::vector<RealScalar> phi1;
    for (long v : {8, 16, 4, 0, -2, -4, -1, 0}) phi1.push_back(RealScalar(v));
    const BBPFormula& f7 = formula("arctan-phi7");
    ok = ok && formula("arctan-phi").coeffs == phi1 && f7.length() == 24 && f7.base == RealScalar(4096);
    report("AC3", ok,
           fmt("binary arctan(phi^n), n=1,3,5,7,9: derived == catalog, value within 2^-%ld at p=%ld%s", kBinaryBits,
               kBinaryPrec, notes.c_str()));
}

void ac4_base5_formulas() {
    const long p = kBinaryPrec + 16;
    auto at = [&](long n) { return arctan(to_fixed(phi_pow(-n), p + 8), p); };
    FixedReal s5 = sqrt_int(5, p);
    const std::map<std::string, FixedReal> oracle = {
        {"arctan-phi-over-sqrt5-combo", mul(s5, at(2) + at(4), p)},
        {"sqrt5-atan-phi2-phi6", mul(s5, at(2) + at(6), p)},
        {"sqrt5-atan-phi4-phi6", mul(s5, at(4) - at(6), p)},
    };
    auto derived = derived_formulas();
    bool ok = true;
    std::string notes;
    for (const auto& [name, want] : oracle) {
        const BBPFormula& f = formula(name);
        bool close = within(bbp_eval(f, kBinaryPrec), want, kBinaryBits);
        bool same = derived.count(name) && same_series(derived.at(name), f);
        if (!close || !same) {
            ok = false;
            notes += " " + name;
        }
    }
    report("AC4", ok, fmt("base-5 formulas vs sqrt5 * arctan oracles within 2^-%ld at p=%ld%s", kBinaryBits,
                          kBinaryPrec, notes.c_str()));
}

void ac5_phi_power_formulas() {
    const long p = kPhiPrec + 24;
    auto fx = [&](const QPhi& q) { return to_fixed(q, p); };
    auto times = [&](const FixedReal& a, const FixedReal& b) { return mul(a, b, p); };
    const FixedReal s2 = sqrt_int(2, p), s3 = sqrt_int(3, p), s5 = sqrt_int(5, p), s15 = sqrt_int(15, p);
    const FixedReal one = FixedReal::from_integer(1, p), k27 = FixedReal::from_integer(27, p);
    const FixedReal phi3 = fx(phi_pow(3));
    const std::map<std::string, std::function<FixedReal()>> oracle = {
        {"pi-phinary", [&] { return pi(p); }},
        {"pi-phinary-12", [&] { return pi(p); }},
        {"log-phi", [&] { return log(fx(QPhi::phi()), p); }},
        {"log2", [&] { return log(FixedReal::from_integer(2), p); }},
        {"arctan-inv-phi", [&] { return arctan(fx(phi_pow(-1)), p); }},
        {"sqrt3-atan-sqrt3-5", [&] { return times(s3, arctan(div(s3, s5, p), p)); }},
        {"sqrt3-atan-sqrt3-phi3", [&] { return times(s3, arctan(div(s3, phi3, p), p)); }},
        {"atan-inv-sqrt5", [&] { return arctan(div(one, s5, p), p); }},
        {"atan-inv-phi3", [&] { return arctan(fx(phi_pow(-3)), p); }},
        {"sqrt2-atan-sqrt2", [&] { return times(s2, arctan(s2, p)); }},
        {"27sqrt3-atan-inv-sqrt15", [&] { return times(k27, times(s3, arctan(div(one, s15, p), p))); }},
        {"27sqrt3-atan-inv-phi3-sqrt3",
         [&] { return times(k27, times(s3, arctan(div(one, times(phi3, s3), p), p))); }},
    };
    int checked = 0;
    bool ok = true;
    std::string notes;
    for (const BBPFormula& f : default_formula_catalog().formulas) {
        if (f.base.is_rational()) continue;
        ++checked;
        auto it = oracle.find(f.name);
        if (it == oracle.end() || !within(bbp_eval(f, kPhiPrec), it->second(), kPhiBits)) {
            ok = false;
            notes += " " + f.name;
        }
    }
    ok = ok && checked == static_cast<int>(oracle.size());
    report("AC5", ok, fmt("phi-power-base formulas: %d vs independent oracles within 2^-%ld at p=%ld%s", checked,
                          kPhiBits, kPhiPrec, notes.c_str()));
}

void ac6_digit_extraction() {
    int formulas = 0, windows = 0, mismatches = 0;
    double slowest = 0;
    std::string notes;
    for (const BBPFormula& f : default_formula_catalog().formulas) {
        if (!extraction_ineligibility(f).empty()) continue;
        ++formulas;
        const auto radix = f.base.coeff().to_rational().get_num().get_ui();
        for (std::uint64_t d : {0ull, 10ull, 100ull, 1000ull}) {
            auto t0 = std::chrono::steady_clock::now();
            DigitWindow w = bbp_digits(f, d, 4);
            double secs = seconds_since(t0);
            if (d == 1000) slowest = std::max(slowest, secs);
            FixedReal full = bbp_eval(f, digits_precision(radix, d, 4));
            ++windows;
            if (w.digits != radix_digits(full, radix, d, 4)) {
                ++mismatches;
                notes += fmt(" %s@%llu", f.name.c_str(), static_cast<unsigned long long>(d));
            }
        }
    }
    bool ok = formulas > 0 && mismatches == 0 && slowest < kDigitSeconds;
    report("AC6", ok,
           fmt("digit extraction vs full evaluation: %d formulas, %d windows, %d mismatches, slowest d=1000 %.3fs%s",
               formulas, windows, mismatches, slowest, notes.c_str()));
}

void ac7_infinite_sums() {
    const double target = std::pow((1 + std::sqrt(5.0)) / 2, -2);
    bool ok = true;
    std::string notes;
    for (const char* id : {"golzqcc", "q0o0cvy", "s3-infinite"}) {
        const IdentityRecord* r = find_identity(catalog_list(), id);
        if (!r) {
            ok = false;
            notes += fmt(" missing %s", id);
            continue;
        }
        InfiniteResult res = verify_infinite(*r, kInfiniteTerms, kSweepPrec);
        InfiniteResult fine = verify_infinite(*r, kInfiniteTerms, 320);
        double ratio = decay_ratio(*r, 10, 40);
        bool this_ok = res.pass && fine.residual < fine.tail_bound && std::abs(ratio - target) <= kDecayTolerance;
        ok = ok && this_ok;
        notes += fmt(" %s ratio=%.4f%s", id, ratio, this_ok ? "" : "(fail)");
    }
    report("AC7", ok,
           fmt("infinite sums at %ld terms, residual <= tail bound, decay within %.2f of phi^-2=%.4f:%s",
               kInfiniteTerms, kDecayTolerance, target, notes.c_str()));
}

void ac8_golden_codec() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> num(0, 1'000'000'000'000L);
    std::uniform_int_distribution<long> den(1, 1'000'000);
    std::uniform_int_distribution<int> digits(1, 160);
    int bad = 0, adjacent = 0;
    for (int i = 0; i < kRoundTrips; ++i) {
        const std::size_t n = static_cast<std::size_t>(digits(rng));
        const long prec = golden_precision(n);
        FixedReal x = FixedReal::from_rational(mpq_class(num(rng), den(rng)), prec);
        GoldenDigits g = to_golden_base(x, n);
        if (g.to_string().find("11") != std::string::npos || has_adjacent_ones(g)) ++adjacent;
        QPhi exact = QPhi::rational(x.scaled(), BigInt(1) << static_cast<unsigned long>(x.frac_bits()));
        QPhi gap = exact - from_golden_base(g);
        if (sign(gap) < 0 || compare(gap, phi_pow(-static_cast<long>(n))) >= 0) ++bad;
    }
    report("AC8", bad == 0 && adjacent == 0,
           fmt("golden-base codec: %d round trips, %d outside phi^-n, %d with adjacent 1s", kRoundTrips, bad,
               adjacent));
}

void ac9_core_algebra() {
    int bad = 0;
    BigInt a = 0, b = 1;  // F_n, F_{n+1} by recurrence
    for (long n = 0; n <= 1000; ++n) {
        if (fib(n) != a) ++bad;
        BigInt neg = (n % 2 == 0) ? BigInt(-a) : a;
        if (fib(-n) != neg) ++bad;
        BigInt t = a + b;
        a = b;
        b = t;
    }
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> e(-500, 500), c(-1'000'000'000L, 1'000'000'000L);
    int hom = 0, norm = 0;
    for (int i = 0; i < kRandomCases; ++i) {
        long m = e(rng), n = e(rng);
        if (phi_pow(m) * phi_pow(n) != phi_pow(m + n)) ++hom;
        ZPhi x(c(rng), c(rng)), y(c(rng), c(rng));
        if ((x * y).norm() != x.norm() * y.norm()) ++norm;
    }
    report("AC9", bad == 0 && hom == 0 && norm == 0,
           fmt("core algebra: fast doubling vs recurrence |n|<=1000 (%d mismatches), phi-power homomorphism "
               "(%d/%d failing), norm multiplicativity (%d/%d failing)",
               bad, hom, kRandomCases, norm, kRandomCases));
}

}  // namespace

int main() {
    const std::function<void()> criteria[] = {ac1_identity_sweep,    ac2_exact_arguments, ac3_binary_formulas,
                                              ac4_base5_formulas,    ac5_phi_power_formulas, ac6_digit_extraction,
                                              ac7_infinite_sums,     ac8_golden_codec,    ac9_core_algebra};
    int n = 0;
    for (const auto& c : criteria) {
        ++n;
        try {
            c();
        } catch (const std::exception& e) {
            report(fmt("AC%d", n).c_str(), false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
