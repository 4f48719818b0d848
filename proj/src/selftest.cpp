#include "ecgf/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "ecgf/common.hpp"
#include "ecgf/curve_local.hpp"
#include "ecgf/genfun.hpp"
#include "ecgf/global.hpp"
#include "ecgf/modform.hpp"
#include "ecgf/numth.hpp"
#include "inventory.hpp"

namespace ecgf::selftest {
namespace {

using curve_local::CurveFp;
using numth::bigint;
using cplx = std::complex<double>;

enum class Status { pass, expected_fail, fail };

struct Result {
    Status status = Status::fail;
    std::string detail;
};

std::string fstr(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

// ---- 1: exhaustive agreement of the trace-recursion count with the
// character-sum oracle over every nonsingular curve and every extension
// within the enumeration budget. ----
Result c_exhaustive_counts() {
    const std::uint64_t budget = 10000;
    std::size_t curves = 0, checks = 0, mismatches = 0;
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        std::vector<curve_local::ExtField> fields;
        for (std::uint64_t q = p; q <= budget; q *= p)
            fields.push_back(curve_local::make_ext_field(
                p, static_cast<unsigned>(fields.size() + 1)));
        const auto ip = static_cast<std::int64_t>(p);
        for (std::int64_t A = 0; A < ip; ++A)
            for (std::int64_t B = 0; B < ip; ++B) {
                if (((4 * A * A * A + 27 * B * B) % ip) == 0) continue;
                const CurveFp e = curve_local::make_curve(p, A, B);
                ++curves;
                for (const auto& f : fields) {
                    ++checks;
                    if (curve_local::count_points_weil(e, f.n) !=
                        curve_local::count_points_oracle(e, f))
                        ++mismatches;
                }
            }
    }
    return {mismatches == 0 ? Status::pass : Status::fail,
            fstr("recursion vs oracle on %zu checks over %zu curves, "
                 "%zu mismatches",
                 checks, curves, mismatches)};
}

// ---- 2: supersingular congruence classes match the closed form
// 1, 1 + 2 p^k (n = 2k, k odd), 1 - 2 p^k (n = 2k, k even) exactly. ----
Result c_supersingular_residues() {
    std::size_t checks = 0, bad = 0, forms = 0;
    for (const auto& s : testdata::kSupersingular) {
        const CurveFp e = curve_local::make_curve(s.p, s.A, s.B);
        if (!curve_local::is_supersingular(e)) {
            ++bad;
            continue;
        }
        ++forms;
        bigint pn = 1;
        for (unsigned n = 1; n <= 12; ++n) {
            pn *= e.p;
            bigint expect = 1;
            if (n % 2 == 0) {
                const unsigned k = n / 2;
                bigint pk = 1;
                for (unsigned i = 0; i < k; ++i) pk *= e.p;
                expect = (k % 2 == 1) ? bigint(1 + 2 * pk)
                                      : bigint((1 - 2 * pk) % pn + pn) % pn;
            }
            ++checks;
            if (curve_local::congruence_class(e, n) != expect % pn) ++bad;
        }
    }
    return {bad == 0 ? Status::pass : Status::fail,
            fstr("%zu curves, %zu residues against the closed form, "
                 "%zu mismatches",
                 forms, checks, bad)};
}

// ---- 3: no ordinary curve ever has residue 1. ----
Result c_ordinary_residues() {
    std::size_t curves = 0, checks = 0, violations = 0;
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull}) {
        const auto ip = static_cast<std::int64_t>(p);
        for (std::int64_t A = 0; A < ip; ++A)
            for (std::int64_t B = 0; B < ip; ++B) {
                if (((4 * A * A * A + 27 * B * B) % ip) == 0) continue;
                const CurveFp e = curve_local::make_curve(p, A, B);
                if (e.t == 0) continue;  // supersingular
                ++curves;
                for (unsigned n = 1; n <= 12; ++n) {
                    ++checks;
                    if (curve_local::congruence_class(e, n) == 1) ++violations;
                }
            }
    }
    return {violations == 0 ? Status::pass : Status::fail,
            fstr("%zu ordinary curves, %zu residues, %zu equal to 1",
                 curves, checks, violations)};
}

// ---- 4: growth-ratio bounds.  The angle-route bound must hold without
// exception; the contour-route constant is only valid for eps >= 1/2 and
// fails routinely below, so that clause is reported as an expected
// failure rather than asserted. ----
Result c_ratio_bounds() {
    std::size_t cases = 0, ratio_bad = 0, angle_bad = 0, contour_bad = 0;
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull}) {
        // One representative curve per achievable trace value.
        std::map<std::int64_t, CurveFp> reps;
        const auto ip = static_cast<std::int64_t>(p);
        for (std::int64_t A = 0; A < ip; ++A)
            for (std::int64_t B = 0; B < ip; ++B) {
                if (((4 * A * A * A + 27 * B * B) % ip) == 0) continue;
                const CurveFp e = curve_local::make_curve(p, A, B);
                reps.emplace(e.t, e);
            }
        for (const auto& [t, e] : reps) {
            (void)t;
            for (unsigned n = 1; n <= 20; ++n)
                for (double eps : {0.1, 0.25, 0.4}) {
                    const curve_local::RatioBounds rb =
                        curve_local::ratio_bounds(e, n, eps);
                    ++cases;
                    if (!rb.ratio_ge_one) ++ratio_bad;
                    if (!rb.angle_ok) ++angle_bad;
                    if (!rb.contour_ok) ++contour_bad;
                }
        }
    }
    if (ratio_bad > 0 || angle_bad > 0)
        return {Status::fail,
                fstr("angle route %zu/%zu violations, %zu ratios below 1",
                     angle_bad, cases, ratio_bad)};
    if (contour_bad > 0)
        return {Status::expected_fail,
                fstr("angle route 0/%zu violations; contour route %zu/%zu "
                     "violations (its constant is only valid for "
                     "eps >= 1/2)",
                     cases, contour_bad, cases)};
    return {Status::pass, fstr("all %zu bound evaluations hold", cases)};
}

// ---- 5: the averaged counts sum_{n<=x} #E(F_{p^n}) p^{-n} stay within
// 1% of x at x = 100 for every catalog curve. ----
Result c_tauberian(const Options& opt) {
    const auto cat = curve_local::load_curve_catalog(opt.local_catalog);
    std::size_t bad = 0;
    double worst = 1.0;
    for (const CurveFp& e : cat) {
        const double r = curve_local::tauberian_sum(e, 100.0) / 100.0;
        if (std::abs(r - 1.0) > std::abs(worst - 1.0)) worst = r;
        if (r < 0.99 || r > 1.01) ++bad;
    }
    return {bad == 0 ? Status::pass : Status::fail,
            fstr("%zu curves at x = 100, %zu outside [0.99, 1.01], "
                 "worst normalized sum %.6f",
                 cat.size(), bad, worst)};
}

// ---- 6: the local functional equation holds to 1e-10 relative at 1000
// random points per catalog curve, and the contour coefficients of both
// series are integer-exact against the recursion up to n = 30. ----
Result c_local_feq_and_coeffs(const Options& opt) {
    const auto cat = curve_local::load_curve_catalog(opt.local_catalog);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> re_d(-3.0, 3.0);
    std::uniform_real_distribution<double> im_d(-10.0, 10.0);
    std::size_t fe_checks = 0, fe_bad = 0;
    for (const CurveFp& e : cat) {
        const auto poles = genfun::pole_locations({e, genfun::Kind::B});
        const double lp = std::log(static_cast<double>(e.p));
        std::size_t kept = 0;
        while (kept < 1000) {
            const cplx s(re_d(rng), im_d(rng));
            bool clear = true;
            for (const cplx& sv : {s, cplx(1.0, 0.0) - s}) {
                const cplx z = std::exp(-sv * lp);
                for (const cplx& pole : poles)
                    if (std::abs(z - pole) < 1e-3) clear = false;
            }
            if (!clear) continue;
            ++kept;
            ++fe_checks;
            try {
                // Throws std::logic_error beyond 1e-10 * (1 + |B_s(s)|).
                (void)genfun::functional_equation_defect(e, s);
            } catch (const std::logic_error&) {
                ++fe_bad;
            }
        }
    }
    std::size_t co_checks = 0, co_bad = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, cat.size()); ++i) {
        const CurveFp& e = cat[i];
        // Taylor coefficients of the trace-kind series 1/(1 - t z + p z^2):
        // u_0 = 1, u_1 = t, then the trace two-term recursion.
        std::vector<bigint> u(31);
        u[0] = 1;
        u[1] = e.t;
        for (unsigned n = 2; n <= 30; ++n)
            u[n] = e.t * u[n - 1] - bigint(e.p) * u[n - 2];
        const genfun::LocalGenFun fa{e, genfun::Kind::A};
        const genfun::LocalGenFun fb{e, genfun::Kind::B};
        for (unsigned n = 1; n <= 30; ++n) {
            co_checks += 2;
            if (genfun::coeff_cauchy_int(fa, n, genfun::default_rho(fa),
                                         256) != u[n])
                ++co_bad;
            if (genfun::coeff_cauchy_int(fb, n, genfun::default_rho(fb),
                                         256) != curve_local::count_points_weil(e, n))
                ++co_bad;
        }
    }
    const bool ok = fe_bad == 0 && co_bad == 0;
    return {ok ? Status::pass : Status::fail,
            fstr("defect bound %zu/%zu violated; coefficient extraction "
                 "%zu/%zu mismatched",
                 fe_bad, fe_checks, co_bad, co_checks)};
}

// ---- 7: the nested-convolution coefficients b_n match a brute-force
// four-fold divisor sum up to n = 500, and the classical three-fold
// convolution identity for sigma(n) d(n) holds on the same range. ----
Result c_convolution_identities(const std::vector<global::GlobalCurve>& gcat) {
    const global::GlobalCurve& e = gcat.front();
    const std::size_t M = 500;
    const numth::DirichletCoeffs b = global::bn_table(e, M);
    const global::AnTable a = global::an_table(e, M);
    auto mu = [](std::size_t n) { return numth::arithmetic_functions(n).mu; };
    auto mumu = [&](std::size_t n) {
        std::int64_t s = 0;
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0) s += static_cast<std::int64_t>(mu(d)) * mu(n / d);
        return s;
    };
    std::size_t bn_bad = 0;
    for (std::size_t n = 1; n <= M; ++n) {
        bigint sum = 0;
        for (std::size_t d1 = 1; d1 <= n; ++d1) {
            if (n % d1 != 0) continue;
            const std::size_t n1 = n / d1;
            for (std::size_t d2 = 1; d2 <= n1; ++d2) {
                if (n1 % d2 != 0) continue;
                const numth::ArithmeticValues v2 =
                    numth::arithmetic_functions(d2);
                const std::size_t n2 = n1 / d2;
                for (std::size_t d3 = 1; d3 <= n2; ++d3) {
                    if (n2 % d3 != 0) continue;
                    const std::size_t d4 = n2 / d3;
                    sum += a.a[d1] * (bigint(v2.sigma) * v2.d) * mumu(d3) *
                           (bigint(d4) * mu(d4));
                }
            }
        }
        if (sum != b.c[n]) ++bn_bad;
    }

    numth::DirichletCoeffs dv = numth::DirichletCoeffs::zeros(M);
    numth::DirichletCoeffs idd = numth::DirichletCoeffs::zeros(M);
    numth::DirichletCoeffs sqmu = numth::DirichletCoeffs::zeros(M);
    for (std::size_t n = 1; n <= M; ++n) {
        const numth::ArithmeticValues v = numth::arithmetic_functions(n);
        dv.c[n] = v.d;
        idd.c[n] = bigint(n) * v.d;
    }
    for (std::size_t m = 1; m * m <= M; ++m)
        sqmu.c[m * m] = bigint(m) * numth::arithmetic_functions(m).mu;
    const numth::DirichletCoeffs lhs =
        numth::dirichlet_convolve(numth::dirichlet_convolve(dv, idd), sqmu);
    std::size_t sd_bad = 0;
    for (std::size_t n = 1; n <= M; ++n) {
        const numth::ArithmeticValues v = numth::arithmetic_functions(n);
        if (lhs.c[n] != bigint(v.sigma) * v.d) ++sd_bad;
    }
    const bool ok = bn_bad == 0 && sd_bad == 0;
    return {ok ? Status::pass : Status::fail,
            fstr("four-fold divisor sum %zu/%zu mismatches; "
                 "sigma*d identity %zu/%zu mismatches",
                 bn_bad, M, sd_bad, M)};
}

// ---- 8: the two independent routes to the global series agree to 1e-6
// relative on a 3x3 grid, the residue at s = 2 matches its closed form to
// 1e-3 relative, and |B| decreases monotonically approaching the pole at
// s = 1 from the right. ----
Result c_global_two_routes(const std::vector<global::GlobalCurve>& gcat) {
    const global::GlobalCurve& e = gcat.front();
    std::size_t grid_bad = 0;
    double worst_rel = 0.0;
    for (double re : {2.2, 2.5, 3.0})
        for (double im : {0.0, 1.0, 5.0}) {
            const cplx s(re, im);
            const cplx eu =
                global::eval_B_global(e, s, 1000000, global::BPath::euler)
                    .value;
            const cplx fa =
                global::eval_B_global(e, s, 100000, global::BPath::factored)
                    .value;
            const double rel = std::abs(eu - fa) / std::abs(eu);
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-6) ++grid_bad;
        }

    bool residue_ok = true;
    double residue_rel = 0.0;
    try {
        const global::Residue r = global::residue_at_2(e);
        residue_rel = std::abs(r.formula - r.numeric) / std::abs(r.formula);
        residue_ok = residue_rel <= 1e-3;
    } catch (const std::logic_error&) {
        residue_ok = false;
        residue_rel = std::nan("");
    }

    double mag[3];
    int i = 0;
    for (double h : {1e-1, 1e-2, 1e-3})
        mag[i++] = std::abs(global::eval_B_global(e, {1.0 + h, 0.0}, 100000,
                                                  global::BPath::factored)
                                .value);
    const bool mono_ok = mag[1] < mag[0] && mag[2] < mag[1];

    const bool ok = grid_bad == 0 && residue_ok && mono_ok;
    return {ok ? Status::pass : Status::fail,
            fstr("route gap worst %.3g rel (%zu/9 over 1e-6); residue gap "
                 "%.3g rel; pole approach %s",
                 worst_rel, grid_bad, residue_rel,
                 mono_ok ? "monotone" : "NOT monotone")};
}

// ---- 9: the census of trace-zero primes of the CM curve tracks half the
// logarithmic integral within 10% at x = 1e5, and the congruence
// criterion p = 3 (mod 4) predicts exactly the trace-zero good primes up
// to 1000. ----
Result c_cm_census(const std::vector<global::GlobalCurve>& gcat) {
    const global::GlobalCurve* cm = nullptr;
    for (const auto& c : gcat)
        if (c.cm) cm = &c;
    if (cm == nullptr)
        return {Status::fail, "no CM curve in the global catalog"};

    const global::DeuringCensus d = global::deuring_census(*cm, 1e5);
    const bool ratio_ok = std::abs(d.ratio - 1.0) <= 0.1;

    const numth::PrimeTable pt = numth::sieve_primes(1000);
    std::size_t checked = 0, wrong = 0;
    for (std::uint64_t p : pt.primes) {
        if (p < 3 || (*cm).disc % p == 0) continue;
        const global::PrimeRecord rec = global::reduce_curve(*cm, p);
        ++checked;
        if ((rec.a_p == 0) != (p % 4 == 3)) ++wrong;
    }
    const bool ok = ratio_ok && wrong == 0;
    return {ok ? Status::pass : Status::fail,
            fstr("census %llu primes vs li/2 = %.2f (ratio %.4f); "
                 "congruence criterion %zu/%zu wrong",
                 static_cast<unsigned long long>(d.count), d.li_half, d.ratio,
                 wrong, checked)};
}

// ---- 10: the modular transform suite.  Every analytic clause is
// asserted; the imaginary-axis zero count is reported as an expected
// failure because the transform is strictly positive there (the scan
// honestly finds nothing), while the off-axis floor passes. ----
Result c_modform_suite(const Options& opt) {
    const modform::CuspForm f =
        modform::make_cusp_form(11, modform::eta11_coeffs(100000));
    const modform::HEvalConfig cfg;
    std::vector<std::string> bad;

    // Two representations of the transform agree within their combined
    // certified errors.
    for (double x : {0.8, 1.0, 1.2}) {
        const ComplexEval q = modform::eval_H(f, {x, 0.0}, cfg);
        const ComplexEval g = modform::eval_H_gamma(f, {x, 0.0}, 25);
        if (std::abs(q.value - g.value) > q.abs_error + g.abs_error)
            bad.push_back(fstr("two-route gap at z = %.1f", x));
    }

    // Taylor expansion from the moments reproduces the transform.
    const std::vector<double> m = modform::h_moments(f, 8, cfg);
    auto taylor = [&](cplx z) {
        cplx acc{0.0, 0.0};
        double fact = 1.0;
        cplx zp = z;
        for (std::size_t n = 0; n < m.size(); ++n) {
            if (n > 0) {
                const double k = static_cast<double>(2 * n);
                fact *= k * (k + 1.0);
                zp *= z * z;
            }
            acc += m[n] * zp / fact;
        }
        return acc;
    };
    const cplx zc = 0.5 * cplx{std::cos(0.7), std::sin(0.7)};
    for (const cplx& z : {cplx{0.5, 0.0}, zc})
        if (std::abs(taylor(z) - modform::eval_H(f, z, cfg).value) > 1e-8)
            bad.push_back("moment Taylor gap above 1e-8");

    // The damped family solves the wave equation.
    auto wave_residual = [&](double lam, cplx z, double h) {
        auto H = [&](double l, cplx w) {
            return modform::eval_H_lambda(f, l, w, cfg).value;
        };
        const cplx center = H(lam, z);
        const cplx d2l = H(lam + h, z) - 2.0 * center + H(lam - h, z);
        const cplx d2z = H(lam, z + h) - 2.0 * center + H(lam, z - h);
        return std::abs(d2l - d2z) / (h * h);
    };
    if (wave_residual(0.1, {0.3, 0.2}, 1e-3) > 1e-4)
        bad.push_back("wave residual above 1e-4 at the pinned point");
    {
        std::mt19937_64 rng(opt.seed + 1);
        std::uniform_real_distribution<double> lam_d(-0.5, 0.5);
        std::uniform_real_distribution<double> box(-1.0, 1.0);
        int tested = 0;
        while (tested < 10) {
            const cplx z{box(rng), box(rng)};
            if (std::abs(z) > 1.0) continue;
            const double lam = lam_d(rng);
            ++tested;
            if (wave_residual(lam, z, 1e-3) > 1e-4)
                bad.push_back("wave residual above 1e-4 at a random point");
        }
    }

    // Series and quadrature routes of the falsified transform agree.
    {
        std::mt19937_64 rng(opt.seed + 2);
        std::uniform_real_distribution<double> box(-3.0, 3.0);
        int tested = 0;
        while (tested < 20) {
            const cplx z{box(rng), box(rng)};
            if (std::abs(z) > 3.0) continue;
            bool near_pole = false;
            for (int k = 2; k <= 5; ++k)
                if (std::abs(z - cplx(double(k), 0.0)) < 0.05 ||
                    std::abs(z + cplx(double(k), 0.0)) < 0.05)
                    near_pole = true;
            if (near_pole) continue;
            ++tested;
            const cplx s =
                modform::falsified_H(z, 1.0, modform::HhatPath::series).value;
            const cplx q =
                modform::falsified_H(z, 1.0, modform::HhatPath::quadrature)
                    .value;
            if (std::abs(s - q) > 1e-8)
                bad.push_back("falsified route gap above 1e-8");
        }
    }

    // Zero scan of the falsified transform on the imaginary axis.
    const modform::ZeroScan scan =
        modform::falsified_zero_scan(0.0, 40.0, 0.1, 3.0, 120);
    std::size_t residual_bad = 0;
    for (double y : scan.zeros_y) {
        const double r = std::abs(
            modform::falsified_H({0.0, y}, 1.0, modform::HhatPath::series)
                .value);
        if (r > 1e-10) ++residual_bad;
    }
    if (residual_bad > 0) bad.push_back("zero residual above 1e-10");
    if (scan.offaxis_min_abs <= 1e-6)
        bad.push_back("off-axis floor at or below 1e-6");
    const bool zeros_found = scan.zeros_y.size() >= 3;

    // Truncated Dirichlet sum against the certified evaluation.
    {
        const double sigma = 3.0;
        const struct {
            cplx s;
            double x;
        } grid[] = {{{3.0, 0.0}, 50.0},
                    {{3.0, 0.0}, 100.0},
                    {{3.0, 0.0}, 200.0},
                    {{2.5, 5.0}, 100.0}};
        for (const auto& g : grid) {
            const modform::ApproxFE r = modform::approx_functional_eq(f, g.s, g.x);
            if (r.error_ratio > 10.0)
                bad.push_back(fstr("truncation ratio %.3g above 10 at x = %g",
                                   r.error_ratio, g.x));
        }
        const modform::ApproxFE r100 =
            modform::approx_functional_eq(f, {sigma, 0.0}, 100.0);
        const modform::ApproxFE r200 =
            modform::approx_functional_eq(f, {sigma, 0.0}, 200.0);
        const double e100 = std::abs(r100.truncated - r100.reference);
        const double e200 = std::abs(r200.truncated - r200.reference);
        if (e200 > std::pow(2.0, 1.0 - sigma) * 10.0 * e100)
            bad.push_back("doubling x did not shrink the truncation error "
                          "at the expected rate");
    }

    if (!bad.empty())
        return {Status::fail, fstr("%zu clause(s) failed, first: %s",
                                   bad.size(), bad.front().c_str())};
    if (!zeros_found)
        return {Status::expected_fail,
                fstr("all analytic clauses hold, off-axis floor %.3g > 1e-6; "
                     "axis scan found %zu zeros, not the 3 required (the "
                     "transform is strictly positive on the axis)",
                     scan.offaxis_min_abs, scan.zeros_y.size())};
    return {Status::pass,
            fstr("all clauses hold with %zu axis zeros", scan.zeros_y.size())};
}

}  // namespace

int run_acceptance(const Options& opt, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    const auto suite_start = clock::now();
    int unexpected = 0, expected = 0, passed = 0;

    const auto record = [&](int idx, const char* name, const Result& r,
                            double secs) {
        const char* tag = r.status == Status::pass          ? "PASS"
                          : r.status == Status::expected_fail ? "EXPECTED-FAIL"
                                                              : "FAIL";
        if (r.status == Status::pass) ++passed;
        if (r.status == Status::expected_fail) ++expected;
        if (r.status == Status::fail) ++unexpected;
        out << fstr("[%2d] %-13s %s: %s (%.1f s)\n", idx, tag, name,
                    r.detail.c_str(), secs);
        out.flush();
    };

    const auto timed = [&](int idx, const char* name, auto&& fn,
                           double budget_s = 0.0) {
        const auto t0 = clock::now();
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {Status::fail, fstr("unexpected exception: %s", e.what())};
        }
        const double secs =
            std::chrono::duration<double>(clock::now() - t0).count();
        if (budget_s > 0.0 && r.status == Status::pass && secs > budget_s)
            r = {Status::fail,
                 r.detail + fstr(" -- but took %.1f s, over the %.0f s "
                                 "budget",
                                 secs, budget_s)};
        record(idx, name, r, secs);
    };

    std::vector<global::GlobalCurve> gcat;
    try {
        gcat = global::load_global_catalog(opt.global_catalog);
    } catch (const std::exception& e) {
        out << "cannot load the global catalog: " << e.what() << "\n";
        return 1;
    }

    timed(1, "exhaustive point counts", [] { return c_exhaustive_counts(); },
          120.0);
    timed(2, "supersingular residues", [] { return c_supersingular_residues(); });
    timed(3, "ordinary residues stay nontrivial",
          [] { return c_ordinary_residues(); });
    timed(4, "growth-ratio bounds", [] { return c_ratio_bounds(); });
    timed(5, "averaged counts near x", [&] { return c_tauberian(opt); });
    timed(6, "local functional equation and integer coefficients",
          [&] { return c_local_feq_and_coeffs(opt); });
    timed(7, "convolution identities",
          [&] { return c_convolution_identities(gcat); });
    timed(8, "global series two routes",
          [&] { return c_global_two_routes(gcat); });
    timed(9, "CM census and congruence criterion",
          [&] { return c_cm_census(gcat); }, 60.0);
    timed(10, "modular transform suite", [&] { return c_modform_suite(opt); });

    const double total =
        std::chrono::duration<double>(clock::now() - suite_start).count();
    {
        Result r{total <= 600.0 ? Status::pass : Status::fail,
                 fstr("completed in %.1f s of the 600 s budget", total)};
        record(11, "total runtime", r, 0.0);
    }

    out << fstr("acceptance: %d passed, %d expected failure(s), "
                "%d unexpected failure(s)\n",
                passed, expected, unexpected);
    out.flush();
    return unexpected;
}

}  // namespace ecgf::selftest
