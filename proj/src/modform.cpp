#include "ecgf/modform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace ecgf::modform {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack over the leading coefficient in the |Phi_f| majorant: the n >= 2
// terms contribute less than 1e-50 of the n = 1 term once e^u >= e^3.
constexpr double kMajorantSlack = 2.01;
// Relative error budget of the complex gamma factor (Lanczos g=7, n=9
// delivers ~1e-13; the contract promises 1e-10).
constexpr double kGammaRel = 1e-10;
// Largest coefficient prefix any ingestion path materializes.
constexpr std::size_t kMaxCoefficients = 2000000;

const bool kGslQuiet = [] {
    gsl_set_error_handler_off();
    return true;
}();

// d(n) for n <= M by the divisor-pair sieve.
std::vector<std::uint32_t> divisor_count_table(std::size_t M) {
    std::vector<std::uint32_t> d(M + 1, 0);
    for (std::size_t q = 1; q <= M; ++q)
        for (std::size_t m = q; m <= M; m += q) ++d[m];
    return d;
}

void validate_config(const HEvalConfig& cfg) {
    if (!(cfg.u_max >= 3.0) || !std::isfinite(cfg.u_max))
        throw std::invalid_argument("HEvalConfig: u_max must be >= 3");
    if (!(cfg.quad_tol > 0.0) || !std::isfinite(cfg.quad_tol))
        throw std::invalid_argument("HEvalConfig: quad_tol must be positive");
    if (cfg.series_terms < 1)
        throw std::invalid_argument("HEvalConfig: series_terms must be >= 1");
}

double gsl_call(double u, void* p) {
    return (*static_cast<const std::function<double(double)>*>(p))(u);
}

struct SegQuad {
    double value = 0.0;
    double abserr = 0.0;
};

SegQuad qag_segment(const std::function<double(double)>& fn, double a, double b,
                    double epsabs) {
    gsl_function F;
    F.function = &gsl_call;
    F.params = const_cast<void*>(static_cast<const void*>(&fn));
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(512);
    SegQuad out;
    int status = gsl_integration_qag(&F, a, b, epsabs, 1e-13, 512,
                                     GSL_INTEG_GAUSS31, ws, &out.value,
                                     &out.abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::logic_error(std::string("quadrature failure: ") +
                               gsl_strerror(status));
    return out;
}

// Sum of adaptive quadratures of kernel(u) over [0, u_max] split at the
// fixed breakpoints {0, 1/2, 1, 2, u_max}; segments run in parallel and are
// merged in index order.
SegQuad integrate_real_kernel(const std::function<double(double)>& kernel,
                              const HEvalConfig& cfg) {
    std::vector<double> knots{0.0, 0.5, 1.0, 2.0};
    knots.erase(std::remove_if(knots.begin(), knots.end(),
                               [&](double v) { return v >= cfg.u_max; }),
                knots.end());
    knots.push_back(cfg.u_max);
    const std::size_t segs = knots.size() - 1;
    std::vector<SegQuad> parts(segs);
    const double epsabs = cfg.quad_tol / (2.0 * static_cast<double>(segs));
    parallel_for(segs, 0, [&](std::size_t i) {
        parts[i] = qag_segment(kernel, knots[i], knots[i + 1], epsabs);
    });
    SegQuad out;
    for (const SegQuad& p : parts) {
        out.value += p.value;
        out.abserr += p.abserr;
    }
    return out;
}

// Tail bound of int_{u_max}^inf coeff * e^{alpha u} e^{-2 pi e^u} du via the
// linearization e^u >= e^{u_max} (1 + (u - u_max)).  Unachievable bounds are
// the spec'd config error.
double tail_bound_or_throw(double alpha, const HEvalConfig& cfg, double coeff) {
    const double beta = kTwoPi * std::exp(cfg.u_max);
    if (!(beta > alpha + 1.0))
        throw std::invalid_argument(
            "HEvalConfig: tail bound unachievable for this argument at the "
            "configured u_max");
    const double tail =
        coeff * std::exp(alpha * cfg.u_max - beta) / (beta - alpha);
    if (!(tail < cfg.quad_tol))
        throw std::invalid_argument(
            "HEvalConfig: tail bound exceeds quad_tol for this argument; "
            "increase u_max");
    return tail;
}

// Shared sinh-kernel integrator: int_0^{u_max} base(u) e^{lambda u}
// sinh(z u) du with the complex kernel split into real and imaginary
// components, all segment/component tasks parallel with deterministic merge.
ComplexEval integrate_sinh_kernel(const std::function<double(double)>& base,
                                  double lambda, std::complex<double> z,
                                  const HEvalConfig& cfg, double tail) {
    const double zx = z.real();
    const double zy = z.imag();
    std::vector<double> knots{0.0, 0.5, 1.0, 2.0};
    knots.erase(std::remove_if(knots.begin(), knots.end(),
                               [&](double v) { return v >= cfg.u_max; }),
                knots.end());
    knots.push_back(cfg.u_max);
    const std::size_t segs = knots.size() - 1;
    const std::size_t tasks = 2 * segs;
    std::vector<SegQuad> parts(tasks);
    const double epsabs = cfg.quad_tol / (2.0 * static_cast<double>(tasks));
    const std::function<double(double)> re_fn = [&](double u) {
        return base(u) * std::exp(lambda * u) * std::sinh(zx * u) *
               std::cos(zy * u);
    };
    const std::function<double(double)> im_fn = [&](double u) {
        return base(u) * std::exp(lambda * u) * std::cosh(zx * u) *
               std::sin(zy * u);
    };
    parallel_for(tasks, 0, [&](std::size_t t) {
        const std::size_t seg = t / 2;
        const std::function<double(double)>& fn = (t % 2 == 0) ? re_fn : im_fn;
        parts[t] = qag_segment(fn, knots[seg], knots[seg + 1], epsabs);
    });
    ComplexEval out;
    double re = 0.0, im = 0.0, err = 0.0;
    for (std::size_t t = 0; t < tasks; ++t) {
        if (t % 2 == 0)
            re += parts[t].value;
        else
            im += parts[t].value;
        err += parts[t].abserr;
    }
    out.value = {re, im};
    out.abs_error = err + tail;
    return out;
}

// Complex gamma by the Lanczos approximation (g = 7, 9 coefficients),
// reflected onto Re s >= 1/2.  Relative error comfortably below 1e-10.
std::complex<double> lanczos_gamma(std::complex<double> s) {
    static const double kCoeff[9] = {
        0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (s.real() < 0.5) {
        const std::complex<double> sp = std::sin(kPi * s);
        if (std::abs(sp) < 1e-290)
            throw std::domain_error("gamma pole at a nonpositive integer");
        return kPi / (sp * lanczos_gamma(1.0 - s));
    }
    const std::complex<double> w = s - 1.0;
    std::complex<double> x = kCoeff[0];
    for (int i = 1; i < 9; ++i) x += kCoeff[i] / (w + static_cast<double>(i));
    const std::complex<double> t = w + 7.5;
    return std::sqrt(kTwoPi) * std::pow(t, w + 0.5) * std::exp(-t) * x;
}

double qagiu(const std::function<double(double)>& fn, double a) {
    gsl_function F;
    F.function = &gsl_call;
    F.params = const_cast<void*>(static_cast<const void*>(&fn));
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(512);
    double value = 0.0, abserr = 0.0;
    int status = gsl_integration_qagiu(&F, a, 0.0, 1e-13, 512, ws, &value,
                                       &abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::logic_error(std::string("quadrature failure: ") +
                               gsl_strerror(status));
    return value;
}

// Upper incomplete gamma Gamma(s, x) for complex s and x > 0 by adaptive
// quadrature of t^{s-1} e^{-t} = e^{(sigma-1) ln t - t} (cos + i sin)
// (tau ln t) over [x, inf).  Entire in s, so no pole handling is needed.
std::complex<double> igamma_upper(std::complex<double> s, double x) {
    const double sigma = s.real();
    const double tau = s.imag();
    const std::function<double(double)> re_fn = [=](double t) {
        const double lt = std::log(t);
        return std::exp((sigma - 1.0) * lt - t) * std::cos(tau * lt);
    };
    const double re = qagiu(re_fn, x);
    double im = 0.0;
    if (tau != 0.0) {
        const std::function<double(double)> im_fn = [=](double t) {
            const double lt = std::log(t);
            return std::exp((sigma - 1.0) * lt - t) * std::sin(tau * lt);
        };
        im = qagiu(im_fn, x);
    }
    return {re, im};
}

// True when s lies within 1e-9 of a nonpositive integer (a pole of
// Gamma(s)).
bool near_gamma_pole(std::complex<double> s) {
    const double r = std::round(s.real());
    if (r > 0.5) return false;
    return std::abs(s - std::complex<double>(r, 0.0)) < 1e-9;
}

// (2 pi)^{-s} gamma_lower(s, 2 pi) as the alternating series
// sum_k (-1)^k (2 pi)^k / (k! (s+k)); sab accumulates the absolute values
// of the summed terms for the rounding estimate.
std::complex<double> scaled_lower_series(std::complex<double> s, double& sab) {
    std::complex<double> acc{0.0, 0.0};
    double coeff = 1.0;  // (2 pi)^k / k!
    for (int k = 0; k < 256; ++k) {
        const std::complex<double> term =
            ((k % 2 == 0) ? coeff : -coeff) / (s + static_cast<double>(k));
        acc += term;
        sab += std::abs(term);
        if (k > 8 && coeff / std::abs(s + static_cast<double>(k)) < 1e-22)
            return acc;
        coeff *= kTwoPi / static_cast<double>(k + 1);
    }
    throw std::logic_error("falsified series failed to converge");
}

// (2 pi)^{-s} Gamma(s, 2 pi) assembled per the series decomposition
// Gamma(s) - gamma_lower(s, 2 pi).
std::complex<double> falsified_gamma_factor(std::complex<double> s,
                                            double& sab) {
    const std::complex<double> whole =
        std::pow(kTwoPi, -s) * lanczos_gamma(s);
    sab += std::abs(whole);
    return whole - scaled_lower_series(s, sab);
}

std::complex<double> complex_pow(double base, std::complex<double> e) {
    return std::pow(std::complex<double>(base, 0.0), e);
}

}  // namespace

CuspForm make_cusp_form(std::uint64_t level, global::AnTable an, FeSign sign) {
    if (level < 1) throw std::invalid_argument("cusp form level must be >= 1");
    const std::size_t M = an.length();
    if (M < 1)
        throw std::invalid_argument("cusp form needs at least a_1");
    if (M > kMaxCoefficients)
        throw resource_error("coefficient prefix exceeds the 2e6 budget");
    if (an.a[1] == 0)
        throw std::invalid_argument("cusp form must be normalized: a_1 != 0");
    const std::vector<std::uint32_t> d = divisor_count_table(M);
    CuspForm f;
    f.level = level;
    f.sign = sign;
    f.an_d.assign(M + 1, 0.0);
    f.nd_bound.assign(M + 1, 0.0);
    for (std::size_t n = 1; n <= M; ++n) {
        const numth::bigint bound =
            numth::bigint(n) * numth::bigint(d[n]);
        if (abs(an.a[n]) > bound)
            throw std::invalid_argument(
                "coefficient bound |a_n| <= n d(n) violated at n = " +
                std::to_string(n));
        f.an_d[n] = an.a[n].convert_to<double>();
        f.nd_bound[n] = static_cast<double>(n) * static_cast<double>(d[n]);
    }
    f.an = std::move(an);
    return f;
}

HEvalConfig default_heval_config(double quad_tol) {
    HEvalConfig cfg;
    cfg.quad_tol = quad_tol;
    const double l = (quad_tol > 0.0 && quad_tol < 1.0)
                         ? std::log(1.0 / quad_tol)
                         : 0.0;
    cfg.u_max = std::max(3.0, l > 0.0 ? std::log(l / kTwoPi + 3.0) : 3.0);
    validate_config(cfg);
    return cfg;
}

global::AnTable eta11_coeffs(std::size_t M) {
    if (M < 1) throw std::invalid_argument("eta11_coeffs needs M >= 1");
    if (M > 100000)
        throw resource_error("eta11_coeffs prefix capped at 1e5");
    // prod (1-q^n) via the pentagonal-number theorem, coefficients in
    // {-1, 0, +1} on a sparse support.
    std::vector<std::int64_t> pent(M + 1, 0);
    pent[0] = 1;
    for (std::uint64_t k = 1;; ++k) {
        const std::uint64_t g1 = k * (3 * k - 1) / 2;
        const std::uint64_t g2 = k * (3 * k + 1) / 2;
        if (g1 > M && g2 > M) break;
        const std::int64_t s = (k % 2 == 1) ? -1 : 1;
        if (g1 <= M) pent[g1] += s;
        if (g2 <= M) pent[g2] += s;
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i <= M; ++i)
        if (pent[i] != 0) support.push_back(i);
    // prod (1-q^n)^2: convolution square over the sparse support.
    std::vector<std::int64_t> sq(M + 1, 0);
    for (std::size_t i : support) {
        for (std::size_t j : support) {
            if (i + j > M) break;
            sq[i + j] += pent[i] * pent[j];
        }
    }
    // multiply by the same square in q^11; all values stay far inside
    // int64 (|sq| <= #pentagonal terms).
    std::vector<std::int64_t> e(M + 1, 0);
    for (std::size_t j = 0; 11 * j <= M; ++j) {
        if (sq[j] == 0) continue;
        const std::int64_t c = sq[j];
        const std::size_t base = 11 * j;
        const std::int64_t* src = sq.data();
        std::int64_t* dst = e.data() + base;
        const std::size_t len = M + 1 - base;
        for (std::size_t i = 0; i < len; ++i) dst[i] += src[i] * c;
    }
    global::AnTable out;
    out.a.resize(M + 1);
    out.a[0] = 0;
    for (std::size_t n = 1; n <= M; ++n) out.a[n] = e[n - 1];
    return out;
}

global::AnTable parse_an_file(std::istream& in) {
    global::AnTable out;
    out.a.push_back(0);
    std::string line;
    std::size_t lineno = 0;
    std::size_t expect = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::uint64_t n = 0;
        std::string value;
        if (!(ls >> n)) {
            std::string probe;
            std::istringstream rescan(line);
            if (!(rescan >> probe)) continue;  // blank or comment-only line
            throw std::invalid_argument("coefficient file line " +
                                        std::to_string(lineno) +
                                        ": malformed index");
        }
        if (!(ls >> value))
            throw std::invalid_argument("coefficient file line " +
                                        std::to_string(lineno) +
                                        ": missing a_n");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("coefficient file line " +
                                        std::to_string(lineno) +
                                        ": trailing tokens");
        if (n != expect)
            throw std::invalid_argument(
                "coefficient file line " + std::to_string(lineno) +
                ": indices must cover 1..M contiguously (expected " +
                std::to_string(expect) + ")");
        try {
            out.a.emplace_back(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("coefficient file line " +
                                        std::to_string(lineno) +
                                        ": malformed coefficient");
        }
        ++expect;
        if (out.a.size() > kMaxCoefficients + 1)
            throw resource_error("coefficient prefix exceeds the 2e6 budget");
    }
    if (out.length() < 1)
        throw std::invalid_argument("coefficient file holds no coefficients");
    return out;
}

global::AnTable load_an_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw resource_error("cannot open coefficient file: " + path);
    return parse_an_file(in);
}

double phi_big(const CuspForm& f, double u, const HEvalConfig& cfg) {
    validate_config(cfg);
    const double w = kTwoPi * std::exp(u);
    const double lead = std::exp(-w);
    if (lead == 0.0) return 0.0;  // below double underflow: Phi == 0 exactly
    const double thr =
        cfg.quad_tol / static_cast<double>(cfg.series_terms) * lead;
    const std::size_t cap = std::min(cfg.series_terms, f.an.length());
    double acc = 0.0;
    for (std::size_t n = 1; n <= cap; ++n) {
        const double decay = std::exp(-w * static_cast<double>(n));
        if (f.nd_bound[n] * decay < thr)
            return 2.0 * std::exp(2.0 * u) * acc;
        acc += f.an_d[n] * decay;
    }
    throw resource_error(
        "phi series truncation criterion not met within the series budget");
}

ComplexEval eval_H_lambda(const CuspForm& f, double lambda,
                          std::complex<double> z, const HEvalConfig& cfg) {
    validate_config(cfg);
    if (!std::isfinite(lambda) || !std::isfinite(z.real()) ||
        !std::isfinite(z.imag()))
        throw std::invalid_argument("eval_H arguments must be finite");
    const double alpha = 2.0 + lambda + std::abs(z.real());
    const double tail = tail_bound_or_throw(alpha, cfg, kMajorantSlack);
    const std::function<double(double)> base = [&](double u) {
        return phi_big(f, u, cfg);
    };
    return integrate_sinh_kernel(base, lambda, z, cfg, tail);
}

ComplexEval eval_H(const CuspForm& f, std::complex<double> z,
                   const HEvalConfig& cfg) {
    return eval_H_lambda(f, 0.0, z, cfg);
}

ComplexEval eval_H_gamma(const CuspForm& f, std::complex<double> z,
                         std::size_t M) {
    if (M < 1) throw std::invalid_argument("eval_H_gamma needs M >= 1");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("eval_H_gamma argument must be finite");
    const std::size_t Meff = std::min(M, f.an.length());
    std::vector<std::size_t> idx;
    for (std::size_t n = 1; n <= Meff; ++n)
        if (f.an_d[n] != 0.0) idx.push_back(n);
    const std::complex<double> s1 = 2.0 + z;
    const std::complex<double> s2 = 2.0 - z;
    std::vector<std::complex<double>> terms(idx.size());
    std::vector<double> mags(idx.size());
    parallel_for(idx.size(), 0, [&](std::size_t i) {
        const double n = static_cast<double>(idx[i]);
        const double x = kTwoPi * n;
        const std::complex<double> t1 =
            complex_pow(x, -s1) * igamma_upper(s1, x);
        const std::complex<double> t2 =
            complex_pow(x, -s2) * igamma_upper(s2, x);
        terms[i] = f.an_d[idx[i]] * (t1 - t2);
        mags[i] = std::abs(f.an_d[idx[i]]) * (std::abs(t1) + std::abs(t2));
    });
    ComplexEval out;
    double sab = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.value += terms[i];
        sab += mags[i];
    }
    // Series tail under |a_n| <= n d(n) <= n^2 and the incomplete-gamma
    // majorant Gamma(sigma, x) <= 2 x^{sigma-1} e^{-x}, valid once
    // 2 pi n >= 2 (sigma - 1); short prefixes cannot certify it.
    const double sigma_max = 2.0 + std::abs(z.real());
    const double first = static_cast<double>(Meff + 1);
    double tail = kInf;
    if (kTwoPi * first >= 2.0 * (sigma_max - 1.0)) {
        const double q = std::exp(-kTwoPi);
        const double scale = std::exp(-kTwoPi * first);
        tail = (2.0 / kPi) * scale *
               (first / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
    }
    out.abs_error = tail + kGammaRel * sab +
                    64.0 * std::numeric_limits<double>::epsilon() * sab;
    return out;
}

global::LResult completed_lambda(const CuspForm& f, std::complex<double> s,
                                 std::size_t M) {
    if (M < 1 || M > f.an.length())
        throw std::invalid_argument(
            "completed_lambda prefix length must lie within the stored "
            "coefficients");
    if (near_gamma_pole(s))
        throw std::domain_error(
            "completed_lambda: gamma pole at a nonpositive integer");
    std::vector<numth::bigint> prefix(f.an.a.begin(),
                                      f.an.a.begin() +
                                          static_cast<std::ptrdiff_t>(M + 1));
    global::LResult L = global::eval_dirichlet(prefix, s);
    const std::complex<double> factor =
        complex_pow(static_cast<double>(f.level), s / 2.0) *
        complex_pow(kTwoPi, -s) * lanczos_gamma(s);
    global::LResult out;
    out.certified = L.certified;
    out.eval.value = factor * L.eval.value;
    out.eval.abs_error = std::abs(factor) * L.eval.abs_error +
                         std::abs(out.eval.value) * kGammaRel;
    return out;
}

std::vector<double> h_moments(const CuspForm& f, std::size_t n_max,
                              const HEvalConfig& cfg) {
    validate_config(cfg);
    if (n_max > 8)
        throw std::invalid_argument(
            "h_moments supports n_max <= 8 (higher moments lose precision)");
    const double beta = kTwoPi * std::exp(cfg.u_max);
    std::vector<double> out(n_max + 1, 0.0);
    std::vector<double> tails(n_max + 1, 0.0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double k = static_cast<double>(2 * n + 1);
        if (!(beta > 2.0 + k + 1.0))
            throw std::invalid_argument(
                "HEvalConfig: moment tail bound unachievable at the "
                "configured u_max");
        tails[n] = kMajorantSlack * std::pow(cfg.u_max, k) *
                   std::exp(2.0 * cfg.u_max - beta) / (beta - 2.0 - k);
        if (!(tails[n] < cfg.quad_tol))
            throw std::invalid_argument(
                "HEvalConfig: moment tail bound exceeds quad_tol");
    }
    parallel_for(n_max + 1, 0, [&](std::size_t n) {
        const double k = static_cast<double>(2 * n + 1);
        const std::function<double(double)> kernel = [&, k](double u) {
            return phi_big(f, u, cfg) * std::pow(u, k);
        };
        out[n] = integrate_real_kernel(kernel, cfg).value;
    });
    return out;
}

FeSign detect_sign(const CuspForm& f, const HEvalConfig& cfg) {
    const std::complex<double> z0{0.5, 0.5};
    const ComplexEval plus = eval_H(f, z0, cfg);
    const ComplexEval minus = eval_H(f, -z0, cfg);
    if (std::abs(minus.value) < 1e-300) return FeSign::unknown;
    const std::complex<double> w = -plus.value / minus.value;
    if (std::abs(w - 1.0) < 1e-2) return FeSign::plus;
    if (std::abs(w + 1.0) < 1e-2) return FeSign::minus;
    return FeSign::unknown;
}

ComplexEval falsified_H(std::complex<double> z, double a1, HhatPath path) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        !std::isfinite(a1))
        throw std::invalid_argument("falsified_H arguments must be finite");
    const std::complex<double> s1 = z + 2.0;
    const std::complex<double> s2 = 2.0 - z;
    if (path == HhatPath::series) {
        if (near_gamma_pole(s1) || near_gamma_pole(s2))
            throw std::domain_error(
                "falsified_H series path: z+2 and 2-z must avoid the "
                "nonpositive integers (gamma poles)");
        double sab = 0.0;
        const std::complex<double> F1 = falsified_gamma_factor(s1, sab);
        const std::complex<double> F2 = falsified_gamma_factor(s2, sab);
        ComplexEval out;
        out.value = a1 * (F1 - F2);
        out.abs_error = std::abs(a1) * sab * 5e-14;
        return out;
    }
    const HEvalConfig cfg = default_heval_config();
    const double alpha = 2.0 + std::abs(z.real());
    const double tail = tail_bound_or_throw(alpha, cfg, 2.0 * std::abs(a1));
    const std::function<double(double)> base = [=](double u) {
        return 2.0 * a1 * std::exp(2.0 * u - kTwoPi * std::exp(u));
    };
    return integrate_sinh_kernel(base, 0.0, z, cfg, tail);
}

ZeroScan falsified_zero_scan(double y_lo, double y_hi, double x_lo,
                             double x_hi, std::size_t grid, double a1) {
    if (!std::isfinite(y_lo) || !std::isfinite(y_hi) || !std::isfinite(x_lo) ||
        !std::isfinite(x_hi) || !std::isfinite(a1))
        throw std::invalid_argument("falsified_zero_scan ranges must be finite");
    if (!(y_lo < y_hi) || !(x_lo < x_hi))
        throw std::invalid_argument("falsified_zero_scan ranges must be "
                                    "nonempty intervals");
    if (!(x_lo > 0.0))
        throw std::invalid_argument(
            "falsified_zero_scan off-axis range must satisfy x_lo > 0");
    if (grid < 100)
        throw std::invalid_argument("falsified_zero_scan needs grid >= 100");
    if (grid > 2048)
        throw resource_error("falsified_zero_scan grid capped at 2048");
    // Series path for speed; at the decomposition's removable poles
    // (z near the integers of modulus >= 2, where H-hat itself is fine)
    // fall back to the defining integral.
    const auto hhat_at = [&](std::complex<double> z) {
        if (near_gamma_pole(z + 2.0) || near_gamma_pole(2.0 - z))
            return falsified_H(z, a1, HhatPath::quadrature).value;
        return falsified_H(z, a1, HhatPath::series).value;
    };
    const auto axis_im = [&](double y) {
        return hhat_at({0.0, y}).imag();
    };
    const std::size_t G = grid;
    std::vector<double> ys(G + 1), gs(G + 1);
    for (std::size_t j = 0; j <= G; ++j)
        ys[j] = y_lo + (y_hi - y_lo) * static_cast<double>(j) /
                           static_cast<double>(G);
    parallel_for(G + 1, 0, [&](std::size_t j) {
        // The origin is the trivial odd zero; exclude it from the scan.
        gs[j] = (ys[j] == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                               : axis_im(ys[j]);
    });
    ZeroScan out;
    for (std::size_t j = 0; j < G; ++j) {
        const double ga = gs[j], gb = gs[j + 1];
        if (std::isnan(ga) || std::isnan(gb)) continue;
        if (ga == 0.0) {
            out.zeros_y.push_back(ys[j]);
            continue;
        }
        if (!(ga * gb < 0.0)) continue;
        double lo = ys[j], hi = ys[j + 1], glo = ga;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            const double gm = axis_im(mid);
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((gm > 0.0) == (glo > 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        out.zeros_y.push_back(0.5 * (lo + hi));
    }
    if (!std::isnan(gs[G]) && gs[G] == 0.0) out.zeros_y.push_back(ys[G]);
    // Off-axis sweep: the pure-imaginary-zeros claim requires |H-hat| to
    // stay well away from zero once x != 0.
    std::vector<double> row_min(G, kInf);
    parallel_for(G, 0, [&](std::size_t i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                    static_cast<double>(G - 1);
        double m = kInf;
        for (std::size_t j = 0; j < G; ++j) {
            const double y = y_lo + (y_hi - y_lo) *
                                        static_cast<double>(j + 1) /
                                        static_cast<double>(G);
            m = std::min(m, std::abs(hhat_at({x, y})));
        }
        row_min[i] = m;
    });
    out.offaxis_min_abs = kInf;
    for (double m : row_min) out.offaxis_min_abs = std::min(out.offaxis_min_abs, m);
    if (!(out.offaxis_min_abs > 1e-6))
        throw std::logic_error(
            "falsified_zero_scan: off-axis |H-hat| minimum " +
            std::to_string(out.offaxis_min_abs) +
            " <= 1e-6 contradicts the pure-imaginary-zeros claim");
    return out;
}

ApproxFE approx_functional_eq(const CuspForm& f, std::complex<double> s,
                              double x) {
    const double sigma = s.real();
    if (!(sigma >= 1.75))
        throw std::domain_error(
            "approx_functional_eq needs Re s >= 1.75 for a certified "
            "reference");
    if (!(std::abs(s.imag()) <= kTwoPi * x / 4.0))
        throw std::domain_error(
            "approx_functional_eq needs |Im s| <= 2 pi x / 4");
    if (!std::isfinite(x) || std::floor(x) < 1.0 ||
        std::floor(x) > static_cast<double>(f.an.length()))
        throw std::invalid_argument(
            "approx_functional_eq cutoff x must lie within the stored "
            "coefficient prefix");
    const std::size_t fx = static_cast<std::size_t>(std::floor(x));
    ApproxFE out;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 1; n <= fx; ++n) {
        if (f.an_d[n] == 0.0) continue;
        sum += f.an_d[n] *
               std::exp(-s * std::log(static_cast<double>(n)));
    }
    const std::complex<double> one{1.0, 0.0};
    out.truncated = sum - f.an_d[fx] * complex_pow(x, one - s) / (one - s);
    out.reference = global::eval_dirichlet(f.an.a, s).eval.value;
    out.error_ratio = std::abs(out.truncated - out.reference) /
                      std::pow(x, 1.0 - sigma);
    return out;
}

}  // namespace ecgf::modform
