#pragma once
// Weight-2 cusp forms presented by certified Fourier-coefficient prefixes:
// the eta-product instance of level 11, the integrand Phi_f and its
// sinh-kernel transform H_f (adaptive quadrature plus an independent
// incomplete-gamma series route), odd moments with the Taylor contract, the
// exponentially deformed H_{f,lambda}, the completed function
// Lambda(s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(f;s), the falsified transform
// H-hat with its two evaluation paths and imaginary-axis zero scan, and the
// truncated approximate functional equation for L(f;s).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecgf/common.hpp"
#include "ecgf/global.hpp"

namespace ecgf::modform {

// Functional-equation sign of a cusp form; unknown until detected.
enum class FeSign { plus, minus, unknown };

// Weight-2 cusp form given by the prefix a_1..a_M of its Fourier expansion.
// Construct through make_cusp_form, which certifies the normalization
// a_1 != 0 and the Hecke bound |a_n| <= n d(n) for every stored n.  The
// double-precision views are derived caches used by the series evaluators.
struct CuspForm {
    std::uint64_t level = 0;
    static constexpr int weight = 2;
    global::AnTable an;            // exact coefficients, a[n] for 1 <= n <= M
    FeSign sign = FeSign::unknown; // functional-equation sign, if known
    std::vector<double> an_d;      // an_d[n] = double(a_n); index 0 unused
    std::vector<double> nd_bound;  // nd_bound[n] = n * d(n); index 0 unused
};

// Validates level >= 1, a_1 != 0, and |a_n| <= n d(n) for all stored n
// (std::invalid_argument otherwise), then fills the derived caches.
CuspForm make_cusp_form(std::uint64_t level, global::AnTable an,
                        FeSign sign = FeSign::unknown);

// Controls for the integral transform: quadrature truncation point u_max,
// quadrature tolerance, and the cap on series terms per Phi_f evaluation.
// u_max must be >= 3; evaluations additionally require the tail bound
// 2 e^{(2+lambda+|Re z|) u_max} e^{-2 pi e^{u_max}} / (2 pi e^{u_max} - ...)
// to stay below quad_tol for the requested z (config error otherwise).
struct HEvalConfig {
    double u_max = 3.0;
    double quad_tol = 1e-12;
    std::size_t series_terms = 600;
};

// Default configuration: u_max = max(3, log(log(1/quad_tol)/(2 pi) + 3)),
// the value implied by the doubly exponential decay of Phi_f.
HEvalConfig default_heval_config(double quad_tol = 1e-12);

// Coefficients of q prod_{n>=1} (1-q^n)^2 (1-q^{11n})^2 up to a_M, by exact
// integer power-series multiplication (pentagonal-number expansion of the
// eta factors).  1 <= M <= 1e5; larger prefixes are a resource error.
global::AnTable eta11_coeffs(std::size_t M);

// Coefficient ingestion: lines of "n a_n" pairs covering 1..M contiguously
// in ascending order; '#' starts a comment, blank lines are skipped.
// Malformed input raises std::invalid_argument; an unreadable path raises
// resource_error.
global::AnTable parse_an_file(std::istream& in);
global::AnTable load_an_file(const std::string& path);

// Phi_f(u) = 2 e^{2u} sum_n a_n e^{-2 pi n e^u}, truncated at the first n
// whose majorant n d(n) e^{-2 pi n e^u} drops below quad_tol/series_terms
// relative to the leading-term majorant at the same u; the absolute error
// is below quad_tol.  Negative u is admitted for the evenness diagnostic
// (the series needs more terms there; exhausting series_terms or the stored
// prefix raises resource_error).
double phi_big(const CuspForm& f, double u, const HEvalConfig& cfg);

// H_f(z) = int_0^inf Phi_f(u) sinh(zu) du by adaptive Gauss-Kronrod
// quadrature on [0, u_max] split over fixed subintervals (parallel,
// deterministic merge), plus a certified tail bound folded into abs_error.
// An unachievable tail bound for this z is a config error
// (std::invalid_argument).
ComplexEval eval_H(const CuspForm& f, std::complex<double> z,
                   const HEvalConfig& cfg);

// H_{f,lambda}(z) = int_0^inf e^{lambda u} Phi_f(u) sinh(zu) du; the tail
// control carries the extra e^{lambda u_max} factor.  lambda = 0 is exactly
// eval_H.
ComplexEval eval_H_lambda(const CuspForm& f, double lambda,
                          std::complex<double> z, const HEvalConfig& cfg);

// Independent representation of the same transform as an incomplete-gamma
// series: H_f(z) = sum_{n<=M} a_n [ (2 pi n)^{-(2+z)} Gamma(2+z, 2 pi n)
// - (2 pi n)^{-(2-z)} Gamma(2-z, 2 pi n) ], the termwise Mellin split of the
// quadrature route.  The upper incomplete gamma is evaluated by adaptive
// quadrature of t^{s-1} e^{-t} over [x, inf).  abs_error carries the series
// tail below the Hecke majorant; when the stored prefix is too short to
// certify the tail for this z the flag is abs_error = infinity.
ComplexEval eval_H_gamma(const CuspForm& f, std::complex<double> z,
                         std::size_t M);

// Completed function Lambda(s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(f;s) with
// L(f;s) the partial sum of the first M stored coefficients.  The complex
// gamma factor uses a Lanczos shift approximation with reflection for
// Re s < 1/2 (relative error <= 1e-10); s at a gamma pole is a domain
// error.  certified inherits the Dirichlet tail regime (Re s >= 1.75 under
// the square-root coefficient bound, which holds for the shipped newform);
// outside it the value is the bare partial product and abs_error is
// infinite.
global::LResult completed_lambda(const CuspForm& f, std::complex<double> s,
                                 std::size_t M);

// Odd moments b_{2n+1} = int_0^inf Phi_f(u) u^{2n+1} du for n = 0..n_max,
// by the same quadrature engine.  n_max <= 8 (higher moments lose
// precision; std::invalid_argument beyond).  Contract: the Taylor partial
// sum sum_n b_{2n+1} z^{2n+1}/(2n+1)! matches eval_H at |z| = 0.5 within
// 1e-8.
std::vector<double> h_moments(const CuspForm& f, std::size_t n_max,
                              const HEvalConfig& cfg);

// Numeric detection of the sign w with H(z) + w H(-z) = 0, from one probe
// point; returns unknown if neither +1 nor -1 fits.
FeSign detect_sign(const CuspForm& f, const HEvalConfig& cfg);

enum class HhatPath { series, quadrature };

// Falsified transform H-hat(z) = 2 a1 int_0^inf e^{2u} e^{-2 pi e^u}
// sinh(zu) du (Phi_f replaced by its leading asymptotic term), by two
// independent paths:
//   series:     a1 [ (2 pi)^{-(z+2)} Gamma(z+2, 2 pi)
//                    - (2 pi)^{z-2} Gamma(2-z, 2 pi) ], each incomplete
//               gamma assembled as Gamma(s) minus the alternating lower
//               series sum_k (-1)^k (2 pi)^{s+k} / (k! (s+k)); requires
//               z+2 and 2-z off the nonpositive integers (domain error at
//               the gamma poles);
//   quadrature: the defining integral, truncated and tail-bounded as
//               eval_H.
// Both paths agree within their combined abs_error.
ComplexEval falsified_H(std::complex<double> z, double a1, HhatPath path);

// Imaginary-axis zero scan of H-hat: sign-change bisection of
// y -> Im H-hat(iy) (H-hat is purely imaginary there) over grid+1 equally
// spaced samples of [y_lo, y_hi], refined to |Delta y| <= 1e-10.  The scan
// additionally sweeps the off-axis rectangle x_range x (y_lo, y_hi] and
// raises std::logic_error if min |H-hat| <= 1e-6 there (an off-axis zero
// would falsify the pure-imaginary-zeros claim).  grid >= 100
// (std::invalid_argument below, resource_error above 2048).
struct ZeroScan {
    std::vector<double> zeros_y;  // bisection-refined axis zeros, ascending
    double offaxis_min_abs = 0.0; // min |H-hat| over the off-axis grid
};
ZeroScan falsified_zero_scan(double y_lo, double y_hi, double x_lo,
                             double x_hi, std::size_t grid, double a1 = 1.0);

// Truncated approximate functional equation for L(f;s):
//   truncated = sum_{n<=x} a_n n^{-s} - a_{[x]} x^{1-s} / (1-s),
//   reference = the full stored-prefix partial sum,
//   error_ratio = |truncated - reference| / x^{1-Re s}.
// Requires Re s >= 1.75 (certified reference) and |Im s| <= 2 pi x / 4
// (domain errors otherwise); x must lie within the stored prefix.
struct ApproxFE {
    std::complex<double> truncated{0.0, 0.0};
    std::complex<double> reference{0.0, 0.0};
    double error_ratio = 0.0;
};
ApproxFE approx_functional_eq(const CuspForm& f, std::complex<double> s,
                              double x);

}  // namespace ecgf::modform
