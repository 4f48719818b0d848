#pragma once
// Local generating functions attached to a curve over F_p: the trace series
// A(z) = 1/(1 - t z + p z^2), the count series
// B(z) = #E(F_p) z (1 - p z^2) / ((1 - t z + p z^2)(1 - z)(1 - p z)),
// and its Dirichlet-variable form B_s(s) = B(p^{-s}).  Provides rational
// evaluation with conditioning estimates, Cauchy-integral coefficient
// extraction on a circle, the exact odd functional equation
// B_s(s) = -B_s(1 - s), and the zero lattice on the critical line.

#include <complex>
#include <vector>

#include "ecgf/common.hpp"
#include "ecgf/curve_local.hpp"
#include "ecgf/numth.hpp"

namespace ecgf::genfun {

enum class Kind { A, B, B_s };

// A curve together with the choice of series.
struct LocalGenFun {
    curve_local::CurveFp curve;
    Kind kind = Kind::A;
};

// Poles in the z-plane: the conjugate pair on |z| = 1/sqrt(p) (kinds A, B,
// B_s) plus z = 1 and z = 1/p (kinds B, B_s).  For kind B_s these are poles
// of the underlying z-series; the evaluation point s maps to z = p^{-s}.
std::vector<std::complex<double>> pole_locations(const LocalGenFun& fun);

// Evaluate the chosen series.  For kinds A and B the argument is z itself;
// for kind B_s it is s and the function evaluates at z = p^{-s}.  The
// abs_error field carries a conditioning estimate (cancellation in each
// denominator/numerator factor times machine epsilon).  Throws
// std::invalid_argument when z lies within 1e-9 of a pole.
ComplexEval eval_local(const LocalGenFun& fun, std::complex<double> z);

// Default contour radius for coefficient extraction: half the distance from
// the origin to the innermost pole (1/(2 sqrt p) for kind A, 1/(2p) for
// kind B).
double default_rho(const LocalGenFun& fun);

// n-th Taylor coefficient of the series at the origin via the trapezoid
// rule on |z| = rho, computed in 50-digit arithmetic.  Requires
// quad_points >= 16 and 0 < rho < the innermost pole radius of the kind
// (1/sqrt(p) for A, 1/p for B); kind B_s has no Taylor expansion and is
// rejected.  Both series have integer coefficients, so the result is
// snapped to the nearest integer; a residual farther than 1e-6 from an
// integer signals quadrature failure and raises std::logic_error.
// The abs_error field carries the aliasing bound of the trapezoid rule.
ComplexEval coeff_cauchy(const LocalGenFun& fun, unsigned n, double rho,
                         unsigned quad_points);

// Same, with the default radius and 256 quadrature points.
ComplexEval coeff_cauchy(const LocalGenFun& fun, unsigned n);

// The snapped coefficient as an exact integer (the series coefficients can
// exceed 2^53, where a double would silently lose digits).
numth::bigint coeff_cauchy_int(const LocalGenFun& fun, unsigned n, double rho,
                               unsigned quad_points);

// Raw quadrature value before integer snapping; diagnostic used to measure
// convergence under quad_points refinement.
std::complex<double> coeff_cauchy_raw(const LocalGenFun& fun, unsigned n, double rho,
                                      unsigned quad_points);

// |B_s(s) + B_s(1 - s)| evaluated in 50-digit arithmetic.  The identity is
// exact (the z-series satisfies B(1/(p z)) = -B(z)), so the defect must not
// exceed 1e-10 (1 + |B_s(s)|); a larger defect raises std::logic_error.
// Throws std::invalid_argument when either point maps near a pole.
double functional_equation_defect(const curve_local::CurveFp& curve,
                                  std::complex<double> s);

// The zeros s_k = 1/2 + i pi k / log p of B_s for k in [k_lo, k_hi], in
// increasing k order.  A lattice point is excluded when the numerator zero
// is cancelled by a zero of the trace factor 1 - t p^{-s} + p^{1-2s}, which
// requires t^2 = 4p and never happens for integral t and prime p; the exact
// integer check is still performed.  Each returned point is verified to
// satisfy |B_s(s_k)| <= 1e-8 (std::logic_error otherwise).
std::vector<std::complex<double>> local_zeros(const curve_local::CurveFp& curve,
                                              int k_lo, int k_hi);

}  // namespace ecgf::genfun
