#pragma once
// Curves over the rationals: reduction data at each prime, the a_n and b_n
// coefficient engines, the L-series partial-sum evaluator with a certified
// tail bound, the global series B(s) through two independent routes (direct
// Euler product vs. L-series factorization), its residue at s = 2, the
// functional-equation probe, and the census of supersingular primes for CM
// curves.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecgf/common.hpp"
#include "ecgf/numth.hpp"

namespace ecgf::global {

using numth::bigint;

// Required reduction data is absent (p = 2, 3 records must come from the
// curve catalog; they are never computed).
class missing_data_error : public std::runtime_error {
  public:
    explicit missing_data_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

enum class Reduction { good, split, nonsplit, additive };

// Per-prime reduction record.  For good p, a_p is the trace p + 1 - #E(F_p)
// and f_p = 0; multiplicative reduction has a_p = +1 (split) or -1
// (nonsplit) and f_p = 1; additive reduction has a_p = 0 and f_p = 2 for
// p >= 5 (2 + wild part for p = 2, 3, taken from the catalog).
struct PrimeRecord {
    std::uint64_t p = 0;
    Reduction reduction = Reduction::good;
    std::int64_t a_p = 0;
    unsigned f_p = 0;
};

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with its derived invariants.  Construct through make_global_curve.
struct GlobalCurve {
    std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    bigint c4, c6, disc;
    bool cm = false;                       // complex multiplication flag
    std::vector<PrimeRecord> bad_primes;   // ascending p, one per p | disc
    bigint conductor;                      // prod p^{f_p}
    // Catalog-supplied records: mandatory for p in {2,3} when relevant,
    // permitted as forced overrides for any p.
    std::map<std::uint64_t, PrimeRecord> supplied;
};

// Validates the model (disc != 0), factors the discriminant, classifies
// every bad prime (taking p = 2, 3 from the supplied records), checks the
// Hasse bound on supplied good traces, and assembles the conductor.
GlobalCurve make_global_curve(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                              std::int64_t a4, std::int64_t a6, bool cm,
                              const std::vector<PrimeRecord>& supplied);

// Reduction data at p.  Supplied records win; p in {2,3} without one raises
// missing_data_error.  For p >= 5 the model is made minimal at p (dividing
// c4, c6 by p^4, p^6 while possible), then classified: good off the
// discriminant (a_p from the quadratic-character point count of the reduced
// short model), multiplicative when only the discriminant vanishes (split
// iff the node's tangent discriminant 3 x0 is a square mod p), additive
// otherwise.
PrimeRecord reduce_curve(const GlobalCurve& curve, std::uint64_t p);

// Exact coefficients a_1..a_M: a_p from reduction data, prime powers by the
// good recursion a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}} (a_{p^k} = a_p^k
// at bad p), extended multiplicatively.
struct AnTable {
    std::vector<bigint> a;  // a[n] for 1 <= n <= M; a[0] unused
    std::size_t length() const { return a.empty() ? 0 : a.size() - 1; }
};
AnTable an_table(const GlobalCurve& curve, std::size_t M);

// L-series partial sum with tail bound.  certified is true when Re(s) is in
// the region where the coefficient bound |a_n| <= sqrt(n) d(n) makes the
// tail bound finite and trusted (Re(s) >= 1.75); below it the value is the
// bare partial sum and abs_error is infinite.
struct LResult {
    ComplexEval eval;
    bool certified = false;
};
LResult eval_L(const GlobalCurve& curve, std::complex<double> s, std::size_t M);

// Same summation/tail machinery on explicit coefficients (unit-test
// surrogate hook; the tail bound assumes |a_n| <= sqrt(n) d(n)).
LResult eval_dirichlet(const std::vector<bigint>& a, std::complex<double> s);

enum class BPath { euler, factored };

// The global series by two independent routes.
//   euler:    zeta(s-1)/zeta(2s-1) * prod_bad (1-p^{1-s})/(1-p^{1-2s})
//             * prod_{good p <= M} 1/(1 - a_p p^{-s} + p^{1-2s}),
//             requires Re(s) > 2.
//   factored: L(s partial to M) * prod_mult (1 - a_p p^{-s}) * the same
//             bad-prime quotient * zeta(s-1)/zeta(2s-1); defined off the
//             excluded sets {-n+1/2 : n = 2,4,...} u {2} u {Re s = 0}
//             u {1/2 <= Re s < 1} and wherever both zeta arguments lie in
//             the supported half-plane Re > 0 (so effectively Re s > 1).
// Domain violations raise std::domain_error naming the violated set; a
// zeta denominator within 1e-8 of zero refuses with a conditioning error.
ComplexEval eval_B_global(const GlobalCurve& curve, std::complex<double> s,
                          std::size_t M, BPath path);

// Exact b_1..b_M of the rewritten Dirichlet series: the four-fold
// convolution b = a * (sigma d) * (mu * mu) * (id mu), so that
// sum b_n n^{-s} = L(s) zeta(s-1)/zeta(2s-1).
numth::DirichletCoeffs bn_table(const GlobalCurve& curve, std::size_t M);

// Residue of B at s = 2 two ways: the closed form
// L(E,2)/zeta(3) * prod_{p | disc} (1-1/p)(1 - a_p/p^2)/(1-1/p^3), and a
// numeric limit of (s-2) B(s) sampled at s = 2 + 10^{-k}, k = 2..4, with
// Richardson extrapolation.  Disagreement beyond 1e-3 relative raises
// std::logic_error.
struct Residue {
    double formula = 0.0;
    double numeric = 0.0;
};
Residue residue_at_2(const GlobalCurve& curve);

// |B(1-s) - B(s) * (zeta quotient)| per the rewritten functional equation.
// Both sides require zeta evaluations with Re > 1 at arguments that cannot
// simultaneously satisfy it (Re s > 1 and Re(1-s) > 1 are incompatible),
// so every invocation raises std::domain_error naming the failing side;
// the operation exists to document that emptiness faithfully.
double functional_equation_global(const GlobalCurve& curve, std::complex<double> s);

// Census of supersingular good primes (#E(F_p) = 1 mod p, i.e. a_p = 0)
// against half the logarithmic integral.  Requires the CM flag
// (std::domain_error otherwise) and x <= 1e6 (resource_error beyond).
struct DeuringCensus {
    std::uint64_t count = 0;
    double li_half = 0.0;
    double ratio = 0.0;  // count / li_half (0 when the census is empty)
};
DeuringCensus deuring_census(const GlobalCurve& curve, double x);

// int_2^x dt/log t (0 for x <= 2), by adaptive Simpson quadrature.
double log_integral_from_2(double x);

// Curve catalog, line oriented:
//   a1 a2 a3 a4 a6 [cm|ncm] [p:reduction:ap:fp ...]
// '#' starts a comment; blank lines are skipped; the flag defaults to ncm.
std::vector<GlobalCurve> parse_global_catalog(std::istream& in);
std::vector<GlobalCurve> load_global_catalog(const std::string& path);

}  // namespace ecgf::global
