#pragma once
// Integer and arithmetic-function substrate shared by every other module:
// prime sieve with pi(x) queries, Legendre symbol, the multiplicative
// functions mu/sigma/d, exact Dirichlet convolution on coefficient prefixes,
// Abel partial summation, big-integer probable-prime testing, and a
// certified Euler-Maclaurin evaluator for the Riemann zeta function on the
// half-plane Re(s) > 0.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ecgf/common.hpp"

namespace ecgf::numth {

using bigint = boost::multiprecision::cpp_int;

// All primes <= limit, ascending and complete.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    // pi(x) = #{p prime : p <= x} for x <= limit, by binary search.
    std::uint64_t pi(std::uint64_t x) const;
};

// Sieve of Eratosthenes. limit < 2 is a domain error.
PrimeTable sieve_primes(std::uint64_t limit);

// Legendre symbol (a|p) in {-1, 0, +1} via Euler's criterion
// a^((p-1)/2) mod p. p must be an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

// Deterministic primality test for 64-bit integers (Miller-Rabin with a
// fixed witness set that is exact for the full 64-bit range).
bool is_prime(std::uint64_t n);

struct ArithmeticValues {
    int mu;              // Moebius function
    std::uint64_t sigma; // sum of divisors
    std::uint64_t d;     // number of divisors
};

// (mu(n), sigma(n), d(n)) from the factorization of n. n = 0 is a domain error.
ArithmeticValues arithmetic_functions(std::uint64_t n);

// Exact integer coefficient prefix c_1..c_M of a Dirichlet series.
// c[0] is unused padding so that c[n] is the coefficient of n^{-s}.
struct DirichletCoeffs {
    std::vector<bigint> c;
    std::size_t length() const { return c.empty() ? 0 : c.size() - 1; }
    static DirichletCoeffs zeros(std::size_t M);
};

// (f*g)(n) = sum_{d|n} f(d) g(n/d) for n <= M, exactly. Both inputs must
// share the same truncation length M.
DirichletCoeffs dirichlet_convolve(const DirichletCoeffs& f, const DirichletCoeffs& g);

struct AbelSum {
    double lhs; // direct sum  sum_{b_n <= x} a_n f(b_n)
    double rhs; // partial summation  f(x) A(x) - int_{b_1}^x A(t) f'(t) dt
};

// Abel partial summation with A(t) = sum_{b_n <= t} a_n. The integral is
// evaluated with adaptive Simpson quadrature (tolerance 1e-10) on each
// inter-knot segment, where A(t) is constant. Knots must be strictly
// increasing. x < b_1 yields the empty-sum result (0, 0).
AbelSum abel_sum(const std::vector<double>& a, const std::vector<double>& b,
                 const std::function<double(double)>& f,
                 const std::function<double(double)>& fprime, double x);

// Miller-Rabin with witness set {2,3,...,41} (13 prime witnesses):
// deterministic for N below 3.3e24, error < 2^-128 beyond.
bool is_probable_prime(const bigint& N);

// Riemann zeta by Euler-Maclaurin summation with 8 Bernoulli correction
// terms; valid on Re(s) > 0, s != 1, |Im(s)| <= 1e3. The returned abs_error
// bounds truncation plus rounding. s = 1 raises a pole error; Re(s) <= 0 an
// unsupported-region error (both std::domain_error).
ComplexEval zeta(std::complex<double> s, double target_error);

}  // namespace ecgf::numth
