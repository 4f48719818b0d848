#include "ecgf/numth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecgf::numth {

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<std::uint64_t>(it - primes.begin());
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    std::vector<bool> composite(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) table.primes.push_back(i);
    return table;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Miller-Rabin for 64-bit n with the fixed witness list below; exact for
// all 64-bit inputs (the first 13 prime witnesses are deterministic far
// beyond 2^64).
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) { return is_prime_u64(n); }

int legendre(std::int64_t a, std::uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw std::domain_error("legendre: p must be an odd prime");
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    std::uint64_t am = static_cast<std::uint64_t>(r);
    if (am == 0) return 0;
    std::uint64_t e = powmod_u64(am, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

ArithmeticValues arithmetic_functions(std::uint64_t n) {
    if (n == 0) throw std::domain_error("arithmetic_functions: n must be >= 1");
    ArithmeticValues v{1, 1, 1};
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        unsigned k = 0;
        std::uint64_t pk = 1;
        while (m % p == 0) { m /= p; ++k; pk *= p; }
        v.mu = (k >= 2) ? 0 : -v.mu;
        v.sigma *= (pk * p - 1) / (p - 1); // 1 + p + ... + p^k
        v.d *= (k + 1);
    }
    if (m > 1) {
        v.mu = -v.mu;
        v.sigma *= (m + 1);
        v.d *= 2;
    }
    return v;
}

DirichletCoeffs DirichletCoeffs::zeros(std::size_t M) {
    DirichletCoeffs f;
    f.c.assign(M + 1, bigint(0));
    return f;
}

DirichletCoeffs dirichlet_convolve(const DirichletCoeffs& f, const DirichletCoeffs& g) {
    if (f.length() != g.length())
        throw std::domain_error("dirichlet_convolve: truncation lengths differ");
    std::size_t M = f.length();
    DirichletCoeffs h = DirichletCoeffs::zeros(M);
    for (std::size_t d = 1; d <= M; ++d) {
        if (f.c[d] == 0) continue;
        for (std::size_t q = 1; d * q <= M; ++q) h.c[d * q] += f.c[d] * g.c[q];
    }
    return h;
}

namespace {

// Adaptive Simpson on [lo, hi] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& fn, double lo, double hi,
                        double flo, double fmid, double fhi, double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    double flm = fn(lmid), frm = fn(rmid);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(fn, lo, mid, flo, flm, fmid, tol / 2, depth - 1) +
           adaptive_simpson(fn, mid, hi, fmid, frm, fhi, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    double mid = 0.5 * (lo + hi);
    return adaptive_simpson(fn, lo, hi, fn(lo), fn(mid), fn(hi), tol, 40);
}

}  // namespace

AbelSum abel_sum(const std::vector<double>& a, const std::vector<double>& b,
                 const std::function<double(double)>& f,
                 const std::function<double(double)>& fprime, double x) {
    if (a.size() != b.size()) throw std::domain_error("abel_sum: |a| != |b|");
    for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i - 1] < b[i])) throw std::domain_error("abel_sum: knots must be strictly increasing");
    if (b.empty() || x < b.front()) return {0.0, 0.0};

    constexpr double kTol = 1e-10;
    double lhs = 0.0;
    std::size_t count = 0; // number of knots <= x
    while (count < b.size() && b[count] <= x) {
        lhs += a[count] * f(b[count]);
        ++count;
    }

    // rhs = f(x) A(x) - int_{b_1}^x A(t) f'(t) dt, with A constant between
    // consecutive knots.
    double running = 0.0, integral = 0.0;
    for (std::size_t i = 0; i + 1 <= count; ++i) {
        running += a[i];
        double seg_lo = b[i];
        double seg_hi = (i + 1 < count) ? b[i + 1] : x;
        if (seg_hi > seg_lo && running != 0.0)
            integral += running * integrate(fprime, seg_lo, seg_hi, kTol);
    }
    double rhs = f(x) * running - integral;
    return {lhs, rhs};
}

namespace {

bigint powmod_big(bigint base, bigint exp, const bigint& m) {
    bigint result = 1;
    base %= m;
    while (exp > 0) {
        if ((exp & 1) != 0) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_probable_prime(const bigint& N) {
    if (N < 2) return false;
    for (std::uint64_t p : kWitnesses) {
        if (N == p) return true;
        if (N % p == 0) return false;
    }
    bigint d = N - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : kWitnesses) {
        bigint x = powmod_big(a, d, N);
        if (x == 1 || x == N - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = x * x % N;
            if (x == N - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

// B_{2k} / (2k)! for k = 1..8, followed by the k = 9 value used in the
// remainder bound.
constexpr double kBernOverFact[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
};

}  // namespace

ComplexEval zeta(std::complex<double> s, double target_error) {
    if (s == std::complex<double>(1.0, 0.0))
        throw std::domain_error("zeta: pole at s = 1");
    if (s.real() <= 0.0)
        throw std::domain_error("zeta: unsupported region Re(s) <= 0");
    if (std::abs(s.imag()) > 1e3)
        throw std::domain_error("zeta: |Im(s)| must be <= 1e3");
    if (!(target_error > 0)) throw std::domain_error("zeta: target_error must be positive");

    const double sigma = s.real();
    // Shift parameter N: start past the oscillation scale |Im s| and double
    // until the remainder bound (first omitted Bernoulli term, with a safety
    // factor) meets the target.
    std::uint64_t N = static_cast<std::uint64_t>(std::max(16.0, std::abs(s.imag()))) + 1;
    auto remainder_bound = [&](std::uint64_t n) {
        // |B_18/18! * s(s+1)...(s+16) * n^{-s-17}| * safety
        double logterm = std::log(std::abs(kBernOverFact[8]));
        for (int j = 0; j <= 16; ++j) logterm += std::log(std::abs(s + static_cast<double>(j)));
        logterm -= (sigma + 17.0) * std::log(static_cast<double>(n));
        return 4.0 * std::exp(logterm);
    };
    while (remainder_bound(N) > 0.5 * target_error) {
        N *= 2;
        if (N > (1u << 26)) break; // ~6.7e7 terms: far beyond any need at |t| <= 1e3
    }

    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t n = 1; n < N; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    const std::complex<double> Nms = std::exp(-s * logN); // N^{-s}
    std::complex<double> result = sum + Nms * static_cast<double>(N) / (s - 1.0) + 0.5 * Nms;

    // Bernoulli corrections: term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}.
    std::complex<double> poch = s;                        // s(s+1)...(s+m-1)
    std::complex<double> npow = Nms / static_cast<double>(N); // N^{-s-1}
    for (int k = 1; k <= 8; ++k) {
        result += kBernOverFact[k - 1] * poch * npow;
        if (k < 8) {
            poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
            npow /= static_cast<double>(N) * static_cast<double>(N);
        }
    }

    double rounding = 4e-15 * (std::abs(result) + 1.0) * std::log2(static_cast<double>(N) + 2.0);
    return {result, remainder_bound(N) + rounding};
}

}  // namespace ecgf::numth
