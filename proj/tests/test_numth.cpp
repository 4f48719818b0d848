// Unit and property tests for the integer / arithmetic-function substrate.
// Frozen numeric anchors were computed with an independent high-precision
// oracle (30-digit arithmetic) and are cited to full printed precision.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "ecgf/numth.hpp"

using namespace ecgf;
using namespace ecgf::numth;

namespace {

// Independent segmented sieve used only as an oracle for sieve_primes.
std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) {
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    std::vector<bool> small_comp(root + 1, false);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (small_comp[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small_comp[j] = true;
    }
    std::vector<std::uint64_t> primes;
    const std::uint64_t block = 32768;
    std::vector<bool> seg;
    for (std::uint64_t lo = 2; lo <= limit; lo += block) {
        std::uint64_t hi = std::min(lo + block - 1, limit);
        seg.assign(hi - lo + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = true;
        }
        for (std::uint64_t i = lo; i <= hi; ++i)
            if (!seg[i - lo] && i >= 2) primes.push_back(i);
    }
    return primes;
}

double simpson_rec(const std::function<double(double)>& fn, double lo, double hi, double flo,
                   double fmid, double fhi, double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double flm = fn(0.5 * (lo + mid)), frm = fn(0.5 * (mid + hi));
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(fn, lo, mid, flo, flm, fmid, tol / 2, depth - 1) +
           simpson_rec(fn, mid, hi, fmid, frm, fhi, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    double mid = 0.5 * (lo + hi);
    return simpson_rec(fn, lo, hi, fn(lo), fn(mid), fn(hi), tol, 48);
}

// Logarithmic integral via quadrature from 2 plus the frozen constant li(2).
double li_quadrature(double x) {
    const double li2 = 1.0451637801174928;
    return li2 + integrate([](double t) { return 1.0 / std::log(t); }, 2.0, x, 1e-9);
}

DirichletCoeffs from_fn(std::size_t M, const std::function<long long(std::size_t)>& fn) {
    auto f = DirichletCoeffs::zeros(M);
    for (std::size_t n = 1; n <= M; ++n) f.c[n] = fn(n);
    return f;
}

}  // namespace

TEST_CASE("prime sieve basics and oracle") {
    auto t10 = sieve_primes(10);
    CHECK(t10.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t10.pi(10) == 4);
    auto t2 = sieve_primes(2);
    CHECK(t2.primes == std::vector<std::uint64_t>{2});
    CHECK(t2.pi(2) == 1);
    CHECK_THROWS_AS(sieve_primes(1), std::domain_error);

    auto t = sieve_primes(1000000);
    CHECK(t.pi(1000000) == 78498);
    CHECK(t.pi(100000) == 9592);
    CHECK(t.pi(10000) == 1229);
    CHECK(t.primes == segmented_sieve(1000000));
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(4, 7) == 1);
    CHECK(legendre(7, 7) == 0);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(-1, 11) == -1); // 11 = 3 mod 4
    CHECK(legendre(-1, 13) == 1);  // 13 = 1 mod 4
    // Cross-check against square enumeration for several odd primes.
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 97ull}) {
        std::vector<bool> is_sq(p, false);
        for (std::uint64_t x = 0; x < p; ++x) is_sq[x * x % p] = true;
        for (std::uint64_t a = 0; a < p; ++a) {
            int expect = a == 0 ? 0 : (is_sq[a] ? 1 : -1);
            CHECK(legendre(static_cast<std::int64_t>(a), p) == expect);
        }
    }
    CHECK_THROWS_AS(legendre(3, 6), std::domain_error);
    CHECK_THROWS_AS(legendre(3, 9), std::domain_error);
    CHECK_THROWS_AS(legendre(3, 2), std::domain_error);
}

TEST_CASE("arithmetic functions") {
    auto v1 = arithmetic_functions(1);
    CHECK(v1.mu == 1); CHECK(v1.sigma == 1); CHECK(v1.d == 1);
    auto v6 = arithmetic_functions(6);
    CHECK(v6.mu == 1); CHECK(v6.sigma == 12); CHECK(v6.d == 4);
    auto v4 = arithmetic_functions(4);
    CHECK(v4.mu == 0); CHECK(v4.sigma == 7); CHECK(v4.d == 3);
    CHECK_THROWS_AS(arithmetic_functions(0), std::domain_error);
    // brute-force divisor cross-check
    for (std::uint64_t n = 1; n <= 500; ++n) {
        std::uint64_t sig = 0, cnt = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) { sig += d; ++cnt; }
        auto v = arithmetic_functions(n);
        CHECK(v.sigma == sig);
        CHECK(v.d == cnt);
    }
}

TEST_CASE("dirichlet convolution identities") {
    const std::size_t M = 200;
    auto mu = from_fn(M, [](std::size_t n) { return static_cast<long long>(arithmetic_functions(n).mu); });
    auto one = from_fn(M, [](std::size_t) { return 1ll; });

    auto unit = dirichlet_convolve(mu, one); // Moebius inversion: identity element
    CHECK(unit.c[1] == 1);
    for (std::size_t n = 2; n <= M; ++n) CHECK(unit.c[n] == 0);

    // (mu * mu)(4) = mu(1)mu(4) + mu(2)mu(2) + mu(4)mu(1) = 0 + 1 + 0 = +1.
    auto mumu = dirichlet_convolve(mu, mu);
    CHECK(mumu.c[4] == 1);
    CHECK(mumu.c[6] == 4); // four divisor pairs, each contributing +1

    // Coefficients of zeta(s)^2 zeta(s-1)^2 / zeta(2s-1) equal sigma(n) d(n):
    // d * (n d(n)) * (mu(m) m at n = m^2).
    auto dfun = from_fn(M, [](std::size_t n) { return static_cast<long long>(arithmetic_functions(n).d); });
    auto idd = from_fn(M, [](std::size_t n) {
        return static_cast<long long>(n) * static_cast<long long>(arithmetic_functions(n).d);
    });
    auto sqmu = from_fn(M, [](std::size_t n) {
        std::size_t m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (m * m != n) return 0ll;
        return static_cast<long long>(m) * arithmetic_functions(m).mu;
    });
    auto prod = dirichlet_convolve(dirichlet_convolve(dfun, idd), sqmu);
    for (std::size_t n = 1; n <= 100; ++n) {
        auto v = arithmetic_functions(n);
        CHECK(prod.c[n] == bigint(v.sigma) * v.d);
    }

    auto shorter = DirichletCoeffs::zeros(M - 1);
    CHECK_THROWS_AS(dirichlet_convolve(mu, shorter), std::domain_error);
}

TEST_CASE("dirichlet convolution is commutative and associative") {
    const std::size_t M = 200;
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = from_fn(M, [&](std::size_t) { return static_cast<long long>(coeff(rng)); });
        auto g = from_fn(M, [&](std::size_t) { return static_cast<long long>(coeff(rng)); });
        auto h = from_fn(M, [&](std::size_t) { return static_cast<long long>(coeff(rng)); });
        auto fg = dirichlet_convolve(f, g);
        auto gf = dirichlet_convolve(g, f);
        CHECK(fg.c == gf.c);
        auto left = dirichlet_convolve(fg, h);
        auto right = dirichlet_convolve(f, dirichlet_convolve(g, h));
        CHECK(left.c == right.c);
    }
}

TEST_CASE("abel partial summation") {
    auto [l1, r1] = abel_sum({1, 1, 1}, {1, 2, 3}, [](double t) { return t; },
                             [](double) { return 1.0; }, 3.0);
    CHECK(l1 == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(r1 == doctest::Approx(6.0).epsilon(1e-12));

    std::vector<double> ones(10, 1.0), knots;
    for (int n = 1; n <= 10; ++n) knots.push_back(n);
    auto [l2, r2] = abel_sum(ones, knots, [](double t) { return 1.0 / t; },
                             [](double t) { return -1.0 / (t * t); }, 10.0);
    CHECK(l2 == doctest::Approx(2.9289682539682538).epsilon(1e-12));
    CHECK(std::abs(l2 - r2) <= 1e-9);

    auto [l3, r3] = abel_sum({1.0}, {1.0}, [](double t) { return t; },
                             [](double) { return 1.0; }, 0.5);
    CHECK(l3 == 0.0);
    CHECK(r3 == 0.0);

    CHECK_THROWS_AS(abel_sum({1, 1}, {2, 2}, [](double t) { return t; },
                             [](double) { return 1.0; }, 3.0),
                    std::domain_error);
}

TEST_CASE("abel partial summation randomized property") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> aval(-2.0, 2.0), knot(0.0, 10.0);
    std::uniform_int_distribution<int> sz(1, 20), fsel(0, 3);
    struct Func {
        std::function<double(double)> f, fp;
    };
    std::vector<Func> funcs = {
        {[](double t) { return t * t; }, [](double t) { return 2 * t; }},
        {[](double t) { return t * t * t - 2 * t; }, [](double t) { return 3 * t * t - 2; }},
        {[](double t) { return std::exp(0.3 * t); }, [](double t) { return 0.3 * std::exp(0.3 * t); }},
        {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }},
    };
    for (int trial = 0; trial < 100; ++trial) {
        int n = sz(rng);
        std::vector<double> b;
        for (int i = 0; i < n; ++i) b.push_back(knot(rng));
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        std::vector<double> a;
        for (std::size_t i = 0; i < b.size(); ++i) a.push_back(aval(rng));
        double x = b.front() + (12.0 - b.front()) * std::uniform_real_distribution<double>(0, 1)(rng);
        const auto& fn = funcs[fsel(rng)];
        auto [lhs, rhs] = abel_sum(a, b, fn.f, fn.fp, x);
        CHECK(std::abs(lhs - rhs) <= 1e-7 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("probable prime") {
    CHECK(is_probable_prime(7));
    CHECK_FALSE(is_probable_prime(561));   // Carmichael number
    CHECK_FALSE(is_probable_prime(13021)); // (5^7+1)/6 = 29 * 449
    CHECK(is_probable_prime(521));         // (5^5+1)/6
    CHECK(is_probable_prime(2801));        // 1 + 7 + 7^2 + 7^3 + 7^4
    CHECK_FALSE(is_probable_prime(2101));  // (7^5+1)/8 = 11 * 191
    CHECK_FALSE(is_probable_prime(0));
    CHECK_FALSE(is_probable_prime(1));
    CHECK_FALSE(is_probable_prime(bigint("3215031751"))); // strong pseudoprime to bases 2,3,5,7
    bigint m89 = (bigint(1) << 89) - 1; // Mersenne prime 2^89 - 1
    CHECK(is_probable_prime(m89));
    CHECK_FALSE(is_probable_prime(m89 * 97));
}

TEST_CASE("probable prime cross-checked against sieve below 1e6") {
    auto t = sieve_primes(1000000);
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 1000000; ++n) {
        bool in_table = idx < t.primes.size() && t.primes[idx] == n;
        if (in_table) ++idx;
        if (is_probable_prime(n) != in_table) {
            CAPTURE(n);
            CHECK(false);
            break;
        }
    }
    CHECK(idx == t.primes.size());
}

TEST_CASE("zeta anchors") {
    const double pi_ = 3.14159265358979323846;
    auto z2 = zeta({2.0, 0.0}, 1e-12);
    CHECK(std::abs(z2.value - std::complex<double>(pi_ * pi_ / 6.0)) <= 1e-11 + z2.abs_error);
    CHECK(std::abs(z2.value.real() - 1.64493406684822643647) <= 1e-11);
    auto z3 = zeta({3.0, 0.0}, 1e-12);
    CHECK(std::abs(z3.value.real() - 1.2020569031595942854) <= 1e-11);
    auto z4 = zeta({4.0, 0.0}, 1e-12);
    CHECK(std::abs(z4.value - std::complex<double>(pi_ * pi_ * pi_ * pi_ / 90.0)) <= 1e-11 + z4.abs_error);
    // continuation strip 0 < Re(s) <= 1 and complex arguments
    CHECK(std::abs(zeta({1.5, 0.0}, 1e-12).value.real() - 2.61237534868548834335) <= 1e-11);
    CHECK(std::abs(zeta({0.5, 0.0}, 1e-12).value.real() - (-1.46035450880958681289)) <= 1e-11);
    CHECK(std::abs(zeta({0.001, 0.0}, 1e-12).value.real() - (-0.500919942713218701814)) <= 1e-11);
    CHECK(std::abs(zeta({1.002, 0.0}, 1e-12).value.real() - 500.577361277209036932) <= 1e-8);
    CHECK(std::abs(zeta({3.4, 0.0}, 1e-12).value.real() - 1.13866377572804167377) <= 1e-11);
    auto zc = zeta({2.0, 3.0}, 1e-12);
    CHECK(std::abs(zc.value - std::complex<double>(0.798021985146275720622, -0.113744308052938500216)) <=
          1e-11 + zc.abs_error);
    // near the first nontrivial zero the value is tiny
    auto z0 = zeta({0.5, 14.134725}, 1e-13);
    CHECK(std::abs(z0.value) <= 2e-7);
    CHECK(std::abs(z0.value - std::complex<double>(1.7674298356433245e-8, -1.1102028894857664e-7)) <= 1e-12 + z0.abs_error);
}

TEST_CASE("zeta agrees with direct summation for Re(s) > 1") {
    for (std::complex<double> s : {std::complex<double>{2.7, 0.0}, {3.0, 5.0}, {2.1, -17.0}}) {
        std::complex<double> direct{0.0, 0.0};
        const std::uint64_t N = 2000000;
        for (std::uint64_t n = 1; n < N; ++n)
            direct += std::exp(-s * std::log(static_cast<double>(n)));
        // tail estimate int_N^inf t^-s dt = N^{1-s}/(s-1)
        direct += std::exp((1.0 - s) * std::log(static_cast<double>(N))) / (s - 1.0);
        auto z = zeta(s, 1e-12);
        double tail_err = std::pow(static_cast<double>(N), -s.real());
        CHECK(std::abs(z.value - direct) <= z.abs_error + 10.0 * tail_err + 1e-9);
    }
}

TEST_CASE("zeta domain errors") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}, 1e-10), std::domain_error);
    CHECK_THROWS_AS(zeta({0.0, 2.0}, 1e-10), std::domain_error);
    CHECK_THROWS_AS(zeta({-0.5, 0.0}, 1e-10), std::domain_error);
    CHECK_THROWS_AS(zeta({2.0, 2000.0}, 1e-10), std::domain_error);
}

TEST_CASE("zeta growth sanity bounds") {
    // For sigma > 1: |zeta(sigma+it)| <= zeta(sigma) and
    // |1/zeta(sigma+it)| <= zeta(sigma)^2 / zeta(2 sigma).
    for (double sigma : {1.1, 1.5, 2.0, 3.0}) {
        double zs = zeta({sigma, 0.0}, 1e-13).value.real();
        double z2s = zeta({2.0 * sigma, 0.0}, 1e-13).value.real();
        for (double t : {0.0, 3.7, 14.134725, 100.0, 999.0}) {
            auto z = zeta({sigma, t}, 1e-13);
            double m = std::abs(z.value);
            CHECK(m <= zs * (1.0 + 1e-10));
            CHECK(1.0 / m <= zs * zs / z2s * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("pi(x) tracks li(x)") {
    auto t = sieve_primes(1000000);
    double dev4 = std::abs(static_cast<double>(t.pi(10000)) / li_quadrature(1e4) - 1.0);
    double dev5 = std::abs(static_cast<double>(t.pi(100000)) / li_quadrature(1e5) - 1.0);
    double dev6 = std::abs(static_cast<double>(t.pi(1000000)) / li_quadrature(1e6) - 1.0);
    CHECK(dev5 <= 0.01);
    CHECK(dev6 <= 0.01);
    // At the smallest sample the true deviation is 1.375% — the idealized 1%
    // threshold is not attained there (pi(1e4) = 1229, li(1e4) = 1246.137);
    // the measured value is pinned instead of papering over it.
    CHECK(dev4 == doctest::Approx(0.013752270360547596).epsilon(2e-4));
    CHECK(dev4 > 0.01);
}
