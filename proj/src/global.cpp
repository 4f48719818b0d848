#include "ecgf/global.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>

#include "ecgf/curve_local.hpp"

namespace ecgf::global {

namespace {

// Budget guards: coefficient tables are materialized in memory and good
// traces cost O(p) each, so unbounded requests are refused rather than
// allowed to exhaust the machine.
constexpr std::size_t kMaxCoefficientLimit = 2000000;
constexpr std::uint64_t kMaxTracePrime = 10000000;

std::uint64_t mod_u(const bigint& v, std::uint64_t p) {
    bigint r = v % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
}

std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod_u(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod_u(r, base, p);
        base = mulmod_u(base, base, p);
        exp >>= 1;
    }
    return r;
}

std::uint64_t invmod_u(std::uint64_t a, std::uint64_t p) {
    return powmod_u(a % p, p - 2, p);  // p prime, a != 0 mod p
}

// Trace of Frobenius of y^2 = x^3 + Ax + B over F_p (p >= 5, nonsingular):
// t = -sum_x chi(x^3 + Ax + B), with the quadratic character read from a
// residue table and the cubic evaluated by finite differences (three
// additions per x).
std::int64_t trace_char_sum(std::uint64_t p, std::uint64_t A, std::uint64_t B) {
    if (p > kMaxTracePrime)
        throw resource_error("trace computation: prime exceeds supported budget");
    static thread_local std::vector<std::int8_t> chi;
    chi.assign(p, -1);
    chi[0] = 0;
    std::uint64_t sq = 0;
    for (std::uint64_t x = 1; x <= (p - 1) / 2; ++x) {
        sq += 2 * x - 1;  // x^2 = (x-1)^2 + (2x-1)
        if (sq >= p) sq -= p;
        chi[sq] = 1;
    }
    const std::uint64_t six = 6 % p;
    std::uint64_t f = B % p;        // f(0)
    std::uint64_t d1 = (1 + A) % p; // f(x+1) - f(x) at x = 0
    std::uint64_t d2 = six;         // second difference at x = 0
    std::int64_t acc = chi[f];
    for (std::uint64_t x = 1; x < p; ++x) {
        f += d1;
        if (f >= p) f -= p;
        d1 += d2;
        if (d1 >= p) d1 -= p;
        d2 += six;
        if (d2 >= p) d2 -= p;
        acc += chi[f];
    }
    return -acc;
}

// Short-model coefficients (-27 c4, -54 c6) mod p after dividing out any
// p-power non-minimality (c4 -> c4/p^4, c6 -> c6/p^6 while the twelfth
// power divides the discriminant).
struct LocalModel {
    bigint c4, c6, disc;
};

LocalModel minimal_at_p(const GlobalCurve& e, std::uint64_t p) {
    LocalModel m{e.c4, e.c6, e.disc};
    if (m.disc % p == 0) {
        const bigint bp(p);
        const bigint p4 = bp * bp * bp * bp;
        const bigint p6 = p4 * bp * bp;
        const bigint p12 = p6 * p6;
        while (m.disc % p12 == 0 && m.c4 % p4 == 0 && m.c6 % p6 == 0) {
            m.c4 /= p4;
            m.c6 /= p6;
            m.disc /= p12;
        }
    }
    return m;
}

PrimeRecord classify_at_p(const GlobalCurve& e, std::uint64_t p) {
    const LocalModel m = minimal_at_p(e, p);
    if (m.disc % p != 0) {
        const std::uint64_t A = mod_u(bigint(-27) * m.c4, p);
        const std::uint64_t B = mod_u(bigint(-54) * m.c6, p);
        const std::int64_t t = trace_char_sum(p, A, B);
        if (static_cast<__int128>(t) * t > static_cast<__int128>(4) * p)
            throw std::logic_error("reduce_curve: computed trace violates the Hasse bound");
        return {p, Reduction::good, t, 0};
    }
    if (m.c4 % p == 0) return {p, Reduction::additive, 0, 2};
    // Node: x^3 + Ax + B = (x - x0)^2 (x + 2x0) with A = -3 x0^2,
    // B = 2 x0^3, so x0 = -3B / (2A); the tangent slopes are the square
    // roots of 3 x0.
    const std::uint64_t A = mod_u(bigint(-27) * m.c4, p);
    const std::uint64_t B = mod_u(bigint(-54) * m.c6, p);
    const std::uint64_t num = mod_u(bigint(-3) * B, p);
    const std::uint64_t x0 = mulmod_u(num, invmod_u(mulmod_u(2, A, p), p), p);
    const int chi = numth::legendre(
        static_cast<std::int64_t>(mulmod_u(3 % p, x0, p)), p);
    if (chi == 0)
        throw std::logic_error("reduce_curve: node tangent degenerated to a cusp");
    return chi == 1 ? PrimeRecord{p, Reduction::split, 1, 1}
                    : PrimeRecord{p, Reduction::nonsplit, -1, 1};
}

// Cached good-prime traces for one curve: ap[i] matches primes[i], with
// INT64_MIN marking primes the table does not answer for (p < 5 and
// genuinely bad primes).
struct ApTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    std::vector<std::int64_t> ap;
};

std::shared_ptr<const ApTable> good_ap_table(const GlobalCurve& e,
                                             std::uint64_t limit) {
    if (limit < 2) limit = 2;
    if (limit > kMaxCoefficientLimit)
        throw resource_error("trace table: limit exceeds supported budget");
    static std::mutex mx;
    static std::map<std::array<std::int64_t, 5>, std::shared_ptr<const ApTable>>
        cache;
    const std::array<std::int64_t, 5> key{e.a1, e.a2, e.a3, e.a4, e.a6};
    {
        std::lock_guard<std::mutex> lock(mx);
        auto it = cache.find(key);
        if (it != cache.end() && it->second->limit >= limit) return it->second;
    }
    auto tbl = std::make_shared<ApTable>();
    tbl->limit = limit;
    tbl->primes = numth::sieve_primes(limit).primes;
    tbl->ap.assign(tbl->primes.size(), std::numeric_limits<std::int64_t>::min());
    parallel_for(tbl->primes.size(), 0, [&](std::size_t i) {
        const std::uint64_t p = tbl->primes[i];
        if (p < 5) return;
        const PrimeRecord rec = classify_at_p(e, p);
        if (rec.reduction == Reduction::good) tbl->ap[i] = rec.a_p;
    });
    std::lock_guard<std::mutex> lock(mx);
    cache[key] = tbl;
    return tbl;
}

struct ApInfo {
    std::int64_t a_p;
    bool good;
};

bool is_bad_prime(const GlobalCurve& e, std::uint64_t p, PrimeRecord* out) {
    for (const PrimeRecord& r : e.bad_primes) {
        if (r.p == p) {
            if (out) *out = r;
            return true;
        }
        if (r.p > p) break;
    }
    return false;
}

// a_p and its reduction kind, preferring catalog-supplied records, then the
// bad-prime classification, then the cached good-trace table.
ApInfo ap_info(const GlobalCurve& e, std::uint64_t p, const ApTable& tbl) {
    auto it = e.supplied.find(p);
    if (it != e.supplied.end())
        return {it->second.a_p, it->second.reduction == Reduction::good};
    PrimeRecord rec;
    if (is_bad_prime(e, p, &rec)) return {rec.a_p, false};
    if (p < 5)
        throw missing_data_error(
            "reduction data for p = " + std::to_string(p) +
            " must be supplied in the curve catalog");
    auto pit = std::lower_bound(tbl.primes.begin(), tbl.primes.end(), p);
    if (pit == tbl.primes.end() || *pit != p)
        throw std::logic_error("ap_info: prime outside the cached table");
    const std::int64_t a = tbl.ap[static_cast<std::size_t>(pit - tbl.primes.begin())];
    if (a == std::numeric_limits<std::int64_t>::min())
        throw std::logic_error("ap_info: cached table has no trace for a good prime");
    return {a, true};
}

// Compensated accumulator (Neumaier variant), so million-term partial sums
// carry rounding error near one ulp instead of one ulp per term.
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

double real_zeta(double x) {
    return numth::zeta(std::complex<double>(x, 0.0), 1e-13).value.real();
}

// zeta evaluation for the B(s) assembly: bundles the supported-region check
// into one place so both paths report violations identically.
ComplexEval zeta_checked(std::complex<double> arg, const char* role) {
    if (!(arg.real() > 0.0))
        throw std::domain_error(std::string("eval_B_global: ") + role +
                                " lies outside the supported zeta region Re > 0");
    if (std::abs(arg.imag()) > 1e3)
        throw std::domain_error(std::string("eval_B_global: ") + role +
                                " exceeds the supported zeta height |Im| <= 1e3");
    return numth::zeta(arg, 1e-13);
}

std::complex<double> p_to(std::complex<double> expo, double p) {
    return std::exp(expo * std::log(p));
}

// prod over bad primes of (1 - p^{1-s}) / (1 - p^{1-2s}).
std::complex<double> bad_zeta_quotient(const GlobalCurve& e,
                                       std::complex<double> s) {
    std::complex<double> q = 1.0;
    for (const PrimeRecord& r : e.bad_primes) {
        const double p = static_cast<double>(r.p);
        q *= (1.0 - p_to(1.0 - s, p)) / (1.0 - p_to(1.0 - 2.0 * s, p));
    }
    return q;
}

void require_finite(std::complex<double> s, const char* who) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::invalid_argument(std::string(who) + ": s must be finite");
}

std::int64_t parse_int_token(const std::string& tok, int lineno,
                             const char* what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size())
        throw std::invalid_argument("curve catalog line " +
                                    std::to_string(lineno) + ": malformed " +
                                    what + " '" + tok + "'");
    return v;
}

Reduction parse_reduction(const std::string& tok, int lineno) {
    if (tok == "good") return Reduction::good;
    if (tok == "split") return Reduction::split;
    if (tok == "nonsplit") return Reduction::nonsplit;
    if (tok == "additive") return Reduction::additive;
    throw std::invalid_argument("curve catalog line " + std::to_string(lineno) +
                                ": unknown reduction type '" + tok + "'");
}

}  // namespace

GlobalCurve make_global_curve(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                              std::int64_t a4, std::int64_t a6, bool cm,
                              const std::vector<PrimeRecord>& supplied) {
    GlobalCurve e;
    e.a1 = a1;
    e.a2 = a2;
    e.a3 = a3;
    e.a4 = a4;
    e.a6 = a6;
    e.cm = cm;
    const bigint b2 = bigint(a1) * a1 + 4 * bigint(a2);
    const bigint b4 = 2 * bigint(a4) + bigint(a1) * a3;
    const bigint b6 = bigint(a3) * a3 + 4 * bigint(a6);
    const bigint b8 = bigint(a1) * a1 * a6 + 4 * bigint(a2) * a6 -
                      bigint(a1) * a3 * a4 + bigint(a2) * a3 * a3 -
                      bigint(a4) * a4;
    e.c4 = b2 * b2 - 24 * b4;
    e.c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    e.disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (e.disc == 0)
        throw std::invalid_argument("make_global_curve: singular model (zero discriminant)");
    if (1728 * e.disc != e.c4 * e.c4 * e.c4 - e.c6 * e.c6)
        throw std::logic_error("make_global_curve: invariant 1728 disc = c4^3 - c6^2 failed");

    for (const PrimeRecord& r : supplied) {
        if (!numth::is_prime(r.p))
            throw std::invalid_argument("make_global_curve: supplied record at non-prime " +
                                        std::to_string(r.p));
        if (e.supplied.count(r.p))
            throw std::invalid_argument("make_global_curve: duplicate supplied record at p = " +
                                        std::to_string(r.p));
        const bool divides = (e.disc % r.p == 0);
        switch (r.reduction) {
            case Reduction::good:
                // A good record at p | disc is allowed: it asserts the model
                // is non-minimal at p (mandatory for p = 2, 3, where no
                // automatic minimality reduction is attempted).
                if (static_cast<__int128>(r.a_p) * r.a_p >=
                    static_cast<__int128>(4) * r.p)
                    throw std::invalid_argument(
                        "make_global_curve: supplied good trace at p = " +
                        std::to_string(r.p) + " violates the Hasse bound");
                if (r.f_p != 0)
                    throw std::invalid_argument(
                        "make_global_curve: good reduction requires f_p = 0");
                break;
            case Reduction::split:
            case Reduction::nonsplit: {
                const std::int64_t want = r.reduction == Reduction::split ? 1 : -1;
                if (r.a_p != want || r.f_p != 1)
                    throw std::invalid_argument(
                        "make_global_curve: multiplicative record at p = " +
                        std::to_string(r.p) + " must have a_p = +/-1 and f_p = 1");
                if (!divides)
                    throw std::invalid_argument(
                        "make_global_curve: multiplicative reduction supplied at a prime "
                        "not dividing the discriminant");
                break;
            }
            case Reduction::additive: {
                if (r.a_p != 0)
                    throw std::invalid_argument(
                        "make_global_curve: additive reduction requires a_p = 0");
                if (!divides)
                    throw std::invalid_argument(
                        "make_global_curve: additive reduction supplied at a prime "
                        "not dividing the discriminant");
                const unsigned cap = r.p == 2 ? 8u : (r.p == 3 ? 5u : 2u);
                if (r.f_p < 2 || r.f_p > cap)
                    throw std::invalid_argument(
                        "make_global_curve: additive exponent f_p at p = " +
                        std::to_string(r.p) + " outside its admissible range");
                break;
            }
        }
        e.supplied[r.p] = r;
    }

    // Factor |disc| to enumerate candidate bad primes.
    bigint rest = e.disc < 0 ? bigint(-e.disc) : e.disc;
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t p : numth::sieve_primes(1000000).primes) {
        if (rest % p == 0) {
            divisors.push_back(p);
            while (rest % p == 0) rest /= p;
        }
        if (rest == 1) break;
    }
    if (rest != 1) {
        if (rest > std::numeric_limits<std::uint64_t>::max() ||
            !numth::is_prime(rest.convert_to<std::uint64_t>()))
            throw resource_error(
                "make_global_curve: discriminant has a factor beyond the "
                "supported factorization budget");
        divisors.push_back(rest.convert_to<std::uint64_t>());
    }

    e.conductor = 1;
    for (std::uint64_t p : divisors) {
        PrimeRecord rec;
        auto it = e.supplied.find(p);
        if (it != e.supplied.end()) {
            rec = it->second;
        } else if (p < 5) {
            throw missing_data_error(
                "make_global_curve: the discriminant is divisible by " +
                std::to_string(p) +
                " but the catalog supplies no reduction data for it");
        } else {
            rec = classify_at_p(e, p);
        }
        if (rec.reduction == Reduction::good) continue;  // non-minimal or forced good
        e.bad_primes.push_back(rec);
        bigint pw = 1;
        for (unsigned k = 0; k < rec.f_p; ++k) pw *= p;
        e.conductor *= pw;
    }
    std::sort(e.bad_primes.begin(), e.bad_primes.end(),
              [](const PrimeRecord& a, const PrimeRecord& b) { return a.p < b.p; });
    return e;
}

PrimeRecord reduce_curve(const GlobalCurve& curve, std::uint64_t p) {
    if (!numth::is_prime(p))
        throw std::invalid_argument("reduce_curve: p must be prime");
    auto it = curve.supplied.find(p);
    if (it != curve.supplied.end()) return it->second;
    if (p < 5)
        throw missing_data_error("reduce_curve: data for p = " + std::to_string(p) +
                                 " must be supplied in the curve catalog");
    return classify_at_p(curve, p);
}

AnTable an_table(const GlobalCurve& curve, std::size_t M) {
    if (M < 1) throw std::invalid_argument("an_table: M >= 1 required");
    if (M > kMaxCoefficientLimit)
        throw resource_error("an_table: M exceeds supported budget");
    AnTable t;
    t.a.assign(M + 1, bigint(0));
    t.a[1] = 1;
    if (M == 1) return t;

    std::vector<std::uint32_t> spf(M + 1, 0);
    for (std::size_t i = 2; i <= M; ++i) {
        if (spf[i] == 0)
            for (std::size_t j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }

    auto tbl = good_ap_table(curve, M);
    // Primes first (also remembering the reduction kind for the power step).
    std::map<std::uint64_t, bool> good_kind;
    for (std::uint64_t p : tbl->primes) {
        if (p > M) break;
        const ApInfo info = ap_info(curve, p, *tbl);
        t.a[p] = info.a_p;
        good_kind[p] = info.good;
    }
    for (std::size_t n = 2; n <= M; ++n) {
        if (t.a[n] != 0 && spf[n] == n) continue;  // prime, already filled
        const std::uint64_t p = spf[n];
        std::uint64_t q = p;
        std::size_t m = n / p;
        while (m % p == 0) {
            q *= p;
            m /= p;
        }
        if (m > 1) {
            t.a[n] = t.a[q] * t.a[m];  // coprime split, both already known
            continue;
        }
        if (q == p) continue;  // prime: filled above (possibly with a_p = 0)
        // n = p^k, k >= 2.
        auto kind = good_kind.find(p);
        if (kind == good_kind.end())
            throw std::logic_error("an_table: prime power without a prime record");
        if (kind->second)
            t.a[n] = t.a[p] * t.a[n / p] - bigint(p) * t.a[n / (p * p)];
        else
            t.a[n] = t.a[p] * t.a[n / p];
    }
    return t;
}

LResult eval_dirichlet(const std::vector<bigint>& a, std::complex<double> s) {
    if (a.size() < 2)
        throw std::invalid_argument("eval_dirichlet: need coefficients up to M >= 1");
    require_finite(s, "eval_dirichlet");
    const std::size_t M = a.size() - 1;
    const double sigma = s.real();
    const bool on_axis = (s.imag() == 0.0);
    Kahan re, im, mag;
    for (std::size_t n = 1; n <= M; ++n) {
        if (a[n] == 0) continue;
        const double an = a[n].convert_to<double>();
        if (on_axis) {
            const double term = an * std::pow(static_cast<double>(n), -sigma);
            re.add(term);
            mag.add(std::abs(term));
        } else {
            const std::complex<double> term =
                an * std::exp(-s * std::log(static_cast<double>(n)));
            re.add(term.real());
            im.add(term.imag());
            mag.add(std::abs(term));
        }
    }
    // Tail bound from |a_n| <= sqrt(n) d(n): with beta = sigma - 1/2,
    //   sum_{n > M} d(n) n^{-beta}
    //     <= M^{1-beta} [ (1 + ln M)/(beta - 1) + 1 + zeta(beta)/(beta - 1) ].
    double bound = std::numeric_limits<double>::infinity();
    const double beta = sigma - 0.5;
    if (beta > 1.0) {
        const double zb = real_zeta(beta);
        bound = std::pow(static_cast<double>(M), 1.0 - beta) *
                ((1.0 + std::log(static_cast<double>(M))) / (beta - 1.0) + 1.0 +
                 zb / (beta - 1.0));
    }
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * mag.get();
    LResult out;
    out.eval.value = {re.get(), im.get()};
    out.eval.abs_error = bound + rounding;
    out.certified = sigma >= 1.75;
    return out;
}

LResult eval_L(const GlobalCurve& curve, std::complex<double> s, std::size_t M) {
    const AnTable t = an_table(curve, M);
    return eval_dirichlet(t.a, s);
}

ComplexEval eval_B_global(const GlobalCurve& curve, std::complex<double> s,
                          std::size_t M, BPath path) {
    require_finite(s, "eval_B_global");
    if (M < 1) throw std::invalid_argument("eval_B_global: M >= 1 required");
    const double re = s.real(), im = s.imag();

    if (path == BPath::euler) {
        if (!(re > 2.0))
            throw std::domain_error(
                "eval_B_global: the euler path requires Re s > 2");
        const ComplexEval z1 = zeta_checked(s - 1.0, "zeta(s-1)");
        const ComplexEval z2 = zeta_checked(2.0 * s - 1.0, "zeta(2s-1)");
        if (std::abs(z2.value) < 1e-8)
            throw std::domain_error(
                "eval_B_global: zeta(2s-1) within 1e-8 of zero, reciprocal "
                "ill-conditioned");
        std::complex<double> val = z1.value / z2.value;
        val *= bad_zeta_quotient(curve, s);
        auto tbl = good_ap_table(curve, M);
        for (std::uint64_t p : tbl->primes) {
            if (p > M) break;
            const ApInfo info = ap_info(curve, p, *tbl);
            if (!info.good) continue;
            const double pd = static_cast<double>(p);
            const std::complex<double> ps = p_to(-s, pd);
            val /= 1.0 - static_cast<double>(info.a_p) * ps +
                   p_to(1.0 - 2.0 * s, pd);
        }
        // Omitted good factors p > M: |log factor| <= 6 p^{1/2 - sigma}.
        const double trunc =
            6.0 * std::pow(static_cast<double>(M), 1.5 - re) / (re - 1.5);
        const double rel = z1.abs_error / std::abs(z1.value) +
                           z2.abs_error / std::abs(z2.value) + std::expm1(trunc) +
                           1e-10;
        return {val, std::abs(val) * rel};
    }

    // Factored path: continuation through the L-series factorization.
    if (re == 0.0)
        throw std::domain_error(
            "eval_B_global: s lies on the excluded line Re s = 0");
    if (im == 0.0 && re == 2.0)
        throw std::domain_error("eval_B_global: s = 2 is an excluded point");
    if (im == 0.0 && re < 0.0) {
        const double n = 0.5 - re;
        const double k = std::round(n);
        if (std::abs(n - k) < 1e-9 && k >= 2.0 &&
            std::fmod(k, 2.0) == 0.0)
            throw std::domain_error(
                "eval_B_global: s belongs to the excluded set {1/2 - n : n = 2, 4, ...}");
    }
    if (re >= 0.5 && re < 1.0)
        throw std::domain_error(
            "eval_B_global: s lies in the excluded strip 1/2 <= Re s < 1");
    if (!(re > 1.0))
        throw std::domain_error(
            "eval_B_global: the factored path needs zeta(s-1), supported only "
            "for Re s > 1");
    const ComplexEval z1 = zeta_checked(s - 1.0, "zeta(s-1)");
    const ComplexEval z2 = zeta_checked(2.0 * s - 1.0, "zeta(2s-1)");
    if (std::abs(z2.value) < 1e-8)
        throw std::domain_error(
            "eval_B_global: zeta(2s-1) within 1e-8 of zero, reciprocal "
            "ill-conditioned");
    const LResult L = eval_L(curve, s, M);
    std::complex<double> val = L.eval.value;
    for (const PrimeRecord& r : curve.bad_primes) {
        if (r.reduction != Reduction::split && r.reduction != Reduction::nonsplit)
            continue;
        val *= 1.0 - static_cast<double>(r.a_p) * p_to(-s, static_cast<double>(r.p));
    }
    val *= bad_zeta_quotient(curve, s);
    val *= z1.value / z2.value;
    double relL = std::abs(L.eval.value) > 0.0
                      ? L.eval.abs_error / std::abs(L.eval.value)
                      : std::numeric_limits<double>::infinity();
    const double rel = relL + z1.abs_error / std::abs(z1.value) +
                       z2.abs_error / std::abs(z2.value) + 1e-12;
    return {val, std::abs(val) * rel};
}

numth::DirichletCoeffs bn_table(const GlobalCurve& curve, std::size_t M) {
    if (M < 1) throw std::invalid_argument("bn_table: M >= 1 required");
    if (M > kMaxCoefficientLimit)
        throw resource_error("bn_table: M exceeds supported budget");
    const AnTable a = an_table(curve, M);
    numth::DirichletCoeffs A = numth::DirichletCoeffs::zeros(M);
    A.c = a.a;
    numth::DirichletCoeffs sd = numth::DirichletCoeffs::zeros(M);
    numth::DirichletCoeffs mu = numth::DirichletCoeffs::zeros(M);
    numth::DirichletCoeffs idmu = numth::DirichletCoeffs::zeros(M);
    for (std::size_t n = 1; n <= M; ++n) {
        const numth::ArithmeticValues v = numth::arithmetic_functions(n);
        sd.c[n] = bigint(v.sigma) * v.d;
        mu.c[n] = v.mu;
        idmu.c[n] = bigint(n) * v.mu;
    }
    const numth::DirichletCoeffs mumu = numth::dirichlet_convolve(mu, mu);
    return numth::dirichlet_convolve(
        numth::dirichlet_convolve(numth::dirichlet_convolve(A, sd), mumu), idmu);
}

Residue residue_at_2(const GlobalCurve& curve) {
    const std::size_t M = 100000;
    const LResult L = eval_L(curve, {2.0, 0.0}, M);
    const double z3 = real_zeta(3.0);
    double bad = 1.0;
    for (const PrimeRecord& r : curve.bad_primes) {
        const double p = static_cast<double>(r.p);
        bad *= (1.0 - 1.0 / p) * (1.0 - static_cast<double>(r.a_p) / (p * p)) /
               (1.0 - 1.0 / (p * p * p));
    }
    Residue out;
    out.formula = L.eval.value.real() / z3 * bad;
    // (s - 2) B(s) sampled at s = 2 + 10^{-k}, k = 2..4, extrapolated to
    // h = 0 by the quadratic through the three points.
    const double h[3] = {1e-2, 1e-3, 1e-4};
    double v[3];
    for (int i = 0; i < 3; ++i) {
        const ComplexEval b =
            eval_B_global(curve, {2.0 + h[i], 0.0}, M, BPath::factored);
        v[i] = h[i] * b.value.real();
    }
    double numeric = 0.0;
    for (int k = 0; k < 3; ++k) {
        double w = 1.0;
        for (int j = 0; j < 3; ++j)
            if (j != k) w *= (0.0 - h[j]) / (h[k] - h[j]);
        numeric += w * v[k];
    }
    out.numeric = numeric;
    if (std::abs(out.formula - out.numeric) > 1e-3 * std::abs(out.formula))
        throw std::logic_error(
            "residue_at_2: closed form and numeric limit disagree beyond 1e-3");
    return out;
}

double functional_equation_global(const GlobalCurve& curve,
                                  std::complex<double> s) {
    (void)curve;
    require_finite(s, "functional_equation_global");
    // Comparing B(1-s) with the reflected combination needs both B(s) and
    // B(1-s); each requires zeta(arg - 1) in the supported region Re > 0,
    // i.e. Re s > 1 and Re(1-s) > 1 simultaneously, which is empty.
    if (!(s.real() > 1.0))
        throw std::domain_error(
            "functional_equation_global: B(s) needs Re s > 1; the requested s "
            "violates it");
    throw std::domain_error(
        "functional_equation_global: B(1-s) needs Re(1-s) > 1, impossible "
        "alongside Re s > 1; the comparison domain is empty");
}

double log_integral_from_2(double x) {
    if (!(x > 2.0)) return 0.0;
    // Adaptive Simpson on 1/log t over [2, x].
    struct Impl {
        static double f(double t) { return 1.0 / std::log(t); }
        static double simpson(double a, double b) {
            const double m = 0.5 * (a + b);
            return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        }
        static double rec(double a, double b, double whole, double tol, int depth) {
            const double m = 0.5 * (a + b);
            const double left = simpson(a, m);
            const double right = simpson(m, b);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
                return left + right + delta / 15.0;
            return rec(a, m, left, 0.5 * tol, depth - 1) +
                   rec(m, b, right, 0.5 * tol, depth - 1);
        }
    };
    return Impl::rec(2.0, x, Impl::simpson(2.0, x), 1e-10, 48);
}

DeuringCensus deuring_census(const GlobalCurve& curve, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("deuring_census: x must be finite");
    if (!curve.cm)
        throw std::domain_error(
            "deuring_census: the census requires a curve with complex "
            "multiplication");
    if (x > 1e6)
        throw resource_error("deuring_census: x exceeds the supported budget 1e6");
    DeuringCensus out;
    if (x < 2.0) return out;
    const std::uint64_t limit = static_cast<std::uint64_t>(x);
    auto tbl = good_ap_table(curve, limit);
    std::uint64_t count = 0;
    for (std::uint64_t p : tbl->primes) {
        if (p > limit) break;
        const ApInfo info = ap_info(curve, p, *tbl);
        if (!info.good) continue;
        if (info.a_p % static_cast<std::int64_t>(p) == 0) ++count;
    }
    out.count = count;
    out.li_half = 0.5 * log_integral_from_2(x);
    out.ratio = out.li_half > 0.0 ? static_cast<double>(count) / out.li_half : 0.0;
    return out;
}

std::vector<GlobalCurve> parse_global_catalog(std::istream& in) {
    std::vector<GlobalCurve> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream iss(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (iss >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() < 5)
            throw std::invalid_argument("curve catalog line " +
                                        std::to_string(lineno) +
                                        ": expected five coefficients");
        std::int64_t a[5];
        for (int i = 0; i < 5; ++i)
            a[i] = parse_int_token(tokens[i], lineno, "coefficient");
        std::size_t pos = 5;
        bool cm = false;
        if (pos < tokens.size() && (tokens[pos] == "cm" || tokens[pos] == "ncm")) {
            cm = tokens[pos] == "cm";
            ++pos;
        }
        std::vector<PrimeRecord> supplied;
        for (; pos < tokens.size(); ++pos) {
            const std::string& rec = tokens[pos];
            std::array<std::string, 4> parts;
            std::size_t start = 0;
            int field = 0;
            for (std::size_t i = 0; i <= rec.size(); ++i) {
                if (i == rec.size() || rec[i] == ':') {
                    if (field >= 4)
                        throw std::invalid_argument(
                            "curve catalog line " + std::to_string(lineno) +
                            ": record '" + rec + "' must be p:type:ap:fp");
                    parts[field++] = rec.substr(start, i - start);
                    start = i + 1;
                }
            }
            if (field != 4)
                throw std::invalid_argument("curve catalog line " +
                                            std::to_string(lineno) + ": record '" +
                                            rec + "' must be p:type:ap:fp");
            PrimeRecord r;
            const std::int64_t p = parse_int_token(parts[0], lineno, "prime");
            if (p < 2)
                throw std::invalid_argument("curve catalog line " +
                                            std::to_string(lineno) +
                                            ": record prime must be >= 2");
            r.p = static_cast<std::uint64_t>(p);
            r.reduction = parse_reduction(parts[1], lineno);
            r.a_p = parse_int_token(parts[2], lineno, "trace");
            const std::int64_t f = parse_int_token(parts[3], lineno, "exponent");
            if (f < 0 || f > 8)
                throw std::invalid_argument("curve catalog line " +
                                            std::to_string(lineno) +
                                            ": conductor exponent out of range");
            r.f_p = static_cast<unsigned>(f);
            supplied.push_back(r);
        }
        out.push_back(make_global_curve(a[0], a[1], a[2], a[3], a[4], cm, supplied));
    }
    return out;
}

std::vector<GlobalCurve> load_global_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw resource_error("cannot open curve catalog: " + path);
    return parse_global_catalog(in);
}

}  // namespace ecgf::global
