#include "ecgf/curve_local.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ecgf/common.hpp"

namespace ecgf::curve_local {

namespace {

// Dense little-endian polynomials over F_p with all coefficients reduced;
// the zero polynomial is the empty vector.
using Poly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic m.
Poly poly_rem(Poly f, const Poly& m, std::uint64_t p) {
    const std::size_t dm = m.size() - 1;
    while (f.size() > dm) {
        const std::uint64_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i < dm; ++i) {
                const std::uint64_t sub = mulmod(lead, m[i], p);
                std::uint64_t& c = f[shift + i];
                c = (c >= sub) ? c - sub : c + p - sub;
            }
        }
        f.pop_back();
    }
    trim(f);
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, std::uint64_t p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            h[i + j] = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(f[i]) * g[j] + h[i + j]) % p);
        }
    }
    trim(h);
    return h;
}

Poly poly_mulmod(const Poly& f, const Poly& g, const Poly& m, std::uint64_t p) {
    return poly_rem(poly_mul(f, g, p), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly r{1};
    base = poly_rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_add(Poly f, const Poly& g, std::uint64_t p) {
    if (f.size() < g.size()) f.resize(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = (f[i] + g[i]) % p;
    trim(f);
    return f;
}

Poly poly_sub(Poly f, const Poly& g, std::uint64_t p) {
    if (f.size() < g.size()) f.resize(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i)
        f[i] = (f[i] >= g[i]) ? f[i] - g[i] : f[i] + p - g[i];
    trim(f);
    return f;
}

Poly poly_gcd(Poly f, Poly g, std::uint64_t p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly gm = g;
        const std::uint64_t inv = invmod(gm.back(), p);
        for (auto& c : gm) c = mulmod(c, inv, p);
        f = poly_rem(std::move(f), gm, p);
        std::swap(f, g);
    }
    if (!f.empty()) {
        const std::uint64_t inv = invmod(f.back(), p);
        for (auto& c : f) c = mulmod(c, inv, p);
    }
    return f;
}

void check_prime_field(std::uint64_t p, const char* who) {
    if (p < 5 || !numth::is_prime(p))
        throw std::invalid_argument(std::string(who) + ": p must be a prime >= 5");
}

std::uint64_t discriminant_mod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t a3 = mulmod(a, mulmod(a, a, p), p);
    return (mulmod(4 % p, a3, p) + mulmod(27 % p, mulmod(b, b, p), p)) % p;
}

// Level scans are exact big-integer work whose memory grows quadratically in
// the cutoff; cap them well above any realistic request.
constexpr std::uint64_t kMaxScanLevels = 200000;

}  // namespace

CurveFp make_curve(std::uint64_t p, std::int64_t A, std::int64_t B) {
    check_prime_field(p, "make_curve");
    const auto sp = static_cast<std::int64_t>(p);
    const auto a = static_cast<std::uint64_t>(((A % sp) + sp) % sp);
    const auto b = static_cast<std::uint64_t>(((B % sp) + sp) % sp);
    if (discriminant_mod_p(a, b, p) == 0)
        throw std::invalid_argument("make_curve: singular curve (4A^3 + 27B^2 = 0 mod p)");
    // #E(F_p) = 1 + p + sum_x chi(x^3 + Ax + B), so t = -sum_x chi(...).
    std::int64_t chi_sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t fx = (mulmod(x, mulmod(x, x, p), p) + mulmod(a, x, p)) % p;
        fx = (fx + b) % p;
        if (fx == 0) continue;
        chi_sum += (powmod(fx, (p - 1) / 2, p) == 1) ? 1 : -1;
    }
    const std::int64_t t = -chi_sum;
    if (static_cast<__int128>(t) * t > static_cast<__int128>(4) * p)
        throw std::logic_error("make_curve: Hasse bound violated (internal counting error)");
    const double theta =
        std::acos(std::clamp(t / (2.0 * std::sqrt(static_cast<double>(p))), -1.0, 1.0));
    return CurveFp{p, a, b, t, theta};
}

bool is_irreducible(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
    check_prime_field(p, "is_irreducible");
    if (poly.size() < 2 || poly.back() != 1)
        throw std::invalid_argument("is_irreducible: need a monic polynomial of degree >= 1");
    for (std::uint64_t c : poly)
        if (c >= p) throw std::invalid_argument("is_irreducible: coefficients must lie in [0, p)");
    const auto deg = static_cast<unsigned>(poly.size() - 1);
    const Poly x{0, 1};
    Poly xq = poly_rem(x, poly, p);
    for (unsigned k = 1; k <= deg; ++k) {
        xq = poly_powmod(std::move(xq), p, poly, p);  // x^(p^k) mod poly
        if (k < deg) {
            Poly g = poly_gcd(poly_sub(xq, poly_rem(x, poly, p), p), poly, p);
            if (g.size() != 1) return false;  // shares a factor of degree <= k
        } else if (!poly_sub(xq, poly_rem(x, poly, p), p).empty()) {
            return false;  // x^(p^deg) != x: some factor has degree > deg
        }
    }
    return true;
}

ExtField make_ext_field(std::uint64_t p, unsigned n) {
    check_prime_field(p, "make_ext_field");
    if (n < 1) throw std::invalid_argument("make_ext_field: degree must be >= 1");
    // Walk monic candidates in ascending order of the coefficient tuple
    // (c_{n-1}, ..., c_0); the weight w encodes c_i as its base-p digits, so
    // ascending w is exactly that ordering.
    for (std::uint64_t w = 0;; ++w) {
        Poly m(n + 1, 0);
        std::uint64_t v = w;
        for (unsigned i = 0; i < n && v != 0; ++i) {
            m[i] = v % p;
            v /= p;
        }
        if (v != 0)
            throw std::logic_error("make_ext_field: candidate space exhausted");
        m[n] = 1;
        if (is_irreducible(m, p)) return ExtField{p, n, std::move(m)};
    }
}

bigint count_points_oracle(const CurveFp& curve, const ExtField& field) {
    if (field.p != curve.p)
        throw std::invalid_argument("count_points_oracle: curve/field characteristic mismatch");
    if (field.n < 1 || field.modulus.size() != field.n + 1 || field.modulus.back() != 1)
        throw std::invalid_argument("count_points_oracle: malformed extension modulus");
    if (!is_irreducible(field.modulus, field.p))
        throw std::invalid_argument("count_points_oracle: reducible extension modulus");
    const std::uint64_t p = curve.p;
    unsigned __int128 qq = 1;
    for (unsigned i = 0; i < field.n && qq <= 100000; ++i) qq *= p;
    if (qq > 100000)
        throw resource_error("count_points_oracle: enumeration budget p^n <= 100000 exceeded");
    if (discriminant_mod_p(curve.A, curve.B, p) == 0)
        throw std::invalid_argument("count_points_oracle: singular curve");
    const auto q = static_cast<std::uint64_t>(qq);
    const std::uint64_t half = (q - 1) / 2;
    const Poly& m = field.modulus;
    const Poly pa = curve.A ? Poly{curve.A} : Poly{};
    const Poly pb = curve.B ? Poly{curve.B} : Poly{};

    std::int64_t chi_sum = 0;
    std::vector<std::uint64_t> digits(field.n, 0);
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        Poly x(digits);
        trim(x);
        const Poly x2 = poly_mulmod(x, x, m, p);
        Poly f = poly_mulmod(x2, x, m, p);
        if (!pa.empty()) f = poly_add(std::move(f), poly_mul(pa, x, p), p);
        f = poly_add(std::move(f), pb, p);
        if (!f.empty()) {
            const Poly r = poly_powmod(std::move(f), half, m, p);
            if (r.size() == 1 && r[0] == 1)
                ++chi_sum;
            else if (r.size() == 1 && r[0] == p - 1)
                --chi_sum;
            else
                throw std::logic_error("count_points_oracle: character value not a unit sign");
        }
        for (unsigned j = 0; j < field.n; ++j) {
            if (++digits[j] < p) break;
            digits[j] = 0;
        }
    }
    return bigint(1) + q + chi_sum;
}

TraceSeq trace_seq(const CurveFp& curve, unsigned n_max) {
    if (n_max < 1) throw std::invalid_argument("trace_seq: n_max must be >= 1");
    TraceSeq s{curve, {}};
    s.t_seq.reserve(n_max + 1);
    s.t_seq.emplace_back(2);
    s.t_seq.emplace_back(curve.t);
    const bigint t = curve.t;
    const bigint p = curve.p;
    for (unsigned n = 1; n < n_max; ++n)
        s.t_seq.push_back(s.t_seq[n] * t - p * s.t_seq[n - 1]);
    return s;
}

bigint count_points_weil(const CurveFp& curve, unsigned n) {
    if (n < 1) throw std::invalid_argument("count_points_weil: n must be >= 1");
    const TraceSeq s = trace_seq(curve, n);
    return 1 + boost::multiprecision::pow(bigint(curve.p), n) - s.t_seq[n];
}

bool is_supersingular(const CurveFp& curve) { return curve.t == 0; }

bigint congruence_class(const CurveFp& curve, unsigned n) {
    if (n < 1) throw std::invalid_argument("congruence_class: n must be >= 1");
    const bigint pn = boost::multiprecision::pow(bigint(curve.p), n);
    const bigint a = count_points_weil(curve, n) % pn;
    if (curve.t == 0) {
        bigint expected = 1;
        if (n % 2 == 0) {
            const unsigned k = n / 2;
            const bigint twopk = 2 * boost::multiprecision::pow(bigint(curve.p), k);
            expected = (k % 2 == 1) ? bigint(1 + twopk) : bigint(1 - twopk);
            expected %= pn;
            if (expected < 0) expected += pn;
        }
        if (a != expected)
            throw std::logic_error("congruence_class: supersingular closed form violated");
    } else if (a == 1) {
        throw std::logic_error("congruence_class: ordinary curve congruent to 1");
    }
    return a;
}

CensusRecord census(const CurveFp& curve, const bigint& a, double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("census: x must be >= 2");
    if (x > static_cast<double>(kMaxScanLevels))
        throw resource_error("census: level budget exceeded");
    CensusRecord rec;
    rec.curve = curve;
    rec.a = a;
    rec.x = x;
    const auto nmax = static_cast<unsigned>(std::floor(x));
    const TraceSeq ts = trace_seq(curve, nmax);
    const bigint p = curve.p;
    bigint pn = p;
    for (unsigned n = 2; n <= nmax; ++n) {
        pn *= p;
        bigint an = a % pn;
        if (an < 0) an += pn;
        const bigint cn = 1 + pn - ts.t_seq[n];
        if (cn % pn != an) continue;
        const bigint num = 1 - ts.t_seq[n] - an;
        if (num % pn != 0)
            throw std::logic_error("census: congruence bookkeeping failed");
        const bigint kq = num / pn;
        if (kq != 0 && kq != -1)
            throw std::logic_error("census: solved quotient outside {0, -1}");
        rec.hits.push_back(n);
        rec.k.push_back(kq == 0 ? 0 : -1);
    }
    rec.count = rec.hits.size();
    if (rec.count == 0) return rec;

    rec.n0 = rec.hits.front();
    rec.N = rec.hits.back();
    const auto pd = static_cast<double>(curve.p);
    const double ad = rec.a.convert_to<double>();
    rec.small_bound = 1.0 + 2.0 * std::sqrt(std::pow(pd, rec.n0));
    rec.large_hi = std::pow(pd, rec.N);
    rec.large_lo = rec.large_hi + 1.0 - 2.0 * std::sqrt(rec.large_hi);
    rec.small_side = ad <= rec.small_bound;
    rec.large_side = rec.large_lo <= ad && ad <= rec.large_hi;

    // Epsilon-form display: pick the empirical threshold delta as the last
    // level at which the census prefix count escapes the eps-sandwich
    // (1 -/+ eps) * (floor(u) - 1); beyond delta the sandwich holds.
    rec.eps = 0.25;
    std::vector<std::size_t> prefix(nmax + 1, 0);
    for (unsigned u = 2, hi = 0, c = 0; u <= nmax; ++u) {
        while (hi < rec.hits.size() && rec.hits[hi] <= u) {
            ++c;
            ++hi;
        }
        prefix[u] = c;
    }
    unsigned delta = 2;
    for (unsigned u = 3; u <= nmax; ++u) {
        const auto cu = static_cast<double>(prefix[u]);
        if (cu < (1.0 - rec.eps) * (u - 1.0) || cu > (1.0 + rec.eps) * (u - 1.0)) delta = u;
    }
    rec.delta = delta;
    const double dd = delta;
    rec.eps_lhs = (static_cast<double>(nmax) - 1.0) +
                  curve.theta * (rec.eps * (dd - 1.0) * (dd - 1.0) / 2.0 +
                                 (1.0 + rec.eps) * (x - 1.0) * (x - 1.0) / 2.0);
    const double pmd = std::pow(pd, -dd / 2.0);
    rec.eps_rhs = (1.0 - ad) / 2.0 *
                  (dd * (1.0 / pd - pmd) + (1.0 + rec.eps) * (dd - 1.0) * pmd +
                   (1.0 + rec.eps) * (2.0 / std::log(pd)) * pmd);
    return rec;
}

RatioCensusRecord ratio_census(const CurveFp& curve, double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("ratio_census: x must be >= 2");
    if (x > static_cast<double>(kMaxScanLevels))
        throw resource_error("ratio_census: level budget exceeded");
    const auto nmax = static_cast<std::uint64_t>(std::floor(x));
    const numth::PrimeTable table = numth::sieve_primes(nmax);
    const TraceSeq ts = trace_seq(curve, static_cast<unsigned>(nmax));
    const bigint c1 = 1 + bigint(curve.p) - curve.t;

    RatioCensusRecord rec;
    for (std::uint64_t l : table.primes) {
        const bigint cl =
            1 + boost::multiprecision::pow(bigint(curve.p), static_cast<unsigned>(l)) -
            ts.t_seq[l];
        if (cl % c1 != 0) continue;
        bigint ratio = cl / c1;
        if (numth::is_probable_prime(ratio))
            rec.hits.emplace_back(static_cast<unsigned>(l), std::move(ratio));
    }
    rec.count = rec.hits.size();
    if (rec.count == 0) {
        rec.theta = -std::numeric_limits<double>::infinity();
        rec.theta_exact = rec.theta;
        rec.pi_at_theta = 0;
        rec.proof_identity = true;  // pi(x^theta) -> 0 vacuously matches
        return rec;
    }
    const std::uint64_t lmax = rec.hits.back().first;
    rec.theta = std::log(static_cast<double>(lmax)) / std::log(x);
    rec.pi_at_theta = table.pi(lmax);
    rec.proof_identity = rec.count == rec.pi_at_theta;
    if (rec.count > rec.pi_at_theta)
        throw std::logic_error("ratio_census: more hits than primes up to the largest hit");
    // Existence witness: the count-th prime q satisfies pi(x^log_x(q)) = count.
    const std::uint64_t witness = table.primes.at(rec.count - 1);
    if (table.pi(witness) != rec.count)
        throw std::logic_error("ratio_census: existence witness failed");
    rec.theta_exact = std::log(static_cast<double>(witness)) / std::log(x);
    return rec;
}

RatioBounds ratio_bounds(const CurveFp& curve, unsigned n, double eps) {
    if (n < 1) throw std::invalid_argument("ratio_bounds: n must be >= 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("ratio_bounds: eps must lie in (0, 1)");
    const TraceSeq ts = trace_seq(curve, n);
    const bigint pn = boost::multiprecision::pow(bigint(curve.p), n);
    const bigint cn = 1 + pn - ts.t_seq[n];
    const bigint c1 = 1 + bigint(curve.p) - curve.t;

    RatioBounds rb;
    rb.ratio = boost::multiprecision::cpp_rational(cn, c1).convert_to<double>();
    rb.ratio_ge_one = cn >= c1;

    const auto pd = static_cast<double>(curve.p);
    const double s = std::sin(curve.theta / 2.0);
    const double half_power = std::pow(pd, (n - 1) / 2.0);
    const double root = 1.0 + (2.0 * half_power - 1.0) / s;
    rb.bound_angle = root * root;

    const double pe = std::pow(pd, 0.5 + eps);
    const double outer = std::fabs(1.0 - std::pow(pd, 0.5 - eps));
    const double numer = outer + std::sqrt(pd) * (1.0 - 1.0 / pe);
    const double denom =
        std::fabs(1.0 - std::fabs(static_cast<double>(curve.t)) / pe - std::pow(pd, -2.0 * eps)) *
        (1.0 - 1.0 / pe) * outer;
    rb.bound_contour = numer / denom * std::pow(pe, static_cast<double>(n - 1));

    rb.angle_ok = rb.ratio <= rb.bound_angle;
    rb.contour_ok = rb.ratio <= rb.bound_contour;
    return rb;
}

double tauberian_sum(const CurveFp& curve, double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("tauberian_sum: x must be >= 1");
    if (x > static_cast<double>(kMaxScanLevels))
        throw resource_error("tauberian_sum: level budget exceeded");
    const auto nmax = static_cast<unsigned>(std::floor(x));
    const TraceSeq ts = trace_seq(curve, nmax);
    double sum = 0.0;
    bigint pn = 1;
    for (unsigned n = 1; n <= nmax; ++n) {
        pn *= curve.p;
        sum += boost::multiprecision::cpp_rational(1 + pn - ts.t_seq[n], pn).convert_to<double>();
    }
    return sum;
}

bool count_monotone_check(const CurveFp& curve, unsigned n_max) {
    if (n_max < 2) throw std::invalid_argument("count_monotone_check: n_max must be >= 2");
    const TraceSeq ts = trace_seq(curve, n_max);
    bigint pn = bigint(curve.p) * curve.p;
    bigint prev = 1 + pn - ts.t_seq[2];
    for (unsigned n = 3; n <= n_max; ++n) {
        pn *= curve.p;
        const bigint cn = 1 + pn - ts.t_seq[n];
        if (cn <= prev) return false;
        prev = cn;
    }
    return true;
}

std::vector<CurveFp> parse_curve_catalog(std::istream& in) {
    std::vector<CurveFp> curves;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long p = 0, A = 0, B = 0;
        if (!(fields >> p)) continue;  // blank or comment-only line
        std::string extra;
        if (!(fields >> A >> B) || (fields >> extra) || p <= 0)
            throw std::invalid_argument("curve catalog: malformed line " + std::to_string(lineno));
        curves.push_back(make_curve(static_cast<std::uint64_t>(p), A, B));
    }
    return curves;
}

std::vector<CurveFp> load_curve_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw resource_error("cannot open curve catalog: " + path);
    return parse_curve_catalog(in);
}

}  // namespace ecgf::curve_local
