#include "ecgf/genfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ecgf::genfun {

namespace {

using numth::bigint;
using mpf = boost::multiprecision::cpp_bin_float_50;

// Minimal complex arithmetic over the 50-digit floats (std::complex is only
// specified for the builtin floating types).
struct mpc {
    mpf re{0}, im{0};
};

mpc operator+(const mpc& a, const mpc& b) { return {a.re + b.re, a.im + b.im}; }
mpc operator*(const mpc& a, const mpc& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
mpc operator*(const mpf& a, const mpc& b) { return {a * b.re, a * b.im}; }
mpc operator-(const mpf& a, const mpc& b) { return {a - b.re, -b.im}; }
mpc conj(const mpc& a) { return {a.re, -a.im}; }
mpf norm(const mpc& a) { return a.re * a.re + a.im * a.im; }
mpf abs(const mpc& a) { return sqrt(norm(a)); }
mpc operator/(const mpc& a, const mpc& b) {
    const mpf d = norm(b);
    const mpc n = a * conj(b);
    return {n.re / d, n.im / d};
}

// exp(w) for complex w.
mpc mp_exp(const mpc& w) {
    const mpf m = exp(w.re);
    return {m * cos(w.im), m * sin(w.im)};
}

const mpf& mp_pi() {
    static const mpf pi = atan(mpf(1)) * 4;
    return pi;
}

// Unit roots e^{2 pi i j / N}, cached per N (the tables are tiny and the
// trigonometric fills are the expensive part).
const std::vector<mpc>& unit_roots(unsigned N) {
    static std::map<unsigned, std::vector<mpc>> cache;
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<mpc> roots(N);
    for (unsigned j = 0; j < N; ++j) {
        const mpf theta = 2 * mp_pi() * j / N;
        roots[j] = {cos(theta), sin(theta)};
    }
    return cache.emplace(N, std::move(roots)).first->second;
}

std::uint64_t point_count_p(const curve_local::CurveFp& curve) {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(curve.p) + 1 - curve.t);
}

// Series value at z in 50-digit arithmetic; shared by the quadrature and the
// functional-equation check.  No pole guard here — callers check first.
mpc series_value_mp(const curve_local::CurveFp& curve, Kind kind, const mpc& z) {
    const mpf p(curve.p);
    const mpf t(curve.t);
    const mpc trace_factor = mpf(1) - t * z + p * (z * z);
    if (kind == Kind::A) return mpc{mpf(1), mpf(0)} / trace_factor;
    const mpc numer = mpf(point_count_p(curve)) * (z * (mpf(1) - p * (z * z)));
    const mpc denom = trace_factor * ((mpf(1) - z) * (mpf(1) - p * z));
    return numer / denom;
}

void check_curve(const curve_local::CurveFp& curve) {
    if (curve.p < 5) throw std::invalid_argument("genfun: curve must come from make_curve");
}

// z = p^{-s} for double s, in 50-digit arithmetic.
mpc p_pow_minus_s(std::uint64_t p, std::complex<double> s) {
    const mpf lp = log(mpf(p));
    return mp_exp(mpc{-mpf(s.real()) * lp, -mpf(s.imag()) * lp});
}

double pole_distance(const LocalGenFun& fun, std::complex<double> z) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const std::complex<double>& pole : pole_locations(fun))
        dmin = std::min(dmin, std::abs(z - pole));
    return dmin;
}

constexpr double kPoleDistance = 1e-9;

// Innermost pole radius of the z-series for the given kind.
double inner_pole_radius(const LocalGenFun& fun) {
    const double p = static_cast<double>(fun.curve.p);
    return fun.kind == Kind::A ? 1.0 / std::sqrt(p) : 1.0 / p;
}

struct QuadratureResult {
    mpc raw;            // trapezoid value before snapping
    double abs_error;   // aliasing bound
};

QuadratureResult coeff_quadrature(const LocalGenFun& fun, unsigned n, double rho,
                                  unsigned quad_points) {
    check_curve(fun.curve);
    if (fun.kind == Kind::B_s)
        throw std::invalid_argument(
            "coeff_cauchy: kind B_s has no Taylor expansion; use kind B");
    if (quad_points < 16)
        throw std::invalid_argument("coeff_cauchy: quad_points must be >= 16");
    const double r_in = inner_pole_radius(fun);
    if (!(rho > 0.0) || !(rho < r_in))
        throw std::invalid_argument(
            "coeff_cauchy: rho must lie strictly between 0 and the innermost "
            "pole radius of the kind");

    const unsigned N = quad_points;
    const std::vector<mpc>& w = unit_roots(N);
    const mpf rho_mp(rho);
    mpc sum{};
    for (unsigned j = 0; j < N; ++j) {
        const mpc z = rho_mp * w[j];
        const mpc f = series_value_mp(fun.curve, fun.kind, z);
        // e^{-i n theta_j} = conj(w[(n j) mod N]); exact index arithmetic.
        const mpc kernel = conj(w[static_cast<unsigned>(
            (static_cast<std::uint64_t>(n) * j) % N)]);
        sum = sum + f * kernel;
    }
    const mpf scale = pow(rho_mp, static_cast<int>(n)) * N;
    QuadratureResult out;
    out.raw = {sum.re / scale, sum.im / scale};
    // Trapezoid aliasing: the computed value is sum_k c_{n+kN} rho^{kN}; with
    // simple poles on |z| = r_in the tail is ~ |c_n| q^N / (1 - q^N) with
    // q = rho / r_in < 1.
    const double q_pow = std::pow(rho / r_in, static_cast<double>(N));
    const double mag = static_cast<double>(abs(out.raw));
    out.abs_error = (mag + 1.0) * q_pow / (1.0 - q_pow);
    return out;
}

bigint snap_to_integer(const mpc& raw) {
    const mpf rounded = round(raw.re);
    if (abs(raw.re - rounded) > 1e-6 || abs(raw.im) > 1e-6)
        throw std::logic_error(
            "coeff_cauchy: quadrature result is not within 1e-6 of an integer");
    return rounded.convert_to<bigint>();
}

}  // namespace

std::vector<std::complex<double>> pole_locations(const LocalGenFun& fun) {
    check_curve(fun.curve);
    const double p = static_cast<double>(fun.curve.p);
    const double t = static_cast<double>(fun.curve.t);
    // Roots of 1 - t z + p z^2; the discriminant t^2 - 4p is negative for
    // every admissible trace, giving a conjugate pair on |z| = 1/sqrt(p).
    const double re = t / (2.0 * p);
    const double im = std::sqrt(4.0 * p - t * t) / (2.0 * p);
    std::vector<std::complex<double>> poles = {{re, im}, {re, -im}};
    if (fun.kind != Kind::A) {
        poles.emplace_back(1.0, 0.0);
        poles.emplace_back(1.0 / p, 0.0);
    }
    return poles;
}

ComplexEval eval_local(const LocalGenFun& fun, std::complex<double> z) {
    check_curve(fun.curve);
    const double p = static_cast<double>(fun.curve.p);
    const double t = static_cast<double>(fun.curve.t);
    const double eps = std::numeric_limits<double>::epsilon();

    double cond = 1.0;
    std::complex<double> zz = z;
    if (fun.kind == Kind::B_s) {
        // z is the Dirichlet variable s; evaluate the z-series at p^{-s}.
        zz = std::exp(-z * std::log(p));
        cond += std::abs(z) * std::log(p);
    }
    const LocalGenFun zkind{fun.curve, fun.kind == Kind::A ? Kind::A : Kind::B};
    if (pole_distance(zkind, zz) <= kPoleDistance)
        throw std::invalid_argument("eval_local: argument within 1e-9 of a pole");

    // Cancellation measure of a factor: magnitudes of its terms over the
    // magnitude of their sum (floored — a numerator factor may vanish).
    const auto cancellation = [](double terms, std::complex<double> factor) {
        return terms / std::max(std::abs(factor), std::numeric_limits<double>::min());
    };
    const std::complex<double> z2 = zz * zz;
    const std::complex<double> trace_factor = 1.0 - t * zz + p * z2;
    cond += cancellation(1.0 + std::abs(t * zz) + std::abs(p * z2), trace_factor);

    ComplexEval out;
    if (fun.kind == Kind::A) {
        out.value = 1.0 / trace_factor;
    } else {
        const std::complex<double> numer_factor = 1.0 - p * z2;
        const std::complex<double> one_minus_z = 1.0 - zz;
        const std::complex<double> one_minus_pz = 1.0 - p * zz;
        cond += cancellation(1.0 + std::abs(p * z2), numer_factor);
        cond += cancellation(1.0 + std::abs(zz), one_minus_z);
        cond += cancellation(1.0 + std::abs(p * zz), one_minus_pz);
        out.value = static_cast<double>(point_count_p(fun.curve)) * zz * numer_factor /
                    (trace_factor * one_minus_z * one_minus_pz);
    }
    out.abs_error = std::abs(out.value) * cond * 4.0 * eps;
    return out;
}

double default_rho(const LocalGenFun& fun) {
    check_curve(fun.curve);
    return 0.5 * inner_pole_radius(fun);
}

ComplexEval coeff_cauchy(const LocalGenFun& fun, unsigned n, double rho,
                         unsigned quad_points) {
    const QuadratureResult q = coeff_quadrature(fun, n, rho, quad_points);
    const bigint snapped = snap_to_integer(q.raw);
    ComplexEval out;
    out.value = {snapped.convert_to<double>(), 0.0};
    out.abs_error = q.abs_error;
    return out;
}

ComplexEval coeff_cauchy(const LocalGenFun& fun, unsigned n) {
    return coeff_cauchy(fun, n, default_rho(fun), 256);
}

numth::bigint coeff_cauchy_int(const LocalGenFun& fun, unsigned n, double rho,
                               unsigned quad_points) {
    return snap_to_integer(coeff_quadrature(fun, n, rho, quad_points).raw);
}

std::complex<double> coeff_cauchy_raw(const LocalGenFun& fun, unsigned n, double rho,
                                      unsigned quad_points) {
    const QuadratureResult q = coeff_quadrature(fun, n, rho, quad_points);
    return {static_cast<double>(q.raw.re), static_cast<double>(q.raw.im)};
}

double functional_equation_defect(const curve_local::CurveFp& curve,
                                  std::complex<double> s) {
    check_curve(curve);
    const LocalGenFun zb{curve, Kind::B};
    const mpc z1 = p_pow_minus_s(curve.p, s);
    const mpc z2 = p_pow_minus_s(curve.p, std::complex<double>(1.0, 0.0) - s);
    for (const mpc& z : {z1, z2}) {
        const std::complex<double> zd(static_cast<double>(z.re),
                                      static_cast<double>(z.im));
        if (pole_distance(zb, zd) <= kPoleDistance)
            throw std::invalid_argument(
                "functional_equation_defect: s or 1-s maps within 1e-9 of a pole");
    }
    const mpc b1 = series_value_mp(curve, Kind::B, z1);
    const mpc b2 = series_value_mp(curve, Kind::B, z2);
    const double defect = static_cast<double>(abs(b1 + b2));
    const double mag = static_cast<double>(abs(b1));
    if (defect > 1e-10 * (1.0 + mag))
        throw std::logic_error("functional_equation_defect: defect exceeds contract");
    return defect;
}

std::vector<std::complex<double>> local_zeros(const curve_local::CurveFp& curve,
                                              int k_lo, int k_hi) {
    check_curve(curve);
    if (k_lo > k_hi) throw std::invalid_argument("local_zeros: empty range");
    if (static_cast<long long>(k_hi) - k_lo >= 10'000'000)
        throw resource_error("local_zeros: range too large");
    const double p = static_cast<double>(curve.p);
    const double log_p = std::log(p);
    const double pi = std::acos(-1.0);
    const LocalGenFun zb{curve, Kind::B};

    std::vector<std::complex<double>> zeros;
    zeros.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (long long k = k_lo; k <= k_hi; ++k) {
        // s_k maps to z_k = (-1)^k / sqrt(p).  The numerator zero there is
        // cancelled only if the trace factor also vanishes, i.e.
        // (-1)^k t = 2 sqrt(p); exact integer form: t^2 = 4p with matching
        // sign.  Impossible for prime p, but checked exactly as specified.
        const bool k_even = (k % 2) == 0;
        const bool cancelled =
            static_cast<__int128>(curve.t) * curve.t == static_cast<__int128>(4) * curve.p &&
            ((curve.t >= 0) == k_even);
        if (cancelled) continue;
        // Verify the zero through the z-series at the exactly-represented
        // image point (avoids the k-dependent rounding of exp(i pi k)).
        const std::complex<double> zk((k_even ? 1.0 : -1.0) / std::sqrt(p), 0.0);
        const ComplexEval val = eval_local(zb, zk);
        if (std::abs(val.value) > 1e-8)
            throw std::logic_error("local_zeros: lattice point failed |B| <= 1e-8");
        zeros.emplace_back(0.5, pi * static_cast<double>(k) / log_p);
    }
    return zeros;
}

}  // namespace ecgf::genfun
