// Command-line front end: every library operation exposed as a subcommand,
// with JSON output by default (CSV where a table is the natural shape) and
// uniform exit codes:
//   0  success
//   1  usage error (unknown command, bad flags) or failed acceptance run
//   2  domain error (invalid or out-of-domain arguments)
//   3  resource error (an explicit computation budget was exceeded)
//   4  internal error (a library self-check failed)
// All floating-point text output is printed with 17 significant digits so a
// rerun can be compared bit for bit.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecgf/common.hpp"
#include "ecgf/curve_local.hpp"
#include "ecgf/genfun.hpp"
#include "ecgf/global.hpp"
#include "ecgf/modform.hpp"
#include "ecgf/numth.hpp"
#include "ecgf/selftest.hpp"

namespace {

using json = nlohmann::json;
using ecgf::numth::bigint;
using cplx = std::complex<double>;

std::string d17(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

// Integers that fit binary64-exactly in JSON stay numbers; wider values
// are emitted as decimal strings.
json jbig(const bigint& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

json jeval(const ecgf::ComplexEval& e) {
    return {{"re", e.value.real()},
            {"im", e.value.imag()},
            {"abs_error", e.abs_error}};
}

// Non-finite doubles have no JSON number representation; they become null.
json jfin(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

bigint parse_bigint(const std::string& s) {
    try {
        return bigint(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
}

std::string default_global_catalog() {
    const char* env = std::getenv("ECGF_CATALOG");
    return (env != nullptr && *env != '\0') ? env : "data/curves_global.txt";
}

// ---- shared option bundles ----

struct LocalSel {
    std::uint64_t p = 0;
    std::int64_t A = 0, B = 0;
};

void add_local_sel(CLI::App* sc, const std::shared_ptr<LocalSel>& ls) {
    sc->add_option("--p", ls->p, "field characteristic (prime >= 5)")
        ->required();
    sc->add_option("--A", ls->A, "coefficient A of y^2 = x^3 + Ax + B")
        ->required();
    sc->add_option("--B", ls->B, "coefficient B of y^2 = x^3 + Ax + B")
        ->required();
}

ecgf::curve_local::CurveFp make_local(const LocalSel& ls) {
    return ecgf::curve_local::make_curve(ls.p, ls.A, ls.B);
}

struct GlobalSel {
    std::string catalog = default_global_catalog();
    std::size_t index = 0;
};

void add_global_sel(CLI::App* sc, const std::shared_ptr<GlobalSel>& gs) {
    sc->add_option("--catalog", gs->catalog,
                   "curve catalog path (default: $ECGF_CATALOG or "
                   "data/curves_global.txt)");
    sc->add_option("--curve", gs->index, "zero-based index into the catalog");
}

ecgf::global::GlobalCurve pick_global(const GlobalSel& gs) {
    const auto cat = ecgf::global::load_global_catalog(gs.catalog);
    if (gs.index >= cat.size())
        throw std::invalid_argument(
            "curve index " + std::to_string(gs.index) +
            " out of range: catalog has " + std::to_string(cat.size()) +
            " curve(s)");
    return cat[gs.index];
}

struct FormSel {
    std::string an_file;
    std::uint64_t level = 11;
    std::size_t eta_M = 100000;
    double u_max = 3.0;
    double quad_tol = 1e-12;
    std::size_t series_terms = 600;
};

void add_form_sel(CLI::App* sc, const std::shared_ptr<FormSel>& fs) {
    sc->add_option("--an-file", fs->an_file,
                   "coefficient file ('n a_n' per line); when absent the "
                   "built-in level-11 eta-product coefficients are used");
    sc->add_option("--level", fs->level, "form level for --an-file input");
    sc->add_option("--eta-M", fs->eta_M,
                   "coefficient count for the built-in eta product");
    sc->add_option("--umax", fs->u_max, "upper quadrature cutoff");
    sc->add_option("--tol", fs->quad_tol, "quadrature error target");
    sc->add_option("--terms", fs->series_terms, "kernel series budget");
}

ecgf::modform::CuspForm build_form(const FormSel& fs) {
    if (!fs.an_file.empty())
        return ecgf::modform::make_cusp_form(
            fs.level, ecgf::modform::load_an_file(fs.an_file));
    return ecgf::modform::make_cusp_form(
        11, ecgf::modform::eta11_coeffs(fs.eta_M));
}

ecgf::modform::HEvalConfig build_cfg(const FormSel& fs) {
    ecgf::modform::HEvalConfig cfg;
    cfg.u_max = fs.u_max;
    cfg.quad_tol = fs.quad_tol;
    cfg.series_terms = fs.series_terms;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Point-count censuses, local and global generating series, and the "
        "modular integral transform, from one binary."};
    app.require_subcommand(1);
    app.fallthrough();

    int jobs = 0;
    std::uint64_t seed = 20260815;
    app.add_option("--jobs", jobs,
                   "worker thread cap (0 = hardware concurrency)");
    app.add_option("--seed", seed, "seed for randomized checks");

    // Parsing only records what to do; the work happens after parse so that
    // library exceptions map to exit codes in exactly one place.
    std::function<int()> action;

    // ---- count ----
    {
        auto* sc = app.add_subcommand(
            "count", "#E(F_{p^n}) by the trace recursion and/or the "
                     "enumeration oracle");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto n = std::make_shared<unsigned>(1);
        auto method = std::make_shared<std::string>("both");
        sc->add_option("--n", *n, "extension degree")->required();
        sc->add_option("--method", *method, "weil | oracle | both")
            ->check(CLI::IsMember({"weil", "oracle", "both"}));
        sc->callback([ls, n, method, &action] {
            action = [ls, n, method] {
                const auto e = make_local(*ls);
                json out;
                if (*method != "oracle")
                    out["weil"] =
                        jbig(ecgf::curve_local::count_points_weil(e, *n));
                if (*method != "weil")
                    out["oracle"] = jbig(ecgf::curve_local::count_points_oracle(
                        e, ecgf::curve_local::make_ext_field(ls->p, *n)));
                emit(out);
                return 0;
            };
        });
    }

    // ---- census ----
    {
        auto* sc = app.add_subcommand(
            "census", "levels n <= x with #E(F_{p^n}) = a (mod p^n)");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto a = std::make_shared<std::string>("1");
        auto x = std::make_shared<double>(0.0);
        sc->add_option("--a", *a, "congruence target (integer)");
        sc->add_option("--x", *x, "level cutoff")->required();
        sc->callback([ls, a, x, &action] {
            action = [ls, a, x] {
                const auto rec = ecgf::curve_local::census(
                    make_local(*ls), parse_bigint(*a), *x);
                json out{{"a", jbig(rec.a)},
                         {"x", rec.x},
                         {"hits", rec.hits},
                         {"k", rec.k},
                         {"count", rec.count},
                         {"n0", rec.n0},
                         {"N", rec.N},
                         {"small_bound", rec.small_bound},
                         {"large_lo", rec.large_lo},
                         {"large_hi", rec.large_hi},
                         {"small_side", rec.small_side},
                         {"large_side", rec.large_side},
                         {"eps", rec.eps},
                         {"delta", rec.delta},
                         {"eps_lhs", rec.eps_lhs},
                         {"eps_rhs", rec.eps_rhs}};
                emit(out);
                return 0;
            };
        });
    }

    // ---- ratio-census ----
    {
        auto* sc = app.add_subcommand(
            "ratio-census",
            "prime levels l <= x with an integral, probably prime growth "
            "ratio #E(F_{p^l})/#E(F_p)");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto x = std::make_shared<double>(0.0);
        sc->add_option("--x", *x, "level cutoff")->required();
        sc->callback([ls, x, &action] {
            action = [ls, x] {
                const auto rec =
                    ecgf::curve_local::ratio_census(make_local(*ls), *x);
                json hits = json::array();
                for (const auto& [l, ratio] : rec.hits)
                    hits.push_back({{"l", l}, {"ratio", jbig(ratio)}});
                emit(json{{"hits", hits},
                          {"count", rec.count},
                          {"theta", jfin(rec.theta)},
                          {"theta_exact", jfin(rec.theta_exact)},
                          {"pi_at_theta", rec.pi_at_theta},
                          {"proof_identity", rec.proof_identity}});
                return 0;
            };
        });
    }

    // ---- bounds ----
    {
        auto* sc = app.add_subcommand(
            "bounds", "explicit upper bounds for #E(F_{p^n})/#E(F_p)");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto n = std::make_shared<unsigned>(1);
        auto eps = std::make_shared<double>(0.25);
        sc->add_option("--n", *n, "extension degree")->required();
        sc->add_option("--eps", *eps, "contour-route exponent offset in (0,1)");
        sc->callback([ls, n, eps, &action] {
            action = [ls, n, eps] {
                const auto rb =
                    ecgf::curve_local::ratio_bounds(make_local(*ls), *n, *eps);
                emit(json{{"ratio", rb.ratio},
                          {"bound_angle", rb.bound_angle},
                          {"bound_contour", rb.bound_contour},
                          {"ratio_ge_one", rb.ratio_ge_one},
                          {"angle_ok", rb.angle_ok},
                          {"contour_ok", rb.contour_ok}});
                return 0;
            };
        });
    }

    // ---- tauberian ----
    {
        auto* sc = app.add_subcommand(
            "tauberian", "sum_{n<=x} #E(F_{p^n}) p^{-n} and its ratio to x");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto x = std::make_shared<double>(100.0);
        sc->add_option("--x", *x, "summation cutoff");
        sc->callback([ls, x, &action] {
            action = [ls, x] {
                const double s =
                    ecgf::curve_local::tauberian_sum(make_local(*ls), *x);
                emit(json{{"sum", s}, {"x", *x}, {"normalized", s / *x}});
                return 0;
            };
        });
    }

    // ---- genfun-coeff ----
    {
        auto* sc = app.add_subcommand(
            "genfun-coeff",
            "series coefficient by contour extraction, snapped to the "
            "certified integer");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto kind = std::make_shared<std::string>("B");
        auto n = std::make_shared<unsigned>(1);
        auto rho = std::make_shared<double>(0.0);
        auto points = std::make_shared<unsigned>(256);
        sc->add_option("--kind", *kind,
                       "A (trace series) | B (count series)")
            ->check(CLI::IsMember({"A", "B"}));
        sc->add_option("--n", *n, "coefficient index")->required();
        sc->add_option("--rho", *rho,
                       "contour radius (default: half the pole distance)");
        sc->add_option("--points", *points, "trapezoid point count");
        sc->callback([ls, kind, n, rho, points, &action] {
            action = [ls, kind, n, rho, points] {
                const ecgf::genfun::LocalGenFun fun{
                    make_local(*ls), *kind == "A" ? ecgf::genfun::Kind::A
                                                  : ecgf::genfun::Kind::B};
                const double r =
                    *rho > 0.0 ? *rho : ecgf::genfun::default_rho(fun);
                const auto raw = ecgf::genfun::coeff_cauchy(fun, *n, r, *points);
                const bigint c =
                    ecgf::genfun::coeff_cauchy_int(fun, *n, r, *points);
                emit(json{{"n", *n},
                          {"coeff", jbig(c)},
                          {"raw_re", raw.value.real()},
                          {"raw_im", raw.value.imag()},
                          {"abs_error", raw.abs_error}});
                return 0;
            };
        });
    }

    // ---- genfun-feq ----
    {
        auto* sc = app.add_subcommand(
            "genfun-feq",
            "local functional-equation defect |B_s(s) + B_s(1-s)|");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto sre = std::make_shared<double>(0.0);
        auto sim = std::make_shared<double>(0.0);
        sc->add_option("--sre", *sre, "Re s")->required();
        sc->add_option("--sim", *sim, "Im s");
        sc->callback([ls, sre, sim, &action] {
            action = [ls, sre, sim] {
                const double d = ecgf::genfun::functional_equation_defect(
                    make_local(*ls), {*sre, *sim});
                emit(json{{"s_re", *sre}, {"s_im", *sim}, {"defect", d}});
                return 0;
            };
        });
    }

    // ---- local-zeros ----
    {
        auto* sc = app.add_subcommand(
            "local-zeros", "zeros 1/2 + i pi k / log p of the local series");
        auto ls = std::make_shared<LocalSel>();
        add_local_sel(sc, ls);
        auto klo = std::make_shared<int>(0);
        auto khi = std::make_shared<int>(0);
        auto format = std::make_shared<std::string>("json");
        sc->add_option("--klo", *klo, "lowest lattice index")->required();
        sc->add_option("--khi", *khi, "highest lattice index")->required();
        sc->add_option("--format", *format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sc->callback([ls, klo, khi, format, &action] {
            action = [ls, klo, khi, format] {
                const auto zs =
                    ecgf::genfun::local_zeros(make_local(*ls), *klo, *khi);
                if (*format == "csv") {
                    std::printf("k,re,im\n");
                    for (std::size_t i = 0; i < zs.size(); ++i)
                        std::printf("%d,%s,%s\n", *klo + static_cast<int>(i),
                                    d17(zs[i].real()).c_str(),
                                    d17(zs[i].imag()).c_str());
                    return 0;
                }
                json arr = json::array();
                for (std::size_t i = 0; i < zs.size(); ++i)
                    arr.push_back({{"k", *klo + static_cast<int>(i)},
                                   {"re", zs[i].real()},
                                   {"im", zs[i].imag()}});
                emit(json{{"zeros", arr}});
                return 0;
            };
        });
    }

    // ---- global-eval ----
    {
        auto* sc = app.add_subcommand(
            "global-eval",
            "the global series B(s) (two routes) or the L-series partial "
            "sum with certified tail");
        auto gs = std::make_shared<GlobalSel>();
        add_global_sel(sc, gs);
        auto sre = std::make_shared<double>(0.0);
        auto sim = std::make_shared<double>(0.0);
        auto M = std::make_shared<std::size_t>(100000);
        auto route = std::make_shared<std::string>("factored");
        auto series = std::make_shared<std::string>("B");
        sc->add_option("--sre", *sre, "Re s")->required();
        sc->add_option("--sim", *sim, "Im s");
        sc->add_option("--M", *M, "prime / coefficient cutoff");
        sc->add_option("--route", *route, "euler | factored (series B only)")
            ->check(CLI::IsMember({"euler", "factored"}));
        sc->add_option("--series", *series, "B | L")
            ->check(CLI::IsMember({"B", "L"}));
        sc->callback([gs, sre, sim, M, route, series, &action] {
            action = [gs, sre, sim, M, route, series] {
                const auto e = pick_global(*gs);
                const cplx s{*sre, *sim};
                if (*series == "L") {
                    const auto lr = ecgf::global::eval_L(e, s, *M);
                    json out = jeval(lr.eval);
                    out["abs_error"] = jfin(lr.eval.abs_error);
                    out["certified"] = lr.certified;
                    emit(out);
                    return 0;
                }
                const auto ev = ecgf::global::eval_B_global(
                    e, s, *M,
                    *route == "euler" ? ecgf::global::BPath::euler
                                      : ecgf::global::BPath::factored);
                emit(jeval(ev));
                return 0;
            };
        });
    }

    // ---- bn ----
    {
        auto* sc = app.add_subcommand(
            "bn", "exact coefficients of the rewritten global series");
        auto gs = std::make_shared<GlobalSel>();
        add_global_sel(sc, gs);
        auto M = std::make_shared<std::size_t>(100);
        auto format = std::make_shared<std::string>("json");
        sc->add_option("--M", *M, "coefficient count");
        sc->add_option("--format", *format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sc->callback([gs, M, format, &action] {
            action = [gs, M, format] {
                const auto b = ecgf::global::bn_table(pick_global(*gs), *M);
                if (*format == "csv") {
                    std::printf("n,b\n");
                    for (std::size_t n = 1; n <= b.length(); ++n)
                        std::printf("%zu,%s\n", n, b.c[n].str().c_str());
                    return 0;
                }
                json arr = json::array();
                for (std::size_t n = 1; n <= b.length(); ++n)
                    arr.push_back(jbig(b.c[n]));
                emit(json{{"M", *M}, {"b", arr}});
                return 0;
            };
        });
    }

    // ---- residue ----
    {
        auto* sc = app.add_subcommand(
            "residue",
            "residue of the global series at s = 2: closed form vs numeric "
            "limit");
        auto gs = std::make_shared<GlobalSel>();
        add_global_sel(sc, gs);
        sc->callback([gs, &action] {
            action = [gs] {
                const auto r = ecgf::global::residue_at_2(pick_global(*gs));
                emit(json{{"formula", r.formula},
                          {"numeric", r.numeric},
                          {"rel_gap", std::abs(r.formula - r.numeric) /
                                          std::abs(r.formula)}});
                return 0;
            };
        });
    }

    // ---- global-feq ----
    {
        auto* sc = app.add_subcommand(
            "global-feq",
            "global functional-equation probe (its evaluation domain is "
            "empty; always exits 2 naming the violated side)");
        auto gs = std::make_shared<GlobalSel>();
        add_global_sel(sc, gs);
        auto sre = std::make_shared<double>(0.0);
        auto sim = std::make_shared<double>(0.0);
        sc->add_option("--sre", *sre, "Re s")->required();
        sc->add_option("--sim", *sim, "Im s");
        sc->callback([gs, sre, sim, &action] {
            action = [gs, sre, sim] {
                const double d = ecgf::global::functional_equation_global(
                    pick_global(*gs), {*sre, *sim});
                emit(json{{"defect", d}});
                return 0;
            };
        });
    }

    // ---- deuring ----
    {
        auto* sc = app.add_subcommand(
            "deuring",
            "census of trace-zero primes of a CM curve against li(x)/2");
        auto gs = std::make_shared<GlobalSel>();
        add_global_sel(sc, gs);
        auto x = std::make_shared<double>(100000.0);
        sc->add_option("--x", *x, "prime cutoff");
        sc->callback([gs, x, &action] {
            action = [gs, x] {
                const auto d =
                    ecgf::global::deuring_census(pick_global(*gs), *x);
                emit(json{{"count", d.count},
                          {"li_half", d.li_half},
                          {"ratio", d.ratio}});
                return 0;
            };
        });
    }

    // ---- hf-eval ----
    {
        auto* sc = app.add_subcommand(
            "hf-eval",
            "the integral transform H(z) (quadrature and/or Gamma-series "
            "route), optionally exponentially damped or on a y-grid");
        auto fs = std::make_shared<FormSel>();
        add_form_sel(sc, fs);
        auto zre = std::make_shared<double>(0.0);
        auto zim = std::make_shared<double>(0.0);
        auto route = std::make_shared<std::string>("quad");
        auto gamma_M = std::make_shared<std::size_t>(25);
        auto damping = std::make_shared<double>(0.0);
        auto ygrid = std::make_shared<std::string>("");
        sc->add_option("--zre", *zre, "Re z");
        sc->add_option("--zim", *zim, "Im z");
        sc->add_option("--route", *route, "quad | gamma | both")
            ->check(CLI::IsMember({"quad", "gamma", "both"}));
        sc->add_option("--gamma-M", *gamma_M,
                       "coefficient cutoff for the Gamma-series route");
        sc->add_option("--damping", *damping,
                       "damping exponent lambda (quad route only)");
        sc->add_option("--ygrid", *ygrid,
                       "LO:HI:N -- emit CSV over z = zre + iy instead of a "
                       "single point");
        sc->callback([fs, zre, zim, route, gamma_M, damping, ygrid, &action] {
            action = [fs, zre, zim, route, gamma_M, damping, ygrid] {
                const auto f = build_form(*fs);
                const auto cfg = build_cfg(*fs);
                const bool damped = *damping != 0.0;
                if (damped && *route != "quad")
                    throw std::invalid_argument(
                        "--damping is only defined for --route quad");
                auto eval_one = [&](cplx z,
                                    const std::string& r) -> ecgf::ComplexEval {
                    if (r == "gamma")
                        return ecgf::modform::eval_H_gamma(f, z, *gamma_M);
                    if (damped)
                        return ecgf::modform::eval_H_lambda(f, *damping, z,
                                                            cfg);
                    return ecgf::modform::eval_H(f, z, cfg);
                };
                if (!ygrid->empty()) {
                    double lo = 0.0, hi = 0.0;
                    std::size_t cnt = 0;
                    if (std::sscanf(ygrid->c_str(), "%lf:%lf:%zu", &lo, &hi,
                                    &cnt) != 3 ||
                        cnt < 2 || !(lo < hi))
                        throw std::invalid_argument(
                            "--ygrid expects LO:HI:N with LO < HI, N >= 2");
                    if (*route == "both")
                        throw std::invalid_argument(
                            "--ygrid needs a single route");
                    std::printf("y,re,im,abs_error\n");
                    for (std::size_t i = 0; i < cnt; ++i) {
                        const double y =
                            lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(cnt - 1);
                        const auto ev = eval_one({*zre, y}, *route);
                        std::printf("%s,%s,%s,%s\n", d17(y).c_str(),
                                    d17(ev.value.real()).c_str(),
                                    d17(ev.value.imag()).c_str(),
                                    d17(ev.abs_error).c_str());
                    }
                    return 0;
                }
                const cplx z{*zre, *zim};
                if (*route == "both") {
                    const auto q = eval_one(z, "quad");
                    const auto g = eval_one(z, "gamma");
                    json jg = jeval(g);
                    jg["abs_error"] = jfin(g.abs_error);
                    emit(json{{"quad", jeval(q)},
                              {"gamma", jg},
                              {"gap", std::abs(q.value - g.value)}});
                    return 0;
                }
                const auto ev = eval_one(z, *route);
                json out = jeval(ev);
                out["abs_error"] = jfin(ev.abs_error);
                emit(out);
                return 0;
            };
        });
    }

    // ---- hf-moments ----
    {
        auto* sc = app.add_subcommand(
            "hf-moments",
            "odd Taylor moments of the transform at the origin");
        auto fs = std::make_shared<FormSel>();
        add_form_sel(sc, fs);
        auto nmax = std::make_shared<std::size_t>(8);
        sc->add_option("--nmax", *nmax, "highest moment index (<= 8)");
        sc->callback([fs, nmax, &action] {
            action = [fs, nmax] {
                const auto m = ecgf::modform::h_moments(build_form(*fs), *nmax,
                                                        build_cfg(*fs));
                emit(json{{"moments", m}});
                return 0;
            };
        });
    }

    // ---- hf-lambda ----
    {
        auto* sc = app.add_subcommand(
            "hf-lambda",
            "completed series Lambda(s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(s) "
            "from an M-term partial sum");
        auto fs = std::make_shared<FormSel>();
        add_form_sel(sc, fs);
        auto sre = std::make_shared<double>(0.0);
        auto sim = std::make_shared<double>(0.0);
        auto M = std::make_shared<std::size_t>(30000);
        sc->add_option("--sre", *sre, "Re s")->required();
        sc->add_option("--sim", *sim, "Im s");
        sc->add_option("--M", *M, "partial-sum length");
        sc->callback([fs, sre, sim, M, &action] {
            action = [fs, sre, sim, M] {
                const auto lr = ecgf::modform::completed_lambda(
                    build_form(*fs), {*sre, *sim}, *M);
                json out = jeval(lr.eval);
                out["abs_error"] = jfin(lr.eval.abs_error);
                out["certified"] = lr.certified;
                emit(out);
                return 0;
            };
        });
    }

    // ---- falsified-zeros ----
    {
        auto* sc = app.add_subcommand(
            "falsified-zeros",
            "imaginary-axis zero scan of the deliberately falsified "
            "transform, with the off-axis minimum");
        auto ymin = std::make_shared<double>(0.0);
        auto ymax = std::make_shared<double>(40.0);
        auto xlo = std::make_shared<double>(0.1);
        auto xhi = std::make_shared<double>(3.0);
        auto grid = std::make_shared<std::size_t>(120);
        auto a1 = std::make_shared<double>(1.0);
        auto format = std::make_shared<std::string>("csv");
        sc->add_option("--ymin", *ymin, "lower end of the scanned axis range");
        sc->add_option("--ymax", *ymax, "upper end of the scanned axis range");
        sc->add_option("--xlo", *xlo, "off-axis strip: lowest Re");
        sc->add_option("--xhi", *xhi, "off-axis strip: highest Re");
        sc->add_option("--grid", *grid, "grid resolution (>= 100)");
        sc->add_option("--a1", *a1, "leading coefficient");
        sc->add_option("--format", *format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        sc->callback([ymin, ymax, xlo, xhi, grid, a1, format, &action] {
            action = [ymin, ymax, xlo, xhi, grid, a1, format] {
                const auto scan = ecgf::modform::falsified_zero_scan(
                    *ymin, *ymax, *xlo, *xhi, *grid, *a1);
                if (*format == "json") {
                    emit(json{{"zeros_y", scan.zeros_y},
                              {"offaxis_min_abs", scan.offaxis_min_abs}});
                    return 0;
                }
                std::printf("# off_axis_min_abs = %s\n",
                            d17(scan.offaxis_min_abs).c_str());
                std::printf("re,im,residual\n");
                for (double y : scan.zeros_y) {
                    const double r = std::abs(
                        ecgf::modform::falsified_H(
                            {0.0, y}, *a1, ecgf::modform::HhatPath::series)
                            .value);
                    std::printf("0,%s,%s\n", d17(y).c_str(), d17(r).c_str());
                }
                return 0;
            };
        });
    }

    // ---- approx-feq ----
    {
        auto* sc = app.add_subcommand(
            "approx-feq",
            "truncated Dirichlet sum with smoothing term against the "
            "certified evaluation");
        auto fs = std::make_shared<FormSel>();
        add_form_sel(sc, fs);
        auto sre = std::make_shared<double>(0.0);
        auto sim = std::make_shared<double>(0.0);
        auto x = std::make_shared<double>(100.0);
        sc->add_option("--sre", *sre, "Re s (>= 1.75)")->required();
        sc->add_option("--sim", *sim, "Im s");
        sc->add_option("--x", *x, "truncation point");
        sc->callback([fs, sre, sim, x, &action] {
            action = [fs, sre, sim, x] {
                const auto r = ecgf::modform::approx_functional_eq(
                    build_form(*fs), {*sre, *sim}, *x);
                emit(json{{"truncated_re", r.truncated.real()},
                          {"truncated_im", r.truncated.imag()},
                          {"reference_re", r.reference.real()},
                          {"reference_im", r.reference.imag()},
                          {"error_ratio", r.error_ratio}});
                return 0;
            };
        });
    }

    // ---- selftest ----
    {
        auto* sc = app.add_subcommand(
            "selftest",
            "run the full acceptance suite, one line per criterion; exit 0 "
            "iff every criterion passes or fails exactly as documented");
        auto local_cat = std::make_shared<std::string>("data/curves_local.txt");
        auto global_cat = std::make_shared<std::string>(default_global_catalog());
        sc->add_option("--local-catalog", *local_cat,
                       "catalog of curves over prime fields");
        sc->add_option("--catalog", *global_cat,
                       "catalog of curves over the rationals");
        sc->callback([local_cat, global_cat, &seed, &action] {
            action = [local_cat, global_cat, &seed] {
                ecgf::selftest::Options opt;
                opt.local_catalog = *local_cat;
                opt.global_catalog = *global_cat;
                opt.seed = seed;
                const int bad = ecgf::selftest::run_acceptance(opt, std::cout);
                return bad == 0 ? 0 : 1;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    ecgf::set_default_jobs(jobs);
    try {
        return action ? action() : 1;
    } catch (const ecgf::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const ecgf::global::missing_data_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
