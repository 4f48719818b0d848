// End-to-end tests of the command-line front end: every checked command is
// run as a real subprocess, its JSON is re-parsed, and the numbers are
// compared bit for bit against the same computation done in-process (the
// printed form must round-trip exactly).  Exit codes are checked for the
// documented classes: usage 1, domain 2, resource 3.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <complex>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "ecgf/curve_local.hpp"
#include "ecgf/genfun.hpp"
#include "ecgf/global.hpp"
#include "ecgf/modform.hpp"

using json = nlohmann::json;
namespace curve_local = ecgf::curve_local;
namespace genfun = ecgf::genfun;
namespace modform = ecgf::modform;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(ECGF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t k = 0;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("count: both methods agree and round-trip the recursion") {
    const RunResult r = run_cli("count --p 7 --A -1 --B 0 --n 3 --method both");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["weil"] == 344);
    CHECK(out["oracle"] == 344);
    const auto e = curve_local::make_curve(7, -1, 0);
    CHECK(out["weil"].get<long long>() ==
          curve_local::count_points_weil(e, 3).convert_to<long long>());
}

TEST_CASE("census output round-trips the in-process record") {
    const RunResult r = run_cli("census --p 7 --A -1 --B 0 --a 1 --x 20");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    const auto rec = curve_local::census(curve_local::make_curve(7, -1, 0),
                                         ecgf::numth::bigint(1), 20.0);
    REQUIRE(out["count"].get<std::size_t>() == rec.count);
    REQUIRE(out["hits"].size() == rec.hits.size());
    for (std::size_t i = 0; i < rec.hits.size(); ++i) {
        CHECK(out["hits"][i].get<unsigned>() == rec.hits[i]);
        CHECK(out["hits"][i].get<unsigned>() % 2 == 1);  // odd levels only
    }
    CHECK(out["small_bound"].get<double>() == rec.small_bound);
    CHECK(out["eps_lhs"].get<double>() == rec.eps_lhs);
    CHECK(out["eps_rhs"].get<double>() == rec.eps_rhs);
}

TEST_CASE("bounds round-trips every floating field bit for bit") {
    const RunResult r = run_cli("bounds --p 7 --A 6 --B 0 --n 5 --eps 0.25");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    const auto rb =
        curve_local::ratio_bounds(curve_local::make_curve(7, 6, 0), 5, 0.25);
    CHECK(out["ratio"].get<double>() == rb.ratio);
    CHECK(out["bound_angle"].get<double>() == rb.bound_angle);
    CHECK(out["bound_contour"].get<double>() == rb.bound_contour);
    CHECK(out["ratio_ge_one"].get<bool>() == rb.ratio_ge_one);
    CHECK(out["angle_ok"].get<bool>() == rb.angle_ok);
    CHECK(out["contour_ok"].get<bool>() == rb.contour_ok);
}

TEST_CASE("tauberian and genfun-coeff round-trip") {
    {
        const RunResult r = run_cli("tauberian --p 5 --A 1 --B 1 --x 50");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const double s = curve_local::tauberian_sum(
            curve_local::make_curve(5, 1, 1), 50.0);
        CHECK(out["sum"].get<double>() == s);
        CHECK(out["normalized"].get<double>() == s / 50.0);
    }
    {
        const RunResult r =
            run_cli("genfun-coeff --p 5 --A 1 --B 1 --kind B --n 7");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const auto e = curve_local::make_curve(5, 1, 1);
        CHECK(out["coeff"].get<long long>() ==
              curve_local::count_points_weil(e, 7).convert_to<long long>());
        const genfun::LocalGenFun fun{e, genfun::Kind::B};
        const auto raw =
            genfun::coeff_cauchy(fun, 7, genfun::default_rho(fun), 256);
        CHECK(out["raw_re"].get<double>() == raw.value.real());
        CHECK(out["abs_error"].get<double>() == raw.abs_error);
    }
}

TEST_CASE("local-zeros lists the verified lattice points") {
    const RunResult r =
        run_cli("local-zeros --p 5 --A 1 --B 0 --klo -2 --khi 2");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    const auto zs = genfun::local_zeros(curve_local::make_curve(5, 1, 0), -2, 2);
    REQUIRE(out["zeros"].size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(out["zeros"][i]["k"].get<int>() == -2 + static_cast<int>(i));
        CHECK(out["zeros"][i]["re"].get<double>() == zs[i].real());
        CHECK(out["zeros"][i]["im"].get<double>() == zs[i].imag());
    }
}

TEST_CASE("global-eval round-trips both series against the library") {
    const std::string sel = "--catalog data/curves_global.txt --curve 0";
    {
        const RunResult r = run_cli("global-eval " + sel +
                                    " --sre 2.5 --sim 1 --M 5000 "
                                    "--route factored --series B");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const auto cat =
            ecgf::global::load_global_catalog("data/curves_global.txt");
        const auto ev = ecgf::global::eval_B_global(
            cat[0], {2.5, 1.0}, 5000, ecgf::global::BPath::factored);
        CHECK(out["re"].get<double>() == ev.value.real());
        CHECK(out["im"].get<double>() == ev.value.imag());
        CHECK(out["abs_error"].get<double>() == ev.abs_error);
    }
    {
        const RunResult r = run_cli("global-eval " + sel +
                                    " --sre 2.5 --sim 0 --M 2000 --series L");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        CHECK(out["certified"].get<bool>());
    }
}

TEST_CASE("falsified-zeros JSON mirrors the in-process scan") {
    const RunResult r = run_cli(
        "falsified-zeros --ymin 0 --ymax 40 --grid 100 --format json");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    const auto scan = modform::falsified_zero_scan(0.0, 40.0, 0.1, 3.0, 100);
    CHECK(out["zeros_y"].size() == scan.zeros_y.size());
    CHECK(out["offaxis_min_abs"].get<double>() == scan.offaxis_min_abs);
}

TEST_CASE("falsified-zeros CSV carries the header comment and column row") {
    const RunResult r = run_cli("falsified-zeros --ymax 40 --grid 100");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# off_axis_min_abs = ", 0) == 0);
    CHECK(r.out.find("re,im,residual\n") != std::string::npos);
}

TEST_CASE("hf commands round-trip on a short coefficient prefix") {
    const std::string form = "--eta-M 2000";
    const auto f = modform::make_cusp_form(11, modform::eta11_coeffs(2000));
    const modform::HEvalConfig cfg;
    {
        const RunResult r =
            run_cli("hf-eval " + form + " --zre 0.8 --route quad");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const auto ev = modform::eval_H(f, {0.8, 0.0}, cfg);
        CHECK(out["re"].get<double>() == ev.value.real());
        CHECK(out["im"].get<double>() == ev.value.imag());
        CHECK(out["abs_error"].get<double>() == ev.abs_error);
    }
    {
        const RunResult r = run_cli("hf-eval " + form +
                                    " --zre 1 --zim 0.5 --route both");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const double gap = out["gap"].get<double>();
        CHECK(gap <= out["quad"]["abs_error"].get<double>() +
                         out["gamma"]["abs_error"].get<double>());
    }
    {
        const RunResult r = run_cli("hf-moments " + form + " --nmax 2");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const auto m = modform::h_moments(f, 2, cfg);
        REQUIRE(out["moments"].size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(out["moments"][i].get<double>() == m[i]);
    }
    {
        const RunResult r = run_cli("approx-feq " + form + " --sre 3 --x 50");
        REQUIRE(r.exit_code == 0);
        const json out = json::parse(r.out);
        const auto a = modform::approx_functional_eq(f, {3.0, 0.0}, 50.0);
        CHECK(out["error_ratio"].get<double>() == a.error_ratio);
        CHECK(out["truncated_re"].get<double>() == a.truncated.real());
    }
}

TEST_CASE("exit codes: usage 1, domain 2, resource 3") {
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    // Singular curve: invalid arguments are a domain failure.
    CHECK(run_cli("count --p 5 --A 0 --B 0 --n 1").exit_code == 2);
    // s = 1 maps the reflected argument onto a pole of the local series.
    CHECK(run_cli("genfun-feq --p 5 --A 1 --B 1 --sre 1").exit_code == 2);
    // Gamma pole of the completed series.
    CHECK(run_cli("hf-lambda --eta-M 2000 --sre 0 --M 1000").exit_code == 2);
    // The enumeration oracle refuses fields beyond its budget.
    CHECK(run_cli("count --p 7 --A -1 --B 0 --n 7 --method oracle").exit_code ==
          3);
    // The global functional-equation probe documents its empty domain.
    CHECK(run_cli("global-feq --catalog data/curves_global.txt --sre 0.5")
              .exit_code == 2);
}
