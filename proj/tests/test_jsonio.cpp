#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "ricci/conformal.hpp"
#include "ricci/gallery.hpp"
#include "ricci/jsonio.hpp"
#include "ricci/spinor.hpp"
#include "ricci/weierstrass.hpp"

using namespace ricci;
using analytic::Grid;
using analytic::LaurentSeries;
using analytic::RealField;
using doctest::Approx;

namespace {

LaurentSeries poly(std::vector<cplx> c) { return LaurentSeries::polynomial(std::move(c)); }

size_t count_lines(const std::string& s) {
    return size_t(std::count(s.begin(), s.end(), '\n'));
}

std::string first_data_line(const std::string& csv) {
    auto a = csv.find('\n') + 1;
    return csv.substr(a, csv.find('\n', a) - a);
}

} // namespace

TEST_CASE("spinor metric documents round-trip") {
    spinor::SpinorPair p(poly({1, cplx(0, 0.25)}), poly({0, 1}), +1, Rect{-0.5, 0.5, -0.5, 0.5});
    const std::string doc = jsonio::metric_json_spinor(p);
    auto g = jsonio::metric_from_json(doc);
    auto direct = spinor::metric_from_spinor(p);
    CHECK(g.chart().x0 == direct.chart().x0);
    CHECK(g.chart().y1 == direct.chart().y1);
    for (cplx z : {cplx(0, 0), cplx(0.3, -0.2), cplx(-0.45, 0.1)})
        CHECK(g.conformal_factor_at(z) == Approx(direct.conformal_factor_at(z)).epsilon(1e-14));

    SUBCASE("standalone spinor document carries the same data") {
        auto q = jsonio::spinor_from_json(jsonio::to_json(p));
        CHECK(q.epsilon == p.epsilon);
        CHECK(q.a.same_coefficients(p.a));
        CHECK(q.b.same_coefficients(p.b));
    }
}

TEST_CASE("weierstrass metric documents keep negative exponents") {
    weierstrass::WEData cat(LaurentSeries::monomial(-2, -0.5), poly({0, cplx(0, 1)}),
                            Rect{0.6, 1.4, -0.35, 0.35});
    auto back = jsonio::we_from_json(jsonio::to_json(cat));
    CHECK(back.alpha.min_exponent() == -2);
    CHECK(back.alpha.coefficient(-2) == cat.alpha.coefficient(-2));
    CHECK(back.beta.same_coefficients(cat.beta));

    auto g = jsonio::metric_from_json(jsonio::metric_json_we(cat));
    auto direct = weierstrass::metric_from_we(cat);
    CHECK(g.conformal_factor_at(cplx(1.0, 0.1)) ==
          Approx(direct.conformal_factor_at(cplx(1.0, 0.1))).epsilon(1e-14));
}

TEST_CASE("grid metric documents round-trip byte for byte") {
    Grid grid(Rect{-1, 1, -1, 1}, 5, 4);
    RealField f(grid);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 5; ++i)
            f.at(i, j) = 0.25 * i - 0.125 * j;
    auto g = conformal::ConformalMetric::from_grid(f, -0.5);
    const std::string doc = jsonio::metric_json_grid(g);
    auto back = jsonio::metric_from_json(doc);
    CHECK(back.log_factor_at(grid.z(2, 1)) == Approx(g.log_factor_at(grid.z(2, 1))).epsilon(1e-14));
    CHECK(jsonio::metric_json_grid(back) == doc);
}

TEST_CASE("closed-form metric documents") {
    SUBCASE("round-sphere") {
        auto doc = jsonio::metric_json_closed_form("round-sphere", Rect{-0.5, 0.5, -0.5, 0.5});
        auto g = jsonio::metric_from_json(doc);
        CHECK(g.conformal_factor_at(0.0) == Approx(4.0).epsilon(1e-14));
        auto rep = conformal::ricci_residual(g, 64, analytic::FdOrder::fourth);
        CHECK(rep.sign.cls == conformal::SignClass::nonnegative);
    }
    SUBCASE("local cone matches the spinor density") {
        auto g = jsonio::metric_from_json(
            jsonio::metric_json_closed_form("local-cone", Rect::square(0.0, 0.6), 3, "spherical"));
        const cplx z(0.4, -0.2);
        const double r6 = std::pow(std::norm(z), 3);
        CHECK(g.conformal_factor_at(z) == Approx((1 + r6) * (1 + r6) / 36.0).epsilon(1e-14));
    }
    SUBCASE("hyperbolic disk needs a chart inside the unit disk") {
        CHECK_THROWS_AS(jsonio::metric_json_closed_form("hyperbolic-disk", Rect{-1, 2, -1, 1}),
                        std::invalid_argument);
    }
}

TEST_CASE("metric parser rejects broken documents") {
    CHECK_THROWS_WITH_AS(jsonio::metric_from_json("{\"type\": \"spin"),
                         doctest::Contains("JSON parse error"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(jsonio::metric_from_json("{\"type\": \"frobnicate\", \"chart\": "
                                                  "{\"x0\": 0, \"x1\": 1, \"y0\": 0, \"y1\": 1}}"),
                         doctest::Contains("unknown"), std::invalid_argument);
    CHECK_THROWS_AS(jsonio::metric_from_json("[1, 2, 3]"), std::invalid_argument);

    spinor::SpinorPair p(poly({1}), poly({0, 1}), +1, Rect{-0.5, 0.5, -0.5, 0.5});
    std::string doc = jsonio::metric_json_spinor(p);
    const std::string needle = "\"x1\": 0.5";
    auto pos = doc.rfind(needle);
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, needle.size(), "\"x1\": 0.4");
    CHECK_THROWS_WITH_AS(jsonio::metric_from_json(doc), doctest::Contains("differs"),
                         std::invalid_argument);
}

TEST_CASE("cone specs round-trip through JSON") {
    conical::ConeSpec spec;
    spec.lattice = {cplx(1, 0), cplx(0.31, 1.07)};
    spec.cones = {{cplx(0, 0), 3 * pi}, {cplx(0.5, 0.5), pi}};
    auto back = jsonio::cone_spec_from_json(jsonio::to_json(spec));
    CHECK(back.background == conical::Background::torus);
    CHECK(back.lattice[1] == spec.lattice[1]);
    REQUIRE(back.cones.size() == 2);
    CHECK(back.cones[0].angle == Approx(3 * pi).epsilon(1e-15));
    CHECK(back.cones[1].position == cplx(0.5, 0.5));

    CHECK_THROWS_WITH_AS(jsonio::cone_spec_from_json("{\"background\": \"torus\"}"),
                         doctest::Contains("lattice"), std::invalid_argument);
}

TEST_CASE("curvature reports serialize consistently") {
    auto g = jsonio::metric_from_json(
        jsonio::metric_json_closed_form("round-sphere", Rect{-0.5, 0.5, -0.5, 0.5}));
    auto rep = conformal::ricci_residual(g, 32, analytic::FdOrder::fourth);

    const std::string j = jsonio::report_json(rep, 32, analytic::FdOrder::fourth);
    for (const char* key : {"\"normalized_residual\"", "\"sign_class\"", "\"K_min\"",
                            "\"residual_sup\"", "\"error_estimate\"", "\"chart\""})
        CHECK(j.find(key) != std::string::npos);

    const std::string csv = jsonio::report_csv(rep);
    CHECK(csv.rfind("x,y,K,residual\n", 0) == 0);
    CHECK(count_lines(csv) == rep.residual.grid.size() + 1);

    std::istringstream row(first_data_line(csv));
    double x, y, k, r;
    char comma;
    row >> x >> comma >> y >> comma >> k >> comma >> r;
    const auto gr = rep.residual.grid;
    CHECK(x == Approx(gr.z(0, 0).real()).epsilon(1e-15));
    CHECK(y == Approx(gr.z(0, 0).imag()).epsilon(1e-15));
    const int di = (rep.K.grid.nx - gr.nx) / 2;
    CHECK(k == Approx(rep.K.at(di, di)).epsilon(1e-15));
    CHECK(r == Approx(rep.residual.at(0, 0)).epsilon(1e-15));
}

TEST_CASE("measure specs parse kinds, defaults, and expectations") {
    auto spec = jsonio::measure_spec_from_json(
        R"({"f": {"kind": "log-abs", "h": [[1, 1, 0]]}, "expect_mu": 6.283185307179586})");
    CHECK(spec.kind == "log-abs");
    CHECK(spec.radii.size() == 4);
    CHECK(spec.has_expected);
    CHECK(spec.f.value(cplx(2.0, 0)) == Approx(std::log(2.0)).epsilon(1e-15));

    auto spec2 = jsonio::measure_spec_from_json(
        R"({"f": {"kind": "re", "h": [[0, 0, 0], [1, 1, 0]]}, "center": [0.5, 0], "radii": [0.1, 0.2]})");
    CHECK(spec2.center == cplx(0.5, 0));
    CHECK(spec2.radii.size() == 2);
    CHECK(!spec2.has_expected);
    CHECK(spec2.f.value(cplx(0.25, 1.0)) == Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_WITH_AS(
        jsonio::measure_spec_from_json(R"({"f": {"kind": "arg", "h": [[0, 1, 0]]}})"),
        doctest::Contains("log-abs"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        jsonio::measure_spec_from_json(R"({"f": {"kind": "log-abs", "h": []}})"),
        doctest::Contains("zero"), std::invalid_argument);
}

TEST_CASE("gallery names cover every entry and reject the rest") {
    auto names = gallery::gallery_names();
    CHECK(names.size() == 7);
    CHECK(std::find(names.begin(), names.end(), "catenoid") != names.end());
    CHECK_THROWS_WITH_AS(gallery::run_gallery("helicoid", 0, {}), doctest::Contains("unknown"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gallery::run_gallery("zn-family", 0, {}), doctest::Contains("n >= 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gallery::run_gallery("plane", 2, {}),
                         doctest::Contains("takes no parameter"), std::invalid_argument);
}

TEST_CASE("gallery runs are deterministic byte for byte") {
    gallery::RunOptions opt;
    opt.res = 32;
    auto a = gallery::run_gallery("plane", 0, opt);
    auto b = gallery::run_gallery("plane", 0, opt);
    CHECK(a.passed);
    REQUIRE(a.files.size() == b.files.size());
    REQUIRE(a.files.size() == 4);
    for (size_t k = 0; k < a.files.size(); ++k) {
        CHECK(a.files[k].filename == b.files[k].filename);
        CHECK(a.files[k].content == b.files[k].content);
    }
    auto& obj = a.files.back();
    CHECK(obj.filename == "plane.obj");
    CHECK(obj.content.rfind("v ", 0) == 0);
    CHECK(obj.content.find("\nf ") != std::string::npos);
}

TEST_CASE("gallery checks catch a metric that is not a ricci metric") {
    gallery::RunOptions opt;
    opt.res = 64;
    auto bad = gallery::run_check_metric(
        jsonio::metric_json_closed_form("round-sphere", Rect{-0.5, 0.5, -0.5, 0.5}), opt);
    CHECK(!bad.passed);
    REQUIRE(!bad.checks.empty());
    CHECK(!bad.checks.front().passed);
    CHECK(bad.files.size() == 2);

    auto good = gallery::run_check_metric(
        jsonio::metric_json_closed_form("flat", Rect{-0.5, 0.5, -0.5, 0.5}), opt);
    CHECK(good.passed);
}

TEST_CASE("virtual measure command honors expectations") {
    auto pass = gallery::run_virtual_measure(
        R"({"f": {"kind": "log-abs", "h": [[0, -3, 0], [2, 1, 0]]}, "radii": [0.5, 0.7, 0.9], "expect_mu": 0})");
    CHECK(pass.passed);

    auto fail = gallery::run_virtual_measure(
        R"({"f": {"kind": "log-abs", "h": [[1, 1, 0]]}, "expect_mu": 0})");
    CHECK(!fail.passed);
}

TEST_CASE("polygon command reports the gluing") {
    auto special = gallery::run_polygon(2, nullptr);
    CHECK(special.passed);
    CHECK(special.files.front().content.find("\"is_special_alpha\": true") != std::string::npos);

    const double alpha = 1.9;
    auto generic = gallery::run_polygon(3, &alpha);
    CHECK(generic.passed);
    CHECK(generic.files.front().content.find("\"is_special_alpha\": false") != std::string::npos);

    CHECK_THROWS_AS(gallery::run_polygon(1, nullptr), std::invalid_argument);
}
