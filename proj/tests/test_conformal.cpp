#include <doctest.h>

#include "ricci/conformal.hpp"
#include "test_util.hpp"

using namespace ricci;
using namespace ricci::conformal;
using analytic::constant_fn;
using analytic::RealFunction;

namespace {

// e^{-2f} = (1 + |z|^2)^2, the induced metric of the basic complete example;
// K = -4 / (1+|z|^2)^4.
ConformalMetric enneper_metric(Rect chart = Rect{-1, 1, -1, 1}) {
    RealFunction W{[](cplx z) { double q = 1 + std::norm(z); return q * q; },
                   [](cplx z) { return 4.0 * (1 + std::norm(z)) * z; }};
    return ConformalMetric::from_conformal_factor(chart, W);
}

RealFunction enneper_curvature() {
    return {[](cplx z) { return -4.0 / std::pow(1 + std::norm(z), 4); },
            [](cplx z) { return 32.0 * z / std::pow(1 + std::norm(z), 5); }};
}

ConformalMetric round_sphere(Rect chart = Rect{-1, 1, -1, 1}) {
    RealFunction W{[](cplx z) { double q = 1 + std::norm(z); return 4.0 / (q * q); }, nullptr};
    return ConformalMetric::from_conformal_factor(chart, W);
}

ConformalMetric hyperbolic_disk(Rect chart = Rect{-0.6, 0.6, -0.6, 0.6}) {
    RealFunction W{[](cplx z) { double q = 1 - std::norm(z); return 4.0 / (q * q); }, nullptr};
    return ConformalMetric::from_conformal_factor(chart, W);
}

double sup_against(const analytic::RealField& f, const std::function<double(cplx)>& truth) {
    double e = 0;
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i)
            e = std::max(e, std::abs(f.at(i, j) - truth(f.grid.z(i, j))));
    return e;
}

} // namespace

TEST_CASE("curvature of the model factors: flat, spherical, hyperbolic") {
    auto flat = ConformalMetric::flat(Rect{-1, 1, -1, 1});
    CHECK(gaussian_curvature(flat, 64).sup_norm() < 1e-13);

    CHECK(sup_against(gaussian_curvature(round_sphere(), 256), [](cplx) { return 1.0; }) <
          1e-8);
    CHECK(sup_against(gaussian_curvature(hyperbolic_disk(), 256), [](cplx) { return -1.0; }) <
          1e-6);

    auto K = gaussian_curvature(enneper_metric(), 256);
    auto truth = enneper_curvature();
    CHECK(sup_against(K, truth.value) < 1e-7);
}

TEST_CASE("grid-backed metrics reproduce the closed-form curvature") {
    Rect chart{-1, 1, -1, 1};
    auto grid = analytic::Grid::over(chart, 256);
    auto f = analytic::RealField::sample(grid,
                                         [](cplx z) { return -std::log(1 + std::norm(z)); });
    auto gm = ConformalMetric::from_grid(f);
    CHECK(!gm.closed_form());
    auto K = gaussian_curvature(gm, /*res ignored*/ 0);
    CHECK(sup_against(K, enneper_curvature().value) < 1e-7);
}

TEST_CASE("laplace_beltrami applies the conformal factor") {
    auto g = round_sphere();
    auto grid = analytic::Grid::over(g.chart(), 96);
    auto u = analytic::RealField::sample(grid, [](cplx z) { return std::norm(z); });
    auto lap = laplace_beltrami(g, u);
    // Delta_g |z|^2 = e^{2f} * (-4) = -(1+|z|^2)^2
    CHECK(sup_against(lap, [](cplx z) { return -std::pow(1 + std::norm(z), 2); }) < 1e-9);
}

TEST_CASE("curvature equation residual: flat is exact, sphere fails by 4K^3") {
    auto flat = ConformalMetric::flat(Rect{0, 2, -1, 1});
    auto rep = ricci_residual(flat, 64);
    CHECK(rep.normalized_residual < 1e-12);
    CHECK(rep.sign.cls == SignClass::zero);

    // res 128 sits near the sweet spot between truncation and the roundoff
    // amplification of differentiating an already-differenced field
    auto sph = ricci_residual(round_sphere(), 128);
    CHECK(sup_against(sph.residual, [](cplx) { return 4.0; }) < 5e-6);
    CHECK(sph.normalized_residual == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(sph.sign.cls == SignClass::nonnegative);
}

TEST_CASE("residual of the complete negatively-curved example converges at stencil order") {
    auto g = enneper_metric();
    double r64 = ricci_residual(g, 64).normalized_residual;
    double r128 = ricci_residual(g, 128).normalized_residual;
    double r256 = ricci_residual(g, 256).normalized_residual;
    CHECK(r256 < 1e-3);
    CHECK(testutil::observed_order(r64, r128) >= 2.0);
    CHECK(testutil::observed_order(r128, r256) >= 2.0);
    CHECK(ricci_residual(g, 256).sign.cls == SignClass::nonpositive);
}

TEST_CASE("logarithmic residual: satisfied example, hyperbolic defect, masking") {
    auto lg = log_ricci_residual(enneper_metric(), 256);
    CHECK(lg.sup_unmasked < 1e-6);
    CHECK(lg.masked_count == 0);

    auto lh = log_ricci_residual(hyperbolic_disk(), 256);
    double worst = 0;
    for (size_t k = 0; k < lh.value.v.size(); ++k)
        if (!lh.mask[k])
            worst = std::max(worst, std::abs(lh.value.v[k] + 4.0));
    CHECK(worst < 1e-5);

    // K vanishes at the origin: e^{-2f} = (1+|z|^4)^2
    RealFunction W{[](cplx z) { double q = 1 + std::pow(std::norm(z), 2); return q * q; },
                   nullptr};
    auto g2 = ConformalMetric::from_conformal_factor(Rect{-1, 1, -1, 1}, W);
    auto lg2 = log_ricci_residual(g2, 128);
    CHECK(lg2.masked_count >= 1);

    // same family on an annular chart away from the zero set
    auto g3 = ConformalMetric::from_conformal_factor(Rect{0.25, 0.95, -0.3, 0.3}, W);
    auto lg3 = log_ricci_residual(g3, 128);
    CHECK(lg3.masked_count == 0);
    CHECK(lg3.sup_unmasked < 1e-5);
}

TEST_CASE("conformal powers of the negatively curved example") {
    auto g = enneper_metric();
    auto K = enneper_curvature();

    // r = 0 is the identity
    auto g0 = conformal_power(g, 0.0, &K, 128);
    CHECK(g0.conformal_factor_at(cplx(0.3, -0.2)) ==
          doctest::Approx(g.conformal_factor_at(cplx(0.3, -0.2))).epsilon(1e-15));

    // r = 1/2 flattens
    auto gh = conformal_power(g, 0.5, &K, 256);
    CHECK(gaussian_curvature(gh, 256).sup_norm() < 1e-3);

    // r = 1 gives the unit sphere metric
    auto g1 = conformal_power(g, 1.0, &K, 256);
    CHECK(sup_against(gaussian_curvature(g1, 256), [](cplx) { return 1.0; }) < 1e-3);

    // K_r = (1-2r)(-K)^{-r} K for the family
    for (double r : {0.25, 0.5, 1.0}) {
        auto gr = conformal_power(g, r, &K, 256);
        auto Kr = gaussian_curvature(gr, 256);
        double err = sup_against(Kr, [&](cplx z) {
            double k = K.value(z);
            return (1 - 2 * r) * std::pow(-k, -r) * k;
        });
        CHECK(err < 1e-3);
    }
}

TEST_CASE("conformal power requires a definite curvature sign") {
    // f = x^3/6 has K = e^{2f} x: both signs on the chart
    RealFunction f{[](cplx z) { return std::pow(z.real(), 3) / 6.0; }, nullptr};
    auto g = ConformalMetric::from_log_factor(Rect{-1, 1, -1, 1}, f);
    CHECK(sign_analysis(gaussian_curvature(g, 64), 1e-6).cls == SignClass::mixed);
    CHECK_THROWS_AS(conformal_power(g, 0.5, nullptr, 64), std::invalid_argument);
}

TEST_CASE("curvature -V^2 metrics from a flat background and a spherical check") {
    Rect chart{-1, 1, -1, 1};
    auto g_half = ConformalMetric::flat(chart);
    RealFunction V{[](cplx z) { double q = 1 + std::norm(z); return 4.0 / (q * q); }, nullptr};

    ConstructionReport rep{};
    auto g = ricci_from_flat_spherical(V, g_half, 256, analytic::FdOrder::fourth, 1e-3, &rep);
    CHECK(rep.flat_check < 1e-12);
    CHECK(rep.model_check < 1e-8);
    CHECK(rep.curvature_match < 1e-6);
    CHECK(rep.normalized_residual < 1e-5);
    // conformal factor of the output is V^{-1} = (1+|z|^2)^2/4
    CHECK(g.conformal_factor_at(cplx(0.5, 0.5)) ==
          doctest::Approx(std::pow(1.5, 2) / 4.0).epsilon(1e-12));

    // a constant V is flat-scaling, not the spherical model
    CHECK_THROWS_AS(ricci_from_flat_spherical(constant_fn(2.0), g_half, 64), std::invalid_argument);
}

TEST_CASE("curvature +V^2 metrics from the hyperbolic check") {
    Rect chart{-0.6, 0.6, -0.6, 0.6};
    auto g_half = ConformalMetric::flat(chart);
    RealFunction V{[](cplx z) { double q = 1 - std::norm(z); return 4.0 / (q * q); }, nullptr};

    ConstructionReport rep{};
    auto g = ricci_from_flat_hyperbolic(V, g_half, 256, analytic::FdOrder::fourth, 1e-3, &rep);
    CHECK(rep.model_check < 1e-6);
    CHECK(rep.curvature_match < 1e-6);
    auto K = gaussian_curvature(g, 256);
    CHECK(sign_analysis(K, 1e-6).cls == SignClass::nonnegative);
    // K(0) = +V(0)^2 = 16
    const auto& kg = K.grid;
    bool found = false;
    for (int j = 0; j < kg.ny && !found; ++j)
        for (int i = 0; i < kg.nx && !found; ++i)
            if (std::abs(kg.z(i, j)) < 1e-12) {
                CHECK(K.at(i, j) == doctest::Approx(16.0).epsilon(1e-8));
                found = true;
            }
    CHECK(found);
}

TEST_CASE("sign analysis respects the noise band") {
    analytic::Grid g(Rect{-1, 1, -1, 1}, 17, 17);
    auto Kz = analytic::RealField::sample(g, [](cplx z) { return 1e-12 * z.real(); });
    CHECK(sign_analysis(Kz, 1e-9).cls == SignClass::zero);
    auto Km = analytic::RealField::sample(g, [](cplx z) { return z.real(); });
    CHECK(sign_analysis(Km, 1e-9).cls == SignClass::mixed);
    auto Kp = analytic::RealField::sample(g, [](cplx z) { return std::norm(z); });
    CHECK(sign_analysis(Kp, 1e-9).cls == SignClass::nonnegative);
}

TEST_CASE("discretization error estimate tracks the stencil order") {
    auto g = enneper_metric();
    double e128 = curvature_error_estimate(g, 128, analytic::FdOrder::fourth);
    double e256 = curvature_error_estimate(g, 256, analytic::FdOrder::fourth);
    CHECK(e128 > 0);
    CHECK(e128 < 1e-6);
    CHECK(e256 < e128);
}
