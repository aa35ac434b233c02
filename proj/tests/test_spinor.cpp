#include <doctest.h>

#include "ricci/spinor.hpp"
#include "ricci/weierstrass.hpp"
#include "test_util.hpp"

using namespace ricci;
using namespace ricci::spinor;
using analytic::ComplexField;
using analytic::Grid;
using analytic::LaurentSeries;

namespace {

LaurentSeries poly(std::vector<cplx> c) { return LaurentSeries::polynomial(std::move(c)); }

SpinorPair enneper_pair(int eps = 1, Rect chart = Rect{-1, 1, -1, 1}) {
    return SpinorPair(poly({1}), poly({0, 1}), eps,
                      eps == 1 ? chart : Rect::square(0, 0.5));
}

/// Order-4 central differences of a closed form against its stated gradient.
void check_gradient(const analytic::RealFunction& F, cplx z, double tol) {
    const double h = 1e-3;
    auto d = [&](cplx e) {
        return (8 * (F.value(z + h * e) - F.value(z - h * e)) -
                (F.value(z + 2 * h * e) - F.value(z - 2 * h * e))) /
               (12 * h);
    };
    cplx g = F.grad(z);
    CHECK(g.real() == doctest::Approx(d(cplx(1, 0))).epsilon(tol));
    CHECK(g.imag() == doctest::Approx(d(cplx(0, 1))).epsilon(tol));
}

Mat2 random_u2(testutil::Rng& rng) {
    double t = rng.uniform(0, 2 * pi), u = rng.uniform(0, 2 * pi), v = rng.uniform(0, 2 * pi);
    double c = std::cos(rng.uniform(0, pi / 2)), s = std::sqrt(1 - c * c);
    cplx al = c * std::exp(cplx(0, u)), be = s * std::exp(cplx(0, v));
    Mat2 su{al, be, -std::conj(be), std::conj(al)};
    return std::exp(cplx(0, t)) * su;
}

Mat2 random_u11(testutil::Rng& rng) {
    double t = rng.uniform(0, 2 * pi), u = rng.uniform(0, 2 * pi), v = rng.uniform(0, 2 * pi);
    double s = rng.uniform(-1.0, 1.0);
    cplx al = std::cosh(s) * std::exp(cplx(0, u)), be = std::sinh(s) * std::exp(cplx(0, v));
    Mat2 su{al, be, std::conj(be), std::conj(al)};
    return std::exp(cplx(0, t)) * su;
}

} // namespace

TEST_CASE("spinor pairs produce the expected conformal factors") {
    auto flat = metric_from_spinor(SpinorPair(poly({1}), poly({0}), 1, Rect{-1, 1, -1, 1}));
    CHECK(flat.conformal_factor_at(cplx(0.3, -0.7)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(conformal::gaussian_curvature(flat, 64).sup_norm() < 1e-12);

    auto g = metric_from_spinor(enneper_pair());
    for (cplx z : {cplx(0, 0), cplx(0.5, -0.25), cplx(-1, 1)})
        CHECK(g.conformal_factor_at(z) ==
              doctest::Approx(std::pow(1 + std::norm(z), 2)).epsilon(1e-15));

    auto gl = metric_from_spinor(enneper_pair(-1));
    for (cplx z : {cplx(0, 0), cplx(0.5, -0.25)})
        CHECK(gl.conformal_factor_at(z) ==
              doctest::Approx(std::pow(1 - std::norm(z), 2)).epsilon(1e-15));
    CHECK(conformal::sign_analysis(conformal::gaussian_curvature(gl, 128), 1e-8).cls ==
          conformal::SignClass::nonnegative);
}

TEST_CASE("a lorentzian pair must dominate: positivity is enforced") {
    CHECK_THROWS_WITH_AS(SpinorPair(poly({1}), poly({0, 1}), -1, Rect{-2, 2, -2, 2}),
                         doctest::Contains("not positive"), std::invalid_argument);
    CHECK_THROWS_AS(SpinorPair(poly({0}), poly({0}), 1, Rect{-1, 1, -1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpinorPair(poly({1}), poly({0, 1}), 2, Rect{-1, 1, -1, 1}),
                    std::invalid_argument);
}

TEST_CASE("closed-form curvature of the basic pairs") {
    auto K = curvature_closed_form(enneper_pair());
    CHECK(K.value(0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(K.value(cplx(1, 0)) == doctest::Approx(-0.25).epsilon(1e-15));

    auto Kl = curvature_closed_form(enneper_pair(-1));
    CHECK(Kl.value(0) == doctest::Approx(4.0).epsilon(1e-15));

    auto K0 = curvature_closed_form(SpinorPair(poly({1}), poly({0}), 1, Rect{-1, 1, -1, 1}));
    CHECK(K0.value(cplx(0.4, 0.2)) == 0.0);

    check_gradient(K, cplx(0.3, -0.4), 1e-8);
    check_gradient(Kl, cplx(0.2, 0.1), 1e-8);
}

TEST_CASE("closed-form and finite-difference curvature agree for sample pairs") {
    std::vector<SpinorPair> gallery;
    gallery.push_back(enneper_pair());
    gallery.push_back(enneper_pair(-1));
    gallery.push_back(SpinorPair(poly({2}), poly({0, 0, 1}), 1, Rect{-1, 1, -1, 1}));
    gallery.push_back(
        SpinorPair(poly({1, 0, 0.25}), poly({0, 1, 0, -0.125}), 1, Rect{-1, 1, -1, 1}));

    for (const auto& p : gallery) {
        auto g = metric_from_spinor(p);
        auto K = curvature_closed_form(p);
        auto Kfd = conformal::gaussian_curvature(g, 128);
        double est = conformal::curvature_error_estimate(g, 128, analytic::FdOrder::fourth);
        double sup = 0;
        for (int j = 0; j < Kfd.grid.ny; ++j)
            for (int i = 0; i < Kfd.grid.nx; ++i)
                sup = std::max(sup, std::abs(Kfd.at(i, j) - K.value(Kfd.grid.z(i, j))));
        CHECK(sup <= 10 * est + 1e-12);

        auto sign = conformal::sign_analysis(Kfd, 1e-8);
        CHECK(sign.cls == (p.epsilon == 1 ? conformal::SignClass::nonpositive
                                          : conformal::SignClass::nonnegative));
    }
}

TEST_CASE("metrics from admissible pairs satisfy the curvature equation") {
    auto p = SpinorPair(poly({1, 0, 0.25}), poly({0, 1, 0, -0.125}), 1, Rect{-1, 1, -1, 1});
    auto g = metric_from_spinor(p);
    double r128 = conformal::ricci_residual(g, 128).normalized_residual;
    double r256 = conformal::ricci_residual(g, 256).normalized_residual;
    CHECK(r256 < 1e-3);
    CHECK(testutil::observed_order(r128, r256) >= 1.8);

    // the curvature of this pair is tiny, so the residual starts at the
    // roundoff floor and refinement can only amplify it: check smallness only
    auto pl = SpinorPair(poly({2}), poly({0, 1}), -1, Rect{-0.7, 0.7, -0.7, 0.7});
    auto gl = metric_from_spinor(pl);
    CHECK(conformal::ricci_residual(gl, 128).normalized_residual < 1e-6);
    CHECK(conformal::ricci_residual(gl, 256).normalized_residual < 1e-6);
}

TEST_CASE("antiholomorphy residuals flag non-spinor data") {
    Grid grid(Rect{-1, 1, -1, 1}, 65, 65);
    auto holo = ComplexField::sample(grid, [](cplx z) { return z; });
    auto ones = ComplexField::sample(grid, [](cplx) { return cplx(1); });
    auto [ra, rb] = dirac_residual(ones, holo);
    CHECK(ra.sup_norm() < 1e-13);
    CHECK(rb.sup_norm() < 1e-13);

    auto anti = ComplexField::sample(grid, [](cplx z) { return std::conj(z); });
    auto [rc, rd] = dirac_residual(anti, ones);
    double dev = 0;
    for (auto& v : rc.v)
        dev = std::max(dev, std::abs(v - cplx(1)));
    CHECK(dev < 1e-12);
    CHECK(rd.sup_norm() < 1e-13);

    auto residual_at = [](int res) {
        Grid g(Rect{-1, 1, -1, 1}, res + 1, res + 1);
        auto a = ComplexField::sample(g, [](cplx z) { return std::exp(z); });
        auto b = ComplexField::sample(g, [](cplx) { return cplx(1); });
        return dirac_residual(a, b).first.sup_norm();
    };
    double r64 = residual_at(64), r128 = residual_at(128);
    CHECK(r64 < 1e-2);
    CHECK(testutil::observed_order(r64, r128) >= 1.7);
}

TEST_CASE("conversion to Weierstrass data and back to the metric") {
    auto we = we_from_spinor(enneper_pair());
    CHECK(we.alpha.same_coefficients(poly({1})));
    CHECK(we.beta.same_coefficients(poly({0, 1})));

    auto plane = we_from_spinor(SpinorPair(poly({1}), poly({0}), 1, Rect{-1, 1, -1, 1}));
    CHECK(plane.alpha.same_coefficients(poly({1})));
    CHECK(plane.beta.is_zero());

    auto p = SpinorPair(poly({2}), poly({0, 0, 1}), 1, Rect{-1, 1, -1, 1});
    auto w2 = we_from_spinor(p);
    CHECK(w2.alpha.same_coefficients(poly({4})));
    CHECK(w2.beta.same_coefficients(poly({0, 0, 0.5})));
    auto g1 = metric_from_spinor(p);
    auto g2 = weierstrass::metric_from_we(w2);
    testutil::Rng rng(77);
    for (int k = 0; k < 25; ++k) {
        cplx z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        CHECK(g1.conformal_factor_at(z) == doctest::Approx(g2.conformal_factor_at(z)).epsilon(1e-12));
        // |alpha|(1+|beta|^2) = |a|^2 + |b|^2 pointwise
        CHECK(w2.conformal_density(z) == doctest::Approx(p.conformal_density(z)).epsilon(1e-12));
    }

    CHECK_THROWS_WITH_AS(we_from_spinor(SpinorPair(poly({0, 1}), poly({1}), 1,
                                                   Rect{-0.5, 0.5, -0.5, 0.5})),
                         doctest::Contains("vanishes"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(we_from_spinor(SpinorPair(poly({1, 1}), poly({1}), 1,
                                                   Rect{-0.5, 0.5, -0.5, 0.5})),
                         doctest::Contains("finite expansion"), std::invalid_argument);
    CHECK_THROWS_AS(we_from_spinor(enneper_pair(-1)), std::invalid_argument);
}

TEST_CASE("uniformizer pairs reproduce the scaled model metrics") {
    auto id = poly({0, 1});
    auto p = spinor_from_uniformizers(id, id, 1, Rect{-1, 1, -1, 1});
    for (cplx z : {cplx(0, 0), cplx(0.5, 0.5), cplx(-0.3, 0.8)})
        CHECK(p.conformal_density(z) == doctest::Approx((1 + std::norm(z)) / 2).epsilon(1e-14));
    CHECK(curvature_closed_form(p).value(0) == doctest::Approx(-16.0).epsilon(1e-13));

    auto pl = spinor_from_uniformizers(id, id, -1, Rect::square(0, 0.6));
    for (cplx z : {cplx(0, 0), cplx(0.5, 0.2)})
        CHECK(pl.conformal_density(z) == doctest::Approx((1 - std::norm(z)) / 2).epsilon(1e-14));
    CHECK(curvature_closed_form(pl).value(0) == doctest::Approx(16.0).epsilon(1e-13));

    // psi'(0) = 0 breaks the square-root branch
    CHECK_THROWS_WITH_AS(spinor_from_uniformizers(id, poly({0, 0, 1}), 1, Rect{-1, 1, -1, 1}),
                         doctest::Contains("psi'"), std::invalid_argument);

    // a nontrivial admissible choice: phi' = (1+z)^2 = 2 psi'
    auto phi = poly({0, 1, 1, cplx(1) / 3.0});
    auto psi = poly({0, 0.5, 0.5, cplx(1) / 6.0});
    auto q = spinor_from_uniformizers(phi, psi, 1, Rect{-0.4, 0.4, -0.4, 0.4});
    auto dphi = phi.derivative(), dpsi = psi.derivative();
    for (cplx z : {cplx(0.1, -0.2), cplx(-0.3, 0.3)}) {
        double expect = (1 + std::norm(psi.eval(z))) * std::norm(dphi.eval(z)) /
                        (2 * std::abs(dpsi.eval(z)));
        CHECK(q.conformal_density(z) == doctest::Approx(expect).epsilon(1e-13));
    }

    // the square-root sign is a gauge choice: both give the same metric
    auto flipped = SpinorPair(cplx(-1) * q.a, cplx(-1) * q.b, 1, q.chart);
    CHECK(flipped.conformal_density(cplx(0.2, 0.1)) ==
          doctest::Approx(q.conformal_density(cplx(0.2, 0.1))).epsilon(1e-15));
}

TEST_CASE("relation solve recovers coordinate swaps and scalar phases") {
    auto one = poly({1}), id = poly({0, 1});
    auto rel = unitary_relation(series_pair(one, id), series_pair(id, one), Group::unitary);
    CHECK(std::abs(rel.A.m00) < 1e-12);
    CHECK(std::abs(rel.A.m01 - cplx(1)) < 1e-12);
    CHECK(std::abs(rel.A.m10 - cplx(1)) < 1e-12);
    CHECK(std::abs(rel.A.m11) < 1e-12);
    CHECK(rel.residual < 1e-12);
    CHECK(rel.group_defect < 1e-12);
    CHECK(!rel.rank_deficient);
    CHECK(rel.conj.cls == ConjClass::elliptic);

    cplx ph = std::exp(cplx(0, pi / 3));
    auto rel2 = unitary_relation(series_pair(one, id), series_pair(ph * one, ph * id),
                                 Group::unitary);
    CHECK(std::abs(rel2.A.m00 - ph) < 1e-12);
    CHECK(std::abs(rel2.A.m01) < 1e-12);
    CHECK(rel2.conj.cls == ConjClass::scalar);
    CHECK(rel2.conj.theta == doctest::Approx(1.0 / 6).epsilon(1e-10));

    CHECK_THROWS_WITH_AS(unitary_relation(series_pair(one, id), series_pair(poly({2}), id),
                                          Group::unitary),
                         doctest::Contains("disagree"), std::invalid_argument);
}

TEST_CASE("relation solve round-trips a known boost and flags proportional data") {
    const double t = 0.3;
    Mat2 A3{std::cosh(2 * pi * t), -std::sinh(2 * pi * t), -std::sinh(2 * pi * t),
            std::cosh(2 * pi * t)};
    auto G1 = poly({1, 0.25}), G2 = poly({0, 0.5, -0.125});
    auto H1 = A3.m00 * G1 + A3.m01 * G2;
    auto H2 = A3.m10 * G1 + A3.m11 * G2;
    auto rel = unitary_relation(series_pair(G1, G2), series_pair(H1, H2),
                                Group::indefinite_unitary);
    CHECK((rel.A - A3).norm_inf() < 1e-8);
    CHECK(rel.group_defect < 1e-8);
    CHECK(rel.conj.cls == ConjClass::hyperbolic);
    CHECK(rel.conj.param == doctest::Approx(t).epsilon(1e-9));

    auto prop = unitary_relation(series_pair(G1, cplx(2) * G1),
                                 series_pair(G1, cplx(2) * G1), Group::unitary);
    CHECK(prop.rank_deficient);
    CHECK(prop.residual < 1e-10);
}

TEST_CASE("relation solve: 100 random round trips in both groups") {
    testutil::Rng rng(2027);
    for (int trial = 0; trial < 100; ++trial) {
        const bool compact = trial % 2 == 0;
        Mat2 A = compact ? random_u2(rng) : random_u11(rng);
        auto G1 = testutil::random_poly(rng, 3), G2 = testutil::random_poly(rng, 3);
        G1.set_coefficient(0, G1.coefficient(0) + cplx(2)); // keep the pair independent
        auto H1 = A.m00 * G1 + A.m01 * G2;
        auto H2 = A.m10 * G1 + A.m11 * G2;
        auto rel = unitary_relation(series_pair(G1, G2), series_pair(H1, H2),
                                    compact ? Group::unitary : Group::indefinite_unitary);
        CHECK((rel.A - A).norm_inf() < 1e-8);
        CHECK(rel.group_defect < 1e-8);
        CHECK(rel.residual < 1e-8);
    }
}

TEST_CASE("conjugacy classification against the model matrices") {
    auto d = classify_u11(Mat2{std::exp(cplx(0, pi / 5)), 0, 0, std::exp(cplx(0, -pi / 5))});
    CHECK(d.cls == ConjClass::elliptic);
    CHECK(d.param == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(d.theta) < 1e-12);

    const double a = 0.7;
    Mat2 A2{cplx(1, 2 * pi * a), 2 * pi * a, 2 * pi * a, cplx(1, -2 * pi * a)};
    auto dp = classify_u11(A2);
    CHECK(dp.cls == ConjClass::parabolic);
    CHECK(std::abs(A2.tr()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dp.param == doctest::Approx(a).epsilon(1e-12));

    const double t = 0.3;
    Mat2 A3{std::cosh(2 * pi * t), -std::sinh(2 * pi * t), -std::sinh(2 * pi * t),
            std::cosh(2 * pi * t)};
    auto dh = classify_u11(A3);
    CHECK(dh.cls == ConjClass::hyperbolic);
    CHECK(dh.param == doctest::Approx(t).epsilon(1e-12));
    CHECK(A3.tr().real() > 2);

    auto ds = classify_u11(cplx(-1) * Mat2::identity());
    CHECK(ds.cls == ConjClass::scalar);
    CHECK(ds.theta == doctest::Approx(0.5).epsilon(1e-12));

    // phase times elliptic model: both parameters recovered
    Mat2 A1{std::exp(cplx(0, 2 * pi * 0.15)), 0, 0, std::exp(cplx(0, -2 * pi * 0.15))};
    auto dm = classify_u11(std::exp(cplx(0, 2 * pi * 0.2)) * A1);
    CHECK(dm.cls == ConjClass::elliptic);
    CHECK(dm.theta == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(dm.param == doctest::Approx(0.15).epsilon(1e-10));

    CHECK_THROWS_WITH_AS(classify_u11(Mat2{2, 0, 0, 1}), doctest::Contains("not in U(1,1)"),
                         std::invalid_argument);
    CHECK(classify_u2(Mat2::identity()).cls == ConjClass::scalar);
    CHECK(classify_u2(Mat2{0, 1, 1, 0}).cls == ConjClass::elliptic);
    CHECK_THROWS_AS(classify_u2(Mat2{2, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("constant phase between equal-modulus fields") {
    Grid grid(Rect{-1, 1, -1, 1}, 33, 33);
    auto s1 = ComplexField::sample(grid, [](cplx z) { return cplx(0, 1) * z + cplx(0, 1); });
    auto s2 = ComplexField::sample(grid, [](cplx z) { return z + cplx(1); });
    CHECK(phase_relation(s1, s2) == doctest::Approx(pi / 2).epsilon(1e-13));

    auto e1 = ComplexField::sample(grid, [](cplx z) { return std::exp(z); });
    CHECK(phase_relation(e1, e1) == doctest::Approx(0.0).epsilon(1e-15));

    auto s3 = ComplexField::sample(grid, [](cplx z) {
        return std::exp(cplx(0, 2.1)) * (z * z + cplx(3));
    });
    auto s4 = ComplexField::sample(grid, [](cplx z) { return z * z + cplx(3); });
    CHECK(phase_relation(s3, s4) == doctest::Approx(2.1).epsilon(1e-13));

    auto dbl = ComplexField::sample(grid, [](cplx z) { return 2.0 * (z + cplx(1)); });
    CHECK_THROWS_WITH_AS(phase_relation(dbl, s2), doctest::Contains("moduli differ"),
                         std::invalid_argument);
}

TEST_CASE("the metric only sees the pair up to its isometry group") {
    testutil::Rng rng(404);

    auto p = SpinorPair(poly({1, 0, 0.25}), poly({0, 1}), 1, Rect{-1, 1, -1, 1});
    Mat2 U{0.6, cplx(0, 0.8), cplx(0, 0.8), 0.6};
    REQUIRE((U.adjoint() * U - Mat2::identity()).norm_inf() < 1e-15);
    auto pu = SpinorPair(U.m00 * p.a + U.m01 * p.b, U.m10 * p.a + U.m11 * p.b, 1, p.chart);
    for (int k = 0; k < 20; ++k) {
        cplx z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        CHECK(pu.conformal_density(z) == doctest::Approx(p.conformal_density(z)).epsilon(1e-12));
    }

    auto pl = SpinorPair(poly({2}), poly({0, 1}), -1, Rect{-0.7, 0.7, -0.7, 0.7});
    const double s = 0.5;
    Mat2 B{std::cosh(s), std::sinh(s), std::sinh(s), std::cosh(s)};
    auto plb = SpinorPair(B.m00 * pl.a + B.m01 * pl.b, B.m10 * pl.a + B.m11 * pl.b, -1,
                          pl.chart);
    for (int k = 0; k < 20; ++k) {
        cplx z = {rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};
        CHECK(plb.conformal_density(z) == doctest::Approx(pl.conformal_density(z)).epsilon(1e-12));
    }
}
