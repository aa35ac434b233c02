#include "ricci/gallery.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "jsondetail.hpp"
#include "ricci/conical.hpp"
#include "ricci/jsonio.hpp"
#include "ricci/logharmonic.hpp"
#include "ricci/spinor.hpp"
#include "ricci/weierstrass.hpp"

namespace ricci::gallery {

namespace {

using analytic::LaurentSeries;
using analytic::RealFunction;
using conformal::CurvatureReport;
using jsonio::detail::njson;
using spinor::SpinorPair;
using weierstrass::WEData;

std::string num(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

Check gate(std::string label, double value, double bound) {
    Check c{std::move(label), value <= bound, num(value) + " (bound " + num(bound) + ")"};
    return c;
}

Check flag(std::string label, bool ok, std::string detail) {
    return {std::move(label), ok, std::move(detail)};
}

void add(RunResult& out, Check c) {
    out.passed = out.passed && c.passed;
    out.checks.push_back(std::move(c));
}

LaurentSeries poly(std::vector<cplx> c) { return LaurentSeries::polynomial(std::move(c)); }

/// log of |K| for the one-cone curvature families
/// K = +-A r^p / (1 + sgn r^{2n})^4, valid off the origin.
RealFunction log_abs_curvature(double A, int p, int n, int sgn) {
    return {[=](cplx z) {
                double r2 = std::norm(z);
                return std::log(A) + 0.5 * p * std::log(r2) -
                       4 * std::log1p(sgn * std::pow(r2, n));
            },
            [=](cplx z) {
                double r2 = std::norm(z);
                double u = std::pow(r2, n);
                double rp = n == 1 ? 1.0 : std::pow(r2, n - 1);
                return (p / r2 - 8.0 * n * sgn * rp / (1 + sgn * u)) * z;
            }};
}

/// Flux-extracted vanishing order of the curvature at the origin, reported
/// against the closed-form expectation.
njson vanishing_obj(RunResult& out, const RealFunction& log_abs_K, int expected) {
    auto vm = logharmonic::virtual_measure(log_abs_K, {0.02, 0.03, 0.04, 0.06}, 0.0, 1e-3);
    const double order = vm.mu / (2 * pi);
    const int measured = static_cast<int>(std::lround(order));
    const double defect = std::abs(order - measured);
    njson j;
    j["expected_order"] = expected;
    j["measured_order"] = measured;
    j["mu"] = vm.mu;
    j["integrality_defect"] = defect;
    j["flux_spread"] = vm.flux_spread;
    add(out, flag("curvature vanishing order", measured == expected && defect <= 0.05,
                  "measured " + std::to_string(measured) + ", expected " +
                      std::to_string(expected) + ", defect " + num(defect)));
    return j;
}

void residual_checks(RunResult& out, const CurvatureReport& rep, const RunOptions& opt) {
    add(out, gate("curvature equation residual", rep.normalized_residual, opt.tol));
    add(out, flag("curvature sign definite", rep.sign.cls != conformal::SignClass::mixed,
                  conformal::to_string(rep.sign.cls)));
}

void immersion_checks(RunResult& out, njson& extras, const weierstrass::FundamentalForms& ff,
                      int res) {
    double sup_first = 0, sup_w = 0;
    for (double v : ff.first.v)
        sup_first = std::max(sup_first, std::abs(v));
    for (const auto* w : {&ff.w11, &ff.w12, &ff.w22})
        for (double v : w->v)
            sup_w = std::max(sup_w, std::abs(v));
    const double iso = ff.isothermal_defect / std::max(sup_first, 1e-300);
    const double trace = ff.trace_defect / std::max(sup_w, 1e-300);
    const double bound = 5e-3 * (256.0 / res) * (256.0 / res);
    extras["isothermal_defect"] = iso;
    extras["mean_curvature_defect"] = trace;
    add(out, gate("isothermal parametrization defect", iso, bound));
    add(out, gate("zero mean curvature defect", trace, bound));
}

void chart_files(RunResult& out, const std::string& stem, std::string metric_doc,
                 const CurvatureReport& rep, const RunOptions& opt, const njson& extras) {
    njson robj = jsonio::detail::report_obj(rep, opt.res, opt.order);
    for (const auto& [key, value] : extras.items())
        robj[key] = value;
    out.files.push_back({stem + ".metric.json", std::move(metric_doc)});
    out.files.push_back({stem + ".report.json", jsonio::detail::dump(robj)});
    out.files.push_back({stem + ".report.csv", jsonio::report_csv(rep)});
}

RunResult we_entry(const std::string& stem, const WEData& we, const RunOptions& opt,
                   bool period_check) {
    RunResult out;
    out.command = "gallery " + stem;
    auto metric = weierstrass::metric_from_we(we);
    auto rep = conformal::ricci_residual(metric, opt.res, opt.order);

    njson extras = njson::object();
    if (we.chart.contains(0.0)) {
        const cplx a0 = we.alpha.eval(0), b0 = we.beta.eval(0);
        const cplx db0 = we.beta.derivative().eval(0);
        const double q = 1 + std::norm(b0);
        double k0 = -4 * std::norm(db0) / (std::norm(a0) * q * q * q * q);
        extras["K_at_origin"] = k0 == 0 ? 0.0 : k0;
    }
    if (period_check) {
        auto C = weierstrass::c_vector(we);
        double defect = 0;
        for (const auto& comp : C)
            defect = std::max(defect, std::abs(comp.coefficient(-1).imag()));
        extras["radial_period_imag_defect"] = defect;
        add(out, gate("radial period closes up", defect, 1e-15));
    }
    residual_checks(out, rep, opt);
    auto imm = weierstrass::immerse(we, opt.res);
    immersion_checks(out, extras, weierstrass::fundamental_forms(imm), opt.res);
    chart_files(out, stem, jsonio::metric_json_we(we), rep, opt, extras);
    out.files.push_back({stem + ".obj", weierstrass::mesh_obj_text(imm)});
    return out;
}

RunResult spinor_entry(const std::string& stem, const SpinorPair& pair, int n,
                       const RunOptions& opt) {
    RunResult out;
    out.command = "gallery " + stem;
    auto metric = spinor::metric_from_spinor(pair);
    auto K = spinor::curvature_closed_form(pair);
    auto rep = conformal::ricci_residual(metric, opt.res, opt.order);

    njson extras = njson::object();
    const double k0 = K.value(0);
    extras["K_at_origin"] = k0 == 0 ? 0.0 : k0;
    if (n >= 2)
        extras["vanishing_order"] = vanishing_obj(
            out, log_abs_curvature(4.0 * n * n, 2 * n - 2, n, pair.epsilon), 2 * n - 2);
    residual_checks(out, rep, opt);

    auto imm = pair.epsilon == 1 ? weierstrass::immerse(spinor::we_from_spinor(pair), opt.res)
                                 : weierstrass::lorentz_immerse(pair, opt.res);
    immersion_checks(out, extras, weierstrass::fundamental_forms(imm), opt.res);
    chart_files(out, stem, jsonio::metric_json_spinor(pair), rep, opt, extras);
    out.files.push_back({stem + ".obj", weierstrass::mesh_obj_text(imm)});
    return out;
}

RunResult cone_entry(int n, const RunOptions& opt) {
    const std::string stem = "spherical-cone-" + std::to_string(n);
    RunResult out;
    out.command = "gallery " + stem;

    auto local = conical::ricci_from_conical_local(n, conical::CurvatureModel::spherical);
    auto rep = conformal::ricci_residual(local.metric, opt.res, opt.order);

    njson extras = njson::object();
    extras["K_at_origin"] = n == 1 ? -16.0 : 0.0;
    extras["construction"] = njson{{"flat_check", local.pipeline.flat_check},
                                   {"model_check", local.pipeline.model_check},
                                   {"curvature_match", local.pipeline.curvature_match}};
    extras["factor_match"] = local.factor_match;
    extras["spinor_match"] = local.spinor_match;
    if (!local.note.empty())
        extras["note"] = local.note;
    if (n >= 2)
        extras["vanishing_order"] = vanishing_obj(
            out, log_abs_curvature(16.0 * std::pow(n, 4), 2 * n - 2, n, +1), 2 * n - 2);

    // The curvature amplitude grows like 16 n^4 while the chart stays fixed,
    // so the attainable residual floor scales with n^4 at any resolution.
    const double res_bound = opt.tol * std::pow(n, 4);
    extras["residual_bound"] = res_bound;
    add(out, gate("curvature equation residual", rep.normalized_residual, res_bound));
    add(out, flag("curvature sign definite", rep.sign.cls != conformal::SignClass::mixed,
                  conformal::to_string(rep.sign.cls)));
    add(out, gate("flat half of the construction", local.pipeline.flat_check, 1e-3));
    add(out, gate("spherical half of the construction", local.pipeline.model_check, 1e-3));
    add(out, gate("pipeline factor matches the closed form", local.factor_match, 1e-6));
    add(out, gate("spinor density matches the closed form", local.spinor_match, 1e-12));

    const double amp = 1.0 / std::sqrt(2.0 * n);
    SpinorPair pair(LaurentSeries::monomial(0, amp), LaurentSeries::monomial(n, amp), +1,
                    local.metric.chart());
    auto imm = weierstrass::immerse(spinor::we_from_spinor(pair), opt.res);
    immersion_checks(out, extras, weierstrass::fundamental_forms(imm), opt.res);
    chart_files(out, stem,
                jsonio::metric_json_closed_form("local-cone", local.metric.chart(), n,
                                                "spherical"),
                rep, opt, extras);
    out.files.push_back({stem + ".obj", weierstrass::mesh_obj_text(imm)});
    return out;
}

void torus_checks(RunResult& out, const conical::TorusSolution& sol, const RunOptions& opt) {
    add(out, gate("solver residual", sol.solver_residual, 1e-10));
    for (const auto& c : sol.cones) {
        char label[96];
        std::snprintf(label, sizeof label, "cone angle at (%.6g, %.6g)", c.position.real(),
                      c.position.imag());
        add(out, gate(label, std::abs(c.measured_angle - c.spec_angle) / c.spec_angle, 0.02));
    }
    add(out, gate("flat off the collars", sol.flatness, opt.tol));
}

void torus_files(RunResult& out, const std::string& stem, const conical::ConeSpec& spec,
                 const conical::TorusSolution& sol, int res) {
    out.files.push_back({stem + ".spec.json", jsonio::to_json(spec)});
    out.files.push_back({stem + ".report.json", jsonio::torus_report_json(sol, res)});
    out.files.push_back({stem + ".factor.json", jsonio::torus_factor_json(sol)});
    out.files.push_back({stem + ".factor.csv", jsonio::torus_factor_csv(sol)});
}

RunResult torus_demo(const RunOptions& opt) {
    conical::ConeSpec spec;
    spec.cones = {{cplx(0, 0), 3 * pi}, {cplx(0.5, 0.5), pi}};
    auto sol = conical::flat_conical_torus(spec, opt.torus_res);
    RunResult out;
    out.command = "gallery conical-torus-demo";
    torus_checks(out, sol, opt);
    torus_files(out, "conical-torus-demo", spec, sol, opt.torus_res);
    return out;
}

int family_param(const std::string& name, int n) {
    if (n < 1)
        throw std::invalid_argument("gallery entry \"" + name +
                                    "\" needs an integer parameter n >= 1");
    return n;
}

void no_param(const std::string& name, int n) {
    if (n != 0)
        throw std::invalid_argument("gallery entry \"" + name + "\" takes no parameter");
}

} // namespace

std::vector<std::string> gallery_names() {
    return {"enneper",        "plane",          "catenoid",           "zn-family",
            "lorentz-family", "spherical-cone", "conical-torus-demo"};
}

RunResult run_gallery(const std::string& name, int n, const RunOptions& opt) {
    if (name == "enneper") {
        no_param(name, n);
        return we_entry("enneper", WEData(poly({1}), poly({0, 1}), Rect{-1, 1, -1, 1}), opt,
                        false);
    }
    if (name == "plane") {
        no_param(name, n);
        return we_entry("plane", WEData(poly({1}), poly({0}), Rect{-1, 1, -1, 1}), opt, false);
    }
    if (name == "catenoid") {
        no_param(name, n);
        return we_entry("catenoid",
                        WEData(LaurentSeries::monomial(-2, -0.5), poly({0, cplx(0, 1)}),
                               Rect{0.6, 1.4, -0.35, 0.35}),
                        opt, true);
    }
    if (name == "zn-family") {
        int k = family_param(name, n);
        SpinorPair pair(poly({1}), LaurentSeries::monomial(k, 1.0), +1, Rect{-1, 1, -1, 1});
        return spinor_entry("zn-family-" + std::to_string(k), pair, k, opt);
    }
    if (name == "lorentz-family") {
        int k = family_param(name, n);
        SpinorPair pair(poly({1}), LaurentSeries::monomial(k, 1.0), -1,
                        Rect{-0.6, 0.6, -0.6, 0.6});
        return spinor_entry("lorentz-family-" + std::to_string(k), pair, k, opt);
    }
    if (name == "spherical-cone")
        return cone_entry(family_param(name, n), opt);
    if (name == "conical-torus-demo") {
        no_param(name, n);
        return torus_demo(opt);
    }
    std::string known;
    for (const auto& g : gallery_names())
        known += (known.empty() ? "" : ", ") + g;
    throw std::invalid_argument("unknown gallery entry \"" + name + "\" (known: " + known + ")");
}

RunResult run_check_metric(const std::string& metric_json, const RunOptions& opt) {
    RunResult out;
    out.command = "check-ricci";
    auto metric = jsonio::metric_from_json(metric_json);
    auto rep = conformal::ricci_residual(metric, opt.res, opt.order);
    residual_checks(out, rep, opt);
    out.files.push_back(
        {"check-ricci.report.json", jsonio::report_json(rep, opt.res, opt.order)});
    out.files.push_back({"check-ricci.report.csv", jsonio::report_csv(rep)});
    return out;
}

RunResult run_virtual_measure(const std::string& spec_json) {
    RunResult out;
    out.command = "virtual-measure";
    auto spec = jsonio::measure_spec_from_json(spec_json);
    auto vm = logharmonic::virtual_measure(spec.f, spec.radii, spec.center, spec.agree_tol);
    add(out, gate("flux slope agrees with the mean-value fit", std::abs(vm.fit_mu - vm.mu),
                  spec.agree_tol * std::max(1.0, std::abs(vm.mu))));
    if (spec.has_expected)
        add(out, gate("measure matches the expected value", std::abs(vm.mu - spec.expected_mu),
                      spec.expected_tol));
    out.files.push_back({"virtual-measure.report.json", jsonio::measure_report_json(spec, vm)});
    return out;
}

RunResult run_conical_torus(const std::string& spec_json, const RunOptions& opt) {
    RunResult out;
    out.command = "conical-torus";
    auto spec = jsonio::cone_spec_from_json(spec_json);
    auto sol = conical::flat_conical_torus(spec, opt.torus_res);
    torus_checks(out, sol, opt);
    torus_files(out, "conical-torus", spec, sol, opt.torus_res);
    return out;
}

RunResult run_polygon(int genus, const double* alpha) {
    RunResult out;
    out.command = "polygon";
    const double special = conical::polygon_special_angle(genus);
    const double a = alpha ? *alpha : special;
    auto g = conical::polygon_gluing(genus, a);
    add(out, gate("gauss-bonnet identity", g.gauss_bonnet_defect,
                  1e-12 * std::max(1.0, g.theta)));
    if (!alpha)
        add(out, flag("vertex angle is the exact 2 pi multiple", g.special_angle,
                      "theta = " + num(g.theta)));
    out.files.push_back({"polygon.report.json", jsonio::polygon_report_json(g, special)});
    return out;
}

} // namespace ricci::gallery
