#include "ricci/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "jsondetail.hpp"

namespace ricci::jsonio {

using analytic::Grid;
using analytic::LaurentSeries;
using analytic::RealField;
using conformal::ConformalMetric;
using detail::njson;

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& msg) {
    throw std::invalid_argument(what + ": " + msg);
}

njson parse_doc(const std::string& text, const char* what) {
    try {
        return njson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(what, std::string("JSON parse error: ") + e.what());
    }
}

const njson& member(const njson& j, const char* key, const char* what) {
    if (!j.is_object())
        bad(what, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        bad(what, std::string("missing key \"") + key + "\"");
    return *it;
}

double number_from(const njson& v, const std::string& what) {
    if (!v.is_number())
        bad(what, "expected a number");
    return v.get<double>();
}

int int_from(const njson& v, const std::string& what) {
    if (v.is_number_integer())
        return v.get<int>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (d == std::rint(d) && std::abs(d) < 1e9)
            return static_cast<int>(d);
    }
    bad(what, "expected an integer");
}

std::string string_from(const njson& v, const std::string& what) {
    if (!v.is_string())
        bad(what, "expected a string");
    return v.get<std::string>();
}

cplx point_from(const njson& v, const std::string& what) {
    if (!v.is_array() || v.size() != 2)
        bad(what, "expected [x, y]");
    return {number_from(v[0], what + "[0]"), number_from(v[1], what + "[1]")};
}

double farthest_corner_abs(const Rect& r) {
    double m = 0;
    for (double x : {r.x0, r.x1})
        for (double y : {r.y0, r.y1})
            m = std::max(m, std::abs(cplx(x, y)));
    return m;
}

RealFunction closed_form_factor(const std::string& family, double n, int sgn) {
    if (family == "round-sphere" || family == "hyperbolic-disk") {
        const double s = family == "round-sphere" ? 1.0 : -1.0;
        return {[s](cplx z) {
                    double q = 1 + s * std::norm(z);
                    return 4.0 / (q * q);
                },
                [s](cplx z) {
                    double q = 1 + s * std::norm(z);
                    return -16.0 * s * z / (q * q * q);
                }};
    }
    // local-cone: (1 + sgn r^{2n})^2 / (4 n^2)
    return {[n, sgn](cplx z) {
                double u = std::pow(std::norm(z), n);
                double q = 1 + sgn * u;
                return q * q / (4 * n * n);
            },
            [n, sgn](cplx z) {
                double r2 = std::norm(z);
                double u = std::pow(r2, n);
                double rpow = n == 1 ? 1.0 : std::pow(r2, n - 1);
                return (sgn * (1 + sgn * u) * rpow / n) * z;
            }};
}

ConformalMetric closed_form_metric(const std::string& family, const Rect& chart, double n,
                                   const std::string& model, const char* what) {
    if (family == "flat")
        return ConformalMetric::flat(chart);
    if (family == "round-sphere")
        return ConformalMetric::from_conformal_factor(chart, closed_form_factor(family, 0, 0));
    if (family == "hyperbolic-disk") {
        if (farthest_corner_abs(chart) >= 1)
            bad(what, "hyperbolic-disk chart must stay inside the unit disk");
        return ConformalMetric::from_conformal_factor(chart, closed_form_factor(family, 0, 0));
    }
    if (family == "spherical-cone") {
        if (!(n > 0))
            bad(what, "spherical-cone needs n > 0");
        return conical::spherical_cone_local(n, chart);
    }
    if (family == "local-cone") {
        if (!(n >= 1) || n != std::rint(n))
            bad(what, "local-cone needs an integer n >= 1");
        int sgn;
        if (model == "spherical")
            sgn = 1;
        else if (model == "hyperbolic")
            sgn = -1;
        else
            bad(what, "local-cone model must be \"spherical\" or \"hyperbolic\"");
        if (sgn < 0 && farthest_corner_abs(chart) >= 1)
            bad(what, "hyperbolic local-cone chart must stay inside the unit disk");
        return ConformalMetric::from_conformal_factor(chart, closed_form_factor(family, n, sgn));
    }
    bad(what, "unknown closed-form family \"" + family + "\"");
}

spinor::SpinorPair pair_from_obj(const njson& j, const Rect& chart, const char* what) {
    auto a = detail::series_from(member(j, "a", what), what);
    auto b = detail::series_from(member(j, "b", what), what);
    int epsilon = int_from(member(j, "epsilon", what), std::string(what) + ".epsilon");
    if (auto it = j.find("chart"); it != j.end()) {
        Rect rc = detail::rect_from(*it, what);
        if (rc.x0 != chart.x0 || rc.x1 != chart.x1 || rc.y0 != chart.y0 || rc.y1 != chart.y1)
            bad(what, "chart inside the payload differs from the document chart");
    }
    return spinor::SpinorPair(std::move(a), std::move(b), epsilon, chart);
}

weierstrass::WEData we_from_obj(const njson& j, const Rect& chart, const char* what) {
    auto alpha = detail::series_from(member(j, "alpha", what), what);
    auto beta = detail::series_from(member(j, "beta", what), what);
    if (auto it = j.find("chart"); it != j.end()) {
        Rect rc = detail::rect_from(*it, what);
        if (rc.x0 != chart.x0 || rc.x1 != chart.x1 || rc.y0 != chart.y0 || rc.y1 != chart.y1)
            bad(what, "chart inside the payload differs from the document chart");
    }
    return weierstrass::WEData(std::move(alpha), std::move(beta), chart);
}

njson pair_obj(const spinor::SpinorPair& p) {
    njson j;
    j["a"] = detail::series_json(p.a);
    j["b"] = detail::series_json(p.b);
    j["epsilon"] = p.epsilon;
    j["chart"] = detail::rect_json(p.chart);
    return j;
}

njson we_obj(const weierstrass::WEData& we) {
    njson j;
    j["alpha"] = detail::series_json(we.alpha);
    j["beta"] = detail::series_json(we.beta);
    j["chart"] = detail::rect_json(we.chart);
    return j;
}

void append_csv(std::string& out, double a, double b, double c, double d) {
    char line[160];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", a, b, c, d);
    out += line;
}

} // namespace

namespace detail {

std::string dump(const njson& j) { return j.dump(2) + "\n"; }

njson rect_json(const Rect& r) {
    njson j;
    j["x0"] = r.x0;
    j["x1"] = r.x1;
    j["y0"] = r.y0;
    j["y1"] = r.y1;
    return j;
}

Rect rect_from(const njson& j, const char* what) {
    Rect r{number_from(member(j, "x0", what), std::string(what) + ".x0"),
           number_from(member(j, "x1", what), std::string(what) + ".x1"),
           number_from(member(j, "y0", what), std::string(what) + ".y0"),
           number_from(member(j, "y1", what), std::string(what) + ".y1")};
    if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
        bad(what, "degenerate chart (need x0 < x1 and y0 < y1)");
    return r;
}

njson series_json(const analytic::LaurentSeries& s) {
    njson arr = njson::array();
    for (const auto& [k, c] : s.coefficients())
        arr.push_back(njson::array({k, c.real(), c.imag()}));
    return arr;
}

analytic::LaurentSeries series_from(const njson& j, const char* what) {
    if (!j.is_array())
        bad(what, "expected a coefficient array [[k, re, im], ...]");
    LaurentSeries s;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 3)
            bad(what, "coefficient entries must be [k, re, im]");
        int k = int_from(entry[0], std::string(what) + " exponent");
        double re = number_from(entry[1], std::string(what) + " coefficient");
        double im = number_from(entry[2], std::string(what) + " coefficient");
        if (s.coefficient(k) != cplx(0.0))
            bad(what, "duplicate exponent " + std::to_string(k));
        s.set_coefficient(k, {re, im});
    }
    return s;
}

double require_number(const njson& j, const char* key, const char* what) {
    return number_from(member(j, key, what), std::string(what) + "." + key);
}

int require_int(const njson& j, const char* key, const char* what) {
    return int_from(member(j, key, what), std::string(what) + "." + key);
}

njson report_obj(const conformal::CurvatureReport& r, int res, analytic::FdOrder order) {
    double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
    for (double k : r.K.v) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    njson j;
    j["res"] = res;
    j["order"] = order == analytic::FdOrder::second ? 2 : 4;
    j["chart"] = rect_json(r.K.grid.rect);
    j["normalized_residual"] = r.normalized_residual;
    j["error_estimate"] = r.error_estimate;
    j["tau_sign"] = r.tau_sign;
    j["sign_class"] = conformal::to_string(r.sign.cls);
    j["sign_band"] =
        njson{{"tau", r.sign.tau}, {"max_pos", r.sign.max_pos}, {"min_neg", r.sign.min_neg}};
    j["K_min"] = kmin;
    j["K_max"] = kmax;
    j["residual_sup"] = r.residual.sup_norm();
    j["warnings"] = r.warnings;
    return j;
}

std::vector<std::array<int, 2>> torus_cone_nodes(const conical::TorusSolution& sol) {
    const Grid& g = sol.grid;
    const cplx w1 = sol.lattice[0], w2 = sol.lattice[1];
    const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
    std::vector<std::array<double, 2>> st;
    st.reserve(sol.cones.size());
    for (const auto& c : sol.cones) {
        const cplx p = c.position;
        st.push_back({(p.real() * w2.imag() - w2.real() * p.imag()) / det,
                      (w1.real() * p.imag() - p.real() * w1.imag()) / det});
    }
    std::vector<std::array<int, 2>> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            for (const auto& c : st) {
                double ds = g.x(i) - c[0], dt = g.y(j) - c[1];
                ds -= std::round(ds);
                dt -= std::round(dt);
                if (std::abs(ds) < 1e-9 && std::abs(dt) < 1e-9) {
                    out.push_back({i, j});
                    break;
                }
            }
        }
    return out;
}

njson torus_report_obj(const conical::TorusSolution& sol, int res) {
    njson j;
    j["background"] = "torus";
    j["lattice"] = njson::array({njson::array({sol.lattice[0].real(), sol.lattice[0].imag()}),
                                 njson::array({sol.lattice[1].real(), sol.lattice[1].imag()})});
    j["res"] = res;
    j["solver_residual"] = sol.solver_residual;
    j["rhs_mean_shift"] = sol.rhs_mean_shift;
    j["flatness"] = sol.flatness;
    j["rho_inner"] = sol.rho_inner;
    j["rho_outer"] = sol.rho_outer;
    njson cones = njson::array();
    for (const auto& c : sol.cones) {
        njson e;
        e["x"] = c.position.real();
        e["y"] = c.position.imag();
        e["spec_angle"] = c.spec_angle;
        e["measured_angle"] = c.measured_angle;
        e["fit_residual"] = c.fit_residual;
        cones.push_back(std::move(e));
    }
    j["cones"] = std::move(cones);
    njson nodes = njson::array();
    for (const auto& n : torus_cone_nodes(sol))
        nodes.push_back(njson::array({n[0], n[1]}));
    j["cone_nodes"] = std::move(nodes);
    return j;
}

njson measure_report_obj(const MeasureSpec& spec, const logharmonic::VirtualMeasureReport& r) {
    njson j;
    j["kind"] = spec.kind;
    j["center"] = njson::array({spec.center.real(), spec.center.imag()});
    j["radii"] = r.radii;
    j["flux"] = r.flux;
    j["mu"] = r.mu;
    j["nu"] = r.nu;
    j["fit_mu"] = r.fit_mu;
    j["flux_spread"] = r.flux_spread;
    j["fit_residual"] = r.fit_residual;
    if (spec.has_expected) {
        j["expected_mu"] = spec.expected_mu;
        j["expected_defect"] = std::abs(r.mu - spec.expected_mu);
    }
    return j;
}

njson polygon_report_obj(const conical::PolygonGluing& g, double special_alpha) {
    njson j;
    j["genus"] = g.genus;
    j["alpha"] = g.alpha;
    j["special_alpha"] = special_alpha;
    j["is_special_alpha"] = g.special_angle;
    j["side"] = g.side;
    j["theta"] = g.theta;
    j["area"] = g.area;
    j["gauss_bonnet_defect"] = g.gauss_bonnet_defect;
    njson sides = njson::array();
    for (const auto& [a, b] : g.identified_sides)
        sides.push_back(njson::array({a, b}));
    j["identified_sides"] = std::move(sides);
    njson tris = njson::array();
    for (const auto& t : g.triangles)
        tris.push_back(njson::array({t[0], t[1], t[2]}));
    j["triangles"] = std::move(tris);
    return j;
}

} // namespace detail

ConformalMetric metric_from_json(const std::string& text) {
    const char* what = "metric document";
    njson j = parse_doc(text, what);
    std::string type = string_from(member(j, "type", what), "metric document.type");
    if (type != "grid" && type != "closed-form" && type != "spinor" && type != "we")
        bad(what, "unknown type \"" + type +
                      "\" (expected grid, closed-form, spinor, or we)");
    Rect chart = detail::rect_from(member(j, "chart", what), "metric document.chart");
    const njson& payload = member(j, "payload", what);
    if (!payload.is_object())
        bad(what, "payload must be an object");

    if (type == "grid") {
        int nx = detail::require_int(payload, "nx", what);
        int ny = detail::require_int(payload, "ny", what);
        if (nx < 2 || ny < 2)
            bad(what, "grid payload needs nx, ny >= 2");
        double k0 = payload.contains("k0") ? number_from(payload["k0"], "payload.k0") : 0.0;
        const njson& f = member(payload, "f", what);
        if (!f.is_array() || f.size() != static_cast<size_t>(nx) * static_cast<size_t>(ny))
            bad(what, "payload.f must hold nx*ny row-major samples");
        RealField field{Grid(chart, nx, ny)};
        for (size_t k = 0; k < f.size(); ++k) {
            field.v[k] = number_from(f[k], "payload.f entry");
            if (!std::isfinite(field.v[k]))
                bad(what, "payload.f contains a non-finite sample");
        }
        return ConformalMetric::from_grid(std::move(field), k0);
    }
    if (type == "closed-form") {
        std::string family = string_from(member(payload, "family", what), "payload.family");
        double n = payload.contains("n") ? number_from(payload["n"], "payload.n") : 0.0;
        std::string model =
            payload.contains("model") ? string_from(payload["model"], "payload.model") : "";
        return closed_form_metric(family, chart, n, model, what);
    }
    if (type == "spinor")
        return spinor::metric_from_spinor(pair_from_obj(payload, chart, "spinor payload"));
    if (type == "we")
        return weierstrass::metric_from_we(we_from_obj(payload, chart, "we payload"));
    bad(what, "unknown type \"" + type + "\"");
}

std::string metric_json_grid(const ConformalMetric& g) {
    if (g.closed_form())
        throw std::invalid_argument(
            "grid metric document: input is closed form; sample it onto a grid first");
    const RealField& f = g.log_factor_grid();
    njson j;
    j["type"] = "grid";
    j["chart"] = detail::rect_json(f.grid.rect);
    njson payload;
    payload["k0"] = g.background_curvature();
    payload["nx"] = f.grid.nx;
    payload["ny"] = f.grid.ny;
    payload["f"] = f.v;
    j["payload"] = std::move(payload);
    return detail::dump(j);
}

std::string metric_json_spinor(const spinor::SpinorPair& p) {
    njson j;
    j["type"] = "spinor";
    j["chart"] = detail::rect_json(p.chart);
    j["payload"] = pair_obj(p);
    return detail::dump(j);
}

std::string metric_json_we(const weierstrass::WEData& we) {
    njson j;
    j["type"] = "we";
    j["chart"] = detail::rect_json(we.chart);
    j["payload"] = we_obj(we);
    return detail::dump(j);
}

std::string metric_json_closed_form(const std::string& family, const Rect& chart, double n,
                                    const std::string& model) {
    closed_form_metric(family, chart, n, model, "closed-form metric document");
    njson j;
    j["type"] = "closed-form";
    j["chart"] = detail::rect_json(chart);
    njson payload;
    payload["family"] = family;
    if (family == "spherical-cone" || family == "local-cone")
        payload["n"] = n;
    if (family == "local-cone")
        payload["model"] = model;
    j["payload"] = std::move(payload);
    return detail::dump(j);
}

spinor::SpinorPair spinor_from_json(const std::string& text) {
    const char* what = "spinor document";
    njson j = parse_doc(text, what);
    Rect chart = detail::rect_from(member(j, "chart", what), "spinor document.chart");
    return pair_from_obj(j, chart, what);
}

weierstrass::WEData we_from_json(const std::string& text) {
    const char* what = "we document";
    njson j = parse_doc(text, what);
    Rect chart = detail::rect_from(member(j, "chart", what), "we document.chart");
    return we_from_obj(j, chart, what);
}

std::string to_json(const spinor::SpinorPair& p) { return detail::dump(pair_obj(p)); }

std::string to_json(const weierstrass::WEData& we) { return detail::dump(we_obj(we)); }

conical::ConeSpec cone_spec_from_json(const std::string& text) {
    const char* what = "cone spec";
    njson j = parse_doc(text, what);
    conical::ConeSpec spec;
    std::string background = string_from(member(j, "background", what), "cone spec.background");
    if (background == "torus")
        spec.background = conical::Background::torus;
    else if (background == "disk")
        spec.background = conical::Background::disk;
    else
        bad(what, "background must be \"torus\" or \"disk\"");

    if (spec.background == conical::Background::torus) {
        const njson& lat = member(j, "lattice", what);
        if (!lat.is_array() || lat.size() != 2)
            bad(what, "lattice must be [[re, im], [re, im]]");
        spec.lattice = {point_from(lat[0], "cone spec.lattice[0]"),
                        point_from(lat[1], "cone spec.lattice[1]")};
    }
    if (auto it = j.find("model"); it != j.end()) {
        std::string model = string_from(*it, "cone spec.model");
        if (model == "flat")
            spec.model = conical::CurvatureModel::flat;
        else if (model == "spherical")
            spec.model = conical::CurvatureModel::spherical;
        else if (model == "hyperbolic")
            spec.model = conical::CurvatureModel::hyperbolic;
        else
            bad(what, "model must be \"flat\", \"spherical\" or \"hyperbolic\"");
    }
    const njson& cones = member(j, "cones", what);
    if (!cones.is_array())
        bad(what, "cones must be an array");
    for (const auto& c : cones) {
        conical::Cone cone;
        cone.position = {detail::require_number(c, "x", "cone"),
                         detail::require_number(c, "y", "cone")};
        cone.angle = detail::require_number(c, "beta", "cone");
        spec.cones.push_back(cone);
    }
    return spec;
}

std::string to_json(const conical::ConeSpec& spec) {
    njson j;
    j["background"] = spec.background == conical::Background::torus ? "torus" : "disk";
    if (spec.background == conical::Background::torus)
        j["lattice"] =
            njson::array({njson::array({spec.lattice[0].real(), spec.lattice[0].imag()}),
                          njson::array({spec.lattice[1].real(), spec.lattice[1].imag()})});
    njson cones = njson::array();
    for (const auto& c : spec.cones) {
        njson e;
        e["x"] = c.position.real();
        e["y"] = c.position.imag();
        e["beta"] = c.angle;
        cones.push_back(std::move(e));
    }
    j["cones"] = std::move(cones);
    if (spec.model != conical::CurvatureModel::flat)
        j["model"] = spec.model == conical::CurvatureModel::spherical ? "spherical" : "hyperbolic";
    return detail::dump(j);
}

std::string report_json(const conformal::CurvatureReport& r, int res, FdOrder order) {
    return detail::dump(detail::report_obj(r, res, order));
}

std::string report_csv(const conformal::CurvatureReport& r) {
    const Grid& gk = r.K.grid;
    const Grid& gr = r.residual.grid;
    const int di = (gk.nx - gr.nx) / 2, dj = (gk.ny - gr.ny) / 2;
    std::string out = "x,y,K,residual\n";
    out.reserve(gr.size() * 60 + out.size());
    for (int j = 0; j < gr.ny; ++j)
        for (int i = 0; i < gr.nx; ++i)
            append_csv(out, gr.x(i), gr.y(j), r.K.at(i + di, j + dj), r.residual.at(i, j));
    return out;
}

std::string torus_report_json(const conical::TorusSolution& sol, int res) {
    return detail::dump(detail::torus_report_obj(sol, res));
}

std::string torus_factor_json(const conical::TorusSolution& sol) {
    const Grid& g = sol.grid;
    auto nodes = detail::torus_cone_nodes(sol);
    std::vector<uint8_t> is_cone(g.size(), 0);
    for (const auto& n : nodes)
        is_cone[g.index(n[0], n[1])] = 1;
    njson j;
    j["type"] = "torus-factor";
    j["lattice"] = njson::array({njson::array({sol.lattice[0].real(), sol.lattice[0].imag()}),
                                 njson::array({sol.lattice[1].real(), sol.lattice[1].imag()})});
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    njson cone_nodes = njson::array();
    for (const auto& n : nodes)
        cone_nodes.push_back(njson::array({n[0], n[1]}));
    j["cone_nodes"] = std::move(cone_nodes);
    std::vector<double> values(g.size(), 0.0);
    for (int jj = 0; jj < g.ny; ++jj)
        for (int ii = 0; ii < g.nx; ++ii) {
            size_t k = g.index(ii, jj);
            if (!is_cone[k])
                values[k] = sol.factor(g.x(ii) * sol.lattice[0] + g.y(jj) * sol.lattice[1]);
        }
    j["values"] = std::move(values);
    return detail::dump(j);
}

std::string torus_factor_csv(const conical::TorusSolution& sol) {
    const Grid& g = sol.grid;
    auto nodes = detail::torus_cone_nodes(sol);
    std::vector<uint8_t> is_cone(g.size(), 0);
    for (const auto& n : nodes)
        is_cone[g.index(n[0], n[1])] = 1;
    std::string out = "s,t,factor\n";
    out.reserve(g.size() * 48 + out.size());
    char line[128];
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double f = 0.0;
            if (!is_cone[g.index(i, j)])
                f = sol.factor(g.x(i) * sol.lattice[0] + g.y(j) * sol.lattice[1]);
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j), f);
            out += line;
        }
    return out;
}

MeasureSpec measure_spec_from_json(const std::string& text) {
    const char* what = "measure spec";
    njson j = parse_doc(text, what);
    const njson& f = member(j, "f", what);
    MeasureSpec spec;
    spec.kind = string_from(member(f, "kind", what), "measure spec.f.kind");
    LaurentSeries h = detail::series_from(member(f, "h", what), "measure spec.f.h");
    if (spec.kind == "log-abs" || spec.kind == "log-abs2") {
        if (h.is_zero())
            bad(what, "log of the zero function");
        spec.f = spec.kind == "log-abs" ? analytic::log_abs(h) : analytic::log_abs2(h);
    } else if (spec.kind == "re") {
        spec.f = analytic::re_part(h);
    } else if (spec.kind == "im") {
        spec.f = analytic::im_part(h);
    } else {
        bad(what, "unknown kind \"" + spec.kind + "\" (log-abs, log-abs2, re, im)");
    }
    if (auto it = j.find("center"); it != j.end())
        spec.center = point_from(*it, "measure spec.center");
    if (auto it = j.find("radii"); it != j.end()) {
        if (!it->is_array())
            bad(what, "radii must be an array");
        spec.radii.clear();
        for (const auto& r : *it)
            spec.radii.push_back(number_from(r, "measure spec radius"));
    }
    if (auto it = j.find("agree_tol"); it != j.end()) {
        spec.agree_tol = number_from(*it, "measure spec.agree_tol");
        if (!(spec.agree_tol > 0))
            bad(what, "agree_tol must be positive");
    }
    if (auto it = j.find("expect_mu"); it != j.end()) {
        spec.has_expected = true;
        spec.expected_mu = number_from(*it, "measure spec.expect_mu");
    }
    if (auto it = j.find("expect_tol"); it != j.end()) {
        spec.expected_tol = number_from(*it, "measure spec.expect_tol");
        if (!(spec.expected_tol > 0))
            bad(what, "expect_tol must be positive");
    }
    return spec;
}

std::string measure_report_json(const MeasureSpec& spec,
                                const logharmonic::VirtualMeasureReport& r) {
    return detail::dump(detail::measure_report_obj(spec, r));
}

std::string polygon_report_json(const conical::PolygonGluing& g, double special_alpha) {
    return detail::dump(detail::polygon_report_obj(g, special_alpha));
}

} // namespace ricci::jsonio
