#pragma once

#include <string>
#include <vector>

#include "ricci/conformal.hpp"
#include "ricci/conical.hpp"
#include "ricci/logharmonic.hpp"
#include "ricci/spinor.hpp"
#include "ricci/weierstrass.hpp"

namespace ricci::jsonio {

using analytic::FdOrder;
using analytic::RealFunction;

/// Document formats. Every writer emits a fixed key order and shortest
/// round-trip float literals, so identical inputs produce identical bytes.
/// Every parser throws std::invalid_argument naming the offending field on
/// malformed, mistyped, or inconsistent input.
///
/// Metric document: {"type": "grid"|"closed-form"|"spinor"|"we",
/// "chart": {"x0","x1","y0","y1"}, "payload": {...}}. The payload of a
/// "spinor" metric is a spinor-pair document ({"a": [[k,re,im],...], "b":
/// [...], "epsilon": +-1, "chart": {...}}, chart optional inside the wrapper
/// but required to match when present); "we" mirrors it with alpha/beta. A
/// "grid" payload stores the log-factor samples row-major; a "closed-form"
/// payload names a family: "flat", "round-sphere", "hyperbolic-disk",
/// "spherical-cone" (real n > 0), "local-cone" (integer n >= 1 plus model
/// "spherical"|"hyperbolic").
conformal::ConformalMetric metric_from_json(const std::string& text);

std::string metric_json_grid(const conformal::ConformalMetric& g);
std::string metric_json_spinor(const spinor::SpinorPair& p);
std::string metric_json_we(const weierstrass::WEData& we);
std::string metric_json_closed_form(const std::string& family, const Rect& chart,
                                    double n = 0, const std::string& model = "");

/// Standalone component documents.
spinor::SpinorPair spinor_from_json(const std::string& text);
weierstrass::WEData we_from_json(const std::string& text);
std::string to_json(const spinor::SpinorPair& p);
std::string to_json(const weierstrass::WEData& we);

/// Cone prescription: {"background": "torus"|"disk", "lattice":
/// [[re,im],[re,im]] (torus), "cones": [{"x","y","beta"},...], optional
/// "model": "flat"|"spherical"|"hyperbolic" (default flat)}.
conical::ConeSpec cone_spec_from_json(const std::string& text);
std::string to_json(const conical::ConeSpec& spec);

/// Curvature verification report as JSON (summary scalars, sign data,
/// warnings) and as CSV with header "x,y,K,residual": one row per node of
/// the residual grid, K sampled at the matching node of its finer parent.
std::string report_json(const conformal::CurvatureReport& r, int res, FdOrder order);
std::string report_csv(const conformal::CurvatureReport& r);

/// Torus solve artifacts: the verification report, the conformal factor as a
/// grid document, and the same grid as "s,t,factor" CSV. Nodes that land
/// exactly on a cone (where the factor is 0 or infinite) store factor 0 and
/// are listed under "cone_nodes" in the report and the grid document.
std::string torus_report_json(const conical::TorusSolution& sol, int res);
std::string torus_factor_json(const conical::TorusSolution& sol);
std::string torus_factor_csv(const conical::TorusSolution& sol);

/// Harmonic-function spec for flux measurements: {"f": {"kind":
/// "log-abs"|"log-abs2"|"re"|"im", "h": [[k,re,im],...]}, optional "center":
/// [x,y], "radii": [...], "agree_tol", "expect_mu", "expect_tol"}.
struct MeasureSpec {
    RealFunction f;
    std::string kind;
    cplx center = 0;
    std::vector<double> radii{0.1, 0.15, 0.2, 0.3};
    double agree_tol = 1e-6;
    bool has_expected = false;
    double expected_mu = 0;
    double expected_tol = 1e-8;
};
MeasureSpec measure_spec_from_json(const std::string& text);
std::string measure_report_json(const MeasureSpec& spec,
                                const logharmonic::VirtualMeasureReport& r);

std::string polygon_report_json(const conical::PolygonGluing& g, double special_alpha);

} // namespace ricci::jsonio
