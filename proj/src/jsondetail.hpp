#pragma once

#include <json.hpp>

#include "ricci/jsonio.hpp"

// Builders shared between the document writers and the command runners:
// everything that wants to append extra keys to a report works on the
// nlohmann object and dumps at the end.

namespace ricci::jsonio::detail {

using njson = nlohmann::ordered_json;

std::string dump(const njson& j);

njson rect_json(const Rect& r);
Rect rect_from(const njson& j, const char* what);

njson series_json(const analytic::LaurentSeries& s);
analytic::LaurentSeries series_from(const njson& j, const char* what);

njson report_obj(const conformal::CurvatureReport& r, int res, analytic::FdOrder order);
njson torus_report_obj(const conical::TorusSolution& sol, int res);
njson measure_report_obj(const MeasureSpec& spec, const logharmonic::VirtualMeasureReport& r);
njson polygon_report_obj(const conical::PolygonGluing& g, double special_alpha);

double require_number(const njson& j, const char* key, const char* what);
int require_int(const njson& j, const char* key, const char* what);

/// Grid nodes of a torus solution that coincide with a cone point, as
/// (i, j) index pairs; the four duplicated corners of a corner cone all
/// appear.
std::vector<std::array<int, 2>> torus_cone_nodes(const conical::TorusSolution& sol);

} // namespace ricci::jsonio::detail
