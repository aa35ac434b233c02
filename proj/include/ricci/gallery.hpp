#pragma once

#include <string>
#include <vector>

#include "ricci/calculus.hpp"

namespace ricci::gallery {

/// One named text artifact of a run (JSON report, CSV table, OBJ mesh).
struct Artifact {
    std::string filename;
    std::string content;
};

/// One verification gate of a run, with a preformatted human-readable
/// summary ("normalized residual 2.1e-06 (tolerance 0.001)").
struct Check {
    std::string label;
    bool passed = false;
    std::string detail;
};

struct RunResult {
    std::string command;
    bool passed = true;
    std::vector<Check> checks;
    std::vector<Artifact> files;
};

/// Resolution / stencil / tolerance knobs shared by all commands. `res`
/// drives chart reports and meshes; `torus_res` drives the periodic solver,
/// which needs more points to resolve the cone collars than a chart report
/// needs for a smooth metric. `tol` gates the normalized curvature-equation
/// residual (chart runs) and the off-collar flatness (torus runs).
struct RunOptions {
    int res = 256;
    analytic::FdOrder order = analytic::FdOrder::fourth;
    double tol = 1e-3;
    int torus_res = 512;
};

/// The named examples: enneper, plane, catenoid, zn-family, lorentz-family,
/// spherical-cone (the three families take the integer parameter n >= 1),
/// conical-torus-demo.
std::vector<std::string> gallery_names();

/// Builds a named example, verifies it, and returns reports plus (where the
/// data immerses) an OBJ mesh. Unknown names or bad parameters throw
/// std::invalid_argument.
RunResult run_gallery(const std::string& name, int n, const RunOptions& opt);

/// Parses a metric document, runs the curvature-equation residual, and gates
/// it on opt.tol plus a definite curvature sign.
RunResult run_check_metric(const std::string& metric_json, const RunOptions& opt);

/// Flux measurement of a harmonic-function spec over probe circles.
RunResult run_virtual_measure(const std::string& spec_json);

/// Periodic flat solve for a cone prescription, with angle verification.
RunResult run_conical_torus(const std::string& spec_json, const RunOptions& opt);

/// Spherical-polygon gluing audit; alpha == nullptr picks the angle that
/// makes the glued vertex cone angle an exact multiple of 2 pi.
RunResult run_polygon(int genus, const double* alpha);

} // namespace ricci::gallery
