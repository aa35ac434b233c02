#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ricci/conformal.hpp"
#include "ricci/laurent.hpp"

namespace ricci::conical {

using analytic::Grid;
using analytic::LaurentSeries;
using analytic::RealField;
using analytic::RealFunction;
using conformal::ConformalMetric;

enum class Background { torus, disk };
enum class CurvatureModel { flat, spherical, hyperbolic };

struct Cone {
    cplx position;
    double angle; // total cone angle in radians (2 pi = smooth point)
};

/// Prescription of a conical metric: where the cones sit, how wide they open,
/// and which constant-curvature model the metric should follow off the cones.
/// On the closed torus a flat target is solvable exactly when the angle
/// excesses balance: sum(angle - 2 pi) = 0.
struct ConeSpec {
    Background background = Background::torus;
    std::array<cplx, 2> lattice{cplx(1, 0), cplx(0, 1)};
    std::vector<Cone> cones;
    CurvatureModel model = CurvatureModel::flat;

    /// |sum(angle - 2 pi)| (meaningful for the closed torus).
    double angle_sum_defect() const;
    /// Throws invalid_argument on non-positive angles, coincident points, a
    /// degenerate lattice, or a violated torus angle-sum constraint.
    void validate() const;
};

struct ConeAngleReport {
    double angle = 0;        // 2 pi * slope
    double slope = 0;        // d log(circumference) / d log(radius)
    double fit_residual = 0; // sup |log l_k - fit| over the probe radii
    std::vector<double> radii;
    std::vector<double> lengths;
};

/// Measures the cone angle of a metric factor W (g = W |dz|^2) at p by
/// fitting log of the circle circumference l(r) = integral sqrt(W) |dz|
/// against log r: a factor W ~ |z-p|^(2 gamma) gives slope gamma/1 + 1 and
/// angle 2 pi (gamma + 1), so the smooth case reads 2 pi exactly. Throws when
/// the fit residual exceeds fit_tol (no power law) or W is not positive on
/// the probe circles.
ConeAngleReport cone_angle_measure(const std::function<double(cplx)>& factor, cplx p,
                                   const std::vector<double>& radii, double fit_tol = 5e-2,
                                   int samples = 512);
/// Same measurement on a ConformalMetric; empty radii default to four circles
/// within half the distance from p to the chart boundary.
ConeAngleReport cone_angle_measure(const ConformalMetric& g, cplx p,
                                   std::vector<double> radii = {}, double fit_tol = 5e-2);

struct TorusConeReading {
    cplx position;
    double spec_angle = 0;
    double measured_angle = 0;
    double fit_residual = 0;
};

/// A flat metric e^{2v} u |dz|^2 on the torus C / lattice with the prescribed
/// cones, where u carries the local models |z - p|^(angle/pi - 2) glued by
/// smooth cutoffs and v solves the periodic Poisson equation that kills the
/// curvature of the blend.
struct TorusSolution {
    Grid grid;   // lattice coordinates (s,t) in [0,1]^2, edges duplicated
    std::array<cplx, 2> lattice{cplx(1, 0), cplx(0, 1)};
    RealField v; // mean-zero Poisson solution on `grid`
    /// Full conformal factor e^{2v} u at any z (reduced modulo the lattice).
    std::function<double(cplx)> factor;
    double solver_residual = 0; // relative sup defect of the discrete solve
    double rhs_mean_shift = 0;  // |mean| removed from the right-hand side
    double flatness = 0;        // sup |K| at nodes clear of the collars
    double rho_inner = 0;       // cutoff = 1 inside this torus distance
    double rho_outer = 0;       // cutoff = 0 outside this torus distance
    std::vector<TorusConeReading> cones;
    ConformalMetric metric; // factor over the fundamental domain's bounding box
};

/// Solves the flat conical metric problem on the torus with a Fourier
/// spectral Poisson solver at res x res sample points. Preconditions: the
/// spec validates, and cones are separated by at least 4 grid cells.
TorusSolution flat_conical_torus(const ConeSpec& spec, int res = 512);

/// The spherical metric with one cone of angle 2 pi n at the origin:
/// 4 n^2 |z|^(2n-2) |dz|^2 / (1 + |z|^(2n))^2. Curvature 1 off the origin;
/// n = 1 is the round metric with no cone. Real n > 0 is accepted.
ConformalMetric spherical_cone_local(double n, Rect chart = Rect::square(0, 0.8));

/// Output of the local construction at a cone of angle 2 pi n: the metric
/// (1 +/- |z|^(2n))^2 |dz|^2 / (4 n^2), smooth across the origin, with
/// curvature -V^2 (spherical input) or +V^2 (hyperbolic input).
struct LocalConeReport {
    ConformalMetric metric;
    RealFunction V; // conical model / flat model ratio, vanishing at 0 for n >= 2
    conformal::ConstructionReport pipeline; // checks from the off-center chart run
    double factor_match = 0; // pipeline output vs closed form, off-center chart
    double spinor_match = 0; // closed form vs the density of ((2n)^{-1/2}, (2n)^{-1/2} z^n)
    std::string note;        // set for n = 1, where V has no zero and no cone forms
};

/// Runs the flat/spherical (or flat/hyperbolic) sandwich at a single cone:
/// g_half = |z|^(n-1) |dz|^2, V = model/g_half, output V^{-1} g_half. The
/// construction checks run on a chart off the puncture; the returned metric
/// is the closed form, which continues smoothly across 0.
LocalConeReport ricci_from_conical_local(int n, CurvatureModel model, int res = 128);

/// Pullback of the round sphere metric under a holomorphic map:
/// 4 |phi'|^2 |dz|^2 / (1 + |phi|^2)^2. Curvature 1 off the critical points
/// of phi; a critical point of local degree n carries a cone of angle 2 pi n.
ConformalMetric pullback_spherical(const LaurentSeries& map, Rect chart);

struct CoverAudit {
    bool riemann_hurwitz = false;  // -sum(n_j - 1) + 2 degree == 2 - 2 genus
    bool angle_constraint = false; // sum(2 pi n_j - 2 pi) == 4 pi (2 genus - 2)
    int euler_defect = 0;          // (2 - 2g) - (2 degree - sum(n_j - 1))
    int angle_defect_over_2pi = 0; // sum(n_j - 1) - (4g - 4)
    bool degree_matches_genus = false; // degree == genus - 1
};

/// Arithmetic audit of a degree-`degree` branched cover of the sphere by a
/// genus-`genus` surface with the given branch orders: checks the
/// Riemann-Hurwitz count and the cone-angle balance of the pulled-back round
/// metric. When Riemann-Hurwitz holds, the angle balance holds exactly when
/// degree == genus - 1.
CoverAudit riemann_hurwitz_audit(const std::vector<int>& branch_orders, int degree,
                                 int genus);

/// Gluing data for a genus-g surface cut into a 4g-gon and fanned into 4g-2
/// congruent equilateral spherical triangles of angle alpha. All vertices
/// identify to one point of total angle theta = 3 alpha (4g-2).
struct PolygonGluing {
    int genus = 0;
    double alpha = 0; // triangle angle
    double side = 0;  // triangle side, cos(side) = cos(alpha)/(1 - cos(alpha))
    double theta = 0; // cone angle at the single vertex
    double area = 0;  // (4g-2)(3 alpha - pi)
    std::vector<std::pair<int, int>> identified_sides; // 0-based 4g-gon sides
    std::vector<std::array<int, 3>> triangles;         // fan from vertex 0
    bool special_angle = false;  // theta == 2 pi (4g-3)
    double gauss_bonnet_defect = 0; // |area - (theta - 2 pi (2g-1))|
};

/// alpha = pi (4g-3) / (6g-3), the angle at which theta = 2 pi (4g-3).
double polygon_special_angle(int genus);

/// Builds the gluing for genus g >= 2 and alpha in (pi/3, 5 pi/3); throws
/// outside that open interval (the equilateral spherical triangle
/// degenerates at the ends).
PolygonGluing polygon_gluing(int genus, double alpha);

struct VanishingClaimReport {
    int genus = 0;
    int n = 0;              // 4 genus - 3
    int expected_order = 0; // 8 (genus - 1)
    int measured_order = 0; // flux-extracted order of -K at the cone
    double mu = 0;          // virtual measure of log(-K) about 0
    double integrality_defect = 0;
};

/// Measures the vanishing order of the curvature of
/// ricci_from_conical_local(4g-3, spherical) at the cone by the flux of
/// log(-K) over small circles, and compares with 8(g-1). genus >= 1
/// (genus 1 is the degenerate n = 1 case with no zero).
VanishingClaimReport vanishing_order_claim_check(int genus);

} // namespace ricci::conical
