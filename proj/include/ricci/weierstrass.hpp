#pragma once

#include <array>
#include <string>

#include "ricci/calculus.hpp"
#include "ricci/conformal.hpp"
#include "ricci/laurent.hpp"
#include "ricci/spinor.hpp"

namespace ricci::weierstrass {

using analytic::FdOrder;
using analytic::Grid;
using analytic::LaurentSeries;
using analytic::RealField;
using spinor::SpinorPair;

/// Weierstrass data (alpha, beta) of a minimal surface: alpha is the
/// height-type differential coefficient, beta the stereographic Gauss map.
/// Both are expansions around a common center; annular domains (poles at the
/// center) are allowed, the immersion step decides whether they integrate.
struct WEData {
    LaurentSeries alpha;
    LaurentSeries beta;
    Rect chart;

    WEData(LaurentSeries alpha_, LaurentSeries beta_, Rect chart_);

    /// e^{-f} = |alpha| (1 + |beta|^2).
    double conformal_density(cplx z) const;
};

/// The derivative triple C = 2 dA/dz = (alpha(1+beta^2), i alpha(1-beta^2),
/// 2 i alpha beta); isotropic (sum of squares is the zero series) by
/// construction.
std::array<LaurentSeries, 3> c_vector(const WEData& we);

enum class Signature { euclidean, lorentz };

/// Sampled isothermal parametrization: coordinate fields of A on a common
/// grid plus the exact conformal density e^{-f} of the induced metric
/// (pairing x^2+y^2+z^2 for euclidean data, x^2+y^2-z^2 for lorentz).
struct Immersion {
    Signature sig = Signature::euclidean;
    std::array<RealField, 3> coords;
    RealField density; // e^{-f}, from the defining data, not from differencing

    const Grid& grid() const { return density.grid; }
};

/// Integrates C exactly: A = Re(antiderivative) plus rho log|z - center| for
/// a component with a real residue rho at the center (the closed-up radial
/// period case). A nonreal residue cannot close up and is an error naming
/// the offending component. A(center) = 0 whenever the center is regular.
Immersion immerse(const WEData& we, const Grid& grid);
Immersion immerse(const WEData& we, int res = 128);

/// Maximal-surface counterpart for a Lorentzian pair (|a| > |b|): integrates
/// C = (a^2 + b^2, i(a^2 - b^2), -2ab) against the pairing diag(1, 1, -1).
/// The induced density is e^{-f} = |a|^2 - |b|^2.
Immersion lorentz_immerse(const SpinorPair& p, const Grid& grid);
Immersion lorentz_immerse(const SpinorPair& p, int res = 128);

/// First form, unit normal and Weingarten entries by central differences of
/// the coordinate fields; everything lives on the grid shrunk once.
struct FundamentalForms {
    Signature sig;
    RealField first; // e^{-2f} as the mean of <A_x,A_x> and <A_y,A_y>
    std::array<RealField, 3> normal;
    RealField w11, w12, w22;
    double isothermal_defect = 0; // sup of |<A_x,A_x>-<A_y,A_y>| and 2|<A_x,A_y>|
    double trace_defect = 0;      // sup |w11 + w22| (minimality)
};

FundamentalForms fundamental_forms(const Immersion& imm, FdOrder order = FdOrder::second);

/// The holomorphic Hopf-type coefficient h = -2 i alpha beta', exact.
LaurentSeries hopf_h(const WEData& we);

/// K = det W (euclidean) or -det W (lorentz, timelike normal); agrees with
/// the conformal curvature of the induced metric at stencil order.
RealField curvature_via_detW(const FundamentalForms& ff);

/// Metric with density e^{-f} = |alpha| (1 + |beta|^2), closed form.
conformal::ConformalMetric metric_from_we(const WEData& we);

/// Deterministic OBJ text (v/f records, row-major triangulation, 17
/// significant digits, LF newlines).
std::string mesh_obj_text(const Immersion& imm);
/// mesh_obj_text written to a file.
void export_mesh(const Immersion& imm, const std::string& path);

} // namespace ricci::weierstrass
