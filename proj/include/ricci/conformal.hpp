#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ricci/calculus.hpp"
#include "ricci/realfun.hpp"

namespace ricci::conformal {

using analytic::FdOrder;
using analytic::Grid;
using analytic::GridField;
using analytic::RealField;
using analytic::RealFunction;

/// Metric g = e^{-2f} g0 on a rectangular chart, where g0 is the flat chart
/// metric scaled to have constant curvature K0 (K0 = 0 in every construction
/// here, but the curvature formula carries it). The log-factor f is either a
/// closed-form evaluable or a stored grid sample; closed forms can be
/// resampled at any resolution, grid metrics are pinned to their grid.
class ConformalMetric {
public:
    static ConformalMetric from_log_factor(Rect chart, RealFunction f, double K0 = 0.0);
    /// W = e^{-2f} directly, i.e. g = W |dz|^2.
    static ConformalMetric from_conformal_factor(Rect chart, RealFunction W, double K0 = 0.0);
    static ConformalMetric from_grid(RealField f, double K0 = 0.0);
    static ConformalMetric flat(Rect chart);

    const Rect& chart() const { return chart_; }
    double background_curvature() const { return K0_; }
    bool closed_form() const { return f_closed_.has_value(); }

    /// Closed-form log-factor (throws for grid metrics).
    const RealFunction& log_factor() const;
    const RealField& log_factor_grid() const;

    double log_factor_at(cplx z) const;
    /// e^{-2f}(z)
    double conformal_factor_at(cplx z) const;

    /// Samples (or restricts) the log-factor onto the given grid.
    RealField log_factor_on(const Grid& g) const;
    /// The grid curvature ops run on: `over(chart, res)` for closed forms,
    /// the stored grid otherwise.
    Grid working_grid(int res) const;

    /// Metric V * g (V a positive function): log-factor f - log(V)/2.
    ConformalMetric scaled_by(const RealFunction& V) const;
    /// Metric V^{-1} * g: log-factor f + log(V)/2.
    ConformalMetric divided_by(const RealFunction& V) const;

private:
    Rect chart_;
    double K0_ = 0.0;
    std::optional<RealFunction> f_closed_;
    std::optional<RealField> f_grid_;
};

/// Gauss curvature K = e^{2f} (K0 - Delta_0 f) by interior finite
/// differences; lives on the working grid shrunk by the stencil radius.
RealField gaussian_curvature(const ConformalMetric& g, int res = 256,
                             FdOrder order = FdOrder::fourth);

/// Delta_g u = e^{2f} Delta_0 u on u's interior grid.
RealField laplace_beltrami(const ConformalMetric& g, const RealField& u,
                           FdOrder order = FdOrder::fourth);

enum class SignClass { nonpositive, nonnegative, zero, mixed };
const char* to_string(SignClass c);

struct SignReport {
    SignClass cls;
    double tau;     // noise band: |K| <= tau counts as zero
    double max_pos; // largest K above the band (0 if none)
    double min_neg; // most negative K below the band (0 if none)
};
SignReport sign_analysis(const RealField& K, double tau);

/// Estimated sup error of the curvature field at this resolution (two-grid
/// Richardson for closed forms, stencil-order comparison for grid metrics).
double curvature_error_estimate(const ConformalMetric& g, int res, FdOrder order);

struct CurvatureReport {
    RealField K;              // chart shrunk once
    RealField residual;       // K Delta_g K + |dK|_g^2 + 4 K^3, chart shrunk twice
    double normalized_residual; // sup |residual| / (1+|K|)^3
    double error_estimate;    // estimated discretization error of K
    double tau_sign;          // 10 * error_estimate
    SignReport sign;
    std::vector<std::string> warnings;
};

/// Pointwise defect of the curvature equation K Delta K + |dK|^2 + 4 K^3.
CurvatureReport ricci_residual(const ConformalMetric& g, int res = 256,
                               FdOrder order = FdOrder::fourth);

struct LogCurvatureResidual {
    RealField value;          // Delta_g log|K| + 4K, 0 where masked
    std::vector<uint8_t> mask; // 1 = masked (|K| <= tau_zero)
    double tau_zero;
    double sup_unmasked;
    size_t masked_count;
};

/// Defect of the logarithmic form of the curvature equation away from zeros
/// of K; points with |K| <= tau_zero = max(1e-8, tau_sign) are masked.
LogCurvatureResidual log_ricci_residual(const ConformalMetric& g, int res = 256,
                                        FdOrder order = FdOrder::fourth);

/// Metric (|K|)^r g, log-factor f - (r/2) log(-K) (or log(+K) for positive
/// curvature; the sign is taken from sign_analysis and mixed-sign K is an
/// error). Closed-form when both f and the supplied curvature are closed
/// form; otherwise a grid metric at the given resolution.
ConformalMetric conformal_power(const ConformalMetric& g, double r,
                                const RealFunction* K_closed = nullptr, int res = 256,
                                FdOrder order = FdOrder::fourth);

struct ConstructionReport {
    double flat_check;      // sup |K(g_half)|
    double model_check;     // sup |K(V g_half) -/+ 1|
    double curvature_match; // sup |K(g) - (-/+ V^2)| / (1 + V^2)
    double normalized_residual;
};

/// Curvature -V^2 metric from a flat metric g_half and V with V*g_half
/// spherical (K = 1). Returns V^{-1} g_half; throws when either check fails.
ConformalMetric ricci_from_flat_spherical(const RealFunction& V, const ConformalMetric& g_half,
                                          int res = 256, FdOrder order = FdOrder::fourth,
                                          double check_tol = 1e-3,
                                          ConstructionReport* report = nullptr);
/// Curvature +V^2 metric from V with V*g_half hyperbolic (K = -1).
ConformalMetric ricci_from_flat_hyperbolic(const RealFunction& V, const ConformalMetric& g_half,
                                           int res = 256, FdOrder order = FdOrder::fourth,
                                           double check_tol = 1e-3,
                                           ConstructionReport* report = nullptr);

} // namespace ricci::conformal
