#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ricci/calculus.hpp"
#include "ricci/realfun.hpp"

namespace ricci::logharmonic {

using analytic::ComplexField;
using analytic::FdOrder;
using analytic::RealField;
using analytic::RealFunction;

/// Quadratic-form residual F * lap(F) + |grad F|^2 with the geometer's
/// positive Laplacian; zero exactly where log|F| is harmonic, and regular
/// across the zeros of F where log|F| itself is singular. Lives on the grid
/// shrunk by the stencil radius.
RealField log_harmonic_residual(const RealField& F, FdOrder order = FdOrder::second);

/// Sup of the residual off `mask` (pass nullptr for no mask), divided by the
/// sup of the two constituent terms, so admissible inputs score O(h^2) and
/// inadmissible ones score O(1).
double normalized_log_residual(const RealField& F, const std::vector<uint8_t>* mask = nullptr,
                               FdOrder order = FdOrder::second);

/// A sampled function claiming to have harmonic log modulus: the constructor
/// computes the near-zero band, verifies the residual off it, and verifies
/// that the sign is constant off it. Inputs failing either check are refused.
/// An infinite residual_tol skips the residual gate, keeping only the band
/// and sign bookkeeping.
struct LogHarmonicSample {
    RealField F;
    std::vector<uint8_t> zero_mask; // parallel to F.v, 1 inside the band |F| < tau
    double tau = 0;

    explicit LogHarmonicSample(RealField F_, double residual_tol = 1e-3,
                               FdOrder order = FdOrder::second);

    const Rect& chart() const { return F.grid.rect; }
    size_t masked_count() const;
};

/// Flux-based growth measure of a harmonic function around `center`:
/// mu = flux of grad f through each probe circle (radius independent for
/// harmonic f), cross-checked against the least-squares fit of the circle
/// means to mu log r + nu.
struct VirtualMeasureReport {
    double mu = 0;     // mean of the per-radius flux values (primary)
    double nu = 0;     // intercept of the mean-value fit
    double fit_mu = 0; // slope of the mean-value fit (cross-check)
    std::vector<double> radii;
    std::vector<double> flux;
    double flux_spread = 0;  // max |flux_i - mu|
    double fit_residual = 0; // sup deviation of the means from the fitted line
};

/// Throws when the per-radius flux values disagree beyond
/// agree_tol * max(1, |mu|): the input is not harmonic on the annulus.
/// Needs at least two positive, distinct radii.
VirtualMeasureReport virtual_measure(const RealFunction& f, std::vector<double> radii,
                                     cplx center = 0, double agree_tol = 1e-6);

/// Writes F = |h|^2 on a positive sample whose log is harmonic:
/// h = exp(u + i v) with u = log(F)/2 and v its harmonic conjugate, so h is
/// determined up to one global phase. The result lives on the grid shrunk by
/// the stencil radius. Throws when F is not everywhere positive or when the
/// harmonicity residual of log(F)/2 exceeds harmonic_tol.
ComplexField factor_positive(const RealField& F, FdOrder order = FdOrder::fourth,
                             double harmonic_tol = 1e-3);

/// Order of vanishing at z0 read off the flux of log F around z0: the flux
/// is 2 pi n for F locally |h|^2 |z - z0|^... with total degree n. The
/// integrality defect and a radial-symmetry ratio (max/min of F on the
/// innermost probe circle, -> 1 for an honest power-law principal part) are
/// reported; a defect beyond integrality_tol throws.
struct VanishingOrderReport {
    int n = 0;
    double mu = 0;
    double integrality_defect = 0;
    double radial_ratio = 1;
    std::vector<double> radii;
};

VanishingOrderReport vanishing_order(const LogHarmonicSample& s, cplx z0,
                                     double integrality_tol = 0.1);

/// Factorization through one interior zero: k = vanishing_order / 2 (odd
/// orders throw - no smooth |h|^2 behaves that way), then
/// h = (z - z0)^k * factor_positive(F / |z - z0|^{2k}).
std::pair<int, ComplexField> factor_with_zero(const RealField& F, cplx z0,
                                              FdOrder order = FdOrder::fourth,
                                              double harmonic_tol = 1e-3);

/// Harmonic extension of boundary data b(t), t the angle on the unit circle,
/// into the open disk by Herglotz-kernel quadrature; carries an analytic
/// gradient. Accurate for |z| away from 1 (quadrature degrades toward the
/// boundary).
RealFunction poisson_disk_extension(std::function<double(double)> boundary,
                                    int quadrature_samples = 512);

} // namespace ricci::logharmonic
