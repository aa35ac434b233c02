#pragma once

#include "ricci/calculus.hpp"

namespace ricci::analytic {

struct ConjugateResult {
    RealField v;             // lives on the grid shrunk by the stencil radius
    double path_error;       // sup difference between two integration orders
    double harmonic_residual; // sup |laplacian| of the input
};

/// Harmonic conjugate of u on a rectangle: v with dv = -u_y dx + u_x dy,
/// normalized v = 0 at the bottom-left node of the interior grid. The
/// gradient is sampled with central differences and integrated with a
/// derivative-corrected trapezoid rule, so the result converges at the
/// stencil order. Throws when u fails the harmonicity check.
ConjugateResult harmonic_conjugate(const RealField& u, FdOrder order = FdOrder::fourth,
                                   double harmonic_tol = 1e-3);

/// Cumulative integral of uniformly sampled f with spacing h, corrected
/// trapezoid (O(h^4) with the built-in slope estimates). out[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

} // namespace ricci::analytic
