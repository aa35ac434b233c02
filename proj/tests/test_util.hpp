#pragma once

#include <random>

#include "ricci/laurent.hpp"

// Shared helpers for the test suites. Deterministic RNG throughout: fixed
// seeds, doubles derived from raw mt19937_64 output.

namespace testutil {

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) {
        const double t = (eng_() >> 11) * 0x1.0p-53; // [0,1)
        return a + t * (b - a);
    }
    int integer(int a, int b) { // inclusive
        return a + static_cast<int>(eng_() % static_cast<uint64_t>(b - a + 1));
    }
    ricci::cplx point_in_disk(double radius) {
        for (;;) {
            double x = uniform(-1, 1), y = uniform(-1, 1);
            if (x * x + y * y <= 1)
                return ricci::cplx(radius * x, radius * y);
        }
    }
    /// Dyadic complex coefficient (multiples of 1/16 in [-4,4]): products and
    /// sums of a few of these are exact in double precision.
    ricci::cplx dyadic() {
        return ricci::cplx(integer(-64, 64) / 16.0, integer(-64, 64) / 16.0);
    }

private:
    std::mt19937_64 eng_;
};

inline ricci::analytic::LaurentSeries random_poly(Rng& rng, int max_degree,
                                                  bool nonzero_lead = true) {
    std::vector<ricci::cplx> c(max_degree + 1);
    for (auto& x : c)
        x = rng.dyadic();
    if (nonzero_lead && c.back() == ricci::cplx(0.0))
        c.back() = ricci::cplx(1.0, 0.0);
    return ricci::analytic::LaurentSeries::polynomial(c);
}

/// Observed convergence order from errors at h and h/2.
inline double observed_order(double err_coarse, double err_fine) {
    return std::log2(err_coarse / err_fine);
}

} // namespace testutil
