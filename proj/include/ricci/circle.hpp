#pragma once

#include "ricci/realfun.hpp"

namespace ricci::analytic {

/// Circle |z - center| = radius sampled at m uniform angles. The uniform
/// trapezoid rule is spectrally accurate for smooth periodic integrands.
struct CirclePath {
    cplx center = 0;
    double radius = 1;
    int samples = 256;

    CirclePath(cplx c, double r, int m = 256) : center(c), radius(r), samples(m) {
        if (r <= 0)
            throw std::invalid_argument("circle radius must be positive");
        if (m < 16)
            throw std::invalid_argument("circle quadrature needs at least 16 samples");
    }
    cplx point(int k) const {
        double t = 2 * pi * k / samples;
        return center + radius * cplx(std::cos(t), std::sin(t));
    }
};

enum class CircleWeight {
    arclength, // ∫ f dl
    angle,     // ∫ f dθ
    flux       // ∫ (∂_x f dy - ∂_y f dx)  =  r ∫ ∂_r f dθ
};

/// flux uses f.grad when present; otherwise the radial derivative falls back
/// to Richardson-extrapolated central differences of f.value.
double circle_integral(const RealFunction& f, const CirclePath& path, CircleWeight w);

} // namespace ricci::analytic
