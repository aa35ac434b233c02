#pragma once

#include <complex>
#include <limits>
#include <stdexcept>

namespace ricci {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Closed axis-aligned rectangle [x0,x1] x [y0,y1] in the z = x + i*y chart.
struct Rect {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains(cplx z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
    /// Largest |z - center| over the rectangle (corner radius).
    double outer_radius() const {
        cplx c = center();
        return std::abs(cplx(x1, y1) - c);
    }

    static Rect square(cplx center, double half_side) {
        return {center.real() - half_side, center.real() + half_side,
                center.imag() - half_side, center.imag() + half_side};
    }
};

/// Open annulus r_inner < |z - center| < r_outer; r_outer may be infinite.
/// With r_inner = 0 the center itself is excluded unless the function
/// represented on it extends there (the series type handles that case).
struct Annulus {
    cplx center = 0;
    double r_inner = 0;
    double r_outer = inf;

    bool contains(cplx z) const {
        double r = std::abs(z - center);
        return r > r_inner && r < r_outer;
    }
    static Annulus disk(cplx center, double radius) { return {center, 0.0, radius}; }
    static Annulus plane(cplx center = 0) { return {center, 0.0, inf}; }

    Annulus intersect(const Annulus& other) const {
        if (center != other.center)
            throw std::invalid_argument("annulus intersection: centers differ");
        return {center, std::max(r_inner, other.r_inner), std::min(r_outer, other.r_outer)};
    }
};

} // namespace ricci
