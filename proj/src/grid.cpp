#include "ricci/grid.hpp"

#include <algorithm>
#include <cmath>

namespace ricci::analytic {

namespace {

// Cubic Lagrange basis through nodes at offsets {-1,0,1,2} evaluated at t in
// [0,1], plus its derivative. Exact for cubics, O(h^4) values / O(h^3) slopes.
void lagrange_weights(double t, double w[4], double dw[4]) {
    w[0] = -t * (t - 1) * (t - 2) / 6.0;
    w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
    w[2] = -(t + 1) * t * (t - 2) / 2.0;
    w[3] = (t + 1) * t * (t - 1) / 6.0;
    dw[0] = -(3 * t * t - 6 * t + 2) / 6.0;
    dw[1] = (3 * t * t - 4 * t - 1) / 2.0;
    dw[2] = -(3 * t * t - 2 * t - 2) / 2.0;
    dw[3] = (3 * t * t - 1) / 6.0;
}

} // namespace

InterpolatedValue interpolate_bicubic(const RealField& f, cplx z) {
    const Grid& g = f.grid;
    if (g.nx < 4 || g.ny < 4)
        throw std::invalid_argument("bicubic interpolation needs at least 4x4 samples");
    const double sx = (z.real() - g.rect.x0) / g.hx();
    const double sy = (z.imag() - g.rect.y0) / g.hy();
    if (sx < -1e-9 || sx > g.nx - 1 + 1e-9 || sy < -1e-9 || sy > g.ny - 1 + 1e-9)
        throw std::domain_error("interpolation point outside the grid rectangle");

    // Base node such that the 4-node window {base-1..base+2} stays in range.
    int bx = std::clamp(static_cast<int>(std::floor(sx)), 1, g.nx - 3);
    int by = std::clamp(static_cast<int>(std::floor(sy)), 1, g.ny - 3);
    const double tx = sx - bx, ty = sy - by;

    double wx[4], dwx[4], wy[4], dwy[4];
    lagrange_weights(tx, wx, dwx);
    lagrange_weights(ty, wy, dwy);

    double val = 0, dx = 0, dy = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            const double s = f.at(bx - 1 + i, by - 1 + j);
            val += wx[i] * wy[j] * s;
            dx += dwx[i] * wy[j] * s;
            dy += wx[i] * dwy[j] * s;
        }
    return {val, dx / g.hx(), dy / g.hy()};
}

} // namespace ricci::analytic
