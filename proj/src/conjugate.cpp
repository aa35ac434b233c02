#include "ricci/conjugate.hpp"

#include <cmath>
#include <string>

namespace ricci::analytic {

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    if (n < 2)
        throw std::invalid_argument("cumulative_integral needs at least 2 samples");

    // Slope estimates for the trapezoid correction term.
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        if (i >= 2 && i <= n - 3)
            d[i] = (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12 * h);
        else if (i >= 1 && i <= n - 2)
            d[i] = (f[i + 1] - f[i - 1]) / (2 * h);
        else if (i == 0)
            d[i] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
        else
            d[i] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    }

    std::vector<double> out(n, 0.0);
    for (int i = 0; i + 1 < n; ++i)
        out[i + 1] = out[i] + 0.5 * h * (f[i] + f[i + 1]) + h * h / 12.0 * (d[i] - d[i + 1]);
    return out;
}

namespace {

// Integrates the exact differential (p, q) over the grid, rows-first or
// columns-first, from the bottom-left node.
RealField integrate_differential(const RealField& p, const RealField& q, bool rows_first) {
    const Grid& g = p.grid;
    RealField v(g);
    const double hx = g.hx(), hy = g.hy();

    if (rows_first) {
        std::vector<double> row(g.nx);
        for (int i = 0; i < g.nx; ++i)
            row[i] = p.at(i, 0);
        auto base = cumulative_integral(row, hx);
        std::vector<double> col(g.ny);
        for (int i = 0; i < g.nx; ++i) {
            for (int j = 0; j < g.ny; ++j)
                col[j] = q.at(i, j);
            auto up = cumulative_integral(col, hy);
            for (int j = 0; j < g.ny; ++j)
                v.at(i, j) = base[i] + up[j];
        }
    } else {
        std::vector<double> col(g.ny);
        for (int j = 0; j < g.ny; ++j)
            col[j] = q.at(0, j);
        auto base = cumulative_integral(col, hy);
        std::vector<double> row(g.nx);
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i)
                row[i] = p.at(i, j);
            auto across = cumulative_integral(row, hx);
            for (int i = 0; i < g.nx; ++i)
                v.at(i, j) = base[j] + across[i];
        }
    }
    return v;
}

} // namespace

ConjugateResult harmonic_conjugate(const RealField& u, FdOrder order, double harmonic_tol) {
    const double residual = laplacian_flat(u, order).sup_norm();
    const double scale = std::max(1.0, u.sup_norm());
    if (residual > harmonic_tol * scale)
        throw std::invalid_argument("harmonic_conjugate: input is not harmonic (residual " +
                                    std::to_string(residual) + ")");

    auto grad = gradient(u, order);
    // dv = -u_y dx + u_x dy
    RealField p = grad.dy.map([](double a) { return -a; });
    const RealField& q = grad.dx;

    RealField v1 = integrate_differential(p, q, true);
    RealField v2 = integrate_differential(p, q, false);
    double path_error = 0;
    for (size_t k = 0; k < v1.v.size(); ++k)
        path_error = std::max(path_error, std::abs(v1.v[k] - v2.v[k]));
    return {std::move(v1), path_error, residual};
}

} // namespace ricci::analytic
