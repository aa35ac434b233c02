#pragma once

#include <functional>
#include <vector>

#include "ricci/types.hpp"

namespace ricci::analytic {

/// Uniform rectangular sample layout: nx x ny nodes including both endpoints,
/// row-major with x fastest (index = iy * nx + ix).
struct Grid {
    Rect rect;
    int nx = 0, ny = 0;

    Grid() = default;
    Grid(Rect r, int nx_, int ny_) : rect(r), nx(nx_), ny(ny_) {
        if (nx < 2 || ny < 2)
            throw std::invalid_argument("grid needs at least 2 samples per axis");
        if (rect.width() <= 0 || rect.height() <= 0)
            throw std::invalid_argument("grid rectangle is degenerate");
    }
    /// res cells per side (res+1 samples), square sample counts.
    static Grid over(Rect r, int res) { return Grid(r, res + 1, res + 1); }

    double hx() const { return rect.width() / (nx - 1); }
    double hy() const { return rect.height() / (ny - 1); }
    double x(int i) const { return rect.x0 + i * hx(); }
    double y(int j) const { return rect.y0 + j * hy(); }
    cplx z(int i, int j) const { return {x(i), y(j)}; }
    size_t size() const { return static_cast<size_t>(nx) * ny; }
    size_t index(int i, int j) const { return static_cast<size_t>(j) * nx + i; }

    /// Sub-grid shrunk by `margin` nodes on every side; spacing unchanged.
    Grid shrunk(int margin) const {
        if (nx - 2 * margin < 2 || ny - 2 * margin < 2)
            throw std::invalid_argument("grid too small to shrink by the stencil radius");
        Rect r{rect.x0 + margin * hx(), rect.x1 - margin * hx(),
               rect.y0 + margin * hy(), rect.y1 - margin * hy()};
        return Grid(r, nx - 2 * margin, ny - 2 * margin);
    }

    bool same_layout(const Grid& o) const {
        return nx == o.nx && ny == o.ny && rect.x0 == o.rect.x0 && rect.x1 == o.rect.x1 &&
               rect.y0 == o.rect.y0 && rect.y1 == o.rect.y1;
    }
};

template <class T>
struct GridField {
    Grid grid;
    std::vector<T> v;

    GridField() = default;
    explicit GridField(const Grid& g, T fill = T{}) : grid(g), v(g.size(), fill) {}

    T& at(int i, int j) { return v[grid.index(i, j)]; }
    const T& at(int i, int j) const { return v[grid.index(i, j)]; }

    static GridField sample(const Grid& g, const std::function<T(cplx)>& f) {
        GridField out(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out.at(i, j) = f(g.z(i, j));
        return out;
    }

    double sup_norm() const {
        double m = 0;
        for (auto& x : v)
            m = std::max(m, std::abs(x));
        return m;
    }

    template <class F>
    auto map(F&& f) const -> GridField<decltype(f(v[0]))> {
        GridField<decltype(f(v[0]))> out(grid);
        for (size_t k = 0; k < v.size(); ++k)
            out.v[k] = f(v[k]);
        return out;
    }

    /// Restriction to a sub-rectangle of nodes, preserving spacing.
    GridField restricted(int i0, int j0, int nx2, int ny2) const {
        Grid g2(Rect{grid.x(i0), grid.x(i0 + nx2 - 1), grid.y(j0), grid.y(j0 + ny2 - 1)}, nx2,
                ny2);
        GridField out(g2);
        for (int j = 0; j < ny2; ++j)
            for (int i = 0; i < nx2; ++i)
                out.at(i, j) = at(i0 + i, j0 + j);
        return out;
    }

    /// Every-other-node subsample; requires odd sample counts so the
    /// endpoints survive. Used for two-grid error estimates.
    GridField coarsened() const {
        if (grid.nx % 2 == 0 || grid.ny % 2 == 0)
            throw std::invalid_argument("coarsening needs odd sample counts");
        Grid g2(grid.rect, (grid.nx + 1) / 2, (grid.ny + 1) / 2);
        GridField out(g2);
        for (int j = 0; j < g2.ny; ++j)
            for (int i = 0; i < g2.nx; ++i)
                out.at(i, j) = at(2 * i, 2 * j);
        return out;
    }
};

using RealField = GridField<double>;
using ComplexField = GridField<cplx>;

/// Pointwise combination on identical layouts.
template <class T, class U, class F>
auto zip(const GridField<T>& a, const GridField<U>& b, F&& f)
    -> GridField<decltype(f(a.v[0], b.v[0]))> {
    if (!a.grid.same_layout(b.grid))
        throw std::invalid_argument("zip: grid layouts differ");
    GridField<decltype(f(a.v[0], b.v[0]))> out(a.grid);
    for (size_t k = 0; k < a.v.size(); ++k)
        out.v[k] = f(a.v[k], b.v[k]);
    return out;
}

/// Cubic Lagrange interpolation (4x4 neighborhood) of a real field, with the
/// interpolant's analytic first derivatives. The point must sit at least one
/// cell inside the boundary neighborhood; otherwise the stencil is clamped.
struct InterpolatedValue {
    double value;
    double fx, fy;
};
InterpolatedValue interpolate_bicubic(const RealField& f, cplx z);

} // namespace ricci::analytic
