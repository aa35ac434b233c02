#include "ricci/calculus.hpp"

namespace ricci::analytic {

namespace detail {

void require_fd_size(const Grid& g, FdOrder order) {
    const int need = 2 * stencil_radius(order) + 2;
    if (g.nx < std::max(8, need) || g.ny < std::max(8, need))
        throw std::invalid_argument("grid too small for interior derivative stencils");
}

} // namespace detail

namespace {

// Writes the derivative of one axis-aligned line of samples into `out` at the
// interior offsets. d1/d2 select first or second derivative.
template <class T, class Get>
T stencil_d1(Get&& s, int c, double h, FdOrder order) {
    if (order == FdOrder::second)
        return (s(c + 1) - s(c - 1)) / (2 * h);
    return (-s(c + 2) + 8.0 * s(c + 1) - 8.0 * s(c - 1) + s(c - 2)) / (12 * h);
}

template <class T, class Get>
T stencil_d2(Get&& s, int c, double h, FdOrder order) {
    if (order == FdOrder::second)
        return (s(c + 1) - 2.0 * s(c) + s(c - 1)) / (h * h);
    return (-s(c + 2) + 16.0 * s(c + 1) - 30.0 * s(c) + 16.0 * s(c - 1) - s(c - 2)) /
           (12 * h * h);
}

template <class T, class Op>
GridField<T> interior_map(const GridField<T>& f, FdOrder order, Op&& op) {
    detail::require_fd_size(f.grid, order);
    const int r = stencil_radius(order);
    GridField<T> out(f.grid.shrunk(r));
    for (int j = 0; j < out.grid.ny; ++j)
        for (int i = 0; i < out.grid.nx; ++i)
            out.at(i, j) = op(i + r, j + r);
    return out;
}

} // namespace

template <class T>
GridField<T> diff_x(const GridField<T>& f, FdOrder order) {
    const double h = f.grid.hx();
    return interior_map(f, order, [&](int i, int j) {
        return stencil_d1<T>([&](int ii) { return f.at(ii, j); }, i, h, order);
    });
}

template <class T>
GridField<T> diff_y(const GridField<T>& f, FdOrder order) {
    const double h = f.grid.hy();
    return interior_map(f, order, [&](int i, int j) {
        return stencil_d1<T>([&](int jj) { return f.at(i, jj); }, j, h, order);
    });
}

template <class T>
GridField<T> diff_xx(const GridField<T>& f, FdOrder order) {
    const double h = f.grid.hx();
    return interior_map(f, order, [&](int i, int j) {
        return stencil_d2<T>([&](int ii) { return f.at(ii, j); }, i, h, order);
    });
}

template <class T>
GridField<T> diff_yy(const GridField<T>& f, FdOrder order) {
    const double h = f.grid.hy();
    return interior_map(f, order, [&](int i, int j) {
        return stencil_d2<T>([&](int jj) { return f.at(i, jj); }, j, h, order);
    });
}

template <class T>
GridField<T> diff_xy(const GridField<T>& f, FdOrder order) {
    const double hx = f.grid.hx(), hy = f.grid.hy();
    return interior_map(f, order, [&](int i, int j) {
        // first-derivative weights applied in x then y
        auto slice = [&](int jj) {
            return stencil_d1<T>([&](int ii) { return f.at(ii, jj); }, i, hx, order);
        };
        return stencil_d1<T>(slice, j, hy, order);
    });
}

template <class T>
GridField<T> laplacian_flat(const GridField<T>& f, FdOrder order) {
    const double hx = f.grid.hx(), hy = f.grid.hy();
    return interior_map(f, order, [&](int i, int j) {
        T fxx = stencil_d2<T>([&](int ii) { return f.at(ii, j); }, i, hx, order);
        T fyy = stencil_d2<T>([&](int jj) { return f.at(i, jj); }, j, hy, order);
        return -(fxx + fyy);
    });
}

template <class T>
GradientField<T> gradient(const GridField<T>& f, FdOrder order) {
    return {diff_x(f, order), diff_y(f, order)};
}

namespace {

ComplexField wirtinger_impl(const ComplexField& fx, const ComplexField& fy, Wirtinger which) {
    const cplx iu(0.0, 1.0);
    if (which == Wirtinger::dz)
        return zip(fx, fy, [iu](cplx a, cplx b) { return 0.5 * (a - iu * b); });
    return zip(fx, fy, [iu](cplx a, cplx b) { return 0.5 * (a + iu * b); });
}

} // namespace

ComplexField wirtinger(const ComplexField& f, Wirtinger which, FdOrder order) {
    return wirtinger_impl(diff_x(f, order), diff_y(f, order), which);
}

ComplexField wirtinger(const RealField& f, Wirtinger which, FdOrder order) {
    auto fx = diff_x(f, order), fy = diff_y(f, order);
    return wirtinger_impl(fx.map([](double a) { return cplx(a); }),
                          fy.map([](double a) { return cplx(a); }), which);
}

template GridField<double> diff_x(const GridField<double>&, FdOrder);
template GridField<cplx> diff_x(const GridField<cplx>&, FdOrder);
template GridField<double> diff_y(const GridField<double>&, FdOrder);
template GridField<cplx> diff_y(const GridField<cplx>&, FdOrder);
template GridField<double> diff_xx(const GridField<double>&, FdOrder);
template GridField<cplx> diff_xx(const GridField<cplx>&, FdOrder);
template GridField<double> diff_yy(const GridField<double>&, FdOrder);
template GridField<cplx> diff_yy(const GridField<cplx>&, FdOrder);
template GridField<double> diff_xy(const GridField<double>&, FdOrder);
template GridField<cplx> diff_xy(const GridField<cplx>&, FdOrder);
template GridField<double> laplacian_flat(const GridField<double>&, FdOrder);
template GridField<cplx> laplacian_flat(const GridField<cplx>&, FdOrder);
template GradientField<double> gradient(const GridField<double>&, FdOrder);
template GradientField<cplx> gradient(const GridField<cplx>&, FdOrder);

} // namespace ricci::analytic
