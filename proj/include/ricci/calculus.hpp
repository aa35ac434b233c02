#pragma once

#include "ricci/grid.hpp"

namespace ricci::analytic {

/// Central-difference stencil order. Order 2 uses radius-1 stencils, order 4
/// radius-2; derivative fields live on the grid shrunk by that radius
/// (interior evaluation only, no one-sided stencils).
enum class FdOrder { second = 2, fourth = 4 };

inline int stencil_radius(FdOrder o) { return o == FdOrder::second ? 1 : 2; }

namespace detail {
void require_fd_size(const Grid& g, FdOrder order);
}

/// First derivatives on the common shrunk interior.
template <class T>
struct GradientField {
    GridField<T> dx, dy;
};
template <class T>
GradientField<T> gradient(const GridField<T>& f, FdOrder order = FdOrder::fourth);

template <class T>
GridField<T> diff_x(const GridField<T>& f, FdOrder order = FdOrder::fourth);
template <class T>
GridField<T> diff_y(const GridField<T>& f, FdOrder order = FdOrder::fourth);
template <class T>
GridField<T> diff_xx(const GridField<T>& f, FdOrder order = FdOrder::fourth);
template <class T>
GridField<T> diff_yy(const GridField<T>& f, FdOrder order = FdOrder::fourth);
/// Mixed second derivative (tensor-product central stencil, one shrink).
template <class T>
GridField<T> diff_xy(const GridField<T>& f, FdOrder order = FdOrder::fourth);

/// Geometer's flat Laplacian  -(f_xx + f_yy).
template <class T>
GridField<T> laplacian_flat(const GridField<T>& f, FdOrder order = FdOrder::fourth);

enum class Wirtinger { dz, dzbar };

/// d/dz = (d_x - i d_y)/2 or d/dzbar = (d_x + i d_y)/2 on the shrunk interior.
ComplexField wirtinger(const ComplexField& f, Wirtinger which, FdOrder order = FdOrder::fourth);
ComplexField wirtinger(const RealField& f, Wirtinger which, FdOrder order = FdOrder::fourth);

} // namespace ricci::analytic
