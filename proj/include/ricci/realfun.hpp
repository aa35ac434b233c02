#pragma once

#include <functional>

#include "ricci/grid.hpp"
#include "ricci/laurent.hpp"

namespace ricci::analytic {

/// Real scalar function of z with an optional analytic gradient, packaged so
/// quadrature and flux routines can consume closed forms and grid data alike.
/// grad(z) returns f_x + i f_y.
struct RealFunction {
    std::function<double(cplx)> value;
    std::function<cplx(cplx)> grad;

    bool has_grad() const { return static_cast<bool>(grad); }
    double operator()(cplx z) const { return value(z); }
};

/// log|s(z)|, gradient conj(s'/s).
RealFunction log_abs(const LaurentSeries& s);
/// log|s(z)|^2 = 2 log|s|.
RealFunction log_abs2(const LaurentSeries& s);
/// |s(z)|^2, gradient 2 conj(s') s.
RealFunction abs2(const LaurentSeries& s);
/// Re s(z) or Im s(z).
RealFunction re_part(const LaurentSeries& s);
RealFunction im_part(const LaurentSeries& s);
RealFunction constant_fn(double c);

RealFunction operator+(const RealFunction& a, const RealFunction& b);
RealFunction operator-(const RealFunction& a, const RealFunction& b);
RealFunction operator*(double s, const RealFunction& a);

/// Pointwise field access as a RealFunction via bicubic interpolation.
RealFunction interpolant(const RealField& f);

} // namespace ricci::analytic
