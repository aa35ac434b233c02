#include "ricci/circle.hpp"

namespace ricci::analytic {

namespace {

// Radial derivative of f at angle position p on the circle, direction u
// (unit), without an analytic gradient: order-4 central differences at two
// steps combined by one Richardson stage (order 6).
double radial_derivative_fd(const RealFunction& f, cplx p, cplx u, double scale) {
    auto d4 = [&](double h) {
        return (-f(p + 2 * h * u) + 8 * f(p + h * u) - 8 * f(p - h * u) + f(p - 2 * h * u)) /
               (12 * h);
    };
    const double h = 0.01 * scale;
    const double a = d4(h), b = d4(h / 2);
    return (16 * b - a) / 15;
}

} // namespace

double circle_integral(const RealFunction& f, const CirclePath& path, CircleWeight w) {
    if (!f.value)
        throw std::invalid_argument("circle_integral: function has no value callback");
    const int m = path.samples;
    const double dtheta = 2 * pi / m;
    double acc = 0;
    for (int k = 0; k < m; ++k) {
        const cplx p = path.point(k);
        switch (w) {
        case CircleWeight::arclength:
            acc += f(p);
            break;
        case CircleWeight::angle:
            acc += f(p);
            break;
        case CircleWeight::flux: {
            const cplx u = (p - path.center) / path.radius;
            double df_dr;
            if (f.has_grad()) {
                const cplx g = f.grad(p);
                df_dr = g.real() * u.real() + g.imag() * u.imag();
            } else {
                df_dr = radial_derivative_fd(f, p, u, path.radius);
            }
            acc += df_dr;
            break;
        }
        }
    }
    switch (w) {
    case CircleWeight::arclength:
        return acc * dtheta * path.radius;
    case CircleWeight::angle:
        return acc * dtheta;
    case CircleWeight::flux:
        return acc * dtheta * path.radius;
    }
    return 0; // unreachable
}

} // namespace ricci::analytic
