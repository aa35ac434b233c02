#include "ricci/realfun.hpp"

#include <memory>

namespace ricci::analytic {

// For real-valued u, grad u = u_x + i u_y = 2 * conj(d_z u).

RealFunction log_abs(const LaurentSeries& s) {
    auto sp = std::make_shared<LaurentSeries>(s);
    auto dp = std::make_shared<LaurentSeries>(s.derivative());
    return {[sp](cplx z) { return std::log(std::abs(sp->eval(z))); },
            [sp, dp](cplx z) { return std::conj(dp->eval(z) / sp->eval(z)); }};
}

RealFunction log_abs2(const LaurentSeries& s) { return 2.0 * log_abs(s); }

RealFunction abs2(const LaurentSeries& s) {
    auto sp = std::make_shared<LaurentSeries>(s);
    auto dp = std::make_shared<LaurentSeries>(s.derivative());
    return {[sp](cplx z) { return std::norm(sp->eval(z)); },
            [sp, dp](cplx z) { return 2.0 * std::conj(dp->eval(z)) * sp->eval(z); }};
}

RealFunction re_part(const LaurentSeries& s) {
    auto sp = std::make_shared<LaurentSeries>(s);
    auto dp = std::make_shared<LaurentSeries>(s.derivative());
    return {[sp](cplx z) { return sp->eval(z).real(); },
            [dp](cplx z) { return std::conj(dp->eval(z)); }};
}

RealFunction im_part(const LaurentSeries& s) {
    // Im s = Re(-i s)
    return re_part(cplx(0, -1) * s);
}

RealFunction constant_fn(double c) {
    return {[c](cplx) { return c; }, [](cplx) { return cplx(0.0); }};
}

RealFunction operator+(const RealFunction& a, const RealFunction& b) {
    RealFunction r;
    r.value = [av = a.value, bv = b.value](cplx z) { return av(z) + bv(z); };
    if (a.has_grad() && b.has_grad())
        r.grad = [ag = a.grad, bg = b.grad](cplx z) { return ag(z) + bg(z); };
    return r;
}

RealFunction operator-(const RealFunction& a, const RealFunction& b) {
    return a + (-1.0) * b;
}

RealFunction operator*(double s, const RealFunction& a) {
    RealFunction r;
    r.value = [s, av = a.value](cplx z) { return s * av(z); };
    if (a.has_grad())
        r.grad = [s, ag = a.grad](cplx z) { return s * ag(z); };
    return r;
}

RealFunction interpolant(const RealField& f) {
    auto fp = std::make_shared<RealField>(f);
    return {[fp](cplx z) { return interpolate_bicubic(*fp, z).value; },
            [fp](cplx z) {
                auto r = interpolate_bicubic(*fp, z);
                return cplx(r.fx, r.fy);
            }};
}

} // namespace ricci::analytic
