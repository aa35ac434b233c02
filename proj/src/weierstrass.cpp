#include "ricci/weierstrass.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ricci::weierstrass {

using analytic::ComplexField;
using analytic::RealFunction;

namespace {

double farthest_corner(const Rect& r, cplx from) {
    double d = 0;
    for (cplx corner : {cplx(r.x0, r.y0), cplx(r.x1, r.y0), cplx(r.x0, r.y1), cplx(r.x1, r.y1)})
        d = std::max(d, std::abs(corner - from));
    return d;
}

double nearest_point(const Rect& r, cplx from) {
    double cx = std::clamp(from.real(), r.x0, r.x1);
    double cy = std::clamp(from.imag(), r.y0, r.y1);
    return std::abs(cplx(cx, cy) - from);
}

void require_rect_in_domain(const Rect& chart, const LaurentSeries& s, const char* name) {
    const auto& dom = s.domain();
    std::ostringstream msg;
    if (farthest_corner(chart, s.center()) >= dom.r_outer) {
        msg << name << " is only defined on |z - center| < " << dom.r_outer
            << " but the chart reaches " << farthest_corner(chart, s.center());
        throw std::invalid_argument(msg.str());
    }
    const bool punctured = dom.r_inner > 0.0 || (!s.is_zero() && s.min_exponent() < 0);
    if (punctured && nearest_point(chart, s.center()) <= dom.r_inner) {
        msg << "the chart enters the inner hole |z - center| <= " << dom.r_inner << " of "
            << name;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

WEData::WEData(LaurentSeries alpha_, LaurentSeries beta_, Rect chart_)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), chart(chart_) {
    if (alpha.center() != beta.center())
        throw std::invalid_argument("alpha and beta must share a center");
    if (alpha.is_zero())
        throw std::invalid_argument("alpha must not be identically zero (degenerate immersion)");
    require_rect_in_domain(chart, alpha, "alpha");
    require_rect_in_domain(chart, beta, "beta");
}

double WEData::conformal_density(cplx z) const {
    return std::abs(alpha.eval(z)) * (1 + std::norm(beta.eval(z)));
}

std::array<LaurentSeries, 3> c_vector(const WEData& we) {
    const LaurentSeries one = LaurentSeries::polynomial({1.0}, we.alpha.center());
    const LaurentSeries b2 = we.beta * we.beta;
    return {we.alpha * (one + b2), cplx(0, 1) * (we.alpha * (one - b2)),
            cplx(0, 2) * (we.alpha * we.beta)};
}

namespace {

/// Shared integration step: A_k = Re(antiderivative of C_k) + rho_k log|z-c|,
/// admitting only real residues.
Immersion integrate_c(const std::array<LaurentSeries, 3>& C,
                      const std::function<double(cplx)>& density, Signature sig,
                      const analytic::Grid& grid) {
    const cplx center = C[0].center();
    std::array<LaurentSeries, 3> F{C[0], C[1], C[2]};
    std::array<double, 3> rho{0, 0, 0};
    for (int k = 0; k < 3; ++k) {
        cplx res = C[k].coefficient(-1);
        if (std::abs(res.imag()) > 1e-12 * std::max(1.0, std::abs(res))) {
            std::ostringstream msg;
            msg << "component " << k + 1 << " of C has a nonreal residue " << res
                << " at the center; the immersion cannot close up";
            throw std::invalid_argument(msg.str());
        }
        rho[k] = res.real();
        if (rho[k] != 0)
            F[k] = F[k] - LaurentSeries::monomial(-1, res, center, C[k].domain());
        F[k] = F[k].antiderivative();
    }

    Immersion imm;
    imm.sig = sig;
    for (int k = 0; k < 3; ++k) {
        analytic::RealField field(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                cplx z = grid.z(i, j);
                double v = F[k].eval(z).real();
                if (rho[k] != 0)
                    v += rho[k] * std::log(std::abs(z - center));
                field.at(i, j) = v;
            }
        imm.coords[k] = std::move(field);
    }
    imm.density = analytic::RealField::sample(grid, density);
    return imm;
}

} // namespace

Immersion immerse(const WEData& we, const analytic::Grid& grid) {
    require_rect_in_domain(grid.rect, we.alpha, "alpha");
    require_rect_in_domain(grid.rect, we.beta, "beta");
    auto C = c_vector(we);
    return integrate_c(C, [&we](cplx z) { return we.conformal_density(z); },
                       Signature::euclidean, grid);
}

Immersion immerse(const WEData& we, int res) {
    return immerse(we, analytic::Grid::over(we.chart, res));
}

Immersion lorentz_immerse(const SpinorPair& p, const analytic::Grid& grid) {
    if (p.epsilon != -1)
        throw std::invalid_argument("the maximal-surface immersion needs epsilon = -1");
    const LaurentSeries a2 = p.a * p.a, b2 = p.b * p.b, ab = p.a * p.b;
    std::array<LaurentSeries, 3> C{a2 + b2, cplx(0, 1) * (a2 - b2), cplx(-2.0) * ab};
    return integrate_c(C, [&p](cplx z) { return p.conformal_density(z); }, Signature::lorentz,
                       grid);
}

Immersion lorentz_immerse(const SpinorPair& p, int res) {
    return lorentz_immerse(p, analytic::Grid::over(p.chart, res));
}

FundamentalForms fundamental_forms(const Immersion& imm, FdOrder order) {
    using analytic::diff_x;
    using analytic::diff_xx;
    using analytic::diff_xy;
    using analytic::diff_y;
    using analytic::diff_yy;

    std::array<RealField, 3> ax, ay, axx, axy, ayy;
    for (int k = 0; k < 3; ++k) {
        ax[k] = diff_x(imm.coords[k], order);
        ay[k] = diff_y(imm.coords[k], order);
        axx[k] = diff_xx(imm.coords[k], order);
        axy[k] = diff_xy(imm.coords[k], order);
        ayy[k] = diff_yy(imm.coords[k], order);
    }
    const analytic::Grid g = ax[0].grid;
    const size_t n = g.size();
    const double s3 = imm.sig == Signature::lorentz ? -1.0 : 1.0;

    FundamentalForms ff;
    ff.sig = imm.sig;
    ff.first = RealField(g);
    for (auto* f : {&ff.normal[0], &ff.normal[1], &ff.normal[2]})
        *f = RealField(g);
    ff.w11 = RealField(g);
    ff.w12 = RealField(g);
    ff.w22 = RealField(g);

    for (size_t k = 0; k < n; ++k) {
        const std::array<double, 3> vx{ax[0].v[k], ax[1].v[k], ax[2].v[k]};
        const std::array<double, 3> vy{ay[0].v[k], ay[1].v[k], ay[2].v[k]};
        const double E = vx[0] * vx[0] + vx[1] * vx[1] + s3 * vx[2] * vx[2];
        const double G = vy[0] * vy[0] + vy[1] * vy[1] + s3 * vy[2] * vy[2];
        const double F = vx[0] * vy[0] + vx[1] * vy[1] + s3 * vx[2] * vy[2];
        const double first = 0.5 * (E + G);
        ff.first.v[k] = first;
        ff.isothermal_defect =
            std::max({ff.isothermal_defect, std::abs(E - G), 2 * std::abs(F)});

        const std::array<double, 3> cr{vx[1] * vy[2] - vx[2] * vy[1],
                                       vx[2] * vy[0] - vx[0] * vy[2],
                                       vx[0] * vy[1] - vx[1] * vy[0]};
        const double cr_len = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
        if (!(cr_len > 1e-14 * std::max(1.0, std::abs(first)))) {
            std::ostringstream msg;
            msg << "degenerate tangent frame at z = " << g.z(int(k % g.nx), int(k / g.nx));
            throw std::invalid_argument(msg.str());
        }
        // unit normal: nu = e^{2f} A_x x A_y, with the third component
        // flipped for the indefinite pairing (timelike normal, <nu,nu> = -1)
        ff.normal[0].v[k] = cr[0] / first;
        ff.normal[1].v[k] = cr[1] / first;
        ff.normal[2].v[k] = s3 * cr[2] / first;

        // both signatures reduce to the euclidean contraction with A_x x A_y
        auto went = [&](const std::array<RealField, 3>& d2) {
            return (d2[0].v[k] * cr[0] + d2[1].v[k] * cr[1] + d2[2].v[k] * cr[2]) /
                   (first * first);
        };
        ff.w11.v[k] = went(axx);
        ff.w12.v[k] = went(axy);
        ff.w22.v[k] = went(ayy);
        ff.trace_defect = std::max(ff.trace_defect, std::abs(ff.w11.v[k] + ff.w22.v[k]));
    }
    return ff;
}

LaurentSeries hopf_h(const WEData& we) { return cplx(0, -2) * (we.alpha * we.beta.derivative()); }

RealField curvature_via_detW(const FundamentalForms& ff) {
    const double sign = ff.sig == Signature::lorentz ? -1.0 : 1.0;
    RealField K(ff.first.grid);
    for (size_t k = 0; k < K.v.size(); ++k)
        K.v[k] = sign * (ff.w11.v[k] * ff.w22.v[k] - ff.w12.v[k] * ff.w12.v[k]);
    return K;
}

conformal::ConformalMetric metric_from_we(const WEData& we) {
    const LaurentSeries alpha = we.alpha, beta = we.beta;
    const LaurentSeries da = alpha.derivative(), db = beta.derivative();
    RealFunction W{
        [alpha, beta](cplx z) {
            double q = 1 + std::norm(beta.eval(z));
            return std::norm(alpha.eval(z)) * q * q;
        },
        [alpha, beta, da, db](cplx z) {
            const cplx av = alpha.eval(z), bv = beta.eval(z);
            const double q = 1 + std::norm(bv);
            // d/dz of |alpha|^2 (1+|beta|^2)^2
            const cplx dz = da.eval(z) * std::conj(av) * q * q +
                            std::norm(av) * 2.0 * q * db.eval(z) * std::conj(bv);
            return 2.0 * std::conj(dz);
        }};
    return conformal::ConformalMetric::from_conformal_factor(we.chart, W);
}

std::string mesh_obj_text(const Immersion& imm) {
    const analytic::Grid& g = imm.grid();
    std::string out;
    out.reserve(g.size() * 64);
    char line[128];
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            size_t k = g.index(i, j);
            std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", imm.coords[0].v[k],
                          imm.coords[1].v[k], imm.coords[2].v[k]);
            out += line;
        }
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            const size_t v1 = g.index(i, j) + 1, v2 = g.index(i + 1, j) + 1,
                         v3 = g.index(i + 1, j + 1) + 1, v4 = g.index(i, j + 1) + 1;
            std::snprintf(line, sizeof line, "f %zu %zu %zu\nf %zu %zu %zu\n", v1, v2, v3, v1,
                          v3, v4);
            out += line;
        }
    return out;
}

void export_mesh(const Immersion& imm, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << mesh_obj_text(imm);
    if (!out.flush())
        throw std::runtime_error("write to " + path + " failed");
}

} // namespace ricci::weierstrass
