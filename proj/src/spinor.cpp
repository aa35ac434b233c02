#include "ricci/spinor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ricci/weierstrass.hpp"

namespace ricci::spinor {

using analytic::Grid;
using analytic::RealField;
using conformal::ConformalMetric;

namespace {

double max_corner_distance(const Rect& r, cplx from) {
    double d = 0;
    for (cplx corner : {cplx(r.x0, r.y0), cplx(r.x1, r.y0), cplx(r.x0, r.y1), cplx(r.x1, r.y1)})
        d = std::max(d, std::abs(corner - from));
    return d;
}

void require_chart_in_domain(const Rect& chart, const analytic::LaurentSeries& s,
                             const char* name) {
    const auto& dom = s.domain();
    if (max_corner_distance(chart, s.center()) >= dom.r_outer) {
        std::ostringstream msg;
        msg << name << " is only defined on |z - center| < " << dom.r_outer
            << " but the chart reaches " << max_corner_distance(chart, s.center());
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

SpinorPair::SpinorPair(LaurentSeries a_, LaurentSeries b_, int epsilon_, Rect chart_)
    : a(std::move(a_)), b(std::move(b_)), epsilon(epsilon_), chart(chart_) {
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("epsilon must be +1 or -1");
    if (a.center() != b.center())
        throw std::invalid_argument("component expansions must share a center");
    if (!a.holomorphic() || !b.holomorphic())
        throw std::invalid_argument("component expansions must be holomorphic (no poles)");
    require_chart_in_domain(chart, a, "component a");
    require_chart_in_domain(chart, b, "component b");

    auto grid = Grid::over(chart, 48);
    std::ostringstream bad;
    int violations = 0;
    for (size_t k = 0; k < grid.size(); ++k) {
        cplx z = grid.z(k % grid.nx, static_cast<int>(k / grid.nx));
        double s = conformal_density(z);
        if (s <= 0) {
            if (violations < 3)
                bad << (violations ? ", " : "") << "z = " << z << " (density " << s << ")";
            ++violations;
        }
    }
    if (violations > 0) {
        std::ostringstream msg;
        msg << "|a|^2 " << (epsilon > 0 ? "+" : "-") << " |b|^2 is not positive on the chart: "
            << violations << " sample(s) fail, e.g. " << bad.str();
        throw std::invalid_argument(msg.str());
    }
}

double SpinorPair::conformal_density(cplx z) const {
    return std::norm(a.eval(z)) + epsilon * std::norm(b.eval(z));
}

ConformalMetric metric_from_spinor(const SpinorPair& p) {
    const LaurentSeries a = p.a, b = p.b, da = p.a.derivative(), db = p.b.derivative();
    const double eps = p.epsilon;

    auto density = [a, b, eps](cplx z) { return std::norm(a.eval(z)) + eps * std::norm(b.eval(z)); };
    RealFunction W{
        [density](cplx z) {
            double s = density(z);
            return s * s;
        },
        [a, b, da, db, density, eps](cplx z) {
            cplx gs = 2.0 * std::conj(da.eval(z)) * a.eval(z) +
                      eps * 2.0 * std::conj(db.eval(z)) * b.eval(z);
            return 2.0 * density(z) * gs;
        }};
    return ConformalMetric::from_conformal_factor(p.chart, W);
}

RealFunction curvature_closed_form(const SpinorPair& p) {
    const LaurentSeries a = p.a, b = p.b;
    const LaurentSeries da = a.derivative(), db = b.derivative();
    const LaurentSeries wr = a * db - b * da;
    const LaurentSeries dwr = wr.derivative();
    const double eps = p.epsilon;

    auto density = [a, b, eps](cplx z) { return std::norm(a.eval(z)) + eps * std::norm(b.eval(z)); };
    return RealFunction{
        [wr, density, eps](cplx z) {
            double s = density(z);
            double s2 = s * s;
            return -4.0 * eps * std::norm(wr.eval(z)) / (s2 * s2);
        },
        [a, b, da, db, wr, dwr, density, eps](cplx z) {
            const double s = density(z);
            const cplx w = wr.eval(z), dw = dwr.eval(z);
            const cplx ds = da.eval(z) * std::conj(a.eval(z)) +
                            eps * db.eval(z) * std::conj(b.eval(z)); // d/dz of the density
            const double s5 = std::pow(s, 5);
            const cplx dK = -4.0 * eps * (dw * std::conj(w) * s - 4.0 * std::norm(w) * ds) / s5;
            return 2.0 * std::conj(dK);
        }};
}

std::pair<ComplexField, ComplexField> dirac_residual(const ComplexField& a_field,
                                                     const ComplexField& b_field,
                                                     FdOrder order) {
    return {analytic::wirtinger(a_field, analytic::Wirtinger::dzbar, order),
            analytic::wirtinger(b_field, analytic::Wirtinger::dzbar, order)};
}

weierstrass::WEData we_from_spinor(const SpinorPair& p) {
    if (p.epsilon != 1)
        throw std::invalid_argument("Weierstrass conversion needs the definite pairing (epsilon = +1)");

    auto grid = Grid::over(p.chart, 48);
    double amin = inf, amax = 0;
    cplx worst = 0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            double v = std::abs(p.a.eval(grid.z(i, j)));
            if (v < amin) {
                amin = v;
                worst = grid.z(i, j);
            }
            amax = std::max(amax, v);
        }
    if (amin <= 1e-9 * std::max(1.0, amax)) {
        std::ostringstream msg;
        msg << "component a vanishes on the chart (|a| = " << amin << " near z = " << worst
            << "); shrink the chart away from its zero";
        throw std::invalid_argument(msg.str());
    }

    auto beta = analytic::exact_div(p.b, p.a);
    if (!beta)
        throw std::invalid_argument("b/a is not a finite expansion; the conversion is only "
                                    "representable when a divides b exactly");
    return weierstrass::WEData(p.a * p.a, *beta, p.chart);
}

SpinorPair spinor_from_uniformizers(const LaurentSeries& phi, const LaurentSeries& psi,
                                    int epsilon, Rect chart) {
    if (!phi.holomorphic() || !psi.holomorphic())
        throw std::invalid_argument("uniformizers must be holomorphic");
    LaurentSeries dphi = phi.derivative(), dpsi = psi.derivative();

    auto grid = Grid::over(chart, 48);
    for (const auto& [series, name] :
         {std::pair<const LaurentSeries&, const char*>{dpsi, "psi'"},
          std::pair<const LaurentSeries&, const char*>{dphi, "phi'"}}) {
        double lo = inf, hi = 0;
        cplx at = 0;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                double v = std::abs(series.eval(grid.z(i, j)));
                if (v < lo) {
                    lo = v;
                    at = grid.z(i, j);
                }
                hi = std::max(hi, v);
            }
        if (lo <= 1e-9 * std::max(1.0, hi)) {
            std::ostringstream msg;
            msg << name << " vanishes on the chart near z = " << at
                << "; the square-root branch cannot be chosen there";
            throw std::invalid_argument(msg.str());
        }
    }

    auto zeta = analytic::exact_sqrt(cplx(2.0) * dpsi);
    if (!zeta)
        throw std::invalid_argument("2 psi' has no square root among finite expansions");
    auto a = analytic::exact_div(dphi, *zeta);
    if (!a)
        throw std::invalid_argument("phi'/zeta is not a finite expansion");
    auto b = analytic::exact_div(psi * dphi, *zeta);
    if (!b)
        throw std::invalid_argument("psi phi'/zeta is not a finite expansion");
    return SpinorPair(*a, *b, epsilon, chart);
}

double Mat2::norm_inf() const {
    return std::max(std::max(std::abs(m00), std::abs(m01)),
                    std::max(std::abs(m10), std::abs(m11)));
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 operator*(cplx s, const Mat2& a) { return {s * a.m00, s * a.m01, s * a.m10, s * a.m11}; }

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

std::array<cplx, 2> Mat2::apply(const std::array<cplx, 2>& v) const {
    return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
}

const char* to_string(Group g) {
    return g == Group::unitary ? "U(2)" : "U(1,1)";
}

const char* to_string(ConjClass c) {
    switch (c) {
    case ConjClass::elliptic: return "elliptic";
    case ConjClass::parabolic: return "parabolic";
    case ConjClass::hyperbolic: return "hyperbolic";
    default: return "scalar";
    }
}

namespace {

double group_defect_of(const Mat2& A, Group group) {
    Mat2 J = group == Group::unitary ? Mat2::identity() : Mat2::signature();
    return (A.adjoint() * J * A - J).norm_inf();
}

/// Common phase-splitting front end: A = e^{2 pi i theta} B with det B = |det A|.
ConjugacyData classify_in(const Mat2& A, Group group, double tol) {
    const double scale = std::max(1.0, A.norm_inf());
    const double defect = group_defect_of(A, group);
    if (defect > tol * scale * scale) {
        std::ostringstream msg;
        msg << "matrix is not in " << to_string(group) << ": form defect " << defect;
        throw std::invalid_argument(msg.str());
    }

    ConjugacyData out{ConjClass::scalar, 0, 0};
    out.theta = std::arg(A.det()) / (4 * pi);
    Mat2 B = std::exp(cplx(0, -2 * pi * out.theta)) * A;

    const double band = std::max(tol, 10 * defect) * scale;
    if (std::abs(B.m01) <= band && std::abs(B.m10) <= band &&
        std::abs(B.m00 - B.m11) <= band) {
        if (B.m00.real() < 0)
            out.theta += 0.5;
        out.cls = ConjClass::scalar;
    } else {
        double tau = B.tr().real();
        if (tau < 0) {
            out.theta += 0.5;
            B = cplx(-1.0) * B;
            tau = -tau;
        }
        if (group == Group::unitary || tau < 2 - band) {
            out.cls = ConjClass::elliptic;
            out.param = std::acos(std::clamp(tau / 2, -1.0, 1.0)) / (2 * pi);
        } else if (tau > 2 + band) {
            out.cls = ConjClass::hyperbolic;
            out.param = std::acosh(tau / 2) / (2 * pi);
        } else {
            out.cls = ConjClass::parabolic;
            out.param = (B.m01 + B.m10).real() / (4 * pi);
        }
    }
    out.theta -= std::floor(out.theta);
    return out;
}

} // namespace

ConjugacyData classify_u11(const Mat2& A, double tol) {
    return classify_in(A, Group::indefinite_unitary, tol);
}

ConjugacyData classify_u2(const Mat2& A, double tol) {
    return classify_in(A, Group::unitary, tol);
}

Vec2Fn series_pair(const LaurentSeries& c1, const LaurentSeries& c2) {
    return [c1, c2](cplx z) { return std::array<cplx, 2>{c1.eval(z), c2.eval(z)}; };
}

RelationMatrix unitary_relation(const Vec2Fn& G, const Vec2Fn& H, Group group, cplx center,
                                double r1, double r2, int samples_per_circle,
                                double norm_rel_tol) {
    if (samples_per_circle < 4)
        throw std::invalid_argument("need at least 4 samples per circle");
    const double s = group == Group::unitary ? 1.0 : -1.0;

    std::vector<std::array<cplx, 2>> gs, hs;
    for (double r : {r1, r2})
        for (int k = 0; k < samples_per_circle; ++k) {
            double t = 2 * pi * k / samples_per_circle;
            cplx z = center + r * cplx(std::cos(t), std::sin(t));
            gs.push_back(G(z));
            hs.push_back(H(z));
            const auto& gv = gs.back();
            const auto& hv = hs.back();
            double ng = std::norm(gv[0]) + s * std::norm(gv[1]);
            double nh = std::norm(hv[0]) + s * std::norm(hv[1]);
            if (std::abs(ng - nh) > norm_rel_tol * std::max({1.0, std::abs(ng), std::abs(nh)})) {
                std::ostringstream msg;
                msg << "pointwise " << (s > 0 ? "|.|^2" : "|.|^2_-") << " norms disagree at z = "
                    << z << ": " << ng << " vs " << nh;
                throw std::invalid_argument(msg.str());
            }
        }

    // normal equations of the row-wise least squares H_i = A_i1 G_1 + A_i2 G_2
    double m00 = 0, m11 = 0;
    cplx m01 = 0;
    for (const auto& g : gs) {
        m00 += std::norm(g[0]);
        m11 += std::norm(g[1]);
        m01 += std::conj(g[0]) * g[1];
    }
    std::array<cplx, 2> rhs0{0, 0}, rhs1{0, 0};
    for (size_t k = 0; k < gs.size(); ++k) {
        rhs0[0] += std::conj(gs[k][0]) * hs[k][0];
        rhs0[1] += std::conj(gs[k][1]) * hs[k][0];
        rhs1[0] += std::conj(gs[k][0]) * hs[k][1];
        rhs1[1] += std::conj(gs[k][1]) * hs[k][1];
    }

    RelationMatrix out;
    out.group = group;
    const double det = m00 * m11 - std::norm(m01);
    const double big = std::max(m00, m11);
    if (det > 1e-10 * big * big) {
        auto solve = [&](const std::array<cplx, 2>& r) {
            return std::array<cplx, 2>{(m11 * r[0] - m01 * r[1]) / det,
                                       (m00 * r[1] - std::conj(m01) * r[0]) / det};
        };
        auto row0 = solve(rhs0);
        auto row1 = solve(rhs1);
        out.A = {row0[0], row0[1], row1[0], row1[1]};
    } else {
        // G_2 proportional to G_1: project onto the principal direction
        out.rank_deficient = true;
        const double mid = 0.5 * (m00 - m11);
        const double lam = 0.5 * (m00 + m11) + std::sqrt(mid * mid + std::norm(m01));
        std::array<cplx, 2> v = std::abs(m01) > 0 ? std::array<cplx, 2>{m01, lam - m00}
                                                  : (m00 >= m11 ? std::array<cplx, 2>{1, 0}
                                                                : std::array<cplx, 2>{0, 1});
        const double vv = std::norm(v[0]) + std::norm(v[1]);
        auto solve = [&](const std::array<cplx, 2>& r) {
            cplx coef = (std::conj(v[0]) * r[0] + std::conj(v[1]) * r[1]) / (lam * vv);
            return std::array<cplx, 2>{coef * v[0], coef * v[1]};
        };
        auto row0 = solve(rhs0);
        auto row1 = solve(rhs1);
        out.A = {row0[0], row0[1], row1[0], row1[1]};
    }

    for (size_t k = 0; k < gs.size(); ++k) {
        auto pred = out.A.apply(gs[k]);
        out.residual = std::max(out.residual, std::abs(pred[0] - hs[k][0]));
        out.residual = std::max(out.residual, std::abs(pred[1] - hs[k][1]));
    }
    out.group_defect = group_defect_of(out.A, group);
    out.conj = classify_in(out.A, group, std::max(1e-6, 20 * out.group_defect));
    return out;
}

double phase_relation(const ComplexField& h1, const ComplexField& h2, double rel_tol) {
    if (!h1.grid.same_layout(h2.grid))
        throw std::invalid_argument("fields must share a grid");

    double sup2 = 0;
    cplx acc = 0;
    for (size_t k = 0; k < h1.v.size(); ++k) {
        double n1 = std::abs(h1.v[k]), n2 = std::abs(h2.v[k]);
        if (std::abs(n1 - n2) > rel_tol * std::max({1.0, n1, n2})) {
            std::ostringstream msg;
            msg << "moduli differ at sample " << k << ": " << n1 << " vs " << n2;
            throw std::invalid_argument(msg.str());
        }
        acc += h1.v[k] * std::conj(h2.v[k]);
        sup2 = std::max(sup2, n2);
    }
    double theta = std::arg(acc);
    if (theta < 0)
        theta += 2 * pi;

    const cplx rot = std::exp(cplx(0, theta));
    double defect = 0;
    for (size_t k = 0; k < h1.v.size(); ++k)
        defect = std::max(defect, std::abs(h1.v[k] - rot * h2.v[k]));
    if (defect > 1e3 * rel_tol * std::max(1.0, sup2)) {
        std::ostringstream msg;
        msg << "no constant phase aligns the fields: best defect " << defect;
        throw std::invalid_argument(msg.str());
    }
    return theta;
}

} // namespace ricci::spinor
