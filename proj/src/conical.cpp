#include "ricci/conical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

#include "ricci/circle.hpp"
#include "ricci/logharmonic.hpp"
#include "ricci/spinor.hpp"

namespace ricci::conical {

using analytic::CirclePath;
using analytic::circle_integral;
using analytic::CircleWeight;

namespace {

/// Lattice frame for C / (Z w1 + Z w2): coordinate changes, reduced torus
/// distance, and the constant coefficients of the plane Laplacian written in
/// lattice coordinates (s,t).
struct LatticeFrame {
    cplx w1, w2;
    double det;          // Im(conj(w1) w2), nonzero for a genuine lattice
    double css, cst, ctt; // Delta = css d_ss + 2 cst d_st + ctt d_tt

    explicit LatticeFrame(const std::array<cplx, 2>& basis) : w1(basis[0]), w2(basis[1]) {
        det = std::imag(std::conj(w1) * w2);
        const double scale = std::abs(w1) * std::abs(w2);
        if (!(std::abs(det) > 1e-12 * std::max(1.0, scale)))
            throw std::invalid_argument("lattice basis is degenerate");
        const double d2 = det * det;
        css = std::norm(w2) / d2;
        cst = -(w1.real() * w2.real() + w1.imag() * w2.imag()) / d2;
        ctt = std::norm(w1) / d2;
    }

    std::pair<double, double> to_lattice(cplx z) const {
        const double s = (w2.imag() * z.real() - w2.real() * z.imag()) / det;
        const double t = (-w1.imag() * z.real() + w1.real() * z.imag()) / det;
        return {s, t};
    }
    cplx from_lattice(double s, double t) const { return s * w1 + t * w2; }

    double torus_distance(cplx z, cplx p) const {
        auto [s, t] = to_lattice(z - p);
        s -= std::floor(s);
        t -= std::floor(t);
        double best = inf;
        for (int m = -1; m <= 1; ++m)
            for (int n = -1; n <= 1; ++n)
                best = std::min(best, std::abs(from_lattice(s + m, t + n)));
        return best;
    }

    /// Shortest nonzero lattice vector among the 3x3 shell.
    double injectivity_scale() const {
        double best = inf;
        for (int m = -1; m <= 1; ++m)
            for (int n = -1; n <= 1; ++n)
                if (m || n)
                    best = std::min(best, std::abs(from_lattice(m, n)));
        return best;
    }
};

struct BumpEval {
    double chi, d1, d2; // value and radial derivatives
};

/// C-infinity cutoff: 1 for d <= r1, 0 for d >= r2, the standard
/// exp(-1/t) partition blend in between, with analytic derivatives.
BumpEval bump(double d, double r1, double r2) {
    const double w = r2 - r1;
    const double s = (d - r1) / w;
    if (s <= 1e-6)
        return {1, 0, 0};
    if (s >= 1 - 1e-6)
        return {0, 0, 0};
    auto phi = [](double t) { return std::exp(-1.0 / t); };
    const double p = phi(1 - s), q = phi(s);
    const double om = 1 - s;
    const double pd = -p / (om * om);
    const double qd = q / (s * s);
    const double pdd = p * (1 - 2 * om) / (om * om * om * om);
    const double qdd = q * (1 - 2 * s) / (s * s * s * s);
    const double S = p + q, Sd = pd + qd, Sdd = pdd + qdd;
    const double chi = p / S;
    const double chi_s = (pd * S - p * Sd) / (S * S);
    const double chi_ss = (pdd * S - p * Sdd) / (S * S) - 2 * Sd * (pd * S - p * Sd) / (S * S * S);
    return {chi, chi_s / w, chi_ss / (w * w)};
}

double rect_boundary_distance(const Rect& r, cplx p) {
    return std::min(std::min(p.real() - r.x0, r.x1 - p.real()),
                    std::min(p.imag() - r.y0, r.y1 - p.imag()));
}

/// Least squares fit y = slope * x + off.
void line_fit(const std::vector<double>& x, const std::vector<double>& y, double& slope,
              double& off) {
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sxx += x[k] * x[k];
        sy += y[k];
        sxy += x[k] * y[k];
    }
    const double d = n * sxx - sx * sx;
    slope = (n * sxy - sx * sy) / d;
    off = (sxx * sy - sx * sxy) / d;
}

} // namespace

double ConeSpec::angle_sum_defect() const {
    double sum = 0;
    for (const auto& c : cones)
        sum += c.angle - 2 * pi;
    return std::abs(sum);
}

void ConeSpec::validate() const {
    for (const auto& c : cones)
        if (!(c.angle > 0))
            throw std::invalid_argument("cone angles must be positive");

    if (background == Background::torus) {
        LatticeFrame frame(lattice);
        const double scale = frame.injectivity_scale();
        for (size_t i = 0; i < cones.size(); ++i)
            for (size_t j = i + 1; j < cones.size(); ++j)
                if (frame.torus_distance(cones[i].position, cones[j].position) < 1e-9 * scale)
                    throw std::invalid_argument("cone points must be distinct on the torus");
        if (model == CurvatureModel::flat) {
            double budget = 1.0;
            for (const auto& c : cones)
                budget += std::abs(c.angle);
            if (angle_sum_defect() > 1e-12 * budget) {
                std::ostringstream msg;
                msg << "cone angles on the closed torus must balance: sum(angle - 2 pi) = "
                    << (angle_sum_defect()) << ", expected 0";
                throw std::invalid_argument(msg.str());
            }
        }
    } else {
        for (size_t i = 0; i < cones.size(); ++i)
            for (size_t j = i + 1; j < cones.size(); ++j)
                if (std::abs(cones[i].position - cones[j].position) < 1e-12)
                    throw std::invalid_argument("cone points must be distinct");
    }
}

ConeAngleReport cone_angle_measure(const std::function<double(cplx)>& factor, cplx p,
                                   const std::vector<double>& radii, double fit_tol,
                                   int samples) {
    if (radii.size() < 2)
        throw std::invalid_argument("cone angle fit needs at least two probe radii");
    for (double r : radii)
        if (!(r > 0))
            throw std::invalid_argument("probe radii must be positive");

    ConeAngleReport rep;
    rep.radii = radii;
    std::sort(rep.radii.begin(), rep.radii.end());
    std::vector<double> logr, logl;
    for (double r : rep.radii) {
        CirclePath path(p, r, samples);
        RealFunction len{[&factor](cplx z) {
                             const double w = factor(z);
                             if (!(w > 0) || !std::isfinite(w)) {
                                 std::ostringstream msg;
                                 msg << "metric factor is not positive at z = " << z;
                                 throw std::invalid_argument(msg.str());
                             }
                             return std::sqrt(w);
                         },
                         nullptr};
        const double l = circle_integral(len, path, CircleWeight::arclength);
        rep.lengths.push_back(l);
        logr.push_back(std::log(r));
        logl.push_back(std::log(l));
    }
    double off = 0;
    line_fit(logr, logl, rep.slope, off);
    for (size_t k = 0; k < logr.size(); ++k)
        rep.fit_residual =
            std::max(rep.fit_residual, std::abs(logl[k] - (rep.slope * logr[k] + off)));
    rep.angle = 2 * pi * rep.slope;
    if (rep.fit_residual > fit_tol) {
        std::ostringstream msg;
        msg << "circle circumference does not follow a power law about z = " << p
            << " (fit residual " << rep.fit_residual << " > " << fit_tol << ")";
        throw std::invalid_argument(msg.str());
    }
    return rep;
}

ConeAngleReport cone_angle_measure(const ConformalMetric& g, cplx p, std::vector<double> radii,
                                   double fit_tol) {
    if (radii.empty()) {
        const double dist = rect_boundary_distance(g.chart(), p);
        if (!(dist > 0))
            throw std::invalid_argument(
                "point is not interior to the chart; pass explicit probe radii");
        const double r_out = 0.5 * dist;
        radii = {0.4 * r_out, 0.55 * r_out, 0.75 * r_out, r_out};
    }
    auto factor = [&g](cplx z) { return g.conformal_factor_at(z); };
    return cone_angle_measure(factor, p, radii, fit_tol);
}

TorusSolution flat_conical_torus(const ConeSpec& spec, int res) {
    spec.validate();
    if (spec.background != Background::torus)
        throw std::invalid_argument("the flat conical solve runs on the torus background");
    if (spec.model != CurvatureModel::flat)
        throw std::invalid_argument("the torus solve targets the flat model");
    if (res < 16)
        throw std::invalid_argument("resolution must be at least 16");

    const LatticeFrame frame(spec.lattice);
    const int N = res;
    const double cell = std::max(std::abs(frame.w1), std::abs(frame.w2)) / N;

    double min_sep = frame.injectivity_scale();
    for (size_t i = 0; i < spec.cones.size(); ++i)
        for (size_t j = i + 1; j < spec.cones.size(); ++j)
            min_sep = std::min(
                min_sep, frame.torus_distance(spec.cones[i].position, spec.cones[j].position));
    if (!spec.cones.empty() && min_sep < 4 * cell) {
        std::ostringstream msg;
        msg << "cones are separated by " << min_sep << ", less than 4 grid cells ("
            << 4 * cell << ") at this resolution";
        throw std::invalid_argument(msg.str());
    }

    const double rho2 = 0.45 * min_sep;
    const double rho1 = rho2 / 2.0;

    std::vector<double> gamma;
    gamma.reserve(spec.cones.size());
    for (const auto& c : spec.cones)
        gamma.push_back(c.angle / pi - 2.0);

    // Right-hand side of the lattice-coordinate Poisson problem
    // Delta v = -(1/2) A, where A is the smooth extension of Delta log u:
    // radial in the torus distance d, supported on the collars.
    auto collar_term = [&](cplx z) {
        double acc = 0;
        for (size_t j = 0; j < spec.cones.size(); ++j) {
            const double d = frame.torus_distance(z, spec.cones[j].position);
            if (d <= rho1 || d >= rho2)
                continue;
            const auto b = bump(d, rho1, rho2);
            acc += gamma[j] * ((b.d2 + b.d1 / d) * std::log(d) + 2 * b.d1 / d);
        }
        return acc;
    };

    std::vector<double> rhs(static_cast<size_t>(N) * N, 0.0);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
            const cplx z = frame.from_lattice(double(i) / N, double(j) / N);
            rhs[static_cast<size_t>(j) * N + i] = -0.5 * collar_term(z);
        }

    double mean = 0;
    for (double r : rhs)
        mean += r;
    mean /= static_cast<double>(rhs.size());
    for (double& r : rhs)
        r -= mean;

    const int nk = N / 2 + 1;
    fftw_complex* spectrum = fftw_alloc_complex(static_cast<size_t>(N) * nk);
    std::vector<double> work = rhs;
    fftw_plan fwd = fftw_plan_dft_r2c_2d(N, N, work.data(), spectrum, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_c2r_2d(N, N, spectrum, work.data(), FFTW_ESTIMATE);
    fftw_execute(fwd);

    // At the Nyquist column and row the sign of the frequency is ambiguous in
    // the half-complex layout, and a cross term there would break the
    // conjugate symmetry of the spectrum. The mixed term is dropped for those
    // modes; the symbol stays positive, so the operator remains invertible on
    // mean-free data.
    auto symbol = [&](int row, int col) {
        const int n = row <= N / 2 ? row : row - N; // t frequency
        const int m = col;                          // s frequency (half spectrum)
        const bool ambiguous = col == N / 2 || row == N / 2;
        const double cross = ambiguous ? 0.0 : 2.0 * frame.cst * m * n;
        return 4 * pi * pi * (frame.css * m * m + cross + frame.ctt * double(n) * n);
    };
    for (int row = 0; row < N; ++row)
        for (int col = 0; col < nk; ++col) {
            const size_t idx = static_cast<size_t>(row) * nk + col;
            if (row == 0 && col == 0) {
                spectrum[idx][0] = 0;
                spectrum[idx][1] = 0;
                continue;
            }
            const double lam = symbol(row, col);
            spectrum[idx][0] /= -lam;
            spectrum[idx][1] /= -lam;
        }
    fftw_execute(bwd);
    std::vector<double> vphys(work);
    for (double& x : vphys)
        x /= static_cast<double>(N) * N;

    // Re-discretized residual of the solve: transform v back, apply the
    // symbol, and compare with the mean-free right-hand side.
    double solver_residual = 0;
    {
        std::copy(vphys.begin(), vphys.end(), work.begin());
        fftw_execute(fwd);
        for (int row = 0; row < N; ++row)
            for (int col = 0; col < nk; ++col) {
                const size_t idx = static_cast<size_t>(row) * nk + col;
                const double lam = symbol(row, col);
                spectrum[idx][0] *= -lam;
                spectrum[idx][1] *= -lam;
            }
        fftw_execute(bwd);
        double sup_rhs = 0, sup_defect = 0;
        for (size_t k = 0; k < rhs.size(); ++k) {
            sup_rhs = std::max(sup_rhs, std::abs(rhs[k]));
            sup_defect = std::max(sup_defect, std::abs(work[k] / (double(N) * N) - rhs[k]));
        }
        solver_residual = sup_rhs > 0 ? sup_defect / sup_rhs : sup_defect;
    }
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(spectrum);

    // 4th-order periodic flatness audit at nodes clear of every collar, where
    // the factor reduces to e^{2v}: K = -e^{-2v} Delta v must vanish.
    double flatness = 0;
    {
        const double h = 1.0 / N;
        auto at = [&](int i, int j) {
            return vphys[static_cast<size_t>((j % N + N) % N) * N + ((i % N + N) % N)];
        };
        auto dss = [&](int i, int j) {
            return (-at(i - 2, j) + 16 * at(i - 1, j) - 30 * at(i, j) + 16 * at(i + 1, j) -
                    at(i + 2, j)) /
                   (12 * h * h);
        };
        auto dtt = [&](int i, int j) {
            return (-at(i, j - 2) + 16 * at(i, j - 1) - 30 * at(i, j) + 16 * at(i, j + 1) -
                    at(i, j + 2)) /
                   (12 * h * h);
        };
        auto ds = [&](int i, int j) {
            return (at(i - 2, j) - 8 * at(i - 1, j) + 8 * at(i + 1, j) - at(i + 2, j)) / (12 * h);
        };
        auto dst = [&](int i, int j) {
            return (ds(i, j - 2) - 8 * ds(i, j - 1) + 8 * ds(i, j + 1) - ds(i, j + 2)) / (12 * h);
        };
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                const cplx z = frame.from_lattice(double(i) / N, double(j) / N);
                bool clear = true;
                for (const auto& c : spec.cones)
                    if (frame.torus_distance(z, c.position) <= rho2 + 2 * cell) {
                        clear = false;
                        break;
                    }
                if (!clear)
                    continue;
                double lap = frame.css * dss(i, j) + frame.ctt * dtt(i, j);
                if (std::abs(frame.cst) > 0)
                    lap += 2 * frame.cst * dst(i, j);
                const double K = -std::exp(-2 * at(i, j)) * lap;
                flatness = std::max(flatness, std::abs(K));
            }
    }

    Grid vgrid = Grid::over(Rect{0, 1, 0, 1}, N);
    RealField vfield(vgrid);
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i <= N; ++i)
            vfield.at(i, j) = vphys[static_cast<size_t>(j % N) * N + (i % N)];

    // Periodic extension with a 3-cell margin so the bicubic stencil never
    // leaves the data.
    const int margin = 3;
    Grid egrid(Rect{-double(margin) / N, 1 + double(margin) / N, -double(margin) / N,
                    1 + double(margin) / N},
               N + 2 * margin + 1, N + 2 * margin + 1);
    RealField efield(egrid);
    for (int j = 0; j < egrid.ny; ++j)
        for (int i = 0; i < egrid.nx; ++i)
            efield.at(i, j) = vphys[static_cast<size_t>(((j - margin) % N + N) % N) * N +
                                    (((i - margin) % N + N) % N)];
    RealFunction vinterp = analytic::interpolant(efield);

    struct ConeData {
        cplx position;
        double gamma;
    };
    std::vector<ConeData> cone_data;
    for (size_t j = 0; j < spec.cones.size(); ++j)
        cone_data.push_back({spec.cones[j].position, gamma[j]});

    std::function<double(cplx)> factor = [vinterp, frame, cone_data, rho1, rho2](cplx z) {
        auto [s, t] = frame.to_lattice(z);
        s -= std::floor(s);
        t -= std::floor(t);
        const double v = vinterp.value(cplx(s, t));
        double logu = 0;
        for (const auto& c : cone_data) {
            const double d = frame.torus_distance(z, c.position);
            if (d >= rho2)
                continue;
            logu += c.gamma * bump(d, rho1, rho2).chi * std::log(d);
        }
        return std::exp(2 * v + logu);
    };

    std::vector<TorusConeReading> readings;
    for (const auto& c : spec.cones) {
        std::vector<double> radii{0.4 * rho1, 0.55 * rho1, 0.75 * rho1, 0.95 * rho1};
        auto rep = cone_angle_measure(factor, c.position, radii);
        readings.push_back({c.position, c.angle, rep.angle, rep.fit_residual});
    }

    double xs[4] = {0, frame.w1.real(), frame.w2.real(), (frame.w1 + frame.w2).real()};
    double ys[4] = {0, frame.w1.imag(), frame.w2.imag(), (frame.w1 + frame.w2).imag()};
    Rect bounds{*std::min_element(xs, xs + 4), *std::max_element(xs, xs + 4),
                *std::min_element(ys, ys + 4), *std::max_element(ys, ys + 4)};
    ConformalMetric metric =
        ConformalMetric::from_conformal_factor(bounds, RealFunction{factor, nullptr});

    return TorusSolution{std::move(vgrid), spec.lattice,    std::move(vfield),
                         std::move(factor), solver_residual, std::abs(mean),
                         flatness,          rho1,            rho2,
                         std::move(readings), std::move(metric)};
}

ConformalMetric spherical_cone_local(double n, Rect chart) {
    if (!(n > 0))
        throw std::invalid_argument("cone parameter n must be positive");
    auto W = [n](cplx z) {
        const double r = std::abs(z);
        const double rn = std::pow(r, n);
        const double den = 1 + rn * rn;
        return 4 * n * n * std::pow(r, 2 * n - 2) / (den * den);
    };
    return ConformalMetric::from_conformal_factor(chart, RealFunction{W, nullptr});
}

LocalConeReport ricci_from_conical_local(int n, CurvatureModel model, int res) {
    if (n <= 0)
        throw std::invalid_argument("cone order n must be a positive integer");
    if (model == CurvatureModel::flat)
        throw std::invalid_argument(
            "the local construction needs the spherical or hyperbolic model");
    const double sgn = model == CurvatureModel::spherical ? 1.0 : -1.0;

    auto V = RealFunction{[n, sgn](cplx z) {
                              const double r = std::abs(z);
                              const double den = 1 + sgn * std::pow(r, 2 * n);
                              return 4 * n * n * std::pow(r, n - 1) / (den * den);
                          },
                          nullptr};
    auto half_factor = RealFunction{[n](cplx z) { return std::pow(std::abs(z), n - 1); },
                                    nullptr};
    auto closed_factor = [n, sgn](cplx z) {
        const double den = 1 + sgn * std::pow(std::abs(z), 2 * n);
        return den * den / (4 * n * n);
    };

    // The sandwich checks difference the log factor, and the curvature error
    // scales like 1/W times the stencil error of log r, so the check chart
    // stays half a unit away from the puncture.
    const Rect full = model == CurvatureModel::spherical ? Rect::square(0, 0.8)
                                                         : Rect::square(0, 0.6);
    const Rect off = model == CurvatureModel::spherical ? Rect{0.5, 0.92, 0.05, 0.47}
                                                        : Rect{0.45, 0.8, 0.03, 0.38};

    ConformalMetric g_half = ConformalMetric::from_conformal_factor(off, half_factor);
    conformal::ConstructionReport pipeline{};
    ConformalMetric piped =
        model == CurvatureModel::spherical
            ? conformal::ricci_from_flat_spherical(V, g_half, res, analytic::FdOrder::fourth,
                                                   1e-3, &pipeline)
            : conformal::ricci_from_flat_hyperbolic(V, g_half, res, analytic::FdOrder::fourth,
                                                    1e-3, &pipeline);

    double factor_match = 0;
    {
        Grid probe = Grid::over(off, 64);
        for (int j = 0; j < probe.ny; ++j)
            for (int i = 0; i < probe.nx; ++i) {
                const cplx z = probe.z(i, j);
                factor_match = std::max(
                    factor_match, std::abs(piped.conformal_factor_at(z) - closed_factor(z)));
            }
    }

    const double amp = 1.0 / std::sqrt(2.0 * n);
    spinor::SpinorPair pair(LaurentSeries::monomial(0, amp), LaurentSeries::monomial(n, amp),
                            static_cast<int>(sgn), full);
    double spinor_match = 0;
    {
        Grid probe = Grid::over(full, 128);
        for (int j = 0; j < probe.ny; ++j)
            for (int i = 0; i < probe.nx; ++i) {
                const cplx z = probe.z(i, j);
                const double d = pair.conformal_density(z);
                spinor_match = std::max(spinor_match, std::abs(d * d - closed_factor(z)));
            }
    }

    ConformalMetric metric =
        ConformalMetric::from_conformal_factor(full, RealFunction{closed_factor, nullptr});
    std::string note =
        n == 1 ? "n = 1 is degenerate: V has no zero and the metric carries no cone" : "";
    return LocalConeReport{std::move(metric), std::move(V),          pipeline,
                           factor_match,      spinor_match,          std::move(note)};
}

ConformalMetric pullback_spherical(const LaurentSeries& map, Rect chart) {
    LaurentSeries dphi = map.derivative();
    if (dphi.is_zero())
        throw std::invalid_argument("constant map: the pullback metric degenerates");

    const Annulus& dom = map.domain();
    const cplx c = map.center();
    const double cx = std::clamp(c.real(), chart.x0, chart.x1);
    const double cy = std::clamp(c.imag(), chart.y0, chart.y1);
    const double nearest = std::abs(c - cplx(cx, cy));
    const bool punctured = dom.r_inner > 0 || (!map.is_zero() && map.min_exponent() < 0);
    if (punctured && nearest <= dom.r_inner)
        throw std::invalid_argument("chart enters the pole neighborhood of the map");
    double farthest = 0;
    for (double x : {chart.x0, chart.x1})
        for (double y : {chart.y0, chart.y1})
            farthest = std::max(farthest, std::abs(cplx(x, y) - c));
    if (farthest >= dom.r_outer)
        throw std::invalid_argument("chart leaves the domain of the map");

    auto W = [map, dphi](cplx z) {
        const double m = std::norm(map.eval(z));
        return 4 * std::norm(dphi.eval(z)) / ((1 + m) * (1 + m));
    };
    return ConformalMetric::from_conformal_factor(chart, RealFunction{W, nullptr});
}

CoverAudit riemann_hurwitz_audit(const std::vector<int>& branch_orders, int degree,
                                 int genus) {
    if (degree < 1)
        throw std::invalid_argument("cover degree must be positive");
    if (genus < 0)
        throw std::invalid_argument("genus must be nonnegative");
    int branching = 0;
    for (int n : branch_orders) {
        if (n < 1)
            throw std::invalid_argument("branch orders must be positive");
        branching += n - 1;
    }
    CoverAudit audit;
    audit.euler_defect = (2 - 2 * genus) - (2 * degree - branching);
    audit.riemann_hurwitz = audit.euler_defect == 0;
    audit.angle_defect_over_2pi = branching - (4 * genus - 4);
    audit.angle_constraint = audit.angle_defect_over_2pi == 0;
    audit.degree_matches_genus = degree == genus - 1;
    return audit;
}

double polygon_special_angle(int genus) {
    return pi * (4.0 * genus - 3) / (6.0 * genus - 3);
}

PolygonGluing polygon_gluing(int genus, double alpha) {
    if (genus < 2)
        throw std::invalid_argument("the polygon gluing needs genus at least 2");
    if (!(alpha > pi / 3 && alpha < 5 * pi / 3))
        throw std::invalid_argument(
            "an equilateral spherical triangle needs an angle strictly inside (pi/3, 5 pi/3)");

    PolygonGluing g;
    g.genus = genus;
    g.alpha = alpha;
    const double ca = std::cos(alpha) / (1 - std::cos(alpha));
    g.side = std::acos(std::clamp(ca, -1.0, 1.0));
    const int faces = 4 * genus - 2;
    g.theta = 3 * alpha * faces;
    g.area = faces * (3 * alpha - pi);
    g.gauss_bonnet_defect = std::abs(g.area - (g.theta - 2 * pi * (2 * genus - 1)));
    for (int k = 0; k < genus; ++k) {
        g.identified_sides.emplace_back(4 * k, 4 * k + 2);
        g.identified_sides.emplace_back(4 * k + 1, 4 * k + 3);
    }
    for (int j = 1; j <= faces; ++j)
        g.triangles.push_back({0, j, j + 1});
    g.special_angle = std::abs(g.theta - 2 * pi * (4.0 * genus - 3)) < 1e-9 * g.theta;
    return g;
}

VanishingClaimReport vanishing_order_claim_check(int genus) {
    if (genus < 1)
        throw std::invalid_argument("genus must be at least 1");
    const int n = 4 * genus - 3;
    ricci_from_conical_local(n, CurvatureModel::spherical);

    // log(-K) = log V^2 in closed form, with its analytic gradient, so the
    // flux probe is free of grid error.
    RealFunction logK{
        [n](cplx z) {
            const double r = std::abs(z);
            return std::log(16.0 * n * n * n * n) + (2 * n - 2) * std::log(r) -
                   4 * std::log1p(std::pow(r, 2 * n));
        },
        [n](cplx z) {
            const double r2 = std::norm(z);
            const double r2n2 = std::pow(r2, n - 1); // |z|^(2n-2)
            return (2.0 * n - 2) * z / r2 - 8.0 * n * r2n2 * z / (1 + r2n2 * r2);
        }};
    std::vector<double> radii{0.008, 0.012, 0.016, 0.02};
    auto vm = logharmonic::virtual_measure(logK, radii, 0.0, 0.05);

    VanishingClaimReport rep;
    rep.genus = genus;
    rep.n = n;
    rep.expected_order = 8 * (genus - 1);
    rep.mu = vm.mu;
    rep.measured_order = static_cast<int>(std::lround(vm.mu / (2 * pi)));
    rep.integrality_defect = std::abs(vm.mu / (2 * pi) - rep.measured_order);
    return rep;
}

} // namespace ricci::conical
