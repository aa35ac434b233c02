#include "ricci/conformal.hpp"

#include <cmath>

namespace ricci::conformal {

using analytic::stencil_radius;

ConformalMetric ConformalMetric::from_log_factor(Rect chart, RealFunction f, double K0) {
    if (!f.value)
        throw std::invalid_argument("metric log-factor has no value callback");
    ConformalMetric m;
    m.chart_ = chart;
    m.K0_ = K0;
    m.f_closed_ = std::move(f);
    return m;
}

ConformalMetric ConformalMetric::from_conformal_factor(Rect chart, RealFunction W, double K0) {
    RealFunction f;
    f.value = [Wv = W.value](cplx z) {
        double w = Wv(z);
        if (w <= 0)
            throw std::domain_error("conformal factor is not positive on the chart");
        return -0.5 * std::log(w);
    };
    if (W.has_grad())
        f.grad = [Wv = W.value, Wg = W.grad](cplx z) { return -0.5 * Wg(z) / Wv(z); };
    return from_log_factor(chart, std::move(f), K0);
}

ConformalMetric ConformalMetric::from_grid(RealField f, double K0) {
    ConformalMetric m;
    m.chart_ = f.grid.rect;
    m.K0_ = K0;
    m.f_grid_ = std::move(f);
    return m;
}

ConformalMetric ConformalMetric::flat(Rect chart) {
    return from_log_factor(chart, analytic::constant_fn(0.0));
}

const RealFunction& ConformalMetric::log_factor() const {
    if (!f_closed_)
        throw std::logic_error("metric is grid-backed; no closed-form log-factor");
    return *f_closed_;
}

const RealField& ConformalMetric::log_factor_grid() const {
    if (!f_grid_)
        throw std::logic_error("metric is closed-form; no stored grid");
    return *f_grid_;
}

double ConformalMetric::log_factor_at(cplx z) const {
    if (f_closed_)
        return f_closed_->value(z);
    return analytic::interpolate_bicubic(*f_grid_, z).value;
}

double ConformalMetric::conformal_factor_at(cplx z) const {
    return std::exp(-2.0 * log_factor_at(z));
}

RealField ConformalMetric::log_factor_on(const Grid& g) const {
    if (f_closed_)
        return RealField::sample(g, f_closed_->value);
    const RealField& src = *f_grid_;
    if (src.grid.same_layout(g))
        return src;
    // restriction of the stored grid (same spacing, shifted window)
    const double hx = src.grid.hx(), hy = src.grid.hy();
    const double sx = (g.rect.x0 - src.grid.rect.x0) / hx;
    const double sy = (g.rect.y0 - src.grid.rect.y0) / hy;
    const int i0 = static_cast<int>(std::lround(sx));
    const int j0 = static_cast<int>(std::lround(sy));
    const bool aligned = std::abs(sx - i0) < 1e-9 && std::abs(sy - j0) < 1e-9 &&
                         std::abs(g.hx() - hx) < 1e-12 && std::abs(g.hy() - hy) < 1e-12 &&
                         i0 >= 0 && j0 >= 0 && i0 + g.nx <= src.grid.nx &&
                         j0 + g.ny <= src.grid.ny;
    if (!aligned)
        throw std::invalid_argument("grid metric cannot be resampled onto an unaligned grid");
    return src.restricted(i0, j0, g.nx, g.ny);
}

Grid ConformalMetric::working_grid(int res) const {
    if (f_closed_)
        return Grid::over(chart_, res);
    return f_grid_->grid;
}

ConformalMetric ConformalMetric::scaled_by(const RealFunction& V) const {
    // V g = e^{-2(f - log V / 2)} g0
    if (f_closed_) {
        RealFunction f;
        f.value = [fv = f_closed_->value, Vv = V.value](cplx z) {
            return fv(z) - 0.5 * std::log(Vv(z));
        };
        if (f_closed_->has_grad() && V.has_grad())
            f.grad = [fg = f_closed_->grad, Vv = V.value, Vg = V.grad](cplx z) {
                return fg(z) - 0.5 * Vg(z) / Vv(z);
            };
        return from_log_factor(chart_, std::move(f), K0_);
    }
    RealField f2 = *f_grid_;
    for (int j = 0; j < f2.grid.ny; ++j)
        for (int i = 0; i < f2.grid.nx; ++i)
            f2.at(i, j) -= 0.5 * std::log(V.value(f2.grid.z(i, j)));
    return from_grid(std::move(f2), K0_);
}

ConformalMetric ConformalMetric::divided_by(const RealFunction& V) const {
    RealFunction inv;
    inv.value = [Vv = V.value](cplx z) { return 1.0 / Vv(z); };
    if (V.has_grad())
        inv.grad = [Vv = V.value, Vg = V.grad](cplx z) {
            double v = Vv(z);
            return -Vg(z) / (v * v);
        };
    return scaled_by(inv);
}

RealField gaussian_curvature(const ConformalMetric& g, int res, FdOrder order) {
    const Grid base = g.working_grid(res);
    const RealField f = g.log_factor_on(base);
    RealField lap = analytic::laplacian_flat(f, order);
    const double K0 = g.background_curvature();
    RealField K(lap.grid);
    const int r = stencil_radius(order);
    for (int j = 0; j < K.grid.ny; ++j)
        for (int i = 0; i < K.grid.nx; ++i) {
            const double fv = f.at(i + r, j + r);
            K.at(i, j) = std::exp(2.0 * fv) * (K0 - lap.at(i, j));
        }
    return K;
}

RealField laplace_beltrami(const ConformalMetric& g, const RealField& u, FdOrder order) {
    RealField lap = analytic::laplacian_flat(u, order);
    RealField out(lap.grid);
    for (int j = 0; j < out.grid.ny; ++j)
        for (int i = 0; i < out.grid.nx; ++i)
            out.at(i, j) = std::exp(2.0 * g.log_factor_at(out.grid.z(i, j))) * lap.at(i, j);
    return out;
}

const char* to_string(SignClass c) {
    switch (c) {
    case SignClass::nonpositive: return "nonpositive";
    case SignClass::nonnegative: return "nonnegative";
    case SignClass::zero: return "zero";
    case SignClass::mixed: return "mixed";
    }
    return "?";
}

SignReport sign_analysis(const RealField& K, double tau) {
    double max_pos = 0, min_neg = 0;
    for (double k : K.v) {
        if (k > tau)
            max_pos = std::max(max_pos, k);
        else if (k < -tau)
            min_neg = std::min(min_neg, k);
    }
    SignClass cls;
    if (max_pos > 0 && min_neg < 0)
        cls = SignClass::mixed;
    else if (max_pos > 0)
        cls = SignClass::nonnegative;
    else if (min_neg < 0)
        cls = SignClass::nonpositive;
    else
        cls = SignClass::zero;
    return {cls, tau, max_pos, min_neg};
}

double curvature_error_estimate(const ConformalMetric& g, int res, FdOrder order) {
    const int r = stencil_radius(order);
    const double p = static_cast<double>(order);
    if (g.closed_form() && res % 2 == 0 && res >= 4 * r + 8) {
        RealField fine = gaussian_curvature(g, res, order);
        RealField coarse = gaussian_curvature(g, res / 2, order);
        double diff = 0;
        for (int j = 0; j < coarse.grid.ny; ++j)
            for (int i = 0; i < coarse.grid.nx; ++i)
                diff = std::max(diff,
                                std::abs(coarse.at(i, j) - fine.at(2 * i + r, 2 * j + r)));
        return diff / (std::pow(2.0, p) - 1.0);
    }
    // grid metric (or awkward resolution): compare stencil orders
    RealField k4 = gaussian_curvature(g, res, FdOrder::fourth);
    RealField k2 = gaussian_curvature(g, res, FdOrder::second);
    double diff = 0;
    for (int j = 0; j < k4.grid.ny; ++j)
        for (int i = 0; i < k4.grid.nx; ++i)
            diff = std::max(diff, std::abs(k4.at(i, j) - k2.at(i + 1, j + 1)));
    return diff;
}

CurvatureReport ricci_residual(const ConformalMetric& g, int res, FdOrder order) {
    CurvatureReport rep;
    const int r = stencil_radius(order);

    rep.K = gaussian_curvature(g, res, order);
    RealField lapK = analytic::laplacian_flat(rep.K, order); // Delta_0 K, shrunk again
    auto gradK = analytic::gradient(rep.K, order);

    const Grid& G2 = lapK.grid;
    rep.residual = RealField(G2);
    double normalized = 0;
    for (int j = 0; j < G2.ny; ++j)
        for (int i = 0; i < G2.nx; ++i) {
            const double K = rep.K.at(i + r, j + r);
            const double e2f = std::exp(2.0 * g.log_factor_at(G2.z(i, j)));
            const double lap_g = e2f * lapK.at(i, j); // Delta_g K
            const double kx = gradK.dx.at(i, j), ky = gradK.dy.at(i, j);
            const double dK2 = e2f * (kx * kx + ky * ky); // |dK|_g^2
            const double val = K * lap_g + dK2 + 4.0 * K * K * K;
            rep.residual.at(i, j) = val;
            normalized = std::max(normalized, std::abs(val) / std::pow(1.0 + std::abs(K), 3));
        }
    rep.normalized_residual = normalized;
    rep.error_estimate = curvature_error_estimate(g, res, order);
    rep.tau_sign = 10.0 * rep.error_estimate;
    rep.sign = sign_analysis(rep.K, rep.tau_sign);
    if (!std::isfinite(normalized))
        rep.warnings.push_back("residual is not finite on the chart");
    if (rep.error_estimate > 0.1)
        rep.warnings.push_back("under-resolved log-factor: curvature error estimate " +
                               std::to_string(rep.error_estimate));
    return rep;
}

LogCurvatureResidual log_ricci_residual(const ConformalMetric& g, int res, FdOrder order) {
    const int r = stencil_radius(order);
    RealField K = gaussian_curvature(g, res, order);
    const double tau_sign = 10.0 * curvature_error_estimate(g, res, order);
    const double tau_zero = std::max(1e-8, tau_sign);

    RealField logK(K.grid);
    std::vector<uint8_t> near_zero(K.v.size(), 0);
    for (size_t k = 0; k < K.v.size(); ++k) {
        if (std::abs(K.v[k]) <= tau_zero) {
            near_zero[k] = 1;
            logK.v[k] = 0;
        } else {
            logK.v[k] = std::log(std::abs(K.v[k]));
        }
    }

    RealField lap = analytic::laplacian_flat(logK, order);
    LogCurvatureResidual out;
    out.tau_zero = tau_zero;
    out.value = RealField(lap.grid);
    out.mask.assign(out.value.v.size(), 0);
    out.sup_unmasked = 0;
    out.masked_count = 0;
    const Grid& G2 = lap.grid;
    for (int j = 0; j < G2.ny; ++j)
        for (int i = 0; i < G2.nx; ++i) {
            // mask when any stencil point fed by a near-zero K value
            bool masked = false;
            for (int dj = -r; dj <= r && !masked; ++dj)
                for (int di = -r; di <= r && !masked; ++di)
                    if (near_zero[K.grid.index(i + r + di, j + r + dj)])
                        masked = true;
            const size_t idx = G2.index(i, j);
            if (masked) {
                out.mask[idx] = 1;
                ++out.masked_count;
                continue;
            }
            const double e2f = std::exp(2.0 * g.log_factor_at(G2.z(i, j)));
            const double val = e2f * lap.at(i, j) + 4.0 * K.at(i + r, j + r);
            out.value.v[idx] = val;
            out.sup_unmasked = std::max(out.sup_unmasked, std::abs(val));
        }
    return out;
}

ConformalMetric conformal_power(const ConformalMetric& g, double r_exp,
                                const RealFunction* K_closed, int res, FdOrder order) {
    if (r_exp == 0.0)
        return g;

    RealField K = gaussian_curvature(g, res, order);
    const double tau = 10.0 * curvature_error_estimate(g, res, order);
    SignReport sign = sign_analysis(K, tau);
    double s;
    if (sign.cls == SignClass::nonpositive)
        s = -1.0; // use -K
    else if (sign.cls == SignClass::nonnegative)
        s = +1.0;
    else
        throw std::invalid_argument(std::string("conformal_power: curvature sign is ") +
                                    to_string(sign.cls) + "; need a definite sign");

    if (g.closed_form() && K_closed && K_closed->value) {
        RealFunction f;
        f.value = [fv = g.log_factor().value, Kv = K_closed->value, r_exp, s](cplx z) {
            const double sk = s * Kv(z);
            if (sk <= 0)
                throw std::domain_error("conformal_power: curvature vanishes on the chart");
            return fv(z) - 0.5 * r_exp * std::log(sk);
        };
        if (g.log_factor().has_grad() && K_closed->has_grad())
            f.grad = [fg = g.log_factor().grad, Kv = K_closed->value, Kg = K_closed->grad,
                      r_exp](cplx z) { return fg(z) - 0.5 * r_exp * Kg(z) / Kv(z); };
        return ConformalMetric::from_log_factor(g.chart(), std::move(f),
                                                g.background_curvature());
    }

    // grid path: f_r = f - (r/2) log(s K) on the curvature grid
    RealField f_r = g.log_factor_on(K.grid);
    for (size_t k = 0; k < K.v.size(); ++k) {
        const double sk = s * K.v[k];
        if (sk <= 0)
            throw std::domain_error("conformal_power: curvature vanishes on the chart");
        f_r.v[k] -= 0.5 * r_exp * std::log(sk);
    }
    return ConformalMetric::from_grid(std::move(f_r), g.background_curvature());
}

namespace {

ConformalMetric ricci_from_flat_model(const RealFunction& V, const ConformalMetric& g_half,
                                      double model_sign, int res, FdOrder order,
                                      double check_tol, ConstructionReport* report) {
    if (!V.value)
        throw std::invalid_argument("V has no value callback");

    const double flat_check = gaussian_curvature(g_half, res, order).sup_norm();
    if (flat_check > check_tol)
        throw std::invalid_argument("input metric is not flat: sup |K| = " +
                                    std::to_string(flat_check));

    ConformalMetric scaled = g_half.scaled_by(V);
    RealField Ks = gaussian_curvature(scaled, res, order);
    double model_check = 0;
    for (double k : Ks.v)
        model_check = std::max(model_check, std::abs(k - model_sign));
    if (model_check > check_tol)
        throw std::invalid_argument(
            std::string("V g_half is not the ") +
            (model_sign > 0 ? "spherical" : "hyperbolic") +
            " model: sup |K - (" + std::to_string(model_sign) + ")| = " +
            std::to_string(model_check));

    ConformalMetric g = g_half.divided_by(V);

    if (report) {
        report->flat_check = flat_check;
        report->model_check = model_check;
        // K(g) should equal -model_sign * V^2; compare relative to the
        // target size since V^2 can span several orders across the chart
        RealField Kg = gaussian_curvature(g, res, order);
        double match = 0;
        for (int j = 0; j < Kg.grid.ny; ++j)
            for (int i = 0; i < Kg.grid.nx; ++i) {
                const double v = V.value(Kg.grid.z(i, j));
                const double diff = std::abs(Kg.at(i, j) + model_sign * v * v);
                match = std::max(match, diff / (1 + v * v));
            }
        report->curvature_match = match;
        report->normalized_residual = ricci_residual(g, res, order).normalized_residual;
    }
    return g;
}

} // namespace

ConformalMetric ricci_from_flat_spherical(const RealFunction& V, const ConformalMetric& g_half,
                                          int res, FdOrder order, double check_tol,
                                          ConstructionReport* report) {
    return ricci_from_flat_model(V, g_half, +1.0, res, order, check_tol, report);
}

ConformalMetric ricci_from_flat_hyperbolic(const RealFunction& V, const ConformalMetric& g_half,
                                           int res, FdOrder order, double check_tol,
                                           ConstructionReport* report) {
    return ricci_from_flat_model(V, g_half, -1.0, res, order, check_tol, report);
}

} // namespace ricci::conformal
