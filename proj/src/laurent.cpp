#include "ricci/laurent.hpp"

#include <cmath>
#include <sstream>

namespace ricci::analytic {

LaurentSeries LaurentSeries::monomial(int k, cplx c, cplx center, Annulus domain) {
    LaurentSeries s(center, domain);
    s.set_coefficient(k, c);
    return s;
}

LaurentSeries LaurentSeries::polynomial(const std::vector<cplx>& ascending, cplx center,
                                        Annulus domain) {
    LaurentSeries s(center, domain);
    for (size_t i = 0; i < ascending.size(); ++i)
        s.set_coefficient(static_cast<int>(i), ascending[i]);
    return s;
}

cplx LaurentSeries::coefficient(int k) const {
    auto it = coef_.find(k);
    return it == coef_.end() ? cplx(0.0) : it->second;
}

LaurentSeries& LaurentSeries::set_coefficient(int k, cplx c) {
    if (c == cplx(0.0))
        coef_.erase(k);
    else
        coef_[k] = c;
    return *this;
}

int LaurentSeries::min_exponent() const {
    if (coef_.empty())
        throw std::domain_error("zero expansion has no exponent range");
    return coef_.begin()->first;
}

int LaurentSeries::max_exponent() const {
    if (coef_.empty())
        throw std::domain_error("zero expansion has no exponent range");
    return coef_.rbegin()->first;
}

bool LaurentSeries::holomorphic() const {
    return (coef_.empty() || min_exponent() >= 0) && domain_.r_inner == 0.0;
}

cplx LaurentSeries::eval(cplx z) const {
    const cplx w = z - center_;
    const double r = std::abs(w);
    const bool at_center = (r == 0.0);
    if (at_center) {
        if (domain_.r_inner > 0.0 || (!coef_.empty() && min_exponent() < 0))
            throw std::domain_error("evaluation at the expansion center is singular");
        return coefficient(0);
    }
    if (r <= domain_.r_inner || r >= domain_.r_outer)
        throw std::domain_error("evaluation point outside the open annulus of definition");
    if (coef_.empty())
        return 0.0;

    // Horner on the nonnegative part in w, and on the negative part in 1/w.
    cplx pos = 0.0, neg = 0.0;
    int top = max_exponent();
    if (top >= 0) {
        for (int k = top; k >= 0; --k)
            pos = pos * w + coefficient(k);
    }
    int bottom = min_exponent();
    if (bottom < 0) {
        // Horner in 1/w from the innermost coefficient outward:
        // ((c_bottom/w + c_{bottom+1})/w + ...)/w ends at c_{-1}/w.
        const cplx iw = 1.0 / w;
        for (int k = bottom; k <= -1; ++k)
            neg = (neg + coefficient(k)) * iw;
    }
    return pos + neg;
}

LaurentSeries LaurentSeries::derivative() const {
    LaurentSeries d(center_, domain_);
    for (auto& [k, c] : coef_)
        if (k != 0)
            d.set_coefficient(k - 1, c * static_cast<double>(k));
    return d;
}

LaurentSeries LaurentSeries::antiderivative() const {
    if (coefficient(-1) != cplx(0.0))
        throw std::domain_error(
            "antiderivative: expansion has a (z-center)^{-1} term (residue " +
            std::to_string(coefficient(-1).real()) + (coefficient(-1).imag() < 0 ? "" : "+") +
            std::to_string(coefficient(-1).imag()) + "i)");
    LaurentSeries f(center_, domain_);
    for (auto& [k, c] : coef_)
        f.set_coefficient(k + 1, c / static_cast<double>(k + 1));
    return f;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries n(center_, domain_);
    for (auto& [k, c] : coef_)
        n.set_coefficient(k, -c);
    return n;
}

void LaurentSeries::require_same_center(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.center_ != b.center_)
        throw std::invalid_argument("expansion arithmetic requires a common center");
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries::require_same_center(a, b);
    LaurentSeries s(a.center_, a.domain_.intersect(b.domain_));
    s.coef_ = a.coef_;
    for (auto& [k, c] : b.coef_) {
        auto [it, fresh] = s.coef_.try_emplace(k, c);
        if (!fresh)
            it->second += c;
    }
    s.trim();
    return s;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries::require_same_center(a, b);
    LaurentSeries p(a.center_, a.domain_.intersect(b.domain_));
    for (auto& [ka, ca] : a.coef_)
        for (auto& [kb, cb] : b.coef_) {
            auto [it, fresh] = p.coef_.try_emplace(ka + kb, ca * cb);
            if (!fresh)
                it->second += ca * cb;
        }
    p.trim();
    return p;
}

LaurentSeries operator*(cplx s, const LaurentSeries& a) {
    LaurentSeries p(a.center_, a.domain_);
    if (s == cplx(0.0))
        return p;
    for (auto& [k, c] : a.coef_)
        p.set_coefficient(k, s * c);
    return p;
}

bool LaurentSeries::same_coefficients(const LaurentSeries& other, double tol) const {
    if (center_ != other.center_)
        return false;
    auto within = [tol](cplx a, cplx b) { return std::abs(a - b) <= tol; };
    for (auto& [k, c] : coef_)
        if (!within(c, other.coefficient(k)))
            return false;
    for (auto& [k, c] : other.coef_)
        if (!within(c, coefficient(k)))
            return false;
    return true;
}

void LaurentSeries::trim() {
    for (auto it = coef_.begin(); it != coef_.end();)
        it = (it->second == cplx(0.0)) ? coef_.erase(it) : std::next(it);
}

std::string LaurentSeries::to_string() const {
    if (coef_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : coef_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        if (k != 0)
            os << " w^" << k;
    }
    return os.str();
}

namespace {

double max_coeff_norm(const LaurentSeries& s) {
    double m = 0;
    for (auto& [k, c] : s.coefficients())
        m = std::max(m, std::abs(c));
    return m;
}

// Coefficient arithmetic is floating point, so "exact" means the remainder
// vanishes to relative roundoff; genuinely infinite quotients leave O(1)
// relative remainders.
constexpr double exactness_tol = 1e-12;

} // namespace

std::optional<LaurentSeries> exact_div(const LaurentSeries& b, const LaurentSeries& a) {
    if (a.center() != b.center())
        throw std::invalid_argument("exact_div: expansions have different centers");
    if (a.is_zero())
        throw std::invalid_argument("exact_div: division by the zero expansion");
    LaurentSeries q(a.center(), a.domain().intersect(b.domain()));
    if (b.is_zero())
        return q;

    // Long division from the lowest exponents. A finite quotient must have
    // exponent span (span b - span a), so the loop is bounded; a sizable
    // remainder at the bound means the quotient is not finite.
    // exponents of a finite quotient are confined to this window
    const int q_min = b.min_exponent() - a.min_exponent();
    const int q_max = b.max_exponent() - a.max_exponent();
    if (q_max < q_min)
        return std::nullopt;
    const int a_low = a.min_exponent();
    const cplx lead = a.coefficient(a_low);
    const double scale = max_coeff_norm(b) + max_coeff_norm(a);
    LaurentSeries r = b;
    while (!r.is_zero()) {
        if (std::abs(r.coefficient(r.min_exponent())) <= exactness_tol * scale) {
            r.set_coefficient(r.min_exponent(), 0.0);
            continue;
        }
        int k = r.min_exponent() - a_low;
        if (k > q_max)
            break;
        cplx c = r.coefficient(r.min_exponent()) / lead;
        q.set_coefficient(k, c);
        r = r - LaurentSeries::monomial(k, c, a.center()) * a;
    }
    if (max_coeff_norm(r) > exactness_tol * scale)
        return std::nullopt;
    return q;
}

std::optional<LaurentSeries> exact_sqrt(const LaurentSeries& s) {
    if (s.is_zero())
        return LaurentSeries(s.center(), s.domain());
    const int low = s.min_exponent();
    if (low % 2 != 0)
        return std::nullopt;
    const int span = s.max_exponent() - low;
    if (span % 2 != 0)
        return std::nullopt;

    LaurentSeries r(s.center(), s.domain());
    const cplx lead = std::sqrt(s.coefficient(low)); // principal branch
    const int r_low = low / 2;
    r.set_coefficient(r_low, lead);
    // Ascending recursion: coefficient of w^{low+m} in r*r determines r_{r_low+m}.
    const int r_span = span / 2;
    for (int m = 1; m <= r_span; ++m) {
        cplx acc = 0.0;
        for (int j = 1; j < m; ++j)
            acc += r.coefficient(r_low + j) * r.coefficient(r_low + m - j);
        cplx c = (s.coefficient(low + m) - acc) / (2.0 * lead);
        r.set_coefficient(r_low + m, c);
    }
    if ((r * r).same_coefficients(s, exactness_tol * (1.0 + max_coeff_norm(s))))
        return r;
    return std::nullopt;
}

} // namespace ricci::analytic
