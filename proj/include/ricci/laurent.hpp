#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ricci/types.hpp"

namespace ricci::analytic {

/// Finite Laurent expansion sum_k c_k (z - center)^k on an annulus.
///
/// The coefficient support is finite and arithmetic is exact (no truncation):
/// sums and products of finite expansions are again finite. Exponents may be
/// negative; the object is holomorphic in the disk sense iff no negative
/// exponents are present and the inner radius is zero.
class LaurentSeries {
public:
    LaurentSeries() = default;
    explicit LaurentSeries(cplx center, Annulus domain = Annulus::plane())
        : center_(center), domain_(domain) {
        domain_.center = center_;
    }

    /// c * (z - center)^k.
    static LaurentSeries monomial(int k, cplx c, cplx center = 0.0,
                                  Annulus domain = Annulus::plane());
    /// Polynomial from ascending coefficients c0 + c1 w + c2 w^2 + ... , w = z - center.
    static LaurentSeries polynomial(const std::vector<cplx>& ascending, cplx center = 0.0,
                                    Annulus domain = Annulus::plane());
    static LaurentSeries constant(cplx c) { return monomial(0, c); }

    cplx center() const { return center_; }
    const Annulus& domain() const { return domain_; }
    void restrict_domain(const Annulus& a) { domain_ = domain_.intersect(a); }

    const std::map<int, cplx>& coefficients() const { return coef_; }
    cplx coefficient(int k) const;
    LaurentSeries& set_coefficient(int k, cplx c);

    bool is_zero() const { return coef_.empty(); }
    int min_exponent() const; // throws on the zero expansion
    int max_exponent() const;

    /// No negative exponents and the domain reaches the center.
    bool holomorphic() const;

    /// Exact finite evaluation. Throws std::domain_error outside the open
    /// annulus; the center itself is allowed when the expansion extends there.
    cplx eval(cplx z) const;
    /// d/dz, same domain.
    LaurentSeries derivative() const;
    /// Exact antiderivative; throws std::domain_error if a (z-center)^{-1}
    /// term is present.
    LaurentSeries antiderivative() const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(cplx s, const LaurentSeries& a);
    friend LaurentSeries operator*(const LaurentSeries& a, cplx s) { return s * a; }

    /// Structural equality of coefficients (domains ignored).
    bool same_coefficients(const LaurentSeries& other, double tol = 0.0) const;

    std::string to_string() const;

private:
    void trim();
    static void require_same_center(const LaurentSeries& a, const LaurentSeries& b);

    cplx center_ = 0.0;
    Annulus domain_ = Annulus::plane();
    std::map<int, cplx> coef_;
};

/// Exact quotient b / a when it is itself a finite expansion; std::nullopt
/// when the true quotient would have infinitely many terms.
std::optional<LaurentSeries> exact_div(const LaurentSeries& b, const LaurentSeries& a);

/// Exact square root with principal leading coefficient; std::nullopt when s
/// is not the square of a finite expansion.
std::optional<LaurentSeries> exact_sqrt(const LaurentSeries& s);

} // namespace ricci::analytic
