#pragma once

#include <array>
#include <functional>

#include "ricci/calculus.hpp"
#include "ricci/conformal.hpp"
#include "ricci/laurent.hpp"
#include "ricci/realfun.hpp"

namespace ricci::weierstrass {
struct WEData;
}

namespace ricci::spinor {

using analytic::ComplexField;
using analytic::FdOrder;
using analytic::LaurentSeries;
using analytic::RealFunction;

/// Component pair (a, b) of holomorphic functions encoding the conformal
/// metric e^{-f} = |a|^2 + epsilon |b|^2 on a rectangular chart: epsilon = +1
/// for surfaces in Euclidean 3-space, -1 for the Lorentzian counterpart
/// (where |a| > |b| must hold throughout).
struct SpinorPair {
    LaurentSeries a;
    LaurentSeries b;
    int epsilon; // +1 or -1
    Rect chart;

    /// Validates holomorphy, that the chart fits in both domains, and
    /// positivity of |a|^2 + epsilon |b|^2 by sampling.
    SpinorPair(LaurentSeries a_, LaurentSeries b_, int epsilon_, Rect chart_);

    /// e^{-f}(z) = |a|^2 + epsilon |b|^2.
    double conformal_density(cplx z) const;
};

/// Metric with log-factor f = -log(|a|^2 + epsilon |b|^2), closed form with
/// analytic gradients.
conformal::ConformalMetric metric_from_spinor(const SpinorPair& p);

/// K = -4 epsilon |a b' - b a'|^2 / (|a|^2 + epsilon |b|^2)^4, with gradient.
RealFunction curvature_closed_form(const SpinorPair& p);

/// Antiholomorphy defect (d/dzbar a, d/dzbar b) of sampled component fields;
/// both vanish exactly when the samples come from admissible data.
std::pair<ComplexField, ComplexField> dirac_residual(const ComplexField& a_field,
                                                     const ComplexField& b_field,
                                                     FdOrder order = FdOrder::second);

/// Conversion to Weierstrass data alpha = a^2, beta = b/a (epsilon = +1 only;
/// requires a nonvanishing and b/a a finite expansion).
weierstrass::WEData we_from_spinor(const SpinorPair& p);

/// Pair (phi'/zeta, psi phi'/zeta) with zeta^2 = 2 psi', from a flat-chart
/// uniformizer phi and a model-chart uniformizer psi. The square root is
/// taken with principal leading coefficient; the opposite sign gives the
/// same metric. Requires psi' and phi' nonvanishing on the chart.
SpinorPair spinor_from_uniformizers(const LaurentSeries& phi, const LaurentSeries& psi,
                                    int epsilon, Rect chart);

/// Small dense 2x2 complex matrix, enough linear algebra for the relation
/// and classification routines.
struct Mat2 {
    cplx m00{0}, m01{0}, m10{0}, m11{0};

    static Mat2 identity() { return {1, 0, 0, 1}; }
    /// Signature matrix diag(1, -1) of the indefinite form.
    static Mat2 signature() { return {1, 0, 0, -1}; }

    cplx det() const { return m00 * m11 - m01 * m10; }
    cplx tr() const { return m00 + m11; }
    Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }
    double norm_inf() const;

    friend Mat2 operator*(const Mat2& a, const Mat2& b);
    friend Mat2 operator*(cplx s, const Mat2& a);
    friend Mat2 operator-(const Mat2& a, const Mat2& b);
    std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const;
};

enum class Group { unitary, indefinite_unitary };
enum class ConjClass { elliptic, parabolic, hyperbolic, scalar };
const char* to_string(Group g);
const char* to_string(ConjClass c);

/// Conjugacy data of A = e^{2 pi i theta} B with B in the special subgroup:
/// theta in [0, 1), class of B, and the model parameter (alpha for elliptic,
/// a for parabolic, t for hyperbolic; 0 for scalars). The parabolic
/// parameter is representative only: conjugation rescales it.
struct ConjugacyData {
    ConjClass cls;
    double theta = 0;
    double param = 0;
};

/// Classification inside the isometry group of |.|_- = |w1|^2 - |w2|^2.
/// Elliptic / parabolic / hyperbolic according to |tr| <, =, > 2 after the
/// phase split. Throws when A does not preserve the form.
ConjugacyData classify_u11(const Mat2& A, double tol = 1e-8);
/// The compact counterpart; every class is elliptic or scalar.
ConjugacyData classify_u2(const Mat2& A, double tol = 1e-8);

using Vec2Fn = std::function<std::array<cplx, 2>(cplx)>;
/// C^2-valued evaluable from two expansions.
Vec2Fn series_pair(const LaurentSeries& c1, const LaurentSeries& c2);

struct RelationMatrix {
    Mat2 A;
    Group group;
    ConjugacyData conj;
    double residual = 0;     // sup |H - A G| over the sample points
    double group_defect = 0; // ||A*A - I|| or ||A*JA - J||
    bool rank_deficient = false;
};

/// Least-squares recovery of the matrix A with H = A G from samples on two
/// circles around `center`. Requires the (definite or indefinite) norms of G
/// and H to agree pointwise; a proportional pair (G2 = const * G1) makes A
/// non-unique, which is flagged and a representative returned.
RelationMatrix unitary_relation(const Vec2Fn& G, const Vec2Fn& H, Group group,
                                cplx center = 0.0, double r1 = 0.4, double r2 = 0.8,
                                int samples_per_circle = 8, double norm_rel_tol = 1e-9);

/// The constant theta in [0, 2 pi) with h1 = e^{i theta} h2, for sampled
/// nonvanishing fields of equal modulus. Throws when the moduli differ.
double phase_relation(const ComplexField& h1, const ComplexField& h2,
                      double rel_tol = 1e-9);

} // namespace ricci::spinor
