#ifndef OPDOP_POLAR_HPP
#define OPDOP_POLAR_HPP

#include <vector>

#include "opdop/moments.hpp"
#include "opdop/operator.hpp"
#include "opdop/quadsurd.hpp"

namespace opdop {

/// z + sqrt(z^2 - 1) on the branch with |phi| > 1; on [-1,1] the limit from the upper half plane.
Complex joukowski(Complex z);

/// Monic Q_n with (x - zeta) Q_n = (n+1) * integral_zeta^x P_n.
template <class T>
Polynomial<T> polar_polynomial(const MomentSequence<T>& ms, const T& zeta, int n);

/// Pi_n = (x - zeta) Q_{n-1} for n >= 1; Pi_0 = 1.
template <class T>
Polynomial<T> polar_pi(const MomentSequence<T>& ms, const T& zeta, int n);

/// d mu_T / rho on [-1,1] with rho(x) = r * prod (x - nu_i), positive on [-1,1].
class BernsteinSzegoMeasure {
public:
    /// Throws SpecError when some |nu_i| <= 1 or rho is not positive on [-1,1].
    BernsteinSzegoMeasure(Rational r, std::vector<Rational> nu);

    const Rational& r() const { return r_; }
    const std::vector<Rational>& nu() const { return nu_; }
    int m() const { return static_cast<int>(nu_.size()); }
    RationalPoly rho() const;

    /// Moments divided by pi, in Q(sqrt d). Requires distinct nu_i whose sqrt(nu_i^2 - 1)
    /// share one quadratic field; throws SpecError otherwise.
    MomentSequence<QuadSurd> exact_moments() const;
    /// Same normalization, by Gauss-Chebyshev quadrature at the given digits.
    MomentSequence<Extended> extended_moments(unsigned digits) const;

private:
    Rational r_;
    std::vector<Rational> nu_;
};

/// b_{n,n-k} for k = 0..m in the expansion of P_n over T̂_n, ..., T̂_{n-m}.
/// Coefficients below index n-m must vanish (exactly, or <= 1e-8 in floating modes);
/// TailViolation otherwise.
template <class T>
std::vector<T> chebyshev_tail(const Polynomial<T>& p_n, int m);

class AsymptoticModel {
public:
    explicit AsymptoticModel(const BernsteinSzegoMeasure& mu);

    /// prod (1 - 1/(u phi(nu_k)))
    Complex predictor(Complex u) const;
    /// l_k = (-1/2)^k e_k(1/phi(nu_1), ..., 1/phi(nu_m)), k = 0..m.
    const std::vector<double>& limits() const { return limits_; }
    /// exp((1/2pi) integral log rho(t) (1-t^2)^{-1/2} dt) by tanh-sinh.
    double szego_constant() const;
    /// sqrt(|r| prod |phi(nu_i)| / 2^m)
    double szego_constant_closed_form() const;

private:
    double r_{1};
    std::vector<double> nu_;
    std::vector<double> phi_nu_;
    std::vector<double> limits_;
};

/// |2^n P_n(z) / phi(z)^n - G(phi(z))| for each z; requires |phi(z)| >= 1.2.
template <class T>
std::vector<double> strong_asymptotics_deviation(const AsymptoticModel& model, const Polynomial<T>& p_n,
                                                 const std::vector<Complex>& z_points);

struct EllipseE {
    double eta{0};
    double semi_major{1};
    double semi_minor{0};
};

/// eta = ln |phi(zeta)|; SpecError for zeta on [-1,1].
EllipseE ellipse(Complex zeta);

/// Distance from z to the ellipse together with the segment [-1,1].
double dist_to_E(Complex z, const EllipseE& e);

template <class T>
struct SobolevReport {
    Matrix<T> gram;
    double max_off_diagonal{0};
    bool diagonal_positive{true};
};

/// Gram matrix of integral Pi_j' Pi_k' dmu for 1 <= j, k <= up_to.
template <class T>
SobolevReport<T> sobolev_orthogonality_check(const MomentSequence<T>& ms, const T& zeta, int up_to);

} // namespace opdop

#endif // OPDOP_POLAR_HPP
