#include "opdop/polar.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace opdop {

Complex joukowski(Complex z)
{
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) {
        const double x = z.real();
        return {x, std::sqrt(1.0 - x * x)};
    }
    // Either root w of w^2 - 2zw + 1 = 0; the other is 1/w.
    const Complex w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    return std::abs(w) >= 1.0 ? w : 1.0 / w;
}

template <class T>
Polynomial<T> polar_polynomial(const MomentSequence<T>& ms, const T& zeta, int n)
{
    if (n < 1) {
        throw SpecError("polar polynomials start at n = 1");
    }
    const auto p = monic_orthogonal(ms, n);
    const auto f = scale(antiderivative_from(p, zeta), T(n + 1));
    return div_exact(f, Polynomial<T>::linear_factor(zeta));
}

template <class T>
Polynomial<T> polar_pi(const MomentSequence<T>& ms, const T& zeta, int n)
{
    if (n == 0) {
        return Polynomial<T>::constant(T(1));
    }
    const auto lin = Polynomial<T>::linear_factor(zeta);
    return n == 1 ? lin : lin * polar_polynomial(ms, zeta, n - 1);
}

BernsteinSzegoMeasure::BernsteinSzegoMeasure(Rational r, std::vector<Rational> nu) : r_(std::move(r)), nu_(std::move(nu))
{
    if (r_ == 0) {
        throw SpecError("rho must not vanish identically");
    }
    for (const auto& v : nu_) {
        if (abs(v) <= 1) {
            throw SpecError("rho has a zero on [-1,1]");
        }
    }
    const auto rho_poly = rho();
    for (int j = 0; j <= 64; ++j) {
        const double x = std::cos(std::numbers::pi * j / 64.0);
        const Rational xr(x);
        if (evaluate(rho_poly, xr) <= 0) {
            throw SpecError("rho is not positive on [-1,1]");
        }
    }
}

RationalPoly BernsteinSzegoMeasure::rho() const
{
    RationalPoly p = RationalPoly::constant(r_);
    for (const auto& v : nu_) {
        p = p * RationalPoly::linear_factor(v);
    }
    return p;
}

namespace {

/// 1 / sqrt(nu^2 - 1) for rational |nu| > 1.
QuadSurd inverse_root(const Rational& nu)
{
    const Integer p = numerator(nu);
    const Integer q = denominator(nu);
    Integer s = p * p - q * q;
    // s = f^2 d with d square-free
    Integer f = 1;
    Integer d = 1;
    for (Integer k = 2; k * k <= s; ++k) {
        while (s % (k * k) == 0) {
            s /= k * k;
            f *= k;
        }
        if (s % k == 0) {
            s /= k;
            d *= k;
        }
    }
    d *= s;
    if (d == 1) {
        return QuadSurd(Rational(q) / Rational(f));
    }
    if (d > Integer(std::numeric_limits<long>::max())) {
        throw SpecError("radicand too large");
    }
    return QuadSurd(Rational(0), Rational(q) / Rational(f * d), d.convert_to<long>());
}

Rational chebyshev_moment(std::size_t k)
{
    if (k % 2 == 1) {
        return Rational(0);
    }
    Rational c(1);
    // C(k, k/2) / 2^k
    for (std::size_t j = 1; j <= k / 2; ++j) {
        c *= Rational(static_cast<long>(k / 2 + j), static_cast<long>(4 * j));
    }
    return c;
}

} // namespace

MomentSequence<QuadSurd> BernsteinSzegoMeasure::exact_moments() const
{
    for (std::size_t i = 0; i < nu_.size(); ++i) {
        for (std::size_t j = i + 1; j < nu_.size(); ++j) {
            if (nu_[i] == nu_[j]) {
                throw SpecError("exact moments need simple zeros of rho");
            }
        }
    }
    // 1/rho = sum A_i / (x - nu_i) and integral dmu_T / (x - nu) = -sign(nu) / sqrt(nu^2 - 1).
    struct Part {
        Rational nu;
        Rational a;
        QuadSurd base;
    };
    std::vector<Part> parts;
    const auto drho = derivative(rho());
    long field = 0;
    for (const auto& v : nu_) {
        QuadSurd base = inverse_root(v);
        if (base.radicand() != 0) {
            if (field != 0 && field != base.radicand()) {
                throw SpecError("the zeros of rho lead to different quadratic fields");
            }
            field = base.radicand();
        }
        if (v > 0) {
            base = -base;
        }
        parts.push_back({v, Rational(1) / evaluate(drho, v), base});
    }
    if (parts.empty()) {
        return MomentSequence<QuadSurd>(
            "chebyshev1 / rho", "divided by pi",
            [r = r_](std::size_t k, const std::vector<QuadSurd>&) { return QuadSurd(chebyshev_moment(k) / r); });
    }
    return MomentSequence<QuadSurd>(
        "chebyshev1 / rho", "divided by pi", [parts](std::size_t k, const std::vector<QuadSurd>&) {
            // x^k / (x - nu) = sum_{j<k} nu^{k-1-j} x^j + nu^k / (x - nu)
            QuadSurd total;
            for (const auto& part : parts) {
                Rational poly_part(0);
                Rational power(1);
                for (std::size_t j = k; j-- > 0;) {
                    poly_part += power * chebyshev_moment(j);
                    power *= part.nu;
                }
                total += QuadSurd(part.a) * (QuadSurd(poly_part) + QuadSurd(power) * part.base);
            }
            return total;
        });
}

MomentSequence<Extended> BernsteinSzegoMeasure::extended_moments(unsigned digits) const
{
    double decay = 0.0;
    for (const auto& v : nu_) {
        decay = std::max(decay, 1.0 / std::abs(joukowski(Complex(v.convert_to<double>(), 0.0))));
    }
    const Rational r = r_;
    const std::vector<Rational> nu = nu_;
    auto g = [r, nu](const Extended& x) {
        Extended p = scalar_cast<Extended>(r);
        for (const auto& v : nu) {
            p *= x - scalar_cast<Extended>(v);
        }
        return Extended(1) / p;
    };
    return chebyshev_weight_moments(g, decay, digits, "chebyshev1 / rho");
}

template <class T>
std::vector<T> chebyshev_tail(const Polynomial<T>& p_n, int m)
{
    const int n = p_n.degree();
    const auto e = to_chebyshev(p_n);
    for (int k = 0; k < n - m; ++k) {
        const T& c = e.coeffs[static_cast<std::size_t>(k)];
        bool vanishes = false;
        if constexpr (is_exact_v<T>) {
            vanishes = c == T(0);
        } else {
            vanishes = ScalarTraits<T>::magnitude(c) <= 1e-8;
        }
        if (!vanishes) {
            throw TailViolation("Chebyshev coefficient " + std::to_string(k) + " of P_" + std::to_string(n) +
                                " does not vanish");
        }
    }
    std::vector<T> tail;
    for (int k = 0; k <= m && n - k >= 0; ++k) {
        tail.push_back(e.coeffs[static_cast<std::size_t>(n - k)]);
    }
    return tail;
}

AsymptoticModel::AsymptoticModel(const BernsteinSzegoMeasure& mu) : r_(mu.r().convert_to<double>())
{
    std::vector<double> inv;
    for (const auto& v : mu.nu()) {
        nu_.push_back(v.convert_to<double>());
        phi_nu_.push_back(joukowski(Complex(nu_.back(), 0.0)).real());
        inv.push_back(1.0 / phi_nu_.back());
    }
    // e_k by the usual product expansion
    std::vector<double> e(inv.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        for (std::size_t k = i + 1; k >= 1; --k) {
            e[k] += e[k - 1] * inv[i];
        }
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
        limits_.push_back(std::pow(-0.5, static_cast<double>(k)) * e[k]);
    }
}

Complex AsymptoticModel::predictor(Complex u) const
{
    Complex g(1.0, 0.0);
    for (double p : phi_nu_) {
        g *= 1.0 - 1.0 / (u * p);
    }
    return g;
}

double AsymptoticModel::szego_constant() const
{
    // t = cos(theta) turns the weight into d theta.
    auto f = [this](double theta) {
        const double t = std::cos(theta);
        double p = r_;
        for (double v : nu_) {
            p *= t - v;
        }
        return std::log(p);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double integral = ts.integrate(f, 0.0, std::numbers::pi);
    return std::exp(integral / (2.0 * std::numbers::pi));
}

double AsymptoticModel::szego_constant_closed_form() const
{
    double prod = std::abs(r_);
    for (double p : phi_nu_) {
        prod *= std::abs(p);
    }
    return std::sqrt(prod / std::pow(2.0, static_cast<double>(phi_nu_.size())));
}

template <class T>
std::vector<double> strong_asymptotics_deviation(const AsymptoticModel& model, const Polynomial<T>& p_n,
                                                 const std::vector<Complex>& z_points)
{
    const int n = p_n.degree();
    std::vector<Complex> c;
    for (const auto& a : p_n.coeffs()) {
        c.push_back(Complex(scalar_cast<double>(a), 0.0));
    }
    std::vector<double> out;
    for (const auto& z : z_points) {
        const Complex u = joukowski(z);
        if (std::abs(u) < 1.2) {
            throw SpecError("strong asymptotics are checked only where |phi(z)| >= 1.2");
        }
        // Horner on 2z/u keeps the magnitudes near 1.
        const Complex w = 2.0 * z / u;
        const Complex s = 2.0 / u;
        Complex acc(0.0, 0.0);
        for (int k = n; k >= 0; --k) {
            acc = acc * w + c[static_cast<std::size_t>(k)] * std::pow(s, n - k);
        }
        out.push_back(std::abs(acc - model.predictor(u)));
    }
    return out;
}

EllipseE ellipse(Complex zeta)
{
    if (zeta.imag() == 0.0 && std::abs(zeta.real()) <= 1.0) {
        throw SpecError("zeta lies on [-1,1]");
    }
    EllipseE e;
    e.eta = std::log(std::abs(joukowski(zeta)));
    e.semi_major = std::cosh(e.eta);
    e.semi_minor = std::sinh(e.eta);
    return e;
}

double dist_to_E(Complex z, const EllipseE& e)
{
    const double x = z.real();
    const double y = z.imag();
    const double a = e.semi_major;
    const double b = e.semi_minor;
    auto dist = [&](double t) { return std::hypot(x - a * std::cos(t), y - b * std::sin(t)); };

    constexpr int samples = 720;
    double best_t = 0.0;
    double best = dist(0.0);
    for (int k = 1; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const double d = dist(t);
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    // Newton on the derivative of half the squared distance.
    double t = best_t;
    for (int it = 0; it < 8; ++it) {
        const double c = std::cos(t);
        const double s = std::sin(t);
        const double g = (x - a * c) * a * s - (y - b * s) * b * c;
        const double h = a * a * s * s + (x - a * c) * a * c + b * b * c * c + (y - b * s) * b * s;
        if (h <= 0.0) {
            break;
        }
        t -= g / h;
    }
    best = std::min(best, dist(t));

    const double seg = std::abs(x) <= 1.0 ? std::abs(y) : std::hypot(std::abs(x) - 1.0, y);
    return std::min(best, seg);
}

template <class T>
SobolevReport<T> sobolev_orthogonality_check(const MomentSequence<T>& ms, const T& zeta, int up_to)
{
    std::vector<Polynomial<T>> dpi;
    for (int k = 1; k <= up_to; ++k) {
        dpi.push_back(derivative(polar_pi(ms, zeta, k)));
    }
    SobolevReport<T> rep;
    const auto sz = static_cast<std::size_t>(up_to);
    rep.gram = Matrix<T>(sz, sz);
    for (std::size_t j = 0; j < sz; ++j) {
        for (std::size_t k = 0; k < sz; ++k) {
            rep.gram(j, k) = pairing(ms, dpi[j], dpi[k]);
            const double mag = ScalarTraits<T>::magnitude(rep.gram(j, k));
            if (j == k) {
                rep.diagonal_positive = rep.diagonal_positive && rep.gram(j, k) > T(0);
            } else {
                rep.max_off_diagonal = std::max(rep.max_off_diagonal, mag);
            }
        }
    }
    return rep;
}

#define OPDOP_INSTANTIATE_POLAR(T)                                                                                 \
    template Polynomial<T> polar_polynomial(const MomentSequence<T>&, const T&, int);                                \
    template Polynomial<T> polar_pi(const MomentSequence<T>&, const T&, int);                                        \
    template std::vector<T> chebyshev_tail(const Polynomial<T>&, int);                                               \
    template std::vector<double> strong_asymptotics_deviation(const AsymptoticModel&, const Polynomial<T>&,          \
                                                              const std::vector<Complex>&);                          \

#define OPDOP_INSTANTIATE_SOBOLEV(T)                                                                               \
    template SobolevReport<T> sobolev_orthogonality_check(const MomentSequence<T>&, const T&, int);

OPDOP_INSTANTIATE_POLAR(Rational)
OPDOP_INSTANTIATE_POLAR(double)
OPDOP_INSTANTIATE_POLAR(Extended)
OPDOP_INSTANTIATE_POLAR(QuadSurd)
OPDOP_INSTANTIATE_SOBOLEV(Rational)
OPDOP_INSTANTIATE_SOBOLEV(double)
OPDOP_INSTANTIATE_SOBOLEV(Extended)

} // namespace opdop
