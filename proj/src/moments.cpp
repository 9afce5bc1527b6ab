#include "opdop/moments.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

#include "opdop/quadsurd.hpp"

namespace opdop {

namespace quad = boost::math::quadrature;
using Quad50 = bmp::cpp_bin_float_50;

MomentSequence<Rational> classical_moments(const ClassicalSpec& spec)
{
    using K = ClassicalSpec::Kind;
    switch (spec.kind) {
    case K::Hermite:
        return MomentSequence<Rational>(
            "hermite", "divided by sqrt(pi)", [](std::size_t k, const std::vector<Rational>& mu) {
                if (k == 0) {
                    return Rational(1);
                }
                if (k % 2 == 1) {
                    return Rational(0);
                }
                return mu[k - 2] * Rational(static_cast<long>(k) - 1) / 2;
            });
    case K::Laguerre: {
        if (spec.alpha <= -1) {
            throw SpecError("laguerre needs alpha > -1");
        }
        const Rational alpha = spec.alpha;
        return MomentSequence<Rational>(
            "laguerre(alpha=" + format_rational(alpha) + ")", "divided by Gamma(alpha+1)",
            [alpha](std::size_t k, const std::vector<Rational>& mu) {
                return k == 0 ? Rational(1) : mu[k - 1] * (alpha + Rational(static_cast<long>(k)));
            });
    }
    case K::Jacobi: {
        if (spec.alpha <= -1 || spec.beta <= -1) {
            throw SpecError("jacobi needs alpha > -1 and beta > -1");
        }
        const Rational a = spec.alpha;
        const Rational b = spec.beta;
        // (n+2+a+b) mu_{n+1} = (b-a) mu_n + n mu_{n-1}
        return MomentSequence<Rational>(
            "jacobi(alpha=" + format_rational(a) + ", beta=" + format_rational(b) + ")",
            "divided by 2^(alpha+beta+1) B(alpha+1, beta+1)", [a, b](std::size_t k, const std::vector<Rational>& mu) {
                if (k == 0) {
                    return Rational(1);
                }
                const long n = static_cast<long>(k) - 1;
                Rational rhs = (b - a) * mu[k - 1];
                if (n >= 1) {
                    rhs += Rational(n) * mu[k - 2];
                }
                return rhs / (Rational(n + 2) + a + b);
            });
    }
    case K::Chebyshev1:
        return MomentSequence<Rational>(
            "chebyshev1", "divided by pi", [](std::size_t k, const std::vector<Rational>& mu) {
                if (k == 0) {
                    return Rational(1);
                }
                if (k % 2 == 1) {
                    return Rational(0);
                }
                return mu[k - 2] * Rational(static_cast<long>(k) - 1) / Rational(static_cast<long>(k));
            });
    case K::Legendre: {
        if (spec.b <= spec.a) {
            throw SpecError("legendre interval needs a < b");
        }
        const Rational a = spec.a;
        const Rational b = spec.b;
        return MomentSequence<Rational>(
            "legendre[" + format_rational(a) + "," + format_rational(b) + "]", "divided by (b-a)",
            [a, b](std::size_t k, const std::vector<Rational>&) {
                Rational ap(1), bp(1);
                for (std::size_t i = 0; i <= k; ++i) {
                    ap *= a;
                    bp *= b;
                }
                return (bp - ap) / (Rational(static_cast<long>(k + 1)) * (b - a));
            });
    }
    }
    throw SpecError("unknown classical measure");
}

namespace {

template <class Q>
Q to_quad(double v)
{
    return Q(v);
}

/// integral over [a,b] of x^k w(x), with the interval split by the integrator family.
template <class Q>
Q integrate_moment(const WeightSpec& spec, std::size_t k, Q tol)
{
    const auto power = [k](const Q& x) {
        Q acc(1);
        for (std::size_t i = 0; i < k; ++i) {
            acc *= x;
        }
        return acc;
    };
    const auto weighted = [&](const Q& x) {
        const Q w = spec.w(x);
        if (w == 0) {
            return Q(0);
        }
        using std::isfinite;
        using boost::multiprecision::isfinite;
        if (!isfinite(w)) {
            throw QuadratureError("weight is not finite at x = " + std::to_string(static_cast<double>(x)));
        }
        return power(x) * w;
    };

    Q err(0);
    Q l1(0);
    Q value(0);
    const bool a_inf = std::isinf(spec.a);
    const bool b_inf = std::isinf(spec.b);
    try {
        if (!a_inf && !b_inf) {
            const Q a = to_quad<Q>(spec.a);
            const Q b = to_quad<Q>(spec.b);
            if (spec.endpoint_singular) {
                // xc is the distance to the nearer endpoint; rebuilding x from it keeps
                // full relative accuracy where the weight blows up.
                quad::tanh_sinh<Q> ts;
                // Rebuilt in 50 digits so that 1 - x keeps the digits of xc even in double mode.
                using W = boost::multiprecision::cpp_bin_float_50;
                const W aw = W(spec.a);
                const W bw = W(spec.b);
                const auto f = [&](const Q&, const Q& xc) {
                    const W x = xc < 0 ? aw - W(xc) : bw - W(xc);
                    const W w = spec.w(x);
                    if (w == 0) {
                        return Q(0);
                    }
                    if (!boost::multiprecision::isfinite(w)) {
                        if (x == aw || x == bw) {
                            return Q(0);
                        }
                        throw QuadratureError("weight is not finite at x = " + x.str(17));
                    }
                    W acc = w;
                    for (std::size_t i = 0; i < k; ++i) {
                        acc *= x;
                    }
                    if constexpr (std::is_same_v<Q, W>) {
                        return acc;
                    } else {
                        return static_cast<Q>(acc);
                    }
                };
                value = ts.integrate(f, a, b, tol, &err, &l1);
            } else {
                value = quad::gauss_kronrod<Q, 61>::integrate(weighted, a, b, 15, tol, &err, &l1);
            }
        } else {
            quad::exp_sinh<Q> es;
            Q e1(0), e2(0), n1(0), n2(0);
            if (a_inf && b_inf) {
                const Q right = es.integrate(weighted, Q(0), std::numeric_limits<Q>::infinity(), tol, &e1, &n1);
                const auto mirrored = [&](const Q& t) { return weighted(-t); };
                const Q left = es.integrate(mirrored, Q(0), std::numeric_limits<Q>::infinity(), tol, &e2, &n2);
                value = right + left;
            } else if (a_inf) {
                const Q b = to_quad<Q>(spec.b);
                const auto mirrored = [&](const Q& t) { return weighted(-t); };
                value = es.integrate(mirrored, -b, std::numeric_limits<Q>::infinity(), tol, &e1, &n1);
            } else {
                const Q a = to_quad<Q>(spec.a);
                value = es.integrate(weighted, a, std::numeric_limits<Q>::infinity(), tol, &e1, &n1);
            }
            err = e1 + e2;
            l1 = n1 + n2;
        }
    } catch (const QuadratureError&) {
        throw;
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("quadrature failed: ") + e.what());
    }
    if (err > tol * (l1 > 0 ? l1 : Q(1)) * 10) {
        throw QuadratureError("quadrature did not reach tolerance for moment " + std::to_string(k));
    }
    return value;
}

} // namespace

MomentSequence<double> weight_moments(const WeightSpec& spec)
{
    if (!(spec.a < spec.b)) {
        throw SpecError("weight interval needs a < b");
    }
    return MomentSequence<double>("weight " + spec.w.text(), "as integrated",
                                  [spec](std::size_t k, const std::vector<double>&) {
                                      return integrate_moment<double>(spec, k, spec.tol);
                                  });
}

MomentSequence<Extended> weight_moments_extended(const WeightSpec& spec, unsigned digits)
{
    if (!(spec.a < spec.b)) {
        throw SpecError("weight interval needs a < b");
    }
    if (digits > 45) {
        throw SpecError("extended weight quadrature supports at most 45 digits");
    }
    const Quad50 tol = pow(Quad50(10), -static_cast<int>(digits));
    return MomentSequence<Extended>("weight " + spec.w.text(), "as integrated",
                                    [spec, tol, digits](std::size_t k, const std::vector<Extended>&) {
                                        const Quad50 v = integrate_moment<Quad50>(spec, k, tol);
                                        PrecisionGuard guard(std::max(digits, kDefaultExtendedDigits));
                                        return Extended(v.str(60, std::ios_base::scientific));
                                    });
}

MomentSequence<Extended> chebyshev_weight_moments(std::function<Extended(const Extended&)> g, double decay,
                                                  unsigned digits, std::string description)
{
    if (!(decay >= 0.0 && decay < 1.0)) {
        throw SpecError("chebyshev_weight_moments needs a decay rate in [0,1)");
    }
    struct Nodes {
        std::size_t count{0};
        std::vector<Extended> x;
        std::vector<Extended> gx;
    };
    auto nodes = std::make_shared<Nodes>();
    return MomentSequence<Extended>(
        std::move(description), "divided by pi", [g, decay, digits, nodes](std::size_t k, const std::vector<Extended>&) {
            PrecisionGuard guard(digits + 10);
            // Gauss-Chebyshev with N nodes integrates x^k g exactly up to the aliasing of
            // g's Chebyshev tail beyond index 2N - k.
            const double per_digit = decay == 0.0 ? 0.0 : std::log(10.0) / -std::log(decay);
            const auto needed = static_cast<std::size_t>(k / 2 + 1 + std::ceil(0.5 * digits * per_digit) + 8);
            if (needed > nodes->count) {
                const std::size_t n = std::max<std::size_t>(needed, nodes->count * 3 / 2);
                nodes->count = n;
                nodes->x.resize(n);
                nodes->gx.resize(n);
                const Extended pi = boost::math::constants::pi<Extended>();
                for (std::size_t j = 0; j < n; ++j) {
                    nodes->x[j] = cos(pi * (Extended(2 * j + 1) / Extended(2 * n)));
                    nodes->gx[j] = g(nodes->x[j]);
                }
            }
            Extended s(0);
            for (std::size_t j = 0; j < nodes->count; ++j) {
                s += pow(nodes->x[j], static_cast<unsigned>(k)) * nodes->gx[j];
            }
            return s / Extended(nodes->count);
        });
}

template <class T>
std::vector<T> hankel_pivots(const MomentSequence<T>& ms, int n)
{
    Matrix<T> h = hankel_matrix(ms, n);
    const auto sz = h.rows();
    std::vector<T> piv;
    piv.reserve(sz);
    for (std::size_t k = 0; k < sz; ++k) {
        const T p = h(k, k);
        if constexpr (std::is_same_v<T, QuadSurd>) {
            if (p.to_extended() <= 0) {
                throw NotPositiveDefinite("Hankel pivot " + std::to_string(k) + " is not positive");
            }
        } else {
            if (!(p > T(0))) {
                throw NotPositiveDefinite("Hankel pivot " + std::to_string(k) + " is not positive");
            }
        }
        piv.push_back(p);
        for (std::size_t i = k + 1; i < sz; ++i) {
            const T f = h(i, k) / p;
            for (std::size_t j = k + 1; j < sz; ++j) {
                h(i, j) -= f * h(k, j);
            }
        }
    }
    return piv;
}

template <class T>
T hankel_det(const MomentSequence<T>& ms, int n)
{
    if (n < 0) {
        throw SpecError("Hankel index must be nonnegative");
    }
    if constexpr (std::is_same_v<T, Rational>) {
        // Bareiss without row exchanges: the k-th pivot is Delta_k itself.
        Matrix<T> a = hankel_matrix(ms, n);
        const auto sz = a.rows();
        T prev(1);
        for (std::size_t k = 0; k < sz; ++k) {
            if (a(k, k) <= 0) {
                throw NotPositiveDefinite("Hankel determinant Delta_" + std::to_string(k) + " <= 0");
            }
            for (std::size_t i = k + 1; i < sz; ++i) {
                for (std::size_t j = k + 1; j < sz; ++j) {
                    a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
                }
            }
            prev = a(k, k);
        }
        return a(sz - 1, sz - 1);
    } else {
        return determinant(hankel_matrix(ms, n));
    }
}

template <class T>
HankelMinors<T> hankel_minors(const MomentSequence<T>& ms, int n)
{
    if (n < 0) {
        throw SpecError("Hankel index must be nonnegative");
    }
    HankelMinors<T> out;
    out.n = n;
    out.delta_n = hankel_det(ms, n);
    if (n == 0) {
        out.minors = {ms.at(0)};
        return out;
    }
    const auto mu = ms.first(static_cast<std::size_t>(2 * n));
    const auto rows = static_cast<std::size_t>(n);
    Matrix<T> block(rows, rows + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j <= rows; ++j) {
            block(i, j) = mu[i + j];
        }
    }
    out.minors.reserve(rows + 1);
    for (std::size_t i = 0; i <= rows; ++i) {
        out.minors.push_back(determinant(delete_column(block, i)));
    }
    if constexpr (std::is_same_v<T, double> || std::is_same_v<T, Extended>) {
        const auto sv = singular_values(block);
        const T smallest = sv.back();
        out.condition = smallest > 0 ? scalar_cast<double>(T(sv.front() / smallest))
                                     : std::numeric_limits<double>::infinity();
    }
    return out;
}

template <class T>
Polynomial<T> monic_orthogonal(const MomentSequence<T>& ms, int n)
{
    if (n < 0) {
        throw SpecError("polynomial index must be nonnegative");
    }
    if (n == 0) {
        return Polynomial<T>::constant(T(1));
    }
    hankel_pivots(ms, n - 1);
    const auto mu = ms.first(static_cast<std::size_t>(2 * n));
    const auto sz = static_cast<std::size_t>(n);
    Matrix<T> h(sz, sz);
    std::vector<T> rhs(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t j = 0; j < sz; ++j) {
            h(i, j) = mu[i + j];
        }
        rhs[i] = -mu[i + sz];
    }
    std::vector<T> c = solve_linear(std::move(h), std::move(rhs));
    c.push_back(T(1));
    return Polynomial<T>(std::move(c));
}

template <class T>
Polynomial<T> heine_polynomial(const MomentSequence<T>& ms, int n)
{
    const HankelMinors<T> hm = hankel_minors(ms, n);
    const T denom = hm.minors[static_cast<std::size_t>(n)];
    std::vector<T> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const T sign = ((n + i) % 2 == 0) ? T(1) : T(-1);
        c[static_cast<std::size_t>(i)] = sign * hm.minors[static_cast<std::size_t>(i)] / denom;
    }
    return Polynomial<T>(std::move(c));
}

template <class T>
T moment_functional(const MomentSequence<T>& ms, const Polynomial<T>& p, int shift)
{
    if (p.is_zero()) {
        return T(0);
    }
    const auto mu = ms.first(static_cast<std::size_t>(p.degree() + shift + 1));
    T s(0);
    for (int i = 0; i <= p.degree(); ++i) {
        s += p.coeff(i) * mu[static_cast<std::size_t>(i + shift)];
    }
    return s;
}

template <class T>
T pairing(const MomentSequence<T>& ms, const Polynomial<T>& p, const Polynomial<T>& q)
{
    return moment_functional(ms, p * q);
}

#define OPDOP_INSTANTIATE_MOMENTS(T)                                                   \
    template std::vector<T> hankel_pivots<T>(const MomentSequence<T>&, int);           \
    template T hankel_det<T>(const MomentSequence<T>&, int);                           \
    template HankelMinors<T> hankel_minors<T>(const MomentSequence<T>&, int);          \
    template Polynomial<T> monic_orthogonal<T>(const MomentSequence<T>&, int);         \
    template Polynomial<T> heine_polynomial<T>(const MomentSequence<T>&, int);         \
    template T moment_functional<T>(const MomentSequence<T>&, const Polynomial<T>&, int); \
    template T pairing<T>(const MomentSequence<T>&, const Polynomial<T>&, const Polynomial<T>&);

OPDOP_INSTANTIATE_MOMENTS(Rational)
OPDOP_INSTANTIATE_MOMENTS(double)
OPDOP_INSTANTIATE_MOMENTS(Extended)
OPDOP_INSTANTIATE_MOMENTS(QuadSurd)

} // namespace opdop
