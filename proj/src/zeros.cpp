#include "opdop/zeros.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace opdop {

namespace {

/// Minimal complex number over any real type; std::complex is only specified for
/// the built-in floating types.
template <class R>
struct Cplx {
    R re{0};
    R im{0};

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b)
    {
        const R d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    R norm() const
    {
        using std::sqrt;
        return sqrt(re * re + im * im);
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

template <class R>
struct Horner {
    Cplx<R> value;
    Cplx<R> deriv;
    R abs_sum;
};

template <class R>
Horner<R> horner(const std::vector<Cplx<R>>& a, const Cplx<R>& z)
{
    Cplx<R> p = a.back();
    Cplx<R> dp{R(0), R(0)};
    const R mz = z.norm();
    R s = a.back().norm();
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[i];
        s = s * mz + a[i].norm();
    }
    return {p, dp, s};
}

/// Aberth sweeps in place; returns the number of sweeps, or -1 when max_sweeps ran out.
/// A root counts as settled when its correction is below tol or |p(z)| is at the
/// rounding level eps * sum |a_k| |z|^k, where smaller corrections are noise.
template <class R>
int aberth(const std::vector<Cplx<R>>& a, std::vector<Cplx<R>>& z, int max_sweeps, const R& tol, const R& eps)
{
    const std::size_t n = z.size();
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        R worst(0);
        for (std::size_t k = 0; k < n; ++k) {
            const Horner<R> h = horner(a, z[k]);
            if (h.value.is_zero()) {
                continue;
            }
            const bool at_noise = h.value.norm() <= R(8 * a.size()) * eps * h.abs_sum;
            if (h.deriv.is_zero()) {
                // Nudge off a critical point.
                z[k] = z[k] + Cplx<R>{tol * R(1000), tol * R(1000)};
                worst = R(1);
                continue;
            }
            const Cplx<R> ratio = h.value / h.deriv;
            Cplx<R> sum{R(0), R(0)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) {
                    const Cplx<R> diff = z[k] - z[j];
                    if (!diff.is_zero()) {
                        sum = sum + Cplx<R>{R(1), R(0)} / diff;
                    }
                }
            }
            const Cplx<R> w = ratio / (Cplx<R>{R(1), R(0)} - ratio * sum);
            z[k] = z[k] - w;
            const R rel = w.norm() / (R(1) + z[k].norm());
            if (!at_noise && rel > worst) {
                worst = rel;
            }
        }
        if (worst < tol) {
            return sweep;
        }
    }
    return -1;
}

std::vector<Cplx<double>> to_cplx(const std::vector<Complex>& c)
{
    std::vector<Cplx<double>> out;
    out.reserve(c.size());
    for (const auto& x : c) {
        out.push_back({x.real(), x.imag()});
    }
    return out;
}

/// Strips x^k factors; returns the count.
template <class T>
std::size_t strip_zero_roots(std::vector<T>& c)
{
    std::size_t k = 0;
    while (k < c.size() && c[k] == T(0)) {
        ++k;
    }
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
    return k;
}

double residual_of(const std::vector<Cplx<double>>& a, const std::vector<Complex>& rts)
{
    double worst = 0.0;
    for (const auto& r : rts) {
        const Horner<double> h = horner(a, {r.real(), r.imag()});
        if (h.abs_sum > 0) {
            worst = std::max(worst, h.value.norm() / h.abs_sum);
        }
    }
    return worst;
}

RootSet solve_double(std::vector<Complex> c, const RootOptions& opt)
{
    RootSet rs;
    const std::size_t zeros = strip_zero_roots(c);
    rs.roots.assign(zeros, Complex(0.0, 0.0));
    if (c.size() <= 1) {
        return rs;
    }
    double scale = 0.0;
    for (const auto& x : c) {
        scale = std::max(scale, std::abs(x));
    }
    for (auto& x : c) {
        x /= scale;
    }
    const Polynomial<Complex> p(c);
    const std::size_t n = c.size() - 1;
    const double radius = 0.8 * cauchy_bound(p);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const double phase = phase_dist(rng);
    std::vector<Cplx<double>> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        z[k] = {radius * std::cos(t), radius * std::sin(t)};
    }
    const auto a = to_cplx(c);
    const int sweeps = aberth<double>(a, z, opt.max_sweeps, 1e-13, std::numeric_limits<double>::epsilon());
    rs.iterations = sweeps < 0 ? opt.max_sweeps : sweeps;
    rs.converged = sweeps >= 0;
    for (const auto& x : z) {
        rs.roots.emplace_back(x.re, x.im);
    }
    rs.residual = residual_of(a, rs.roots);
    return rs;
}

/// Refines the nonzero roots against extended coefficients c (zero roots already stripped).
void polish_extended(const std::vector<Extended>& c, RootSet& rs, std::size_t zero_count, const RootOptions& opt)
{
    PrecisionGuard guard(opt.polish_digits);
    std::vector<Cplx<Extended>> a;
    a.reserve(c.size());
    for (const auto& x : c) {
        a.push_back({x, Extended(0)});
    }
    std::vector<Cplx<Extended>> z;
    for (std::size_t k = zero_count; k < rs.roots.size(); ++k) {
        z.push_back({Extended(rs.roots[k].real()), Extended(rs.roots[k].imag())});
    }
    const Extended tol = pow(Extended(10), -static_cast<int>(opt.polish_digits) + 5);
    const Extended eps = pow(Extended(10), -static_cast<int>(opt.polish_digits));
    const int sweeps = aberth<Extended>(a, z, opt.max_sweeps, tol, eps);
    rs.iterations += sweeps < 0 ? opt.max_sweeps : sweeps;
    rs.converged = sweeps >= 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        rs.roots[zero_count + k] = Complex(z[k].re.convert_to<double>(), z[k].im.convert_to<double>());
    }
    // Backward error measured against the extended coefficients.
    double worst = 0.0;
    for (const auto& zk : z) {
        const Horner<Extended> h = horner(a, zk);
        if (h.abs_sum > 0) {
            worst = std::max(worst, Extended(h.value.norm() / h.abs_sum).convert_to<double>());
        }
    }
    rs.residual = worst;
}

RootSet solve_extended(std::vector<Extended> c, const RootOptions& opt)
{
    const std::size_t zeros = strip_zero_roots(c);
    Extended scale(0);
    for (const auto& x : c) {
        scale = std::max(scale, Extended(abs(x)));
    }
    std::vector<Complex> rounded;
    rounded.reserve(c.size());
    for (const auto& x : c) {
        rounded.emplace_back(Extended(x / scale).convert_to<double>(), 0.0);
    }
    RootSet rs = solve_double(rounded, opt);
    rs.roots.insert(rs.roots.begin(), zeros, Complex(0.0, 0.0));
    if (opt.polish && c.size() > 1) {
        polish_extended(c, rs, zeros, opt);
    }
    return rs;
}

} // namespace

double cauchy_bound(const Polynomial<Complex>& p)
{
    const int n = p.degree();
    if (n < 1) {
        return 0.0;
    }
    std::vector<double> m;
    for (const auto& x : p.coeffs()) {
        m.push_back(std::abs(x));
    }
    const double lead = m.back();
    // f(x) = lead x^n - sum_{k<n} m_k x^k is increasing beyond its positive root.
    const auto f = [&](double x) {
        double s = 0.0;
        for (int k = n - 1; k >= 0; --k) {
            s = s * x + m[static_cast<std::size_t>(k)];
        }
        return lead * std::pow(x, n) - s;
    };
    double hi = 1.0;
    double lo = 0.0;
    while (f(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

RootSet roots(const Polynomial<Complex>& p, const RootOptions& opt)
{
    if (p.degree() < 1) {
        throw SpecError("root finding needs degree >= 1");
    }
    return solve_double(p.coeffs(), opt);
}

RootSet roots(const Polynomial<double>& p, const RootOptions& opt)
{
    if (p.degree() < 1) {
        throw SpecError("root finding needs degree >= 1");
    }
    std::vector<Extended> c;
    for (const auto& x : p.coeffs()) {
        c.emplace_back(x);
    }
    return solve_extended(std::move(c), opt);
}

RootSet roots(const Polynomial<Extended>& p, const RootOptions& opt)
{
    if (p.degree() < 1) {
        throw SpecError("root finding needs degree >= 1");
    }
    return solve_extended(p.coeffs(), opt);
}

RootSet roots(const Polynomial<Rational>& p, const RootOptions& opt)
{
    if (p.degree() < 1) {
        throw SpecError("root finding needs degree >= 1");
    }
    PrecisionGuard guard(std::max(opt.polish_digits, kDefaultExtendedDigits));
    std::vector<Extended> c;
    for (const auto& x : p.coeffs()) {
        c.emplace_back(x);
    }
    return solve_extended(std::move(c), opt);
}

const RootSet& require_converged(const RootSet& rs)
{
    if (!rs.converged) {
        throw NonConvergence("root finder did not converge within the sweep limit");
    }
    return rs;
}

double vieta_residual(const Polynomial<Complex>& p, const RootSet& rs)
{
    const int n = p.degree();
    Complex sum(0.0, 0.0);
    double mag = 0.0;
    for (const auto& r : rs.roots) {
        sum += r;
        mag += std::abs(r);
    }
    const Complex expected = -p.coeff(n - 1) / p.coeff(n);
    return std::abs(sum - expected) / std::max(1.0, mag);
}

IteratedIntegralResult iterated_integral_circle_test(const Polynomial<Complex>& p,
                                                     const std::vector<Complex>& base_points, double r,
                                                     const RootOptions& opt)
{
    IteratedIntegralResult out;
    const double slack = 1e-9 * (1.0 + r);
    if (p.degree() >= 1) {
        const auto base = roots(p, opt);
        for (const auto& z : require_converged(base).roots) {
            if (std::abs(z) > r + slack) {
                out.precondition_ok = false;
            }
        }
    }
    for (const auto& b : base_points) {
        if (std::abs(b) > r + slack) {
            out.precondition_ok = false;
        }
    }
    Polynomial<Complex> f = p;
    for (const auto& b : base_points) {
        f = antiderivative_from(f, b);
    }
    out.bound = std::pow(3.0, static_cast<double>(base_points.size())) * r;
    if (f.degree() >= 1) {
        out.roots = require_converged(roots(f, opt)).roots;
    }
    for (const auto& z : out.roots) {
        out.max_modulus = std::max(out.max_modulus, std::abs(z));
    }
    out.pass = out.precondition_ok && out.max_modulus <= out.bound + 1e-8;
    return out;
}

} // namespace opdop
