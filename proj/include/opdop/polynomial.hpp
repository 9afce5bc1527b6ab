#ifndef OPDOP_POLYNOMIAL_HPP
#define OPDOP_POLYNOMIAL_HPP

#include <algorithm>
#include <climits>
#include <cstddef>
#include <utility>
#include <vector>

#include "opdop/scalar.hpp"

namespace opdop {

/// Degree reported for the zero polynomial.
inline constexpr int kMinusInfinity = INT_MIN;

/// Dense univariate polynomial, coefficient of x^i at index i.
/// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
template <class T>
class Polynomial {
public:
    using scalar_type = T;

    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }

    static Polynomial monomial(int k, const T& a = T(1))
    {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c[static_cast<std::size_t>(k)] = a;
        return Polynomial(std::move(c));
    }

    /// x - a
    static Polynomial linear_factor(const T& a) { return Polynomial(std::vector<T>{-a, T(1)}); }

    int degree() const { return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<T>& coeffs() const { return c_; }

    /// Coefficient of x^i, zero outside the stored range.
    T coeff(int i) const
    {
        if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) {
            return T(0);
        }
        return c_[static_cast<std::size_t>(i)];
    }

    const T& leading() const { return c_.back(); }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size(), T(0));
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size(), T(0));
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        trim();
        return *this;
    }

    Polynomial& operator*=(const Polynomial& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator-(Polynomial a)
    {
        for (auto& x : a.c_) {
            x = -x;
        }
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_scalar(a.c_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    static bool is_zero_scalar(const T& x) { return x == T(0); }

    void trim()
    {
        while (!c_.empty() && is_zero_scalar(c_.back())) {
            c_.pop_back();
        }
    }

    std::vector<T> c_;
};

template <class T>
Polynomial<T> scale(const Polynomial<T>& p, const T& s)
{
    std::vector<T> c = p.coeffs();
    for (auto& x : c) {
        x *= s;
    }
    return Polynomial<T>(std::move(c));
}

/// k-th derivative.
template <class T>
Polynomial<T> derivative(const Polynomial<T>& p, int k = 1)
{
    const int d = p.degree();
    if (k <= 0) {
        return p;
    }
    if (d < k) {
        return {};
    }
    std::vector<T> c(static_cast<std::size_t>(d - k + 1), T(0));
    for (int i = k; i <= d; ++i) {
        T f(1);
        for (int j = 0; j < k; ++j) {
            f *= T(i - j);
        }
        c[static_cast<std::size_t>(i - k)] = p.coeff(i) * f;
    }
    return Polynomial<T>(std::move(c));
}

/// Horner evaluation.
template <class T>
T evaluate(const Polynomial<T>& p, const T& x)
{
    T acc(0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

/// F with F' = p and F(c) = 0.
template <class T>
Polynomial<T> antiderivative_from(const Polynomial<T>& p, const T& c)
{
    if (p.is_zero()) {
        return {};
    }
    std::vector<T> a(p.size() + 1, T(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        a[i + 1] = p.coeffs()[i] / T(static_cast<long>(i + 1));
    }
    Polynomial<T> f(std::move(a));
    return f - Polynomial<T>::constant(evaluate(f, c));
}

template <class T>
double max_abs_coeff(const Polynomial<T>& p)
{
    double m = 0.0;
    for (const auto& x : p.coeffs()) {
        m = std::max(m, ScalarTraits<T>::magnitude(x));
    }
    return m;
}

/// Quotient and remainder of long division.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& p, const Polynomial<T>& q)
{
    if (q.is_zero()) {
        throw SpecError("division by the zero polynomial");
    }
    const int dp = p.degree();
    const int dq = q.degree();
    if (dp < dq) {
        return {Polynomial<T>{}, p};
    }
    std::vector<T> r = p.coeffs();
    std::vector<T> quo(static_cast<std::size_t>(dp - dq + 1), T(0));
    const T& lead = q.leading();
    for (int i = dp - dq; i >= 0; --i) {
        const T t = r[static_cast<std::size_t>(i + dq)] / lead;
        quo[static_cast<std::size_t>(i)] = t;
        for (int j = 0; j <= dq; ++j) {
            r[static_cast<std::size_t>(i + j)] -= t * q.coeffs()[static_cast<std::size_t>(j)];
        }
        // The leading entry is cancelled by construction; force it in float modes.
        r[static_cast<std::size_t>(i + dq)] = T(0);
    }
    return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(r))};
}

/// p / q when q divides p; floating modes accept remainders below 1e-9 * |p|_inf.
template <class T>
Polynomial<T> div_exact(const Polynomial<T>& p, const Polynomial<T>& q)
{
    auto [quo, rem] = divmod(p, q);
    if constexpr (is_exact_v<T>) {
        if (!rem.is_zero()) {
            throw NonDivisible("polynomial division leaves a nonzero remainder");
        }
    } else {
        if (max_abs_coeff(rem) > 1e-9 * max_abs_coeff(p)) {
            throw NonDivisible("polynomial division leaves a remainder above tolerance");
        }
    }
    return quo;
}

template <class T>
Polynomial<T> make_monic(const Polynomial<T>& p)
{
    if (p.is_zero()) {
        return p;
    }
    return scale(p, T(1) / p.leading());
}

/// Monic gcd over an exact field.
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b)
{
    static_assert(is_exact_v<T>, "gcd needs exact arithmetic");
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// p divided by gcd(p, p'): same roots, all simple.
template <class T>
Polynomial<T> square_free_part(const Polynomial<T>& p)
{
    if (p.degree() < 1) {
        return p;
    }
    return div_exact(make_monic(p), gcd(p, derivative(p)));
}

/// Coefficientwise conversion between scalar modes.
template <class U, class T>
Polynomial<U> convert(const Polynomial<T>& p)
{
    std::vector<U> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) {
        c.push_back(scalar_cast<U>(x));
    }
    return Polynomial<U>(std::move(c));
}

/// Coefficients in the monic first-kind Chebyshev basis T̂_0, T̂_1, ...
template <class T>
struct ChebyshevExpansion {
    std::vector<T> coeffs;
    friend bool operator==(const ChebyshevExpansion& a, const ChebyshevExpansion& b) { return a.coeffs == b.coeffs; }
};

/// T̂_n = T_n / 2^{n-1} (n >= 1), T̂_0 = 1.
template <class T>
Polynomial<T> monic_chebyshev(int n)
{
    Polynomial<T> prev = Polynomial<T>::constant(T(1));
    if (n == 0) {
        return prev;
    }
    Polynomial<T> cur = Polynomial<T>::monomial(1);
    const Polynomial<T> x = Polynomial<T>::monomial(1);
    for (int k = 1; k < n; ++k) {
        const T q = (k == 1) ? T(1) / T(2) : T(1) / T(4);
        Polynomial<T> next = x * cur - scale(prev, q);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

template <class T>
ChebyshevExpansion<T> to_chebyshev(const Polynomial<T>& p)
{
    // Peel off the leading term with the monic basis element of the same degree.
    ChebyshevExpansion<T> e;
    if (p.is_zero()) {
        return e;
    }
    const int d = p.degree();
    std::vector<Polynomial<T>> basis;
    basis.reserve(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        basis.push_back(monic_chebyshev<T>(k));
    }
    e.coeffs.assign(static_cast<std::size_t>(d) + 1, T(0));
    std::vector<T> r = p.coeffs();
    for (int k = d; k >= 0; --k) {
        const T t = r[static_cast<std::size_t>(k)];
        e.coeffs[static_cast<std::size_t>(k)] = t;
        if (t == T(0)) {
            continue;
        }
        const auto& b = basis[static_cast<std::size_t>(k)].coeffs();
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] -= t * b[i];
        }
        r[static_cast<std::size_t>(k)] = T(0);
    }
    return e;
}

template <class T>
Polynomial<T> from_chebyshev(const ChebyshevExpansion<T>& e)
{
    Polynomial<T> p;
    for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        if (e.coeffs[k] == T(0)) {
            continue;
        }
        p += scale(monic_chebyshev<T>(static_cast<int>(k)), e.coeffs[k]);
    }
    return p;
}

} // namespace opdop

#endif // OPDOP_POLYNOMIAL_HPP
