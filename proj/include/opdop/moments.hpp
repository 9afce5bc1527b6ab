#ifndef OPDOP_MOMENTS_HPP
#define OPDOP_MOMENTS_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "opdop/expr.hpp"
#include "opdop/linalg.hpp"
#include "opdop/polynomial.hpp"

namespace opdop {

/// Moments mu_0, mu_1, ... of a positive measure, known up to a common positive factor.
/// Values are produced on demand and cached; the cache is guarded, so a sequence
/// may be shared between threads.
template <class T>
class MomentSequence {
public:
    using value_type = T;

    /// Produces mu_k given mu_0 .. mu_{k-1}.
    using Generator = std::function<T(std::size_t k, const std::vector<T>& earlier)>;

    MomentSequence(std::string description, std::string scale_note, Generator gen,
                   std::optional<std::size_t> limit = std::nullopt)
        : state_(std::make_shared<State>())
    {
        state_->description = std::move(description);
        state_->scale_note = std::move(scale_note);
        state_->gen = std::move(gen);
        state_->limit = limit;
    }

    static MomentSequence from_values(std::vector<T> values, std::string description = "moments",
                                      std::string scale_note = "as given")
    {
        const std::size_t n = values.size();
        auto shared = std::make_shared<const std::vector<T>>(std::move(values));
        return MomentSequence(std::move(description), std::move(scale_note),
                              [shared](std::size_t k, const std::vector<T>&) { return (*shared)[k]; }, n);
    }

    T at(std::size_t k) const
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        fill(k + 1);
        return state_->cache[k];
    }

    /// mu_0 .. mu_{count-1}
    std::vector<T> first(std::size_t count) const
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        fill(count);
        return std::vector<T>(state_->cache.begin(), state_->cache.begin() + static_cast<std::ptrdiff_t>(count));
    }

    /// c * mu, c > 0
    MomentSequence scaled(const T& c) const
    {
        MomentSequence base = *this;
        return MomentSequence(state_->description + " (scaled)", state_->scale_note,
                              [base, c](std::size_t k, const std::vector<T>&) { return c * base.at(k); },
                              state_->limit);
    }

    const std::string& description() const { return state_->description; }
    const std::string& scale_note() const { return state_->scale_note; }
    std::optional<std::size_t> limit() const { return state_->limit; }

private:
    struct State {
        std::mutex mu;
        std::vector<T> cache;
        Generator gen;
        std::optional<std::size_t> limit;
        std::string description;
        std::string scale_note;
    };

    void fill(std::size_t count) const
    {
        if (state_->limit && count > *state_->limit) {
            throw SpecError("moment index " + std::to_string(count - 1) + " beyond the " +
                            std::to_string(*state_->limit) + " supplied values");
        }
        while (state_->cache.size() < count) {
            T v = state_->gen(state_->cache.size(), state_->cache);
            state_->cache.push_back(std::move(v));
        }
    }

    std::shared_ptr<State> state_;
};

/// Classical measures with exact rational moments (transcendental scale removed).
struct ClassicalSpec {
    enum class Kind { Hermite, Laguerre, Jacobi, Chebyshev1, Legendre };
    Kind kind{Kind::Hermite};
    Rational alpha{0};
    Rational beta{0};
    /// Interval of the uniform (Legendre) measure.
    Rational a{-1};
    Rational b{1};
};

/// hermite: mu/sqrt(pi); laguerre: mu/Gamma(alpha+1); jacobi: mu/mu_0; chebyshev1: mu/pi;
/// legendre: uniform measure on [a,b] divided by (b-a). Throws SpecError on invalid parameters.
MomentSequence<Rational> classical_moments(const ClassicalSpec& spec);

/// Weight function on [a,b] (either end may be infinite).
struct WeightSpec {
    WeightExpr w;
    double a{-1.0};
    double b{1.0};
    bool endpoint_singular{false};
    double tol{1e-12};
};

/// Moments by Boost quadrature: Gauss-Kronrod on regular finite intervals, tanh-sinh
/// with endpoint-distance evaluation when endpoint_singular is set, exp-sinh on each
/// half-line for infinite intervals. Throws QuadratureError when the error estimate
/// exceeds tol.
MomentSequence<double> weight_moments(const WeightSpec& spec);

/// Same weight at extended precision: the weight is evaluated in Extended and the
/// integral is taken by tanh-sinh / exp-sinh in Extended at the given digits.
MomentSequence<Extended> weight_moments_extended(const WeightSpec& spec, unsigned digits);

/// Moments of g(x) (1-x^2)^{-1/2} dx / pi on [-1,1] by Gauss-Chebyshev quadrature in
/// Extended. g must be analytic near [-1,1]; node counts grow with the requested index
/// so the result stays accurate to about `digits`. `decay` bounds the Chebyshev
/// coefficient decay rate of g (e.g. 1/|phi(nu)| for 1/(x - nu); 0 when g is a polynomial).
MomentSequence<Extended> chebyshev_weight_moments(std::function<Extended(const Extended&)> g, double decay,
                                                  unsigned digits, std::string description);

/// (n+1)x(n+1) Hankel matrix (mu_{i+j}).
template <class T>
Matrix<T> hankel_matrix(const MomentSequence<T>& ms, int n)
{
    const auto mu = ms.first(static_cast<std::size_t>(2 * n + 1));
    const auto sz = static_cast<std::size_t>(n + 1);
    Matrix<T> h(sz, sz);
    for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t j = 0; j < sz; ++j) {
            h(i, j) = mu[i + j];
        }
    }
    return h;
}

/// Leading pivots of the Hankel matrix without row exchanges: pivot k is Delta_k / Delta_{k-1}.
/// Throws NotPositiveDefinite when a pivot is <= 0.
template <class T>
std::vector<T> hankel_pivots(const MomentSequence<T>& ms, int n);

/// Delta_n = det (mu_{i+j})_{0<=i,j<=n}. Exact mode checks Delta_k > 0 for all k <= n.
template <class T>
T hankel_det(const MomentSequence<T>& ms, int n);

template <class T>
struct HankelMinors {
    int n{0};
    /// Delta_{n,i}, 0 <= i <= n; determinant of the n x (n+1) block (mu_{r+c}) with column i deleted.
    std::vector<T> minors;
    T delta_n{};
    /// Rough condition estimate of the block (floating modes only, 1 otherwise).
    double condition{1.0};
};

/// Delta_{0,0} is mu_0 by convention.
template <class T>
HankelMinors<T> hankel_minors(const MomentSequence<T>& ms, int n);

/// Monic P_n with integral P_n x^k dmu = 0 for k < n, from the Hankel system H c = -m.
template <class T>
Polynomial<T> monic_orthogonal(const MomentSequence<T>& ms, int n);

/// Monic P_n from the Heine determinant ratio; reference implementation for tests
/// and for the minor-based formulas.
template <class T>
Polynomial<T> heine_polynomial(const MomentSequence<T>& ms, int n);

/// integral p(x) q(x) dmu from the moments.
template <class T>
T pairing(const MomentSequence<T>& ms, const Polynomial<T>& p, const Polynomial<T>& q);

/// integral p(x) x^k dmu
template <class T>
T moment_functional(const MomentSequence<T>& ms, const Polynomial<T>& p, int shift = 0);

} // namespace opdop

#endif // OPDOP_MOMENTS_HPP
