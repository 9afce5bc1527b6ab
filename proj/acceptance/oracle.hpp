#ifndef OPDOP_ACCEPTANCE_ORACLE_HPP
#define OPDOP_ACCEPTANCE_ORACLE_HPP

#include <algorithm>
#include <cmath>

#include "opdop/solver.hpp"

namespace opdop::oracle {

/// Independent normality decision: the conditions integral L[Q] x^k dmu = 0 (k < n) on the
/// n+1 coefficients of Q form an n x (n+1) system G; the index is normal exactly when its
/// solution space is one-dimensional.
template <class T>
Verdict normality(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n)
{
    if (n == 0) {
        return Verdict::Normal;
    }
    const auto mu = ms.first(static_cast<std::size_t>(2 * n));
    using std::abs;
    Matrix<T> g(static_cast<std::size_t>(n), static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const auto img = apply(op, RationalPoly::monomial(j));
        for (int k = 0; k < n; ++k) {
            T s(0);
            T mass(0);
            for (int i = 0; i <= img.degree(); ++i) {
                if (img.coeff(i) != 0) {
                    const T term = scalar_cast<T>(img.coeff(i)) * mu[static_cast<std::size_t>(i + k)];
                    s += term;
                    mass += abs(term);
                }
            }
            if constexpr (!is_exact_v<T>) {
                if (abs(s) <= T(kFloatTolerance) * mass) {
                    s = T(0);
                }
            }
            g(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = s;
        }
    }
    std::size_t rank = 0;
    if constexpr (is_exact_v<T>) {
        rank = exact_rank(g);
    } else {
        // Entries span many magnitudes; diagonal scaling keeps the rank and makes the
        // singular-value threshold meaningful.
        for (int sweep = 0; sweep < 4; ++sweep) {
            for (std::size_t r = 0; r < g.rows(); ++r) {
                T m(0);
                for (std::size_t c = 0; c < g.cols(); ++c) {
                    m = std::max<T>(m, abs(g(r, c)));
                }
                for (std::size_t c = 0; m != T(0) && c < g.cols(); ++c) {
                    g(r, c) /= m;
                }
            }
            for (std::size_t c = 0; c < g.cols(); ++c) {
                T m(0);
                for (std::size_t r = 0; r < g.rows(); ++r) {
                    m = std::max<T>(m, abs(g(r, c)));
                }
                for (std::size_t r = 0; m != T(0) && r < g.rows(); ++r) {
                    g(r, c) /= m;
                }
            }
        }
        rank = numeric_rank(g, kFloatTolerance);
    }
    return static_cast<std::size_t>(n) + 1 - rank == 1 ? Verdict::Normal : Verdict::NotNormal;
}

} // namespace opdop::oracle

#endif // OPDOP_ACCEPTANCE_ORACLE_HPP
