#include "opdop/zero_bound.hpp"

#include <algorithm>
#include <cmath>

#include "opdop/errors.hpp"

namespace opdop {

template <class T>
Polynomial<T> constrained_or_unique(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n,
                                    const std::vector<T>& points)
{
    if (!points.empty()) {
        return unique_with_constraints(op, ms, n, points);
    }
    const auto s = solve_index(op, ms, n);
    if (!s.kernel_basis.empty()) {
        throw MathError("index " + std::to_string(n) + " is not normal and no constraint points were given");
    }
    if (!s.particular) {
        throw MathError("index " + std::to_string(n) + " has no monic solution of degree n");
    }
    return *s.particular;
}

template <class T>
ZeroBoundReport<T> zero_bound_check(const FactorizedOperator& fop, const MomentSequence<T>& ms, int n_lo, int n_hi,
                                    const ConstraintSource<T>& constraints, const RootOptions& opt)
{
    if (n_lo > n_hi || n_lo < 0) {
        throw SpecError("empty index range");
    }
    using std::abs;
    const T mu0 = ms.at(0);
    for (int k = 1; k <= n_hi; ++k) {
        const T even = ms.at(static_cast<std::size_t>(2 * k));
        if (abs(even) > mu0 * T(1 + 1e-12)) {
            throw SpecError("moments are not those of a measure on [-1,1]");
        }
    }

    std::vector<std::vector<T>> points(static_cast<std::size_t>(n_hi - n_lo + 1));
    std::vector<double> extra;
    for (int n = n_lo; n <= n_hi; ++n) {
        if (constraints) {
            auto& pts = points[static_cast<std::size_t>(n - n_lo)];
            pts = constraints(n);
            for (const auto& p : pts) {
                extra.push_back(scalar_cast<double>(p));
            }
        }
    }

    const auto op = expand_factorized(fop);
    ZeroBoundReport<T> report;
    report.hull = hull_and_bound(fop, extra);
    for (int n = n_lo; n <= n_hi; ++n) {
        ZeroBoundRow row;
        row.n = n;
        row.radius = report.hull.radius;
        const auto qn = constrained_or_unique(op, ms, n, points[static_cast<std::size_t>(n - n_lo)]);
        if (qn.degree() >= 1) {
            row.roots = require_converged(roots(qn, opt)).roots;
        }
        for (const auto& z : row.roots) {
            row.max_modulus = std::max(row.max_modulus, std::abs(z));
        }
        row.pass = row.max_modulus <= row.radius + 1e-8;
        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

#define OPDOP_INSTANTIATE_ZERO_BOUND(T)                                                                           \
    template Polynomial<T> constrained_or_unique(const ExactlySolvableOperator&, const MomentSequence<T>&, int,     \
                                                 const std::vector<T>&);                                             \
    template ZeroBoundReport<T> zero_bound_check(const FactorizedOperator&, const MomentSequence<T>&, int, int,       \
                                                 const ConstraintSource<T>&, const RootOptions&);

OPDOP_INSTANTIATE_ZERO_BOUND(Rational)
OPDOP_INSTANTIATE_ZERO_BOUND(double)
OPDOP_INSTANTIATE_ZERO_BOUND(Extended)

} // namespace opdop
