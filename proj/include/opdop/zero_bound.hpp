#ifndef OPDOP_ZERO_BOUND_HPP
#define OPDOP_ZERO_BOUND_HPP

#include <functional>
#include <vector>

#include "opdop/solver.hpp"
#include "opdop/zeros.hpp"

namespace opdop {

/// Interpolation points for index n; an empty result means "none".
template <class T>
using ConstraintSource = std::function<std::vector<T>(int n)>;

template <class T>
struct ZeroBoundReport {
    HullBound hull;
    std::vector<ZeroBoundRow> rows;
    bool pass{true};
};

/// Builds Q_n for n in [n_lo, n_hi] and compares the largest root modulus with R = 3^M d.
/// Constraint points (all n of the range) join the zeros of prod rho_{m_j} in the hull.
/// The measure must live on [-1,1]; moments with mu_{2k} > mu_0 are rejected with SpecError.
/// An index with a nontrivial kernel and no constraint points raises MathError.
template <class T>
ZeroBoundReport<T> zero_bound_check(const FactorizedOperator& fop, const MomentSequence<T>& ms, int n_lo, int n_hi,
                                    const ConstraintSource<T>& constraints = {}, const RootOptions& opt = {});

/// Q_n as used by zero_bound_check.
template <class T>
Polynomial<T> constrained_or_unique(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n,
                                    const std::vector<T>& points);

} // namespace opdop

#endif // OPDOP_ZERO_BOUND_HPP
