#ifndef OPDOP_ZEROS_HPP
#define OPDOP_ZEROS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "opdop/polynomial.hpp"

namespace opdop {

struct RootOptions {
    std::uint64_t seed{0};
    int max_sweeps{200};
    /// Refine with Aberth sweeps in Extended precision after the double pass.
    bool polish{false};
    unsigned polish_digits{40};
};

struct RootSet {
    std::vector<Complex> roots;
    /// max over roots of |p(z)| / sum |a_k| |z|^k (relative backward error).
    double residual{0};
    int iterations{0};
    bool converged{true};
};

/// Aberth-Ehrlich simultaneous iteration. Exact zero roots are split off first.
/// A run that does not converge returns its last iterate with converged == false.
RootSet roots(const Polynomial<Complex>& p, const RootOptions& opt = {});
RootSet roots(const Polynomial<double>& p, const RootOptions& opt = {});
/// Exact and extended inputs are scaled in Extended before rounding to double;
/// polishing then runs against the unrounded coefficients.
RootSet roots(const Polynomial<Rational>& p, const RootOptions& opt = {});
RootSet roots(const Polynomial<Extended>& p, const RootOptions& opt = {});

/// Throws NonConvergence when the iteration did not converge.
const RootSet& require_converged(const RootSet& rs);

/// |sum roots + a_{n-1}/a_n| / max(1, sum |roots|)
double vieta_residual(const Polynomial<Complex>& p, const RootSet& rs);

/// Positive root of |a_n| x^n - sum_{k<n} |a_k| x^k.
double cauchy_bound(const Polynomial<Complex>& p);

struct ZeroBoundRow {
    int n{0};
    double max_modulus{0};
    double radius{0};
    bool pass{false};
    std::vector<Complex> roots;
};

struct IteratedIntegralResult {
    double bound{0};
    double max_modulus{0};
    bool pass{false};
    bool precondition_ok{true};
    std::vector<Complex> roots;
};

/// Chains antiderivative_from over the base points and checks that every root of the
/// result lies in |z| <= 3^{#points} r. precondition_ok is false when a root of p or a
/// base point lies outside |z| <= r.
IteratedIntegralResult iterated_integral_circle_test(const Polynomial<Complex>& p,
                                                     const std::vector<Complex>& base_points, double r,
                                                     const RootOptions& opt = {});

} // namespace opdop

#endif // OPDOP_ZEROS_HPP
