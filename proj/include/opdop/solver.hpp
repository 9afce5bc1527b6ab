#ifndef OPDOP_SOLVER_HPP
#define OPDOP_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "opdop/moments.hpp"
#include "opdop/operator.hpp"

namespace opdop {

/// Relative threshold for rank, consistency and zero tests in floating modes.
inline constexpr double kFloatTolerance = 1e-8;

/// Monic degree-n solutions of L[y] = lambda_n P_n, plus the kernel of L on polynomials of degree <= n.
template <class T>
struct SolutionSet {
    int n{0};
    /// None when L[y] = lambda_n P_n has no monic degree-n solution (always none when lambda_n = 0).
    std::optional<Polynomial<T>> particular;
    /// Monic, strictly increasing degrees.
    std::vector<Polynomial<T>> kernel_basis;
    Rational lambda_n{0};
    Polynomial<T> p_n;
};

template <class T>
SolutionSet<T> solve_index(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n);

/// max_j |integral L[q] x^j dmu| / sum of absolute terms, j < n; 0 in exact mode means exact orthogonality.
template <class T>
double orthogonality_residual(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, const Polynomial<T>& q,
                              int n);

enum class Verdict { Normal, NotNormal, Indeterminate };

std::string to_string(Verdict v);

template <class T>
struct NormalityReport {
    int n{0};
    Verdict verdict{Verdict::Normal};
    /// "i" when lambda_k != 0 for all k <= n, "ii" otherwise.
    std::string branch{"i"};
    /// Indexes k <= n with lambda_k == 0, ascending.
    std::vector<int> drop_indexes;
    bool rank_condition_ok{true};
    /// Unset when the largest drop index equals n.
    std::optional<bool> moment_condition_ok;
    std::vector<T> gamma;
    /// beta_{n_k} + sum gamma_i beta_{n_k+i}, with beta the coefficients of P_n.
    std::optional<T> moment_value;
};

template <class T>
NormalityReport<T> normality_report(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n);

/// The member of the solution set vanishing on `points` (a repeated point also pins
/// derivatives). The point count must equal the kernel dimension. When lambda_n = 0 the
/// monic degree-n kernel element, if any, plays the role of the particular solution.
template <class T>
Polynomial<T> unique_with_constraints(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n,
                                      const std::vector<T>& points);

/// One term c(n) * Delta_{nj,i} * mu_{n+v}.
struct SystemTerm {
    int v{0};
    int i{0};
    RationalPoly coeff;
};

struct DifferenceEquation {
    long nj{0};
    /// Triple-sum coefficients, signs (-1)^{i+nj} included.
    std::vector<SystemTerm> raw;
    /// raw = common_factor * terms, with the top offset of `terms` carrying a positive coefficient.
    std::vector<SystemTerm> terms;
    RationalPoly common_factor;
    /// The general form holds for n >= n_start; smaller n appear as concrete instances.
    long n_start{0};
};

struct DifferenceSystem {
    int order{0};
    std::vector<long> S;
    std::vector<DifferenceEquation> equations;
};

DifferenceSystem generate_systQ(const ExactlySolvableOperator& op);

/// Raw equation value at a concrete n. abs_sum receives the sum of absolute term values.
template <class T>
T evaluate_equation(const DifferenceEquation& eq, const MomentSequence<T>& ms, long n, double* abs_sum = nullptr);

template <class T>
struct MembershipResult {
    bool pass{true};
    std::optional<long> nj;
    std::optional<long> n;
    T value{};
};

/// Checks every equation for 0 <= n <= N, n not in S. Exact mode tests == 0, floating
/// modes |value| <= 1e-8 * sum |terms|.
template <class T>
MembershipResult<T> check_membership(const DifferenceSystem& ds, const MomentSequence<T>& ms, long N);

/// Human-readable form, one line per equation, e.g. "2*mu[n] - (n-1)*mu[n-2] = 0 for n >= 2; mu[1] = 0".
std::string render(const DifferenceSystem& ds);
std::string render(const DifferenceEquation& eq);

template <class T>
struct ExistenceResult {
    /// Largest n <= Nmax with a nonzero value; unset when the value at Nmax is nonzero.
    std::optional<int> threshold;
    std::vector<T> values;
    std::vector<bool> nonzero;
};

/// integral P_n dmu* for n <= Nmax, P_n orthogonal for ms and mu* the classical measure.
template <class T>
ExistenceResult<T> classical_existence(const ClassicalSpec& classical, const MomentSequence<T>& ms, int Nmax);

template <class T>
struct BilinearFormReport {
    bool symmetric{true};
    bool positive_definite{true};
    /// First asymmetric (i,j), or (k,k) for the first non-positive leading minor.
    std::optional<std::pair<int, int>> witness;
    Matrix<T> gram;
};

/// G_ij = integral L[x^i] x^j dmu for 0 <= i,j <= N.
template <class T>
BilinearFormReport<T> bilinear_form_check(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int N);

} // namespace opdop

#endif // OPDOP_SOLVER_HPP
