#ifndef OPDOP_OPERATOR_HPP
#define OPDOP_OPERATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "opdop/linalg.hpp"
#include "opdop/polynomial.hpp"

namespace opdop {

using RationalPoly = Polynomial<Rational>;

/// L = sum_k rho_k(x) d^k/dx^k with rational coefficient polynomials.
class ExactlySolvableOperator {
public:
    ExactlySolvableOperator() = default;
    /// Stores the coefficients as given; call validate() or checked() for the degree rules.
    explicit ExactlySolvableOperator(std::vector<RationalPoly> rho);

    /// Same, but throws SpecError when validate() reports a violation.
    static ExactlySolvableOperator checked(std::vector<RationalPoly> rho);

    int order() const { return static_cast<int>(rho_.size()) - 1; }
    const std::vector<RationalPoly>& rho() const { return rho_; }
    const RationalPoly& rho(int k) const { return rho_.at(static_cast<std::size_t>(k)); }
    /// rho_{k,j}: coefficient of x^j in rho_k; zero outside the stored range.
    Rational rho_coeff(int k, int j) const;

private:
    std::vector<RationalPoly> rho_;
};

struct Violation {
    int k;
    std::string message;
};

/// Checks deg rho_k <= k for every k and deg rho_k == k for at least one k.
std::vector<Violation> validate(const ExactlySolvableOperator& op);

/// sum_k rho_k p^{(k)}
template <class T>
Polynomial<T> apply(const ExactlySolvableOperator& op, const Polynomial<T>& p)
{
    Polynomial<T> out;
    for (int k = 0; k <= op.order(); ++k) {
        if (op.rho(k).is_zero()) {
            continue;
        }
        const Polynomial<T> dk = derivative(p, k);
        if (dk.is_zero()) {
            continue;
        }
        if constexpr (std::is_same_v<T, Rational>) {
            out += op.rho(k) * dk;
        } else {
            out += convert<T>(op.rho(k)) * dk;
        }
    }
    return out;
}

/// lambda_n = sum_k rho_{k,k} n!/(n-k)!
Rational lambda(const ExactlySolvableOperator& op, long n);

/// lambda_n as a polynomial in n.
RationalPoly lambda_polynomial(const ExactlySolvableOperator& op);

/// Nonnegative integers n with lambda_n = 0, ascending.
std::vector<long> exceptional_indexes(const ExactlySolvableOperator& op);

/// Upper triangular A_{n+1}, stored column by column over the triangle.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(int n, std::vector<Rational> packed) : n_(n), packed_(std::move(packed)) {}

    int n() const { return n_; }
    int size() const { return n_ + 1; }
    /// a_{i,j} with 1-based indexes; zero below the diagonal.
    Rational at(int i, int j) const;
    Matrix<Rational> dense() const;

private:
    int n_{0};
    std::vector<Rational> packed_;
};

OperatorMatrix build_matrix(const ExactlySolvableOperator& op, int n);

struct Stage {
    int m{0};
    int n{0};
    RationalPoly rho;
};

/// L = L_J o ... o L_1 with L_j[f] = (rho_{m_j} f)^{(n_j)}.
class FactorizedOperator {
public:
    /// Throws SpecError unless sum m_j == sum n_j, deg rho_{m_j} == m_j and all roots are real.
    explicit FactorizedOperator(std::vector<Stage> stages);

    const std::vector<Stage>& stages() const { return stages_; }
    int order() const { return order_; }

private:
    std::vector<Stage> stages_;
    int order_{0};
};

/// Stage by stage application.
RationalPoly apply_stagewise(const FactorizedOperator& fop, const RationalPoly& p);

/// The exactly solvable operator agreeing with the stages; throws ExpansionMismatch
/// if no such operator reproduces the stages on monomials up to degree 2M.
ExactlySolvableOperator expand_factorized(const FactorizedOperator& fop);

struct FactorizedConditions {
    bool exact_ok{false};
    bool unique_ok{false};
    /// 1-based stage index of the last negative partial sum.
    std::optional<int> j0;
    std::optional<int> n_prime;
};

FactorizedConditions factorized_conditions(const FactorizedOperator& fop);

struct HullBound {
    double c_min{0};
    double c_max{0};
    double d{1};
    double radius{1};
};

/// Convex hull of the zeros of prod rho_{m_j} together with extra_roots, d and R = 3^M d.
HullBound hull_and_bound(const FactorizedOperator& fop, const std::vector<double>& extra_roots = {});

/// True when every root of p is real (|Im| < 1e-9 (1 + |Re|)); roots are returned sorted.
bool has_only_real_roots(const RationalPoly& p, std::vector<double>* roots = nullptr);

} // namespace opdop

#endif // OPDOP_OPERATOR_HPP
