#ifndef OPDOP_JSON_IO_HPP
#define OPDOP_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opdop/polar.hpp"
#include "opdop/solver.hpp"
#include "opdop/zero_bound.hpp"

namespace opdop {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "opdop/1";

/// Inline JSON when the text starts with '{' or '[', a file path otherwise. SpecError on failure.
Json load_json(const std::string& path_or_inline);

/// Rational: "p/q" string; double: number; Extended: decimal string with guard digits; Complex: [re, im].
template <class T>
Json scalar_to_json(const T& x);
template <class T>
T scalar_from_json(const Json& j);

template <>
Json scalar_to_json(const Rational& x);
template <>
Json scalar_to_json(const double& x);
template <>
Json scalar_to_json(const Extended& x);
template <>
Json scalar_to_json(const Complex& x);
template <>
Rational scalar_from_json(const Json& j);
template <>
double scalar_from_json(const Json& j);
template <>
Extended scalar_from_json(const Json& j);
template <>
Complex scalar_from_json(const Json& j);

/// Ascending coefficients.
template <class T>
Json to_json(const Polynomial<T>& p);
template <class T>
Polynomial<T> polynomial_from_json(const Json& j);

/// {"rho": [[...], ...]} with rho_k ascending, or {"stages": [{"m","n","rho"}]}.
Json to_json(const ExactlySolvableOperator& op);
Json to_json(const FactorizedOperator& fop);
ExactlySolvableOperator operator_from_json(const Json& j);
/// Set only when the document describes stages.
std::optional<FactorizedOperator> factorized_from_json(const Json& j);

/// Measure description as read from --measure.
struct MeasureSpec {
    /// hermite | laguerre | jacobi | chebyshev1 | legendre | moments | weight | bernstein-szego
    std::string type{"chebyshev1"};
    ClassicalSpec classical;
    std::vector<Rational> values;
    std::string weight;
    double a{-1.0};
    double b{1.0};
    bool endpoint_singular{false};
    Rational r{1};
    std::vector<Rational> nu;

    /// Exact rational moments are available (classical or explicit values).
    bool rational() const;
    BernsteinSzegoMeasure bernstein_szego() const;
};

Json to_json(const MeasureSpec& m);
MeasureSpec measure_from_json(const Json& j);

/// SpecError when the measure has no rational moments.
MomentSequence<Rational> exact_moments(const MeasureSpec& m);
MomentSequence<double> double_moments(const MeasureSpec& m, double tol);
MomentSequence<Extended> extended_moments(const MeasureSpec& m, unsigned digits, double tol);

template <class T>
Json to_json(const SolutionSet<T>& s);
template <class T>
SolutionSet<T> solution_set_from_json(const Json& j);

template <class T>
Json to_json(const NormalityReport<T>& r);
template <class T>
NormalityReport<T> normality_report_from_json(const Json& j);

Json to_json(const DifferenceSystem& ds);
DifferenceSystem difference_system_from_json(const Json& j);

template <class T>
Json to_json(const MembershipResult<T>& m);
template <class T>
MembershipResult<T> membership_from_json(const Json& j);

Json to_json(const ZeroBoundRow& row);
ZeroBoundRow zero_bound_row_from_json(const Json& j);

Verdict verdict_from_string(const std::string& s);

} // namespace opdop

#endif // OPDOP_JSON_IO_HPP
