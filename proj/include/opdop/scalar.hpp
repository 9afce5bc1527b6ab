#ifndef OPDOP_SCALAR_HPP
#define OPDOP_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "opdop/errors.hpp"

namespace opdop {

namespace bmp = boost::multiprecision;

/// Arbitrary precision rational, always canonical (lowest terms, positive denominator).
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
/// Extended precision real; precision is a runtime setting (see PrecisionGuard).
using Extended = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using Complex = std::complex<double>;

/// Default working precision of Extended values, in decimal digits.
inline constexpr unsigned kDefaultExtendedDigits = 40;

/// Sets the default Extended precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(Extended::default_precision())
    {
        Extended::default_precision(digits);
    }
    ~PrecisionGuard() { Extended::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

/// Parses "p", "p/q", or "-p/q" into a canonical Rational. Throws SpecError.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);
/// Decimal literal parse into double / Extended.
double parse_double(const std::string& text);
std::string format_double(double x);
std::string format_extended(const Extended& x, int digits = 0);

/// Compile-time description of what a scalar type can do.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool complex = false;
    static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr bool complex = false;
    static double magnitude(double x) { return std::abs(x); }
};

template <>
struct ScalarTraits<Extended> {
    static constexpr bool exact = false;
    static constexpr bool complex = false;
    static double magnitude(const Extended& x) { return std::abs(x.convert_to<double>()); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr bool complex = true;
    static double magnitude(const Complex& x) { return std::abs(x); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// |x| in the scalar's own type (real types) or as double (complex).
template <class T>
auto abs_value(const T& x)
{
    if constexpr (std::is_same_v<T, Complex>) {
        return std::abs(x);
    } else {
        using std::abs;
        using boost::multiprecision::abs;
        return abs(x);
    }
}

/// Exact test for exact scalars; x == 0 literally for floats (callers apply tolerances).
template <class T>
bool is_zero(const T& x)
{
    return x == T(0);
}

/// Explicit conversion between scalar modes. Only the listed directions exist.
template <class To, class From>
To scalar_cast(const From& x)
{
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<From, Rational> && std::is_same_v<To, double>) {
        return x.template convert_to<double>();
    } else if constexpr (std::is_same_v<From, Rational> && std::is_same_v<To, Extended>) {
        return Extended(x);
    } else if constexpr (std::is_same_v<From, Rational> && std::is_same_v<To, Complex>) {
        return Complex(x.template convert_to<double>(), 0.0);
    } else if constexpr (std::is_same_v<From, Extended> && std::is_same_v<To, double>) {
        return x.template convert_to<double>();
    } else if constexpr (std::is_same_v<From, Extended> && std::is_same_v<To, Complex>) {
        return Complex(x.template convert_to<double>(), 0.0);
    } else if constexpr (std::is_same_v<From, double> && std::is_same_v<To, Complex>) {
        return Complex(x, 0.0);
    } else if constexpr (std::is_same_v<From, double> && std::is_same_v<To, Extended>) {
        return Extended(x);
    } else {
        static_assert(sizeof(To) == 0, "unsupported scalar conversion");
    }
}

/// Falling factorial n!/(n-k)!, zero when k > n.
Rational falling_factorial(long n, long k);

} // namespace opdop

#endif // OPDOP_SCALAR_HPP
