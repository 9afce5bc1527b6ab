#ifndef OPDOP_QUADSURD_HPP
#define OPDOP_QUADSURD_HPP

#include <string>

#include "opdop/scalar.hpp"

namespace opdop {

/// Exact element a + b*sqrt(d) of a real quadratic field, d a positive non-square integer.
/// d = 0 marks a plain rational that adopts the field of whatever it meets.
class QuadSurd {
public:
    QuadSurd() = default;
    QuadSurd(int a) : a_(a) {}
    QuadSurd(long a) : a_(a) {}
    QuadSurd(const Rational& a) : a_(a) {}
    QuadSurd(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(b == 0 ? 0 : d)
    {
        if (d_ != 0 && d_ < 2) {
            throw SpecError("quadratic field needs a radicand >= 2");
        }
    }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    long radicand() const { return d_; }

    double to_double() const;
    Extended to_extended() const;

    QuadSurd& operator+=(const QuadSurd& o)
    {
        d_ = join(o);
        a_ += o.a_;
        b_ += o.b_;
        normalize();
        return *this;
    }
    QuadSurd& operator-=(const QuadSurd& o)
    {
        d_ = join(o);
        a_ -= o.a_;
        b_ -= o.b_;
        normalize();
        return *this;
    }
    QuadSurd& operator*=(const QuadSurd& o)
    {
        const long d = join(o);
        const Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
        const Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = a;
        b_ = b;
        d_ = d;
        normalize();
        return *this;
    }
    QuadSurd& operator/=(const QuadSurd& o)
    {
        const long d = join(o);
        const Rational norm = o.a_ * o.a_ - Rational(d) * o.b_ * o.b_;
        if (norm == 0) {
            throw MathError("division by zero in quadratic field");
        }
        const Rational a = (a_ * o.a_ - Rational(d) * b_ * o.b_) / norm;
        const Rational b = (b_ * o.a_ - a_ * o.b_) / norm;
        a_ = a;
        b_ = b;
        d_ = d;
        normalize();
        return *this;
    }

    friend QuadSurd operator+(QuadSurd x, const QuadSurd& y) { return x += y; }
    friend QuadSurd operator-(QuadSurd x, const QuadSurd& y) { return x -= y; }
    friend QuadSurd operator*(QuadSurd x, const QuadSurd& y) { return x *= y; }
    friend QuadSurd operator/(QuadSurd x, const QuadSurd& y) { return x /= y; }
    friend QuadSurd operator-(QuadSurd x)
    {
        x.a_ = -x.a_;
        x.b_ = -x.b_;
        return x;
    }
    friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }

    std::string str() const;

private:
    long join(const QuadSurd& o) const
    {
        if (d_ != 0 && o.d_ != 0 && d_ != o.d_) {
            throw MathError("mixing different quadratic fields");
        }
        return d_ != 0 ? d_ : o.d_;
    }
    void normalize()
    {
        if (b_ == 0) {
            d_ = 0;
        }
    }

    Rational a_{0};
    Rational b_{0};
    long d_{0};
};

template <>
struct ScalarTraits<QuadSurd> {
    static constexpr bool exact = true;
    static constexpr bool complex = false;
    static double magnitude(const QuadSurd& x) { return std::abs(x.to_double()); }
};

template <>
inline double scalar_cast<double, QuadSurd>(const QuadSurd& x)
{
    return x.to_double();
}

template <>
inline Extended scalar_cast<Extended, QuadSurd>(const QuadSurd& x)
{
    return x.to_extended();
}

template <>
inline QuadSurd scalar_cast<QuadSurd, Rational>(const Rational& x)
{
    return QuadSurd(x);
}

} // namespace opdop

#endif // OPDOP_QUADSURD_HPP
