#include "opdop/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace opdop {

namespace {

bool is_integer_literal(const std::string& s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

std::string strip(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

Integer parse_integer(const std::string& s)
{
    // GMP reads a leading 0 as an octal prefix.
    const bool neg = s[0] == '-';
    std::string body = (s[0] == '+' || neg) ? s.substr(1) : s;
    const auto nz = body.find_first_not_of('0');
    body = nz == std::string::npos ? "0" : body.substr(nz);
    return neg ? Integer(-Integer(body)) : Integer(body);
}

} // namespace

Rational parse_rational(const std::string& raw)
{
    const std::string text = strip(raw);
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (is_integer_literal(text)) {
            return Rational(parse_integer(text));
        }
        // Decimal literals such as "0.25" or "-1.5e-3" are read exactly.
        const auto epos = text.find_first_of("eE");
        const std::string mant = text.substr(0, epos);
        long exponent = 0;
        if (epos != std::string::npos) {
            const std::string ex = text.substr(epos + 1);
            if (!is_integer_literal(ex)) {
                throw SpecError("invalid rational literal: '" + raw + "'");
            }
            exponent = std::stol(ex);
        }
        const auto dot = mant.find('.');
        if (dot == std::string::npos) {
            if (!is_integer_literal(mant)) {
                throw SpecError("invalid rational literal: '" + raw + "'");
            }
        }
        std::string digits = mant;
        long frac = 0;
        if (dot != std::string::npos) {
            frac = static_cast<long>(mant.size() - dot - 1);
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            if (digits == "-" || digits == "+" || digits.empty()) {
                throw SpecError("invalid rational literal: '" + raw + "'");
            }
            if (!is_integer_literal(digits)) {
                throw SpecError("invalid rational literal: '" + raw + "'");
            }
        }
        Rational value(parse_integer(digits));
        const long shift = exponent - frac;
        Integer ten_pow = pow(Integer(10), static_cast<unsigned>(std::labs(shift)));
        return shift >= 0 ? value * Rational(ten_pow) : value / Rational(ten_pow);
    }
    const std::string num = strip(text.substr(0, slash));
    const std::string den = strip(text.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
        throw SpecError("invalid rational literal: '" + raw + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) {
        throw SpecError("zero denominator in '" + raw + "'");
    }
    // Division canonicalizes; constructing from "p/q" text would not.
    return Rational(parse_integer(num)) / Rational(d);
}

std::string format_rational(const Rational& q)
{
    if (denominator(q) == 1) {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + denominator(q).str();
}

double parse_double(const std::string& raw)
{
    const std::string text = strip(raw);
    if (text == "inf" || text == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    if (text.find('/') != std::string::npos) {
        return parse_rational(text).convert_to<double>();
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw SpecError("invalid number: '" + raw + "'");
    }
    if (used != text.size()) {
        throw SpecError("invalid number: '" + raw + "'");
    }
    return value;
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_extended(const Extended& x, int digits)
{
    std::ostringstream os;
    os.precision(digits > 0 ? digits : static_cast<int>(x.precision()));
    os << x;
    return os.str();
}

Rational falling_factorial(long n, long k)
{
    if (k < 0 || (n >= 0 && k > n)) {
        return Rational(0);
    }
    Integer acc = 1;
    for (long i = 0; i < k; ++i) {
        acc *= (n - i);
    }
    return Rational(acc);
}

} // namespace opdop
