#ifndef OPDOP_EXPR_HPP
#define OPDOP_EXPR_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <memory>
#include <string>

#include "opdop/scalar.hpp"

namespace opdop {

/// Weight expression in one variable x.
/// Grammar: + - * / ^, unary minus, parentheses, exp(), sqrt(), numeric literals, x.
class WeightExpr {
public:
    struct Node;

    static WeightExpr parse(const std::string& text);

    double operator()(double x) const;
    Extended operator()(const Extended& x) const;
    boost::multiprecision::cpp_bin_float_50 operator()(const boost::multiprecision::cpp_bin_float_50& x) const;

    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace opdop

#endif // OPDOP_EXPR_HPP
