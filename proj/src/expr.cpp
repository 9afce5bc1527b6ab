#include "opdop/expr.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <vector>

namespace opdop {

struct WeightExpr::Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Sqrt };
    Kind kind;
    Rational value;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    template <class T>
    T eval(const T& x) const
    {
        using std::exp;
        using std::pow;
        using std::sqrt;
        switch (kind) {
        case Kind::Number:
            if constexpr (std::is_same_v<T, double>) {
                return value.convert_to<double>();
            } else {
                return T(numerator(value).str()) / T(denominator(value).str());
            }
        case Kind::Var:
            return x;
        case Kind::Neg:
            return -lhs->eval(x);
        case Kind::Add:
            return lhs->eval(x) + rhs->eval(x);
        case Kind::Sub:
            return lhs->eval(x) - rhs->eval(x);
        case Kind::Mul:
            return lhs->eval(x) * rhs->eval(x);
        case Kind::Div:
            return lhs->eval(x) / rhs->eval(x);
        case Kind::Exp:
            return exp(lhs->eval(x));
        case Kind::Sqrt:
            return sqrt(lhs->eval(x));
        case Kind::Pow: {
            const T base = lhs->eval(x);
            // Integer exponents are expanded so negative bases work.
            if (rhs->kind == Kind::Number && denominator(rhs->value) == 1) {
                long e = numerator(rhs->value).convert_to<long>();
                const bool invert = e < 0;
                e = invert ? -e : e;
                T acc(1);
                T b = base;
                while (e > 0) {
                    if (e & 1) {
                        acc *= b;
                    }
                    b *= b;
                    e >>= 1;
                }
                return invert ? T(1) / acc : acc;
            }
            return pow(base, rhs->eval(x));
        }
        }
        return T(0);
    }
};

namespace {

using Node = WeightExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr)
{
    return std::make_shared<const Node>(Node{k, Rational(0), std::move(a), std::move(b)});
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse()
    {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw SpecError("weight expression: " + msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Node::Kind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = make(Node::Kind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Node::Kind::Mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make(Node::Kind::Div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-')) {
            return make(Node::Kind::Neg, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^')) {
            NodePtr e = unary();
            // Fold constant exponents such as -1/2 into a single literal.
            if (auto folded = fold(e)) {
                e = folded;
            }
            return make(Node::Kind::Pow, base, e);
        }
        return base;
    }

    static NodePtr fold(const NodePtr& n)
    {
        std::optional<Rational> v = constant_value(n);
        if (!v) {
            return nullptr;
        }
        return std::make_shared<const Node>(Node{Node::Kind::Number, *v, nullptr, nullptr});
    }

    static std::optional<Rational> constant_value(const NodePtr& n)
    {
        switch (n->kind) {
        case Node::Kind::Number:
            return n->value;
        case Node::Kind::Neg: {
            auto a = constant_value(n->lhs);
            return a ? std::optional<Rational>(-*a) : std::nullopt;
        }
        case Node::Kind::Add:
        case Node::Kind::Sub:
        case Node::Kind::Mul:
        case Node::Kind::Div: {
            auto a = constant_value(n->lhs);
            auto b = constant_value(n->rhs);
            if (!a || !b) {
                return std::nullopt;
            }
            if (n->kind == Node::Kind::Add) {
                return *a + *b;
            }
            if (n->kind == Node::Kind::Sub) {
                return *a - *b;
            }
            if (n->kind == Node::Kind::Mul) {
                return *a * *b;
            }
            if (*b == 0) {
                return std::nullopt;
            }
            return *a / *b;
        }
        default:
            return std::nullopt;
        }
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") {
                return make(Node::Kind::Var);
            }
            Node::Kind k;
            if (name == "exp") {
                k = Node::Kind::Exp;
            } else if (name == "sqrt") {
                k = Node::Kind::Sqrt;
            } else {
                pos_ = start;
                fail("unknown identifier '" + name + "'");
            }
            if (!accept('(')) {
                fail("expected '(' after " + name);
            }
            NodePtr arg = expr();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return make(k, arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    ++pos_;
                }
            } else {
                pos_ = save;
            }
        }
        const Rational v = parse_rational(s_.substr(start, pos_ - start));
        return std::make_shared<const Node>(Node{Node::Kind::Number, v, nullptr, nullptr});
    }

    const std::string& s_;
    std::size_t pos_{0};
};

} // namespace

WeightExpr WeightExpr::parse(const std::string& text)
{
    WeightExpr w;
    w.text_ = text;
    Parser p(w.text_);
    w.root_ = p.parse();
    return w;
}

double WeightExpr::operator()(double x) const
{
    return root_->eval(x);
}

Extended WeightExpr::operator()(const Extended& x) const
{
    return root_->eval(x);
}

boost::multiprecision::cpp_bin_float_50 WeightExpr::operator()(const boost::multiprecision::cpp_bin_float_50& x) const
{
    return root_->eval(x);
}

} // namespace opdop
