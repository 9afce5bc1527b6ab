#include "doctest.h"

#include <cmath>

#include "opdop/linalg.hpp"
#include "opdop/polynomial.hpp"
#include "opdop/quadsurd.hpp"

using namespace opdop;

namespace {

using RP = Polynomial<Rational>;

Rational q(const char* s) { return parse_rational(s); }

} // namespace

TEST_CASE("rational parsing is canonical and exact")
{
    CHECK(parse_rational("-6/4") == Rational(-3) / 2);
    CHECK(parse_rational("0.125") == Rational(1) / 8);
    CHECK(parse_rational("1e-3") == Rational(1) / 1000);
    CHECK(parse_rational("2.5e2") == Rational(250));
    CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), SpecError);
    CHECK_THROWS_AS(parse_rational("abc"), SpecError);
    CHECK(parse_double("1/4") == 0.25);
}

TEST_CASE("falling factorial")
{
    CHECK(falling_factorial(5, 0) == 1);
    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(3, 4) == 0);
    CHECK(falling_factorial(-1, 2) == 2);
}

TEST_CASE("polynomial arithmetic and trimming")
{
    const RP p{q("1"), q("-3"), q("2")}; // 2x^2 - 3x + 1
    const RP r{q("-1"), q("1")};         // x - 1
    CHECK(p.degree() == 2);
    CHECK(RP{}.degree() == kMinusInfinity);
    CHECK(RP{q("0"), q("0")}.is_zero());
    CHECK(p - p == RP{});
    CHECK(r * r == RP{q("1"), q("-2"), q("1")});
    CHECK(div_exact(p, r) == RP{q("-1"), q("2")});
    CHECK_THROWS_AS(div_exact(p, RP{q("1"), q("1")}), NonDivisible);
    CHECK(evaluate(p, q("1/2")) == 0);
    CHECK(derivative(p) == RP{q("-3"), q("4")});
    CHECK(derivative(p, 3).is_zero());
}

TEST_CASE("antiderivative anchored at a point")
{
    const RP p{q("0"), q("3")}; // 3x
    const RP f = antiderivative_from(p, q("2"));
    CHECK(f == RP{q("-6"), q("0"), q("3/2")});
    CHECK(evaluate(f, q("2")) == 0);
}

TEST_CASE("gcd and square-free part")
{
    // (x-1)^2 (x+2)
    const RP a = RP::linear_factor(q("1")) * RP::linear_factor(q("1")) * RP::linear_factor(q("-2"));
    CHECK(gcd(a, derivative(a)) == RP::linear_factor(q("1")));
    CHECK(square_free_part(a) == RP::linear_factor(q("1")) * RP::linear_factor(q("-2")));
}

TEST_CASE("monic Chebyshev polynomials match 2^{1-n} cos(n acos x)")
{
    for (int n = 0; n <= 9; ++n) {
        const auto t = monic_chebyshev<double>(n);
        CHECK(t.degree() == n);
        CHECK(t.leading() == doctest::Approx(1.0));
        const double s = n == 0 ? 1.0 : std::ldexp(1.0, 1 - n);
        for (double x : {-0.9, -0.3, 0.0, 0.4, 0.77}) {
            CHECK(evaluate(t, x) == doctest::Approx(s * std::cos(n * std::acos(x))).epsilon(1e-12));
        }
    }
    // x^3 - 3/4 x
    CHECK(monic_chebyshev<Rational>(3) == RP{q("0"), q("-3/4"), q("0"), q("1")});
}

TEST_CASE("Chebyshev expansion round trip")
{
    const RP p{q("5"), q("-1/3"), q("2"), q("0"), q("7/2")};
    const auto e = to_chebyshev(p);
    CHECK(e.coeffs.size() == 5);
    CHECK(e.coeffs[4] == q("7/2"));
    CHECK(from_chebyshev(e) == p);
    // x^2 = T^2 + 1/2
    const auto e2 = to_chebyshev(RP::monomial(2));
    CHECK(e2.coeffs == std::vector<Rational>{q("1/2"), q("0"), q("1")});
}

TEST_CASE("quadratic surds")
{
    const QuadSurd s3(Rational(0), Rational(1), 3);
    const QuadSurd x = QuadSurd(Rational(2)) + s3;
    const QuadSurd y = QuadSurd(Rational(2)) - s3;
    CHECK((x * y) == QuadSurd(Rational(1)));
    CHECK((QuadSurd(Rational(1)) / x) == y);
    CHECK(x.to_double() == doctest::Approx(2.0 + std::sqrt(3.0)));
    CHECK_THROWS_AS(s3 + QuadSurd(Rational(0), Rational(1), 2), MathError);
}

TEST_CASE("exact linear algebra")
{
    Matrix<Rational> m(3, 3);
    const int v[3][3] = {{2, 1, 1}, {4, 3, 3}, {8, 7, 9}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            m(i, j) = v[i][j];
        }
    }
    CHECK(determinant(m) == 4);
    const auto x = solve_linear(m, {Rational(4), Rational(10), Rational(24)});
    CHECK(x == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

    Matrix<Rational> s(2, 3);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(0, 2) = 3;
    s(1, 0) = 2;
    s(1, 1) = 4;
    s(1, 2) = 6;
    CHECK(exact_rank(s) == 1);
    const auto ns = null_space(s);
    REQUIRE(ns.size() == 2);
    for (const auto& b : ns) {
        CHECK(s.multiply(b) == std::vector<Rational>{Rational(0), Rational(0)});
    }
    const auto rr = rref(s);
    CHECK(rr.transform * s == rr.reduced);
}

TEST_CASE("singular values of a known matrix")
{
    // diag(3, 2) rotated: singular values 3 and 2.
    Matrix<double> m(2, 2);
    const double c = std::cos(0.3);
    const double s = std::sin(0.3);
    m(0, 0) = 3 * c;
    m(0, 1) = -2 * s;
    m(1, 0) = 3 * s;
    m(1, 1) = 2 * c;
    const auto sv = singular_values(m);
    CHECK(sv[0] == doctest::Approx(3.0));
    CHECK(sv[1] == doctest::Approx(2.0));
    Matrix<double> r(2, 2);
    r(0, 0) = 1;
    r(0, 1) = 2;
    r(1, 0) = 2;
    r(1, 1) = 4;
    CHECK(numeric_rank(r, 1e-8) == 1);
}
