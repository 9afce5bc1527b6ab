#include "doctest.h"

#include <cmath>
#include <numbers>
#include <thread>

#include "opdop/moments.hpp"

using namespace opdop;

namespace {

using RP = Polynomial<Rational>;
using K = ClassicalSpec::Kind;

Rational q(const char* s) { return parse_rational(s); }

MomentSequence<Rational> classical(K kind, const char* alpha = "0", const char* beta = "0")
{
    ClassicalSpec s;
    s.kind = kind;
    s.alpha = q(alpha);
    s.beta = q(beta);
    return classical_moments(s);
}

} // namespace

TEST_CASE("hermite moments are (2k-1)!!/2^k")
{
    const auto m = classical(K::Hermite).first(7);
    CHECK(m == std::vector<Rational>{q("1"), q("0"), q("1/2"), q("0"), q("3/4"), q("0"), q("15/8")});
}

TEST_CASE("laguerre moments are rising factorials")
{
    CHECK(classical(K::Laguerre).first(5) == std::vector<Rational>{q("1"), q("1"), q("2"), q("6"), q("24")});
    // alpha = 1/2: (3/2)(5/2)
    CHECK(classical(K::Laguerre, "1/2").at(2) == q("15/4"));
}

TEST_CASE("jacobi moments against direct integrals")
{
    // (1-x) on [-1,1]: int = 2, int x(1-x) = -2/3, int x^2(1-x) = 2/3
    const auto m = classical(K::Jacobi, "1", "0").first(3);
    CHECK(m == std::vector<Rational>{q("1"), q("-1/3"), q("1/3")});
    // alpha = beta = -1/2 reproduces chebyshev1
    CHECK(classical(K::Jacobi, "-1/2", "-1/2").first(9) == classical(K::Chebyshev1).first(9));
    CHECK(classical(K::Chebyshev1).at(4) == q("3/8"));
    CHECK_THROWS_AS(classical(K::Jacobi, "-1", "0"), SpecError);
}

TEST_CASE("legendre moments on an interval")
{
    ClassicalSpec s;
    s.kind = K::Legendre;
    s.a = 0;
    s.b = 1;
    CHECK(classical_moments(s).first(4) == std::vector<Rational>{q("1"), q("1/2"), q("1/3"), q("1/4")});
    CHECK(classical(K::Legendre).at(2) == q("1/3"));
}

TEST_CASE("monic orthogonal polynomials of classical measures")
{
    CHECK(monic_orthogonal(classical(K::Hermite), 3) == RP{q("0"), q("-3/2"), q("0"), q("1")});
    CHECK(monic_orthogonal(classical(K::Laguerre), 2) == RP{q("2"), q("-4"), q("1")});
    CHECK(monic_orthogonal(classical(K::Legendre), 2) == RP{q("-1/3"), q("0"), q("1")});
    CHECK(monic_orthogonal(classical(K::Chebyshev1), 4) == monic_chebyshev<Rational>(4));
    for (int n = 0; n <= 6; ++n) {
        const auto ms = classical(K::Jacobi, "1/3", "2");
        const auto p = monic_orthogonal(ms, n);
        CHECK(heine_polynomial(ms, n) == p);
        for (int k = 0; k < n; ++k) {
            CHECK(moment_functional(ms, p, k) == 0);
        }
    }
}

TEST_CASE("hankel determinants and minors")
{
    const auto ms = classical(K::Hermite);
    CHECK(hankel_det(ms, 0) == 1);
    CHECK(hankel_det(ms, 1) == q("1/2"));
    // det [[1,0,1/2],[0,1/2,0],[1/2,0,3/4]] = 3/8 - 1/8
    CHECK(hankel_det(ms, 2) == q("1/4"));
    const auto h0 = hankel_minors(ms, 0);
    CHECK(h0.minors == std::vector<Rational>{q("1")});
    const auto lag = classical(K::Laguerre);
    const auto h1 = hankel_minors(lag, 1);
    CHECK(h1.minors == std::vector<Rational>{q("1"), q("1")});
    CHECK(h1.delta_n == 1);
    const auto piv = hankel_pivots(ms, 2);
    CHECK(piv == std::vector<Rational>{q("1"), q("1/2"), q("1/2")});
}

TEST_CASE("non positive-definite moments are rejected")
{
    const auto ms = MomentSequence<Rational>::from_values({q("1"), q("2"), q("1")});
    CHECK_THROWS_AS(hankel_det(ms, 1), NotPositiveDefinite);
    CHECK(monic_orthogonal(ms, 1) == RP{q("-2"), q("1")});
    CHECK_THROWS_AS(monic_orthogonal(MomentSequence<Rational>::from_values({q("1"), q("2"), q("1"), q("0"), q("1")}), 2),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(ms.at(3), SpecError);
}

TEST_CASE("moment sequences are shareable between threads")
{
    const auto ms = classical(K::Laguerre, "1/2");
    std::vector<Rational> a, b;
    std::thread t1([&] { a = ms.first(30); });
    std::thread t2([&] { b = ms.first(30); });
    t1.join();
    t2.join();
    CHECK(a == b);
    CHECK(ms.scaled(q("2")).at(1) == q("3"));
}

TEST_CASE("weight quadrature in double")
{
    WeightSpec g;
    g.w = WeightExpr::parse("exp(-x^2)");
    g.a = -INFINITY;
    g.b = INFINITY;
    const auto m = weight_moments(g);
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(m.at(0) == doctest::Approx(sp).epsilon(1e-10));
    CHECK(m.at(2) == doctest::Approx(sp / 2).epsilon(1e-10));
    CHECK(std::abs(m.at(3)) < 1e-10);

    WeightSpec c;
    c.w = WeightExpr::parse("1/sqrt(1-x^2)");
    c.endpoint_singular = true;
    const auto mc = weight_moments(c);
    CHECK(mc.at(0) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
    CHECK(mc.at(2) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));

    WeightSpec p;
    p.w = WeightExpr::parse("x^2 + 1");
    p.a = 0;
    p.b = 2;
    // int_0^2 x (x^2+1) = 4 + 2
    CHECK(weight_moments(p).at(1) == doctest::Approx(6.0));
}

TEST_CASE("weight quadrature in extended precision")
{
    PrecisionGuard guard(40);
    WeightSpec g;
    g.w = WeightExpr::parse("exp(-x^2)");
    g.a = -INFINITY;
    g.b = INFINITY;
    const auto m = weight_moments_extended(g, 40);
    const Extended expect = Extended(3) * sqrt(boost::math::constants::pi<Extended>()) / 4;
    CHECK(abs(m.at(4) - expect) < Extended("1e-30"));
}

TEST_CASE("gauss-chebyshev moments")
{
    PrecisionGuard guard(50);
    const auto m = chebyshev_weight_moments([](const Extended&) { return Extended(1); }, 0.0, 50, "arcsine");
    // C(2k,k)/4^k
    CHECK(abs(m.at(6) - Extended(5) / 16) < Extended("1e-45"));
    CHECK(abs(m.at(7)) < Extended("1e-45"));
    // g = 1/(2-x): mu_0 = 1/sqrt(3)
    const auto r = chebyshev_weight_moments([](const Extended& x) { return Extended(1) / (Extended(2) - x); },
                                            2.0 - std::sqrt(3.0), 50, "bernstein");
    CHECK(abs(r.at(0) - Extended(1) / sqrt(Extended(3))) < Extended("1e-45"));
}
