#include "doctest.h"

#include <cmath>

#include "opdop/zero_bound.hpp"
#include "support.hpp"

using namespace opdop;
using namespace testsupport;

namespace {

MomentSequence<Rational> chebyshev1()
{
    ClassicalSpec spec;
    spec.kind = ClassicalSpec::Kind::Chebyshev1;
    return classical_moments(spec);
}

} // namespace

TEST_CASE("((x-2) f)' stays inside the radius 6 disk")
{
    const FactorizedOperator fop({{1, 1, poly({"-2", "1"})}});
    const auto rep = zero_bound_check(fop, chebyshev1(), 1, 30);
    CHECK(rep.hull.d == 2.0);
    CHECK(rep.hull.radius == 6.0);
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 30);
    // (x-2)Q' + Q = 2x - 2 + c must have mean zero: Q_1 = x + 2.
    REQUIRE(rep.rows[0].roots.size() == 1);
    CHECK(std::abs(rep.rows[0].roots[0] - Complex(-2.0, 0.0)) < 1e-12);
    for (const auto& row : rep.rows) {
        CHECK(row.roots.size() == static_cast<std::size_t>(row.n));
        CHECK(row.max_modulus <= 6.0);
    }
}

TEST_CASE("((x^2-1) f)'' stays inside the radius 9 disk")
{
    const FactorizedOperator fop({{2, 2, poly({"-1", "0", "1"})}});
    const auto rep = zero_bound_check(fop, chebyshev1(), 1, 30);
    CHECK(rep.hull.d == 1.0);
    CHECK(rep.hull.radius == 9.0);
    CHECK(rep.pass);
    // ((x^2-1)(x+c))'' = 6x + 2c: Q_1 = x.
    CHECK(std::abs(rep.rows[0].roots[0]) < 1e-12);
}

TEST_CASE("constraint points widen the hull")
{
    // ((x^2-1) f')' on Legendre moments: Q_n = P_n + c, with c fixed by one point.
    const FactorizedOperator fop({{0, 1, poly({"1"})}, {2, 1, poly({"-1", "0", "1"})}});
    const auto op = expand_factorized(fop);
    ClassicalSpec spec;
    spec.kind = ClassicalSpec::Kind::Legendre;
    const auto ms = classical_moments(spec);
    CHECK_THROWS_AS(constrained_or_unique(op, ms, 3, {}), MathError);

    const Rational nu = q("5/2");
    const ConstraintSource<Rational> at_nu = [nu](int) { return std::vector<Rational>{nu}; };
    const auto rep = zero_bound_check(fop, ms, 1, 12, at_nu);
    CHECK(rep.hull.d == 2.5);
    CHECK(rep.hull.radius == 22.5);
    CHECK(rep.pass);
    for (int n = 1; n <= 12; ++n) {
        const auto qn = constrained_or_unique(op, ms, n, {nu});
        CHECK(evaluate(qn, nu) == 0);
        CHECK(qn - monic_orthogonal(ms, n) == RationalPoly::constant(-evaluate(monic_orthogonal(ms, n), nu)));
    }
}

TEST_CASE("float and extended moments give the same bound verdicts")
{
    const FactorizedOperator fop({{1, 1, poly({"-2", "1"})}});
    std::vector<double> mu;
    for (const auto& x : chebyshev1().first(40)) {
        mu.push_back(x.convert_to<double>());
    }
    const auto rep = zero_bound_check(fop, MomentSequence<double>::from_values(mu), 1, 12);
    CHECK(rep.pass);
    CHECK(rep.rows[0].max_modulus == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("range and measure checks")
{
    const FactorizedOperator fop({{1, 1, poly({"-2", "1"})}});
    CHECK_THROWS_AS(zero_bound_check(fop, chebyshev1(), 5, 3), SpecError);
    ClassicalSpec h;
    h.kind = ClassicalSpec::Kind::Hermite;
    CHECK_THROWS_AS(zero_bound_check(fop, classical_moments(h), 1, 4), SpecError);
}
