#include "doctest.h"

#include "opdop/operator.hpp"
#include "support.hpp"

using namespace opdop;
using namespace testsupport;

TEST_CASE("validate")
{
    CHECK(validate(hermite_op()).empty());
    CHECK(validate(identity_op()).empty());
    const ExactlySolvableOperator bad({poly({"1"}), poly({"0", "0", "1"})});
    const auto v = validate(bad);
    REQUIRE(!v.empty());
    CHECK(v.front().k == 1);
    // deg rho_k < k everywhere
    CHECK(!validate(ExactlySolvableOperator({poly({"0"}), poly({"1"})})).empty());
    CHECK_THROWS_AS(ExactlySolvableOperator::checked({poly({"0"}), poly({"0", "0", "1"})}), SpecError);
    // rho_M may vanish
    CHECK(validate(ExactlySolvableOperator({poly({"1"}), poly({"0"}), poly({"0"})})).empty());
}

TEST_CASE("apply")
{
    CHECK(apply(hermite_op(), RationalPoly::monomial(2)) == poly({"2", "0", "-4"}));
    const ExactlySolvableOperator xd({poly({"0"}), poly({"0", "1"})});
    for (int n = 0; n <= 6; ++n) {
        CHECK(apply(xd, RationalPoly::monomial(n)) == RationalPoly::monomial(n, Rational(n)));
        CHECK(apply(xdx_minus_one(), RationalPoly::monomial(n)) == RationalPoly::monomial(n, Rational(n - 1)));
    }
    const auto p = convert<double>(poly({"1", "2", "3"}));
    CHECK(apply(hermite_op(), p) == Polynomial<double>({6.0 - 0.0, -4.0, -12.0}));
}

TEST_CASE("lambda")
{
    CHECK(lambda(shifted_hermite_op(), 3) == -4);
    for (long n = 0; n <= 10; ++n) {
        CHECK(lambda(shifted_hermite_op(), n) == 2 * (1 - n));
    }
    CHECK(lambda(hermite_op(), 0) == 0);
    CHECK(lambda(xdx_minus_one(), 1) == 0);
    CHECK(lambda(xdx_minus_one(), 0) == -1);
    CHECK(lambda_polynomial(shifted_hermite_op()) == poly({"2", "-2"}));
    CHECK(exceptional_indexes(hermite_op()) == std::vector<long>{0});
    CHECK(exceptional_indexes(shifted_hermite_op()) == std::vector<long>{1});
    CHECK(exceptional_indexes(xdx_minus_one()) == std::vector<long>{1});
    CHECK(exceptional_indexes(identity_op()).empty());
    // x^2 f'' - 4x f' + 6f: lambda_n = (n-2)(n-3)
    const auto op = ExactlySolvableOperator::checked({poly({"6"}), poly({"0", "-4"}), poly({"0", "0", "1"})});
    CHECK(exceptional_indexes(op) == std::vector<long>{2, 3});
}

TEST_CASE("hermite operator matrix")
{
    const auto a = build_matrix(hermite_op(), 3);
    CHECK(a.size() == 4);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            Rational expect(0);
            if (i == j) {
                expect = Rational(-2 * (j - 1));
            } else if (i == 1 && j == 3) {
                expect = 2;
            } else if (i == 2 && j == 4) {
                expect = 6;
            }
            CHECK(a.at(i, j) == expect);
        }
    }
    CHECK(build_matrix(identity_op(), 5).dense() == Matrix<Rational>::identity(6));
}

TEST_CASE("operator matrix columns reproduce apply on monomials")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto op = random_operator(rng, 4);
        const int n = 15;
        const auto a = build_matrix(op, n);
        for (int j = 0; j <= n; ++j) {
            const auto img = apply(op, RationalPoly::monomial(j));
            CHECK(img.degree() <= j);
            for (int i = 0; i <= n; ++i) {
                CHECK(a.at(i + 1, j + 1) == img.coeff(i));
            }
            CHECK(a.at(j + 1, j + 1) == lambda(op, j));
        }
    }
}

TEST_CASE("expand_factorized")
{
    const FactorizedOperator f1({{1, 1, poly({"-2", "1"})}});
    const auto e1 = expand_factorized(f1);
    CHECK(e1.rho(0) == poly({"1"}));
    CHECK(e1.rho(1) == poly({"-2", "1"}));

    const FactorizedOperator f2({{2, 2, poly({"-1", "0", "1"})}});
    const auto e2 = expand_factorized(f2);
    CHECK(e2.rho(0) == poly({"2"}));
    CHECK(e2.rho(1) == poly({"0", "4"}));
    CHECK(e2.rho(2) == poly({"-1", "0", "1"}));

    std::mt19937_64 rng(5);
    const FactorizedOperator f3({{2, 1, poly({"-1", "0", "1"})}, {1, 2, poly({"3", "2"})}, {0, 0, poly({"5"})}});
    const auto e3 = expand_factorized(f3);
    CHECK(e3.order() == 3);
    for (int t = 0; t < 20; ++t) {
        const auto p = random_poly(rng, 12);
        CHECK(apply(e3, p) == apply_stagewise(f3, p));
    }
}

TEST_CASE("factorized operators reject bad stages")
{
    CHECK_THROWS_AS(FactorizedOperator({{1, 2, poly({"0", "1"})}}), SpecError);
    CHECK_THROWS_AS(FactorizedOperator({{2, 2, poly({"1", "0", "1"})}}), SpecError);
    CHECK_THROWS_AS(FactorizedOperator({{2, 2, poly({"0", "1"})}}), SpecError);
}

TEST_CASE("factorized uniqueness conditions and kernels")
{
    const auto c1 = factorized_conditions(FactorizedOperator({{1, 1, poly({"-2", "1"})}}));
    CHECK(c1.exact_ok);
    CHECK(c1.unique_ok);
    CHECK(!c1.j0);

    const FactorizedOperator bad({{1, 2, poly({"0", "1"})}, {2, 1, poly({"-1", "0", "1"})}});
    const auto c2 = factorized_conditions(bad);
    CHECK(!c2.unique_ok);
    CHECK(c2.j0 == 1);
    CHECK(c2.n_prime == 0);
    const auto e = expand_factorized(bad);
    CHECK(apply(e, RationalPoly::monomial(0)).is_zero());
    CHECK(!apply(e, RationalPoly::monomial(1)).is_zero());

    const auto c3 = factorized_conditions(FactorizedOperator({{2, 1, poly({"-1", "0", "1"})}, {1, 2, poly({"0", "1"})}}));
    CHECK(c3.unique_ok);

    // partial sums (-2, -1, 0): j0 = 2, n' = 0
    const FactorizedOperator deep({{0, 2, poly({"1"})}, {2, 1, poly({"-1", "0", "1"})}, {1, 0, poly({"0", "1"})}});
    const auto c4 = factorized_conditions(deep);
    CHECK(c4.j0 == 2);
    CHECK(c4.n_prime == 0);
    // partial sums (-3, 0): j0 = 1, n' = 2
    const FactorizedOperator wide({{0, 3, poly({"1"})}, {3, 0, poly({"0", "-1", "0", "1"})}});
    const auto c5 = factorized_conditions(wide);
    REQUIRE(c5.n_prime);
    const auto e5 = expand_factorized(wide);
    for (int i = 0; i <= *c5.n_prime; ++i) {
        CHECK(apply(e5, RationalPoly::monomial(i)).is_zero());
    }
    CHECK(!apply(e5, RationalPoly::monomial(*c5.n_prime + 1)).is_zero());
}

TEST_CASE("unique_ok implies nonvanishing lambda")
{
    const std::vector<FactorizedOperator> ops = {
        FactorizedOperator({{1, 1, poly({"-2", "1"})}}),
        FactorizedOperator({{2, 1, poly({"-1", "0", "1"})}, {1, 2, poly({"3", "2"})}}),
        FactorizedOperator({{2, 2, poly({"-4", "0", "1"})}, {1, 1, poly({"1", "1"})}}),
    };
    for (const auto& f : ops) {
        REQUIRE(factorized_conditions(f).unique_ok);
        const auto e = expand_factorized(f);
        for (long n = 0; n <= 40; ++n) {
            CHECK(lambda(e, n) != 0);
        }
    }
}

TEST_CASE("hull and radius")
{
    const auto h1 = hull_and_bound(FactorizedOperator({{1, 1, poly({"-2", "1"})}}));
    CHECK(h1.c_min == doctest::Approx(2.0));
    CHECK(h1.c_max == doctest::Approx(2.0));
    CHECK(h1.d == doctest::Approx(2.0));
    CHECK(h1.radius == doctest::Approx(6.0));
    const auto h2 = hull_and_bound(FactorizedOperator({{2, 2, poly({"-1", "0", "1"})}}));
    CHECK(h2.d == doctest::Approx(1.0));
    CHECK(h2.radius == doctest::Approx(9.0));
    const auto h3 = hull_and_bound(FactorizedOperator({{2, 2, poly({"-1", "0", "1"})}}), {-4.5});
    CHECK(h3.c_min == doctest::Approx(-4.5));
    CHECK(h3.radius == doctest::Approx(40.5));
    std::vector<double> r;
    CHECK(has_only_real_roots(poly({"1", "-2", "1"}), &r));
    CHECK(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.0));
}
