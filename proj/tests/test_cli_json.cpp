#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "opdop/json_io.hpp"
#include "support.hpp"

using namespace opdop;
using namespace testsupport;

TEST_CASE("scalars keep their exact form")
{
    CHECK(scalar_to_json(q("-3/4")) == Json("-3/4"));
    CHECK(scalar_from_json<Rational>(Json("-3/4")) == q("-3/4"));
    CHECK(scalar_from_json<Rational>(Json(5)) == Rational(5));
    CHECK(scalar_from_json<double>(scalar_to_json(0.1)) == 0.1);
    const auto c = scalar_from_json<Complex>(scalar_to_json(Complex(1.5, -2.25)));
    CHECK(c == Complex(1.5, -2.25));

    PrecisionGuard guard(60);
    const Extended third = Extended(1) / 3;
    const auto back = scalar_from_json<Extended>(scalar_to_json(third));
    CHECK(back == third);
}

TEST_CASE("polynomials round trip in every mode")
{
    const auto p = poly({"3/4", "0", "-3", "0", "1"});
    CHECK(polynomial_from_json<Rational>(to_json(p)) == p);
    CHECK(to_json(p) == Json::parse(R"(["3/4","0","-3","0","1"])"));
    const Polynomial<double> d({0.75, 0.0, -3.0, 0.0, 1.0});
    CHECK(polynomial_from_json<double>(to_json(d)) == d);
}

TEST_CASE("operators from inline text, files and stages")
{
    const auto op = operator_from_json(load_json(R"({"rho": [[0], [0, -2], [1]]})"));
    CHECK(op.rho() == hermite_op().rho());
    CHECK(operator_from_json(to_json(op)).rho() == op.rho());
    CHECK_FALSE(factorized_from_json(to_json(op)).has_value());

    const std::string path = "test_cli_json_op.json";
    {
        std::ofstream f(path);
        f << R"({"rho": [["2"], ["0", "-2"], ["1"]]})";
    }
    CHECK(operator_from_json(load_json(path)).rho() == shifted_hermite_op().rho());
    std::remove(path.c_str());

    // ((x^2-1) f)'' expands to (x^2-1) f'' + 4x f' + 2f.
    const auto staged = load_json(R"({"stages": [{"m": 2, "n": 2, "rho": [-1, 0, 1]}]})");
    const auto fop = factorized_from_json(staged);
    REQUIRE(fop.has_value());
    CHECK(fop->stages().size() == 1);
    CHECK(operator_from_json(staged).rho() == std::vector<RationalPoly>{poly({"2"}), poly({"0", "4"}), poly({"-1", "0", "1"})});
    CHECK(factorized_from_json(to_json(*fop))->stages()[0].rho == poly({"-1", "0", "1"}));

    CHECK_THROWS_AS(load_json("{not json"), SpecError);
    CHECK_THROWS_AS(load_json("/nonexistent/op.json"), SpecError);
    CHECK_THROWS_AS(operator_from_json(load_json(R"({"sigma": []})")), SpecError);
}

TEST_CASE("measure descriptions")
{
    const auto lag = measure_from_json(load_json(R"({"type": "laguerre", "alpha": "1/2"})"));
    CHECK(lag.rational());
    ClassicalSpec spec;
    spec.kind = ClassicalSpec::Kind::Laguerre;
    spec.alpha = q("1/2");
    const auto direct = classical_moments(spec);
    const auto via = exact_moments(lag);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(via.at(k) == direct.at(k));
    }
    CHECK(measure_from_json(to_json(lag)).classical.alpha == q("1/2"));

    const auto given = measure_from_json(load_json(R"({"type": "moments", "values": ["1", "0", "1/3"]})"));
    CHECK(exact_moments(given).at(2) == q("1/3"));

    const auto bs = measure_from_json(load_json(R"({"type": "bernstein-szego", "r": -1, "nu": [2]})"));
    CHECK_FALSE(bs.rational());
    CHECK_THROWS_AS(exact_moments(bs), SpecError);
    const auto bs_back = measure_from_json(to_json(bs));
    CHECK(bs_back.r == Rational(-1));
    CHECK(bs_back.nu == std::vector<Rational>{Rational(2)});

    const auto w = measure_from_json(load_json(R"j({"type": "weight", "w": "exp(-x^2)", "a": "-inf", "b": "inf"})j"));
    CHECK(std::isinf(w.a));
    CHECK(measure_from_json(to_json(w)).weight == w.weight);

    CHECK_THROWS_AS(measure_from_json(load_json(R"({"type": "gegenbauer"})")), SpecError);
}

TEST_CASE("reports round trip")
{
    ClassicalSpec spec;
    const auto ms = classical_moments(spec);

    const auto s = solve_index(hermite_op(), ms, 4);
    const auto s_back = solution_set_from_json<Rational>(to_json(s));
    CHECK(s_back.n == 4);
    CHECK(s_back.lambda_n == Rational(-8));
    REQUIRE(s_back.particular.has_value());
    CHECK(*s_back.particular == poly({"3/4", "0", "-3", "0", "1"}));
    CHECK(s_back.kernel_basis == s.kernel_basis);
    CHECK(s_back.p_n == s.p_n);

    const auto r = normality_report(shifted_hermite_op(), ms, 4);
    const auto r_back = normality_report_from_json<Rational>(to_json(r));
    CHECK(r_back.verdict == r.verdict);
    CHECK(r_back.branch == r.branch);
    CHECK(r_back.drop_indexes == r.drop_indexes);
    CHECK(r_back.moment_condition_ok == r.moment_condition_ok);
    CHECK(r_back.gamma == r.gamma);
    CHECK(r_back.moment_value == r.moment_value);
    for (const auto v : {Verdict::Normal, Verdict::NotNormal, Verdict::Indeterminate}) {
        CHECK(verdict_from_string(to_string(v)) == v);
    }

    const auto ds = generate_systQ(hermite_op());
    const auto ds_back = difference_system_from_json(to_json(ds));
    CHECK(render(ds_back) == render(ds));
    CHECK(to_json(ds)["equations"][0]["text"] == Json("2*mu[n] - (n-1)*mu[n-2] = 0 for n >= 2; mu[1] = 0"));

    const auto m = check_membership(ds, ms, 20);
    const auto m_back = membership_from_json<Rational>(to_json(m));
    CHECK(m_back.pass);
    CHECK_FALSE(m_back.n.has_value());

    ZeroBoundRow row{3, 2.0, 6.0, true, {Complex(-2.0, 0.0), Complex(0.0, 1.5)}};
    const auto row_back = zero_bound_row_from_json(to_json(row));
    CHECK(row_back.n == 3);
    CHECK(row_back.radius == 6.0);
    CHECK(row_back.pass);
    CHECK(row_back.roots == row.roots);
}
