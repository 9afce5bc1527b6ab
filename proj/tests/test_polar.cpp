#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "opdop/polar.hpp"
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

MomentSequence<Extended> chebyshev1_extended()
{
    const auto exact = chebyshev1();
    return MomentSequence<Extended>("chebyshev1", "divided by pi", [exact](std::size_t k, const std::vector<Extended>&) {
        return scalar_cast<Extended>(exact.at(k));
    });
}

const double kSqrt3 = std::sqrt(3.0);

BernsteinSzegoMeasure two_minus_x() { return BernsteinSzegoMeasure(Rational(-1), {Rational(2)}); }

double max_dist(int n, const EllipseE& e)
{
    const Extended zeta(2);
    const auto qn = polar_polynomial(chebyshev1_extended(), zeta, n);
    RootOptions opt;
    opt.polish = true;
    opt.polish_digits = 60;
    double worst = 0.0;
    const auto rs = roots(qn, opt);
    for (const auto& z : require_converged(rs).roots) {
        worst = std::max(worst, dist_to_E(z, e));
    }
    return worst;
}

} // namespace

TEST_CASE("Joukowski map")
{
    CHECK(std::abs(joukowski(2.0) - Complex(2.0 + kSqrt3, 0.0)) < 1e-14);
    CHECK(std::abs(joukowski(-2.0) - Complex(-2.0 - kSqrt3, 0.0)) < 1e-14);
    CHECK(std::abs(joukowski(std::cosh(0.7)) - std::exp(0.7)) < 1e-13);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 500; ++i) {
        const Complex z(u(rng), u(rng));
        const Complex w = joukowski(z);
        CHECK(std::abs(w) > 1.0);
        // w + 1/w = 2z
        CHECK(std::abs(w + 1.0 / w - 2.0 * z) < 1e-12 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("polar polynomials for the Chebyshev measure")
{
    const auto ms = chebyshev1();
    CHECK(polar_polynomial(ms, Rational(0), 1) == poly({"0", "1"}));
    CHECK(polar_polynomial(ms, Rational(0), 2) == poly({"-3/2", "0", "1"}));
    const Rational zeta(2);
    for (int n = 1; n <= 10; ++n) {
        const auto pi_next = polar_pi(ms, zeta, n + 1);
        const auto d = derivative(pi_next);
        CHECK(d == scale(monic_orthogonal(ms, n), Rational(n + 1)));
        for (int k = 0; k < n; ++k) {
            CHECK(moment_functional(ms, d, k) == 0);
        }
    }
}

TEST_CASE("polar polynomials coincide with the factorized operator solutions")
{
    // ((x - 2) f)' is the polar operator for zeta = 2.
    const auto op = expand_factorized(FactorizedOperator({{1, 1, poly({"-2", "1"})}}));
    const auto ms = chebyshev1();
    for (int n = 1; n <= 10; ++n) {
        CHECK(polar_polynomial(ms, Rational(2), n) == constrained_or_unique(op, ms, n, {}));
    }
}

TEST_CASE("Bernstein-Szego moments, exact and extended")
{
    const auto mu = two_minus_x();
    CHECK(mu.m() == 1);
    CHECK(mu.rho() == poly({"2", "-1"}));
    const auto ex = mu.exact_moments();
    // 1/(2-x) against the arcsine law: 1/sqrt(3); x/(2-x) = -1 + 2/(2-x).
    CHECK(ex.at(0) == QuadSurd(Rational(0), q("1/3"), 3));
    CHECK(ex.at(1) == QuadSurd(Rational(-1), q("2/3"), 3));
    PrecisionGuard guard(60);
    const auto xm = mu.extended_moments(50);
    for (std::size_t k = 0; k <= 20; ++k) {
        CHECK(abs(xm.at(k) - ex.at(k).to_extended()) < Extended("1e-45"));
    }
    CHECK_THROWS_AS(BernsteinSzegoMeasure(Rational(1), {q("1/2")}), SpecError);
    // (x - 2)(x + 3) is negative on [-1,1] unless r < 0.
    CHECK_THROWS_AS(BernsteinSzegoMeasure(Rational(1), {Rational(2), Rational(-3)}), SpecError);
    // sqrt(3) and sqrt(8) live in different fields.
    CHECK_THROWS_AS(BernsteinSzegoMeasure(q("-1/3"), {Rational(2), Rational(-3)}).exact_moments(), SpecError);
}

TEST_CASE("finite Chebyshev tails")
{
    const auto cheb = chebyshev1();
    for (int n = 1; n <= 8; ++n) {
        CHECK(chebyshev_tail(monic_orthogonal(cheb, n), 0) == std::vector<Rational>{Rational(1)});
    }
    CHECK_THROWS_AS(chebyshev_tail(poly({"1", "1", "0", "1"}), 1), TailViolation);

    const auto ex = two_minus_x().exact_moments();
    const AsymptoticModel model(two_minus_x());
    double previous = 1.0;
    for (int n = 2; n <= 12; ++n) {
        const auto tail = chebyshev_tail(monic_orthogonal(ex, n), 1);
        REQUIRE(tail.size() == 2);
        CHECK(tail[0] == QuadSurd(Rational(1)));
        const double gap = std::abs(tail[1].to_double() - model.limits()[1]);
        CHECK(gap <= previous * 1.5);
        previous = gap;
    }

    PrecisionGuard guard(80);
    const BernsteinSzegoMeasure two(q("-1/3"), {Rational(2), Rational(-3)});
    const auto xm = two.extended_moments(70);
    for (int n = 3; n <= 10; ++n) {
        const auto tail = chebyshev_tail(monic_orthogonal(xm, n), 2);
        REQUIRE(tail.size() == 3);
        CHECK(abs(tail[0] - Extended(1)) < Extended("1e-40"));
        CHECK(abs(tail[1]) > Extended("1e-3"));
        CHECK(abs(tail[2]) > Extended("1e-3"));
    }
}

TEST_CASE("asymptotic model")
{
    const AsymptoticModel flat(BernsteinSzegoMeasure(Rational(1), {}));
    CHECK(flat.limits() == std::vector<double>{1.0});
    CHECK(flat.predictor(Complex(1.7, 0.4)) == Complex(1.0, 0.0));
    CHECK(flat.szego_constant() == doctest::Approx(1.0).epsilon(1e-14));

    const AsymptoticModel lin(two_minus_x());
    REQUIRE(lin.limits().size() == 2);
    CHECK(lin.limits()[0] == 1.0);
    CHECK(lin.limits()[1] == doctest::Approx(-(2.0 - kSqrt3) / 2.0).epsilon(1e-14));
    CHECK(std::abs(lin.szego_constant() - lin.szego_constant_closed_form()) < 1e-10);
    CHECK(lin.szego_constant() == doctest::Approx(std::sqrt((2.0 + kSqrt3) / 2.0)).epsilon(1e-12));
    // Large u: the predictor tends to 1.
    CHECK(std::abs(lin.predictor(Complex(1e9, 0.0)) - 1.0) < 1e-9);
}

TEST_CASE("strong asymptotics")
{
    const AsymptoticModel flat(BernsteinSzegoMeasure(Rational(1), {}));
    const auto t20 = monic_orthogonal(chebyshev1(), 20);
    // 2^n T̂_n(2) / phi(2)^n = 1 + phi(2)^{-2n}
    const auto dev = strong_asymptotics_deviation(flat, t20, {Complex(2.0, 0.0)});
    CHECK(dev[0] < 1e-12);

    PrecisionGuard guard(100);
    const auto mu = two_minus_x();
    const auto p60 = monic_orthogonal(mu.extended_moments(90), 60);
    const AsymptoticModel lin(mu);
    for (double d : strong_asymptotics_deviation(lin, p60, {Complex(0.0, 2.0), Complex(3.0, 0.0), Complex(-2.5, 0.0)})) {
        CHECK(d <= 1e-3);
    }
    // On the level curve |phi| = 1.2
    const Complex u = 1.2 * std::polar(1.0, 0.9);
    const Complex z = (u + 1.0 / u) / 2.0;
    CHECK(strong_asymptotics_deviation(lin, p60, {z})[0] <= 1e-2);
    CHECK_THROWS_AS(strong_asymptotics_deviation(lin, p60, {Complex(0.0, 0.1)}), SpecError);
}

TEST_CASE("ellipse and distances")
{
    const auto e = ellipse(2.0);
    CHECK(e.eta == doctest::Approx(std::log(2.0 + kSqrt3)).epsilon(1e-14));
    CHECK(e.semi_major == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.semi_minor == doctest::Approx(kSqrt3).epsilon(1e-14));
    CHECK_THROWS_AS(ellipse(0.5), SpecError);
    CHECK(dist_to_E(0.0, e) == 0.0);
    CHECK(dist_to_E(2.0, e) < 1e-12);
    CHECK(dist_to_E(Complex(0.0, 3.0), e) == doctest::Approx(3.0 - kSqrt3).epsilon(1e-12));

    // Brute-force minimum over a very fine parametrization.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const Complex z(u(rng), u(rng));
        const double seg = std::abs(z.real()) <= 1.0 ? std::abs(z.imag()) : std::hypot(std::abs(z.real()) - 1.0, z.imag());
        auto at = [&](double t) { return std::abs(z - Complex(2.0 * std::cos(t), kSqrt3 * std::sin(t))); };
        constexpr int samples = 20000;
        const double step = 2.0 * std::numbers::pi / samples;
        int best = 0;
        for (int k = 1; k < samples; ++k) {
            if (at(k * step) < at(best * step)) {
                best = k;
            }
        }
        // Ternary search inside the bracket around the best sample.
        double lo = (best - 1) * step;
        double hi = (best + 1) * step;
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            (at(m1) < at(m2) ? hi : lo) = at(m1) < at(m2) ? m2 : m1;
        }
        const double brute = std::min(seg, at(0.5 * (lo + hi)));
        CHECK(dist_to_E(z, e) <= brute + 1e-12);
        CHECK(dist_to_E(z, e) >= brute - 1e-9);
    }
}

TEST_CASE("Sobolev orthogonality of the Pi family")
{
    const auto ms = chebyshev1();
    const auto rep = sobolev_orthogonality_check(ms, Rational(2), 8);
    CHECK(rep.max_off_diagonal == 0.0);
    CHECK(rep.diagonal_positive);
    for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) {
            if (j != k) {
                CHECK(rep.gram(j, k) == 0);
            }
        }
    }
    const auto at0 = sobolev_orthogonality_check(ms, Rational(0), 6);
    CHECK(at0.max_off_diagonal == 0.0);
    CHECK(at0.diagonal_positive);
}

TEST_CASE("zeros of polar polynomials approach the ellipse")
{
    PrecisionGuard guard(80);
    const auto e = ellipse(2.0);
    const double d12 = max_dist(12, e);
    const double d25 = max_dist(25, e);
    CHECK(d25 < d12);
}
