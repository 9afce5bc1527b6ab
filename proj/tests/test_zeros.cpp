#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "opdop/zeros.hpp"

using namespace opdop;

namespace {

std::vector<Complex> sorted(std::vector<Complex> v)
{
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

Polynomial<Complex> from_roots(const std::vector<Complex>& rts)
{
    Polynomial<Complex> p = Polynomial<Complex>::constant(1.0);
    for (const auto& r : rts) {
        p = p * Polynomial<Complex>({-r, Complex(1.0)});
    }
    return p;
}

} // namespace

TEST_CASE("simple root sets")
{
    const auto r1 = sorted(roots(Polynomial<double>({-1.0, 0.0, 1.0})).roots);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].real() == doctest::Approx(-1.0));
    CHECK(r1[1].real() == doctest::Approx(1.0));

    const auto t3 = roots(monic_chebyshev<Rational>(3));
    const auto r3 = sorted(t3.roots);
    REQUIRE(r3.size() == 3);
    CHECK(r3[0].real() == doctest::Approx(-0.8660254037844386).epsilon(1e-13));
    CHECK(std::abs(r3[1]) < 1e-15);
    CHECK(r3[2].real() == doctest::Approx(0.8660254037844386).epsilon(1e-13));

    const auto cube = roots(Polynomial<double>({0.0, 0.0, 0.0, 1.0}));
    CHECK(cube.roots == std::vector<Complex>(3, Complex(0.0, 0.0)));
    CHECK(cube.residual == 0.0);

    const auto i2 = sorted(roots(Polynomial<Complex>({Complex(1.0), Complex(0.0), Complex(1.0)})).roots);
    CHECK(std::abs(i2[0] - Complex(0.0, -1.0)) < 1e-13);
    CHECK(std::abs(i2[1] - Complex(0.0, 1.0)) < 1e-13);
}

TEST_CASE("seeded runs are reproducible")
{
    const Polynomial<double> p({3.0, -1.0, 4.0, 1.0, -5.0, 9.0});
    RootOptions a;
    a.seed = 42;
    CHECK(roots(p, a).roots == roots(p, a).roots);
}

TEST_CASE("high degree Chebyshev zeros with extended polish")
{
    RootOptions opt;
    opt.polish = true;
    const int n = 60;
    const auto rs = require_converged(roots(monic_chebyshev<Rational>(n), opt));
    const auto r = sorted(rs.roots);
    for (int k = 0; k < n; ++k) {
        const double expect = std::cos((2.0 * (n - 1 - k) + 1.0) * M_PI / (2.0 * n));
        CHECK(std::abs(r[static_cast<std::size_t>(k)] - Complex(expect, 0.0)) < 1e-12);
    }
    CHECK(rs.residual < 1e-30);
}

TEST_CASE("vieta certificate on random polynomials")
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> c;
        for (int k = 0; k <= 12; ++k) {
            c.emplace_back(g(rng), g(rng));
        }
        const Polynomial<Complex> p(c);
        const auto rs = require_converged(roots(p));
        CHECK(rs.roots.size() == 12);
        CHECK(vieta_residual(p, rs) < 1e-9);
        CHECK(rs.residual < 1e-12);
    }
}

TEST_CASE("cauchy bound")
{
    CHECK(cauchy_bound(Polynomial<Complex>({Complex(-1.0), Complex(0.0), Complex(1.0)})) == doctest::Approx(1.0));
    // x^2 - x - 1: golden ratio
    CHECK(cauchy_bound(Polynomial<Complex>({Complex(-1.0), Complex(-1.0), Complex(1.0)})) ==
          doctest::Approx(1.6180339887498949));
}

TEST_CASE("iterated integrals stay in the tripled disk")
{
    const auto t1 = iterated_integral_circle_test(Polynomial<Complex>({Complex(0.0), Complex(1.0)}), {Complex(0.0)}, 1.0);
    CHECK(t1.pass);
    CHECK(t1.bound == doctest::Approx(3.0));
    CHECK(t1.max_modulus < 1e-7);

    // F = x^3/3 - 0.81 x - (0.243 - 0.729)
    const auto p = from_roots({Complex(0.9), Complex(-0.9)});
    const auto t2 = iterated_integral_circle_test(p, {Complex(0.9)}, 0.9);
    CHECK(t2.pass);
    CHECK(t2.bound == doctest::Approx(2.7));
    // Double root at 0.9, third root at -1.8.
    CHECK(t2.max_modulus == doctest::Approx(1.8).epsilon(1e-6));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto disk_point = [&] { return std::polar(std::sqrt(u(rng)), 2.0 * M_PI * u(rng)); };
    std::uniform_int_distribution<int> deg(1, 8);
    std::uniform_int_distribution<int> nb(1, 4);
    for (int t = 0; t < 100; ++t) {
        std::vector<Complex> rts(static_cast<std::size_t>(deg(rng)));
        std::generate(rts.begin(), rts.end(), disk_point);
        std::vector<Complex> base(static_cast<std::size_t>(nb(rng)));
        std::generate(base.begin(), base.end(), disk_point);
        const auto res = iterated_integral_circle_test(from_roots(rts), base, 1.0);
        CHECK(res.precondition_ok);
        CHECK(res.pass);
    }

    const auto outside = iterated_integral_circle_test(p, {Complex(2.0)}, 1.0);
    CHECK(!outside.precondition_ok);
    CHECK(!outside.pass);
}
