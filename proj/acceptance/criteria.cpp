#include "criteria.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "opdop/polar.hpp"
#include "opdop/zero_bound.hpp"
#include "oracle.hpp"

namespace opdop::acceptance {

namespace {

using K = ClassicalSpec::Kind;

RationalPoly poly(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) {
        v.emplace_back(x);
    }
    return RationalPoly(std::move(v));
}

MomentSequence<Rational> classical(K kind)
{
    ClassicalSpec s;
    s.kind = kind;
    return classical_moments(s);
}

/// P_{n+1} = (x - b_n) P_n - c_n P_{n-1}, P_0 = 1
template <class B, class C>
std::vector<RationalPoly> recurrence(int count, B b, C c)
{
    std::vector<RationalPoly> p = {RationalPoly::constant(Rational(1))};
    for (int n = 0; n + 1 < count; ++n) {
        RationalPoly next = p.back() * RationalPoly::linear_factor(b(n));
        if (n > 0) {
            next -= scale(p[static_cast<std::size_t>(n - 1)], c(n));
        }
        p.push_back(next);
    }
    return p;
}

Rational small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> zero(0, 3);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 3);
    if (zero(rng) == 0) {
        return Rational(0);
    }
    return Rational(num(rng)) / Rational(den(rng));
}

ExactlySolvableOperator random_operator(std::mt19937_64& rng, int max_order)
{
    std::uniform_int_distribution<int> order(0, max_order);
    for (;;) {
        const int m = order(rng);
        std::vector<RationalPoly> rho;
        for (int k = 0; k <= m; ++k) {
            std::vector<Rational> c;
            for (int j = 0; j <= k; ++j) {
                c.push_back(small_rational(rng));
            }
            rho.emplace_back(std::move(c));
        }
        ExactlySolvableOperator op(std::move(rho));
        if (validate(op).empty()) {
            return op;
        }
    }
}

MomentSequence<Extended> chebyshev1_extended(unsigned digits)
{
    const auto exact = classical(K::Chebyshev1);
    return MomentSequence<Extended>("chebyshev1", "divided by pi",
                                    [exact, digits](std::size_t k, const std::vector<Extended>&) {
                                        PrecisionGuard guard(digits);
                                        return scalar_cast<Extended>(exact.at(k));
                                    });
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(3) << x;
    return os.str();
}

bool classical_coincidence(std::string& detail)
{
    const auto hermite = recurrence(16, [](int) { return Rational(0); }, [](int n) { return Rational(n) / 2; });
    const auto laguerre =
        recurrence(16, [](int n) { return Rational(2 * n + 1); }, [](int n) { return Rational(n) * Rational(n); });
    const auto legendre =
        recurrence(16, [](int) { return Rational(0); }, [](int n) { return Rational(n * n) / Rational(4 * n * n - 1); });
    struct Case {
        const char* name;
        ExactlySolvableOperator op;
        MomentSequence<Rational> ms;
        const std::vector<RationalPoly>& expected;
    };
    const std::vector<Case> cases = {
        {"hermite", ExactlySolvableOperator::checked({poly({0}), poly({0, -2}), poly({1})}), classical(K::Hermite), hermite},
        {"laguerre", ExactlySolvableOperator::checked({poly({0}), poly({1, -1}), poly({0, 1})}), classical(K::Laguerre),
         laguerre},
        {"legendre", ExactlySolvableOperator::checked({poly({0}), poly({0, -2}), poly({1, 0, -1})}),
         classical(K::Legendre), legendre},
    };
    bool ok = true;
    for (const auto& c : cases) {
        for (int n = 1; n <= 15; ++n) {
            const auto s = solve_index(c.op, c.ms, n);
            if (!s.particular || *s.particular != c.expected[static_cast<std::size_t>(n)]) {
                detail += std::string(c.name) + " differs at n=" + std::to_string(n) + "; ";
                ok = false;
                break;
            }
        }
    }
    if (ok) {
        detail = "hermite, laguerre, legendre: n=1..15 bit-exact";
    }
    return ok;
}

bool example_normality(std::string& detail)
{
    const auto op = ExactlySolvableOperator::checked({poly({2}), poly({0, -2}), poly({1})});
    WeightSpec w;
    w.w = WeightExpr::parse("exp(-x^2)/(1+x^2)");
    w.a = -std::numeric_limits<double>::infinity();
    w.b = std::numeric_limits<double>::infinity();
    w.tol = 1e-12;
    const auto ms = weight_moments(w);
    bool ok = true;
    std::string verdicts = "verdicts";
    for (int n = 0; n <= 8; ++n) {
        const auto v = normality_report(op, ms, n).verdict;
        verdicts += " " + std::to_string(n) + ":" + to_string(v);
        const Verdict want = n <= 3 ? Verdict::Normal : Verdict::NotNormal;
        ok = ok && v == want;
    }
    std::string sols = "; solutions";
    const Polynomial<double> x = Polynomial<double>::monomial(1);
    for (int n = 1; n <= 3; ++n) {
        const auto s = solve_index(op, ms, n);
        const bool kernel_only = !s.particular && s.kernel_basis.size() == 1 && s.kernel_basis[0] == x;
        sols += " " + std::to_string(n) + ":" + (kernel_only ? "x" : (s.particular ? "particular+kernel" : "other"));
        ok = ok && kernel_only;
    }
    detail = verdicts + sols;
    return ok;
}

bool systq_regeneration(std::string& detail)
{
    bool ok = true;
    const auto hs = generate_systQ(ExactlySolvableOperator::checked({poly({0}), poly({0, -2}), poly({1})}));
    const auto& he = hs.equations.at(0);
    ok = ok && hs.equations.size() == 1 && he.terms.size() == 2 && he.terms[0].v == 0 &&
         he.terms[0].coeff == poly({2}) && he.terms[1].v == -2 && he.terms[1].coeff == poly({1, -1});

    const auto xs = generate_systQ(ExactlySolvableOperator::checked({poly({-1}), poly({0, 1})}));
    const auto& xe = xs.equations.at(0);
    ok = ok && xs.equations.size() == 1 && xe.n_start == 2 && xe.terms.size() == 2 && xe.terms[0].v == 1 &&
         xe.terms[0].i == 1 && xe.terms[0].coeff == poly({1}) && xe.terms[1].v == 0 && xe.terms[1].i == 0 &&
         xe.terms[1].coeff == poly({-1});

    const auto es = generate_systQ(ExactlySolvableOperator::checked({poly({0}), poly({0, 1}), poly({0, 0, 1})}));
    const auto& ee = es.equations.at(0);
    ok = ok && es.equations.size() == 1 && ee.n_start == 1 && ee.terms.size() == 1 && ee.terms[0].v == 0 &&
         ee.terms[0].coeff.degree() == 0;

    const auto hm = classical(K::Hermite);
    const auto scaled = hm.scaled(Rational(7) / 3);
    const bool member = check_membership(hs, scaled, 40).pass;
    auto mu = hm.first(45);
    mu[2] += 1;
    const auto bad = check_membership(hs, MomentSequence<Rational>::from_values(mu), 40);
    ok = ok && member && !bad.pass && bad.n == 2;
    detail = render(hs) + " | " + render(xs) + " | " + render(es) + " | scaled member " + (member ? "yes" : "no") +
             ", perturbed fails at n=" + (bad.n ? std::to_string(*bad.n) : std::string("none"));
    return ok;
}

bool oracle_equivalence(std::string& detail)
{
    std::mt19937_64 rng(2024);
    const auto ms = classical(K::Legendre);
    int agree = 0;
    int not_normal = 0;
    for (int t = 0; t < 50; ++t) {
        const auto op = random_operator(rng, 3);
        bool all = true;
        for (int n = 0; n <= 8; ++n) {
            const auto v = normality_report(op, ms, n).verdict;
            all = all && v == oracle::normality(op, ms, n);
            not_normal += v == Verdict::NotNormal ? 1 : 0;
        }
        agree += all ? 1 : 0;
    }
    detail = std::to_string(agree) + "/50 operators agree on n=0..8 (" + std::to_string(not_normal) +
             " non-normal indexes sampled)";
    return agree == 50;
}

bool zero_bound(std::string& detail)
{
    const auto ms = classical(K::Chebyshev1);
    const auto a = zero_bound_check(FactorizedOperator({{1, 1, poly({-2, 1})}}), ms, 1, 30);
    const auto b = zero_bound_check(FactorizedOperator({{2, 2, poly({-1, 0, 1})}}), ms, 1, 30);
    double ma = 0.0;
    double mb = 0.0;
    for (const auto& r : a.rows) {
        ma = std::max(ma, r.max_modulus);
    }
    for (const auto& r : b.rows) {
        mb = std::max(mb, r.max_modulus);
    }

    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> degree(1, 8);
    std::uniform_int_distribution<int> base_count(1, 3);
    auto disk = [&] { return std::polar(std::sqrt(radius(rng)), angle(rng)); };
    int lemma_pass = 0;
    for (int t = 0; t < 100; ++t) {
        Polynomial<Complex> p = Polynomial<Complex>::constant(1.0);
        const int d = degree(rng);
        for (int i = 0; i < d; ++i) {
            p = p * Polynomial<Complex>::linear_factor(disk());
        }
        std::vector<Complex> base;
        const int c = base_count(rng);
        for (int i = 0; i < c; ++i) {
            base.push_back(disk());
        }
        RootOptions opt;
        opt.seed = static_cast<std::uint64_t>(t);
        lemma_pass += iterated_integral_circle_test(p, base, 1.0, opt).pass ? 1 : 0;
    }
    detail = "((x-2)f)': R=" + fmt(a.hull.radius) + " max|z|=" + fmt(ma) + "; ((x^2-1)f)'': R=" + fmt(b.hull.radius) +
             " max|z|=" + fmt(mb) + "; iterated integrals " + std::to_string(lemma_pass) + "/100";
    return a.pass && b.pass && a.hull.radius == 6.0 && b.hull.radius == 9.0 && lemma_pass == 100;
}

bool ellipse_accumulation(std::string& detail)
{
    constexpr unsigned digits = 140;
    PrecisionGuard guard(digits);
    const auto ms = chebyshev1_extended(digits);
    const auto e = ellipse(2.0);
    std::vector<double> dist;
    for (int n : {25, 50, 100}) {
        const auto qn = polar_polynomial(ms, Extended(2), n);
        RootOptions opt;
        opt.polish = true;
        opt.polish_digits = 100;
        const auto rs = roots(qn, opt);
        double worst = 0.0;
        for (const auto& z : require_converged(rs).roots) {
            worst = std::max(worst, dist_to_E(z, e));
        }
        dist.push_back(worst);
    }
    detail = "max dist_to_E at n=25,50,100: " + fmt(dist[0]) + ", " + fmt(dist[1]) + ", " + fmt(dist[2]);
    return dist[2] <= 0.05 && dist[0] > dist[1] && dist[1] > dist[2];
}

bool coefficient_limits(std::string& detail)
{
    constexpr unsigned digits = 90;
    PrecisionGuard guard(digits);
    const BernsteinSzegoMeasure mu(Rational(-1), {Rational(2)});
    const auto xm = mu.extended_moments(80);
    const auto tail = chebyshev_tail(monic_orthogonal(xm, 40), 1);
    const double limit = -(2.0 - std::sqrt(3.0)) / 2.0;
    const double gap = std::abs(tail[1].convert_to<double>() - limit);
    const bool lead_exact = tail[0] == Extended(1);

    const auto ex = mu.exact_moments();
    double cross = 0.0;
    for (int n = 1; n <= 30; ++n) {
        const auto pe = monic_orthogonal(ex, n);
        const auto px = monic_orthogonal(xm, n);
        for (int k = 0; k <= n; ++k) {
            cross = std::max(cross, std::abs(pe.coeff(k).to_double() - px.coeff(k).convert_to<double>()));
        }
        const auto te = chebyshev_tail(pe, 1);
        const auto tx = chebyshev_tail(px, 1);
        cross = std::max(cross, std::abs(te.back().to_double() - tx.back().convert_to<double>()));
    }
    detail = "b_{40,39}=" + format_extended(tail[1], 12) + " gap=" + fmt(gap) + " lead exact " +
             (lead_exact ? "yes" : "no") + "; exact vs extended n<=30: " + fmt(cross);
    return gap <= 1e-2 && lead_exact && cross <= 1e-8;
}

bool strong_asymptotics(std::string& detail)
{
    PrecisionGuard guard(100);
    const BernsteinSzegoMeasure mu(Rational(-1), {Rational(2)});
    const AsymptoticModel model(mu);
    const auto p60 = monic_orthogonal(mu.extended_moments(90), 60);
    const auto dev =
        strong_asymptotics_deviation(model, p60, {Complex(0.0, 2.0), Complex(3.0, 0.0), Complex(-2.5, 0.0)});
    const double worst = *std::max_element(dev.begin(), dev.end());
    const double sq = model.szego_constant();
    const double cf = model.szego_constant_closed_form();
    detail = "max deviation " + fmt(worst) + "; Szego constant " + std::to_string(sq) + " vs closed form diff " +
             fmt(std::abs(sq - cf));
    return worst <= 1e-3 && std::abs(sq - cf) <= 1e-10;
}

bool sobolev(std::string& detail)
{
    const auto rep = sobolev_orthogonality_check(classical(K::Chebyshev1), Rational(2), 8);
    bool zero = true;
    for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) {
            zero = zero && (j == k || rep.gram(j, k) == 0);
        }
    }
    detail = std::string("off-diagonal entries ") + (zero ? "exactly 0" : "nonzero") + ", diagonal " +
             (rep.diagonal_positive ? "positive" : "not positive");
    return zero && rep.diagonal_positive;
}

bool degeneration(std::string& detail)
{
    const auto op = ExactlySolvableOperator::checked({poly({0}), poly({0, 1})});
    ClassicalSpec s;
    s.kind = K::Legendre;
    s.a = Rational(1);
    s.b = Rational(2);
    const auto ms = classical_moments(s);
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
        const auto sol = solve_index(op, ms, n);
        ok = ok && (!sol.particular || sol.particular->degree() < n);
    }
    detail = ok ? "no degree-n member for n=1..8" : "a degree-n member exists";
    return ok;
}

} // namespace

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "classical coincidence", 5.0, classical_coincidence},
        {2, "normality of f''-2xf'+2f, weight exp(-x^2)/(1+x^2)", 60.0, example_normality},
        {3, "difference systems", 10.0, systq_regeneration},
        {4, "normality oracle equivalence", 30.0, oracle_equivalence},
        {5, "zero bound 3^M d", 20.0, zero_bound},
        {6, "ellipse accumulation of polar zeros", 60.0, ellipse_accumulation},
        {7, "Chebyshev coefficient limits", 60.0, coefficient_limits},
        {8, "strong asymptotics", 60.0, strong_asymptotics},
        {9, "Sobolev orthogonality", 10.0, sobolev},
        {10, "degeneration of x f'", 10.0, degeneration},
    };
    return all;
}

CriterionResult run(const Criterion& c)
{
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
        r.pass = c.run(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.budget_seconds) {
        r.pass = false;
        r.detail += " (over the " + fmt(r.budget_seconds) + " s budget)";
    }
    return r;
}

std::string format(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << "  (" << std::fixed
       << std::setprecision(2) << r.seconds << " s)  " << r.detail;
    return os.str();
}

} // namespace opdop::acceptance
