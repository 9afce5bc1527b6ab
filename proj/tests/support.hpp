#ifndef OPDOP_TESTS_SUPPORT_HPP
#define OPDOP_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "opdop/operator.hpp"

namespace testsupport {

using opdop::Rational;
using opdop::RationalPoly;

inline Rational q(const char* s) { return opdop::parse_rational(s); }

inline RationalPoly poly(std::initializer_list<const char*> cs)
{
    std::vector<Rational> v;
    for (const char* c : cs) {
        v.push_back(q(c));
    }
    return RationalPoly(std::move(v));
}

/// f'' - 2x f'
inline opdop::ExactlySolvableOperator hermite_op()
{
    return opdop::ExactlySolvableOperator::checked({poly({"0"}), poly({"0", "-2"}), poly({"1"})});
}

/// f'' - 2x f' + 2f
inline opdop::ExactlySolvableOperator shifted_hermite_op()
{
    return opdop::ExactlySolvableOperator::checked({poly({"2"}), poly({"0", "-2"}), poly({"1"})});
}

/// x f' - f
inline opdop::ExactlySolvableOperator xdx_minus_one()
{
    return opdop::ExactlySolvableOperator::checked({poly({"-1"}), poly({"0", "1"})});
}

inline opdop::ExactlySolvableOperator identity_op()
{
    return opdop::ExactlySolvableOperator::checked({poly({"1"})});
}

/// Small rational in [-3,3] with denominator up to 3; zero with probability 1/4.
inline Rational small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> zero(0, 3);
    if (zero(rng) == 0) {
        return Rational(0);
    }
    std::uniform_int_distribution<int> den(1, 3);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-3 * d, 3 * d);
    return Rational(num(rng)) / Rational(d);
}

/// Random exactly solvable operator of order <= max_order with deg rho_k <= k.
inline opdop::ExactlySolvableOperator random_operator(std::mt19937_64& rng, int max_order)
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
        opdop::ExactlySolvableOperator op(std::move(rho));
        if (opdop::validate(op).empty()) {
            return op;
        }
    }
}

inline RationalPoly random_poly(std::mt19937_64& rng, int degree)
{
    std::vector<Rational> c;
    for (int j = 0; j <= degree; ++j) {
        c.push_back(small_rational(rng));
    }
    return RationalPoly(std::move(c));
}

} // namespace testsupport

#endif
