#include "opdop/operator.hpp"

#include <algorithm>
#include <cmath>

#include "opdop/zeros.hpp"

namespace opdop {

ExactlySolvableOperator::ExactlySolvableOperator(std::vector<RationalPoly> rho) : rho_(std::move(rho))
{
    if (rho_.empty()) {
        throw SpecError("an operator needs at least rho_0");
    }
}

ExactlySolvableOperator ExactlySolvableOperator::checked(std::vector<RationalPoly> rho)
{
    ExactlySolvableOperator op(std::move(rho));
    const auto v = validate(op);
    if (!v.empty()) {
        throw SpecError("operator is not exactly solvable: k=" + std::to_string(v.front().k) + ": " +
                        v.front().message);
    }
    return op;
}

Rational ExactlySolvableOperator::rho_coeff(int k, int j) const
{
    if (k < 0 || k > order()) {
        return Rational(0);
    }
    return rho(k).coeff(j);
}

std::vector<Violation> validate(const ExactlySolvableOperator& op)
{
    std::vector<Violation> out;
    bool equality = false;
    for (int k = 0; k <= op.order(); ++k) {
        const int d = op.rho(k).degree();
        if (d > k) {
            out.push_back({k, "deg rho_" + std::to_string(k) + " = " + std::to_string(d) + " exceeds " +
                                  std::to_string(k)});
        } else if (d == k) {
            equality = true;
        }
    }
    if (!equality) {
        out.push_back({-1, "no k with deg rho_k == k"});
    }
    return out;
}

Rational lambda(const ExactlySolvableOperator& op, long n)
{
    Rational s(0);
    for (int k = 0; k <= op.order() && k <= n; ++k) {
        const Rational r = op.rho_coeff(k, k);
        if (r != 0) {
            s += r * falling_factorial(n, k);
        }
    }
    return s;
}

RationalPoly lambda_polynomial(const ExactlySolvableOperator& op)
{
    // n!/(n-k)! = n (n-1) ... (n-k+1) as a polynomial in n.
    RationalPoly out;
    RationalPoly ff = RationalPoly::constant(Rational(1));
    for (int k = 0; k <= op.order(); ++k) {
        out += scale(ff, op.rho_coeff(k, k));
        ff = ff * RationalPoly::linear_factor(Rational(k));
    }
    return out;
}

std::vector<long> exceptional_indexes(const ExactlySolvableOperator& op)
{
    const RationalPoly lp = lambda_polynomial(op);
    if (lp.is_zero()) {
        throw SpecError("lambda_n vanishes identically; operator is not exactly solvable");
    }
    std::vector<long> out;
    if (lp.degree() == 0) {
        return out;
    }
    // Every root lies below 1 + max |c_i / c_lead|.
    Rational bound(0);
    for (int i = 0; i < lp.degree(); ++i) {
        bound = std::max(bound, Rational(abs(lp.coeff(i) / lp.leading())));
    }
    const long limit = static_cast<long>(std::ceil(bound.convert_to<double>())) + 1;
    for (long n = 0; n <= limit; ++n) {
        if (evaluate(lp, Rational(n)) == 0) {
            out.push_back(n);
        }
    }
    return out;
}

Rational OperatorMatrix::at(int i, int j) const
{
    if (i < 1 || j < 1 || i > size() || j > size()) {
        throw SpecError("operator matrix index out of range");
    }
    if (i > j) {
        return Rational(0);
    }
    // Column j holds rows 1..j.
    const auto offset = static_cast<std::size_t>((j - 1) * j / 2 + (i - 1));
    return packed_[offset];
}

Matrix<Rational> OperatorMatrix::dense() const
{
    const auto sz = static_cast<std::size_t>(size());
    Matrix<Rational> m(sz, sz);
    for (int j = 1; j <= size(); ++j) {
        for (int i = 1; i <= j; ++i) {
            m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = at(i, j);
        }
    }
    return m;
}

OperatorMatrix build_matrix(const ExactlySolvableOperator& op, int n)
{
    if (n < 0) {
        throw SpecError("matrix index must be nonnegative");
    }
    const int M = op.order();
    std::vector<Rational> packed;
    packed.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    for (int j = 1; j <= n + 1; ++j) {
        for (int i = 1; i <= j; ++i) {
            // a_{i,j} = sum_{k=j-i}^{min(M,j-1)} rho_{k,i+k-j} (j-1)!/(j-1-k)!
            Rational s(0);
            for (int k = j - i; k <= std::min(M, j - 1); ++k) {
                const Rational r = op.rho_coeff(k, i + k - j);
                if (r != 0) {
                    s += r * falling_factorial(j - 1, k);
                }
            }
            packed.push_back(s);
        }
    }
    return OperatorMatrix(n, std::move(packed));
}

bool has_only_real_roots(const RationalPoly& p, std::vector<double>* out)
{
    if (p.degree() < 1) {
        if (out) {
            out->clear();
        }
        return true;
    }
    // Work on the square-free part so that multiple roots do not smear into complex pairs.
    const RationalPoly sf = square_free_part(p);
    std::vector<double> reals;
    bool ok = true;
    if (sf.degree() >= 1) {
        RootOptions opt;
        opt.polish = true;
        const RootSet rs = require_converged(roots(sf, opt));
        for (const auto& z : rs.roots) {
            if (std::abs(z.imag()) >= 1e-9 * (1.0 + std::abs(z.real()))) {
                ok = false;
            }
            reals.push_back(z.real());
        }
    }
    std::sort(reals.begin(), reals.end());
    if (out) {
        *out = std::move(reals);
    }
    return ok;
}

FactorizedOperator::FactorizedOperator(std::vector<Stage> stages) : stages_(std::move(stages))
{
    if (stages_.empty()) {
        throw SpecError("a factorized operator needs at least one stage");
    }
    int sm = 0;
    int sn = 0;
    for (std::size_t j = 0; j < stages_.size(); ++j) {
        const Stage& s = stages_[j];
        const std::string where = "stage " + std::to_string(j + 1);
        if (s.m < 0 || s.n < 0) {
            throw SpecError(where + ": m and n must be nonnegative");
        }
        if (s.rho.degree() != s.m) {
            throw SpecError(where + ": deg rho must equal m");
        }
        if (!has_only_real_roots(s.rho)) {
            throw SpecError(where + ": rho has non-real roots");
        }
        sm += s.m;
        sn += s.n;
    }
    if (sm != sn) {
        throw SpecError("sum of m_j (" + std::to_string(sm) + ") differs from sum of n_j (" + std::to_string(sn) +
                        ")");
    }
    order_ = sn;
}

RationalPoly apply_stagewise(const FactorizedOperator& fop, const RationalPoly& p)
{
    RationalPoly f = p;
    for (const auto& s : fop.stages()) {
        f = derivative(s.rho * f, s.n);
    }
    return f;
}

ExactlySolvableOperator expand_factorized(const FactorizedOperator& fop)
{
    const int M = fop.order();
    std::vector<RationalPoly> rho;
    rho.reserve(static_cast<std::size_t>(M) + 1);
    // L[x^j] = sum_{k<=j} rho_k j!/(j-k)! x^{j-k} determines rho_j from the lower ones.
    for (int j = 0; j <= M; ++j) {
        RationalPoly r = apply_stagewise(fop, RationalPoly::monomial(j));
        for (int k = 0; k < j; ++k) {
            r -= rho[static_cast<std::size_t>(k)] * RationalPoly::monomial(j - k, falling_factorial(j, k));
        }
        rho.push_back(scale(r, Rational(1) / falling_factorial(j, j)));
    }
    ExactlySolvableOperator op(std::move(rho));
    if (!validate(op).empty()) {
        throw ExpansionMismatch("stagewise operator is not exactly solvable");
    }
    for (int j = 0; j <= 2 * M; ++j) {
        const RationalPoly x = RationalPoly::monomial(j);
        if (apply(op, x) != apply_stagewise(fop, x)) {
            throw ExpansionMismatch("expanded operator disagrees with the stages on x^" + std::to_string(j));
        }
    }
    return op;
}

FactorizedConditions factorized_conditions(const FactorizedOperator& fop)
{
    FactorizedConditions c;
    int sm = 0;
    int sn = 0;
    int partial = 0;
    c.unique_ok = true;
    for (std::size_t j = 0; j < fop.stages().size(); ++j) {
        const Stage& s = fop.stages()[j];
        sm += s.m;
        sn += s.n;
        partial += s.m - s.n;
        if (partial < 0) {
            c.unique_ok = false;
            c.j0 = static_cast<int>(j) + 1;
            c.n_prime = -partial - 1;
        }
    }
    c.exact_ok = sm == sn;
    return c;
}

HullBound hull_and_bound(const FactorizedOperator& fop, const std::vector<double>& extra_roots)
{
    std::vector<double> pts;
    for (const auto& s : fop.stages()) {
        std::vector<double> r;
        has_only_real_roots(s.rho, &r);
        pts.insert(pts.end(), r.begin(), r.end());
    }
    pts.insert(pts.end(), extra_roots.begin(), extra_roots.end());
    if (pts.empty()) {
        throw SpecError("hull of an empty root set; every stage has m_j = 0");
    }
    HullBound h;
    h.c_min = *std::min_element(pts.begin(), pts.end());
    h.c_max = *std::max_element(pts.begin(), pts.end());
    h.d = std::max({1.0, std::abs(h.c_min), std::abs(h.c_max)});
    h.radius = std::pow(3.0, fop.order()) * h.d;
    return h;
}

} // namespace opdop
