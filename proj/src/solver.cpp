#include "opdop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace opdop {

namespace {

template <class T>
T from_rational(const Rational& x)
{
    return scalar_cast<T>(x);
}

template <class T>
double mag(const T& x)
{
    return ScalarTraits<T>::magnitude(x);
}

/// Zero test: exact, or |x| <= kFloatTolerance * scale.
template <class T>
bool negligible(const T& x, double scale)
{
    if constexpr (is_exact_v<T>) {
        return x == T(0);
    } else {
        return mag(x) <= kFloatTolerance * scale;
    }
}

template <class T>
Polynomial<T> poly_from(const std::vector<Rational>& v)
{
    std::vector<T> c;
    c.reserve(v.size());
    for (const auto& x : v) {
        c.push_back(from_rational<T>(x));
    }
    return Polynomial<T>(std::move(c));
}

/// Solves A alpha = rhs with alpha_n = 1 by back-substitution; free coefficients at zero
/// diagonal entries copy `anchor`. Returns nothing when a zero row is inconsistent.
template <class T>
std::optional<std::vector<T>> back_substitute(const OperatorMatrix& a, const std::vector<T>& rhs,
                                              const std::vector<T>& anchor)
{
    const int sz = a.size();
    std::vector<T> alpha(static_cast<std::size_t>(sz), T(0));
    alpha.back() = T(1);
    for (int i = sz - 2; i >= 0; --i) {
        T s = rhs[static_cast<std::size_t>(i)];
        double scale = mag(s);
        for (int j = i + 1; j < sz; ++j) {
            const Rational& aij = a.at(i + 1, j + 1);
            if (aij == 0) {
                continue;
            }
            const T t = from_rational<T>(aij) * alpha[static_cast<std::size_t>(j)];
            s -= t;
            scale += mag(t);
        }
        const Rational& d = a.at(i + 1, i + 1);
        if (d != 0) {
            alpha[static_cast<std::size_t>(i)] = s / from_rational<T>(d);
        } else if (negligible(s, scale)) {
            alpha[static_cast<std::size_t>(i)] = anchor[static_cast<std::size_t>(i)];
        } else {
            return std::nullopt;
        }
    }
    return alpha;
}

/// General solve through the exact RREF of A, with the transform applied to rhs.
template <class T>
std::optional<std::vector<T>> rref_solve(const Matrix<Rational>& a, const std::vector<T>& rhs,
                                         const std::vector<T>& anchor)
{
    const Rref<Rational> rr = rref(a);
    const std::size_t n = a.cols();
    std::vector<T> eb(a.rows(), T(0));
    std::vector<double> scale(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.rows(); ++j) {
            if (rr.transform(i, j) != 0) {
                const T t = from_rational<T>(rr.transform(i, j)) * rhs[j];
                eb[i] += t;
                scale[i] += mag(t);
            }
        }
    }
    const std::size_t rank = rr.pivot_cols.size();
    for (std::size_t i = rank; i < a.rows(); ++i) {
        if (!negligible(eb[i], scale[i])) {
            return std::nullopt;
        }
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : rr.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<T> alpha(n, T(0));
    for (std::size_t f = 0; f < n; ++f) {
        if (!is_pivot[f]) {
            alpha[f] = anchor[f];
        }
    }
    for (std::size_t k = 0; k < rank; ++k) {
        T v = eb[k];
        for (std::size_t f = 0; f < n; ++f) {
            if (!is_pivot[f] && rr.reduced(k, f) != 0) {
                v -= from_rational<T>(rr.reduced(k, f)) * alpha[f];
            }
        }
        alpha[rr.pivot_cols[k]] = v;
    }
    return alpha;
}

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Normal:
        return "normal";
    case Verdict::NotNormal:
        return "not_normal";
    case Verdict::Indeterminate:
        return "indeterminate";
    }
    return "unknown";
}

template <class T>
SolutionSet<T> solve_index(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n)
{
    if (n < 0) {
        throw SpecError("index must be nonnegative");
    }
    SolutionSet<T> s;
    s.n = n;
    s.lambda_n = lambda(op, n);
    s.p_n = monic_orthogonal(ms, n);
    const OperatorMatrix a = build_matrix(op, n);
    const Matrix<Rational> dense = a.dense();

    // Null-space vectors from the RREF carry a 1 at their free column and zeros above it.
    for (const auto& v : null_space(dense)) {
        s.kernel_basis.push_back(poly_from<T>(v));
    }

    if (s.lambda_n != 0) {
        const T lam = from_rational<T>(s.lambda_n);
        std::vector<T> beta(static_cast<std::size_t>(n) + 1);
        std::vector<T> rhs(beta.size());
        for (int i = 0; i <= n; ++i) {
            beta[static_cast<std::size_t>(i)] = s.p_n.coeff(i);
            rhs[static_cast<std::size_t>(i)] = lam * s.p_n.coeff(i);
        }
        auto alpha = back_substitute(a, rhs, beta);
        if (!alpha) {
            alpha = rref_solve(dense, rhs, beta);
        }
        if (alpha) {
            s.particular = Polynomial<T>(std::move(*alpha));
        }
    }
    return s;
}

template <class T>
double orthogonality_residual(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, const Polynomial<T>& q,
                              int n)
{
    const Polynomial<T> lq = apply(op, q);
    if (lq.is_zero() || n <= 0) {
        return 0.0;
    }
    const auto mu = ms.first(static_cast<std::size_t>(lq.degree() + n));
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        T v(0);
        double scale = 0.0;
        for (int i = 0; i <= lq.degree(); ++i) {
            const T t = lq.coeff(i) * mu[static_cast<std::size_t>(i + j)];
            v += t;
            scale += mag(t);
        }
        if (v != T(0)) {
            worst = std::max(worst, scale > 0 ? mag(v) / scale : 1.0);
        }
    }
    return worst;
}

template <class T>
NormalityReport<T> normality_report(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n)
{
    if (n < 0) {
        throw SpecError("index must be nonnegative");
    }
    NormalityReport<T> r;
    r.n = n;
    for (int k = 0; k <= n; ++k) {
        if (lambda(op, k) == 0) {
            r.drop_indexes.push_back(k);
        }
    }
    if (r.drop_indexes.empty()) {
        r.branch = "i";
        r.verdict = Verdict::Normal;
        return r;
    }
    r.branch = "ii";
    const int nk = r.drop_indexes.back();
    const OperatorMatrix a = build_matrix(op, n);

    // ii.1 on the coefficient columns of L[1], ..., L[x^{n_k}].
    Matrix<Rational> cols(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(nk) + 1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= nk; ++j) {
            cols(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a.at(i + 1, j + 1);
        }
    }
    r.rank_condition_ok = exact_rank(cols) == static_cast<std::size_t>(nk);

    if (nk < n) {
        // gamma B = -(a_{n_k+1, n_k+2}, ..., a_{n_k+1, n+1}); B is upper triangular with
        // diagonal lambda_{n_k+1..n}, all nonzero because n_k is the largest drop.
        const int m = n - nk;
        std::vector<Rational> gamma(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            Rational s = -a.at(nk + 1, nk + 2 + j);
            for (int i = 0; i < j; ++i) {
                s -= gamma[static_cast<std::size_t>(i)] * a.at(nk + 2 + i, nk + 2 + j);
            }
            gamma[static_cast<std::size_t>(j)] = s / a.at(nk + 2 + j, nk + 2 + j);
        }
        const Polynomial<T> pn = monic_orthogonal(ms, n);
        T value = pn.coeff(nk);
        double scale = mag(value);
        for (int i = 0; i < m; ++i) {
            const T g = from_rational<T>(gamma[static_cast<std::size_t>(i)]);
            r.gamma.push_back(g);
            const T t = g * pn.coeff(nk + 1 + i);
            value += t;
            scale += mag(t);
        }
        r.moment_value = value;
        if constexpr (is_exact_v<T>) {
            r.moment_condition_ok = value != 0;
        } else {
            const double rel = scale > 0 ? mag(value) / scale : 0.0;
            if (rel <= kFloatTolerance) {
                r.moment_condition_ok = false;
            } else if (rel > 100.0 * kFloatTolerance) {
                r.moment_condition_ok = true;
            }
        }
    }

    if (!r.rank_condition_ok) {
        r.verdict = Verdict::NotNormal;
    } else if (nk == n) {
        r.verdict = Verdict::Normal;
    } else if (!r.moment_condition_ok) {
        r.verdict = Verdict::Indeterminate;
    } else {
        r.verdict = *r.moment_condition_ok ? Verdict::Normal : Verdict::NotNormal;
    }
    return r;
}

template <class T>
Polynomial<T> unique_with_constraints(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int n,
                                      const std::vector<T>& points)
{
    SolutionSet<T> s = solve_index(op, ms, n);
    Polynomial<T> base;
    std::vector<Polynomial<T>> kernel = s.kernel_basis;
    if (s.particular) {
        base = *s.particular;
    } else if (!kernel.empty() && kernel.back().degree() == n) {
        base = kernel.back();
        kernel.pop_back();
    } else {
        throw MathError("index " + std::to_string(n) + " has no monic solution of degree n");
    }
    if (points.size() != kernel.size()) {
        throw WrongPointCount("index " + std::to_string(n) + " needs " + std::to_string(kernel.size()) +
                              " interpolation points, got " + std::to_string(points.size()));
    }
    if (kernel.empty()) {
        return base;
    }

    // Confluent rows: the r-th repetition of a point pins the r-th derivative.
    const std::size_t d = kernel.size();
    Matrix<T> m(d, d);
    std::vector<T> rhs(d);
    std::vector<std::pair<T, int>> rows;
    for (std::size_t r = 0; r < d; ++r) {
        int order = 0;
        for (std::size_t q = 0; q < r; ++q) {
            if (points[q] == points[r]) {
                ++order;
            }
        }
        rows.emplace_back(points[r], order);
    }
    double hadamard = 1.0;
    for (std::size_t r = 0; r < d; ++r) {
        const auto& [x, order] = rows[r];
        double norm = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            m(r, c) = evaluate(derivative(kernel[c], order), x);
            norm += mag(m(r, c)) * mag(m(r, c));
        }
        hadamard *= std::sqrt(norm);
        rhs[r] = -evaluate(derivative(base, order), x);
    }
    const T det = determinant(m);
    bool singular = false;
    if constexpr (is_exact_v<T>) {
        singular = det == T(0);
    } else {
        singular = mag(det) <= kFloatTolerance * hadamard;
    }
    if (singular) {
        throw NotInterpolating("kernel basis is not an interpolating system for the given points");
    }
    const std::vector<T> c = solve_linear(std::move(m), std::move(rhs));
    Polynomial<T> q = base;
    for (std::size_t i = 0; i < d; ++i) {
        q += scale(kernel[i], c[i]);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Difference systems

namespace {

/// n(n-1)...(n-k+1) as a polynomial in n.
RationalPoly falling_poly(int k)
{
    RationalPoly p = RationalPoly::constant(Rational(1));
    for (int j = 0; j < k; ++j) {
        p = p * RationalPoly::linear_factor(Rational(j));
    }
    return p;
}

Integer integer_gcd(Integer a, Integer b)
{
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer r = a % b;
        a = b;
        b = r;
    }
    return a;
}

/// Positive rational c such that every coefficient of every poly divided by c is an integer
/// and the integers have gcd 1.
Rational content(const std::vector<SystemTerm>& terms)
{
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& t : terms) {
        for (const auto& c : t.coeff.coeffs()) {
            if (c == 0) {
                continue;
            }
            num_gcd = integer_gcd(num_gcd, Integer(numerator(c)));
            const Integer d = Integer(denominator(c));
            den_lcm = den_lcm / integer_gcd(den_lcm, d) * d;
        }
    }
    if (num_gcd == 0) {
        return Rational(1);
    }
    return Rational(num_gcd) / Rational(den_lcm);
}

bool term_order(const SystemTerm& a, const SystemTerm& b)
{
    return a.v != b.v ? a.v > b.v : a.i > b.i;
}

std::string mu_atom(long index) { return "mu[" + std::to_string(index) + "]"; }

std::string mu_symbolic(int v)
{
    if (v == 0) {
        return "mu[n]";
    }
    return "mu[n" + std::string(v > 0 ? "+" : "-") + std::to_string(std::abs(v)) + "]";
}

/// Delta_{nj,i} in terms of moments where it has a short form.
std::string delta_atom(long nj, int i)
{
    if (nj == 0) {
        return mu_atom(0);
    }
    if (nj == 1) {
        return mu_atom(i == 0 ? 1 : 0);
    }
    return "D[" + std::to_string(nj) + "," + std::to_string(i) + "]";
}

/// "n^2-3*n+1"
std::string poly_in_n(const RationalPoly& p)
{
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational c = p.coeff(k);
        if (c == 0) {
            continue;
        }
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? "-" : "+";
        }
        std::string mono = k == 0 ? "" : (k == 1 ? "n" : "n^" + std::to_string(k));
        if (mono.empty()) {
            out += format_rational(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += format_rational(a) + "*" + mono;
        }
    }
    return out.empty() ? "0" : out;
}

/// Joins signed products into "a - b + c = 0".
std::string join_terms(const std::vector<std::pair<Rational, std::string>>& scalar_terms)
{
    std::string out;
    for (const auto& [c, body] : scalar_terms) {
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        out += a == 1 ? body : format_rational(a) + "*" + body;
    }
    return out + " = 0";
}

bool only_top_minor(const DifferenceEquation& eq)
{
    return std::all_of(eq.terms.begin(), eq.terms.end(), [&](const SystemTerm& t) { return t.i == eq.nj; });
}

std::string render_general(const DifferenceEquation& eq)
{
    const bool drop_delta = only_top_minor(eq);
    std::string out;
    for (const auto& t : eq.terms) {
        RationalPoly c = t.coeff;
        const bool neg = c.leading() < 0;
        if (neg) {
            c = -c;
        }
        std::string body = drop_delta ? mu_symbolic(t.v) : delta_atom(eq.nj, t.i) + "*" + mu_symbolic(t.v);
        std::string factor;
        if (c.degree() == 0) {
            factor = c.leading() == 1 ? "" : format_rational(c.leading()) + "*";
        } else {
            const bool single = std::count_if(c.coeffs().begin(), c.coeffs().end(),
                                              [](const Rational& x) { return x != 0; }) == 1;
            factor = single ? poly_in_n(c) + "*" : "(" + poly_in_n(c) + ")*";
        }
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        out += factor + body;
    }
    return out + " = 0 for n >= " + std::to_string(eq.n_start);
}

/// Concrete instance at n, merged over identical moment products; empty when trivial.
std::string render_instance(const DifferenceEquation& eq, long n)
{
    std::map<std::vector<std::string>, Rational> merged;
    for (const auto& t : eq.raw) {
        if (n + t.v < 0) {
            continue;
        }
        const Rational c = evaluate(t.coeff, Rational(n));
        if (c == 0) {
            continue;
        }
        std::vector<std::string> key = {delta_atom(eq.nj, t.i), mu_atom(n + t.v)};
        std::sort(key.begin(), key.end());
        merged[key] += c;
    }
    std::vector<std::pair<std::vector<std::string>, Rational>> items;
    for (const auto& [k, c] : merged) {
        if (c != 0) {
            items.emplace_back(k, c);
        }
    }
    if (items.empty()) {
        return {};
    }
    // Delta_{nj,nj} is a positive Hankel determinant; drop it when it divides every product.
    const std::string top = delta_atom(eq.nj, static_cast<int>(eq.nj));
    const bool common = std::all_of(items.begin(), items.end(), [&](const auto& it) {
        return std::find(it.first.begin(), it.first.end(), top) != it.first.end();
    });
    std::vector<SystemTerm> for_content;
    for (const auto& it : items) {
        for_content.push_back({0, 0, RationalPoly::constant(it.second)});
    }
    Rational cont = content(for_content);
    if (items.front().second < 0) {
        cont = -cont;
    }
    std::vector<std::pair<Rational, std::string>> terms;
    for (auto& [k, c] : items) {
        std::vector<std::string> atoms = k;
        if (common) {
            atoms.erase(std::find(atoms.begin(), atoms.end(), top));
        }
        std::string body;
        for (const auto& a : atoms) {
            body += (body.empty() ? "" : "*") + a;
        }
        terms.emplace_back(c / cont, body);
    }
    return join_terms(terms);
}

/// Delta_{nj,i} for 0 <= i <= nj. Unlike hankel_minors no positivity is required: the
/// equations are identities in the moments.
template <class T>
std::vector<T> minors_of(const MomentSequence<T>& ms, long nj)
{
    if (nj == 0) {
        return {ms.at(0)};
    }
    const auto rows = static_cast<std::size_t>(nj);
    const auto mu = ms.first(2 * rows);
    Matrix<T> block(rows, rows + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c <= rows; ++c) {
            block(r, c) = mu[r + c];
        }
    }
    std::vector<T> out;
    for (std::size_t i = 0; i <= rows; ++i) {
        out.push_back(determinant(delete_column(block, i)));
    }
    return out;
}

template <class T>
T evaluate_with_minors(const DifferenceEquation& eq, const std::vector<T>& minors, const MomentSequence<T>& ms,
                       long n, double* abs_sum)
{
    T sum(0);
    double scale = 0.0;
    for (const auto& t : eq.raw) {
        if (n + t.v < 0) {
            continue;
        }
        const Rational c = evaluate(t.coeff, Rational(n));
        if (c == 0) {
            continue;
        }
        const T term = from_rational<T>(c) * minors[static_cast<std::size_t>(t.i)] *
                       ms.at(static_cast<std::size_t>(n + t.v));
        sum += term;
        scale += mag(term);
    }
    if (abs_sum) {
        *abs_sum = scale;
    }
    return sum;
}

} // namespace

DifferenceSystem generate_systQ(const ExactlySolvableOperator& op)
{
    DifferenceSystem ds;
    ds.order = op.order();
    ds.S = exceptional_indexes(op);
    const int M = op.order();
    std::vector<RationalPoly> ff;
    for (int k = 0; k <= M; ++k) {
        ff.push_back(falling_poly(k));
    }
    const long last_exceptional = ds.S.empty() ? -1 : ds.S.back();
    for (const long nj : ds.S) {
        DifferenceEquation eq;
        eq.nj = nj;
        for (int v = -M; v <= nj; ++v) {
            for (int i = 0; i <= nj; ++i) {
                // Offset v = u + i where L[x^n] contributes rho_{k,u+k} n!/(n-k)! x^{n+u}.
                RationalPoly c;
                for (int k = 0; k <= M; ++k) {
                    const Rational r = op.rho_coeff(k, v - i + k);
                    if (r != 0) {
                        c += scale(ff[static_cast<std::size_t>(k)], r);
                    }
                }
                if ((i + nj) % 2 != 0) {
                    c = -c;
                }
                if (!c.is_zero()) {
                    eq.raw.push_back({v, i, c});
                }
            }
        }
        std::sort(eq.raw.begin(), eq.raw.end(), term_order);
        if (eq.raw.empty()) {
            eq.common_factor = RationalPoly::constant(Rational(1));
            eq.n_start = last_exceptional + 1;
            ds.equations.push_back(std::move(eq));
            continue;
        }
        RationalPoly g = eq.raw.front().coeff;
        for (const auto& t : eq.raw) {
            g = gcd(g, t.coeff);
        }
        g = make_monic(g);
        std::vector<SystemTerm> reduced;
        for (const auto& t : eq.raw) {
            reduced.push_back({t.v, t.i, div_exact(t.coeff, g)});
        }
        Rational c = content(reduced);
        if (reduced.front().coeff.leading() < 0) {
            c = -c;
        }
        for (auto& t : reduced) {
            t.coeff = scale(t.coeff, Rational(1) / c);
        }
        eq.terms = std::move(reduced);
        eq.common_factor = scale(g, c);
        long n_min = 0;
        for (const auto& t : eq.raw) {
            n_min = std::max<long>(n_min, -t.v);
        }
        eq.n_start = std::max(n_min, last_exceptional + 1);
        ds.equations.push_back(std::move(eq));
    }
    return ds;
}

std::string render(const DifferenceEquation& eq)
{
    if (eq.terms.empty()) {
        return "0 = 0 (index " + std::to_string(eq.nj) + ")";
    }
    std::string out = render_general(eq);
    for (long n = 0; n < eq.n_start; ++n) {
        if (n == eq.nj) {
            continue;
        }
        const std::string inst = render_instance(eq, n);
        if (!inst.empty()) {
            out += "; " + inst;
        }
    }
    return out;
}

std::string render(const DifferenceSystem& ds)
{
    std::string out;
    for (const auto& eq : ds.equations) {
        if (!out.empty()) {
            out += "\n";
        }
        out += render(eq);
    }
    return out;
}

template <class T>
T evaluate_equation(const DifferenceEquation& eq, const MomentSequence<T>& ms, long n, double* abs_sum)
{
    const auto minors = minors_of(ms, eq.nj);
    return evaluate_with_minors(eq, minors, ms, n, abs_sum);
}

template <class T>
MembershipResult<T> check_membership(const DifferenceSystem& ds, const MomentSequence<T>& ms, long N)
{
    MembershipResult<T> out;
    const std::set<long> S(ds.S.begin(), ds.S.end());
    for (const auto& eq : ds.equations) {
        const auto minors = minors_of(ms, eq.nj);
        for (long n = 0; n <= N; ++n) {
            if (S.count(n)) {
                continue;
            }
            double scale = 0.0;
            const T v = evaluate_with_minors(eq, minors, ms, n, &scale);
            if (!negligible(v, scale)) {
                out.pass = false;
                out.nj = eq.nj;
                out.n = n;
                out.value = v;
                return out;
            }
        }
    }
    return out;
}

template <class T>
ExistenceResult<T> classical_existence(const ClassicalSpec& classical, const MomentSequence<T>& ms, int Nmax)
{
    if (Nmax < 0) {
        throw SpecError("horizon must be nonnegative");
    }
    const auto star = classical_moments(classical).first(static_cast<std::size_t>(Nmax) + 1);
    ExistenceResult<T> out;
    for (int n = 0; n <= Nmax; ++n) {
        const Polynomial<T> p = monic_orthogonal(ms, n);
        T v(0);
        double scale = 0.0;
        for (int i = 0; i <= n; ++i) {
            const T t = p.coeff(i) * from_rational<T>(star[static_cast<std::size_t>(i)]);
            v += t;
            scale += mag(t);
        }
        out.values.push_back(v);
        out.nonzero.push_back(!negligible(v, scale));
    }
    if (!out.nonzero.back()) {
        for (int n = Nmax; n >= 0; --n) {
            if (out.nonzero[static_cast<std::size_t>(n)]) {
                out.threshold = n;
                break;
            }
        }
    }
    return out;
}

template <class T>
BilinearFormReport<T> bilinear_form_check(const ExactlySolvableOperator& op, const MomentSequence<T>& ms, int N)
{
    if (N < 0) {
        throw SpecError("order must be nonnegative");
    }
    const auto sz = static_cast<std::size_t>(N) + 1;
    BilinearFormReport<T> r;
    r.gram = Matrix<T>(sz, sz);
    for (int i = 0; i <= N; ++i) {
        const Polynomial<T> li = apply(op, Polynomial<T>::monomial(i));
        for (int j = 0; j <= N; ++j) {
            r.gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = moment_functional(ms, li, j);
        }
    }
    for (std::size_t i = 0; i < sz && r.symmetric; ++i) {
        for (std::size_t j = i + 1; j < sz; ++j) {
            const T d = r.gram(i, j) - r.gram(j, i);
            if (!negligible(d, std::max(mag(r.gram(i, j)), mag(r.gram(j, i))))) {
                r.symmetric = false;
                r.witness = {static_cast<int>(i), static_cast<int>(j)};
                break;
            }
        }
    }
    for (std::size_t k = 1; k <= sz; ++k) {
        Matrix<T> lead(k, k);
        double hadamard = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            double norm = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                lead(i, j) = r.gram(i, j);
                norm += mag(lead(i, j)) * mag(lead(i, j));
            }
            hadamard *= std::sqrt(norm);
        }
        const T det = determinant(lead);
        bool positive = det > T(0);
        if constexpr (!is_exact_v<T>) {
            positive = positive && mag(det) > kFloatTolerance * hadamard;
        }
        if (!positive) {
            r.positive_definite = false;
            if (!r.witness) {
                r.witness = {static_cast<int>(k) - 1, static_cast<int>(k) - 1};
            }
            break;
        }
    }
    return r;
}

#define OPDOP_INSTANTIATE_SOLVER(T)                                                                                   \
    template SolutionSet<T> solve_index<T>(const ExactlySolvableOperator&, const MomentSequence<T>&, int);            \
    template double orthogonality_residual<T>(const ExactlySolvableOperator&, const MomentSequence<T>&,              \
                                              const Polynomial<T>&, int);                                             \
    template NormalityReport<T> normality_report<T>(const ExactlySolvableOperator&, const MomentSequence<T>&, int);   \
    template Polynomial<T> unique_with_constraints<T>(const ExactlySolvableOperator&, const MomentSequence<T>&, int,  \
                                                      const std::vector<T>&);                                         \
    template T evaluate_equation<T>(const DifferenceEquation&, const MomentSequence<T>&, long, double*);             \
    template MembershipResult<T> check_membership<T>(const DifferenceSystem&, const MomentSequence<T>&, long);        \
    template ExistenceResult<T> classical_existence<T>(const ClassicalSpec&, const MomentSequence<T>&, int);          \
    template BilinearFormReport<T> bilinear_form_check<T>(const ExactlySolvableOperator&, const MomentSequence<T>&, int);

OPDOP_INSTANTIATE_SOLVER(Rational)
OPDOP_INSTANTIATE_SOLVER(double)
OPDOP_INSTANTIATE_SOLVER(Extended)

} // namespace opdop
