#include "opdop/json_io.hpp"

#include <fstream>
#include <sstream>

#include "opdop/errors.hpp"

namespace opdop {

Json load_json(const std::string& path_or_inline)
{
    const auto first = path_or_inline.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && (path_or_inline[first] == '{' || path_or_inline[first] == '[')) {
        text = path_or_inline;
    } else {
        std::ifstream in(path_or_inline);
        if (!in) {
            throw SpecError("cannot open " + path_or_inline);
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw SpecError(std::string("malformed JSON: ") + e.what());
    }
}

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw SpecError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

Rational rational_from(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    throw SpecError("expected a rational given as a string or an integer, got " + j.dump());
}

double double_from(const Json& j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_double(j.get<std::string>());
    }
    throw SpecError("expected a number, got " + j.dump());
}

template <class F>
auto with_spec_errors(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Json::exception& e) {
        throw SpecError(std::string("malformed document: ") + e.what());
    }
}

} // namespace

template <>
Json scalar_to_json(const Rational& x)
{
    return format_rational(x);
}

template <>
Json scalar_to_json(const double& x)
{
    return x;
}

template <>
Json scalar_to_json(const Extended& x)
{
    return format_extended(x, static_cast<int>(x.precision()) + 3);
}

template <>
Json scalar_to_json(const Complex& x)
{
    return Json::array({x.real(), x.imag()});
}

template <>
Rational scalar_from_json(const Json& j)
{
    return rational_from(j);
}

template <>
double scalar_from_json(const Json& j)
{
    return double_from(j);
}

template <>
Extended scalar_from_json(const Json& j)
{
    if (j.is_string()) {
        return Extended(j.get<std::string>());
    }
    return Extended(double_from(j));
}

template <>
Complex scalar_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2) {
        throw SpecError("a complex value is written as [re, im]");
    }
    return {double_from(j[0]), double_from(j[1])};
}

template <class T>
Json to_json(const Polynomial<T>& p)
{
    Json a = Json::array();
    for (const auto& c : p.coeffs()) {
        a.push_back(scalar_to_json(c));
    }
    return a;
}

template <class T>
Polynomial<T> polynomial_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw SpecError("a polynomial is an array of ascending coefficients");
    }
    std::vector<T> c;
    for (const auto& x : j) {
        c.push_back(scalar_from_json<T>(x));
    }
    return Polynomial<T>(std::move(c));
}

Json to_json(const ExactlySolvableOperator& op)
{
    Json rho = Json::array();
    for (const auto& p : op.rho()) {
        rho.push_back(to_json(p));
    }
    return {{"schema", kSchema}, {"rho", rho}};
}

Json to_json(const FactorizedOperator& fop)
{
    Json stages = Json::array();
    for (const auto& s : fop.stages()) {
        stages.push_back({{"m", s.m}, {"n", s.n}, {"rho", to_json(s.rho)}});
    }
    return {{"schema", kSchema}, {"stages", stages}};
}

std::optional<FactorizedOperator> factorized_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("stages")) {
        return std::nullopt;
    }
    return with_spec_errors([&] {
        std::vector<Stage> stages;
        for (const auto& s : j.at("stages")) {
            stages.push_back({field(s, "m").get<int>(), field(s, "n").get<int>(),
                              polynomial_from_json<Rational>(field(s, "rho"))});
        }
        return std::optional<FactorizedOperator>(FactorizedOperator(std::move(stages)));
    });
}

ExactlySolvableOperator operator_from_json(const Json& j)
{
    if (auto fop = factorized_from_json(j)) {
        return expand_factorized(*fop);
    }
    return with_spec_errors([&] {
        std::vector<RationalPoly> rho;
        for (const auto& p : field(j, "rho")) {
            rho.push_back(polynomial_from_json<Rational>(p));
        }
        return ExactlySolvableOperator::checked(std::move(rho));
    });
}

bool MeasureSpec::rational() const
{
    return type != "weight" && type != "bernstein-szego";
}

BernsteinSzegoMeasure MeasureSpec::bernstein_szego() const
{
    if (type == "chebyshev1") {
        return BernsteinSzegoMeasure(Rational(1), {});
    }
    if (type != "bernstein-szego") {
        throw SpecError("measure \"" + type + "\" is not of the form d mu_T / rho");
    }
    return BernsteinSzegoMeasure(r, nu);
}

Json to_json(const MeasureSpec& m)
{
    Json j = {{"schema", kSchema}, {"type", m.type}};
    if (m.type == "laguerre") {
        j["alpha"] = format_rational(m.classical.alpha);
    } else if (m.type == "jacobi") {
        j["alpha"] = format_rational(m.classical.alpha);
        j["beta"] = format_rational(m.classical.beta);
    } else if (m.type == "legendre") {
        j["a"] = format_rational(m.classical.a);
        j["b"] = format_rational(m.classical.b);
    } else if (m.type == "moments") {
        Json v = Json::array();
        for (const auto& x : m.values) {
            v.push_back(format_rational(x));
        }
        j["values"] = v;
    } else if (m.type == "weight") {
        j["w"] = m.weight;
        j["a"] = format_double(m.a);
        j["b"] = format_double(m.b);
        j["endpoint_singular"] = m.endpoint_singular;
    } else if (m.type == "bernstein-szego") {
        j["r"] = format_rational(m.r);
        Json v = Json::array();
        for (const auto& x : m.nu) {
            v.push_back(format_rational(x));
        }
        j["nu"] = v;
    }
    return j;
}

MeasureSpec measure_from_json(const Json& j)
{
    return with_spec_errors([&] {
        MeasureSpec m;
        m.type = field(j, "type").get<std::string>();
        using K = ClassicalSpec::Kind;
        if (m.type == "hermite") {
            m.classical.kind = K::Hermite;
        } else if (m.type == "laguerre") {
            m.classical.kind = K::Laguerre;
            m.classical.alpha = j.contains("alpha") ? rational_from(j.at("alpha")) : Rational(0);
        } else if (m.type == "jacobi") {
            m.classical.kind = K::Jacobi;
            m.classical.alpha = j.contains("alpha") ? rational_from(j.at("alpha")) : Rational(0);
            m.classical.beta = j.contains("beta") ? rational_from(j.at("beta")) : Rational(0);
        } else if (m.type == "chebyshev1") {
            m.classical.kind = K::Chebyshev1;
        } else if (m.type == "legendre") {
            m.classical.kind = K::Legendre;
            m.classical.a = j.contains("a") ? rational_from(j.at("a")) : Rational(-1);
            m.classical.b = j.contains("b") ? rational_from(j.at("b")) : Rational(1);
        } else if (m.type == "moments") {
            for (const auto& x : field(j, "values")) {
                m.values.push_back(rational_from(x));
            }
        } else if (m.type == "weight") {
            m.weight = field(j, "w").get<std::string>();
            WeightExpr::parse(m.weight);
            m.a = j.contains("a") ? double_from(j.at("a")) : -1.0;
            m.b = j.contains("b") ? double_from(j.at("b")) : 1.0;
            m.endpoint_singular = j.value("endpoint_singular", false);
        } else if (m.type == "bernstein-szego") {
            m.r = j.contains("r") ? rational_from(j.at("r")) : Rational(1);
            for (const auto& x : field(j, "nu")) {
                m.nu.push_back(rational_from(x));
            }
            m.bernstein_szego();
        } else {
            throw SpecError("unknown measure type \"" + m.type + "\"");
        }
        if (m.rational() && m.type != "moments") {
            classical_moments(m.classical);
        }
        return m;
    });
}

MomentSequence<Rational> exact_moments(const MeasureSpec& m)
{
    if (!m.rational()) {
        throw SpecError("exact mode needs a measure with rational moments");
    }
    if (m.type == "moments") {
        return MomentSequence<Rational>::from_values(m.values, "explicit moments");
    }
    return classical_moments(m.classical);
}

namespace {

WeightSpec weight_spec(const MeasureSpec& m, double tol)
{
    WeightSpec w;
    w.w = WeightExpr::parse(m.weight);
    w.a = m.a;
    w.b = m.b;
    w.endpoint_singular = m.endpoint_singular;
    w.tol = tol;
    return w;
}

} // namespace

MomentSequence<double> double_moments(const MeasureSpec& m, double tol)
{
    if (m.type == "weight") {
        return weight_moments(weight_spec(m, tol));
    }
    if (m.type == "bernstein-szego") {
        const auto ext = m.bernstein_szego().extended_moments(30);
        return MomentSequence<double>("chebyshev1 / rho", "divided by pi",
                                      [ext](std::size_t k, const std::vector<double>&) {
                                          return ext.at(k).convert_to<double>();
                                      });
    }
    const auto exact = exact_moments(m);
    return MomentSequence<double>(exact.description(), exact.scale_note(),
                                  [exact](std::size_t k, const std::vector<double>&) {
                                      return exact.at(k).convert_to<double>();
                                  },
                                  exact.limit());
}

MomentSequence<Extended> extended_moments(const MeasureSpec& m, unsigned digits, double tol)
{
    if (m.type == "weight") {
        return weight_moments_extended(weight_spec(m, tol), digits);
    }
    if (m.type == "bernstein-szego") {
        return m.bernstein_szego().extended_moments(digits);
    }
    const auto exact = exact_moments(m);
    return MomentSequence<Extended>(exact.description(), exact.scale_note(),
                                    [exact, digits](std::size_t k, const std::vector<Extended>&) {
                                        PrecisionGuard guard(digits);
                                        return scalar_cast<Extended>(exact.at(k));
                                    },
                                    exact.limit());
}

template <class T>
Json to_json(const SolutionSet<T>& s)
{
    Json kernel = Json::array();
    for (const auto& k : s.kernel_basis) {
        kernel.push_back(to_json(k));
    }
    return {{"n", s.n},
            {"lambda_n", format_rational(s.lambda_n)},
            {"particular", s.particular ? to_json(*s.particular) : Json(nullptr)},
            {"kernel", kernel},
            {"p_n", to_json(s.p_n)}};
}

template <class T>
SolutionSet<T> solution_set_from_json(const Json& j)
{
    return with_spec_errors([&] {
        SolutionSet<T> s;
        s.n = field(j, "n").get<int>();
        s.lambda_n = rational_from(field(j, "lambda_n"));
        if (!field(j, "particular").is_null()) {
            s.particular = polynomial_from_json<T>(j.at("particular"));
        }
        for (const auto& k : field(j, "kernel")) {
            s.kernel_basis.push_back(polynomial_from_json<T>(k));
        }
        s.p_n = polynomial_from_json<T>(field(j, "p_n"));
        return s;
    });
}

Verdict verdict_from_string(const std::string& s)
{
    for (Verdict v : {Verdict::Normal, Verdict::NotNormal, Verdict::Indeterminate}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw SpecError("unknown verdict \"" + s + "\"");
}

template <class T>
Json to_json(const NormalityReport<T>& r)
{
    Json gamma = Json::array();
    for (const auto& g : r.gamma) {
        gamma.push_back(scalar_to_json(g));
    }
    return {{"n", r.n},
            {"verdict", to_string(r.verdict)},
            {"branch", r.branch},
            {"drop_indexes", r.drop_indexes},
            {"rank_condition_ok", r.rank_condition_ok},
            {"moment_condition_ok", r.moment_condition_ok ? Json(*r.moment_condition_ok) : Json(nullptr)},
            {"gamma", gamma},
            {"moment_value", r.moment_value ? scalar_to_json(*r.moment_value) : Json(nullptr)}};
}

template <class T>
NormalityReport<T> normality_report_from_json(const Json& j)
{
    return with_spec_errors([&] {
        NormalityReport<T> r;
        r.n = field(j, "n").get<int>();
        r.verdict = verdict_from_string(field(j, "verdict").get<std::string>());
        r.branch = field(j, "branch").get<std::string>();
        r.drop_indexes = field(j, "drop_indexes").get<std::vector<int>>();
        r.rank_condition_ok = field(j, "rank_condition_ok").get<bool>();
        if (!field(j, "moment_condition_ok").is_null()) {
            r.moment_condition_ok = j.at("moment_condition_ok").get<bool>();
        }
        for (const auto& g : field(j, "gamma")) {
            r.gamma.push_back(scalar_from_json<T>(g));
        }
        if (!field(j, "moment_value").is_null()) {
            r.moment_value = scalar_from_json<T>(j.at("moment_value"));
        }
        return r;
    });
}

namespace {

Json terms_json(const std::vector<SystemTerm>& terms)
{
    Json a = Json::array();
    for (const auto& t : terms) {
        a.push_back({{"v", t.v}, {"i", t.i}, {"coeff", to_json(t.coeff)}});
    }
    return a;
}

std::vector<SystemTerm> terms_from(const Json& a)
{
    std::vector<SystemTerm> out;
    for (const auto& t : a) {
        out.push_back({field(t, "v").get<int>(), field(t, "i").get<int>(), polynomial_from_json<Rational>(field(t, "coeff"))});
    }
    return out;
}

} // namespace

Json to_json(const DifferenceSystem& ds)
{
    Json eqs = Json::array();
    for (const auto& eq : ds.equations) {
        eqs.push_back({{"nj", eq.nj},
                       {"text", render(eq)},
                       {"raw", terms_json(eq.raw)},
                       {"terms", terms_json(eq.terms)},
                       {"common_factor", to_json(eq.common_factor)},
                       {"n_start", eq.n_start}});
    }
    return {{"schema", kSchema}, {"order", ds.order}, {"S", ds.S}, {"equations", eqs}};
}

DifferenceSystem difference_system_from_json(const Json& j)
{
    return with_spec_errors([&] {
        DifferenceSystem ds;
        ds.order = field(j, "order").get<int>();
        ds.S = field(j, "S").get<std::vector<long>>();
        for (const auto& e : field(j, "equations")) {
            DifferenceEquation eq;
            eq.nj = field(e, "nj").get<long>();
            eq.raw = terms_from(field(e, "raw"));
            eq.terms = terms_from(field(e, "terms"));
            eq.common_factor = polynomial_from_json<Rational>(field(e, "common_factor"));
            eq.n_start = field(e, "n_start").get<long>();
            ds.equations.push_back(std::move(eq));
        }
        return ds;
    });
}

template <class T>
Json to_json(const MembershipResult<T>& m)
{
    return {{"pass", m.pass},
            {"nj", m.nj ? Json(*m.nj) : Json(nullptr)},
            {"n", m.n ? Json(*m.n) : Json(nullptr)},
            {"value", scalar_to_json(m.value)}};
}

template <class T>
MembershipResult<T> membership_from_json(const Json& j)
{
    return with_spec_errors([&] {
        MembershipResult<T> m;
        m.pass = field(j, "pass").get<bool>();
        if (!field(j, "nj").is_null()) {
            m.nj = j.at("nj").get<long>();
        }
        if (!field(j, "n").is_null()) {
            m.n = j.at("n").get<long>();
        }
        m.value = scalar_from_json<T>(field(j, "value"));
        return m;
    });
}

Json to_json(const ZeroBoundRow& row)
{
    Json roots = Json::array();
    for (const auto& z : row.roots) {
        roots.push_back(scalar_to_json(z));
    }
    return {{"n", row.n}, {"max_modulus", row.max_modulus}, {"R", row.radius}, {"pass", row.pass}, {"roots", roots}};
}

ZeroBoundRow zero_bound_row_from_json(const Json& j)
{
    return with_spec_errors([&] {
        ZeroBoundRow row;
        row.n = field(j, "n").get<int>();
        row.max_modulus = field(j, "max_modulus").get<double>();
        row.radius = field(j, "R").get<double>();
        row.pass = field(j, "pass").get<bool>();
        if (j.contains("roots")) {
            for (const auto& z : j.at("roots")) {
                row.roots.push_back(scalar_from_json<Complex>(z));
            }
        }
        return row;
    });
}

#define OPDOP_INSTANTIATE_JSON(T)                                                                                  \
    template Json to_json(const Polynomial<T>&);                                                                     \
    template Polynomial<T> polynomial_from_json(const Json&);                                                        \
    template Json to_json(const SolutionSet<T>&);                                                                    \
    template SolutionSet<T> solution_set_from_json(const Json&);                                                     \
    template Json to_json(const NormalityReport<T>&);                                                                \
    template NormalityReport<T> normality_report_from_json(const Json&);                                             \
    template Json to_json(const MembershipResult<T>&);                                                               \
    template MembershipResult<T> membership_from_json(const Json&);

OPDOP_INSTANTIATE_JSON(Rational)
OPDOP_INSTANTIATE_JSON(double)
OPDOP_INSTANTIATE_JSON(Extended)

template Json to_json(const Polynomial<Complex>&);
template Polynomial<Complex> polynomial_from_json(const Json&);

} // namespace opdop
