#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "criteria.hpp"
#include "opdop/errors.hpp"
#include "opdop/json_io.hpp"

using namespace opdop;

namespace {

struct RunConfig {
    std::string command;
    std::string op;
    std::string measure;
    std::string range{"0..10"};
    std::string zeta{"2"};
    std::string points;
    std::string precision;
    std::string format;
    std::string table{"roots"};
    std::string out;
    double tol{1e-12};
    std::uint64_t seed{0};
};

std::pair<int, int> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = dots == std::string::npos ? lo : std::stoi(text.substr(dots + 2));
        if (lo < 0 || hi < lo) {
            throw SpecError("empty index range");
        }
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw SpecError("index range must look like A..B");
    }
}

std::vector<Rational> parse_points(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(' ') != std::string::npos) {
            out.push_back(parse_rational(item));
        }
    }
    return out;
}

std::string text_of(const Rational& x) { return format_rational(x); }
std::string text_of(double x) { return format_double(x == 0.0 ? 0.0 : x); }
std::string text_of(const Extended& x) { return format_extended(x, 20); }

template <class T>
std::string coeff_list(const Polynomial<T>& p)
{
    std::string s;
    for (const auto& c : p.coeffs()) {
        s += (s.empty() ? "" : " ") + text_of(c);
    }
    return s;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw SpecError("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

/// Decimal digits for extended runs up to index n; Hankel systems lose about 0.6 digits per index.
unsigned extended_digits(int n) { return std::max(40u, static_cast<unsigned>(0.65 * n) + 40u); }

/// Calls f with the moment sequence of the requested mode.
template <class F>
void with_moments(const RunConfig& cfg, const MeasureSpec& m, const std::string& mode, int n_max, F&& f)
{
    if (mode == "exact") {
        f(exact_moments(m));
    } else if (mode == "double") {
        f(double_moments(m, cfg.tol));
    } else if (mode == "extended") {
        const unsigned digits = extended_digits(n_max);
        PrecisionGuard guard(digits);
        f(extended_moments(m, digits, cfg.tol));
    } else {
        throw SpecError("precision must be exact, double or extended");
    }
}

std::string mode_for(const RunConfig& cfg, const MeasureSpec& m, const char* fallback)
{
    if (!cfg.precision.empty()) {
        if (cfg.precision == "exact" && !m.rational()) {
            throw SpecError("exact precision needs a measure with rational moments");
        }
        return cfg.precision;
    }
    return m.rational() ? "exact" : fallback;
}

Json header(const RunConfig& cfg, const std::string& mode)
{
    return {{"schema", kSchema}, {"command", cfg.command}, {"precision", mode}};
}

template <class T>
std::vector<T> points_as(const std::vector<Rational>& pts)
{
    std::vector<T> out;
    for (const auto& p : pts) {
        out.push_back(scalar_cast<T>(p));
    }
    return out;
}

int cmd_solve(const RunConfig& cfg)
{
    const auto op = operator_from_json(load_json(cfg.op));
    const auto m = measure_from_json(load_json(cfg.measure));
    const auto [lo, hi] = parse_range(cfg.range);
    const auto pts = parse_points(cfg.points);
    const auto mode = mode_for(cfg, m, "double");
    Output out(cfg.out);
    int status = 0;
    with_moments(cfg, m, mode, hi, [&](const auto& ms) {
        using T = typename std::decay_t<decltype(ms)>::value_type;
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "n,unique,residual,q\n";
        for (int n = lo; n <= hi; ++n) {
            const auto s = solve_index(op, ms, n);
            std::optional<Polynomial<T>> q;
            std::string note;
            if (!pts.empty()) {
                try {
                    q = unique_with_constraints(op, ms, n, points_as<T>(pts));
                } catch (const MathError& e) {
                    note = e.what();
                }
            } else if (s.particular) {
                // kernel coefficients set to zero
                q = s.particular;
            } else if (s.kernel_basis.size() == 1) {
                q = s.kernel_basis.front();
            } else {
                note = s.kernel_basis.empty() ? "no solution" : "kernel of dimension " + std::to_string(s.kernel_basis.size());
            }
            const bool unique = q && (pts.empty() ? s.kernel_basis.size() == (s.particular ? 0u : 1u) : true);
            const double residual = q ? orthogonality_residual(op, ms, *q, n) : 0.0;
            Json row = to_json(s);
            row["unique"] = unique;
            row["q"] = q ? to_json(*q) : Json(nullptr);
            row["residual"] = residual;
            if (!note.empty()) {
                row["note"] = note;
            }
            rows.push_back(row);
            csv << n << "," << (unique ? "true" : "false") << "," << residual << "," << (q ? coeff_list(*q) : "") << "\n";
            status = q ? status : 2;
        }
        if (cfg.format == "csv") {
            out.stream() << csv.str();
        } else {
            Json doc = header(cfg, mode);
            doc["rows"] = rows;
            out.stream() << doc.dump(2) << "\n";
        }
    });
    return status;
}

int cmd_normality(const RunConfig& cfg)
{
    const auto op = operator_from_json(load_json(cfg.op));
    const auto m = measure_from_json(load_json(cfg.measure));
    const auto [lo, hi] = parse_range(cfg.range);
    const auto mode = mode_for(cfg, m, "double");
    Output out(cfg.out);
    with_moments(cfg, m, mode, hi, [&](const auto& ms) {
        Json rows = Json::array();
        std::ostringstream csv;
        csv << "n,verdict,branch,rank_condition_ok,moment_condition_ok\n";
        for (int n = lo; n <= hi; ++n) {
            const auto r = normality_report(op, ms, n);
            rows.push_back(to_json(r));
            csv << n << "," << to_string(r.verdict) << "," << r.branch << "," << (r.rank_condition_ok ? "true" : "false")
                << "," << (r.moment_condition_ok ? (*r.moment_condition_ok ? "true" : "false") : "") << "\n";
        }
        if (cfg.format == "csv") {
            out.stream() << csv.str();
        } else {
            Json doc = header(cfg, mode);
            doc["rows"] = rows;
            out.stream() << doc.dump(2) << "\n";
        }
    });
    return 0;
}

int cmd_classify(const RunConfig& cfg)
{
    const auto op = operator_from_json(load_json(cfg.op));
    const auto ds = generate_systQ(op);
    Output out(cfg.out);
    Json doc = header(cfg, "exact");
    doc["system"] = to_json(ds);
    std::string verdict;
    if (!cfg.measure.empty()) {
        const auto m = measure_from_json(load_json(cfg.measure));
        const auto [lo, hi] = parse_range(cfg.range);
        (void)lo;
        const auto mode = mode_for(cfg, m, "double");
        doc["precision"] = mode;
        with_moments(cfg, m, mode, hi, [&](const auto& ms) {
            const auto r = check_membership(ds, ms, hi);
            doc["membership"] = to_json(r);
            doc["membership"]["N"] = hi;
            verdict = r.pass ? "member for n <= " + std::to_string(hi)
                             : "not a member: equation " + std::to_string(*r.nj) + " fails at n = " + std::to_string(*r.n);
        });
    }
    if (cfg.format == "json") {
        out.stream() << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out.stream() << "nj,equation\n";
        for (const auto& eq : ds.equations) {
            out.stream() << eq.nj << ",\"" << render(eq) << "\"\n";
        }
    } else {
        out.stream() << render(ds) << "\n";
        if (!verdict.empty()) {
            out.stream() << verdict << "\n";
        }
    }
    return 0;
}

int cmd_zeros(const RunConfig& cfg)
{
    const auto fop = factorized_from_json(load_json(cfg.op));
    if (!fop) {
        throw SpecError("zeros needs a factorized operator ({\"stages\": [...]})");
    }
    const auto m = measure_from_json(load_json(cfg.measure));
    const auto [lo, hi] = parse_range(cfg.range);
    const auto pts = parse_points(cfg.points);
    const auto mode = mode_for(cfg, m, "extended");
    Output out(cfg.out);
    bool pass = true;
    with_moments(cfg, m, mode, hi, [&](const auto& ms) {
        using T = typename std::decay_t<decltype(ms)>::value_type;
        ConstraintSource<T> constraints;
        if (!pts.empty()) {
            const auto p = points_as<T>(pts);
            constraints = [p](int) { return p; };
        }
        RootOptions opt;
        opt.seed = cfg.seed;
        const auto rep = zero_bound_check(*fop, ms, lo, hi, constraints, opt);
        pass = rep.pass;
        if (cfg.format == "csv") {
            out.stream() << "n,re,im\n";
            for (const auto& row : rep.rows) {
                for (const auto& z : row.roots) {
                    out.stream() << row.n << "," << format_double(z.real()) << "," << format_double(z.imag()) << "\n";
                }
            }
        } else {
            Json doc = header(cfg, mode);
            doc["hull"] = Json{{"c_min", rep.hull.c_min}, {"c_max", rep.hull.c_max}, {"d", rep.hull.d}, {"R", rep.hull.radius}};
            Json rows = Json::array();
            for (const auto& row : rep.rows) {
                rows.push_back(to_json(row));
            }
            doc["rows"] = rows;
            doc["pass"] = rep.pass;
            out.stream() << doc.dump(2) << "\n";
        }
    });
    return pass ? 0 : 2;
}

int cmd_polar(const RunConfig& cfg)
{
    const auto m = measure_from_json(load_json(cfg.measure.empty() ? R"({"type":"chebyshev1"})" : cfg.measure));
    const auto bs = m.bernstein_szego();
    const auto [lo, hi] = parse_range(cfg.range);
    if (lo < 1) {
        throw SpecError("polar polynomials start at n = 1");
    }
    const Rational zeta = parse_rational(cfg.zeta);
    const auto e = ellipse(Complex(zeta.convert_to<double>(), 0.0));
    const AsymptoticModel model(bs);
    const std::string mode = cfg.precision.empty() ? "extended" : mode_for(cfg, m, "extended");
    Output out(cfg.out);
    with_moments(cfg, m, mode, hi, [&](const auto& ms) {
        using T = typename std::decay_t<decltype(ms)>::value_type;
        RootOptions opt;
        opt.seed = cfg.seed;
        if constexpr (std::is_same_v<T, Extended>) {
            opt.polish = true;
            opt.polish_digits = extended_digits(hi) - 20;
        }
        std::ostringstream roots_csv;
        std::ostringstream tail_csv;
        roots_csv << "n,re,im,dist_to_E\n";
        tail_csv << "n,k,b,limit,abs_diff\n";
        Json rows = Json::array();
        Json tails = Json::array();
        for (int n = lo; n <= hi; ++n) {
            const auto qn = polar_polynomial(ms, scalar_cast<T>(zeta), n);
            const auto rs = roots(qn, opt);
            double worst = 0.0;
            Json zs = Json::array();
            for (const auto& z : require_converged(rs).roots) {
                const double d = dist_to_E(z, e);
                worst = std::max(worst, d);
                zs.push_back(Json::array({z.real(), z.imag(), d}));
                roots_csv << n << "," << format_double(z.real()) << "," << format_double(z.imag()) << ","
                          << format_double(d) << "\n";
            }
            rows.push_back({{"n", n}, {"roots", zs}, {"max_dist_to_E", worst}});
            const auto tail = chebyshev_tail(monic_orthogonal(ms, n), bs.m());
            for (std::size_t k = 0; k < tail.size(); ++k) {
                const double b = scalar_cast<double>(tail[k]);
                const double limit = model.limits()[k];
                tails.push_back({{"n", n}, {"k", k}, {"b", b}, {"limit", limit}, {"abs_diff", std::abs(b - limit)}});
                tail_csv << n << "," << k << "," << format_double(b) << "," << format_double(limit) << ","
                         << format_double(std::abs(b - limit)) << "\n";
            }
        }
        if (cfg.format == "csv") {
            out.stream() << (cfg.table == "tail" ? tail_csv.str() : roots_csv.str());
            return;
        }
        const std::vector<Complex> zpts = {Complex(0.0, 2.0), Complex(3.0, 0.0), Complex(-2.5, 0.0)};
        const auto dev = strong_asymptotics_deviation(model, monic_orthogonal(ms, hi), zpts);
        Json asym = {{"n", hi},
                     {"szego_constant", model.szego_constant()},
                     {"szego_constant_closed_form", model.szego_constant_closed_form()},
                     {"points", Json::array()}};
        for (std::size_t i = 0; i < zpts.size(); ++i) {
            asym["points"].push_back({{"z", {zpts[i].real(), zpts[i].imag()}}, {"deviation", dev[i]}});
        }
        Json doc = header(cfg, mode);
        doc["zeta"] = format_rational(zeta);
        doc["ellipse"] = {{"eta", e.eta}, {"semi_major", e.semi_major}, {"semi_minor", e.semi_minor}};
        doc["rows"] = rows;
        doc["tail"] = tails;
        doc["asymptotics"] = asym;
        out.stream() << doc.dump(2) << "\n";
    });
    return 0;
}

int cmd_check(const RunConfig& cfg)
{
    Output out(cfg.out);
    bool all = true;
    for (const auto& c : acceptance::criteria()) {
        const auto r = acceptance::run(c);
        out.stream() << acceptance::format(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orthogonal polynomial solutions of exactly solvable differential operators"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, bool needs_op, bool needs_measure) {
        auto* o = sub->add_option("--op", cfg.op, "operator JSON (path or inline)");
        if (needs_op) {
            o->required();
        }
        auto* m = sub->add_option("--measure", cfg.measure, "measure JSON (path or inline)");
        if (needs_measure) {
            m->required();
        }
        sub->add_option("--n", cfg.range, "index range A..B")->capture_default_str();
        sub->add_option("--points", cfg.points, "comma-separated interpolation points");
        sub->add_option("--precision", cfg.precision, "exact | double | extended")
            ->check(CLI::IsMember({"exact", "double", "extended"}));
        sub->add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
        sub->add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
        sub->add_option("--seed", cfg.seed, "root-finder seed")->capture_default_str();
    };

    auto* solve = app.add_subcommand("solve", "Q_n for each index");
    common(solve, true, true);
    auto* normality = app.add_subcommand("normality", "normality verdicts");
    common(normality, true, true);
    auto* classify = app.add_subcommand("classify", "difference system and membership");
    common(classify, true, false);
    auto* zeros = app.add_subcommand("zeros", "zero bound check for a factorized operator");
    common(zeros, true, true);
    auto* polar = app.add_subcommand("polar", "polar polynomials, tails and asymptotics");
    common(polar, false, false);
    polar->add_option("--zeta", cfg.zeta, "pole (real, outside [-1,1])")->capture_default_str();
    polar->add_option("--table", cfg.table, "csv table: roots | tail")->check(CLI::IsMember({"roots", "tail"}));
    auto* check = app.add_subcommand("check", "run the acceptance criteria");
    check->add_option("--out", cfg.out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.format.empty()) {
        cfg.format = cfg.command == "classify" ? "text" : "json";
    }
    try {
        if (cfg.command == "solve") {
            return cmd_solve(cfg);
        }
        if (cfg.command == "normality") {
            return cmd_normality(cfg);
        }
        if (cfg.command == "classify") {
            return cmd_classify(cfg);
        }
        if (cfg.command == "zeros") {
            return cmd_zeros(cfg);
        }
        if (cfg.command == "polar") {
            return cmd_polar(cfg);
        }
        return cmd_check(cfg);
    } catch (const SpecError& e) {
        std::cerr << "opdop: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "opdop: " << e.what() << "\n";
        return 2;
    }
}
