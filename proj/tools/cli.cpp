#include "cli.hpp"

#include "gmas/balance.hpp"
#include "gmas/birch.hpp"
#include "gmas/dynamics.hpp"
#include "gmas/graph.hpp"
#include "gmas/network.hpp"
#include "gmas/numeric.hpp"
#include "gmas/signs.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace gmas::cli {

namespace {

// Thrown for bad command-line values; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s;
}

std::string join(const Eigen::VectorXd& v) { return join(to_std(v)); }

std::vector<double> state_option(const std::string& text, const GeneralizedNetwork& net, const char* name) {
    std::vector<double> v;
    try {
        v = parse_vector(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
    if (v.size() != net.species_count())
        throw UsageError(std::string(name) + " has " + std::to_string(v.size()) + " entries but the network has " +
                         std::to_string(net.species_count()) + " species");
    for (double x : v)
        if (!(x > 0)) throw UsageError(std::string(name) + " must be strictly positive");
    return v;
}

GeneralizedNetwork load(const std::string& file) {
    try {
        return read_network_file(file);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

double default_tol() {
    const char* env = std::getenv("GMAS_TOL");
    if (!env || !*env) return SolveOptions{}.tol;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !(v > 0) || !std::isfinite(v)) throw UsageError(std::string("GMAS_TOL is not a positive number: ") + env);
    return v;
}

std::string condition_text(const std::optional<ConditionResult>& c) {
    if (!c) return "not checked";
    if (c->holds) return "holds";
    return "FAILS, witness " + c->witness->str();
}

void print_sign_set(std::ostream& out, const std::string& title, const SignSet& set) {
    out << title << " (" << set.size() << "):\n";
    for (const auto& s : set) out << "  " << s.str() << '\n';
}

int cmd_analyze(const std::string& file, bool json, std::ostream& out) {
    const auto net = load(file);
    const auto r = analyze(net);
    if (json) {
        out << to_json(r).dump(2) << '\n';
        return kExitOk;
    }
    const auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("undefined"); };
    out << "species: " << r.species << '\n'
        << "vertices: " << r.vertices << '\n'
        << "edges: " << r.edges << '\n'
        << "components: " << r.components << '\n'
        << "weakly reversible: " << (r.weakly_reversible ? "yes" : "no") << '\n'
        << "every vertex is a source: " << (r.all_vertices_are_sources ? "yes" : "no") << '\n'
        << "dim S: " << r.dim_s << '\n'
        << "dim S~: " << opt(r.dim_s_tilde) << '\n'
        << "deficiency: " << r.deficiency << '\n'
        << "kinetic-order deficiency: " << opt(r.kinetic_deficiency) << '\n'
        << "sign condition sigma(S) in cl sigma(S~): " << condition_text(r.sign_condition) << '\n'
        << "uniqueness condition sigma(S) meets sigma(S~perp) only in 0: " << condition_text(r.uniqueness_condition)
        << '\n'
        << "verdict: " << verdict_description(r.verdict) << '\n';
    return kExitOk;
}

int cmd_signs(const std::string& file, std::size_t cap, std::ostream& out) {
    const auto net = load(file);
    const auto s = stoich_subspace(net);
    const std::size_t n = net.species_count();
    const bool enumerate = n <= cap;
    if (enumerate)
        print_sign_set(out, "sigma(S)", enumerate_sign_vectors(s, cap));
    else
        out << "dimension " << n << " exceeds enumeration cap " << cap << "; checking conditions only\n";

    if (!net.all_vertices_are_sources()) {
        out << "sigma(S~): undefined, some vertex is not a source\n";
        return kExitOk;
    }
    const auto st = kinetic_subspace(net);
    if (enumerate) print_sign_set(out, "sigma(S~)", enumerate_sign_vectors(st, cap));
    out << "sign condition sigma(S) in cl sigma(S~): " << condition_text(check_sigma_subset_closure(s, st)) << '\n';
    if (enumerate)
        out << "uniqueness condition sigma(S) meets sigma(S~perp) only in 0: "
            << condition_text(check_uniqueness_condition(s, st, cap)) << '\n';
    else
        out << "uniqueness condition sigma(S) meets sigma(S~perp) only in 0: not checked\n";
    return kExitOk;
}

void print_solution(std::ostream& out, const BirchSolution& sol) {
    out << "x: " << join(sol.x) << '\n'
        << "lambda: " << join(sol.lambda) << '\n'
        << "affine residual: " << sci(sol.residual_affine) << '\n'
        << "manifold residual: " << sci(sol.residual_manifold) << '\n'
        << "homotopy steps: " << sol.homotopy_steps << '\n';
}

int cmd_balanced(const std::string& file, const std::string& x0_text, double tol, std::ostream& out,
                 std::ostream& err) {
    const auto net = load(file);
    std::optional<std::vector<double>> x0;
    if (!x0_text.empty()) x0 = state_option(x0_text, net, "--x0");
    const auto rates = effective_rates(net);
    const auto point = find_vertex_balanced(net, rates);
    if (!point) {
        err << "error: no vertex-balanced steady state exists for these rate constants\n";
        return kExitFailure;
    }
    out << "x*: " << join(point->x) << '\n'
        << "log-linear residual: " << sci(point->consistency_residual) << '\n'
        << "vertex-balance residual: " << sci(point->balance_residual) << '\n';
    if (!x0) return kExitOk;

    SolveOptions opts;
    opts.tol = tol;
    const auto sol = intersect_class_with_balanced_set(net, rates, point->x, *x0, opts);
    const auto x = to_std(sol.x);
    out << "class point: " << join(x) << '\n'
        << "class residual: " << sci(sol.residual_affine) << '\n'
        << "class vertex-balance residual: " << sci(vertex_imbalance(net, rates, x)) << '\n'
        << "homotopy steps: " << sol.homotopy_steps << '\n';
    return kExitOk;
}

Eigen::MatrixXd matrix_option(const std::string& text, std::size_t n, const char* name) {
    std::vector<std::vector<double>> rows;
    try {
        rows = parse_matrix(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n)
            throw UsageError(std::string(name) + " row " + std::to_string(r + 1) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

std::vector<double> positive_vector(const std::string& text, const char* name) {
    std::vector<double> v;
    try {
        v = parse_vector(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
    for (double x : v)
        if (!(x > 0)) throw UsageError(std::string(name) + " must be strictly positive");
    return v;
}

int cmd_birch(const std::string& file, const std::string& w_text, const std::string& wt_text,
              const std::string& x0_text, const std::string& xstar_text, double tol, std::ostream& out,
              std::ostream& err) {
    SolveOptions opts;
    opts.tol = tol;
    if (file.empty()) {
        if (w_text.empty() || wt_text.empty() || xstar_text.empty())
            throw UsageError("without a network file, --w, --wt, --x0 and --xstar are all required");
        const auto x0 = positive_vector(x0_text, "--x0");
        const auto xs = positive_vector(xstar_text, "--xstar");
        if (xs.size() != x0.size()) throw UsageError("--x0 and --xstar have different lengths");
        const auto p = BirchProblem::from_matrices(matrix_option(w_text, x0.size(), "--w"),
                                                   matrix_option(wt_text, x0.size(), "--wt"), x0, xs);
        print_solution(out, solve(p, opts));
        return kExitOk;
    }
    if (!w_text.empty() || !wt_text.empty()) throw UsageError("--w/--wt cannot be combined with a network file");
    const auto net = load(file);
    const auto x0 = state_option(x0_text, net, "--x0");
    std::vector<double> xs;
    if (!xstar_text.empty()) {
        xs = state_option(xstar_text, net, "--xstar");
    } else {
        const auto point = find_vertex_balanced(net, effective_rates(net));
        if (!point) {
            err << "error: no vertex-balanced steady state exists for these rate constants; pass --xstar\n";
            return kExitFailure;
        }
        xs = point->x;
    }
    const auto p = BirchProblem::from_subspaces(stoich_subspace(net), kinetic_subspace(net), x0, xs);
    print_solution(out, solve(p, opts));
    return kExitOk;
}

int cmd_simulate(const std::string& file, const std::string& x0_text, double t_end, double rtol,
                 const std::string& csv_path, std::ostream& out, std::ostream& err) {
    const auto net = load(file);
    const auto x0 = state_option(x0_text, net, "--x0");
    if (!(t_end > 0)) throw UsageError("--t-end must be positive");
    if (!(rtol > 0)) throw UsageError("--rtol must be positive");
    const auto rates = effective_rates(net);
    IntegrateOptions opts;
    opts.rtol = rtol;

    const auto write = [&](const Trajectory& traj) {
        if (csv_path.empty()) return;
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        write_csv(f, net.species(), traj);
    };

    Trajectory traj;
    try {
        traj = integrate(net, rates, x0, t_end, opts);
    } catch (const IntegrationError& e) {
        write(e.partial());
        err << "error: " << kind_name(e.kind()) << ": " << e.what() << '\n'
            << "last good state at t = " << num(e.partial().times.back()) << ": "
            << join(e.partial().final_state()) << '\n';
        return kExitFailure;
    }
    write(traj);
    const auto& xf = traj.final_state();
    const auto f = rhs(net, rates, xf);
    double res = 0.0;
    for (double v : f) res = std::max(res, std::abs(v));
    out << "t: " << num(traj.times.back()) << '\n'
        << "final state: " << join(xf) << '\n'
        << "steps: " << traj.accepted_steps << " accepted, " << traj.rejected_steps << " rejected\n"
        << "conservation drift: " << sci(conservation_residual(net, traj)) << '\n'
        << "steady-state residual: " << sci(res) << '\n';
    return kExitOk;
}

}  // namespace

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty entry in \"" + text + "\"");
        const std::string tok = item.substr(b, e - b + 1);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (*end != '\0' || !std::isfinite(v)) throw std::invalid_argument("not a number: \"" + tok + "\"");
        out.push_back(v);
    }
    if (out.empty() || text.back() == ',') throw std::invalid_argument("expected comma-separated numbers");
    return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_vector(row));
    if (rows.empty()) throw std::invalid_argument("expected at least one row");
    return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analysis of generalized mass-action systems", "gmas"};
    app.require_subcommand(1);

    std::string file, x0, xstar, w, wt, csv;
    bool json = false;
    std::size_t cap = kDefaultEnumerationCap;
    std::optional<double> tol_opt;
    double t_end = 10.0, rtol = 1e-8;

    auto* analyze_cmd = app.add_subcommand("analyze", "deficiencies, sign conditions and the uniqueness verdict");
    analyze_cmd->add_option("file", file, "network file")->required();
    analyze_cmd->add_flag("--json", json, "print the report as JSON");

    auto* signs_cmd = app.add_subcommand("signs", "sign vectors of S and S~ and both sign conditions");
    signs_cmd->add_option("file", file, "network file")->required();
    signs_cmd->add_option("--cap", cap, "largest dimension for full enumeration")->capture_default_str();

    auto* balanced_cmd = app.add_subcommand("balanced", "a vertex-balanced steady state, optionally in a given class");
    balanced_cmd->add_option("file", file, "network file")->required();
    balanced_cmd->add_option("--x0", x0, "point fixing the compatibility class");
    balanced_cmd->add_option("--tol", tol_opt, "solver tolerance (default: GMAS_TOL or 1e-10)");

    auto* birch_cmd = app.add_subcommand("birch", "intersect x0 + S with x* exp(S~perp)");
    birch_cmd->add_option("file", file, "network file (omit to pass --w and --wt)");
    birch_cmd->add_option("--w", w, "rows spanning S-perp, e.g. \"1,-1;0,1\"");
    birch_cmd->add_option("--wt", wt, "rows spanning S~-perp");
    birch_cmd->add_option("--x0", x0, "point fixing the affine class")->required();
    birch_cmd->add_option("--xstar", xstar, "base point of the manifold (network mode default: a vertex-balanced point)");
    birch_cmd->add_option("--tol", tol_opt, "solver tolerance (default: GMAS_TOL or 1e-10)");

    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the ODE from x0");
    simulate_cmd->add_option("file", file, "network file")->required();
    simulate_cmd->add_option("--x0", x0, "initial state")->required();
    simulate_cmd->add_option("--t-end", t_end, "final time")->capture_default_str();
    simulate_cmd->add_option("--rtol", rtol, "relative tolerance")->capture_default_str();
    simulate_cmd->add_option("--out", csv, "write the trajectory as CSV");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const double tol = tol_opt ? *tol_opt : default_tol();
        if (!(tol > 0)) throw UsageError("--tol must be positive");
        if (app.got_subcommand(analyze_cmd)) return cmd_analyze(file, json, out);
        if (app.got_subcommand(signs_cmd)) return cmd_signs(file, cap, out);
        if (app.got_subcommand(balanced_cmd)) return cmd_balanced(file, x0, tol, out, err);
        if (app.got_subcommand(birch_cmd)) return cmd_birch(file, w, wt, x0, xstar, tol, out, err);
        return cmd_simulate(file, x0, t_end, rtol, csv, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NetworkError& e) {
        err << "error: " << file << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "error: " << kind_name(e.kind()) << ": " << e.what() << '\n';
        return kExitFailure;
    } catch (const NotWeaklyReversible& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const DimensionCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace gmas::cli
