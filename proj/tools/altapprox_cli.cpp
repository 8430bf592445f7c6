// Command-line front end: expression or sample input, the approximation
// operators, and CSV/JSON emission of nodes, bases, fits and wavelet data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "altapprox/altapprox.hpp"

namespace {

using namespace altapprox;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitSamples = 4;

struct Grid {
    double start = 0.0, stop = 1.0;
    int count = 101;

    std::vector<double> points() const {
        std::vector<double> p(count);
        for (int i = 0; i < count; ++i)
            p[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
        return p;
    }
};

Grid parse_grid(const std::string& s) {
    Grid g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.start, &g.stop, &g.count) != 3 ||
        g.count < 1)
        throw std::invalid_argument("bad --grid, expected start:stop:count: " + s);
    return g;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    return file;
}

void emit_csv(const std::string& out_path, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& columns) {
    std::ofstream file;
    write_csv(open_output(file, out_path), header, columns);
}

int cmd_nodes(int n) {
    const QuadratureRule rule = gauss_rule(n);
    std::cout << format_g17(0.0) << "\n";
    for (double x : rule.nodes) std::cout << format_g17(x) << "\n";
    std::cout << format_g17(1.0) << "\n";
    return 0;
}

int cmd_basis(const std::string& system, int n, const Grid& grid,
              const std::string& out_path) {
    const std::vector<double> xs = grid.points();
    std::vector<std::string> header = {"x"};
    std::vector<std::vector<double>> cols = {xs};
    if (system == "A" || system == "B") {
        const ASystem asys = build_a_system(n);
        const BSystem bsys = build_b_system(asys);
        for (int k = system == "A" ? 1 : 0; k <= n; ++k) {
            header.push_back(system + std::to_string(n) + "_" + std::to_string(k));
            const RationalPoly& p = system == "A" ? asys.polys[k] : bsys.polys[k];
            std::vector<double> col(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) col[i] = p.eval(xs[i]);
            cols.push_back(std::move(col));
        }
    } else if (system == "S" || system == "Lambda") {
        const StructuredSystem ssys = build_structured(n);
        const int k0 = system == "Lambda" ? 2 : 1;
        for (int k = k0; k <= n; ++k) {
            header.push_back(system + std::to_string(n) + "_" + std::to_string(k));
            std::vector<double> col(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                col[i] = system == "Lambda" ? lambda_eval(ssys, k, xs[i])
                                            : ssys.eval_normalized(k, xs[i]);
            cols.push_back(std::move(col));
        }
    } else {
        throw std::invalid_argument("unknown basis system: " + system);
    }
    emit_csv(out_path, header, cols);
    return 0;
}

struct FitOptions {
    std::string op;
    std::string expr;
    std::string samples;
    int n = 0;
    bool auto_parity = false;
    bool b_from_c_flag = false;
    std::string out;
    std::string format = "json";
};

Expansion run_fit(const FitOptions& opt, double quad_tol) {
    FuncSpec f;
    const bool from_samples = !opt.samples.empty();
    if (from_samples) {
        if (opt.op != "w" && opt.op != "what")
            throw std::invalid_argument(
                "sample-table input supports only the discrete operators (w, what)");
        f = func_from_samples(load_sample_table(opt.samples));
    } else {
        f = func_from_expr(opt.expr);
    }

    int n = opt.n;
    std::string note;
    if (opt.auto_parity) {
        const Parity p = from_samples ? Parity::unknown : detect_parity(f);
        const int adjusted = parity_select_n(p, n);
        if (adjusted != n)
            note = "auto-parity: n adjusted " + std::to_string(n) + " -> " +
                   std::to_string(adjusted);
        n = adjusted;
    }

    const ASystem sys = build_a_system(n);
    Expansion e;
    if (opt.op == "weak") {
        e = omega_weak(f, sys, quad_tol);
    } else if (opt.op == "projection") {
        e = omega_hat(f, sys, quad_tol);
    } else if (opt.op == "spectral") {
        if (!opt.b_from_c_flag && !f.has_deriv())
            throw std::invalid_argument(
                "spectral operator needs a derivative; pass --b-from-c to use the "
                "weak-path coefficients instead");
        e = omega_spectral(f, sys, opt.b_from_c_flag);
    } else if (opt.op == "w" || opt.op == "what") {
        const QuadratureRule rule = gauss_rule(n);
        if (from_samples) {
            // re-validate with the (possibly parity-adjusted) order
            const SampleTable t = load_sample_table(opt.samples);
            const std::vector<double> missing = missing_abscissas(t, rule);
            if (!missing.empty()) {
                std::string msg = "sample table is missing required abscissas:";
                for (double m : missing) msg += " " + format_g17(m);
                throw SampleTableError(msg);
            }
        }
        e = opt.op == "w" ? w_discrete(f, sys, rule) : w_hat(f, sys, rule);
    } else {
        throw std::invalid_argument("unknown operator: " + opt.op);
    }
    if (!note.empty()) e.note = e.note.empty() ? note : e.note + "; " + note;
    return e;
}

int cmd_fit(const FitOptions& opt) {
    const double quad_tol = default_quad_tol();
    const Expansion e = run_fit(opt, quad_tol);
    if (opt.format == "json") {
        if (opt.out.empty()) {
            std::cout << expansion_to_json(e, opt.op, quad_tol).dump(2) << "\n";
        } else {
            save_expansion(opt.out, e, opt.op, quad_tol);
        }
    } else if (opt.format == "csv") {
        const ASystem sys = build_a_system(e.n);
        std::vector<double> idx(e.coeffs.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i + 1);
        emit_csv(opt.out, {"k", "coeff"}, {idx, e.coeffs});
    } else {
        throw std::invalid_argument("unknown format: " + opt.format);
    }
    return 0;
}

int cmd_eval(const std::string& file, const Grid& grid, bool with_derivative,
             const std::string& out_path) {
    const Expansion e = load_expansion(file);
    if (e.basis == BasisTag::structured)
        throw std::invalid_argument("eval: structured expansions are not supported here");
    const ASystem sys = build_a_system(e.n);
    const std::vector<double> m = expansion_monomials(e, sys);
    const std::vector<double> xs = grid.points();
    std::vector<std::string> header = {"x", "value"};
    std::vector<std::vector<double>> cols = {xs, {}};
    cols[1].resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) cols[1][i] = eval_monomials(m, xs[i]);
    if (with_derivative) {
        auto d = derivative_of(e, sys);
        header.push_back("derivative");
        std::vector<double> dc(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) dc[i] = d(xs[i]);
        cols.push_back(std::move(dc));
    }
    emit_csv(out_path, header, cols);
    return 0;
}

int cmd_extrapolate(const std::string& expr, int n, const Grid& grid,
                    const std::string& out_path) {
    const FuncSpec f = func_from_expr(expr);
    const ASystem sys = build_a_system(n);
    const Expansion hat = omega_hat(f, sys);
    const Expansion weak = omega_weak(f, sys);
    const std::vector<double> mh = expansion_monomials(hat, sys);
    const std::vector<double> mw = expansion_monomials(weak, sys);
    const std::vector<double> xs = grid.points();
    std::vector<std::vector<double>> cols(4, std::vector<double>(xs.size()));
    cols[0] = xs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cols[1][i] = f.eval(xs[i]);
        cols[2][i] = eval_monomials(mh, xs[i]);
        cols[3][i] = eval_monomials(mw, xs[i]);
    }
    emit_csv(out_path, {"x", "f", "omega_hat", "omega"}, cols);
    return 0;
}

int cmd_wavelet(int n, const Grid& grid, const std::string& out_path) {
    const StructuredSystem ssys = build_structured(n);
    const auto subset = wavelet_subset(ssys);
    const std::vector<double> xs = grid.points();
    std::vector<std::string> header = {"x"};
    std::vector<std::vector<double>> cols = {xs};
    for (const auto& [nn, k] : subset) {
        header.push_back("Lambda" + std::to_string(nn) + "_" + std::to_string(k));
        std::vector<double> col(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) col[i] = lambda_eval(ssys, k, xs[i]);
        cols.push_back(std::move(col));
    }
    emit_csv(out_path, header, cols);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternative orthogonal polynomial approximation toolkit"};
    app.require_subcommand(1);

    int n = 0;
    std::string grid_spec = "0:1:101";
    std::string out_path;
    std::string system = "A";
    std::string eval_file;
    bool with_derivative = false;
    FitOptions fit;

    CLI::App* nodes = app.add_subcommand("nodes", "Print 0, the Gauss nodes, and 1");
    nodes->add_option("--n", n, "order")->required();

    CLI::App* basis = app.add_subcommand("basis", "Tabulate a basis family on a grid");
    basis->add_option("--system", system, "A | B | S | Lambda");
    basis->add_option("--n", n, "order")->required();
    basis->add_option("--grid", grid_spec, "start:stop:count");
    basis->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* fitc = app.add_subcommand("fit", "Fit an operator expansion");
    fitc->add_option("--operator", fit.op, "spectral | weak | projection | w | what")
        ->required();
    fitc->add_option("--expr", fit.expr, "expression in x");
    fitc->add_option("--samples", fit.samples, "sample table CSV (header x,f)");
    fitc->add_option("--n", fit.n, "order")->required();
    fitc->add_flag("--auto-parity", fit.auto_parity, "apply the parity rule for n");
    fitc->add_flag("--b-from-c", fit.b_from_c_flag,
                   "spectral coefficients via the weak c-path");
    fitc->add_option("--out", fit.out, "output path (default stdout)");
    fitc->add_option("--format", fit.format, "json | csv");

    CLI::App* evalc = app.add_subcommand("eval", "Evaluate a stored expansion");
    evalc->add_option("file", eval_file, "expansion JSON file")->required();
    evalc->add_option("--grid", grid_spec, "start:stop:count");
    evalc->add_flag("--with-derivative", with_derivative, "add a derivative column");
    evalc->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* extr = app.add_subcommand(
        "extrapolate", "Tabulate f with both operator fits over a range");
    extr->add_option("--expr", fit.expr, "expression in x")->required();
    extr->add_option("--n", n, "order")->required();
    extr->add_option("--grid", grid_spec, "start:stop:count");
    extr->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* wav = app.add_subcommand("wavelet", "Tabulate the antisymmetric Lambda set");
    wav->add_option("--n", n, "order")->required();
    wav->add_option("--grid", grid_spec, "start:stop:count");
    wav->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (nodes->parsed()) return cmd_nodes(n);
        const Grid grid = parse_grid(grid_spec);
        if (basis->parsed()) return cmd_basis(system, n, grid, out_path);
        if (fitc->parsed()) {
            if (fit.expr.empty() == fit.samples.empty())
                throw std::invalid_argument("fit: pass exactly one of --expr, --samples");
            return cmd_fit(fit);
        }
        if (evalc->parsed()) return cmd_eval(eval_file, grid, with_derivative, out_path);
        if (extr->parsed()) return cmd_extrapolate(fit.expr, n, grid, out_path);
        if (wav->parsed()) return cmd_wavelet(n, grid, out_path);
    } catch (const altapprox::SampleTableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSamples;
    } catch (const altapprox::QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const altapprox::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
