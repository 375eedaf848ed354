#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bvekua/acceptance.hpp"
#include "bvekua/bergman.hpp"
#include "bvekua/errors.hpp"
#include "bvekua/io.hpp"
#include "bvekua/main_vekua.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bvekua;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int n_override = 0;
    int basis_override = 0;
    std::vector<std::string> tol_overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "run configuration JSON");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--n", opts.n_override, "grid resolution override");
    cmd->add_option("--basis-order", opts.basis_override, "basis order override");
    cmd->add_option("--tol", opts.tol_overrides, "tolerance override KEY=VAL")
        ->take_all();
}

RunConfig load_config(const CommonOpts& opts) {
    RunConfig cfg =
        opts.config_path.empty() ? RunConfig{} : RunConfig::load(opts.config_path);
    if (opts.n_override > 0) cfg.n = opts.n_override;
    if (opts.basis_override > 0) cfg.basis_order = opts.basis_override;
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    for (const std::string& kv : opts.tol_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--tol expects KEY=VAL: " + kv);
        try {
            cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad tolerance value in " + kv);
        }
    }
    if (cfg.n < 8) throw ConfigError("n must be at least 8");
    return cfg;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream os(p);
    if (!os) throw FileError("cannot write " + p.string());
    os << content;
}

Coefficients coefficients_from_config(const RunConfig& cfg, GridPtr grid) {
    switch (cfg.coeff_kind) {
        case RunConfig::CoeffKind::zero:
            return Coefficients::zero(grid);
        case RunConfig::CoeffKind::constants:
            return Coefficients::make(GridFunction::constant(grid, cfg.const_a),
                                      GridFunction::constant(grid, cfg.const_b));
        case RunConfig::CoeffKind::conductivity:
            return b_from_f(conductivity_from_formula(cfg.formula, grid));
    }
    throw ConfigError("unreachable coefficient kind");
}

std::vector<Complex> parse_point_list(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw ConfigError("point list expects re,im pairs separated by ';'");
        out.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
    }
    return out;
}

json solver_reports_json(const VekuaSolutionSet& set) {
    json arr = json::array();
    for (const auto& rep : set.reports) {
        json r;
        r["method"] = rep.method;
        r["iterations"] = rep.iterations;
        r["residual"] = rep.residual;
        if (rep.rcond) r["rcond"] = *rep.rcond;
        if (rep.smallest_singular_value)
            r["smallest_singular_value"] = *rep.smallest_singular_value;
        arr.push_back(r);
    }
    return arr;
}

int cmd_verify(const RunConfig& cfg) {
    const auto results = run_acceptance(cfg);
    for (const auto& r : results) std::cout << format_check_line(r) << "\n";
    const fs::path dir = ensure_out_dir(cfg);
    write_file(dir / "verify_report.json", acceptance_report_json(cfg, results));
    return all_passed(results) ? 0 : 1;
}

int cmd_dump_grid(const RunConfig& cfg) {
    GridPtr grid = build_grid(cfg.domain, cfg.n);
    const fs::path dir = ensure_out_dir(cfg);
    std::ostringstream os;
    write_grid_csv(os, *grid);
    write_file(dir / "grid.csv", os.str());
    json meta;
    meta["config_hash"] = config_hash(cfg);
    meta["nodes"] = grid->node_count();
    meta["cell_area"] = grid->cell_area();
    write_file(dir / "grid.meta.json", meta.dump(2));
    std::cout << "wrote " << (dir / "grid.csv").string() << " (" << grid->node_count()
              << " nodes)\n";
    return 0;
}

int cmd_kernel(const RunConfig& cfg, const std::string& zlist, const std::string& zetalist,
               const std::string& basis_dir) {
    GridPtr grid = build_grid(cfg.domain, cfg.n);
    const Coefficients coeffs = coefficients_from_config(cfg, grid);
    const OrthoBasis basis = gram_schmidt(make_solution_set(coeffs, cfg.basis_order));
    if (!basis_dir.empty()) write_basis_archive(basis_dir, basis);
    std::vector<KernelSample> samples;
    for (Complex z : parse_point_list(zlist))
        for (Complex zeta : parse_point_list(zetalist))
            samples.push_back(kernel_sample(basis, grid->node_at(z), grid->node_at(zeta)));
    const fs::path dir = ensure_out_dir(cfg);
    std::ostringstream os;
    write_kernel_csv(os, samples);
    write_file(dir / "kernel.csv", os.str());
    json meta;
    meta["config_hash"] = config_hash(cfg);
    meta["rows"] = samples.size();
    meta["basis_members"] = basis.members.size();
    meta["gram_residual"] = basis.gram_residual;
    write_file(dir / "kernel.meta.json", meta.dump(2));
    std::cout << "wrote " << (dir / "kernel.csv").string() << " (" << samples.size()
              << " rows)\n";
    if (!samples.empty())
        std::cout << "K(" << fmt17(samples.front().z.real()) << ","
                  << fmt17(samples.front().z.imag()) << "; "
                  << fmt17(samples.front().zeta.real()) << ","
                  << fmt17(samples.front().zeta.imag())
                  << ") = " << bicomplex_to_text(samples.front().K) << "\n";
    return 0;
}

int cmd_project(const RunConfig& cfg, const std::string& in_csv) {
    GridPtr grid = build_grid(cfg.domain, cfg.n);
    const Coefficients coeffs = coefficients_from_config(cfg, grid);
    const VekuaSolutionSet set = make_solution_set(coeffs, cfg.basis_order);
    const OrthoBasis basis = gram_schmidt(set);
    std::ifstream is(in_csv);
    if (!is) throw FileError("cannot open " + in_csv);
    const GridFunction psi = read_grid_function_csv(is, grid);
    const GridFunction proj = project(basis, psi);
    const fs::path dir = ensure_out_dir(cfg);
    std::ostringstream os;
    write_grid_function_csv(os, proj);
    write_file(dir / "projection.csv", os.str());
    json rep;
    rep["config_hash"] = config_hash(cfg);
    rep["input_norm"] = lp_norm(psi, 2.0);
    rep["projection_norm"] = lp_norm(proj, 2.0);
    rep["gram_residual"] = basis.gram_residual;
    rep["solver"] = solver_reports_json(set);
    write_file(dir / "projection_report.json", rep.dump(2));
    std::cout << "wrote " << (dir / "projection.csv").string() << "\n";
    return 0;
}

GridFunction u_source_field(const RunConfig& cfg, const Conductivity& cond,
                            const std::string& source) {
    GridPtr grid = cond.grid();
    if (source == "x")
        return GridFunction::sample(grid,
                                    [](Complex z) { return Bicomplex(Complex(z.real())); });
    if (source == "x2-y2")
        return GridFunction::sample(grid, [](Complex z) {
            return Bicomplex(Complex(z.real() * z.real() - z.imag() * z.imag()));
        });
    if (source == "f") return cond.f;
    // otherwise: a grid-function CSV path
    std::ifstream is(source);
    if (!is) throw FileError("cannot open u source: " + source);
    return read_grid_function_csv(is, grid);
}

int cmd_conjugate(const RunConfig& cfg, const std::string& u_source, const std::string& c_text) {
    GridPtr grid = build_grid(cfg.domain, cfg.n);
    if (!cfg.domain.star_shaped_at_origin())
        throw NotStarShapedError("conjugate requires a star-shaped domain");
    const Conductivity cond = conductivity_from_formula(
        cfg.coeff_kind == RunConfig::CoeffKind::conductivity ? cfg.formula : "one", grid);
    const GridFunction u = u_source_field(cfg, cond, u_source);
    Complex cc(0.0);
    if (!c_text.empty()) {
        const auto comma = c_text.find(',');
        cc = comma == std::string::npos
                 ? Complex(std::stod(c_text), 0.0)
                 : Complex(std::stod(c_text.substr(0, comma)),
                           std::stod(c_text.substr(comma + 1)));
    }
    const GridFunction v = metaharmonic_conjugate(cond, u, cc);
    GridFunction w = GridFunction::zero(grid);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = u[k] + times_j(v[k]);
    const Coefficients coeffs = b_from_f(cond);
    const GridFunction res = vekua_residual(w, coeffs.a, coeffs.b);
    const auto ray_ok = ray_complete_mask(*grid);
    const auto safe = grid->safe_interior_mask(3.0);
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < grid->node_count(); ++k)
        if (ray_ok[k] && safe[k]) nodes.push_back(k);
    const fs::path dir = ensure_out_dir(cfg);
    std::ostringstream osu, osv;
    write_grid_function_csv(osu, u);
    write_grid_function_csv(osv, v);
    write_file(dir / "conjugate_u.csv", osu.str());
    write_file(dir / "conjugate_v.csv", osv.str());
    json rep;
    rep["config_hash"] = config_hash(cfg);
    rep["max_vekua_residual"] = max_abs_on(res, nodes);
    rep["sup_w"] = sup_norm(w);
    rep["evaluated_nodes"] = nodes.size();
    write_file(dir / "conjugate_report.json", rep.dump(2));
    std::cout << "wrote " << (dir / "conjugate_u.csv").string() << ", "
              << (dir / "conjugate_v.csv").string() << "\n";
    return 0;
}

int cmd_hilbert(const RunConfig& cfg, const std::string& in_csv) {
    GridPtr grid = build_grid(cfg.domain, cfg.n);
    const Conductivity cond = conductivity_from_formula(
        cfg.coeff_kind == RunConfig::CoeffKind::conductivity ? cfg.formula : "one", grid);
    std::ifstream is(in_csv);
    if (!is) throw FileError("cannot open boundary CSV: " + in_csv);
    const std::vector<Complex> phi = read_boundary_csv(is, *grid);
    const std::vector<Complex> h = hilbert_transform(cond, phi);
    const fs::path dir = ensure_out_dir(cfg);
    std::ostringstream os;
    write_boundary_csv(os, *grid, h);
    write_file(dir / "hilbert.csv", os.str());
    json meta;
    meta["config_hash"] = config_hash(cfg);
    meta["samples"] = h.size();
    write_file(dir / "hilbert.meta.json", meta.dump(2));
    std::cout << "wrote " << (dir / "hilbert.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bicomplex Vekua-Bergman toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string zlist, zetalist, in_csv, u_source = "x", c_text, basis_dir;

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify, opts);
    CLI::App* kernel = app.add_subcommand("kernel", "evaluate the reproducing kernel");
    add_common(kernel, opts);
    kernel->add_option("--z", zlist, "z nodes, 're,im;re,im;...'")->required();
    kernel->add_option("--zeta", zetalist, "zeta nodes, same format");
    kernel->add_option("--dump-basis", basis_dir, "write the orthonormal basis archive here");
    CLI::App* project_cmd = app.add_subcommand("project", "Bergman projection of a field");
    add_common(project_cmd, opts);
    project_cmd->add_option("--in", in_csv, "grid function CSV")->required();
    CLI::App* conjugate = app.add_subcommand("conjugate", "metaharmonic conjugate of u");
    add_common(conjugate, opts);
    conjugate->add_option("--u", u_source, "u source: x | x2-y2 | f | CSV path");
    conjugate->add_option("--c", c_text, "additive constant 're[,im]'");
    CLI::App* hilbert = app.add_subcommand("hilbert", "boundary Hilbert transform");
    add_common(hilbert, opts);
    hilbert->add_option("--in", in_csv, "boundary CSV (theta,value_re,value_im)")->required();
    CLI::App* dump = app.add_subcommand("dump-grid", "write the grid nodes CSV");
    add_common(dump, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = load_config(opts);
        if (verify->parsed()) return cmd_verify(cfg);
        if (kernel->parsed()) return cmd_kernel(cfg, zlist, zetalist, basis_dir);
        if (project_cmd->parsed()) return cmd_project(cfg, in_csv);
        if (conjugate->parsed()) return cmd_conjugate(cfg, u_source, c_text);
        if (hilbert->parsed()) return cmd_hilbert(cfg, in_csv);
        if (dump->parsed()) return cmd_dump_grid(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const FileError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
