#include "bvekua/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bvekua/bergman.hpp"
#include "bvekua/integral_ops.hpp"
#include "bvekua/main_vekua.hpp"

namespace bvekua {

namespace {

constexpr int kMinSolverN = 32;
constexpr int kMinKernelN = 48;

struct Context {
    RunConfig cfg;
    std::vector<CheckResult> results;
    std::map<std::string, GridPtr> grids;

    GridPtr grid(const Domain& d, int n) {
        const std::string key = d.describe() + "#" + std::to_string(n);
        auto it = grids.find(key);
        if (it != grids.end()) return it->second;
        auto g = build_grid(d, n);
        grids.emplace(key, g);
        return g;
    }

    double tol(const std::string& name, double fallback) {
        const auto it = cfg.tolerances.find(name);
        return it != cfg.tolerances.end() ? it->second : fallback;
    }

    /// First-order tolerance scaling for sub-default resolutions.
    double scaled(double base) const {
        return cfg.n < 64 ? base * 64.0 / cfg.n : base;
    }

    void upper(const std::string& name, double measured, double tolerance,
               const std::string& note = "") {
        results.push_back({name, measured, tol(name, tolerance), false,
                           measured <= tol(name, tolerance), false, note});
    }
    void lower(const std::string& name, double measured, double tolerance,
               const std::string& note = "") {
        results.push_back({name, measured, tol(name, tolerance), true,
                           measured >= tol(name, tolerance), false, note});
    }
    void skip(const std::string& name, const std::string& note) {
        results.push_back({name, 0.0, 0.0, false, true, true, note});
    }
};

Bicomplex random_bicomplex(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
}

// ---- bicomplex algebra suite ------------------------------------------------

void check_bicomplex_algebra(Context& ctx) {
    std::mt19937_64 rng(20240501);
    double worst = 0.0;
    auto track = [&](double err) { worst = std::max(worst, err); };
    // structural constants
    track(norm(bc_j * bc_j + bc_one));
    track(norm(bc_p_plus * bc_p_minus));
    track(norm(bc_p_plus + bc_p_minus - bc_one));
    track(norm(bc_p_plus * bc_p_plus - bc_p_plus));
    for (int s = 0; s < 10000; ++s) {
        const Bicomplex w = random_bicomplex(rng), v = random_bicomplex(rng),
                        z = random_bicomplex(rng);
        // product agrees with the defining component formula
        const Bicomplex ref{w.sc * v.sc - w.vec * v.vec, w.sc * v.vec + w.vec * v.sc};
        track(norm(w * v - ref));
        // ring axioms
        track(norm((w * v) * z - w * (v * z)));
        track(norm(w * v - v * w));
        track(norm(w * (v + z) - (w * v + w * z)));
        // idempotent split round trip
        track(norm(recompose(idempotent_split(w)) - w));
        // involutions
        track(norm(conj_bar(conj_bar(w)) - w));
        track(norm(conj_dagger(conj_dagger(w)) - w));
        track(norm(conj_star(conj_star(w)) - w));
        track(norm(conj_dagger(w * v) - conj_dagger(w) * conj_dagger(v)));
        // inner product and norms
        track(std::abs(inner(w, v) -
                       (w.sc * std::conj(v.sc) + w.vec * std::conj(v.vec))));
        track(std::abs(norm_sq(w) - inner(w, w).real()));
        track(std::abs(inner(w, times_j(v)) + inner(times_j(w), v)));
        track(std::max(0.0, norm(w * v) - std::sqrt(2.0) * norm(w) * norm(v)));
        const double nw = norm(w);
        track(std::max(0.0, std::abs(w.plus()) / std::sqrt(2.0) - nw));
        track(std::max(0.0, std::abs(w.minus()) / std::sqrt(2.0) - nw));
        track(std::max(0.0,
                       nw - (std::abs(w.plus()) + std::abs(w.minus())) / std::sqrt(2.0)));
        // exponential homomorphism and invertibility
        track(norm(exp(w + v) - exp(w) * exp(v)));
        track(norm(exp(w) * exp(-w) - bc_one));
        // inverse where regular
        if (!is_zero_divisor(w)) track(norm(w * inverse(w) - bc_one));
        // zero divisor criterion through W conj_bar(W)
        const Bicomplex q = w * conj_bar(w);
        track(std::abs(q.vec));  // always a complex scalar
    }
    ctx.upper("bicomplex_algebra", worst, 1e-12);
}

// ---- integral operator oracles ----------------------------------------------

GridFunction t_one_oracle(GridPtr grid) {
    return GridFunction::sample(std::move(grid), [](Complex z) {
        return Bicomplex(Complex(z.real()), Complex(-z.imag()));
    });
}

double t_one_error(GridPtr grid) {
    const GridFunction t1 = theodorescu(GridFunction::constant(grid, bc_one));
    const GridFunction oracle = t_one_oracle(grid);
    return max_abs_on(t1 - oracle, grid->safe_interior(3.0));
}

void check_theodorescu(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("theodorescu_oracle", "skipped: below minimum n");
        ctx.skip("theodorescu_refinement", "skipped: below minimum n");
        return;
    }
    const Domain disk = Domain::disk(Complex(0.0), 1.0);
    const double coarse = t_one_error(ctx.grid(disk, ctx.cfg.n));
    const double fine = t_one_error(ctx.grid(disk, 2 * ctx.cfg.n));
    ctx.upper("theodorescu_oracle", coarse, ctx.scaled(5e-2));
    ctx.lower("theodorescu_refinement", coarse / fine, 1.5);
}

void check_dbar_inversion(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("dbar_inversion", "skipped: below minimum n");
        return;
    }
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), ctx.cfg.n);
    const GridFunction f = GridFunction::sample(grid, [](Complex z) {
        return hat_power(z, 0.0, 2) + times_j(Bicomplex(Complex(std::sin(z.real()))));
    });
    const GridFunction g = d_bar(theodorescu(f));
    ctx.upper("dbar_inversion", rel_l2_error_on(g, f, grid->safe_interior(3.0)),
              ctx.scaled(5e-2));
}

void check_adjoint_pairing(Context& ctx) {
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), std::min(ctx.cfg.n, 48));
    std::mt19937_64 rng(7777);
    double worst = 0.0;
    const TheodorescuOperator top(grid);
    for (int rep = 0; rep < 3; ++rep) {
        GridFunction f = GridFunction::zero(grid), g = GridFunction::zero(grid);
        for (std::size_t k = 0; k < f.size(); ++k) {
            f[k] = random_bicomplex(rng);
            g[k] = random_bicomplex(rng);
        }
        const Complex lhs = inner_l2(top.apply(f), g);
        const Complex rhs = inner_l2(f, top.apply_adjoint(g));
        worst = std::max(worst,
                         std::abs(lhs - rhs) / (lp_norm(f, 2.0) * lp_norm(g, 2.0)));
    }
    ctx.upper("adjoint_pairing", worst, 1e-10);
}

void check_borel_pompeiu(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("borel_pompeiu", "skipped: below minimum n");
        return;
    }
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), ctx.cfg.n);
    const auto& b = grid->boundary();
    double worst = 0.0;
    {
        const GridFunction w = analytic_power(grid, 0.0, 2);
        std::vector<Bicomplex> tr(b.size());
        for (std::size_t k = 0; k < b.size(); ++k) tr[k] = hat_power(b[k].point, 0.0, 2);
        worst = std::max(worst, borel_pompeiu_residual(w, tr));
    }
    {
        const GridFunction w = t_one_oracle(grid);  // x - j y, dbar W = 1
        std::vector<Bicomplex> tr(b.size());
        for (std::size_t k = 0; k < b.size(); ++k)
            tr[k] = Bicomplex(Complex(b[k].point.real()), Complex(-b[k].point.imag()));
        worst = std::max(worst, borel_pompeiu_residual(w, tr));
    }
    ctx.upper("borel_pompeiu", worst, ctx.scaled(5e-2));
}

// ---- classical disk kernel --------------------------------------------------

void check_disk_kernel(Context& ctx) {
    if (ctx.cfg.n < kMinKernelN) {
        ctx.skip("disk_bergman_kernel", "skipped: below minimum n");
        return;
    }
    const int nk = 3 * ctx.cfg.n / 2;
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), nk);
    const OrthoBasis basis =
        gram_schmidt(make_solution_set(Coefficients::zero(grid), ctx.cfg.basis_order));
    // nodes inside |z| <= 1/2
    std::vector<std::size_t> sel;
    for (std::size_t k = 0; k < grid->node_count(); ++k)
        if (std::abs(grid->nodes()[k]) <= 0.5) sel.push_back(k);
    // minus component of K(z,zeta) against the closed-form disk kernel
    const std::size_t m = basis.members.size();
    std::vector<std::vector<Complex>> sc(m), minus(m);
    for (std::size_t q = 0; q < m; ++q) {
        sc[q].resize(sel.size());
        minus[q].resize(sel.size());
        for (std::size_t s = 0; s < sel.size(); ++s) {
            sc[q][s] = basis.members[q][sel[s]].sc;
            minus[q][s] = basis.members[q][sel[s]].minus();
        }
    }
    double worst = 0.0;
    for (std::size_t zi = 0; zi < sel.size(); ++zi) {
        const Complex z = grid->nodes()[sel[zi]];
        for (std::size_t qi = 0; qi < sel.size(); ++qi) {
            Complex acc = 0.0;
            for (std::size_t q = 0; q < m; ++q) acc += std::conj(sc[q][qi]) * minus[q][zi];
            const Complex zeta = grid->nodes()[sel[qi]];
            const Complex exact =
                1.0 / (std::numbers::pi * std::pow(1.0 - z * std::conj(zeta), 2));
            worst = std::max(worst, std::abs(acc - exact) / std::abs(exact));
        }
    }
    ctx.upper("disk_bergman_kernel", worst, 1e-2,
              "n=" + std::to_string(nk) + ", N=" + std::to_string(ctx.cfg.basis_order));
}

// ---- solution sets, projections, conductivity link ---------------------------

GridFunction bump_field(GridPtr grid, double support_fraction) {
    const Domain& d = grid->domain();
    const double half = d.kind() == Domain::Kind::disk
                            ? d.radius()
                            : 0.5 * std::min(d.x1() - d.x0(), d.y1() - d.y0());
    // keep the support clear of the 3h compact-support margin on coarse grids
    const double r0 = std::min(support_fraction * half, half - 4.0 * grid->h());
    const Complex c = d.kind() == Domain::Kind::disk
                          ? d.center()
                          : Complex(0.5 * (d.x0() + d.x1()), 0.5 * (d.y0() + d.y1()));
    return GridFunction::sample(grid, [r0, c](Complex z) {
        const double r = std::abs(z - c) / r0;
        if (r >= 1.0) return Bicomplex{};
        const double v = std::exp(1.0 - 1.0 / (1.0 - r * r));
        return Bicomplex(Complex(v), Complex(0.5 * v));
    });
}

struct SolverArtifacts {
    GridPtr grid;
    Conductivity cond;
    Coefficients coeffs;
    VekuaSolutionSet set;
    OrthoBasis basis;
};

const SolverArtifacts& exp_artifacts(Context& ctx) {
    static std::map<int, SolverArtifacts> cache;
    auto it = cache.find(ctx.cfg.n);
    if (it != cache.end()) return it->second;
    SolverArtifacts art;
    art.grid = ctx.grid(Domain::disk(Complex(0.0), 0.8), ctx.cfg.n);
    art.cond = conductivity_from_formula("exp_x", art.grid);
    art.coeffs = b_from_f(art.cond);
    art.set = make_solution_set(art.coeffs, 8);
    art.basis = gram_schmidt(art.set);
    return cache.emplace(ctx.cfg.n, std::move(art)).first->second;
}

void check_projection_laws(Context& ctx) {
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), std::min(ctx.cfg.n, 64));
    const OrthoBasis analytic_basis =
        gram_schmidt(make_solution_set(Coefficients::zero(grid), ctx.cfg.basis_order));
    std::mt19937_64 rng(424242);
    double idem = 0.0, selfadj = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        GridFunction psi = GridFunction::zero(grid), chi = GridFunction::zero(grid);
        for (std::size_t k = 0; k < psi.size(); ++k) {
            psi[k] = random_bicomplex(rng);
            chi[k] = random_bicomplex(rng);
        }
        const GridFunction p1 = project(analytic_basis, psi);
        idem = std::max(idem, lp_norm(project(analytic_basis, p1) - p1, 2.0) /
                                  std::max(1e-300, lp_norm(psi, 2.0)));
        selfadj = std::max(
            selfadj,
            std::abs(inner_l2(p1, chi) - inner_l2(psi, project(analytic_basis, chi))) /
                std::max(1e-300, lp_norm(psi, 2.0) * lp_norm(chi, 2.0)));
    }
    ctx.upper("projection_idempotent", idem, 1e-10);
    ctx.upper("projection_self_adjoint", selfadj, 1e-10);

    if (grid->h() * 6.0 >= (grid->domain().kind() == Domain::Kind::disk
                                ? grid->domain().radius()
                                : 1.0)) {
        ctx.skip("projection_hodge", "skipped: below minimum n");
        return;
    }
    double hodge = 0.0;
    {
        const GridFunction phi = bump_field(grid, 0.6);
        const GridFunction v = hodge_complement_element(Coefficients::zero(grid), phi);
        hodge = lp_norm(project(analytic_basis, v), 2.0) / lp_norm(v, 2.0);
    }
    if (ctx.cfg.n < kMinSolverN) {
        ctx.upper("projection_hodge", hodge, ctx.scaled(5e-2), "a=b=0 only (low n)");
        return;
    }
    const SolverArtifacts& art = exp_artifacts(ctx);
    const GridFunction phi = bump_field(art.grid, 0.5);
    const GridFunction v = hodge_complement_element(art.coeffs, phi);
    hodge = std::max(hodge, lp_norm(project(art.basis, v), 2.0) / lp_norm(v, 2.0));
    ctx.upper("projection_hodge", hodge, ctx.scaled(5e-2));
}

void check_vekua_solutions(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("vekua_solutions", "skipped: below minimum n");
        ctx.skip("vekua_trivial_algebraic", "skipped: below minimum n");
        ctx.skip("vekua_trivial_fd", "skipped: below minimum n");
        ctx.skip("conductivity_link", "skipped: below minimum n");
        return;
    }
    const SolverArtifacts& art = exp_artifacts(ctx);
    const auto safe = art.grid->safe_interior(3.0);
    double worst = 0.0;
    for (const GridFunction& w : art.set.solutions) {
        const GridFunction r = vekua_residual(w, art.coeffs.a, art.coeffs.b);
        worst = std::max(worst, max_abs_on(r, safe) / sup_norm(w));
    }
    ctx.upper("vekua_solutions", worst, ctx.scaled(5e-2), "16 solutions, f=exp(x)");

    // the trivial solutions f and j/f: algebraic identity with the stored
    // gradients is exact; finite differences stay within the interior bound
    double alg = 0.0, fd = 0.0;
    const GridFunction f_sol = art.cond.f;
    const GridFunction jf_sol = GridFunction::sample(art.grid, [&](Complex z) {
        return times_j(Bicomplex(1.0 / std::exp(Complex(z.real()))));
    });
    for (const GridFunction* w : {&f_sol, &jf_sol}) {
        GridFunction dbar_exact = GridFunction::zero(art.grid);
        for (std::size_t k = 0; k < dbar_exact.size(); ++k) {
            // dbar of f and of j/f from the analytic gradient of f = exp(x)
            const Complex fx = art.cond.fx[k].sc;
            const Complex fk = art.cond.f[k].sc;
            dbar_exact[k] = (w == &f_sol)
                                ? Bicomplex(0.5 * fx)
                                : times_j(Bicomplex(-0.5 * fx / (fk * fk)));
            const Bicomplex res =
                dbar_exact[k] - art.coeffs.b[k] * conj_bar((*w)[k]);
            alg = std::max(alg, norm(res));
        }
        const GridFunction r = vekua_residual(*w, art.coeffs.a, art.coeffs.b);
        fd = std::max(fd, max_abs_on(r, safe) / sup_norm(*w));
    }
    ctx.upper("vekua_trivial_algebraic", alg, 1e-10);
    ctx.upper("vekua_trivial_fd", fd, ctx.scaled(5e-2));

    double c1 = 0.0, c2 = 0.0;
    for (const GridFunction& w : art.set.solutions) {
        const auto [r1, r2] = conductivity_residuals(art.cond, w);
        c1 = std::max(c1, r1);
        c2 = std::max(c2, r2);
    }
    ctx.upper("conductivity_link", std::max(c1, c2), ctx.scaled(5e-2),
              "div residuals " + fmt17(c1) + " / " + fmt17(c2));
}

// ---- metaharmonic conjugates --------------------------------------------------

std::vector<std::size_t> conjugation_nodes(const Grid& grid) {
    const auto ray_ok = ray_complete_mask(grid);
    const auto safe = grid.safe_interior_mask(3.0);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < grid.node_count(); ++k)
        if (ray_ok[k] && safe[k]) out.push_back(k);
    return out;
}

void check_conjugates(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("conjugate_linear", "skipped: below minimum n");
        ctx.skip("conjugate_quadratic", "skipped: below minimum n");
        ctx.skip("conjugate_exp_residual", "skipped: below minimum n");
        ctx.skip("conjugate_round_trip", "skipped: below minimum n");
        return;
    }
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), ctx.cfg.n);
    const Conductivity one = conductivity_from_formula("one", grid);
    const auto nodes = conjugation_nodes(*grid);
    const double scale2 = ctx.cfg.n < 64 ? std::pow(64.0 / ctx.cfg.n, 2) : 1.0;
    {
        const GridFunction u =
            GridFunction::sample(grid, [](Complex z) { return Bicomplex(Complex(z.real())); });
        const GridFunction v = metaharmonic_conjugate(one, u, 0.0);
        const GridFunction exact = GridFunction::sample(
            grid, [](Complex z) { return Bicomplex(Complex(z.imag())); });
        ctx.upper("conjugate_linear", max_abs_on(v - exact, nodes), 1e-3 * scale2);
    }
    {
        const GridFunction u = GridFunction::sample(grid, [](Complex z) {
            return Bicomplex(Complex(z.real() * z.real() - z.imag() * z.imag()));
        });
        const GridFunction v = metaharmonic_conjugate(one, u, 0.0);
        const GridFunction exact = GridFunction::sample(grid, [](Complex z) {
            return Bicomplex(Complex(2.0 * z.real() * z.imag()));
        });
        ctx.upper("conjugate_quadratic", max_abs_on(v - exact, nodes), 5e-3 * scale2);
    }
    const SolverArtifacts& art = exp_artifacts(ctx);
    const auto enodes = conjugation_nodes(*art.grid);
    const auto& b = art.grid->boundary();
    std::vector<Complex> phi(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) phi[k] = b[k].point.real();
    const GridFunction u = dirichlet_solve(art.cond, phi);
    const GridFunction v = metaharmonic_conjugate(art.cond, u, 0.0);
    GridFunction w = GridFunction::zero(art.grid);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = u[k] + times_j(v[k]);
    const GridFunction res = vekua_residual(w, art.coeffs.a, art.coeffs.b);
    ctx.upper("conjugate_exp_residual", max_abs_on(res, enodes) / sup_norm(w),
              ctx.scaled(5e-2));
    // round trip recovers u up to the c*f ambiguity
    const GridFunction u2 = anti_conjugate(art.cond, v, 0.0);
    Complex num = 0.0, den = 0.0;
    const auto& wq = art.grid->weights();
    for (std::size_t k : enodes) {
        num += wq[k] * (u[k].sc - u2[k].sc) * std::conj(art.cond.f[k].sc);
        den += wq[k] * std::norm(art.cond.f[k].sc);
    }
    const Complex cstar = num / den;
    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t k : enodes) {
        err2 += wq[k] * std::norm(u2[k].sc + cstar * art.cond.f[k].sc - u[k].sc);
        ref2 += wq[k] * std::norm(u[k].sc);
    }
    ctx.upper("conjugate_round_trip", std::sqrt(err2 / ref2), ctx.scaled(5e-2));
}

// ---- Hilbert transform ----------------------------------------------------------

void check_hilbert(Context& ctx) {
    if (ctx.cfg.n < kMinSolverN) {
        ctx.skip("hilbert_transform", "skipped: below minimum n");
        ctx.skip("hilbert_involution", "skipped: below minimum n");
        return;
    }
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), ctx.cfg.n);
    const Conductivity one = conductivity_from_formula("one", grid);
    const auto& b = grid->boundary();
    std::vector<Complex> phi(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) phi[k] = std::cos(b[k].param);
    const auto h1 = hilbert_transform(one, phi);
    double worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k)
        worst = std::max(worst, std::abs(h1[k] - std::sin(b[k].param)));
    ctx.upper("hilbert_transform", worst, ctx.scaled(5e-2));

    const auto h2 = hilbert_transform(one, h1);
    Complex mean = 0.0;
    double arc = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        mean += b[k].weight * phi[k];
        arc += b[k].weight;
    }
    mean /= arc;
    worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k)
        worst = std::max(worst, std::abs(h2[k] + phi[k] - mean));
    ctx.upper("hilbert_involution", worst, ctx.scaled(5e-2));
}

// ---- kernel symmetry and the b = 0 reduction ----------------------------------

void check_kernel_relations(Context& ctx) {
    GridPtr grid = ctx.grid(Domain::disk(Complex(0.0), 1.0), std::min(ctx.cfg.n, 64));
    const OrthoBasis basis = gram_schmidt(
        make_solution_set(Coefficients::zero(grid), std::min(ctx.cfg.basis_order, 8)));
    auto safe = grid->safe_interior(3.0);
    std::vector<std::size_t> picks;
    const std::size_t stride = std::max<std::size_t>(1, safe.size() / 10);
    for (std::size_t s = 0; s < safe.size() && picks.size() < 10; s += stride)
        picks.push_back(safe[s]);
    double sym = 0.0;
    for (std::size_t zi : picks)
        for (std::size_t qi : picks) {
            const KernelSample a = kernel_sample(basis, zi, qi);
            const KernelSample bkq = kernel_sample(basis, qi, zi);
            sym = std::max(sym, std::abs(a.K.sc - std::conj(bkq.K.sc)));
            sym = std::max(sym, std::abs(a.L.vec - std::conj(bkq.L.vec)));
            sym = std::max(sym, std::abs(a.L.sc - std::conj(bkq.K.vec)));
        }
    ctx.upper("kernel_symmetry", sym, 1e-8);
    ctx.upper("b_zero_reduction_analytic", b_zero_reduction_check(basis), 1e-8);

    // a constant, b = 0: reduction still holds after the solution-set solve
    const GridFunction a_const = GridFunction::constant(grid, Bicomplex(Complex(0.1)));
    const Coefficients ca = Coefficients::make(a_const, GridFunction::zero(grid));
    const OrthoBasis basis_a = gram_schmidt(make_solution_set(ca, 4));
    ctx.upper("b_zero_reduction_coefficient", b_zero_reduction_check(basis_a),
              ctx.scaled(5e-2));
}

}  // namespace

std::vector<CheckResult> run_acceptance(const RunConfig& cfg) {
    Context ctx{cfg, {}, {}};
    check_bicomplex_algebra(ctx);
    check_theodorescu(ctx);
    check_dbar_inversion(ctx);
    check_adjoint_pairing(ctx);
    check_borel_pompeiu(ctx);
    check_disk_kernel(ctx);
    check_projection_laws(ctx);
    check_vekua_solutions(ctx);
    check_conjugates(ctx);
    check_hilbert(ctx);
    check_kernel_relations(ctx);
    return std::move(ctx.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.skipped && !r.passed) return false;
    return true;
}

std::string format_check_line(const CheckResult& r) {
    std::ostringstream os;
    if (r.skipped) {
        os << "SKIP " << r.name << " (" << r.note << ")";
        return os.str();
    }
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " measured=" << fmt17(r.measured)
       << (r.lower_bound ? " >= " : " <= ") << fmt17(r.tolerance);
    if (!r.note.empty()) os << " [" << r.note << "]";
    return os.str();
}

std::string acceptance_report_json(const RunConfig& cfg,
                                   const std::vector<CheckResult>& results) {
    nlohmann::json j;
    j["config_hash"] = config_hash(cfg);
    j["n"] = cfg.n;
    j["basis_order"] = cfg.basis_order;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json e;
        e["name"] = r.name;
        e["measured"] = r.measured;
        e["tolerance"] = r.tolerance;
        e["comparison"] = r.lower_bound ? ">=" : "<=";
        e["passed"] = r.passed;
        e["skipped"] = r.skipped;
        if (!r.note.empty()) e["note"] = r.note;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["all_passed"] = all_passed(results);
    return j.dump(2);
}

}  // namespace bvekua
