#include "bvekua/vekua.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <numbers>

#include "bvekua/errors.hpp"

namespace bvekua {

namespace {

constexpr double kNeumannMargin = 0.9;
constexpr double kNeumannTol = 1e-11;
constexpr int kNeumannMaxIter = 400;
constexpr double kRcondFloor = 1e-10;

using CVec = std::vector<Complex>;

lapack_complex_double* lp(Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); }

double rel_l2(const GridFunction& r, const GridFunction& g) {
    const double den = lp_norm(g, 2.0);
    return den > 0.0 ? lp_norm(r, 2.0) / den : lp_norm(r, 2.0);
}

}  // namespace

Coefficients Coefficients::make(GridFunction a, GridFunction b) {
    check_same_grid(a, b);
    Coefficients c{std::move(a), std::move(b)};
    c.sup_a = sup_norm(c.a);
    c.sup_b = sup_norm(c.b);
    return c;
}

Coefficients Coefficients::zero(GridPtr grid) {
    return {GridFunction::zero(grid), GridFunction::zero(std::move(grid))};
}

GridFunction q_apply(const Coefficients& c, const GridFunction& w) {
    check_same_grid(c.a, w);
    std::vector<Bicomplex> out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        out[k] = c.a[k] * w[k] + c.b[k] * conj_bar(w[k]);
    return {w.grid(), std::move(out)};
}

GridFunction s_apply(const Coefficients& c, const GridFunction& w) {
    return w - theodorescu(q_apply(c, w));
}

// Dense direct solve over the idempotent components.  With a == 0 the coupled
// system reduces by one Schur step to an N x N system for the minus component:
//   (I - A diag(b-) B diag(b+)) W- = G- + A diag(b-) G+,
//   W+ = G+ + B diag(b+) W-.
// For general a the full 2N x 2N block system is assembled.
struct VekuaSolver::Direct {
    int n = 0;
    bool schur = false;           // a == 0 path
    CVec lu;                      // factorized matrix (n x n or 2n x 2n)
    std::vector<lapack_int> ipiv;
    double rcond = 0.0;
    double anorm = 0.0;
    CVec bp, bm, ap, am;          // coefficient idempotent components
};

VekuaSolver::VekuaSolver(Coefficients c)
    : c_(std::move(c)), top_(c_.grid()) {
    contraction_ = 2.0 * std::sqrt(2.0) * c_.grid()->domain().diameter() *
                   std::max(c_.sup_a, c_.sup_b);
    neumann_ok_ = contraction_ < kNeumannMargin;
}

VekuaSolver::~VekuaSolver() = default;
VekuaSolver::VekuaSolver(VekuaSolver&&) noexcept = default;
VekuaSolver& VekuaSolver::operator=(VekuaSolver&&) noexcept = default;

GridFunction VekuaSolver::solve(const GridFunction& g, SolveReport* report,
                                SolveMode mode) const {
    check_same_grid(c_.a, g);
    SolveReport rep;
    GridFunction w = GridFunction::zero(g.grid());
    bool done = false;
    if (mode == SolveMode::neumann) {
        w = solve_neumann(g, rep);  // throws on divergence when forced
        done = true;
    } else if (mode == SolveMode::automatic && neumann_ok_) {
        try {
            w = solve_neumann(g, rep);
            done = true;
        } catch (const SolverDivergenceError&) {
            done = false;  // fall back to the direct solve
        }
    }
    if (!done) w = solve_direct(g, rep);
    rep.residual = rel_l2(s_apply(c_, w) - g, g);
    if (report) *report = rep;
    return w;
}

GridFunction VekuaSolver::solve_neumann(const GridFunction& g, SolveReport& rep) const {
    rep.method = "neumann";
    GridFunction w = g;
    GridFunction term = g;
    const double gnorm = lp_norm(g, 2.0);
    if (gnorm == 0.0) return GridFunction::zero(g.grid());
    for (int it = 1; it <= kNeumannMaxIter; ++it) {
        term = top_.apply(q_apply(c_, term));  // (T Q)^it g
        w = w + term;
        rep.iterations = it;
        if (lp_norm(term, 2.0) <= kNeumannTol * gnorm) return w;
    }
    throw SolverDivergenceError("neumann iteration did not reach tolerance");
}

void VekuaSolver::ensure_factorized() const {
    if (direct_) return;
    auto d = std::make_unique<Direct>();
    const Grid& grid = *c_.grid();
    const int n = static_cast<int>(grid.node_count());
    d->n = n;
    d->ap.resize(n);
    d->am.resize(n);
    d->bp.resize(n);
    d->bm.resize(n);
    for (int k = 0; k < n; ++k) {
        d->ap[k] = c_.a[k].plus();
        d->am[k] = c_.a[k].minus();
        d->bp[k] = c_.b[k].plus();
        d->bm[k] = c_.b[k].minus();
    }
    const double scale = std::max(1.0, c_.sup_b);
    d->schur = c_.sup_a <= 1e-14 * scale;
    const CVec akern = top_.minus_kernel_matrix();  // akern[i + n*k] = w_k/(pi (z_i - z_k))
    const Complex one(1.0), zero(0.0), minus_one(-1.0);
    if (d->schur) {
        CVec m1(akern.size()), m2(akern.size());
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                m1[i + static_cast<std::size_t>(n) * k] =
                    akern[i + static_cast<std::size_t>(n) * k] * d->bm[k];
                m2[i + static_cast<std::size_t>(n) * k] =
                    std::conj(akern[i + static_cast<std::size_t>(n) * k]) * d->bp[k];
            }
        d->lu.assign(static_cast<std::size_t>(n) * n, Complex(0.0));
        cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, &minus_one, m1.data(),
                    n, m2.data(), n, &zero, d->lu.data(), n);
        for (int i = 0; i < n; ++i) d->lu[i + static_cast<std::size_t>(n) * i] += one;
    } else {
        const int n2 = 2 * n;
        d->lu.assign(static_cast<std::size_t>(n2) * n2, Complex(0.0));
        auto at = [&](int i, int k) -> Complex& {
            return d->lu[i + static_cast<std::size_t>(n2) * k];
        };
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                const Complex a_ik = akern[i + static_cast<std::size_t>(n) * k];
                const Complex b_ik = std::conj(a_ik);
                at(i, k) = -b_ik * d->ap[k];
                at(i, n + k) = -b_ik * d->bp[k];
                at(n + i, k) = -a_ik * d->bm[k];
                at(n + i, n + k) = -a_ik * d->am[k];
            }
        for (int i = 0; i < n2; ++i) at(i, i) += one;
    }
    const int m = d->schur ? n : 2 * n;
    d->anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', m, m, lp(d->lu.data()), m);
    d->ipiv.resize(m);
    const int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, m, m, lp(d->lu.data()), m, d->ipiv.data());
    if (info > 0) throw SingularSystemError("dense vekua system is exactly singular");
    if (info < 0) throw std::runtime_error("zgetrf failed");
    LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', m, lp(d->lu.data()), m, d->anorm, &d->rcond);
    if (d->rcond < kRcondFloor)
        throw SingularSystemError("vekua system is numerically rank deficient (rcond " +
                                  std::to_string(d->rcond) + ")");
    direct_ = std::move(d);
}

GridFunction VekuaSolver::solve_direct(const GridFunction& g, SolveReport& rep) const {
    ensure_factorized();
    const Direct& d = *direct_;
    rep.method = "direct";
    rep.rcond = d.rcond;
    rep.smallest_singular_value = d.rcond * d.anorm;
    const int n = d.n;
    const Grid& grid = *c_.grid();
    const auto& z = grid.nodes();
    const auto& wq = grid.weights();
    CVec gp(n), gm(n);
    for (int k = 0; k < n; ++k) {
        gp[k] = g[k].plus();
        gm[k] = g[k].minus();
    }
    std::vector<Bicomplex> out(n);
    if (d.schur) {
        // rhs = G- + A[b- G+], applied on the fly
        CVec src(n), rhs(n);
        for (int k = 0; k < n; ++k) src[k] = d.bm[k] * gp[k];
        for (int i = 0; i < n; ++i) {
            Complex acc = 0.0;
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                acc += wq[k] * src[k] / (z[i] - z[k]);
            }
            rhs[i] = gm[i] + acc / std::numbers::pi;
        }
        if (LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lp(const_cast<Complex*>(d.lu.data())),
                           n, d.ipiv.data(), lp(rhs.data()), n) != 0)
            throw std::runtime_error("zgetrs failed");
        // W+ = G+ + B[b+ W-]
        for (int k = 0; k < n; ++k) src[k] = std::conj(d.bp[k] * rhs[k]);
        for (int i = 0; i < n; ++i) {
            Complex acc = 0.0;
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                acc += wq[k] * src[k] / (z[i] - z[k]);
            }
            out[i] = Bicomplex::from_idempotent(gp[i] + std::conj(acc) / std::numbers::pi,
                                                rhs[i]);
        }
    } else {
        CVec rhs(2 * static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            rhs[k] = gp[k];
            rhs[n + k] = gm[k];
        }
        if (LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', 2 * n, 1,
                           lp(const_cast<Complex*>(d.lu.data())), 2 * n, d.ipiv.data(),
                           lp(rhs.data()), 2 * n) != 0)
            throw std::runtime_error("zgetrs failed");
        for (int k = 0; k < n; ++k) out[k] = Bicomplex::from_idempotent(rhs[k], rhs[n + k]);
    }
    return {g.grid(), std::move(out)};
}

GridFunction solve_s(const Coefficients& c, const GridFunction& g, SolveReport* report) {
    return VekuaSolver(c).solve(g, report);
}

VekuaSolutionSet make_solution_set(const Coefficients& c, int n_seeds) {
    if (n_seeds < 1) throw std::invalid_argument("make_solution_set requires N >= 1");
    VekuaSolutionSet set;
    set.coefficients = c;
    VekuaSolver solver(c);
    for (int n = 0; n < n_seeds; ++n) {
        const GridFunction zn = analytic_power(c.grid(), Complex(0.0), n);
        for (const GridFunction& seed : {zn, bc_j * zn}) {
            SolveReport rep;
            set.solutions.push_back(solver.solve(seed, &rep));
            set.seeds.push_back(seed);
            set.reports.push_back(rep);
        }
    }
    return set;
}

GridFunction phi_a(const GridFunction& a) {
    return theodorescu(a).map([](const Bicomplex& w) { return exp(w); });
}

GridFunction hodge_complement_element(const Coefficients& c, const GridFunction& phi) {
    check_same_grid(c.a, phi);
    const Grid& grid = *phi.grid();
    const double sup = sup_norm(phi);
    const auto near = grid.safe_interior_mask(3.0);
    for (std::size_t k = 0; k < phi.size(); ++k)
        if (!near[k] && norm(phi[k]) > 1e-14 * std::max(1.0, sup))
            throw SupportViolationError("phi does not vanish within 3h of the boundary");
    GridFunction dphi = d(phi);
    std::vector<Bicomplex> out(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k)
        out[k] = dphi[k] + conj_dagger(c.a[k]) * phi[k] + conj_star(c.b[k]) * conj_bar(phi[k]);
    return {phi.grid(), std::move(out)};
}

}  // namespace bvekua
