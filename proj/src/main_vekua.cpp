#include "bvekua/main_vekua.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "bvekua/errors.hpp"

namespace bvekua {

namespace {

void require_scalar(const GridFunction& g, const char* what) {
    double vec = 0.0, sup = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        vec = std::max(vec, std::abs(g[k].vec));
        sup = std::max(sup, norm(g[k]));
    }
    if (vec > 1e-12 * std::max(1.0, sup))
        throw NotScalarError(std::string(what) + " must have vanishing vector part");
}

// Lattice field of complex values with a validity mask, bilinear interpolation
// on the cell-center lattice.
class LatticeField {
public:
    LatticeField(const Grid& grid, const std::vector<Complex>& node_values)
        : n_(grid.n()), hx_(grid.hx()), hy_(grid.hy()) {
        const Complex sw = grid.nodes()[0] -
                           Complex((grid.ij_of(0).first + 0.5) * hx_,
                                   (grid.ij_of(0).second + 0.5) * hy_);
        ox_ = sw.real();
        oy_ = sw.imag();
        values_.assign(static_cast<std::size_t>(n_) * n_, Complex(0.0));
        valid_.assign(static_cast<std::size_t>(n_) * n_, false);
        for (std::size_t k = 0; k < node_values.size(); ++k) {
            const auto [i, j] = grid.ij_of(k);
            values_[static_cast<std::size_t>(i) * n_ + j] = node_values[k];
            valid_[static_cast<std::size_t>(i) * n_ + j] = true;
        }
    }

    bool interpolate(Complex p, Complex& out) const {
        const double fx = (p.real() - ox_) / hx_ - 0.5;
        const double fy = (p.imag() - oy_) / hy_ - 0.5;
        const int i0 = static_cast<int>(std::floor(fx));
        const int j0 = static_cast<int>(std::floor(fy));
        if (i0 < 0 || j0 < 0 || i0 + 1 >= n_ || j0 + 1 >= n_) return false;
        const double tx = fx - i0, ty = fy - j0;
        const std::size_t base = static_cast<std::size_t>(i0) * n_ + j0;
        if (!valid_[base] || !valid_[base + 1] || !valid_[base + n_] || !valid_[base + n_ + 1])
            return false;
        out = values_[base] * ((1 - tx) * (1 - ty)) + values_[base + n_] * (tx * (1 - ty)) +
              values_[base + 1] * ((1 - tx) * ty) + values_[base + n_ + 1] * (tx * ty);
        return true;
    }

private:
    int n_;
    double hx_, hy_, ox_, oy_;
    std::vector<Complex> values_;
    std::vector<bool> valid_;
};

std::vector<Complex> sc_values(const GridFunction& g) {
    std::vector<Complex> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = g[k].sc;
    return v;
}

// Simpson panels along the ray to z; at least 32, more for long rays.
int ray_panels(Complex z) {
    int m = std::max(32, static_cast<int>(std::ceil(32.0 * std::abs(z))));
    return m % 2 ? m + 1 : m;
}

struct RayIntegrator {
    const LatticeField& f2;
    const LatticeField& ux;
    const LatticeField& uy;

    bool sample(Complex p, Complex xw, Complex yw, Complex& g) const {
        Complex a, b, c;
        if (!f2.interpolate(p, a) || !ux.interpolate(p, b) || !uy.interpolate(p, c))
            return false;
        g = a * (yw * b - xw * c);
        return true;
    }

    // Composite Simpson over the sampled prefix; returns the number of valid
    // samples through `good` and optionally extends the clipped tail with the
    // last integrand value.
    Complex integrate(Complex z, bool extend_tail, bool& complete) const {
        const int m = ray_panels(z);
        const Complex xw(z.real()), yw(z.imag());
        std::vector<Complex> g(m + 1);
        int last = -1;
        for (int q = 0; q <= m; ++q) {
            if (!sample((static_cast<double>(q) / m) * z, xw, yw, g[q])) break;
            last = q;
        }
        complete = last == m;
        if (last < 2) {
            complete = false;
            return 0.0;
        }
        int even = last % 2 == 0 ? last : last - 1;
        Complex acc = g[0] + g[even];
        for (int q = 1; q < even; q += 2) acc += 4.0 * g[q];
        for (int q = 2; q < even; q += 2) acc += 2.0 * g[q];
        Complex val = acc / (3.0 * m);
        if (even < last) val += (g[even] + g[last]) * (0.5 / m);  // trapezoid remainder
        if (!complete && extend_tail) val += (1.0 - static_cast<double>(last) / m) * g[last];
        return val;
    }
};

struct RadialData {
    LatticeField f2, ux, uy;
};

RadialData make_radial_data(const Conductivity& c, const GridFunction& u) {
    check_same_grid(c.f, u);
    if (!c.grid()->domain().star_shaped_at_origin())
        throw NotStarShapedError("radial conjugation requires a star-shaped domain");
    require_scalar(u, "radial conjugation input");
    const Grid& grid = *c.grid();
    std::vector<Complex> f2(grid.node_count());
    std::vector<Bicomplex> Uv(grid.node_count());
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const Complex fk = c.f[k].sc;
        f2[k] = fk * fk;
        Uv[k] = Bicomplex(u[k].sc / fk);
    }
    auto [gx, gy] = grad(GridFunction(c.grid(), std::move(Uv)));
    return {LatticeField(grid, f2), LatticeField(grid, sc_values(gx)),
            LatticeField(grid, sc_values(gy))};
}

}  // namespace

Conductivity Conductivity::make(GridFunction f, GridFunction fx, GridFunction fy,
                                std::function<Complex(Complex)> f_eval) {
    check_same_grid(f, fx);
    check_same_grid(f, fy);
    require_scalar(f, "conductivity f");
    require_scalar(fx, "conductivity f_x");
    require_scalar(fy, "conductivity f_y");
    double fmin = 1e300, fmax = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        fmin = std::min(fmin, std::abs(f[k].sc));
        fmax = std::max(fmax, std::abs(f[k].sc));
    }
    if (fmin <= 1e-12 * std::max(1.0, fmax))
        throw NotProperError("conductivity vanishes on the grid");
    Conductivity c{std::move(f), std::move(fx), std::move(fy), 1.0 / fmin, std::move(f_eval)};
    return c;
}

Conductivity Conductivity::reciprocal() const {
    std::vector<Bicomplex> rf(f.size()), rfx(f.size()), rfy(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Complex fk = f[k].sc;
        rf[k] = Bicomplex(1.0 / fk);
        rfx[k] = Bicomplex(-fx[k].sc / (fk * fk));
        rfy[k] = Bicomplex(-fy[k].sc / (fk * fk));
    }
    auto eval = f_eval;
    return make(GridFunction(grid(), std::move(rf)), GridFunction(grid(), std::move(rfx)),
                GridFunction(grid(), std::move(rfy)),
                eval ? [eval](Complex z) { return 1.0 / eval(z); }
                     : std::function<Complex(Complex)>());
}

Conductivity conductivity_from_formula(const std::string& id, GridPtr grid) {
    auto sampled = [&](std::function<Complex(Complex)> g) {
        return GridFunction::sample(grid, [g](Complex z) { return Bicomplex(g(z)); });
    };
    if (id == "one") {
        auto one = [](Complex) { return Complex(1.0); };
        auto zero = [](Complex) { return Complex(0.0); };
        return Conductivity::make(sampled(one), sampled(zero), sampled(zero), one);
    }
    if (id == "exp_x") {
        auto f = [](Complex z) { return std::exp(Complex(z.real())); };
        auto zero = [](Complex) { return Complex(0.0); };
        return Conductivity::make(sampled(f), sampled(f), sampled(zero), f);
    }
    if (id == "one_plus_half_r2") {
        auto f = [](Complex z) { return Complex(1.0 + 0.5 * std::norm(z)); };
        auto fx = [](Complex z) { return Complex(z.real()); };
        auto fy = [](Complex z) { return Complex(z.imag()); };
        return Conductivity::make(sampled(f), sampled(fx), sampled(fy), f);
    }
    throw ConfigError("unknown conductivity formula: " + id);
}

std::vector<std::string> conductivity_formula_ids() {
    return {"one", "exp_x", "one_plus_half_r2"};
}

Coefficients b_from_f(const Conductivity& c) {
    std::vector<Bicomplex> b(c.f.size());
    for (std::size_t k = 0; k < c.f.size(); ++k) {
        const Complex inv = 0.5 / c.f[k].sc;
        b[k] = Bicomplex(c.fx[k].sc * inv, c.fy[k].sc * inv);
    }
    return Coefficients::make(GridFunction::zero(c.grid()),
                              GridFunction(c.grid(), std::move(b)));
}

namespace {

// Strong five-point residual of div(sigma grad U) with harmonic face averages.
// Only full-stencil nodes receive a value; others stay zero.
std::vector<Complex> div_form_residual(const Grid& grid, const std::vector<Complex>& sigma,
                                       const std::vector<Complex>& U) {
    std::vector<Complex> out(grid.node_count(), Complex(0.0));
    auto face = [&](int a, int b) {
        const Complex s = sigma[a] + sigma[b];
        return s == Complex(0.0) ? Complex(0.0) : 2.0 * sigma[a] * sigma[b] / s;
    };
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        if (!grid.stencil_interior(k)) continue;
        const auto [i, j] = grid.ij_of(k);
        const int e = grid.index_at(i + 1, j), w = grid.index_at(i - 1, j);
        const int n = grid.index_at(i, j + 1), s = grid.index_at(i, j - 1);
        const int kk = static_cast<int>(k);
        const Complex fx = (face(kk, e) * (U[e] - U[k]) - face(w, kk) * (U[k] - U[w])) /
                           (grid.hx() * grid.hx());
        const Complex fy = (face(kk, n) * (U[n] - U[k]) - face(s, kk) * (U[k] - U[s])) /
                           (grid.hy() * grid.hy());
        out[k] = fx + fy;
    }
    return out;
}

std::vector<Complex> laplacian(const Grid& grid, const std::vector<Complex>& U) {
    std::vector<Complex> out(grid.node_count(), Complex(0.0));
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        if (!grid.stencil_interior(k)) continue;
        const auto [i, j] = grid.ij_of(k);
        const int e = grid.index_at(i + 1, j), w = grid.index_at(i - 1, j);
        const int n = grid.index_at(i, j + 1), s = grid.index_at(i, j - 1);
        out[k] = (U[e] - 2.0 * U[k] + U[w]) / (grid.hx() * grid.hx()) +
                 (U[n] - 2.0 * U[k] + U[s]) / (grid.hy() * grid.hy());
    }
    return out;
}

double normalized_max(const Grid& grid, const std::vector<Complex>& r, double sup_w) {
    if (sup_w == 0.0) return 0.0;
    const auto safe = grid.safe_interior(3.0);
    double worst = 0.0;
    for (std::size_t k : safe) worst = std::max(worst, std::abs(r[k]));
    return worst * grid.h() / sup_w;
}

}  // namespace

std::pair<double, double> conductivity_residuals(const Conductivity& c, const GridFunction& w) {
    check_same_grid(c.f, w);
    const Grid& grid = *c.grid();
    const std::size_t n = grid.node_count();
    std::vector<Complex> sig1(n), sig2(n), U(n), V(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex fk = c.f[k].sc;
        sig1[k] = fk * fk;
        sig2[k] = 1.0 / (fk * fk);
        U[k] = w[k].sc / fk;
        V[k] = fk * w[k].vec;
    }
    const double sup_w = sup_norm(w);
    return {normalized_max(grid, div_form_residual(grid, sig1, U), sup_w),
            normalized_max(grid, div_form_residual(grid, sig2, V), sup_w)};
}

std::pair<double, double> schrodinger_residuals(const Conductivity& c, const GridFunction& w) {
    check_same_grid(c.f, w);
    const Grid& grid = *c.grid();
    const std::size_t n = grid.node_count();
    std::vector<Complex> f(n), finv(n), u(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
        f[k] = c.f[k].sc;
        finv[k] = 1.0 / f[k];
        u[k] = w[k].sc;
        v[k] = w[k].vec;
    }
    const auto lap_f = laplacian(grid, f);
    const auto lap_finv = laplacian(grid, finv);
    const auto lap_u = laplacian(grid, u);
    const auto lap_v = laplacian(grid, v);
    std::vector<Complex> r1(n, Complex(0.0)), r2(n, Complex(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (!grid.stencil_interior(k)) continue;
        r1[k] = -lap_u[k] + (lap_f[k] / f[k]) * u[k];
        r2[k] = -lap_v[k] + (f[k] * lap_finv[k]) * v[k];
    }
    const double sup_w = sup_norm(w);
    return {normalized_max(grid, r1, sup_w), normalized_max(grid, r2, sup_w)};
}

GridFunction radial_conjugation(const Conductivity& c, const GridFunction& u) {
    const RadialData data = make_radial_data(c, u);
    const RayIntegrator ray{data.f2, data.ux, data.uy};
    const Grid& grid = *c.grid();
    std::vector<Bicomplex> out(grid.node_count());
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        bool complete = false;
        out[k] = Bicomplex(ray.integrate(grid.nodes()[k], false, complete));
    }
    return {c.grid(), std::move(out)};
}

std::vector<bool> ray_complete_mask(const Grid& grid) {
    // validity is purely geometric: use a constant field and probe the rays
    std::vector<Complex> ones(grid.node_count(), Complex(1.0));
    const LatticeField field(grid, ones);
    std::vector<bool> mask(grid.node_count(), false);
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const Complex z = grid.nodes()[k];
        const int m = ray_panels(z);
        bool ok = true;
        Complex dummy;
        for (int q = 0; q <= m && ok; ++q)
            ok = field.interpolate((static_cast<double>(q) / m) * z, dummy);
        mask[k] = ok;
    }
    return mask;
}

std::vector<Complex> radial_integral_at(const Conductivity& c, const GridFunction& u,
                                        const std::vector<Complex>& points) {
    const RadialData data = make_radial_data(c, u);
    const RayIntegrator ray{data.f2, data.ux, data.uy};
    std::vector<Complex> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        bool complete = false;
        out[k] = ray.integrate(points[k], true, complete);
    }
    return out;
}

GridFunction metaharmonic_conjugate(const Conductivity& c, const GridFunction& u,
                                    Complex const_c) {
    const GridFunction integral = radial_conjugation(c, u);
    std::vector<Bicomplex> v(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        v[k] = Bicomplex((integral[k].sc + const_c) / c.f[k].sc);
    return {c.grid(), std::move(v)};
}

GridFunction anti_conjugate(const Conductivity& c, const GridFunction& v, Complex const_c) {
    const GridFunction integral = radial_conjugation(c.reciprocal(), v);
    std::vector<Bicomplex> u(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        u[k] = Bicomplex(c.f[k].sc * (const_c - integral[k].sc));
    return {c.grid(), std::move(u)};
}

GridFunction dirichlet_solve(const Conductivity& c, const std::vector<Complex>& phi) {
    const Grid& grid = *c.grid();
    if (phi.size() != grid.boundary().size())
        throw GridMismatchError("dirichlet_solve: boundary sample count mismatch");
    const std::size_t n = grid.node_count();
    std::vector<Complex> sigma(n);
    for (std::size_t k = 0; k < n; ++k) sigma[k] = c.f[k].sc * c.f[k].sc;

    const Domain& dom = grid.domain();
    using Trip = Eigen::Triplet<Complex>;
    std::vector<Trip> trips;
    trips.reserve(5 * n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    const std::array<std::pair<int, int>, 4> dirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (std::size_t k = 0; k < n; ++k) {
        const auto [i, j] = grid.ij_of(k);
        const Complex zk = grid.nodes()[k];
        Complex diag = 0.0;
        for (const auto& [di, dj] : dirs) {
            const double hd = di != 0 ? grid.hx() : grid.hy();
            const int nb = grid.index_at(i + di, j + dj);
            if (nb >= 0) {
                const Complex sf = 2.0 * sigma[k] * sigma[nb] / (sigma[k] + sigma[nb]);
                trips.emplace_back(static_cast<int>(k), nb, sf / (hd * hd));
                diag -= sf / (hd * hd);
            } else {
                // shortened arm to the boundary intercept
                const Complex dirv(di, dj);
                double t;
                if (dom.kind() == Domain::Kind::disk) {
                    const Complex rel = zk - dom.center();
                    const double bq = 2.0 * (rel.real() * di + rel.imag() * dj);
                    const double cq = std::norm(rel) - dom.radius() * dom.radius();
                    t = 0.5 * (-bq + std::sqrt(bq * bq - 4.0 * cq));
                } else {
                    if (di > 0)
                        t = dom.x1() - zk.real();
                    else if (di < 0)
                        t = zk.real() - dom.x0();
                    else if (dj > 0)
                        t = dom.y1() - zk.imag();
                    else
                        t = zk.imag() - dom.y0();
                }
                t = std::max(t, 1e-6 * hd);
                const Complex zb = zk + t * dirv;
                const Complex phib = boundary_interpolate(grid, phi, zb);
                Complex sf = sigma[k];
                if (c.f_eval) {
                    const Complex fb = c.f_eval(0.5 * (zk + zb));
                    sf = fb * fb;
                }
                diag -= sf / (t * hd);
                rhs(static_cast<int>(k)) -= sf * phib / (t * hd);
            }
        }
        trips.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
    }
    Eigen::SparseMatrix<Complex> mat(static_cast<int>(n), static_cast<int>(n));
    mat.setFromTriplets(trips.begin(), trips.end());
    mat.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(mat);
    if (lu.info() != Eigen::Success)
        throw SolverDivergenceError("dirichlet solve: factorization failed");
    const Eigen::VectorXcd U = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SolverDivergenceError("dirichlet solve: backsolve failed");
    std::vector<Bicomplex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = Bicomplex(c.f[k].sc * U(static_cast<int>(k)));
    return {c.grid(), std::move(out)};
}

std::vector<Complex> hilbert_transform(const Conductivity& c, const std::vector<Complex>& phi) {
    const Grid& grid = *c.grid();
    if (!grid.domain().star_shaped_at_origin())
        throw NotStarShapedError("hilbert transform requires a star-shaped domain");
    const GridFunction u = dirichlet_solve(c, phi);
    const auto& b = grid.boundary();
    std::vector<Complex> targets(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) targets[k] = b[k].point;
    const std::vector<Complex> integral = radial_integral_at(c, u, targets);
    std::vector<Complex> out(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        Complex fb;
        if (c.f_eval) {
            fb = c.f_eval(b[k].point);
        } else {
            // nearest node sample, first order in h
            std::size_t best = 0;
            double bd = 1e300;
            for (std::size_t q = 0; q < grid.node_count(); ++q) {
                const double d = std::abs(grid.nodes()[q] - b[k].point);
                if (d < bd) {
                    bd = d;
                    best = q;
                }
            }
            fb = c.f[best].sc;
        }
        out[k] = integral[k] / fb;
    }
    return out;
}

}  // namespace bvekua
