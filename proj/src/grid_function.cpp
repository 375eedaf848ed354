#include "bvekua/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace bvekua {

std::ostream& operator<<(std::ostream& os, const Bicomplex& w) {
    std::ostringstream s;
    s << w.sc.real();
    if (w.sc.imag() >= 0)
        s << "+" << w.sc.imag() << "i";
    else
        s << w.sc.imag() << "i";
    s << " + j(" << w.vec.real();
    if (w.vec.imag() >= 0)
        s << "+" << w.vec.imag() << "i";
    else
        s << w.vec.imag() << "i";
    s << ")";
    return os << s.str();
}

GridFunction::GridFunction(GridPtr grid, std::vector<Bicomplex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->node_count())
        throw GridMismatchError("value count does not match the node count");
}

GridFunction GridFunction::zero(GridPtr grid) {
    std::vector<Bicomplex> v(grid->node_count());
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::constant(GridPtr grid, Bicomplex value) {
    std::vector<Bicomplex> v(grid->node_count(), value);
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<Bicomplex(Complex)>& f) {
    std::vector<Bicomplex> v(grid->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid->nodes()[k]);
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::map(const std::function<Bicomplex(const Bicomplex&)>& f) const {
    std::vector<Bicomplex> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(values_[k]);
    return {grid_, std::move(v)};
}

void check_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!a.grid() || !b.grid() ||
        (a.grid().get() != b.grid().get() && !a.grid()->same_layout(*b.grid())))
        throw GridMismatchError("grid functions live on different grids");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    std::vector<Bicomplex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return {a.grid(), std::move(v)};
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    std::vector<Bicomplex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
    return {a.grid(), std::move(v)};
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    std::vector<Bicomplex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] * b[k];
    return {a.grid(), std::move(v)};
}

GridFunction operator*(const Bicomplex& c, const GridFunction& a) {
    std::vector<Bicomplex> v(a.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = c * a[k];
    return {a.grid(), std::move(v)};
}

GridFunction operator*(Complex c, const GridFunction& a) { return Bicomplex(c) * a; }
GridFunction operator*(double c, const GridFunction& a) { return Bicomplex(Complex(c)) * a; }

GridFunction conj_bar(const GridFunction& f) {
    return f.map([](const Bicomplex& w) { return conj_bar(w); });
}
GridFunction conj_dagger(const GridFunction& f) {
    return f.map([](const Bicomplex& w) { return conj_dagger(w); });
}
GridFunction conj_star(const GridFunction& f) {
    return f.map([](const Bicomplex& w) { return conj_star(w); });
}

Bicomplex integrate(const GridFunction& f) {
    const auto& w = f.grid()->weights();
    Bicomplex acc;
    for (std::size_t k = 0; k < f.size(); ++k) acc += w[k] * f[k];
    return acc;
}

namespace {

enum class Axis { x, y };

// One lattice partial derivative: centered where both neighbors exist,
// one-sided otherwise, zero at isolated nodes.
GridFunction partial(const GridFunction& f, Axis axis) {
    const Grid& g = *f.grid();
    const double h = axis == Axis::x ? g.hx() : g.hy();
    std::vector<Bicomplex> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto [i, j] = g.ij_of(k);
        const int prev = axis == Axis::x ? g.index_at(i - 1, j) : g.index_at(i, j - 1);
        const int next = axis == Axis::x ? g.index_at(i + 1, j) : g.index_at(i, j + 1);
        if (prev >= 0 && next >= 0)
            out[k] = (0.5 / h) * (f[next] - f[prev]);
        else if (next >= 0)
            out[k] = (1.0 / h) * (f[next] - f[k]);
        else if (prev >= 0)
            out[k] = (1.0 / h) * (f[k] - f[prev]);
    }
    return {f.grid(), std::move(out)};
}

}  // namespace

std::pair<GridFunction, GridFunction> grad(const GridFunction& f) {
    return {partial(f, Axis::x), partial(f, Axis::y)};
}

GridFunction d_bar(const GridFunction& f) {
    const GridFunction fx = partial(f, Axis::x);
    const GridFunction fy = partial(f, Axis::y);
    std::vector<Bicomplex> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = 0.5 * (fx[k] + times_j(fy[k]));
    return {f.grid(), std::move(out)};
}

GridFunction d(const GridFunction& f) {
    const GridFunction fx = partial(f, Axis::x);
    const GridFunction fy = partial(f, Axis::y);
    std::vector<Bicomplex> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = 0.5 * (fx[k] - times_j(fy[k]));
    return {f.grid(), std::move(out)};
}

double lp_norm(const GridFunction& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
    if (std::isinf(p)) return sup_norm(f);
    const auto& w = f.grid()->weights();
    double acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) acc += w[k] * std::pow(norm(f[k]), p);
    return std::pow(acc, 1.0 / p);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, norm(f[k]));
    return m;
}

Complex inner_l2(const GridFunction& f, const GridFunction& g) {
    check_same_grid(f, g);
    const auto& w = f.grid()->weights();
    Complex acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) acc += w[k] * inner(f[k], g[k]);
    return acc;
}

GridFunction analytic_power(GridPtr grid, Complex z0, int n) {
    if (n < 0) throw std::invalid_argument("analytic_power requires n >= 0");
    return GridFunction::sample(std::move(grid),
                                [z0, n](Complex z) { return hat_power(z, z0, n); });
}

GridFunction vekua_residual(const GridFunction& w, const GridFunction& a,
                            const GridFunction& b) {
    check_same_grid(w, a);
    check_same_grid(w, b);
    GridFunction r = d_bar(w);
    std::vector<Bicomplex> out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        out[k] = r[k] - a[k] * w[k] - b[k] * conj_bar(w[k]);
    return {w.grid(), std::move(out)};
}

double max_abs_on(const GridFunction& f, const std::vector<std::size_t>& nodes) {
    double m = 0.0;
    for (std::size_t k : nodes) m = std::max(m, norm(f[k]));
    return m;
}

double rel_l2_error_on(const GridFunction& f, const GridFunction& g,
                       const std::vector<std::size_t>& nodes) {
    check_same_grid(f, g);
    const auto& w = f.grid()->weights();
    double num = 0.0, den = 0.0;
    for (std::size_t k : nodes) {
        num += w[k] * norm_sq(f[k] - g[k]);
        den += w[k] * norm_sq(g[k]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace bvekua
