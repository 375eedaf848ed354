#pragma once

#include <functional>
#include <vector>

#include "bvekua/bicomplex.hpp"
#include "bvekua/domain.hpp"

namespace bvekua {

/// Exact multiplication by the unit j (component swap, no rounding).
inline Bicomplex times_j(const Bicomplex& w) { return {-w.vec, w.sc}; }

/// A sampled bicomplex-valued function, one value per grid node.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(GridPtr grid, std::vector<Bicomplex> values);
    static GridFunction zero(GridPtr grid);
    static GridFunction constant(GridPtr grid, Bicomplex value);
    static GridFunction sample(GridPtr grid, const std::function<Bicomplex(Complex)>& f);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Bicomplex>& values() const { return values_; }
    const Bicomplex& operator[](std::size_t k) const { return values_[k]; }
    Bicomplex& operator[](std::size_t k) { return values_[k]; }

    GridFunction map(const std::function<Bicomplex(const Bicomplex&)>& f) const;

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(const Bicomplex& c, const GridFunction& a);
    friend GridFunction operator*(Complex c, const GridFunction& a);
    friend GridFunction operator*(double c, const GridFunction& a);

private:
    GridPtr grid_;
    std::vector<Bicomplex> values_;
};

void check_same_grid(const GridFunction& a, const GridFunction& b);

GridFunction conj_bar(const GridFunction& f);
GridFunction conj_dagger(const GridFunction& f);
GridFunction conj_star(const GridFunction& f);

/// Quadrature of F over the domain.
Bicomplex integrate(const GridFunction& f);

/// Discrete Cauchy-Riemann operators, centered second order at full-stencil
/// nodes and one-sided first order where a neighbor is missing.
GridFunction d_bar(const GridFunction& f);
GridFunction d(const GridFunction& f);

/// Lattice partial derivatives (same stencils as d_bar/d).
std::pair<GridFunction, GridFunction> grad(const GridFunction& f);

double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);
Complex inner_l2(const GridFunction& f, const GridFunction& g);

/// Sampled B-analytic monomial (zhat - zhat0)^n.
GridFunction analytic_power(GridPtr grid, Complex z0, int n);

/// d_bar(W) - a W - b conj_bar(W).
GridFunction vekua_residual(const GridFunction& w, const GridFunction& a, const GridFunction& b);

/// Max of |F| over the given node set, empty set gives 0.
double max_abs_on(const GridFunction& f, const std::vector<std::size_t>& nodes);

/// Relative L2 norm of (f - g) over a node subset.
double rel_l2_error_on(const GridFunction& f, const GridFunction& g,
                       const std::vector<std::size_t>& nodes);

}  // namespace bvekua
