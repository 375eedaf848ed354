#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bvekua/grid_function.hpp"
#include "bvekua/integral_ops.hpp"

namespace bvekua {

/// Essentially bounded Vekua coefficients with cached sup norms.
struct Coefficients {
    GridFunction a;
    GridFunction b;
    double sup_a = 0.0;
    double sup_b = 0.0;

    static Coefficients make(GridFunction a, GridFunction b);
    static Coefficients zero(GridPtr grid);
    const GridPtr& grid() const { return a.grid(); }
};

/// Q W = a W + b conj_bar(W)
GridFunction q_apply(const Coefficients& c, const GridFunction& w);

/// S W = W - T[Q W]
GridFunction s_apply(const Coefficients& c, const GridFunction& w);

struct SolveReport {
    std::string method;  ///< "neumann" or "direct"
    int iterations = 0;
    double residual = 0.0;  ///< rel L2 residual of S W = G, measured a posteriori
    std::optional<double> rcond;
    std::optional<double> smallest_singular_value;
};

enum class SolveMode { automatic, neumann, direct };

/// Solves S W = G.  A Neumann iteration is used when the contraction bound
/// 2*sqrt(2)*diam(Omega)*max(sup_a, sup_b) stays under 0.9; otherwise (or on
/// divergence) a dense direct solve over the idempotent components runs.  The
/// direct factorization is cached, so repeated solves against the same
/// coefficients are cheap.
class VekuaSolver {
public:
    explicit VekuaSolver(Coefficients c);
    ~VekuaSolver();
    VekuaSolver(VekuaSolver&&) noexcept;
    VekuaSolver& operator=(VekuaSolver&&) noexcept;

    GridFunction solve(const GridFunction& g, SolveReport* report = nullptr,
                       SolveMode mode = SolveMode::automatic) const;
    const Coefficients& coefficients() const { return c_; }
    bool neumann_applicable() const { return neumann_ok_; }
    double contraction_bound() const { return contraction_; }

private:
    Coefficients c_;
    TheodorescuOperator top_;
    bool neumann_ok_;
    double contraction_;
    struct Direct;
    mutable std::unique_ptr<Direct> direct_;

    GridFunction solve_neumann(const GridFunction& g, SolveReport& rep) const;
    GridFunction solve_direct(const GridFunction& g, SolveReport& rep) const;
    void ensure_factorized() const;
};

GridFunction solve_s(const Coefficients& c, const GridFunction& g,
                     SolveReport* report = nullptr);

struct VekuaSolutionSet {
    Coefficients coefficients;
    std::vector<GridFunction> solutions;
    std::vector<GridFunction> seeds;
    std::vector<SolveReport> reports;
};

/// Solutions generated from the 2N seeds {zhat^n, j zhat^n : n < N}.
VekuaSolutionSet make_solution_set(const Coefficients& c, int n_seeds);

/// Phi_a = exp(T a), a particular solution of (dbar - a) W = 0.
GridFunction phi_a(const GridFunction& a);

/// (d + a^dagger + b^* C) phi for compactly supported phi; an element of the
/// orthogonal complement of the solution space.  phi must vanish within 3h of
/// the boundary.
GridFunction hodge_complement_element(const Coefficients& c, const GridFunction& phi);

}  // namespace bvekua
