#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bvekua/vekua.hpp"

namespace bvekua {

/// A proper conductivity: non-vanishing complex scalar f with gradient
/// samples and the sup of 1/|f|.
struct Conductivity {
    GridFunction f;
    GridFunction fx;
    GridFunction fy;
    double inv_bound = 0.0;
    /// optional analytic evaluator, used for boundary values of f
    std::function<Complex(Complex)> f_eval;

    static Conductivity make(GridFunction f, GridFunction fx, GridFunction fy,
                             std::function<Complex(Complex)> f_eval = nullptr);
    Conductivity reciprocal() const;
    const GridPtr& grid() const { return f.grid(); }
};

/// Built-in catalog: "one", "exp_x", "one_plus_half_r2".
Conductivity conductivity_from_formula(const std::string& id, GridPtr grid);
std::vector<std::string> conductivity_formula_ids();

/// Main-Vekua coefficients a = 0, b = dbar(f)/f from the stored gradients.
Coefficients b_from_f(const Conductivity& c);

/// Normalized strong residuals of the two conductivity equations for
/// W = u + j v: div(f^2 grad(u/f)) and div(f^-2 grad(f v)), conservative
/// five-point with harmonic face averages, max over safe interior nodes,
/// scaled by h/sup|W|.
std::pair<double, double> conductivity_residuals(const Conductivity& c, const GridFunction& w);

/// Normalized residuals of -lap u + q_f u and -lap v + q_{1/f} v with the
/// discrete potentials q_f = lap(f)/f and q_{1/f} = f lap(1/f).
std::pair<double, double> schrodinger_residuals(const Conductivity& c, const GridFunction& w);

/// The radial conjugation operator I_f: integral over the segment [0, z] of
/// f^2(tz) (y Ux(tz) - x Uy(tz)) dt with U = u/f, composite Simpson over
/// bilinearly interpolated gradient samples.  Requires a star-shaped domain
/// and scalar u.  Rays without full interpolation support are clipped; see
/// ray_complete_mask.
GridFunction radial_conjugation(const Conductivity& c, const GridFunction& u);

/// Nodes whose whole radial segment admits bilinear interpolation; the
/// pass/fail node set for conjugation identities.
std::vector<bool> ray_complete_mask(const Grid& grid);

/// I_f u evaluated at arbitrary points (boundary targets included); clipped
/// rays are extended with their last integrand sample.
std::vector<Complex> radial_integral_at(const Conductivity& c, const GridFunction& u,
                                        const std::vector<Complex>& points);

/// v = (1/f) I_f u + const_c / f, the conjugate making u + j v a main-Vekua
/// solution.
GridFunction metaharmonic_conjugate(const Conductivity& c, const GridFunction& u,
                                    Complex const_c);

/// u = -f I_{1/f} v + const_c f, the reverse construction.
GridFunction anti_conjugate(const Conductivity& c, const GridFunction& v, Complex const_c);

/// Solves div(f^2 grad U) = 0 with tr(U) = phi (samples on the grid boundary
/// polyline), conservative five-point scheme with boundary-intercept arms;
/// returns u = f U.
GridFunction dirichlet_solve(const Conductivity& c, const std::vector<Complex>& phi);

/// H_f phi = tr((1/f) I_f u) for the u solving the Dirichlet problem above;
/// values at the grid boundary samples.
std::vector<Complex> hilbert_transform(const Conductivity& c, const std::vector<Complex>& phi);

}  // namespace bvekua
