#pragma once

#include <vector>

#include "bvekua/grid_function.hpp"

namespace bvekua {

/// Discrete Theodorescu operator: weighted punctured-midpoint quadrature of
/// the kernel 1/(pi (zhat - zetahat)) over the grid, acting componentwise in
/// idempotent coordinates.  The singular self cell contributes its exact
/// integral, which vanishes by odd symmetry for a centered rectangular cell;
/// the correction table is kept per node.
class TheodorescuOperator {
public:
    explicit TheodorescuOperator(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    const std::vector<Bicomplex>& self_corrections() const { return self_corrections_; }

    /// T F
    GridFunction apply(const GridFunction& f) const;
    /// T* F, the L2 adjoint; same kernel table transposed (with the sign and
    /// component swap of the adjoint), so the discrete pairing identity
    /// <T F, G> = <F, T* G> is exact.
    GridFunction apply_adjoint(const GridFunction& f) const;

    /// Dense matrix of the minus-component kernel, column major:
    /// M[i + N*k] = w_k / (pi (z_i - z_k)), zero diagonal.  The plus-component
    /// matrix is its entrywise conjugate.
    std::vector<Complex> minus_kernel_matrix() const;

private:
    GridPtr grid_;
    std::vector<Bicomplex> self_corrections_;
};

GridFunction theodorescu(const GridFunction& f);
GridFunction theodorescu_adjoint(const GridFunction& f);

/// Binary cache of the N x N minus-component kernel matrix: row-major
/// little-endian complex doubles at `path`, with a JSON sidecar
/// `path + ".json"` recording the domain spec and n.
void write_kernel_cache(const std::string& path, const TheodorescuOperator& op);
/// Loads a cache written by write_kernel_cache, validating the sidecar
/// against the grid; returns the row-major matrix.
std::vector<Complex> read_kernel_cache(const std::string& path, const Grid& grid);

/// Boundary Cauchy integral at explicit target points, trapezoid rule over
/// the boundary polyline.  Every target must be at least 2h away from the
/// boundary.
std::vector<Bicomplex> cauchy_boundary(const Grid& grid, const std::vector<Bicomplex>& phi,
                                       const std::vector<Complex>& targets);

/// Same, evaluated at all grid nodes with boundary distance >= 2h; other
/// entries are zero.
GridFunction cauchy_boundary(GridPtr grid, const std::vector<Bicomplex>& phi);

/// Max over safe interior nodes of |C[tr W] + T[d_bar W] - W|.
/// The boundary trace is supplied analytically by the caller.
double borel_pompeiu_residual(const GridFunction& w, const std::vector<Bicomplex>& trace);

}  // namespace bvekua
