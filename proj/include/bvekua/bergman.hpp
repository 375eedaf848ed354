#pragma once

#include <vector>

#include "bvekua/vekua.hpp"

namespace bvekua {

/// Orthonormal family spanning a truncated Vekua-Bergman space.
struct OrthoBasis {
    std::vector<GridFunction> members;
    VekuaSolutionSet source;
    double gram_residual = 0.0;        ///< max |<m,n> - delta_mn| after reorthogonalization
    std::vector<std::size_t> dropped;  ///< source indices lost to rank deficiency
    const GridPtr& grid() const { return source.coefficients.grid(); }
};

/// Modified Gram-Schmidt with one reorthogonalization pass against the
/// discrete L2 inner product.  Members whose post-projection norm falls under
/// 1e-8 of the original are dropped.
OrthoBasis gram_schmidt(const VekuaSolutionSet& set);

/// Truncated reproducing kernel with coefficient A:
/// K(A; z, zeta) = sum_n <A, Phi_n(zeta)> Phi_n(z), both points grid nodes.
Bicomplex kernel_eval(const OrthoBasis& basis, const Bicomplex& a, std::size_t z_node,
                      std::size_t zeta_node);

struct KernelSample {
    Complex z, zeta;
    Bicomplex K;  ///< kernel with coefficient 1
    Bicomplex L;  ///< kernel with coefficient j
};

KernelSample kernel_sample(const OrthoBasis& basis, std::size_t z_node, std::size_t zeta_node);

/// Quadrature of zeta -> K(W(zeta); z, zeta); equals W(z) on the span of the
/// basis up to quadrature error.
Bicomplex reproduce(const OrthoBasis& basis, const GridFunction& w, std::size_t z_node);

/// Orthogonal projection onto the basis span, computed in coefficient space.
GridFunction project(const OrthoBasis& basis, const GridFunction& psi);

/// Max over a sampled node set of |L(z,zeta) - j K(z,zeta)|; requires a basis
/// built with b == 0.
double b_zero_reduction_check(const OrthoBasis& basis);

}  // namespace bvekua
