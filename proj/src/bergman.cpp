#include "bvekua/bergman.hpp"

#include <cmath>

#include "bvekua/errors.hpp"

namespace bvekua {

OrthoBasis gram_schmidt(const VekuaSolutionSet& set) {
    if (set.solutions.empty()) throw EmptyBasisError("empty solution set");
    OrthoBasis basis;
    basis.source = set;
    for (std::size_t s = 0; s < set.solutions.size(); ++s) {
        GridFunction v = set.solutions[s];
        const double original = lp_norm(v, 2.0);
        for (int pass = 0; pass < 2; ++pass)
            for (const GridFunction& m : basis.members) v = v - inner_l2(v, m) * m;
        const double left = lp_norm(v, 2.0);
        if (left < 1e-8 * original || left == 0.0) {
            basis.dropped.push_back(s);
            continue;
        }
        basis.members.push_back((1.0 / left) * v);
    }
    if (basis.members.empty()) throw EmptyBasisError("all members dropped in gram_schmidt");
    double worst = 0.0;
    for (std::size_t m = 0; m < basis.members.size(); ++m)
        for (std::size_t k = 0; k <= m; ++k) {
            const Complex g = inner_l2(basis.members[m], basis.members[k]);
            worst = std::max(worst, std::abs(g - (m == k ? Complex(1.0) : Complex(0.0))));
        }
    basis.gram_residual = worst;
    return basis;
}

Bicomplex kernel_eval(const OrthoBasis& basis, const Bicomplex& a, std::size_t z_node,
                      std::size_t zeta_node) {
    const std::size_t n = basis.grid()->node_count();
    if (z_node >= n || zeta_node >= n) throw NodeNotOnGridError("kernel_eval node index");
    Bicomplex acc;
    for (const GridFunction& m : basis.members)
        acc += inner(a, m[zeta_node]) * m[z_node];
    return acc;
}

KernelSample kernel_sample(const OrthoBasis& basis, std::size_t z_node, std::size_t zeta_node) {
    const auto& nodes = basis.grid()->nodes();
    return {nodes[z_node], nodes[zeta_node], kernel_eval(basis, bc_one, z_node, zeta_node),
            kernel_eval(basis, bc_j, z_node, zeta_node)};
}

Bicomplex reproduce(const OrthoBasis& basis, const GridFunction& w, std::size_t z_node) {
    check_same_grid(w, basis.members.front());
    const Grid& grid = *basis.grid();
    if (z_node >= grid.node_count()) throw NodeNotOnGridError("reproduce node index");
    const auto& wq = grid.weights();
    Bicomplex acc;
    for (std::size_t zeta = 0; zeta < grid.node_count(); ++zeta) {
        Bicomplex kval;  // K(W(zeta); z, zeta)
        for (const GridFunction& m : basis.members)
            kval += inner(w[zeta], m[zeta]) * m[z_node];
        acc += wq[zeta] * kval;
    }
    return acc;
}

GridFunction project(const OrthoBasis& basis, const GridFunction& psi) {
    check_same_grid(psi, basis.members.front());
    GridFunction out = GridFunction::zero(psi.grid());
    for (const GridFunction& m : basis.members) out = out + inner_l2(psi, m) * m;
    return out;
}

double b_zero_reduction_check(const OrthoBasis& basis) {
    const Coefficients& c = basis.source.coefficients;
    if (c.sup_b > 1e-12 * std::max(1.0, c.sup_a))
        throw WrongCoefficientsError("b_zero_reduction_check requires b == 0");
    const Grid& grid = *basis.grid();
    auto safe = grid.safe_interior(3.0);
    if (safe.empty()) safe = grid.safe_interior(1.0);
    // 10 x 10 strided sample of interior node pairs
    std::vector<std::size_t> picks;
    const std::size_t stride = std::max<std::size_t>(1, safe.size() / 10);
    for (std::size_t s = 0; s < safe.size() && picks.size() < 10; s += stride)
        picks.push_back(safe[s]);
    double worst = 0.0;
    for (std::size_t zi : picks)
        for (std::size_t qi : picks) {
            const KernelSample ks = kernel_sample(basis, zi, qi);
            worst = std::max(worst, norm(ks.L - bc_j * ks.K));
        }
    return worst;
}

}  // namespace bvekua
