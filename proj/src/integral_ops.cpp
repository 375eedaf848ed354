#include "bvekua/integral_ops.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace bvekua {

TheodorescuOperator::TheodorescuOperator(GridPtr grid) : grid_(std::move(grid)) {
    // exact integral of 1/(z - zeta) over the node's own centered cell: the
    // kernel is odd about the center, so the correction is zero
    self_corrections_.assign(grid_->node_count(), Bicomplex{});
}

GridFunction TheodorescuOperator::apply(const GridFunction& f) const {
    if (f.grid().get() != grid_.get() && !f.grid()->same_layout(*grid_))
        throw GridMismatchError("theodorescu: function on a different grid");
    const auto& z = grid_->nodes();
    const auto& w = grid_->weights();
    const std::size_t n = z.size();
    std::vector<Complex> fp(n), fm(n);
    for (std::size_t k = 0; k < n; ++k) {
        fp[k] = std::conj(f[k].plus());  // conjugated once so both sums share a kernel
        fm[k] = f[k].minus();
    }
    std::vector<Bicomplex> out(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        Complex accp = 0.0, accm = 0.0;
        const Complex zi = z[i];
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const Complex q = w[k] / (zi - z[k]);
            accp += q * fp[k];
            accm += q * fm[k];
        }
        out[i] = Bicomplex::from_idempotent(std::conj(accp) / std::numbers::pi,
                                            accm / std::numbers::pi) +
                 self_corrections_[i] * f[i];
    }
    return {grid_, std::move(out)};
}

GridFunction TheodorescuOperator::apply_adjoint(const GridFunction& f) const {
    if (f.grid().get() != grid_.get() && !f.grid()->same_layout(*grid_))
        throw GridMismatchError("theodorescu adjoint: function on a different grid");
    const auto& z = grid_->nodes();
    const auto& w = grid_->weights();
    const std::size_t n = z.size();
    // T* W = -p+ A W+ - p- B W-: the component kernels swap relative to T
    std::vector<Complex> fp(n), fm(n);
    for (std::size_t k = 0; k < n; ++k) {
        fp[k] = f[k].plus();
        fm[k] = std::conj(f[k].minus());
    }
    std::vector<Bicomplex> out(n);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        Complex accp = 0.0, accm = 0.0;
        const Complex zi = z[i];
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const Complex q = w[k] / (zi - z[k]);
            accp += q * fp[k];
            accm += q * fm[k];
        }
        out[i] = Bicomplex::from_idempotent(-accp / std::numbers::pi,
                                            -std::conj(accm) / std::numbers::pi) -
                 self_corrections_[i] * f[i];
    }
    return {grid_, std::move(out)};
}

std::vector<Complex> TheodorescuOperator::minus_kernel_matrix() const {
    const auto& z = grid_->nodes();
    const auto& w = grid_->weights();
    const std::size_t n = z.size();
    std::vector<Complex> m(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const double wk = w[k] / std::numbers::pi;
        for (std::size_t i = 0; i < n; ++i)
            m[i + n * k] = (i == k) ? Complex(0.0) : wk / (z[i] - z[k]);
    }
    return m;
}

namespace {

nlohmann::json domain_sidecar(const Domain& d, int n) {
    nlohmann::json j;
    if (d.kind() == Domain::Kind::disk) {
        j["kind"] = "disk";
        j["center"] = {d.center().real(), d.center().imag()};
        j["radius"] = d.radius();
    } else {
        j["kind"] = "rectangle";
        j["x0"] = d.x0();
        j["x1"] = d.x1();
        j["y0"] = d.y0();
        j["y1"] = d.y1();
    }
    j["n"] = n;
    j["layout"] = "row-major";
    j["endianness"] = "little";
    return j;
}

static_assert(std::endian::native == std::endian::little,
              "kernel cache assumes a little-endian host");

}  // namespace

void write_kernel_cache(const std::string& path, const TheodorescuOperator& op) {
    const Grid& grid = *op.grid();
    const std::size_t n = grid.node_count();
    const std::vector<Complex> col = op.minus_kernel_matrix();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FileError("cannot write kernel cache: " + path);
    std::vector<Complex> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) row[k] = col[i + n * k];
        os.write(reinterpret_cast<const char*>(row.data()),
                 static_cast<std::streamsize>(n * sizeof(Complex)));
    }
    std::ofstream sidecar(path + ".json");
    if (!sidecar) throw FileError("cannot write kernel cache sidecar");
    sidecar << domain_sidecar(grid.domain(), grid.n()).dump(2);
}

std::vector<Complex> read_kernel_cache(const std::string& path, const Grid& grid) {
    std::ifstream sidecar(path + ".json");
    if (!sidecar) throw FileError("missing kernel cache sidecar for " + path);
    nlohmann::json meta;
    sidecar >> meta;
    if (meta != domain_sidecar(grid.domain(), grid.n()))
        throw GridMismatchError("kernel cache sidecar does not match the grid");
    const std::size_t n = grid.node_count();
    std::vector<Complex> out(n * n);
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FileError("cannot open kernel cache: " + path);
    is.read(reinterpret_cast<char*>(out.data()),
            static_cast<std::streamsize>(out.size() * sizeof(Complex)));
    if (static_cast<std::size_t>(is.gcount()) != out.size() * sizeof(Complex))
        throw FileError("kernel cache truncated: " + path);
    return out;
}

GridFunction theodorescu(const GridFunction& f) {
    return TheodorescuOperator(f.grid()).apply(f);
}

GridFunction theodorescu_adjoint(const GridFunction& f) {
    return TheodorescuOperator(f.grid()).apply_adjoint(f);
}

std::vector<Bicomplex> cauchy_boundary(const Grid& grid, const std::vector<Bicomplex>& phi,
                                       const std::vector<Complex>& targets) {
    const auto& b = grid.boundary();
    if (phi.size() != b.size())
        throw GridMismatchError("cauchy_boundary: sample count does not match the boundary");
    const double min_dist = 2.0 * grid.h();
    for (Complex z : targets)
        if (grid.domain().boundary_distance(z) < min_dist * (1.0 - 1e-12))
            throw PointTooCloseToBoundaryError("cauchy_boundary target within 2h of the boundary");
    std::vector<Bicomplex> out(targets.size());
    const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Complex z = targets[t];
        Complex accp = 0.0, accm = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            const Complex dz = b[k].weight * b[k].tangent;
            accm += phi[k].minus() * dz / (b[k].point - z);
            accp += std::conj(phi[k].plus()) * dz / (b[k].point - z);
        }
        out[t] = Bicomplex::from_idempotent(std::conj(accp / two_pi_i), accm / two_pi_i);
    }
    return out;
}

GridFunction cauchy_boundary(GridPtr grid, const std::vector<Bicomplex>& phi) {
    const auto safe = grid->safe_interior(2.0);
    std::vector<Complex> pts(safe.size());
    for (std::size_t s = 0; s < safe.size(); ++s) pts[s] = grid->nodes()[safe[s]];
    const auto vals = cauchy_boundary(*grid, phi, pts);
    GridFunction out = GridFunction::zero(grid);
    for (std::size_t s = 0; s < safe.size(); ++s) out[safe[s]] = vals[s];
    return out;
}

double borel_pompeiu_residual(const GridFunction& w, const std::vector<Bicomplex>& trace) {
    const GridPtr& grid = w.grid();
    const GridFunction tw = theodorescu(d_bar(w));
    const auto safe = grid->safe_interior(3.0);
    std::vector<Complex> pts(safe.size());
    for (std::size_t s = 0; s < safe.size(); ++s) pts[s] = grid->nodes()[safe[s]];
    const auto cw = cauchy_boundary(*grid, trace, pts);
    double worst = 0.0;
    for (std::size_t s = 0; s < safe.size(); ++s) {
        const std::size_t k = safe[s];
        worst = std::max(worst, norm(cw[s] + tw[k] - w[k]));
    }
    return worst;
}

}  // namespace bvekua
