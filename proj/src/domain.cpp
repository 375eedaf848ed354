#include "bvekua/domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace bvekua {

namespace {

// 32-point Gauss-Legendre rule on [-1,1], for cut-cell slice areas.
struct GaussRule {
    std::array<double, 32> x{}, w{};
    GaussRule() {
        // Newton iteration on Legendre polynomials
        const int m = 32;
        for (int i = 0; i < m / 2; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= m; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = m * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = m * (t * p1 - p0) / (t * t - 1.0);
            x[i] = -t;
            x[m - 1 - i] = t;
            w[i] = w[m - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& gauss32() {
    static const GaussRule rule;
    return rule;
}

}  // namespace

Domain Domain::disk(Complex center, double radius) {
    if (!(radius > 0.0)) throw DegenerateDomainError("disk radius must be positive");
    Domain d;
    d.kind_ = Kind::disk;
    d.center_ = center;
    d.radius_ = radius;
    d.star_shaped_ = std::abs(center) < radius;
    return d;
}

Domain Domain::rectangle(double x0, double x1, double y0, double y1) {
    if (!(x1 > x0) || !(y1 > y0)) throw DegenerateDomainError("degenerate rectangle");
    Domain d;
    d.kind_ = Kind::rectangle;
    d.x0_ = x0;
    d.x1_ = x1;
    d.y0_ = y0;
    d.y1_ = y1;
    d.star_shaped_ = (x0 < 0.0 && 0.0 < x1 && y0 < 0.0 && 0.0 < y1);
    return d;
}

double Domain::diameter() const {
    if (kind_ == Kind::disk) return 2.0 * radius_;
    return std::hypot(x1_ - x0_, y1_ - y0_);
}

double Domain::area() const {
    if (kind_ == Kind::disk) return std::numbers::pi * radius_ * radius_;
    return (x1_ - x0_) * (y1_ - y0_);
}

bool Domain::contains(Complex z) const {
    if (kind_ == Kind::disk) return std::abs(z - center_) < radius_;
    return z.real() > x0_ && z.real() < x1_ && z.imag() > y0_ && z.imag() < y1_;
}

double Domain::boundary_distance(Complex z) const {
    if (kind_ == Kind::disk) return radius_ - std::abs(z - center_);
    const double dx = std::min(z.real() - x0_, x1_ - z.real());
    const double dy = std::min(z.imag() - y0_, y1_ - z.imag());
    return std::min(dx, dy);
}

double Domain::boundary_length() const {
    if (kind_ == Kind::disk) return 2.0 * std::numbers::pi * radius_;
    return 2.0 * ((x1_ - x0_) + (y1_ - y0_));
}

double Domain::boundary_param(Complex q) const {
    if (kind_ == Kind::disk) {
        double a = std::arg(q - center_);
        if (a < 0) a += 2.0 * std::numbers::pi;
        return a;
    }
    const double lx = x1_ - x0_, ly = y1_ - y0_;
    // nearest side wins
    const double d_s = std::abs(q.imag() - y0_);
    const double d_e = std::abs(q.real() - x1_);
    const double d_n = std::abs(q.imag() - y1_);
    const double d_w = std::abs(q.real() - x0_);
    const double dmin = std::min({d_s, d_e, d_n, d_w});
    const double tx = std::clamp(q.real() - x0_, 0.0, lx);
    const double ty = std::clamp(q.imag() - y0_, 0.0, ly);
    if (dmin == d_s) return tx;
    if (dmin == d_e) return lx + ty;
    if (dmin == d_n) return lx + ly + (lx - tx);
    return 2.0 * lx + ly + (ly - ty);
}

Complex Domain::boundary_point(double param) const {
    if (kind_ == Kind::disk)
        return center_ + radius_ * std::polar(1.0, param);
    const double lx = x1_ - x0_, ly = y1_ - y0_;
    double s = std::fmod(param, boundary_length());
    if (s < 0) s += boundary_length();
    if (s < lx) return {x0_ + s, y0_};
    s -= lx;
    if (s < ly) return {x1_, y0_ + s};
    s -= ly;
    if (s < lx) return {x1_ - s, y1_};
    s -= lx;
    return {x0_, y1_ - s};
}

std::string Domain::describe() const {
    char buf[160];
    if (kind_ == Kind::disk)
        std::snprintf(buf, sizeof buf, "disk(center=(%g,%g),radius=%g)", center_.real(),
                      center_.imag(), radius_);
    else
        std::snprintf(buf, sizeof buf, "rectangle(%g,%g)x(%g,%g)", x0_, x1_, y0_, y1_);
    return buf;
}

bool Domain::operator==(const Domain& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::disk) return center_ == o.center_ && radius_ == o.radius_;
    return x0_ == o.x0_ && x1_ == o.x1_ && y0_ == o.y0_ && y1_ == o.y1_;
}

Grid::Grid(const Domain& domain, int n) : domain_(domain), n_(n) {
    if (n < 8) throw DegenerateDomainError("grid resolution must be at least 8");
    if (domain_.kind() == Domain::Kind::disk) {
        ox_ = domain_.center().real() - domain_.radius();
        oy_ = domain_.center().imag() - domain_.radius();
        hx_ = hy_ = 2.0 * domain_.radius() / n;
    } else {
        ox_ = domain_.x0();
        oy_ = domain_.y0();
        hx_ = (domain_.x1() - domain_.x0()) / n;
        hy_ = (domain_.y1() - domain_.y0()) / n;
    }
    build_nodes();
    if (nodes_.empty()) throw DegenerateDomainError("no interior cells: " + domain_.describe());
    lump_cut_cells();
    build_boundary();
}

void Grid::build_nodes() {
    inside_index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int i = 0; i < n_; ++i) {
        const double cx = ox_ + (i + 0.5) * hx_;
        for (int j = 0; j < n_; ++j) {
            const double cy = oy_ + (j + 0.5) * hy_;
            bool keep;
            if (domain_.kind() == Domain::Kind::disk) {
                // cell fully inside iff its farthest corner is
                const double dx = std::abs(cx - domain_.center().real()) + 0.5 * hx_;
                const double dy = std::abs(cy - domain_.center().imag()) + 0.5 * hy_;
                keep = std::hypot(dx, dy) <= domain_.radius();
            } else {
                keep = true;  // bounding box tiles the rectangle exactly
            }
            if (keep) {
                inside_index_[static_cast<std::size_t>(i) * n_ + j] =
                    static_cast<int>(nodes_.size());
                nodes_.emplace_back(cx, cy);
                node_ij_.emplace_back(i, j);
            }
        }
    }
    weights_.assign(nodes_.size(), hx_ * hy_);
}

void Grid::lump_cut_cells() {
    if (domain_.kind() != Domain::Kind::disk) return;
    const auto& g = gauss32();
    const double R = domain_.radius();
    const Complex c = domain_.center();
    for (int i = 0; i < n_; ++i) {
        const double cx = ox_ + (i + 0.5) * hx_;
        for (int j = 0; j < n_; ++j) {
            if (inside_index_[static_cast<std::size_t>(i) * n_ + j] >= 0) continue;
            const double cy = oy_ + (j + 0.5) * hy_;
            // skip cells fully outside (nearest corner beyond the circle)
            const double ndx = std::max(std::abs(cx - c.real()) - 0.5 * hx_, 0.0);
            const double ndy = std::max(std::abs(cy - c.imag()) - 0.5 * hy_, 0.0);
            if (std::hypot(ndx, ndy) >= R) continue;
            // overlap area of the cut cell by Gauss slices in x
            double area = 0.0;
            for (int q = 0; q < 32; ++q) {
                const double x = cx + 0.5 * hx_ * g.x[q];
                const double dx = x - c.real();
                const double t = R * R - dx * dx;
                if (t <= 0.0) continue;
                const double half = std::sqrt(t);
                const double lo = std::max(cy - 0.5 * hy_, c.imag() - half);
                const double hi = std::min(cy + 0.5 * hy_, c.imag() + half);
                if (hi > lo) area += g.w[q] * (hi - lo);
            }
            area *= 0.5 * hx_;
            if (area <= 0.0) continue;
            // nearest kept nodes share the lump; ties split to preserve symmetry
            const Complex p(cx, cy);
            double best = 1e300;
            for (std::size_t k = 0; k < nodes_.size(); ++k)
                best = std::min(best, std::norm(nodes_[k] - p));
            std::vector<std::size_t> nearest;
            const double tol = 1e-12 * (hx_ * hx_ + hy_ * hy_);
            for (std::size_t k = 0; k < nodes_.size(); ++k)
                if (std::norm(nodes_[k] - p) <= best + tol) nearest.push_back(k);
            for (std::size_t k : nearest) weights_[k] += area / nearest.size();
        }
    }
}

void Grid::build_boundary() {
    const int m_total = std::max(4 * n_, 256);
    if (domain_.kind() == Domain::Kind::disk) {
        const double R = domain_.radius();
        boundary_.reserve(m_total);
        for (int k = 0; k < m_total; ++k) {
            const double th = 2.0 * std::numbers::pi * (k + 0.5) / m_total;
            const Complex e = std::polar(1.0, th);
            boundary_.push_back({domain_.center() + R * e, Complex(0, 1) * e,
                                 2.0 * std::numbers::pi * R / m_total, th});
        }
    } else {
        const double lx = domain_.x1() - domain_.x0();
        const double ly = domain_.y1() - domain_.y0();
        const double P = 2.0 * (lx + ly);
        const std::array<double, 4> len{lx, ly, lx, ly};
        const std::array<Complex, 4> tan{Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                         Complex(0, -1)};
        const std::array<Complex, 4> start{Complex(domain_.x0(), domain_.y0()),
                                           Complex(domain_.x1(), domain_.y0()),
                                           Complex(domain_.x1(), domain_.y1()),
                                           Complex(domain_.x0(), domain_.y1())};
        double s0 = 0.0;
        for (int side = 0; side < 4; ++side) {
            const int m = std::max(2, static_cast<int>(std::ceil(m_total * len[side] / P)));
            for (int k = 0; k < m; ++k) {
                const double s = (k + 0.5) * len[side] / m;
                boundary_.push_back(
                    {start[side] + s * tan[side], tan[side], len[side] / m, s0 + s});
            }
            s0 += len[side];
        }
    }
}

std::size_t Grid::node_at(Complex z) const {
    const int i = static_cast<int>(std::floor((z.real() - ox_) / hx_));
    const int j = static_cast<int>(std::floor((z.imag() - oy_) / hy_));
    int best = -1;
    double bd = 1e300;
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
            const int k = index_at(i + di, j + dj);
            if (k < 0) continue;
            const double d = std::abs(nodes_[k] - z);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
    // accept any point within the half-cell box of the snapped node
    if (best >= 0) {
        const Complex d = nodes_[best] - z;
        if (std::abs(d.real()) <= 0.5 * hx_ * (1.0 + 1e-9) &&
            std::abs(d.imag()) <= 0.5 * hy_ * (1.0 + 1e-9))
            return static_cast<std::size_t>(best);
    }
    throw NodeNotOnGridError("point is not a grid node");
}

double Grid::quadrature_area() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

bool Grid::stencil_interior(std::size_t k) const {
    const auto [i, j] = node_ij_[k];
    return index_at(i - 1, j) >= 0 && index_at(i + 1, j) >= 0 && index_at(i, j - 1) >= 0 &&
           index_at(i, j + 1) >= 0;
}

std::vector<std::size_t> Grid::safe_interior(double margin) const {
    std::vector<std::size_t> out;
    const double d = margin * h();
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        if (domain_.boundary_distance(nodes_[k]) >= d) out.push_back(k);
    return out;
}

std::vector<bool> Grid::safe_interior_mask(double margin) const {
    std::vector<bool> out(nodes_.size(), false);
    const double d = margin * h();
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        out[k] = domain_.boundary_distance(nodes_[k]) >= d;
    return out;
}

int Grid::winding_number(Complex z) const {
    Complex acc = 0.0;
    for (const auto& bp : boundary_) acc += bp.weight * bp.tangent / (bp.point - z);
    const double w = (acc / Complex(0, 2.0 * std::numbers::pi)).real();
    return static_cast<int>(std::lround(w));
}

GridPtr build_grid(const Domain& domain, int n) { return std::make_shared<Grid>(domain, n); }

Complex boundary_interpolate(const Grid& grid, const std::vector<Complex>& values, Complex q) {
    const auto& b = grid.boundary();
    if (values.size() != b.size())
        throw GridMismatchError("boundary sample count does not match the grid boundary");
    const double P = grid.boundary_length();
    double s = grid.domain().boundary_param(q);
    // periodic linear interpolation in the arc parameter
    const std::size_t m = b.size();
    std::size_t hi = 0;
    while (hi < m && b[hi].param < s) ++hi;
    const std::size_t i1 = hi % m;
    const std::size_t i0 = (i1 + m - 1) % m;
    double s0 = b[i0].param, s1 = b[i1].param;
    if (s1 <= s0) {  // wrapped interval
        s1 += P;
        if (s < s0) s += P;
    }
    const double t = (s1 > s0) ? (s - s0) / (s1 - s0) : 0.0;
    return values[i0] * (1.0 - t) + values[i1] * t;
}

}  // namespace bvekua
