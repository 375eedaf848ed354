#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bvekua/bicomplex.hpp"
#include "bvekua/errors.hpp"

namespace bvekua {

/// Bounded planar model domain: a disk or an axis-aligned rectangle.
class Domain {
public:
    enum class Kind { disk, rectangle };

    static Domain disk(Complex center, double radius);
    static Domain rectangle(double x0, double x1, double y0, double y1);

    Kind kind() const { return kind_; }
    Complex center() const { return center_; }
    double radius() const { return radius_; }
    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double y0() const { return y0_; }
    double y1() const { return y1_; }

    bool star_shaped_at_origin() const { return star_shaped_; }
    double diameter() const;
    double area() const;
    bool contains(Complex z) const;
    /// Signed distance to the boundary; positive inside.
    double boundary_distance(Complex z) const;
    /// Arc parameter of a boundary point: the angle for disks, arclength for
    /// rectangles (counterclockwise from the south-west corner).
    double boundary_param(Complex q) const;
    double boundary_length() const;
    Complex boundary_point(double param) const;

    std::string describe() const;
    bool operator==(const Domain& other) const;

private:
    Kind kind_ = Kind::disk;
    Complex center_{0.0, 0.0};
    double radius_ = 1.0;
    double x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0;
    bool star_shaped_ = false;
};

struct BoundaryPoint {
    Complex point;
    Complex tangent;  ///< unit tangent, counterclockwise orientation
    double weight;    ///< arclength weight of the sample
    double param;     ///< arc parameter (angle or arclength)
};

/// Uniform cell-center quadrature grid over a domain.
///
/// The n-by-n lattice covers the bounding box; a node is kept iff its whole
/// cell lies inside the domain.  Quadrature weights start at the cell area
/// and the area of boundary-cut cells is lumped onto the nearest kept nodes,
/// so that the weights sum to the domain area while every node stays a true
/// interior cell center.
class Grid {
public:
    Grid(const Domain& domain, int n);

    const Domain& domain() const { return domain_; }
    int n() const { return n_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    /// largest lattice spacing; used for distance margins
    double h() const { return std::max(hx_, hy_); }
    double cell_area() const { return hx_ * hy_; }

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<Complex>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    int index_at(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) return -1;
        return inside_index_[static_cast<std::size_t>(i) * n_ + j];
    }
    std::pair<int, int> ij_of(std::size_t k) const { return node_ij_[k]; }

    /// Nearest node within half a cell of z, else NodeNotOnGridError.
    std::size_t node_at(Complex z) const;

    const std::vector<BoundaryPoint>& boundary() const { return boundary_; }
    double boundary_length() const { return domain_.boundary_length(); }

    /// Area of the kept cells alone (the raw inner approximation).
    double covered_cell_area() const { return static_cast<double>(nodes_.size()) * cell_area(); }
    /// Sum of the quadrature weights; the cut-cell lump makes this the domain area.
    double quadrature_area() const;

    bool stencil_interior(std::size_t k) const;
    /// Nodes at boundary distance >= margin*h; the evaluation set for the
    /// operator identities.
    std::vector<std::size_t> safe_interior(double margin) const;
    std::vector<bool> safe_interior_mask(double margin) const;

    /// Discrete winding number of the boundary polyline about z.
    int winding_number(Complex z) const;

    bool same_layout(const Grid& other) const {
        return n_ == other.n_ && domain_ == other.domain_;
    }

private:
    Domain domain_;
    int n_;
    double hx_, hy_;
    double ox_, oy_;  // lattice origin (bounding box corner)
    std::vector<Complex> nodes_;
    std::vector<double> weights_;
    std::vector<int> inside_index_;
    std::vector<std::pair<int, int>> node_ij_;
    std::vector<BoundaryPoint> boundary_;

    void build_nodes();
    void lump_cut_cells();
    void build_boundary();
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const Domain& domain, int n);

/// Linear interpolation of boundary samples at an arbitrary boundary point.
Complex boundary_interpolate(const Grid& grid, const std::vector<Complex>& values, Complex q);

}  // namespace bvekua
