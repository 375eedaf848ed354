#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bvekua/acceptance.hpp"
#include "bvekua/bergman.hpp"
#include "bvekua/integral_ops.hpp"
#include "bvekua/io.hpp"
#include "bvekua/main_vekua.hpp"

namespace py = pybind11;
using namespace bvekua;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    py::array_t<T> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    auto o = out.template mutable_unchecked<1>();
    for (std::size_t k = 0; k < v.size(); ++k) o(static_cast<py::ssize_t>(k)) = v[k];
    return out;
}

GridFunction make_grid_function(GridPtr grid, py::array_t<Complex> sc,
                                py::array_t<Complex> vec) {
    if (sc.size() != static_cast<py::ssize_t>(grid->node_count()) || sc.size() != vec.size())
        throw GridMismatchError("component arrays must have one entry per node");
    std::vector<Bicomplex> values(grid->node_count());
    auto s = sc.unchecked<1>();
    auto v = vec.unchecked<1>();
    for (py::ssize_t k = 0; k < sc.size(); ++k)
        values[static_cast<std::size_t>(k)] = Bicomplex(s(k), v(k));
    return {std::move(grid), std::move(values)};
}

py::array_t<Complex> component(const GridFunction& f, bool vec_part) {
    py::array_t<Complex> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(f.size())});
    auto o = out.mutable_unchecked<1>();
    for (std::size_t k = 0; k < f.size(); ++k)
        o(static_cast<py::ssize_t>(k)) = vec_part ? f[k].vec : f[k].sc;
    return out;
}

py::dict report_dict(const SolveReport& rep) {
    py::dict d;
    d["method"] = rep.method;
    d["iterations"] = rep.iterations;
    d["residual"] = rep.residual;
    if (rep.rcond) d["rcond"] = *rep.rcond;
    if (rep.smallest_singular_value)
        d["smallest_singular_value"] = *rep.smallest_singular_value;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bicomplex Vekua-Bergman toolkit";

    py::register_exception<ZeroDivisorError>(m, "ZeroDivisorError");
    py::register_exception<GridMismatchError>(m, "GridMismatchError");
    py::register_exception<NodeNotOnGridError>(m, "NodeNotOnGridError");
    py::register_exception<NotStarShapedError>(m, "NotStarShapedError");
    py::register_exception<NotProperError>(m, "NotProperError");
    py::register_exception<NotScalarError>(m, "NotScalarError");
    py::register_exception<SupportViolationError>(m, "SupportViolationError");
    py::register_exception<WrongCoefficientsError>(m, "WrongCoefficientsError");
    py::register_exception<SingularSystemError>(m, "SingularSystemError");
    py::register_exception<SolverDivergenceError>(m, "SolverDivergenceError");

    py::class_<Bicomplex>(m, "Bicomplex")
        .def(py::init<Complex, Complex>(), py::arg("sc"), py::arg("vec") = Complex(0.0))
        .def_readwrite("sc", &Bicomplex::sc)
        .def_readwrite("vec", &Bicomplex::vec)
        .def_property_readonly("plus", &Bicomplex::plus)
        .def_property_readonly("minus", &Bicomplex::minus)
        .def("__add__", [](const Bicomplex& a, const Bicomplex& b) { return a + b; })
        .def("__sub__", [](const Bicomplex& a, const Bicomplex& b) { return a - b; })
        .def("__mul__", [](const Bicomplex& a, const Bicomplex& b) { return a * b; })
        .def("__neg__", [](const Bicomplex& a) { return -a; })
        .def("__abs__", [](const Bicomplex& a) { return norm(a); })
        .def("__repr__", [](const Bicomplex& a) { return bicomplex_to_text(a); });
    m.def("from_idempotent", &Bicomplex::from_idempotent, py::arg("plus"), py::arg("minus"));
    m.attr("one") = bc_one;
    m.attr("j") = bc_j;
    m.attr("p_plus") = bc_p_plus;
    m.attr("p_minus") = bc_p_minus;
    m.def("conj_bar", py::overload_cast<const Bicomplex&>(&conj_bar));
    m.def("conj_dagger", py::overload_cast<const Bicomplex&>(&conj_dagger));
    m.def("conj_star", py::overload_cast<const Bicomplex&>(&conj_star));
    m.def("inner", py::overload_cast<const Bicomplex&, const Bicomplex&>(&inner));
    m.def("norm", py::overload_cast<const Bicomplex&>(&norm));
    m.def("inverse", &inverse);
    m.def("bc_exp", [](const Bicomplex& w) { return exp(w); });
    m.def("hat_power", &hat_power, py::arg("z"), py::arg("z0"), py::arg("n"));
    m.def("is_zero_divisor", &is_zero_divisor);

    py::class_<Domain>(m, "Domain")
        .def_static("disk", &Domain::disk, py::arg("center"), py::arg("radius"))
        .def_static("rectangle", &Domain::rectangle, py::arg("x0"), py::arg("x1"),
                    py::arg("y0"), py::arg("y1"))
        .def_property_readonly("star_shaped_at_origin", &Domain::star_shaped_at_origin)
        .def_property_readonly("diameter", &Domain::diameter)
        .def_property_readonly("area", &Domain::area)
        .def("contains", &Domain::contains)
        .def("boundary_distance", &Domain::boundary_distance)
        .def("__repr__", &Domain::describe);

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_property_readonly("n", &Grid::n)
        .def_property_readonly("h", &Grid::h)
        .def_property_readonly("cell_area", &Grid::cell_area)
        .def_property_readonly("node_count", &Grid::node_count)
        .def_property_readonly("nodes", [](const Grid& g) { return to_array(g.nodes()); })
        .def_property_readonly("weights",
                               [](const Grid& g) { return to_array(g.weights()); })
        .def_property_readonly("quadrature_area", &Grid::quadrature_area)
        .def_property_readonly("covered_cell_area", &Grid::covered_cell_area)
        .def_property_readonly("boundary_points",
                               [](const Grid& g) {
                                   std::vector<Complex> p;
                                   for (const auto& b : g.boundary()) p.push_back(b.point);
                                   return to_array(p);
                               })
        .def_property_readonly("boundary_params",
                               [](const Grid& g) {
                                   std::vector<double> p;
                                   for (const auto& b : g.boundary()) p.push_back(b.param);
                                   return to_array(p);
                               })
        .def("node_at", [](const Grid& g, Complex z) { return g.node_at(z); })
        .def("safe_interior",
             [](const Grid& g, double margin) { return g.safe_interior(margin); })
        .def("winding_number", &Grid::winding_number);
    m.def(
        "build_grid",
        [](const Domain& domain, int n) {
            return std::const_pointer_cast<Grid>(build_grid(domain, n));
        },
        py::arg("domain"), py::arg("n"));

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init(&make_grid_function), py::arg("grid"), py::arg("sc"), py::arg("vec"))
        .def_property_readonly(
            "grid",
            [](const GridFunction& f) { return std::const_pointer_cast<Grid>(f.grid()); })
        .def_property_readonly("sc", [](const GridFunction& f) { return component(f, false); })
        .def_property_readonly("vec", [](const GridFunction& f) { return component(f, true); })
        .def("__len__", &GridFunction::size)
        .def("__getitem__",
             [](const GridFunction& f, std::size_t k) {
                 if (k >= f.size()) throw py::index_error();
                 return f[k];
             })
        .def("__add__", [](const GridFunction& a, const GridFunction& b) { return a + b; })
        .def("__sub__", [](const GridFunction& a, const GridFunction& b) { return a - b; })
        .def("__mul__", [](const GridFunction& a, const GridFunction& b) { return a * b; })
        .def("scaled", [](const GridFunction& a, Complex c) { return c * a; });
    m.def("zero_function", &GridFunction::zero);
    m.def("constant_function", &GridFunction::constant);
    m.def("sample_function", &GridFunction::sample, py::arg("grid"), py::arg("f"));

    m.def("integrate", &integrate);
    m.def("d_bar", py::overload_cast<const GridFunction&>(&d_bar));
    m.def("d", py::overload_cast<const GridFunction&>(&d));
    m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"));
    m.def("sup_norm", &sup_norm);
    m.def("inner_l2", &inner_l2);
    m.def("analytic_power", &analytic_power, py::arg("grid"), py::arg("z0"), py::arg("n"));
    m.def("vekua_residual", &vekua_residual, py::arg("w"), py::arg("a"), py::arg("b"));

    m.def("theodorescu", &theodorescu);
    m.def("theodorescu_adjoint", &theodorescu_adjoint);
    m.def("cauchy_boundary",
          [](const GridPtr& grid, const std::vector<Bicomplex>& phi,
             const std::vector<Complex>& targets) {
              return cauchy_boundary(*grid, phi, targets);
          });
    m.def("borel_pompeiu_residual", &borel_pompeiu_residual);

    py::class_<Coefficients>(m, "Coefficients")
        .def_static("make", &Coefficients::make, py::arg("a"), py::arg("b"))
        .def_static("zero", &Coefficients::zero)
        .def_readonly("a", &Coefficients::a)
        .def_readonly("b", &Coefficients::b)
        .def_readonly("sup_a", &Coefficients::sup_a)
        .def_readonly("sup_b", &Coefficients::sup_b);
    m.def("q_apply", &q_apply);
    m.def("s_apply", &s_apply);
    m.def("solve_s", [](const Coefficients& c, const GridFunction& g) {
        SolveReport rep;
        GridFunction w = solve_s(c, g, &rep);
        return py::make_tuple(std::move(w), report_dict(rep));
    });

    py::class_<VekuaSolutionSet>(m, "VekuaSolutionSet")
        .def_readonly("solutions", &VekuaSolutionSet::solutions)
        .def_readonly("seeds", &VekuaSolutionSet::seeds)
        .def_property_readonly("reports", [](const VekuaSolutionSet& s) {
            py::list out;
            for (const auto& r : s.reports) out.append(report_dict(r));
            return out;
        });
    m.def("make_solution_set", &make_solution_set, py::arg("coefficients"),
          py::arg("n_seeds"));
    m.def("phi_a", &phi_a);
    m.def("hodge_complement_element", &hodge_complement_element);

    py::class_<OrthoBasis>(m, "OrthoBasis")
        .def_readonly("members", &OrthoBasis::members)
        .def_readonly("gram_residual", &OrthoBasis::gram_residual)
        .def_readonly("dropped", &OrthoBasis::dropped);
    m.def("gram_schmidt", &gram_schmidt);
    m.def("kernel_eval", &kernel_eval, py::arg("basis"), py::arg("a"), py::arg("z_node"),
          py::arg("zeta_node"));
    py::class_<KernelSample>(m, "KernelSample")
        .def_readonly("z", &KernelSample::z)
        .def_readonly("zeta", &KernelSample::zeta)
        .def_readonly("K", &KernelSample::K)
        .def_readonly("L", &KernelSample::L);
    m.def("kernel_sample", &kernel_sample);
    m.def("reproduce", &reproduce);
    m.def("project", &project);
    m.def("b_zero_reduction_check", &b_zero_reduction_check);

    py::class_<Conductivity>(m, "Conductivity")
        .def_static("make", &Conductivity::make, py::arg("f"), py::arg("fx"), py::arg("fy"),
                    py::arg("f_eval") = nullptr)
        .def_readonly("f", &Conductivity::f)
        .def_readonly("fx", &Conductivity::fx)
        .def_readonly("fy", &Conductivity::fy)
        .def_readonly("inv_bound", &Conductivity::inv_bound)
        .def("reciprocal", &Conductivity::reciprocal);
    m.def("conductivity_from_formula", &conductivity_from_formula, py::arg("id"),
          py::arg("grid"));
    m.def("conductivity_formula_ids", &conductivity_formula_ids);
    m.def("b_from_f", &b_from_f);
    m.def("conductivity_residuals", &conductivity_residuals);
    m.def("schrodinger_residuals", &schrodinger_residuals);
    m.def("radial_conjugation", &radial_conjugation);
    m.def("ray_complete_mask",
          [](const GridPtr& grid) { return ray_complete_mask(*grid); });
    m.def("radial_integral_at", &radial_integral_at);
    m.def("metaharmonic_conjugate", &metaharmonic_conjugate, py::arg("c"), py::arg("u"),
          py::arg("const_c") = Complex(0.0));
    m.def("anti_conjugate", &anti_conjugate, py::arg("c"), py::arg("v"),
          py::arg("const_c") = Complex(0.0));
    m.def("dirichlet_solve", &dirichlet_solve);
    m.def("hilbert_transform", &hilbert_transform);

    m.def(
        "run_acceptance",
        [](int n, int basis_order) {
            RunConfig cfg;
            cfg.n = n;
            cfg.basis_order = basis_order;
            py::list out;
            for (const auto& r : run_acceptance(cfg)) {
                py::dict d;
                d["name"] = r.name;
                d["measured"] = r.measured;
                d["tolerance"] = r.tolerance;
                d["passed"] = r.passed;
                d["skipped"] = r.skipped;
                out.append(d);
            }
            return out;
        },
        py::arg("n") = 64, py::arg("basis_order") = 16);
}
