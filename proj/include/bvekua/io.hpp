#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bvekua/bergman.hpp"
#include "bvekua/grid_function.hpp"

namespace bvekua {

/// Shortest round-trip decimal form (17 significant digits).
std::string fmt17(double x);

/// Textual echo form "a+bi + j(c+di)".
std::string bicomplex_to_text(const Bicomplex& w);

void write_grid_csv(std::ostream& os, const Grid& grid);
void write_grid_function_csv(std::ostream& os, const GridFunction& f);
GridFunction read_grid_function_csv(std::istream& is, GridPtr grid);

/// Boundary data rows: param,value_re,value_im.
void write_boundary_csv(std::ostream& os, const Grid& grid, const std::vector<Complex>& values);
std::vector<Complex> read_boundary_csv(std::istream& is, const Grid& grid);

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples);

/// Per-member GridFunction CSVs plus a JSON manifest under `dir`.
void write_basis_archive(const std::string& dir, const OrthoBasis& basis);

struct RunConfig {
    Domain domain = Domain::disk(Complex(0.0), 1.0);
    int n = 64;
    enum class CoeffKind { zero, constants, conductivity };
    CoeffKind coeff_kind = CoeffKind::zero;
    Bicomplex const_a;
    Bicomplex const_b;
    std::string formula = "one";
    int basis_order = 16;
    std::map<std::string, double> tolerances;
    std::string out_dir = ".";

    std::string canonical_json() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig load(const std::string& path);
};

/// FNV-1a hash of the canonical config serialization, hex encoded.
std::string config_hash(const RunConfig& cfg);

}  // namespace bvekua
