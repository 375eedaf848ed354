#include "bvekua/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bvekua/errors.hpp"

namespace bvekua {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string bicomplex_to_text(const Bicomplex& w) {
    std::ostringstream os;
    os << fmt17(w.sc.real()) << (w.sc.imag() < 0 ? "" : "+") << fmt17(w.sc.imag()) << "i + j("
       << fmt17(w.vec.real()) << (w.vec.imag() < 0 ? "" : "+") << fmt17(w.vec.imag()) << "i)";
    return os.str();
}

void write_grid_csv(std::ostream& os, const Grid& grid) {
    os << "x,y\n";
    for (Complex z : grid.nodes()) os << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
}

void write_grid_function_csv(std::ostream& os, const GridFunction& f) {
    os << "x,y,sc_re,sc_im,vec_re,vec_im\n";
    const auto& nodes = f.grid()->nodes();
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Bicomplex& w = f[k];
        os << fmt17(nodes[k].real()) << "," << fmt17(nodes[k].imag()) << ","
           << fmt17(w.sc.real()) << "," << fmt17(w.sc.imag()) << "," << fmt17(w.vec.real())
           << "," << fmt17(w.vec.imag()) << "\n";
    }
}

namespace {

std::vector<double> split_row(const std::string& line, std::size_t expected, int lineno) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw FileError("bad CSV number at line " + std::to_string(lineno));
        }
    }
    if (out.size() != expected)
        throw FileError("expected " + std::to_string(expected) + " columns at line " +
                        std::to_string(lineno));
    return out;
}

}  // namespace

GridFunction read_grid_function_csv(std::istream& is, GridPtr grid) {
    std::string line;
    if (!std::getline(is, line)) throw FileError("empty grid function CSV");
    std::vector<Bicomplex> values(grid->node_count());
    std::vector<bool> seen(grid->node_count(), false);
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto row = split_row(line, 6, lineno);
        const std::size_t k = grid->node_at(Complex(row[0], row[1]));
        values[k] = Bicomplex(Complex(row[2], row[3]), Complex(row[4], row[5]));
        seen[k] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) throw FileError("grid function CSV misses node " + std::to_string(k));
    return {std::move(grid), std::move(values)};
}

void write_boundary_csv(std::ostream& os, const Grid& grid, const std::vector<Complex>& values) {
    if (values.size() != grid.boundary().size())
        throw GridMismatchError("boundary CSV: sample count mismatch");
    os << "theta,value_re,value_im\n";
    for (std::size_t k = 0; k < values.size(); ++k)
        os << fmt17(grid.boundary()[k].param) << "," << fmt17(values[k].real()) << ","
           << fmt17(values[k].imag()) << "\n";
}

std::vector<Complex> read_boundary_csv(std::istream& is, const Grid& grid) {
    std::string line;
    if (!std::getline(is, line)) throw FileError("empty boundary CSV");
    std::vector<Complex> raw;
    std::vector<double> params;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto row = split_row(line, 3, lineno);
        params.push_back(row[0]);
        raw.emplace_back(row[1], row[2]);
    }
    const auto& b = grid.boundary();
    if (raw.size() == b.size()) return raw;
    // resample by linear interpolation in the arc parameter
    if (raw.size() < 2) throw FileError("boundary CSV needs at least 2 samples");
    std::vector<Complex> out(b.size());
    const double period = grid.boundary_length();
    for (std::size_t k = 0; k < b.size(); ++k) {
        const double s = b[k].param;
        std::size_t hi = 0;
        while (hi < params.size() && params[hi] < s) ++hi;
        const std::size_t i1 = hi % params.size();
        const std::size_t i0 = (i1 + params.size() - 1) % params.size();
        double s0 = params[i0], s1 = params[i1];
        double sq = s;
        if (s1 <= s0) {
            s1 += period;
            if (sq < s0) sq += period;
        }
        const double t = s1 > s0 ? (sq - s0) / (s1 - s0) : 0.0;
        out[k] = raw[i0] * (1.0 - t) + raw[i1] * t;
    }
    return out;
}

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples) {
    os << "z_re,z_im,zeta_re,zeta_im,K_sc_re,K_sc_im,K_vec_re,K_vec_im,"
          "L_sc_re,L_sc_im,L_vec_re,L_vec_im\n";
    for (const KernelSample& s : samples) {
        os << fmt17(s.z.real()) << "," << fmt17(s.z.imag()) << "," << fmt17(s.zeta.real())
           << "," << fmt17(s.zeta.imag()) << "," << fmt17(s.K.sc.real()) << ","
           << fmt17(s.K.sc.imag()) << "," << fmt17(s.K.vec.real()) << ","
           << fmt17(s.K.vec.imag()) << "," << fmt17(s.L.sc.real()) << ","
           << fmt17(s.L.sc.imag()) << "," << fmt17(s.L.vec.real()) << ","
           << fmt17(s.L.vec.imag()) << "\n";
    }
}

void write_basis_archive(const std::string& dir, const OrthoBasis& basis) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    json manifest;
    manifest["gram_residual"] = basis.gram_residual;
    manifest["dropped"] = basis.dropped;
    manifest["node_count"] = basis.grid()->node_count();
    json members = json::array();
    for (std::size_t m = 0; m < basis.members.size(); ++m) {
        char name[32];
        std::snprintf(name, sizeof name, "member_%03zu.csv", m);
        std::ofstream os(fs::path(dir) / name);
        if (!os) throw FileError("cannot write basis member " + std::string(name));
        write_grid_function_csv(os, basis.members[m]);
        members.push_back(name);
    }
    manifest["members"] = members;
    std::ofstream os(fs::path(dir) / "manifest.json");
    if (!os) throw FileError("cannot write basis manifest");
    os << manifest.dump(2);
}

namespace {

Domain domain_from_json(const json& j) {
    const std::string kind = j.value("kind", "disk");
    if (kind == "disk") {
        Complex center(0.0);
        if (j.contains("center")) {
            const auto& c = j.at("center");
            center = Complex(c.at(0).get<double>(), c.at(1).get<double>());
        }
        return Domain::disk(center, j.value("radius", 1.0));
    }
    if (kind == "rectangle")
        return Domain::rectangle(j.at("x0").get<double>(), j.at("x1").get<double>(),
                                 j.at("y0").get<double>(), j.at("y1").get<double>());
    throw ConfigError("unknown domain kind: " + kind);
}

json domain_to_json(const Domain& d) {
    json j;
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
    return j;
}

Bicomplex bicomplex_from_json(const json& j) {
    if (j.size() != 4) throw ConfigError("bicomplex constants need 4 entries");
    return {Complex(j.at(0).get<double>(), j.at(1).get<double>()),
            Complex(j.at(2).get<double>(), j.at(3).get<double>())};
}

}  // namespace

std::string RunConfig::canonical_json() const {
    json j;
    j["domain"] = domain_to_json(domain);
    j["n"] = n;
    json c;
    switch (coeff_kind) {
        case CoeffKind::zero:
            c["kind"] = "zero";
            break;
        case CoeffKind::constants:
            c["kind"] = "constants";
            c["a"] = {const_a.sc.real(), const_a.sc.imag(), const_a.vec.real(),
                      const_a.vec.imag()};
            c["b"] = {const_b.sc.real(), const_b.sc.imag(), const_b.vec.real(),
                      const_b.vec.imag()};
            break;
        case CoeffKind::conductivity:
            c["kind"] = "conductivity";
            c["formula"] = formula;
            break;
    }
    j["coefficients"] = c;
    j["basis_order"] = basis_order;
    j["tolerances"] = tolerances;
    j["out_dir"] = out_dir;
    return j.dump();
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        RunConfig cfg;
        if (j.contains("domain")) cfg.domain = domain_from_json(j.at("domain"));
        if (j.contains("n"))
            cfg.n = j.at("n").get<int>();
        else if (j.contains("domain") && j.at("domain").contains("n"))
            cfg.n = j.at("domain").at("n").get<int>();
        if (j.contains("coefficients")) {
            const auto& c = j.at("coefficients");
            const std::string kind = c.value("kind", "zero");
            if (kind == "zero") {
                cfg.coeff_kind = CoeffKind::zero;
            } else if (kind == "constants") {
                cfg.coeff_kind = CoeffKind::constants;
                if (c.contains("a")) cfg.const_a = bicomplex_from_json(c.at("a"));
                if (c.contains("b")) cfg.const_b = bicomplex_from_json(c.at("b"));
            } else if (kind == "conductivity") {
                cfg.coeff_kind = CoeffKind::conductivity;
                cfg.formula = c.value("formula", "one");
            } else {
                throw ConfigError("unknown coefficient kind: " + kind);
            }
        }
        if (j.contains("basis_order")) cfg.basis_order = j.at("basis_order").get<int>();
        if (j.contains("tolerances"))
            for (const auto& [key, val] : j.at("tolerances").items())
                cfg.tolerances[key] = val.get<double>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
        if (cfg.n < 8) throw ConfigError("config n must be at least 8");
        if (cfg.basis_order < 1) throw ConfigError("config basis_order must be at least 1");
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FileError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return from_json_text(buf.str());
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = cfg.canonical_json();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace bvekua
