#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bvekua/acceptance.hpp"
#include "bvekua/io.hpp"

using namespace bvekua;

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("fmt17 round trips doubles") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int s = 0; s < 200; ++s) {
        const double x = u(rng) * std::pow(10.0, s % 7 - 3);
        CHECK(std::stod(fmt17(x)) == x);
    }
    CHECK(fmt17(0.25) == "0.25");
}

TEST_CASE("bicomplex text form") {
    const std::string t = bicomplex_to_text(Bicomplex{Complex(1.0, -2.0), Complex(3.0, 4.0)});
    CHECK(t == "1-2i + j(3+4i)");
}

TEST_CASE("grid function CSV round trip is bit exact") {
    GridPtr g = build_grid(Domain::disk(Complex(0.0), 1.0), 12);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1, 1);
    GridFunction f = GridFunction::zero(g);
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = Bicomplex{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};

    std::stringstream ss;
    write_grid_function_csv(ss, f);
    const std::string first = ss.str();
    const GridFunction f2 = read_grid_function_csv(ss, g);
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(f[k] == f2[k]);

    // identical inputs produce byte-identical output
    std::stringstream ss2;
    write_grid_function_csv(ss2, f2);
    CHECK(first == ss2.str());
}

TEST_CASE("boundary CSV round trip and resampling") {
    GridPtr g = build_grid(Domain::disk(Complex(0.0), 1.0), 12);
    const auto& b = g->boundary();
    std::vector<Complex> vals(b.size());
    for (std::size_t k = 0; k < b.size(); ++k)
        vals[k] = Complex(std::cos(b[k].param), std::sin(2 * b[k].param));
    std::stringstream ss;
    write_boundary_csv(ss, *g, vals);
    const auto back = read_boundary_csv(ss, *g);
    REQUIRE(back.size() == vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) CHECK(back[k] == vals[k]);

    // a coarser external sampling is interpolated onto the grid boundary
    std::stringstream coarse;
    coarse << "theta,value_re,value_im\n";
    const int m = 97;
    for (int k = 0; k < m; ++k) {
        const double th = 2.0 * std::numbers::pi * k / m;
        coarse << fmt17(th) << "," << fmt17(std::cos(th)) << ",0\n";
    }
    const auto resampled = read_boundary_csv(coarse, *g);
    REQUIRE(resampled.size() == b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k)
        worst = std::max(worst, std::abs(resampled[k] - std::cos(b[k].param)));
    CHECK(worst < 1e-2);
}

TEST_CASE("malformed field CSVs are rejected") {
    GridPtr g = build_grid(Domain::disk(Complex(0.0), 1.0), 12);
    std::stringstream empty;
    CHECK_THROWS_AS((void)read_grid_function_csv(empty, g), FileError);
    std::stringstream bad("x,y,sc_re,sc_im,vec_re,vec_im\n0,0,1\n");
    CHECK_THROWS_AS((void)read_grid_function_csv(bad, g), FileError);
    // a single row cannot cover the grid
    std::stringstream partial("x,y,sc_re,sc_im,vec_re,vec_im\n");
    const Complex z0 = g->nodes()[0];
    partial << z0.real() << "," << z0.imag() << ",1,0,0,0\n";
    CHECK_THROWS_AS((void)read_grid_function_csv(partial, g), FileError);
}

TEST_CASE("kernel CSV header") {
    std::stringstream ss;
    write_kernel_csv(ss, {});
    std::string header;
    std::getline(ss, header);
    CHECK(header ==
          "z_re,z_im,zeta_re,zeta_im,K_sc_re,K_sc_im,K_vec_re,K_vec_im,"
          "L_sc_re,L_sc_im,L_vec_re,L_vec_im");
}

TEST_CASE("basis archive") {
    GridPtr g = build_grid(Domain::disk(Complex(0.0), 1.0), 16);
    const OrthoBasis basis =
        gram_schmidt(make_solution_set(Coefficients::zero(g), 2));
    const std::string dir = "basis_archive_test";
    write_basis_archive(dir, basis);
    std::ifstream manifest(dir + "/manifest.json");
    REQUIRE(manifest.good());
    std::stringstream buf;
    buf << manifest.rdbuf();
    CHECK(buf.str().find("member_000.csv") != std::string::npos);
    std::ifstream member(dir + "/member_000.csv");
    REQUIRE(member.good());
    const GridFunction back = read_grid_function_csv(member, g);
    for (std::size_t k = 0; k < back.size(); ++k)
        CHECK(back[k] == basis.members[0][k]);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config parsing") {
    const RunConfig cfg = RunConfig::from_json_text(
        R"({"domain":{"kind":"disk","center":[0,0],"radius":1.0,"n":64}})");
    CHECK(cfg.n == 64);
    CHECK(cfg.domain.kind() == Domain::Kind::disk);
    CHECK(cfg.domain.radius() == 1.0);

    const RunConfig cfg2 = RunConfig::from_json_text(
        R"({"domain":{"kind":"rectangle","x0":-1,"x1":1,"y0":-0.5,"y1":0.5},
            "n":32,"coefficients":{"kind":"conductivity","formula":"exp_x"},
            "basis_order":8,"tolerances":{"theodorescu_oracle":0.1}})");
    CHECK(cfg2.n == 32);
    CHECK(cfg2.coeff_kind == RunConfig::CoeffKind::conductivity);
    CHECK(cfg2.formula == "exp_x");
    CHECK(cfg2.basis_order == 8);
    CHECK(cfg2.tolerances.at("theodorescu_oracle") == 0.1);

    CHECK_THROWS_AS((void)RunConfig::from_json_text("{nope"), ConfigError);
    CHECK_THROWS_AS((void)RunConfig::from_json_text(R"({"n":4})"), ConfigError);
    CHECK_THROWS_AS(
        (void)RunConfig::from_json_text(R"({"coefficients":{"kind":"magic"}})"),
        ConfigError);
    // parse errors carry position information
    try {
        (void)RunConfig::from_json_text("{\n\"n\": }");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
}

TEST_CASE("config hash is stable and sensitive") {
    RunConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    b.n = 128;
    CHECK(config_hash(a) != config_hash(b));
    RunConfig c;
    c.tolerances["x"] = 1.0;
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("acceptance report shape") {
    RunConfig cfg;
    cfg.n = 8;  // everything resolution-dependent reports as skipped
    const auto results = run_acceptance(cfg);
    CHECK(!results.empty());
    const std::string json = acceptance_report_json(cfg, results);
    CHECK(json.find("config_hash") != std::string::npos);
    CHECK(json.find("bicomplex_algebra") != std::string::npos);
    bool any_skip = false;
    for (const auto& r : results) any_skip = any_skip || r.skipped;
    CHECK(any_skip);
    for (const auto& r : results)
        CHECK(format_check_line(r).find(r.name) != std::string::npos);
}

TEST_SUITE_END();
