// Verification suite entry point: runs every check at the default
// configuration (unit disk, n = 64, basis order 16) and prints one line per
// check.  Nonzero exit on any failure.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "bvekua/acceptance.hpp"

int main(int argc, char** argv) {
    bvekua::RunConfig cfg;
    if (argc > 1) cfg.n = std::atoi(argv[1]);
    if (argc > 2) cfg.basis_order = std::atoi(argv[2]);

    const auto t0 = std::chrono::steady_clock::now();
    const auto results = bvekua::run_acceptance(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const auto& r : results) std::cout << bvekua::format_check_line(r) << "\n";
    std::cout << "total: " << results.size() << " checks in " << secs << " s\n";
    return bvekua::all_passed(results) ? 0 : 1;
}
