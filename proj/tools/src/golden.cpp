#include <filesystem>
#include <fstream>
#include <iostream>

#include "sivhs_cli/run.hpp"

// Writes the builtin algebras as spec files, the metric examples and the golden frobenius report.
int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: sivhs_golden <data-dir>\n";
        return 2;
    }
    namespace fs = std::filesystem;
    const fs::path root(argv[1]);
    fs::create_directories(root / "models");
    fs::create_directories(root / "golden");
    for (const auto& name : sivhs::cli::builtin_algebras()) {
        std::ofstream(root / "models" / (name + ".json")) << sivhs::cli::dump(sivhs::cli::algebra_to_json(*sivhs::cli::builtin_algebra(name)));
    }
    sivhs::Matrix diag1 = sivhs::Matrix::identity(1);
    sivhs::Matrix diag12 = sivhs::Matrix::identity(2);
    diag12(1, 1) = 2;
    std::ofstream(root / "diag1.json") << sivhs::cli::dump(sivhs::cli::metric_to_json(diag1));
    std::ofstream(root / "diag12.json") << sivhs::cli::dump(sivhs::cli::metric_to_json(diag12));
    sivhs::cli::Options o;
    o.command = "frobenius";
    o.model = "torus-n1";
    o.order = 3;
    std::ofstream(root / "golden" / "frobenius-torus-n1-order3.json") << sivhs::cli::dump(sivhs::cli::run(o).report);
    return 0;
}
