#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sivhs/dgbv.hpp"
#include "sivhs/report.hpp"
#include "sivhs_cli/spec_io.hpp"

namespace sivhs::cli {

struct Options {
    std::string command;
    int order = 3;
    std::optional<std::string> filtration;
    std::optional<std::string> metric;
    std::optional<std::string> model;
    std::uint64_t seed = 1;
    int cases = 100;
};

struct Outcome {
    Json report;
    int exit_code = 0;
};

// Builtin dGBV fixtures by name, in a fixed order.
std::vector<std::string> builtin_algebras();
std::optional<DgbvAlgebra> builtin_algebra(const std::string& name);
// Names accepted by --model, including the torus models torus-n1, torus-n2, torus-b-n1, torus-b-n2.
std::vector<std::string> builtin_models();

// Direct expansion of [a*b] on every basis pair, compared with derived_bracket and its table.
Report bracket_oracle(const DgbvAlgebra& alg);
// dim H per bidegree from ranks of the bidegree blocks, compared with cohomology().
Report cohomology_rank_oracle(const LinearOp& op, const std::string& title);

// Errors from the pipeline become an error document with exit code 1.
Outcome run(const Options& options);

// Parses argv; usage errors print to err and return 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sivhs::cli
