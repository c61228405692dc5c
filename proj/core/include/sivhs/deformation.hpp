#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sivhs/dgbv.hpp"
#include "sivhs/element.hpp"
#include "sivhs/report.hpp"

namespace sivhs {

struct Obstruction {
    int order = 0;
    SElem projection;  // harmonic part of the order-k quadratic term
};

struct MCOptions {
    // Representatives tried first when splitting H(g, d); the unit is always tried first.
    std::vector<SparseVec> preferred;
    // Representative indices to deform along; all of them when empty.
    std::vector<int> subset;
    // Dimension weight used for the default nu-window.
    int weight = 0;
    std::optional<Window> window;
};

struct MCSolution {
    RingPtr ring;
    int order = 0;
    std::vector<int> param_rep;           // representative index of each parameter
    std::vector<SparseVec> generators;    // Delta_a
    std::optional<int> unit_param;
    SElem gamma;
    CohomologyData splitting;
    std::vector<Obstruction> obstructions;

    bool unobstructed() const { return obstructions.empty(); }
    SElem linear_part() const { return gamma.homogeneous(1); }
};

Window default_window(int order, int weight);

MCSolution solve_mc(const DgLieAlgebra& g, int order, const MCOptions& options = {});
// d Gamma + 1/2 [Gamma . Gamma].
SElem mc_residual(const DgLieAlgebra& g, const SElem& gamma);
// e^{ad x} Gamma - ((e^{ad x} - 1)/ad x) dx for a total-odd x without constant term.
SElem gauge_action(const DgLieAlgebra& g, const SElem& gamma, const SElem& x);
// Gamma|_{t0=0} + t0 * 1.
MCSolution normalize_unit(const DgLieAlgebra& g, const MCSolution& sol);
bool is_unit_normalized(const DgLieAlgebra& g, const MCSolution& sol);

// nu^{circ_nu} Gamma o a.
HElem circ_apply(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu);
// sum_k (sign)^k (Gamma o)^k a / k!.
HElem exp_circ(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu, int sign);
// e^{-Gamma o} a.
HElem transport(const DgModule& m, const SElem& gamma, const HElem& a, int circ_nu);
// (d + nu^{delta_nu} Delta) a.
HElem module_differential(const DgModule& m, const HElem& a, ModuleScaling scaling);
// D^Gamma a = (d + nu^{delta_nu} Delta) a + Gamma . a.
HElem twisted_differential(const DgModule& m, const SElem& gamma, const HElem& a, ModuleScaling scaling);
// nabla_a x = d_a x + (d_a Gamma) o x.
HElem covariant_derivative(const DgModule& m, const SElem& gamma, int param, const HElem& x, int circ_nu);

// e^{-Gamma o} (d + nu^{delta_nu} Delta) e^{Gamma o} = D^Gamma on every basis vector of m.
Report verify_conjugation(const DgModule& m, const SElem& gamma, ModuleScaling scaling);
// [nabla_a, nabla_b] = 0 and [nabla_a, D^Gamma] = 0 modulo m^N on basis vectors of m.
Report verify_flatness_identities(const DgLieAlgebra& g, const DgModule& m, const SElem& gamma,
                                  ModuleScaling scaling);

} // namespace sivhs
