#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sivhs/deformation.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/report.hpp"
#include "sivhs/vhs.hpp"

namespace sivhs {

// A[a][b][c] = A^c_{ab}.
using StructureConstants = std::vector<std::vector<std::vector<SuperSeries>>>;

struct FrobeniusData {
    int n = 0;
    int order = 0;
    RingPtr ring;
    std::optional<int> unit;
    StructureConstants A;          // exact through degree order - 2
    Matrix g;
    SuperSeries potential;         // over ring with order + 1, no terms of degree <= 2
    std::vector<SuperSeries> euler; // exact through degree order - 1
    Report extraction;             // solvability and metric checks made while building

    std::size_t dim() const { return ring->nvars(); }
    int parity(int a) const { return ring->parity[a] & 1; }
};

// d_a d_b Psi = hbar^{-1} sum_c A^c_ab d_c Psi in flat coordinates; throws StructuralError on leakage.
StructureConstants structure_constants(const PeriodMap& p);

// Sign c_a with (D_a o x, y) = -c_a (-1)^{|x||a|} (x, D_a o y) on classes.
std::vector<int> conjugation_signs(const ModelPair& pair, const MCSolution& sol, const VhsFrame& frame);
// Psi(t, -hbar) for a period map whose parameter t^a carries nu-weight nu_shift[a].
HElem reflect_hbar(const PeriodMap& p, const HElem& psi, const std::vector<int>& signs);

// g_ab = (-1)^n hbar^{2-n} (d_a Psi(hbar), d_b Psi(-hbar)); throws StructuralError when it depends on t or hbar.
Matrix metric(const PeriodMap& p, const std::vector<int>& signs);

// Phi with d^3 Phi / dt^a dt^b dt^c = A^d_ab g_dc and no terms of degree <= 2.
SuperSeries potential(const StructureConstants& A, const Matrix& g, const RingPtr& ring);

// -hbar d Psi / d hbar = sum_c E^c d_c Psi.
std::vector<SuperSeries> euler_field(const PeriodMap& p);

FrobeniusData frobenius(const ModelPair& pair, const MCSolution& sol, const PeriodMap& p);

// Potentiality, symmetry, flatness, WDVV, unit, metric, conformal Killing and homogeneity.
Report verify_frobenius(const FrobeniusData& f);

} // namespace sivhs
