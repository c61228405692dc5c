#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sivhs/deformation.hpp"
#include "sivhs/dgbv.hpp"
#include "sivhs/element.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/report.hpp"

namespace sivhs {

// Harmonic classes of the module together with their weights and pairing.
struct VhsFrame {
    int n = 0;
    BasisPtr classes;               // one entry per harmonic representative, bidegree of the representative
    std::vector<SparseVec> reps;    // in the module basis
    std::vector<int> weight;        // n + q - p
    std::optional<Matrix> gram;     // pairing restricted to the representatives
    BasisPtr module_basis;
    std::shared_ptr<const LinearSolver> solver;

    std::size_t dim() const { return reps.size(); }
    int parity(int j) const { return classes->parity(j); }
    // Hodge index p - q of class j.
    int hodge(int j) const;
    // Coordinates of a module vector in the representative basis; throws when it leaves the span.
    std::vector<Scalar> coordinates(const SparseVec& v) const;
    SparseVec to_module(const std::vector<Scalar>& c) const;
};

VhsFrame make_frame(const ModelPair& pair, const std::vector<SparseVec>& reps = {});

// Module element to class coordinates and back.
HElem to_classes(const VhsFrame& frame, const HElem& x);
HElem to_module(const VhsFrame& frame, const HElem& x);

// Multiplication of class j by nu^{weight(j)} (or its inverse).
HElem l_hbar(const VhsFrame& frame, const HElem& x);
HElem l_hbar_inverse(const VhsFrame& frame, const HElem& x);

// Hodge filtration: F(s) for s = 2r is spanned by classes with p - q >= s, p - q = s mod 2.
std::vector<int> hodge_classes(const VhsFrame& frame, int s);

// Increasing filtration W(s), s = 2r, given by spanning vectors in class coordinates.
// Below lo it is zero; above hi it is everything of parity s.
struct OppositeFiltration {
    int lo = 0;
    int hi = 0;
    std::map<int, std::vector<SparseVec>> spans;
    bool complementary = false;
    bool isotropic = false;

    std::vector<SparseVec> at(const VhsFrame& frame, int s) const;
};

// W(s) spanned by classes with p - q <= s - 2 of parity s.
OppositeFiltration default_opposite(const VhsFrame& frame);
// Hodge filtration itself, used as a non-complementary example.
OppositeFiltration hodge_as_filtration(const VhsFrame& frame);
// Throws ValidationError naming the failing r; sets the complementary and isotropic flags.
void validate_filtration(const VhsFrame& frame, OppositeFiltration& w);
std::string format_r(int s);

// Extended pairing on class coordinates.
HSeries hbar_pairing(const VhsFrame& frame, const HElem& u, const HElem& v);

struct PeriodMap {
    VhsFrame frame;
    OppositeFiltration w;
    RingPtr ring;
    int order = 0;
    HElem eta;                     // l_hbar eta in class coordinates
    int eta_weight = 0;
    HElem psi;                     // in the original parameters t
    std::vector<SuperSeries> tw_of_t;
    std::vector<SuperSeries> t_of_tw;
    HElem psi_flat;                // in flat coordinates t_W (same parameter names)
    std::vector<int> nu_shift;     // nu-power of the linear term in t^a relative to eta
    std::optional<int> unit_param;
    int rank_checks = 0;
    int rank_failures = 0;
};

struct PeriodOptions {
    int circ_nu = -2;
};

PeriodMap period_map(const ModelPair& pair, const MCSolution& sol, const VhsFrame& frame,
                     const OppositeFiltration& w, const SparseVec& eta, const PeriodOptions& options = {});

// Psi(0) = eta, Psi - eta in L_W, d Psi / d t0 = hbar^{-1} Psi mod m^N, round trip of flat coordinates.
Report verify_period_map(const PeriodMap& p);
// (v, w) in nu^{2n-4} C[[hbar^{-1}]] for generators of L_W, and L_0 + L_W = everything weight by weight.
Report verify_filtration_pairing(const VhsFrame& frame, const OppositeFiltration& w, Window window);

} // namespace sivhs
