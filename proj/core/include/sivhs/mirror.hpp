#pragma once

#include <optional>

#include "sivhs/dgbv.hpp"
#include "sivhs/frobenius.hpp"
#include "sivhs/graded.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/report.hpp"
#include "sivhs/vhs.hpp"

namespace sivhs {

// Flat torus X with constant metric g and its dual X^ with metric g^{-1}.
struct FlatTorusPair {
    int n = 0;
    Matrix g;
    Matrix g_inv;
};

FlatTorusPair make_flat_torus_pair(const Matrix& g);
// Same pair with the roles of X and X^ exchanged.
FlatTorusPair dual(const FlatTorusPair& t);

struct MirrorOptions {
    bool drop_metric = false;   // corrupt phi on the module by forgetting g^{ij}
};

// A-model of X, B-model of X^ and the generator-level maps between their invariant sectors.
struct MirrorMap {
    FlatTorusPair torus;
    ModelPair x;
    ModelPair x_hat;
    LinearOp phi_m;   // polyvector-valued forms on X -> forms on X^
    LinearOp phi_g;   // forms on X -> polyvector-valued forms on X^
};

MirrorMap mirror_map(const FlatTorusPair& t, const MirrorOptions& options = {});
// Image of an X-side module vector; throws DomainError for indices outside the invariant sector.
SparseVec phi_map(const MirrorMap& map, const SparseVec& v);

// Bijectivity, unit, differentials, brackets, both actions and the pairing, on every basis pair.
Report verify_intertwining(const MirrorMap& map);

struct MirrorSide {
    ModelPair pair;
    MCSolution sol;
    VhsFrame frame;
    PeriodMap period;
    FrobeniusData frob;
};

struct MirrorRun {
    MirrorSide a;
    MirrorSide b;
    Report report;
};

// A-pipeline on X, B-pipeline on X^ with coordinates, classes and filtration carried over by phi.
MirrorRun run_mirror(const FlatTorusPair& t, int order, const std::optional<OppositeFiltration>& w = {});
Report verify_mirror_theorem(const FlatTorusPair& t, int order, const std::optional<OppositeFiltration>& w = {});
// Both role assignments: (A on X, B on X^) and (A on X^, B on X).
Report verify_mirror_both_roles(const FlatTorusPair& t, int order);

} // namespace sivhs
