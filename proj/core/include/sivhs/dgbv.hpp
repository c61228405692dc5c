#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sivhs/graded.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/report.hpp"

namespace sivhs {

struct DgbvAlgebra {
    std::string name;
    BasisPtr basis;
    int n = 0;
    int unit = 0;
    Bilinear product;
    LinearOp d;
    LinearOp delta;
    std::optional<std::vector<Scalar>> integral;
    std::optional<SparseVec> calibration;
};

GradedElement mul(const GradedElement& a, const GradedElement& b, const Bilinear& product);
SparseVec mul(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b);

// [a*b] = (-1)^a D(ab) - (-1)^a D(a) b - a D(b), extended bilinearly over basis components.
SparseVec derived_bracket(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b);
Bilinear derived_bracket_table(const DgbvAlgebra& alg);
// a.b = -[l_a, D] b.
SparseVec bullet_action(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b);
Bilinear bullet_table(const DgbvAlgebra& alg);
LinearOp left_multiplication(const DgbvAlgebra& alg, int a);

Report check_dgbv_axioms(const DgbvAlgebra& alg);
// Odd Lie axioms for (bracket, differential); the odd Poisson identity is added when a product is given.
Report check_odd_lie(const Bilinear& bracket, const LinearOp& differential, const Bilinear* product = nullptr);

struct DgLieAlgebra {
    BasisPtr basis;
    Bilinear bracket;
    LinearOp d;
    std::optional<int> unit;
};

struct DgModule {
    BasisPtr basis;
    Bilinear bullet;
    Bilinear circ;
    LinearOp d;
    LinearOp delta;
};

// Module differential d + nu^delta_nu Delta and action nu^circ_nu circ (nu = hbar^{1/2}).
struct ModuleScaling {
    int delta_nu = 2;
    int circ_nu = -2;
};
constexpr ModuleScaling plain_module{0, 0};
constexpr ModuleScaling hbar_module{2, -2};

Report check_module_axioms(const DgLieAlgebra& g, const DgModule& m, ModuleScaling scaling = hbar_module);

// A (g, m) pair with an optional pairing on m and calibration element.
struct ModelPair {
    std::string name;
    std::string kind;
    int n = 0;
    DgLieAlgebra g;
    DgModule m;
    std::optional<Matrix> pairing;
    std::optional<SparseVec> eta;
};

ModelPair pair_from_dgbv(const DgbvAlgebra& alg);

struct CohomologyData {
    LinearOp op;
    std::vector<SparseVec> reps;
    std::vector<Bidegree> rep_degrees;
    LinearOp pi;
    LinearOp h;
    Matrix coords;  // rows: class coordinates of pi(v) in the representative basis

    std::vector<Scalar> class_of(const SparseVec& v) const;
    std::size_t dim() const { return reps.size(); }
};

// Representatives are taken from preferred first, then from the kernel, bidegree by bidegree.
CohomologyData cohomology(const LinearOp& op, const std::vector<SparseVec>& preferred = {});
std::map<Bidegree, int> cohomology_dimensions(const CohomologyData& data);

struct ManinReport {
    std::vector<SparseVec> im_d_ker_delta;
    std::vector<SparseVec> im_delta_ker_d;
    std::vector<SparseVec> im_d_im_delta;
    bool verdict = true;
    std::optional<SparseVec> witness;
};
ManinReport check_manin(const DgbvAlgebra& alg);

// Ker d cap Ker Delta modulo Im (d Delta), homogeneous representatives.
std::vector<SparseVec> harmonic_representatives(const DgbvAlgebra& alg);
std::vector<SparseVec> harmonic_representatives(const LinearOp& d, const LinearOp& delta);

Scalar pairing_from_integral(const DgbvAlgebra& alg, const SparseVec& a, const SparseVec& b);
Matrix integral_gram(const DgbvAlgebra& alg);

// Built-in fixtures.
DgbvAlgebra exterior_model(const std::string& name, int n, const std::vector<std::string>& generators,
                           const std::vector<Bidegree>& degrees);
DgbvAlgebra truncated_poly_fixture();
DgbvAlgebra heisenberg_bv_fixture();
DgbvAlgebra heisenberg_ce_fixture();
DgbvAlgebra non_manin_fixture();
// Heisenberg BV algebra tensored with the Chevalley-Eilenberg complex; Massey-type products are exact.
DgbvAlgebra heisenberg_product_fixture();
DgbvAlgebra polyvector_torus(int n);
DgbvAlgebra dolbeault_torus(int n);
DgbvAlgebra derham_torus(int n);
DgbvAlgebra elliptic_curve();
DgbvAlgebra tensor(const DgbvAlgebra& a, const DgbvAlgebra& b, const std::string& name);

} // namespace sivhs
