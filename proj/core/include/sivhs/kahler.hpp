#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sivhs/dgbv.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/report.hpp"

namespace sivhs {

// Form model: odd variables dz^a, dzb^a. Polyvector model: psi_a, psib^a.
enum class SectionModel { Form, Polyvector };

struct PolyKey {
    std::vector<std::uint8_t> exps;  // z^1..z^n, zb^1..zb^n
    std::uint32_t odd = 0;           // bit a: holomorphic odd variable, bit n+a: antiholomorphic

    friend bool operator==(const PolyKey&, const PolyKey&) = default;
    friend auto operator<=>(const PolyKey&, const PolyKey&) = default;
};

// Polynomial section in z, zb with squarefree odd variables; total z/zb degree is bounded.
class PolySection {
public:
    PolySection() = default;
    PolySection(int n, SectionModel model, int degree_bound);

    static PolySection constant(int n, SectionModel model, int bound, const Scalar& c);
    static PolySection odd_monomial(int n, SectionModel model, int bound, std::uint32_t mask, const Scalar& c = 1);
    // Even variable v in 0..2n-1 (z^1..z^n then zb^1..zb^n).
    static PolySection even_variable(int n, SectionModel model, int bound, int v, int power = 1);

    int n() const { return n_; }
    SectionModel model() const { return model_; }
    int degree_bound() const { return bound_; }
    const std::map<PolyKey, Scalar>& terms() const { return terms_; }

    void add_term(const PolyKey& key, const Scalar& c);
    bool is_zero() const { return terms_.empty(); }
    // Parity of the odd part; -1 when inhomogeneous, 0 for zero.
    int parity() const;
    int max_degree() const;

    PolySection operator+(const PolySection& o) const;
    PolySection operator-(const PolySection& o) const;
    PolySection scaled(const Scalar& c) const;
    PolySection operator*(const PolySection& o) const;
    PolySection d_even(int v) const;
    // Left derivative in odd variable v.
    PolySection d_odd(int v) const;
    PolySection at_origin() const;
    PolySection with_model(SectionModel m) const;
    std::string str() const;

    friend bool operator==(const PolySection& a, const PolySection& b) { return a.terms_ == b.terms_; }

private:
    void require_compatible(const PolySection& o) const;

    int n_ = 0;
    SectionModel model_ = SectionModel::Polyvector;
    int bound_ = 0;
    std::map<PolyKey, Scalar> terms_;
};

struct SectionOp {
    std::function<PolySection(const PolySection&)> apply;
    int parity = 0;

    PolySection operator()(const PolySection& s) const { return apply(s); }
};

SectionOp op_compose(const SectionOp& a, const SectionOp& b);
SectionOp op_bracket(const SectionOp& a, const SectionOp& b);
SectionOp op_sum(const std::vector<SectionOp>& ops);
SectionOp op_scaled(const SectionOp& a, const Scalar& c);

// Inverse Kahler form components omega^{a bbar} as polynomials in zb.
struct KahlerData {
    int n = 0;
    int degree_bound = 10;
    std::vector<std::vector<PolySection>> omega;
    bool kahler_at_origin = true;

    void validate() const;
};

KahlerData constant_kahler(const Matrix& omega_inverse, int degree_bound = 10);
// omega = I + Hessian in zb of a random quartic potential; linear part vanishes.
KahlerData hessian_kahler(int n, std::uint64_t seed, int degree_bound = 10);
// omega^{1 1bar} = 1 + zb^2 (n = 2) or 1 + zb^1 (n = 1); first-order part does not vanish.
KahlerData non_kahler(int n, int degree_bound = 10);

struct KahlerOperators {
    SectionOp dbar;
    SectionOp sharp;
    SectionOp Q;
};

KahlerOperators build_operators(const KahlerData& K);
// Contraction action of a form-model kappa on the polyvector model (also used with roles exchanged).
SectionOp i_kappa(const PolySection& kappa);
// dbar on the form model.
PolySection dbar_form(const PolySection& kappa);
PolySection bracket_omega(const KahlerData& K, const PolySection& k1, const PolySection& k2);
// The second-order operator [i_{omega^{-1}}, dbar] on forms.
SectionOp delta_omega(const KahlerData& K);

PolySection random_section(int n, SectionModel model, int degree, int bound, std::mt19937_64& rng, int parity = -1);

// Identities (a)-(e); with at_origin set, operator outputs are compared after evaluation at z = zb = 0.
Report verify_kahler_identities(const KahlerData& K, const std::vector<PolySection>& sections,
                        const std::vector<PolySection>& kappas, bool at_origin);
// Module identities for bullet = -[i_k, Q] and circ = i_k with d = dbar + Q.
Report verify_module_identities(const KahlerData& K, const std::vector<PolySection>& sections,
                                const std::vector<PolySection>& kappas, bool at_origin);

// Torus-invariant sectors. A: g = forms, m = polyvector-valued forms. B: g = polyvectors, m = forms.
ModelPair build_model_A(int n, const Matrix& metric);
ModelPair build_model_B(int n, const Matrix& metric);

// Basis label of an odd mask for the given model and side.
std::string invariant_label(int n, std::uint32_t mask, bool forms);
std::uint32_t invariant_mask(const GradedBasis& basis, int index);

} // namespace sivhs
