#include <bit>

#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

PolySection omega_entry(const KahlerData& K, int a, int b, SectionModel m) { return K.omega[a][b].with_model(m); }

PolySection odd_var(const PolySection& like, int v) {
    return PolySection::odd_monomial(like.n(), like.model(), like.degree_bound(), 1u << v);
}

SectionOp multiply_op(const PolySection& f) {
    const int p = f.parity();
    return {[f](const PolySection& s) { return f.with_model(s.model()) * s; }, p < 0 ? 0 : p};
}

SectionOp d_even_op(int v) {
    return {[v](const PolySection& s) { return s.d_even(v); }, 0};
}

SectionOp d_odd_op(int v) {
    return {[v](const PolySection& s) { return s.d_odd(v); }, 1};
}

} // namespace

void KahlerData::validate() const {
    if (n < 1) throw ArgumentError("kahler_ops", "dimension must be positive");
    if (static_cast<int>(omega.size()) != n) throw ArgumentError("kahler_ops", "omega must be n x n");
    Matrix c0(n, n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(omega[a].size()) != n) throw ArgumentError("kahler_ops", "omega must be n x n");
        for (int b = 0; b < n; ++b) {
            for (const auto& [k, v] : omega[a][b].terms()) {
                if (k.odd) throw ArgumentError("kahler_ops", "omega entries must be even functions");
                for (int i = 0; i < n; ++i)
                    if (k.exps[i]) throw ArgumentError("kahler_ops", "omega entries must depend on zb only");
                int deg = 0;
                for (auto e : k.exps) deg += e;
                if (deg == 0) c0(a, b) = v;
                if (deg == 1 && kahler_at_origin)
                    throw ValidationError("kahler_ops", "Kahler-at-origin flag set but omega has a linear zb-part");
            }
        }
    }
    if (determinant(c0).is_zero()) throw ValidationError("kahler_ops", "constant part of omega is not invertible");
}

KahlerData constant_kahler(const Matrix& omega_inverse, int degree_bound) {
    KahlerData K;
    K.n = static_cast<int>(omega_inverse.rows());
    K.degree_bound = degree_bound;
    K.omega.assign(K.n, std::vector<PolySection>(K.n));
    for (int a = 0; a < K.n; ++a)
        for (int b = 0; b < K.n; ++b)
            K.omega[a][b] = PolySection::constant(K.n, SectionModel::Polyvector, degree_bound, omega_inverse(a, b));
    K.kahler_at_origin = true;
    K.validate();
    return K;
}

KahlerData hessian_kahler(int n, std::uint64_t seed, int degree_bound) {
    std::mt19937_64 rng(seed);
    PolySection pot(n, SectionModel::Polyvector, degree_bound);
    for (int t = 0; t < 4; ++t) {
        PolyKey k{std::vector<std::uint8_t>(2 * n, 0), 0};
        for (int i = 0; i < 4; ++i) k.exps[n + rng() % static_cast<std::uint64_t>(n)] += 1;
        pot.add_term(k, static_cast<long>(rng() % 3) + 1);
    }
    KahlerData K;
    K.n = n;
    K.degree_bound = degree_bound;
    K.omega.assign(n, std::vector<PolySection>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            K.omega[a][b] = PolySection::constant(n, SectionModel::Polyvector, degree_bound, a == b ? 1 : 0) +
                            pot.d_even(n + b).d_even(n + a);
    K.kahler_at_origin = true;
    K.validate();
    return K;
}

KahlerData non_kahler(int n, int degree_bound) {
    KahlerData K;
    K.n = n;
    K.degree_bound = degree_bound;
    K.omega.assign(n, std::vector<PolySection>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            K.omega[a][b] = PolySection::constant(n, SectionModel::Polyvector, degree_bound, a == b ? 1 : 0);
    K.omega[0][0] = K.omega[0][0] + PolySection::even_variable(n, SectionModel::Polyvector, degree_bound, n + (n > 1 ? 1 : 0));
    K.kahler_at_origin = false;
    K.validate();
    return K;
}

KahlerOperators build_operators(const KahlerData& K) {
    const int n = K.n;
    const auto M = SectionModel::Polyvector;
    auto var = [&](int v) { return PolySection::odd_monomial(n, M, K.degree_bound, 1u << v); };
    std::vector<SectionOp> dbar_terms, sharp_terms, q_terms;
    for (int c = 0; c < n; ++c) dbar_terms.push_back(op_compose(multiply_op(var(n + c)), d_even_op(n + c)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const PolySection w = omega_entry(K, a, b, M);
            if (w.is_zero()) continue;
            sharp_terms.push_back(op_compose(multiply_op(w * var(a)), d_odd_op(n + b)));
            q_terms.push_back(op_compose(multiply_op(w * var(a)), d_even_op(n + b)));
            for (int c = 0; c < n; ++c) {
                const PolySection f = var(n + c) * w.d_even(n + c) * var(a);
                if (f.is_zero()) continue;
                q_terms.push_back(op_scaled(op_compose(multiply_op(f), d_odd_op(n + b)), -1));
            }
        }
    KahlerOperators ops;
    ops.dbar = op_sum(dbar_terms);
    ops.sharp = sharp_terms.empty() ? SectionOp{[](const PolySection& s) { return s.scaled(0); }, 0} : op_sum(sharp_terms);
    ops.Q = q_terms.empty() ? SectionOp{[](const PolySection& s) { return s.scaled(0); }, 1} : op_sum(q_terms);
    ops.sharp.parity = 0;
    ops.Q.parity = 1;
    return ops;
}

SectionOp i_kappa(const PolySection& kappa) {
    const int p = kappa.parity();
    if (p < 0) throw ArgumentError("kahler_ops", "i_kappa needs a homogeneous kappa");
    const int n = kappa.n();
    return {[kappa, n](const PolySection& s) {
                PolySection r(s.n(), s.model(), s.degree_bound());
                for (const auto& [k, c] : kappa.terms()) {
                    PolySection y = s;
                    for (int v = 2 * n - 1; v >= 0; --v) {
                        if (!(k.odd >> v & 1u)) continue;
                        y = v < n ? y.d_odd(v) : odd_var(y, v) * y;
                    }
                    PolySection f(s.n(), s.model(), s.degree_bound());
                    f.add_term(PolyKey{k.exps, 0}, c);
                    r = r + f * y;
                }
                return r;
            },
            p};
}

PolySection dbar_form(const PolySection& kappa) {
    const int n = kappa.n();
    PolySection r(n, kappa.model(), kappa.degree_bound());
    for (int c = 0; c < n; ++c) r = r + odd_var(kappa, n + c) * kappa.d_even(n + c);
    return r;
}

PolySection bracket_omega(const KahlerData& K, const PolySection& k1, const PolySection& k2) {
    if (k1.model() != SectionModel::Form || k2.model() != SectionModel::Form)
        throw StructuralError("kahler_ops", "bracket_omega expects form-model sections");
    const int p1 = k1.parity(), p2 = k2.parity();
    if (p1 < 0 || p2 < 0) throw ArgumentError("kahler_ops", "bracket_omega needs homogeneous arguments");
    const int n = K.n;
    auto half = [&](const PolySection& x, const PolySection& y, int px) {
        PolySection r(n, SectionModel::Form, std::max(x.degree_bound(), K.degree_bound));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const PolySection w = omega_entry(K, a, b, SectionModel::Form);
                r = r + (w * x.d_odd(a) * y.d_even(n + b)).scaled(sign_of(px));
                for (int c = 0; c < n; ++c) {
                    const PolySection dw = w.d_even(n + c);
                    if (dw.is_zero()) continue;
                    r = r - odd_var(x, n + c) * dw * x.d_odd(a) * y.d_odd(n + b);
                }
            }
        return r;
    };
    return half(k1, k2, p1) - half(k2, k1, p2).scaled(sign_of((p1 + 1) * (p2 + 1)));
}

SectionOp delta_omega(const KahlerData& K) {
    return {[K](const PolySection& f) {
                const int n = K.n;
                PolySection r(n, f.model(), f.degree_bound());
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        const PolySection w = omega_entry(K, a, b, f.model());
                        r = r + w * f.d_even(n + b).d_odd(a);
                        for (int c = 0; c < n; ++c) {
                            const PolySection dw = w.d_even(n + c);
                            if (dw.is_zero()) continue;
                            r = r - odd_var(f, n + c) * dw * f.d_odd(n + b).d_odd(a);
                        }
                    }
                return r;
            },
            1};
}

} // namespace sivhs
