#include <algorithm>
#include <functional>

#include "sivhs/dgbv.hpp"
#include "sivhs/errors.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

// Graded-commutative monomial algebra k[x_i]/(x_i^{bound_i + 1}) with odd generators squarefree.
struct MonomialAlgebra {
    std::vector<std::string> vars;
    std::vector<Bidegree> degrees;
    std::vector<int> bound;
    std::vector<std::vector<int>> monos;
    std::map<std::vector<int>, int> index;
    BasisPtr basis;

    int parity(std::size_t v) const { return degrees[v].parity(); }

    MonomialAlgebra(std::vector<std::string> v, std::vector<Bidegree> d, std::vector<int> b)
        : vars(std::move(v)), degrees(std::move(d)), bound(std::move(b)) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (parity(i)) bound[i] = std::min(bound[i], 1);
        std::vector<int> cur(vars.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == vars.size()) {
                monos.push_back(cur);
                return;
            }
            for (int e = 0; e <= bound[k]; ++e) {
                cur[k] = e;
                rec(k + 1);
            }
            cur[k] = 0;
        };
        rec(0);
        std::stable_sort(monos.begin(), monos.end(), [](const auto& a, const auto& b) {
            int da = 0, db = 0;
            for (int x : a) da += x;
            for (int x : b) db += x;
            if (da != db) return da < db;
            return a > b;
        });
        std::vector<std::string> names;
        std::vector<Bidegree> degs;
        for (std::size_t i = 0; i < monos.size(); ++i) {
            index[monos[i]] = static_cast<int>(i);
            std::string s;
            Bidegree deg;
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (!monos[i][k]) continue;
                if (!s.empty()) s += "*";
                s += vars[k];
                if (monos[i][k] > 1) s += "^" + std::to_string(monos[i][k]);
                deg = deg + Bidegree{degrees[k].p * monos[i][k], degrees[k].q * monos[i][k]};
            }
            names.push_back(s.empty() ? "1" : s);
            degs.push_back(deg);
        }
        basis = make_basis(names, degs);
    }

    // Product of monomials with the reordering sign of odd generators.
    std::pair<int, int> times(int a, int b) const {
        const auto& x = monos[a];
        const auto& y = monos[b];
        std::vector<int> z(vars.size());
        long crossings = 0, odd_after = 0;
        for (std::size_t k = vars.size(); k-- > 0;) {
            if (parity(k)) {
                if (x[k] && y[k]) return {0, -1};
                if (y[k]) crossings += odd_after;
                if (x[k]) ++odd_after;
            }
            z[k] = x[k] + y[k];
            if (z[k] > bound[k]) return {0, -1};
        }
        return {sign_of(crossings), index.at(z)};
    }

    Bilinear product() const {
        Bilinear p(basis, basis, basis, {0, 0}, 0);
        for (std::size_t a = 0; a < monos.size(); ++a)
            for (std::size_t b = 0; b < monos.size(); ++b) {
                auto [s, c] = times(static_cast<int>(a), static_cast<int>(b));
                if (s != 0) p.set(static_cast<int>(a), static_cast<int>(b), SparseVec{{c, Scalar(s)}});
            }
        return p;
    }

    // Left derivative with respect to generator v.
    LinearOp derivative(std::size_t v) const {
        Bidegree shift = Bidegree{0, 0} - degrees[v];
        LinearOp op(basis, basis, shift, shift.parity());
        for (std::size_t i = 0; i < monos.size(); ++i) {
            const auto& m = monos[i];
            if (!m[v]) continue;
            auto k = m;
            k[v] -= 1;
            Scalar c = m[v];
            if (parity(v)) {
                long before = 0;
                for (std::size_t j = 0; j < v; ++j)
                    if (parity(j) && m[j]) ++before;
                c = sign_of(before);
            }
            op.add_entry(index.at(k), static_cast<int>(i), c);
        }
        return op;
    }

    LinearOp multiply_by(const std::vector<int>& mono, Scalar coeff) const {
        int a = index.at(mono);
        Bidegree shift = basis->bidegree(a);
        LinearOp op(basis, basis, shift, shift.parity());
        for (std::size_t b = 0; b < monos.size(); ++b) {
            auto [s, c] = times(a, static_cast<int>(b));
            if (s != 0) op.add_entry(c, static_cast<int>(b), coeff * s);
        }
        return op;
    }

    std::vector<int> mono(std::initializer_list<std::pair<std::size_t, int>> powers) const {
        std::vector<int> m(vars.size(), 0);
        for (auto [v, e] : powers) m[v] = e;
        return m;
    }

    std::vector<Scalar> top_integral(const std::vector<int>& top) const {
        std::vector<Scalar> f(monos.size());
        f[index.at(top)] = 1;
        return f;
    }
};

DgbvAlgebra from_monomial(const std::string& name, int n, const MonomialAlgebra& ma) {
    DgbvAlgebra a;
    a.name = name;
    a.basis = ma.basis;
    a.n = n;
    a.unit = 0;
    a.product = ma.product();
    a.d = LinearOp::zero(ma.basis, {0, 1});
    a.delta = LinearOp::zero(ma.basis, {-1, 0});
    return a;
}

} // namespace

DgbvAlgebra exterior_model(const std::string& name, int n, const std::vector<std::string>& generators,
                           const std::vector<Bidegree>& degrees) {
    MonomialAlgebra ma(generators, degrees, std::vector<int>(generators.size(), 1));
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (!degrees[i].parity()) throw ArgumentError("dgbv", "exterior generators must be odd");
    DgbvAlgebra a = from_monomial(name, n, ma);
    a.integral = ma.top_integral(std::vector<int>(generators.size(), 1));
    a.calibration = unit_vector(a.unit);
    return a;
}

DgbvAlgebra truncated_poly_fixture() {
    MonomialAlgebra ma({"x", "psi"}, {{1, 1}, {0, -1}}, {2, 1});
    DgbvAlgebra a = from_monomial("truncated-poly", 1, ma);
    a.delta = ma.derivative(0).compose(ma.derivative(1));
    a.integral = ma.top_integral(ma.mono({{0, 2}, {1, 1}}));
    return a;
}

DgbvAlgebra heisenberg_bv_fixture() {
    MonomialAlgebra ma({"X1", "X2", "X3"}, {{1, 0}, {1, 0}, {1, 0}}, {1, 1, 1});
    DgbvAlgebra a = from_monomial("heisenberg-bv", 3, ma);
    a.delta = ma.multiply_by(ma.mono({{2, 1}}), -1).compose(ma.derivative(1)).compose(ma.derivative(0));
    a.integral = ma.top_integral(ma.mono({{0, 1}, {1, 1}, {2, 1}}));
    return a;
}

DgbvAlgebra heisenberg_ce_fixture() {
    MonomialAlgebra ma({"e1", "e2", "e3"}, {{0, 1}, {0, 1}, {0, 1}}, {1, 1, 1});
    DgbvAlgebra a = from_monomial("heisenberg-ce", 3, ma);
    a.d = ma.multiply_by(ma.mono({{0, 1}, {1, 1}}), -1).compose(ma.derivative(2));
    return a;
}

DgbvAlgebra non_manin_fixture() {
    MonomialAlgebra ma({"y", "theta"}, {{0, 1}, {0, 2}}, {1, 1});
    DgbvAlgebra a = from_monomial("non-manin", 1, ma);
    a.d = ma.multiply_by(ma.mono({{1, 1}}), 1).compose(ma.derivative(0));
    return a;
}

DgbvAlgebra tensor(const DgbvAlgebra& x, const DgbvAlgebra& y, const std::string& name) {
    const int dx = static_cast<int>(x.basis->dim()), dy = static_cast<int>(y.basis->dim());
    std::vector<std::string> names;
    std::vector<Bidegree> degs;
    auto idx = [dy](int i, int j) { return i * dy + j; };
    for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dy; ++j) {
            const auto& a = x.basis->name(i);
            const auto& b = y.basis->name(j);
            names.push_back(a == "1" ? b : (b == "1" ? a : a + "*" + b));
            degs.push_back(x.basis->bidegree(i) + y.basis->bidegree(j));
        }
    BasisPtr basis = make_basis(names, degs);
    DgbvAlgebra t;
    t.name = name;
    t.basis = basis;
    t.n = x.n + y.n;
    t.unit = idx(x.unit, y.unit);
    t.product = Bilinear(basis, basis, basis, {0, 0}, 0);
    for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dy; ++j)
            for (int k = 0; k < dx; ++k)
                for (int l = 0; l < dy; ++l) {
                    const int s = sign_of(y.basis->parity(j) * x.basis->parity(k));
                    SparseVec v;
                    for (const auto& [a, ca] : x.product.at(i, k))
                        for (const auto& [b, cb] : y.product.at(j, l)) axpy(v, ca * cb * s, unit_vector(idx(a, b)));
                    t.product.set(idx(i, j), idx(k, l), v);
                }
    auto lift_op = [&](const LinearOp& ox, const LinearOp& oy) {
        LinearOp op(basis, basis, ox.shift(), ox.parity());
        for (int i = 0; i < dx; ++i)
            for (int j = 0; j < dy; ++j) {
                SparseVec v;
                for (const auto& [a, c] : ox.column(i)) axpy(v, c, unit_vector(idx(a, j)));
                const int s = sign_of(x.basis->parity(i) * oy.parity());
                for (const auto& [b, c] : oy.column(j)) axpy(v, c * s, unit_vector(idx(i, b)));
                op.set_column(idx(i, j), v);
            }
        return op;
    };
    t.d = lift_op(x.d, y.d);
    t.delta = lift_op(x.delta, y.delta);
    if (x.integral && y.integral) {
        std::vector<Scalar> f(basis->dim());
        for (int i = 0; i < dx; ++i)
            for (int j = 0; j < dy; ++j) f[idx(i, j)] = (*x.integral)[i] * (*y.integral)[j];
        t.integral = f;
    }
    return t;
}

DgbvAlgebra polyvector_torus(int n) {
    std::vector<std::string> gens;
    std::vector<Bidegree> degs;
    for (int i = 1; i <= n; ++i) {
        gens.push_back("psi" + std::to_string(i));
        degs.push_back({1, 0});
    }
    for (int i = 1; i <= n; ++i) {
        gens.push_back("psib" + std::to_string(i));
        degs.push_back({0, 1});
    }
    return exterior_model("polyvector-torus-n" + std::to_string(n), n, gens, degs);
}

DgbvAlgebra dolbeault_torus(int n) {
    std::vector<std::string> gens;
    std::vector<Bidegree> degs;
    for (int i = 1; i <= n; ++i) {
        gens.push_back("dz" + std::to_string(i));
        degs.push_back({1, 0});
    }
    for (int i = 1; i <= n; ++i) {
        gens.push_back("dzb" + std::to_string(i));
        degs.push_back({0, 1});
    }
    return exterior_model("dolbeault-torus-n" + std::to_string(n), n, gens, degs);
}

DgbvAlgebra derham_torus(int n) {
    std::vector<std::string> gens;
    std::vector<Bidegree> degs;
    for (int i = 1; i <= 2 * n; ++i) {
        gens.push_back("dx" + std::to_string(i));
        degs.push_back({0, 1});
    }
    return exterior_model("derham-torus-n" + std::to_string(n), n, gens, degs);
}

DgbvAlgebra heisenberg_product_fixture() {
    return tensor(heisenberg_bv_fixture(), heisenberg_ce_fixture(), "heisenberg_bv_ce");
}

DgbvAlgebra elliptic_curve() {
    DgbvAlgebra a = polyvector_torus(1);
    a.name = "elliptic-curve";
    return a;
}

} // namespace sivhs
