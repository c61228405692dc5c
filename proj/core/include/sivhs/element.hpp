#pragma once

#include <map>
#include <string>
#include <vector>

#include "sivhs/graded.hpp"
#include "sivhs/linalg.hpp"
#include "sivhs/series.hpp"

namespace sivhs {

// Element sum_i r_i e_i with series coefficients written on the left.
template <class C>
struct SElemT {
    BasisPtr basis;
    RingPtr ring;
    std::map<int, SeriesT<C>> c;

    SElemT() = default;
    SElemT(BasisPtr b, RingPtr r) : basis(std::move(b)), ring(std::move(r)) {}

    bool is_zero() const { return c.empty(); }

    void add(int i, const SeriesT<C>& s) {
        if (s.is_zero()) return;
        auto it = c.find(i);
        if (it == c.end()) {
            c.emplace(i, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    SeriesT<C> coef(int i) const {
        auto it = c.find(i);
        return it == c.end() ? SeriesT<C>(ring) : it->second;
    }

    SElemT& operator+=(const SElemT& o) {
        for (const auto& [i, s] : o.c) add(i, s);
        return *this;
    }
    SElemT& operator-=(const SElemT& o) {
        for (const auto& [i, s] : o.c) add(i, -s);
        return *this;
    }
    friend SElemT operator+(SElemT a, const SElemT& b) { return a += b; }
    friend SElemT operator-(SElemT a, const SElemT& b) { return a -= b; }
    friend bool operator==(const SElemT& a, const SElemT& b) { return a.c == b.c; }

    SElemT scaled(const Scalar& s) const {
        SElemT r(basis, ring);
        for (const auto& [i, v] : c) r.add(i, v.scaled(s));
        return r;
    }
    template <class F>
    SElemT map(F f) const {
        SElemT r(basis, ring);
        for (const auto& [i, v] : c) r.add(i, f(v));
        return r;
    }
    SElemT derivative(int a) const {
        return map([a](const SeriesT<C>& s) { return s.derivative(a); });
    }
    SElemT homogeneous(int k) const {
        return map([k](const SeriesT<C>& s) { return s.homogeneous(k); });
    }
    SElemT truncated(int k) const {
        return map([k](const SeriesT<C>& s) { return s.truncated(k); });
    }
    SElemT in_ring(const RingPtr& other) const {
        SElemT r(basis, other);
        for (const auto& [i, v] : c) r.add(i, v.in_ring(other));
        return r;
    }
    // Left multiplication by a series: x * (r e) = (x r) e.
    SElemT left_mul(const SeriesT<C>& x) const {
        SElemT r(basis, ring);
        for (const auto& [i, v] : c) r.add(i, x * v);
        return r;
    }
    // Total parity of the term r_i e_i that carries monomial m.
    std::string str() const {
        if (c.empty()) return "0";
        std::string s;
        for (const auto& [i, v] : c) {
            if (!s.empty()) s += " + ";
            s += "[" + v.str() + "]" + basis->name(i);
        }
        return s;
    }
};

using SElem = SElemT<Scalar>;
using HElem = SElemT<HbarLaurent>;

template <class C>
SElemT<C> constant_element(const BasisPtr& basis, const RingPtr& ring, const SparseVec& v) {
    SElemT<C> r(basis, ring);
    for (const auto& [i, x] : v) r.add(i, SeriesT<C>::scalar(ring, x));
    return r;
}

// Operator of parity |P|: P(r e) = (-1)^{|P||r|} r P(e).
template <class C>
SElemT<C> apply_op(const LinearOp& op, const SElemT<C>& x) {
    SElemT<C> r(op.dst(), x.ring);
    for (const auto& [j, s] : x.c) {
        SeriesT<C> t = op.parity() ? s.twisted() : s;
        for (const auto& [i, v] : op.column(j)) r.add(i, t.scaled(v));
    }
    return r;
}

// Bilinear map B of parity |B|: B(r e, s f) = (-1)^{|s|(|e|+|B|)} r s B(e,f).
template <class C>
SElemT<C> apply_bilinear(const Bilinear& b, const SElemT<C>& x, const SElemT<C>& y) {
    SElemT<C> r(b.out(), x.ring);
    for (const auto& [a, ra] : x.c) {
        const int flip = (b.left()->parity(a) + b.parity()) & 1;
        for (const auto& [bb, sb] : y.c) {
            const SparseVec& v = b.at(a, bb);
            if (v.empty()) continue;
            SeriesT<C> s = flip ? sb.twisted() : sb;
            SeriesT<C> prod = ra * s;
            if (prod.is_zero()) continue;
            for (const auto& [k, w] : v) r.add(k, prod.scaled(w));
        }
    }
    return r;
}

// Even pairing given by a Gram matrix: (r u, s v) = (-1)^{|u||s|} r s (u, v).
template <class C>
SeriesT<C> apply_pairing(const Matrix& gram, const BasisPtr& basis, const SElemT<C>& x, const SElemT<C>& y) {
    SeriesT<C> r(x.ring);
    for (const auto& [i, ri] : x.c) {
        const bool flip = basis->parity(i) & 1;
        for (const auto& [j, sj] : y.c) {
            const Scalar& g = gram(i, j);
            if (g.is_zero()) continue;
            SeriesT<C> s = flip ? sj.twisted() : sj;
            r += (ri * s).scaled(g);
        }
    }
    return r;
}

// Coefficient vectors of an element, one per (t-monomial, nu-power).
struct SliceKey {
    Mono mono;
    int power = 0;
    friend bool operator==(const SliceKey&, const SliceKey&) = default;
};
struct SliceLess {
    bool operator()(const SliceKey& a, const SliceKey& b) const;
};
using Slices = std::map<SliceKey, SparseVec, SliceLess>;

Slices slices_of(const HElem& x);
HElem element_of(const Slices& s, const BasisPtr& basis, const RingPtr& ring);

// Multiplication of every coefficient by nu^k.
HElem shift_nu(const HElem& x, int k);
HElem lift_element(const SElem& x, int power = 0);

template <class C>
SElemT<C> compose_element(const SElemT<C>& x, const std::vector<SuperSeries>& g, const RingPtr& target) {
    SElemT<C> r(x.basis, target);
    for (const auto& [i, s] : x.c) r.add(i, compose(s, g, target));
    return r;
}

} // namespace sivhs
