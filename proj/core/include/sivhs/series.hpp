#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sivhs/errors.hpp"
#include "sivhs/laurent.hpp"
#include "sivhs/scalar.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

// Parameters t^a with parities, truncation order N (monomials of degree <= N survive)
// and the nu-window used for HbarLaurent coefficients.
struct SeriesRing {
    std::vector<std::string> names;
    std::vector<int> parity;
    int order = 0;
    Window window{-16, 16};

    std::size_t nvars() const { return names.size(); }
};
using RingPtr = std::shared_ptr<const SeriesRing>;
RingPtr make_ring(std::vector<std::string> names, std::vector<int> parity, int order, Window window = {-16, 16});
RingPtr with_order(const RingPtr& ring, int order);

using Mono = std::vector<std::uint8_t>;

// Degree first, then larger exponents of earlier variables first.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

int mono_degree(const Mono& m);
int mono_parity(const Mono& m, const SeriesRing& ring);
// t^a t^b = sign * t^out; returns 0 when an odd variable repeats.
int mono_product(const Mono& a, const Mono& b, const SeriesRing& ring, Mono& out);
std::string mono_str(const Mono& m, const SeriesRing& ring);
Mono mono_var(const SeriesRing& ring, int a);

template <class C>
struct CoefOps;

template <>
struct CoefOps<Scalar> {
    static Scalar from_scalar(const Scalar& s, const SeriesRing&) { return s; }
    static bool is_zero(const Scalar& s) { return s.is_zero(); }
    static std::string str(const Scalar& s) { return s.str(); }
};

template <>
struct CoefOps<HbarLaurent> {
    static HbarLaurent from_scalar(const Scalar& s, const SeriesRing& r) {
        return HbarLaurent::monomial(0, s, r.window);
    }
    static bool is_zero(const HbarLaurent& s) { return s.is_zero(); }
    static std::string str(const HbarLaurent& s) { return s.str(); }
};

template <class C>
class SeriesT {
public:
    using Terms = std::map<Mono, C, MonoLess>;

    SeriesT() = default;
    explicit SeriesT(RingPtr ring) : ring_(std::move(ring)) {}

    static SeriesT constant(RingPtr ring, const C& c) {
        SeriesT s(ring);
        s.add_term(Mono(ring->nvars(), 0), c);
        return s;
    }
    static SeriesT scalar(RingPtr ring, const Scalar& c) {
        auto r = ring;
        return constant(r, CoefOps<C>::from_scalar(c, *ring));
    }
    static SeriesT variable(RingPtr ring, int a) {
        SeriesT s(ring);
        s.add_term(mono_var(*ring, a), CoefOps<C>::from_scalar(Scalar(1), *ring));
        return s;
    }
    static SeriesT monomial(RingPtr ring, const Mono& m, const C& c) {
        SeriesT s(ring);
        s.add_term(m, c);
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Accumulates; terms above the truncation order are dropped.
    void add_term(const Mono& m, const C& c) {
        if (CoefOps<C>::is_zero(c) || mono_degree(m) > ring_->order) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (CoefOps<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    C coefficient(const Mono& m) const {
        auto it = terms_.find(m);
        if (it == terms_.end()) return C{};
        return it->second;
    }
    C constant_term() const { return coefficient(Mono(ring_->nvars(), 0)); }

    SeriesT& operator+=(const SeriesT& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SeriesT& operator-=(const SeriesT& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SeriesT operator-() const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend SeriesT operator+(SeriesT a, const SeriesT& b) { return a += b; }
    friend SeriesT operator-(SeriesT a, const SeriesT& b) { return a -= b; }

    SeriesT scaled(const Scalar& s) const {
        SeriesT r(ring_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    SeriesT times_coef(const C& k) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * k);
        return r;
    }
    template <class F>
    SeriesT map_coefficients(F f) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_) r.add_term(m, f(m, c));
        return r;
    }

    friend SeriesT operator*(const SeriesT& a, const SeriesT& b) {
        a.check(b);
        SeriesT r(a.ring_);
        const int order = a.ring_->order;
        Mono out;
        for (const auto& [ma, ca] : a.terms_) {
            const int da = mono_degree(ma);
            for (const auto& [mb, cb] : b.terms_) {
                if (da + mono_degree(mb) > order) continue;
                int s = mono_product(ma, mb, *a.ring_, out);
                if (s == 0) continue;
                C c = ca * cb;
                if (s < 0) c = -c;
                r.add_term(out, c);
            }
        }
        return r;
    }

    // Left derivative d/dt^a.
    SeriesT derivative(int a) const {
        SeriesT r(ring_);
        const bool odd = ring_->parity.at(a) & 1;
        for (const auto& [m, c] : terms_) {
            if (m[a] == 0) continue;
            Mono k = m;
            k[a] -= 1;
            if (odd) {
                long before = 0;
                for (int j = 0; j < a; ++j)
                    if ((ring_->parity[j] & 1) && m[j]) ++before;
                C v = c;
                if (sign_of(before) < 0) v = -v;
                r.add_term(k, v);
            } else {
                r.add_term(k, c * Scalar(static_cast<long>(m[a])));
            }
        }
        return r;
    }

    SeriesT homogeneous(int k) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) == k) r.terms_.emplace(m, c);
        return r;
    }
    SeriesT truncated(int k) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) <= k) r.terms_.emplace(m, c);
        return r;
    }
    SeriesT parity_part(int p) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_)
            if (mono_parity(m, *ring_) == p) r.terms_.emplace(m, c);
        return r;
    }
    // Negates the odd part: r -> (-1)^{|r|} r.
    SeriesT twisted() const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_) {
            C v = c;
            if (sign_of(mono_parity(m, *ring_)) < 0) v = -v;
            r.terms_.emplace(m, v);
        }
        return r;
    }
    // Substitutes t^a = 0.
    SeriesT without_var(int a) const {
        SeriesT r(ring_);
        for (const auto& [m, c] : terms_)
            if (m[a] == 0) r.terms_.emplace(m, c);
        return r;
    }
    // Same variables, possibly different truncation order or window.
    SeriesT in_ring(RingPtr other) const {
        if (other->names != ring_->names || other->parity != ring_->parity)
            throw StructuralError("super_core", "series moved to a ring with different parameters");
        SeriesT r(other);
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        return r;
    }
    int min_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int k = mono_degree(m);
            if (d < 0 || k < d) d = k;
        }
        return d;
    }
    // Nonzero only in the homogeneous parity p (or zero).
    bool is_parity(int p) const {
        for (const auto& [m, c] : terms_)
            if (mono_parity(m, *ring_) != p) return false;
        return true;
    }

    friend bool operator==(const SeriesT& a, const SeriesT& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + CoefOps<C>::str(c) + ")" + mono_str(m, *ring_);
        }
        return s;
    }

private:
    void check(const SeriesT& o) const {
        if (ring_ != o.ring_ &&
            (!ring_ || !o.ring_ || ring_->names != o.ring_->names || ring_->order != o.ring_->order))
            throw StructuralError("super_core", "series over different parameter rings");
    }

    RingPtr ring_;
    Terms terms_;
};

using SuperSeries = SeriesT<Scalar>;
using HSeries = SeriesT<HbarLaurent>;

// Constant-coefficient lift nu^power * s.
HSeries lift(const SuperSeries& s, int power = 0);
// Coefficient of nu^power.
SuperSeries nu_part(const HSeries& s, int power);

// f(g^0, ..., g^{n-1}) with g^a in a common target ring.
template <class C>
SeriesT<C> compose(const SeriesT<C>& f, const std::vector<SuperSeries>& g, const RingPtr& target) {
    const auto& src = *f.ring();
    if (g.size() != src.nvars()) throw StructuralError("super_core", "substitution arity mismatch");
    for (std::size_t a = 0; a < g.size(); ++a) {
        if (g[a].ring()->names != target->names)
            throw StructuralError("super_core", "substitution series over different rings");
        if (!g[a].is_parity(src.parity[a] & 1))
            throw StructuralError("super_core", "substitution does not preserve parity of " + src.names[a]);
    }
    std::vector<std::vector<SuperSeries>> powers(g.size());
    auto power = [&](std::size_t a, int e) -> const SuperSeries& {
        auto& p = powers[a];
        if (p.empty()) p.push_back(SuperSeries::scalar(target, 1));
        while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * g[a].in_ring(target));
        return p[e];
    };
    SeriesT<C> r(target);
    for (const auto& [m, c] : f.terms()) {
        SuperSeries prod = SuperSeries::scalar(target, 1);
        for (std::size_t a = 0; a < m.size(); ++a)
            if (m[a]) prod = prod * power(a, m[a]);
        for (const auto& [k, v] : prod.terms()) r.add_term(k, c * v);
    }
    return r;
}

// Formal inverse of a map with invertible linear part.
std::vector<SuperSeries> series_invert_map(const std::vector<SuperSeries>& f);

} // namespace sivhs
