#include <bit>
#include <sstream>

#include "sivhs/errors.hpp"
#include "sivhs/kahler.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

namespace {

int popcount_below(std::uint32_t mask, int v) { return std::popcount(mask & ((1u << v) - 1u)); }

// Sign of concatenating odd monomials a and b into sorted order; 0 if they share a variable.
int odd_product_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    long crossings = 0;
    for (std::uint32_t rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        crossings += std::popcount(a >> (j + 1));
    }
    return sign_of(crossings);
}

int key_degree(const PolyKey& k) {
    int d = 0;
    for (auto e : k.exps) d += e;
    return d;
}

} // namespace

PolySection::PolySection(int n, SectionModel model, int degree_bound) : n_(n), model_(model), bound_(degree_bound) {
    if (n < 1 || n > 8) throw ArgumentError("kahler_ops", "dimension must be in 1..8");
}

PolySection PolySection::constant(int n, SectionModel model, int bound, const Scalar& c) {
    return odd_monomial(n, model, bound, 0, c);
}

PolySection PolySection::odd_monomial(int n, SectionModel model, int bound, std::uint32_t mask, const Scalar& c) {
    PolySection s(n, model, bound);
    s.add_term(PolyKey{std::vector<std::uint8_t>(2 * n, 0), mask}, c);
    return s;
}

PolySection PolySection::even_variable(int n, SectionModel model, int bound, int v, int power) {
    PolySection s(n, model, bound);
    PolyKey k{std::vector<std::uint8_t>(2 * n, 0), 0};
    k.exps.at(v) = static_cast<std::uint8_t>(power);
    s.add_term(k, 1);
    return s;
}

void PolySection::add_term(const PolyKey& key, const Scalar& c) {
    if (c.is_zero()) return;
    if (key_degree(key) > bound_)
        throw DegreeOverflow("kahler_ops", "polynomial degree " + std::to_string(key_degree(key)) + " exceeds bound " +
                                               std::to_string(bound_));
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int PolySection::parity() const {
    int p = -2;
    for (const auto& [k, c] : terms_) {
        const int q = std::popcount(k.odd) % 2;
        if (p == -2) p = q;
        else if (p != q) return -1;
    }
    return p == -2 ? 0 : p;
}

int PolySection::max_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, key_degree(k));
    return d;
}

void PolySection::require_compatible(const PolySection& o) const {
    if (o.n_ != n_ || o.model_ != model_) throw StructuralError("kahler_ops", "sections of different models");
}

PolySection PolySection::operator+(const PolySection& o) const {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return o;
    require_compatible(o);
    PolySection r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

PolySection PolySection::operator-(const PolySection& o) const { return *this + o.scaled(-1); }

PolySection PolySection::scaled(const Scalar& c) const {
    PolySection r(n_, model_, bound_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

PolySection PolySection::operator*(const PolySection& o) const {
    require_compatible(o);
    PolySection r(n_, model_, std::max(bound_, o.bound_));
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            const int s = odd_product_sign(ka.odd, kb.odd);
            if (s == 0) continue;
            PolyKey k{ka.exps, ka.odd | kb.odd};
            for (std::size_t i = 0; i < k.exps.size(); ++i) k.exps[i] = static_cast<std::uint8_t>(k.exps[i] + kb.exps[i]);
            r.add_term(k, ca * cb * s);
        }
    return r;
}

PolySection PolySection::d_even(int v) const {
    PolySection r(n_, model_, bound_);
    for (const auto& [k, c] : terms_) {
        if (!k.exps.at(v)) continue;
        PolyKey m = k;
        m.exps[v] -= 1;
        r.add_term(m, c * static_cast<int>(k.exps[v]));
    }
    return r;
}

PolySection PolySection::d_odd(int v) const {
    PolySection r(n_, model_, bound_);
    for (const auto& [k, c] : terms_) {
        if (!(k.odd >> v & 1u)) continue;
        PolyKey m = k;
        m.odd &= ~(1u << v);
        r.add_term(m, c * sign_of(popcount_below(k.odd, v)));
    }
    return r;
}

PolySection PolySection::at_origin() const {
    PolySection r(n_, model_, bound_);
    for (const auto& [k, c] : terms_)
        if (key_degree(k) == 0) r.terms_.emplace(k, c);
    return r;
}

PolySection PolySection::with_model(SectionModel m) const {
    PolySection r = *this;
    r.model_ = m;
    return r;
}

std::string PolySection::str() const {
    if (terms_.empty()) return "0";
    const bool forms = model_ == SectionModel::Form;
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        first = false;
        for (int i = 0; i < 2 * n_; ++i) {
            if (!k.exps[i]) continue;
            os << "*" << (i < n_ ? "z" : "zb") << (i % n_ + 1);
            if (k.exps[i] > 1) os << "^" << int(k.exps[i]);
        }
        for (int i = 0; i < 2 * n_; ++i)
            if (k.odd >> i & 1u)
                os << "*" << (i < n_ ? (forms ? "dz" : "psi") : (forms ? "dzb" : "psib")) << (i % n_ + 1);
    }
    return os.str();
}

SectionOp op_compose(const SectionOp& a, const SectionOp& b) {
    return {[a, b](const PolySection& s) { return a(b(s)); }, (a.parity + b.parity) % 2};
}

SectionOp op_bracket(const SectionOp& a, const SectionOp& b) {
    const int sign = -sign_of(a.parity * b.parity);
    return {[a, b, sign](const PolySection& s) { return a(b(s)) + b(a(s)).scaled(sign); }, (a.parity + b.parity) % 2};
}

SectionOp op_sum(const std::vector<SectionOp>& ops) {
    if (ops.empty()) throw ArgumentError("kahler_ops", "empty operator sum");
    return {[ops](const PolySection& s) {
                PolySection r(s.n(), s.model(), s.degree_bound());
                for (const auto& o : ops) r = r + o(s);
                return r;
            },
            ops.front().parity};
}

SectionOp op_scaled(const SectionOp& a, const Scalar& c) {
    return {[a, c](const PolySection& s) { return a(s).scaled(c); }, a.parity};
}

PolySection random_section(int n, SectionModel model, int degree, int bound, std::mt19937_64& rng, int parity) {
    PolySection s(n, model, bound);
    const int nodd = 2 * n;
    for (int t = 0; t < 3; ++t) {
        PolyKey k{std::vector<std::uint8_t>(2 * n, 0), 0};
        const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(degree + 1));
        for (int i = 0; i < deg; ++i) k.exps[rng() % static_cast<std::uint64_t>(2 * n)] += 1;
        k.odd = static_cast<std::uint32_t>(rng() % (1ull << nodd));
        if (parity >= 0 && std::popcount(k.odd) % 2 != parity) k.odd ^= 1u << (rng() % static_cast<std::uint64_t>(nodd));
        const long c = static_cast<long>(rng() % 7) - 3;
        s.add_term(k, c);
    }
    return s;
}

} // namespace sivhs
