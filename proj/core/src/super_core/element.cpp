#include "sivhs/element.hpp"

namespace sivhs {

HElem shift_nu(const HElem& x, int k) {
    return x.map([k](const HSeries& s) {
        return s.map_coefficients([k](const Mono&, const HbarLaurent& c) { return c.shifted(k); });
    });
}

bool SliceLess::operator()(const SliceKey& a, const SliceKey& b) const {
    MonoLess less;
    if (less(a.mono, b.mono)) return true;
    if (less(b.mono, a.mono)) return false;
    return a.power < b.power;
}

Slices slices_of(const HElem& x) {
    Slices out;
    for (const auto& [i, s] : x.c)
        for (const auto& [m, h] : s.terms())
            for (const auto& [p, c] : h.terms()) out[SliceKey{m, p}][i] = c;
    return out;
}

HElem element_of(const Slices& s, const BasisPtr& basis, const RingPtr& ring) {
    HElem r(basis, ring);
    for (const auto& [key, v] : s)
        for (const auto& [i, c] : v)
            r.add(i, HSeries::monomial(ring, key.mono, HbarLaurent::monomial(key.power, c, ring->window)));
    return r;
}

HElem lift_element(const SElem& x, int power) {
    HElem r(x.basis, x.ring);
    for (const auto& [i, s] : x.c) r.add(i, lift(s, power));
    return r;
}

} // namespace sivhs
