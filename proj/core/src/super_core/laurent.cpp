#include "sivhs/laurent.hpp"

#include <algorithm>

#include "sivhs/errors.hpp"

namespace sivhs {

HbarLaurent HbarLaurent::monomial(int power, const Scalar& c, Window w) {
    HbarLaurent h(w);
    h.put(power, c);
    return h;
}

Scalar HbarLaurent::coefficient(int power) const {
    auto it = c_.find(power);
    return it == c_.end() ? Scalar(0) : it->second;
}

std::optional<int> HbarLaurent::min_power() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

std::optional<int> HbarLaurent::max_power() const {
    if (c_.empty()) return std::nullopt;
    return c_.rbegin()->first;
}

void HbarLaurent::merge_window(const HbarLaurent& o) {
    if (!o.has_window_) return;
    if (!has_window_) {
        w_ = o.w_;
        has_window_ = true;
        return;
    }
    w_.lo = std::min(w_.lo, o.w_.lo);
    w_.hi = std::max(w_.hi, o.w_.hi);
}

void HbarLaurent::put(int power, const Scalar& c) {
    if (c.is_zero()) return;
    if (has_window_ && !w_.contains(power))
        throw WindowOverflow("super_core", "power nu^" + std::to_string(power) + " outside window [" +
                                               std::to_string(w_.lo) + ", " + std::to_string(w_.hi) + "]");
    auto it = c_.find(power);
    if (it == c_.end()) {
        c_.emplace(power, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

HbarLaurent& HbarLaurent::operator+=(const HbarLaurent& o) {
    merge_window(o);
    for (const auto& [m, c] : o.c_) put(m, c);
    return *this;
}

HbarLaurent& HbarLaurent::operator-=(const HbarLaurent& o) {
    merge_window(o);
    for (const auto& [m, c] : o.c_) put(m, -c);
    return *this;
}

HbarLaurent& HbarLaurent::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [m, c] : c_) c *= s;
    return *this;
}

HbarLaurent HbarLaurent::operator-() const {
    HbarLaurent r = *this;
    for (auto& [m, c] : r.c_) c = -c;
    return r;
}

HbarLaurent operator*(const HbarLaurent& a, const HbarLaurent& b) {
    HbarLaurent r;
    r.merge_window(a);
    r.merge_window(b);
    for (const auto& [m, c] : a.c_)
        for (const auto& [k, d] : b.c_) r.put(m + k, c * d);
    return r;
}

HbarLaurent HbarLaurent::shifted(int k) const {
    HbarLaurent r;
    r.has_window_ = has_window_;
    r.w_ = w_;
    for (const auto& [m, c] : c_) r.put(m + k, c);
    return r;
}

HbarLaurent HbarLaurent::d_hbar() const {
    HbarLaurent r;
    r.has_window_ = has_window_;
    r.w_ = w_;
    for (const auto& [m, c] : c_) r.put(m - 2, c * Scalar(m, 2));
    return r;
}

HbarLaurent HbarLaurent::with_window(Window w) const {
    HbarLaurent r(w);
    for (const auto& [m, c] : c_) r.put(m, c);
    return r;
}

std::string HbarLaurent::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : c_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")nu^" + std::to_string(m);
    }
    return s;
}

} // namespace sivhs
