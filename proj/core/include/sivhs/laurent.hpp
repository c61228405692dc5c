#pragma once

#include <map>
#include <optional>
#include <string>

#include "sivhs/scalar.hpp"

namespace sivhs {

// Inclusive range of admissible powers of nu = hbar^{1/2}.
struct Window {
    int lo = 0;
    int hi = 0;

    bool contains(int m) const { return lo <= m && m <= hi; }
    friend bool operator==(const Window&, const Window&) = default;
};

// Finite Laurent polynomial in nu with a declared window.
class HbarLaurent {
public:
    HbarLaurent() = default;
    explicit HbarLaurent(Window w) : has_window_(true), w_(w) {}
    static HbarLaurent monomial(int power, const Scalar& c, Window w);

    bool is_zero() const { return c_.empty(); }
    bool has_window() const { return has_window_; }
    Window window() const { return w_; }
    const std::map<int, Scalar>& terms() const { return c_; }
    Scalar coefficient(int power) const;
    std::optional<int> min_power() const;
    std::optional<int> max_power() const;

    HbarLaurent& operator+=(const HbarLaurent& o);
    HbarLaurent& operator-=(const HbarLaurent& o);
    HbarLaurent& operator*=(const Scalar& s);
    HbarLaurent operator-() const;
    friend HbarLaurent operator+(HbarLaurent a, const HbarLaurent& b) { return a += b; }
    friend HbarLaurent operator-(HbarLaurent a, const HbarLaurent& b) { return a -= b; }
    friend HbarLaurent operator*(HbarLaurent a, const Scalar& s) { return a *= s; }
    friend HbarLaurent operator*(const HbarLaurent& a, const HbarLaurent& b);
    friend bool operator==(const HbarLaurent& a, const HbarLaurent& b) { return a.c_ == b.c_; }

    // Multiplication by nu^k.
    HbarLaurent shifted(int k) const;
    // d/dhbar: nu^m -> (m/2) nu^{m-2}.
    HbarLaurent d_hbar() const;
    HbarLaurent with_window(Window w) const;
    std::string str() const;

private:
    void merge_window(const HbarLaurent& o);
    void put(int power, const Scalar& c);

    std::map<int, Scalar> c_;
    bool has_window_ = false;
    Window w_;
};

} // namespace sivhs
