#pragma once

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sivhs {

// Exact rational in lowest terms with positive denominator.
class Scalar {
public:
    Scalar() = default;
    template <std::integral I>
    Scalar(I v) : v_(static_cast<long>(v)) {}
    Scalar(long num, long den);
    explicit Scalar(mpq_class q);

    // Accepts "a", "a/b" and leading sign.
    static Scalar parse(std::string_view text);

    std::string str() const;
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    const mpq_class& mpq() const { return v_; }
    Scalar inverse() const;

    Scalar operator-() const { return Scalar(mpq_class(-v_)); }
    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

} // namespace sivhs
