#include "sivhs/scalar.hpp"

#include <cctype>

#include "sivhs/errors.hpp"

namespace sivhs {

Scalar::Scalar(long num, long den) {
    if (den == 0) throw ArgumentError("super_core", "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Scalar::Scalar(mpq_class q) : v_(std::move(q)) {
    if (v_.get_den() == 0) throw ArgumentError("super_core", "zero denominator");
    v_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
    std::string s(text);
    auto valid_int = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string part) {
        if (!part.empty() && part[0] == '+') part.erase(0, 1);
        return part;
    };
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("super_core", "malformed rational '" + s + "'");
    mpz_class n(strip_plus(num)), d(den);
    if (d == 0) throw ParseError("super_core", "zero denominator in '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
}

std::string Scalar::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ArgumentError("super_core", "inverse of zero");
    mpq_class q = 1 / v_;
    return Scalar(q);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw ArgumentError("super_core", "division by zero");
    v_ /= o.v_;
    return *this;
}

} // namespace sivhs
