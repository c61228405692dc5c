#include "sivhs/graded.hpp"

#include <sstream>

#include "sivhs/errors.hpp"
#include "sivhs/signs.hpp"

namespace sivhs {

GradedBasis::GradedBasis(std::vector<std::string> names, std::vector<Bidegree> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size())
        throw ArgumentError("super_core", "basis names and bidegrees differ in length");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!lookup_.emplace(names_[i], static_cast<int>(i)).second)
            throw ArgumentError("super_core", "duplicate basis symbol '" + names_[i] + "'");
    }
}

std::optional<int> GradedBasis::find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

int GradedBasis::index(const std::string& name) const {
    auto r = find(name);
    if (!r) throw ArgumentError("super_core", "unknown basis symbol '" + name + "'");
    return *r;
}

BasisPtr make_basis(std::vector<std::string> names, std::vector<Bidegree> degrees) {
    return std::make_shared<const GradedBasis>(std::move(names), std::move(degrees));
}

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return;
    for (const auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            y.emplace(i, a * v);
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
    SparseVec r;
    axpy(r, a, x);
    return r;
}

SparseVec add(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    axpy(r, 1, b);
    return r;
}

SparseVec sub(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    axpy(r, -1, b);
    return r;
}

SparseVec unit_vector(int i) { return SparseVec{{i, Scalar(1)}}; }

std::string format_vec(const SparseVec& v, const GradedBasis& basis) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")" << basis.name(i);
    }
    return os.str();
}

std::optional<Bidegree> GradedElement::bidegree() const {
    std::optional<Bidegree> deg;
    for (const auto& [i, c] : coeffs) {
        auto b = basis->bidegree(i);
        if (deg && !(*deg == b)) return std::nullopt;
        deg = b;
    }
    return deg;
}

LinearOp::LinearOp(BasisPtr src, BasisPtr dst, Bidegree shift, int parity)
    : src_(std::move(src)), dst_(std::move(dst)), shift_(shift), parity_(parity) {
    if (!src_ || !dst_) throw ArgumentError("super_core", "operator without basis");
    if (parity_ != shift_.parity())
        throw ArgumentError("super_core", "operator parity disagrees with its bidegree shift");
    cols_.assign(src_->dim(), SparseVec{});
}

LinearOp LinearOp::identity(BasisPtr basis) {
    LinearOp op(basis, basis, {0, 0}, 0);
    for (std::size_t i = 0; i < basis->dim(); ++i) op.cols_[i] = unit_vector(static_cast<int>(i));
    return op;
}

LinearOp LinearOp::zero(BasisPtr basis, Bidegree shift) {
    return LinearOp(basis, basis, shift, shift.parity());
}

void LinearOp::add_entry(int row, int col, const Scalar& v) {
    if (row < 0 || static_cast<std::size_t>(row) >= dst_->dim() || col < 0 ||
        static_cast<std::size_t>(col) >= src_->dim())
        throw ArgumentError("super_core", "operator entry out of range");
    axpy(cols_[col], v, unit_vector(row));
}

void LinearOp::set_column(int col, SparseVec v) {
    for (auto it = v.begin(); it != v.end();) {
        if (it->second.is_zero()) it = v.erase(it);
        else ++it;
    }
    cols_.at(col) = std::move(v);
}

Scalar LinearOp::entry(int row, int col) const {
    const auto& c = cols_.at(col);
    auto it = c.find(row);
    return it == c.end() ? Scalar(0) : it->second;
}

SparseVec LinearOp::apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, v] : x) axpy(y, v, cols_.at(j));
    return y;
}

LinearOp LinearOp::compose(const LinearOp& rhs) const {
    if (rhs.dst_ != src_ && rhs.dst_->names() != src_->names())
        throw StructuralError("super_core", "composition of operators over different bases");
    LinearOp r(rhs.src_, dst_, shift_ + rhs.shift_, (parity_ + rhs.parity_) % 2);
    for (std::size_t j = 0; j < rhs.cols_.size(); ++j) r.cols_[j] = apply(rhs.cols_[j]);
    return r;
}

static void check_same(const LinearOp& a, const LinearOp& b) {
    if (a.src()->names() != b.src()->names() || a.dst()->names() != b.dst()->names())
        throw StructuralError("super_core", "operators over different bases");
}

LinearOp LinearOp::plus(const LinearOp& o) const {
    check_same(*this, o);
    LinearOp r = *this;
    if (o.parity_ != parity_) throw StructuralError("super_core", "sum of operators of different parity");
    for (std::size_t j = 0; j < cols_.size(); ++j) axpy(r.cols_[j], 1, o.cols_[j]);
    return r;
}

LinearOp LinearOp::minus(const LinearOp& o) const { return plus(o.times(-1)); }

LinearOp LinearOp::times(const Scalar& a) const {
    LinearOp r = *this;
    for (auto& c : r.cols_) c = scaled(c, a);
    return r;
}

bool LinearOp::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

bool LinearOp::equals(const LinearOp& o) const {
    check_same(*this, o);
    return cols_ == o.cols_;
}

std::optional<std::pair<int, int>> LinearOp::shift_violation() const {
    for (std::size_t j = 0; j < cols_.size(); ++j)
        for (const auto& [i, v] : cols_[j])
            if (!(dst_->bidegree(i) == src_->bidegree(static_cast<int>(j)) + shift_))
                return std::make_pair(i, static_cast<int>(j));
    return std::nullopt;
}

LinearOp op_commutator(const LinearOp& p, const LinearOp& q) {
    if (p.src()->names() != q.src()->names() || p.src()->names() != p.dst()->names() ||
        q.src()->names() != q.dst()->names())
        throw StructuralError("super_core", "commutator of operators over different bases");
    LinearOp pq = p.compose(q);
    LinearOp qp = q.compose(p);
    return pq.minus(qp.times(sign_of(static_cast<long>(p.parity()) * q.parity())));
}

Bilinear::Bilinear(BasisPtr left, BasisPtr right, BasisPtr out, Bidegree shift, int parity)
    : left_(std::move(left)), right_(std::move(right)), out_(std::move(out)), shift_(shift), parity_(parity) {
    if (parity_ != shift_.parity())
        throw ArgumentError("super_core", "bilinear map parity disagrees with its bidegree shift");
    table_.assign(left_->dim(), std::vector<SparseVec>(right_->dim()));
}

void Bilinear::set(int a, int b, SparseVec v) {
    for (auto it = v.begin(); it != v.end();) {
        if (it->second.is_zero()) it = v.erase(it);
        else ++it;
    }
    table_.at(a).at(b) = std::move(v);
}

SparseVec Bilinear::apply(const SparseVec& x, const SparseVec& y) const {
    SparseVec r;
    for (const auto& [a, xa] : x)
        for (const auto& [b, yb] : y) axpy(r, xa * yb, table_.at(a).at(b));
    return r;
}

bool Bilinear::is_zero() const {
    for (const auto& row : table_)
        for (const auto& v : row)
            if (!v.empty()) return false;
    return true;
}

std::optional<std::pair<int, int>> Bilinear::shift_violation() const {
    for (std::size_t a = 0; a < table_.size(); ++a)
        for (std::size_t b = 0; b < table_[a].size(); ++b)
            for (const auto& [c, v] : table_[a][b])
                if (!(out_->bidegree(c) ==
                      left_->bidegree(static_cast<int>(a)) + right_->bidegree(static_cast<int>(b)) + shift_))
                    return std::make_pair(static_cast<int>(a), static_cast<int>(b));
    return std::nullopt;
}

} // namespace sivhs
