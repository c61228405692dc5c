#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sivhs/scalar.hpp"

namespace sivhs {

struct Bidegree {
    int p = 0;
    int q = 0;

    int parity() const { return ((p + q) % 2 + 2) % 2; }
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class GradedBasis {
public:
    GradedBasis(std::vector<std::string> names, std::vector<Bidegree> degrees);

    std::size_t dim() const { return names_.size(); }
    const std::string& name(int i) const { return names_.at(i); }
    Bidegree bidegree(int i) const { return degrees_.at(i); }
    int parity(int i) const { return degrees_.at(i).parity(); }
    std::optional<int> find(const std::string& name) const;
    int index(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::vector<Bidegree> degrees_;
    std::map<std::string, int> lookup_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;
BasisPtr make_basis(std::vector<std::string> names, std::vector<Bidegree> degrees);

using SparseVec = std::map<int, Scalar>;

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Scalar& a);
SparseVec add(const SparseVec& a, const SparseVec& b);
SparseVec sub(const SparseVec& a, const SparseVec& b);
SparseVec unit_vector(int i);
std::string format_vec(const SparseVec& v, const GradedBasis& basis);

// Coefficients over a basis; zero entries are never stored.
template <class C>
struct ElementT {
    BasisPtr basis;
    std::map<int, C> coeffs;
};

struct GradedElement {
    BasisPtr basis;
    SparseVec coeffs;

    std::optional<Bidegree> bidegree() const;
};

class LinearOp {
public:
    LinearOp() = default;
    LinearOp(BasisPtr src, BasisPtr dst, Bidegree shift, int parity);
    static LinearOp identity(BasisPtr basis);
    static LinearOp zero(BasisPtr basis, Bidegree shift);

    const BasisPtr& src() const { return src_; }
    const BasisPtr& dst() const { return dst_; }
    Bidegree shift() const { return shift_; }
    int parity() const { return parity_; }

    void add_entry(int row, int col, const Scalar& v);
    void set_column(int col, SparseVec v);
    const SparseVec& column(int col) const { return cols_.at(col); }
    Scalar entry(int row, int col) const;

    SparseVec apply(const SparseVec& x) const;
    LinearOp compose(const LinearOp& rhs) const;
    LinearOp plus(const LinearOp& o) const;
    LinearOp minus(const LinearOp& o) const;
    LinearOp times(const Scalar& a) const;
    bool is_zero() const;
    bool equals(const LinearOp& o) const;
    // First entry violating the declared shift, if any.
    std::optional<std::pair<int, int>> shift_violation() const;

private:
    BasisPtr src_, dst_;
    Bidegree shift_;
    int parity_ = 0;
    std::vector<SparseVec> cols_;
};

// Super-commutator PQ - (-1)^{|P||Q|} QP.
LinearOp op_commutator(const LinearOp& p, const LinearOp& q);

// Bilinear map given on basis pairs.
class Bilinear {
public:
    Bilinear() = default;
    Bilinear(BasisPtr left, BasisPtr right, BasisPtr out, Bidegree shift, int parity);

    const BasisPtr& left() const { return left_; }
    const BasisPtr& right() const { return right_; }
    const BasisPtr& out() const { return out_; }
    Bidegree shift() const { return shift_; }
    int parity() const { return parity_; }

    void set(int a, int b, SparseVec v);
    const SparseVec& at(int a, int b) const { return table_.at(a).at(b); }
    SparseVec apply(const SparseVec& x, const SparseVec& y) const;
    bool is_zero() const;
    std::optional<std::pair<int, int>> shift_violation() const;

private:
    BasisPtr left_, right_, out_;
    Bidegree shift_;
    int parity_ = 0;
    std::vector<std::vector<SparseVec>> table_;
};

} // namespace sivhs
