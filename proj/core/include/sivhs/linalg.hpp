#pragma once

#include <optional>
#include <vector>

#include "sivhs/graded.hpp"
#include "sivhs/scalar.hpp"

namespace sivhs {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_columns(const std::vector<SparseVec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix transpose() const;
    std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
    SparseVec column_vec(std::size_t j) const;
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

// Reduced row echelon form with first-nonzero pivoting.
struct Echelon {
    Matrix reduced;
    Matrix transform;  // transform * input = reduced
    std::vector<std::size_t> pivots;
};
Echelon echelon(const Matrix& m);
std::size_t rank(const Matrix& m);
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

// Reusable exact solver for A x = b (free variables set to zero).
class LinearSolver {
public:
    explicit LinearSolver(const Matrix& a);
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;
    std::size_t rank() const { return ech_.pivots.size(); }
    std::size_t unknowns() const { return cols_; }

private:
    Echelon ech_;
    std::size_t cols_;
};

// Subspace helpers for vectors in a space of dimension dim.
std::vector<SparseVec> independent_subset(const std::vector<SparseVec>& vs, std::size_t dim);
std::size_t span_rank(const std::vector<SparseVec>& vs, std::size_t dim);
bool in_span(const std::vector<SparseVec>& vs, const SparseVec& v, std::size_t dim);
std::vector<SparseVec> intersect_spans(const std::vector<SparseVec>& u, const std::vector<SparseVec>& w,
                                       std::size_t dim);
std::vector<SparseVec> kernel_of(const LinearOp& op);
std::vector<SparseVec> image_of(const LinearOp& op);

std::vector<Scalar> dense(const SparseVec& v, std::size_t dim);
SparseVec sparse(const std::vector<Scalar>& v);

} // namespace sivhs
