#include "sivhs/linalg.hpp"

#include "sivhs/errors.hpp"

namespace sivhs {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<SparseVec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, v] : cols[j]) {
            if (i < 0 || static_cast<std::size_t>(i) >= rows)
                throw ArgumentError("super_core", "vector index out of range");
            m(i, j) = v;
        }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw StructuralError("super_core", "matrix shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
        }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& x) const {
    if (x.size() != cols_) throw StructuralError("super_core", "matrix-vector shape mismatch");
    std::vector<Scalar> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
}

SparseVec Matrix::column_vec(std::size_t j) const {
    SparseVec v;
    for (std::size_t i = 0; i < rows_; ++i)
        if (!(*this)(i, j).is_zero()) v[static_cast<int>(i)] = (*this)(i, j);
    return v;
}

Echelon echelon(const Matrix& m) {
    Echelon e{m, Matrix::identity(m.rows()), {}};
    Matrix& r = e.reduced;
    Matrix& t = e.transform;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t piv = row;
        while (piv < r.rows() && r(piv, col).is_zero()) ++piv;
        if (piv == r.rows()) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
            for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(piv, j), t(row, j));
        }
        Scalar inv = r(row, col).inverse();
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (!r(row, j).is_zero()) r(row, j) *= inv;
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (!t(row, j).is_zero()) t(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            Scalar f = r(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j)
                if (!r(row, j).is_zero()) r(i, j) -= f * r(row, j);
            for (std::size_t j = 0; j < t.cols(); ++j)
                if (!t(row, j).is_zero()) t(i, j) -= f * t(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
    Echelon e = echelon(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Echelon e = echelon(m);
    if (e.pivots.size() != m.rows()) return std::nullopt;
    return e.transform;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw StructuralError("super_core", "determinant of non-square matrix");
    Matrix r = m;
    Scalar det = 1;
    const std::size_t n = r.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && r(piv, col).is_zero()) ++piv;
        if (piv == n) return Scalar(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(r(piv, j), r(col, j));
            det = -det;
        }
        det *= r(col, col);
        Scalar inv = r(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (r(i, col).is_zero()) continue;
            Scalar f = r(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) r(i, j) -= f * r(col, j);
        }
    }
    return det;
}

LinearSolver::LinearSolver(const Matrix& a) : ech_(echelon(a)), cols_(a.cols()) {}

std::optional<std::vector<Scalar>> LinearSolver::solve(const std::vector<Scalar>& b) const {
    std::vector<Scalar> c = ech_.transform.apply(b);
    for (std::size_t i = ech_.pivots.size(); i < c.size(); ++i)
        if (!c[i].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols_);
    for (std::size_t k = 0; k < ech_.pivots.size(); ++k) x[ech_.pivots[k]] = c[k];
    return x;
}

std::vector<Scalar> dense(const SparseVec& v, std::size_t dim) {
    std::vector<Scalar> d(dim);
    for (const auto& [i, c] : v) d.at(i) = c;
    return d;
}

SparseVec sparse(const std::vector<Scalar>& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s[static_cast<int>(i)] = v[i];
    return s;
}

std::vector<SparseVec> independent_subset(const std::vector<SparseVec>& vs, std::size_t dim) {
    Echelon e = echelon(Matrix::from_columns(vs, dim));
    std::vector<SparseVec> r;
    for (auto p : e.pivots) r.push_back(vs[p]);
    return r;
}

std::size_t span_rank(const std::vector<SparseVec>& vs, std::size_t dim) {
    return rank(Matrix::from_columns(vs, dim));
}

bool in_span(const std::vector<SparseVec>& vs, const SparseVec& v, std::size_t dim) {
    auto all = vs;
    all.push_back(v);
    return span_rank(all, dim) == span_rank(vs, dim);
}

std::vector<SparseVec> intersect_spans(const std::vector<SparseVec>& u, const std::vector<SparseVec>& w,
                                       std::size_t dim) {
    auto ub = independent_subset(u, dim);
    auto wb = independent_subset(w, dim);
    std::vector<SparseVec> cols = ub;
    for (const auto& v : wb) cols.push_back(scaled(v, -1));
    auto ns = nullspace(Matrix::from_columns(cols, dim));
    std::vector<SparseVec> r;
    for (const auto& x : ns) {
        SparseVec v;
        for (std::size_t k = 0; k < ub.size(); ++k) axpy(v, x[k], ub[k]);
        if (!v.empty()) r.push_back(v);
    }
    return independent_subset(r, dim);
}

std::vector<SparseVec> kernel_of(const LinearOp& op) {
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < op.src()->dim(); ++j) cols.push_back(op.column(static_cast<int>(j)));
    auto ns = nullspace(Matrix::from_columns(cols, op.dst()->dim()));
    std::vector<SparseVec> r;
    for (const auto& x : ns) r.push_back(sparse(x));
    return r;
}

std::vector<SparseVec> image_of(const LinearOp& op) {
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < op.src()->dim(); ++j) cols.push_back(op.column(static_cast<int>(j)));
    return independent_subset(cols, op.dst()->dim());
}

} // namespace sivhs
