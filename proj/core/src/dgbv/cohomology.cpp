#include <algorithm>

#include "sivhs/dgbv.hpp"
#include "sivhs/errors.hpp"

namespace sivhs {

std::vector<Scalar> CohomologyData::class_of(const SparseVec& v) const {
    return coords.apply(dense(v, op.src()->dim()));
}

namespace {

bool homogeneous_in(const SparseVec& v, const GradedBasis& b, Bidegree deg) {
    for (const auto& [i, c] : v)
        if (!(b.bidegree(i) == deg)) return false;
    return !v.empty();
}

} // namespace

CohomologyData cohomology(const LinearOp& op, const std::vector<SparseVec>& preferred) {
    const auto& basis = op.src();
    if (op.src()->names() != op.dst()->names()) throw StructuralError("dgbv", "cohomology of a map between different spaces");
    if (!op.compose(op).is_zero()) throw PreconditionError("dgbv", "operator does not square to zero");
    if (auto v = op.shift_violation())
        throw PreconditionError("dgbv", "operator violates its declared bidegree shift");
    const std::size_t dim = basis->dim();

    std::map<Bidegree, std::vector<int>> blocks;
    for (std::size_t i = 0; i < dim; ++i) blocks[basis->bidegree(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::map<Bidegree, std::vector<SparseVec>> kernel, compl_;
    for (const auto& [deg, idx] : blocks) {
        std::vector<SparseVec> cols;
        for (int i : idx) cols.push_back(op.column(i));
        for (const auto& x : nullspace(Matrix::from_columns(cols, dim))) {
            SparseVec v;
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (!x[k].is_zero()) v[idx[k]] = x[k];
            kernel[deg].push_back(v);
        }
        std::vector<SparseVec> span = kernel[deg];
        for (int i : idx) {
            if (span.size() == idx.size()) break;
            if (!in_span(span, unit_vector(i), dim)) {
                span.push_back(unit_vector(i));
                compl_[deg].push_back(unit_vector(i));
            }
        }
    }

    std::vector<SparseVec> bvecs, cvecs, hvecs;
    std::vector<Bidegree> hdegs;
    std::map<Bidegree, std::vector<SparseVec>> bound;
    for (const auto& [deg, cs] : compl_)
        for (const auto& c : cs) bound[deg + op.shift()].push_back(op.apply(c));

    for (const auto& [deg, idx] : blocks) {
        std::vector<SparseVec> span = bound[deg];
        const std::size_t target = kernel[deg].size();
        auto try_add = [&](const SparseVec& v) {
            if (span.size() >= target) return;
            if (!homogeneous_in(v, *basis, deg) || !op.apply(v).empty()) return;
            if (!in_span(span, v, dim)) {
                span.push_back(v);
                hvecs.push_back(v);
                hdegs.push_back(deg);
            }
        };
        for (const auto& v : preferred) try_add(v);
        for (const auto& v : kernel[deg]) try_add(v);
        if (span.size() != target) throw InvariantViolation("dgbv", "cohomology splitting failed");
    }
    for (const auto& [deg, cs] : compl_)
        for (const auto& c : cs) {
            cvecs.push_back(c);
            bvecs.push_back(op.apply(c));
        }

    std::vector<SparseVec> cols = bvecs;
    cols.insert(cols.end(), hvecs.begin(), hvecs.end());
    cols.insert(cols.end(), cvecs.begin(), cvecs.end());
    auto pinv = inverse(Matrix::from_columns(cols, dim));
    if (!pinv) throw InvariantViolation("dgbv", "cohomology splitting is not a basis");

    const std::size_t nb = bvecs.size(), nh = hvecs.size();
    CohomologyData data{op, hvecs, hdegs, LinearOp(basis, basis, {0, 0}, 0),
                        LinearOp(basis, basis, Bidegree{0, 0} - op.shift(), op.parity()), Matrix(nh, dim)};
    for (std::size_t k = 0; k < nh; ++k)
        for (std::size_t j = 0; j < dim; ++j) data.coords(k, j) = (*pinv)(nb + k, j);
    for (std::size_t j = 0; j < dim; ++j) {
        SparseVec pj, hj;
        for (std::size_t k = 0; k < nh; ++k) axpy(pj, (*pinv)(nb + k, j), hvecs[k]);
        for (std::size_t k = 0; k < nb; ++k) axpy(hj, (*pinv)(k, j), cvecs[k]);
        data.pi.set_column(static_cast<int>(j), pj);
        data.h.set_column(static_cast<int>(j), hj);
    }
    LinearOp lhs = op.compose(data.h).plus(data.h.compose(op));
    LinearOp rhs = LinearOp::identity(basis).minus(data.pi);
    if (!lhs.equals(rhs)) throw InvariantViolation("dgbv", "homotopy identity d h + h d = id - pi failed");
    return data;
}

std::map<Bidegree, int> cohomology_dimensions(const CohomologyData& data) {
    std::map<Bidegree, int> dims;
    for (const auto& d : data.rep_degrees) ++dims[d];
    return dims;
}

ManinReport check_manin(const DgbvAlgebra& alg) {
    const std::size_t dim = alg.basis->dim();
    auto im_d = image_of(alg.d), im_D = image_of(alg.delta);
    auto ker_d = kernel_of(alg.d), ker_D = kernel_of(alg.delta);
    ManinReport r;
    r.im_d_ker_delta = intersect_spans(im_d, ker_D, dim);
    r.im_delta_ker_d = intersect_spans(im_D, ker_d, dim);
    r.im_d_im_delta = intersect_spans(im_d, im_D, dim);
    const std::size_t k = r.im_d_im_delta.size();
    auto contains = [&](const std::vector<SparseVec>& big) {
        for (const auto& v : big)
            if (!in_span(r.im_d_im_delta, v, dim)) return v;
        return SparseVec{};
    };
    (void)k;
    SparseVec w1 = contains(r.im_d_ker_delta);
    SparseVec w2 = contains(r.im_delta_ker_d);
    r.verdict = w1.empty() && w2.empty();
    if (!w1.empty()) r.witness = w1;
    else if (!w2.empty()) r.witness = w2;
    return r;
}

std::vector<SparseVec> harmonic_representatives(const DgbvAlgebra& alg) {
    return harmonic_representatives(alg.d, alg.delta);
}

std::vector<SparseVec> harmonic_representatives(const LinearOp& d, const LinearOp& delta) {
    const BasisPtr& basis = d.src();
    const std::size_t dim = basis->dim();
    auto closed = intersect_spans(kernel_of(d), kernel_of(delta), dim);
    LinearOp dD = d.compose(delta);
    auto exact = image_of(dD);
    std::map<Bidegree, std::vector<int>> blocks;
    for (std::size_t i = 0; i < dim; ++i) blocks[basis->bidegree(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<SparseVec> reps;
    for (const auto& [deg, idx] : blocks) {
        std::vector<SparseVec> block_cols;
        for (int i : idx) block_cols.push_back(unit_vector(i));
        auto closed_here = intersect_spans(closed, block_cols, dim);
        auto exact_here = intersect_spans(exact, block_cols, dim);
        std::vector<SparseVec> span = exact_here;
        std::vector<SparseVec> candidates;
        for (int i : idx) candidates.push_back(unit_vector(i));
        candidates.insert(candidates.end(), closed_here.begin(), closed_here.end());
        for (const auto& v : candidates) {
            if (!in_span(closed_here, v, dim)) continue;
            if (!in_span(span, v, dim)) {
                span.push_back(v);
                reps.push_back(v);
            }
        }
    }
    return reps;
}

} // namespace sivhs
