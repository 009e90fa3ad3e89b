#include "gmas/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace gmas {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("RationalMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, const std::vector<RationalVector>& rows) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("RationalMatrix::from_rows: length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, const std::vector<RationalVector>& cols) {
    RationalMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("RationalMatrix::from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const {
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RationalMatrix * vector: dimension mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("RationalMatrix * matrix: dimension mismatch");
    RationalMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
        }
    return out;
}

RrefResult rref(const RationalMatrix& m) {
    RrefResult res{m, {}, 0};
    RationalMatrix& a = res.reduced;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t r = pivot_row;
        while (r < rows && a(r, c) == 0) ++r;
        if (r == rows) continue;
        if (r != pivot_row)
            for (std::size_t k = 0; k < cols; ++k) std::swap(a(r, k), a(pivot_row, k));

        const Rational inv = 1 / a(pivot_row, c);
        for (std::size_t k = c; k < cols; ++k) a(pivot_row, k) *= inv;

        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || a(i, c) == 0) continue;
            const Rational factor = a(i, c);
            for (std::size_t k = c; k < cols; ++k)
                if (a(pivot_row, k) != 0) a(i, k) -= factor * a(pivot_row, k);
        }
        res.pivot_cols.push_back(c);
        ++pivot_row;
    }
    res.rank = res.pivot_cols.size();
    return res;
}

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, std::vector<RationalVector> vectors)
    : ambient_dim_(ambient_dim), vectors_(std::move(vectors)) {
    for (const auto& v : vectors_)
        if (v.size() != ambient_dim_) throw std::invalid_argument("SubspaceBasis: vector length != ambient dimension");
    if (!vectors_.empty() && rank(as_rows()) != vectors_.size())
        throw std::invalid_argument("SubspaceBasis: vectors are linearly dependent");
}

SubspaceBasis SubspaceBasis::span_of(std::size_t ambient_dim, const std::vector<RationalVector>& vectors) {
    SubspaceBasis b(ambient_dim);
    if (vectors.empty()) return b;
    const auto r = rref(RationalMatrix::from_rows(ambient_dim, vectors));
    for (std::size_t i = 0; i < r.rank; ++i) b.vectors_.push_back(r.reduced.row(i));
    return b;
}

SubspaceBasis SubspaceBasis::full(std::size_t ambient_dim) {
    SubspaceBasis b(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        RationalVector e(ambient_dim);
        e[i] = 1;
        b.vectors_.push_back(std::move(e));
    }
    return b;
}

RationalMatrix SubspaceBasis::as_columns() const { return RationalMatrix::from_columns(ambient_dim_, vectors_); }

RationalMatrix SubspaceBasis::as_rows() const { return RationalMatrix::from_rows(ambient_dim_, vectors_); }

bool SubspaceBasis::contains(const RationalVector& v) const {
    if (v.size() != ambient_dim_) throw std::invalid_argument("SubspaceBasis::contains: length mismatch");
    if (is_zero(v)) return true;
    auto rows = vectors_;
    rows.push_back(v);
    return rank(RationalMatrix::from_rows(ambient_dim_, rows)) == vectors_.size();
}

SubspaceBasis kernel_basis(const RationalMatrix& m) {
    const std::size_t n = m.cols();
    const auto r = rref(m);

    std::vector<bool> is_pivot(n, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;

    // One vector per free column f: x_f = 1, x_p = -R(i, f) for the pivot p of row i.
    std::vector<RationalVector> vecs;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = -r.reduced(i, f);
        vecs.push_back(std::move(v));
    }
    return SubspaceBasis(n, std::move(vecs));
}

SubspaceBasis row_space(const RationalMatrix& m) {
    std::vector<RationalVector> rows;
    const auto r = rref(m);
    for (std::size_t i = 0; i < r.rank; ++i) rows.push_back(r.reduced.row(i));
    return SubspaceBasis(m.cols(), std::move(rows));
}

SubspaceBasis column_space(const RationalMatrix& m) { return row_space(m.transpose()); }

SubspaceBasis orth_complement(const SubspaceBasis& b) {
    if (b.empty()) return SubspaceBasis::full(b.ambient_dim());
    return kernel_basis(b.as_rows());
}

SubspaceBasis intersect_subspaces(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect_subspaces: ambient dimension mismatch");
    const std::size_t n = a.ambient_dim();
    // a ∩ b = (a⊥ + b⊥)⊥
    auto constraints = orth_complement(a).vectors();
    const auto bc = orth_complement(b).vectors();
    constraints.insert(constraints.end(), bc.begin(), bc.end());
    if (constraints.empty()) return SubspaceBasis::full(n);
    return kernel_basis(RationalMatrix::from_rows(n, constraints));
}

bool same_span(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    if (a.empty()) return true;
    return rref(a.as_rows()).reduced == rref(b.as_rows()).reduced;
}

}  // namespace gmas
