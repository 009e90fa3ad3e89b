#ifndef GMAS_LINALG_HPP
#define GMAS_LINALG_HPP

#include "gmas/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gmas {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(std::size_t cols, const std::vector<RationalVector>& rows);
    static RationalMatrix from_columns(std::size_t rows, const std::vector<RationalVector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector column(std::size_t c) const;
    RationalMatrix transpose() const;

    RationalVector operator*(const RationalVector& v) const;
    RationalMatrix operator*(const RationalMatrix& other) const;

    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Gauss-Jordan elimination to the unique reduced row-echelon form.
RrefResult rref(const RationalMatrix& m);

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

/// A linearly independent list of vectors in Q^n.
class SubspaceBasis {
public:
    explicit SubspaceBasis(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    /// Throws std::invalid_argument if the vectors have the wrong length or
    /// are linearly dependent.
    SubspaceBasis(std::size_t ambient_dim, std::vector<RationalVector> vectors);

    /// Basis of span(vectors): the nonzero rows of the rref of the stacked vectors.
    static SubspaceBasis span_of(std::size_t ambient_dim, const std::vector<RationalVector>& vectors);
    static SubspaceBasis full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return vectors_.size(); }
    bool empty() const { return vectors_.empty(); }
    const std::vector<RationalVector>& vectors() const { return vectors_; }

    /// n x k matrix whose columns are the basis vectors.
    RationalMatrix as_columns() const;
    /// k x n matrix whose rows are the basis vectors.
    RationalMatrix as_rows() const;

    bool contains(const RationalVector& v) const;

private:
    std::size_t ambient_dim_;
    std::vector<RationalVector> vectors_;
};

/// Basis of Ker m. Its size is cols - rank(m).
SubspaceBasis kernel_basis(const RationalMatrix& m);

/// Basis of the row space of m.
SubspaceBasis row_space(const RationalMatrix& m);

/// Basis of the column space of m.
SubspaceBasis column_space(const RationalMatrix& m);

SubspaceBasis orth_complement(const SubspaceBasis& b);

SubspaceBasis intersect_subspaces(const SubspaceBasis& a, const SubspaceBasis& b);

bool same_span(const SubspaceBasis& a, const SubspaceBasis& b);

}  // namespace gmas

#endif  // GMAS_LINALG_HPP
