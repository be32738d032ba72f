#pragma once

#include "trispline/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace trispline {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix transpose() const;
    /// Columns [first, first + count).
    RationalMatrix column_block(std::size_t first, std::size_t count) const;
    /// [this | right]
    RationalMatrix hstack(const RationalMatrix& right) const;

    std::vector<Rational> column(std::size_t c) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix matrix;
    std::vector<std::size_t> pivots;  // strictly increasing column indices
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry at or below
/// the current row.
RrefResult rref(const RationalMatrix& m);

/// Throws DimensionMismatch.
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
std::vector<Rational> multiply(const RationalMatrix& a, const std::vector<Rational>& v);

std::size_t rank(const RationalMatrix& m);

/// cols - rank independent kernel vectors, one per free column of the RREF,
/// ordered by free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

}  // namespace trispline
