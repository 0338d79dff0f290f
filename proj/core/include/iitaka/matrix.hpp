#pragma once

#include <cstddef>
#include <vector>

#include "iitaka/rational.hpp"

namespace iitaka {

/// Dense matrix over Q, row-major. Rank and minors run fraction-free
/// (Bareiss over the integers after clearing denominators row-wise).
class RationalMatrix {
   public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    RationalMatrix select_columns(const std::vector<std::size_t>& cols) const;
    std::vector<Rational> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Rational>& r);

    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    bool operator==(const RationalMatrix& o) const = default;
    bool is_zero() const;

    friend std::ostream& operator<<(std::ostream& os, const RationalMatrix& m);

   private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

/// Exact rank via fraction-free elimination.
std::size_t matrix_rank(const RationalMatrix& m);

/// Exact determinant (square input).
Rational determinant(const RationalMatrix& m);

/// All rows x rows minors, lexicographic order on column subsets.
/// Requires rows <= cols.
std::vector<Rational> maximal_minors(const RationalMatrix& m);

/// Basis of the right null space {v : m v = 0}; columns of the result.
RationalMatrix kernel_basis(const RationalMatrix& m);

/// Column indices of a maximal independent column set (pivot columns of RREF).
std::vector<std::size_t> pivot_columns(const RationalMatrix& m);

/// Inverse of a square nonsingular matrix; throws std::invalid_argument if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Solve a x = b for one right-hand side; empty result if inconsistent.
/// `a` need not be square; returns one solution of minimal support.
std::vector<Rational> solve_linear(const RationalMatrix& a, const std::vector<Rational>& b,
                                   bool* ok);

/// True if every row of `sub` lies in the row space of `of`.
bool row_space_contains(const RationalMatrix& of, const RationalMatrix& sub);

/// True if the two matrices have identical row spaces.
bool row_spaces_equal(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace iitaka
