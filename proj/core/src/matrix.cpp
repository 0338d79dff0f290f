#include "iitaka/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace iitaka {

namespace {

// Row-wise denominator clearing: integer matrix with the same rank and
// row-scaled minors. Returns the per-row multipliers.
std::vector<std::vector<Integer>> to_integer_rows(const RationalMatrix& m,
                                                  std::vector<Integer>& multipliers) {
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    multipliers.assign(m.rows(), Integer(1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l(1);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer d = m.at(i, j).den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        multipliers[i] = l;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& r = m.at(i, j);
            out[i][j] = r.num() * (l / r.den());
        }
    }
    return out;
}

// Fraction-free Bareiss elimination in place; returns the rank. If `det_sign`
// is non-null the row swaps' sign is accumulated there and the matrix must be
// square; the determinant of the integer matrix is then
// sign * a[r-1][r-1] when full rank, 0 otherwise.
std::size_t bareiss(std::vector<std::vector<Integer>>& a, int* det_sign) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    int sign = 1;
    Integer prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            std::swap(a[piv], a[rank]);
            sign = -sign;
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Integer t = a[i][j] * a[rank][col] - a[i][col] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    if (det_sign) *det_sign = sign;
    return rank;
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols)
        throw std::invalid_argument("RationalMatrix: entries length != rows*cols");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    RationalMatrix s(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = at(i, cols[j]);
    return s;
}

std::vector<Rational> RationalMatrix::row(std::size_t i) const {
    return {e_.begin() + static_cast<long>(i * cols_),
            e_.begin() + static_cast<long>((i + 1) * cols_)};
}

void RationalMatrix::set_row(std::size_t i, const std::vector<Rational>& r) {
    if (r.size() != cols_) throw std::invalid_argument("set_row: width mismatch");
    std::copy(r.begin(), r.end(), e_.begin() + static_cast<long>(i * cols_));
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    RationalMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                p.at(i, j) += at(i, k) * o.at(k, j);
        }
    return p;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    RationalMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) d.e_[i] = e_[i] - o.e_[i];
    return d;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::ostream& operator<<(std::ostream& os, const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m.at(i, j);
        os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
    }
    return os;
}

std::size_t matrix_rank(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::vector<Integer> mult;
    auto a = to_integer_rows(m, mult);
    return bareiss(a, nullptr);
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square input required");
    if (m.rows() == 0) return Rational(1);
    std::vector<Integer> mult;
    auto a = to_integer_rows(m, mult);
    int sign = 1;
    std::size_t rank = bareiss(a, &sign);
    if (rank < m.rows()) return Rational(0);
    Integer den(1);
    for (const auto& f : mult) den *= f;
    Integer num = a[m.rows() - 1][m.rows() - 1];
    if (sign < 0) num = -num;
    return Rational(num, den);
}

std::vector<Rational> maximal_minors(const RationalMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    if (r > c) throw std::invalid_argument("maximal_minors: rows > cols");
    std::vector<Rational> out;
    std::vector<std::size_t> sel(r);
    std::iota(sel.begin(), sel.end(), 0);
    while (true) {
        out.push_back(determinant(m.select_columns(sel)));
        // next lexicographic subset
        std::size_t i = r;
        while (i > 0 && sel[i - 1] == c - r + i - 1) --i;
        if (i == 0) break;
        ++sel[i - 1];
        for (std::size_t j = i; j < r; ++j) sel[j] = sel[j - 1] + 1;
    }
    return out;
}

namespace {

// Reduced row echelon form over Q (plain exact elimination); returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t piv = prow;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != prow)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(prow, j));
        Rational inv = m.at(prow, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(prow, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow || m.at(i, col).is_zero()) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(prow, j);
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

}  // namespace

RationalMatrix kernel_basis(const RationalMatrix& m) {
    RationalMatrix r = m;
    std::vector<std::size_t> piv = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RationalMatrix k(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k.at(free_cols[f], f) = Rational(1);
        for (std::size_t p = 0; p < piv.size(); ++p)
            k.at(piv[p], f) = -r.at(p, free_cols[f]);
    }
    return k;
}

std::vector<std::size_t> pivot_columns(const RationalMatrix& m) {
    RationalMatrix r = m;
    return rref(r);
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: square input required");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    std::vector<std::size_t> piv = rref(aug);
    if (piv.size() != n || piv.back() != n - 1)
        throw std::invalid_argument("inverse: singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::vector<Rational> solve_linear(const RationalMatrix& a, const std::vector<Rational>& b,
                                   bool* ok) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: rhs length mismatch");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv = rref(aug);
    std::vector<Rational> x(a.cols());
    *ok = true;
    for (std::size_t p = 0; p < piv.size(); ++p) {
        if (piv[p] == a.cols()) {  // pivot in the rhs column: inconsistent
            *ok = false;
            return {};
        }
        x[piv[p]] = aug.at(p, a.cols());
    }
    return x;
}

bool row_space_contains(const RationalMatrix& of, const RationalMatrix& sub) {
    if (of.cols() != sub.cols()) throw std::invalid_argument("row_space_contains: width mismatch");
    std::size_t base = matrix_rank(of);
    RationalMatrix stacked(of.rows() + sub.rows(), of.cols());
    for (std::size_t i = 0; i < of.rows(); ++i) stacked.set_row(i, of.row(i));
    for (std::size_t i = 0; i < sub.rows(); ++i) stacked.set_row(of.rows() + i, sub.row(i));
    return matrix_rank(stacked) == base;
}

bool row_spaces_equal(const RationalMatrix& a, const RationalMatrix& b) {
    return row_space_contains(a, b) && row_space_contains(b, a);
}

}  // namespace iitaka
