#ifndef EMTOR_LINALG_HPP
#define EMTOR_LINALG_HPP

// Exact rational linear algebra. Everything here is a pure function on
// immutable inputs; matrices with zero rows or columns are legal and act
// as zero maps.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "emtor/errors.hpp"

namespace emtor {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const Rat& x : e_)
            if (x != 0) return false;
        return true;
    }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix column(std::size_t j) const {
        RatMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) {
        return !(a == b);
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("RatMatrix product: shape mismatch");
        RatMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rat& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rat& bkj = b(k, j);
                    if (bkj == 0) continue;
                    c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
        os << m.rows_ << "x" << m.cols_ << " [";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? " " : "") << m(i, j);
        }
        return os << "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

inline RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0 && a.rows() == b.rows()) return a;
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

// Row-reduce in place; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> rref_inplace(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t j = col; j < m.cols(); ++j)
                std::swap(m(piv, j), m(row, j));
        const Rat inv = Rat(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            if (m(row, j) != 0) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const Rat f = m(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix work = m;
    return rref_inplace(work).size();
}

// Basis of the null space, returned as the columns of a matrix
// (cols x nullity).
inline RatMatrix kernel_basis(const RatMatrix& m) {
    RatMatrix work = m;
    const std::vector<std::size_t> pivots = rref_inplace(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RatMatrix k(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        const std::size_t fc = free_cols[f];
        k(fc, f) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            k(pivots[r], f) = -work(r, fc);
    }
    return k;
}

// dim ker(d_out) - rank(d_in) for a three-term complex
//   . --d_in--> C --d_out--> .
// The composite d_out * d_in must vanish exactly.
inline std::size_t homology_dim(const RatMatrix& d_in, const RatMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("homology_dim: shape mismatch");
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw CompositionNotZero("homology_dim: d_out * d_in != 0");
    const std::size_t mid = d_in.rows();
    return mid - rank(d_out) - rank(d_in);
}

// Solve A X = B for all columns of B; empty result if any column is
// outside the column space of A.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch");
    RatMatrix aug = hstack(a, b);
    const std::vector<std::size_t> pivots = rref_inplace(aug);
    for (std::size_t p : pivots)
        if (p >= a.cols()) return std::nullopt;
    RatMatrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(pivots[r], j) = aug(r, a.cols() + j);
    return x;
}

// ---- subspace helpers (a subspace of Q^n is the column span of a matrix) --

inline std::size_t space_dim(const RatMatrix& s) { return rank(s); }

// {x : M x in col(S)}, returned as a spanning matrix.
inline RatMatrix preimage(const RatMatrix& m, const RatMatrix& s) {
    if (m.rows() != s.rows())
        throw std::invalid_argument("preimage: row mismatch");
    RatMatrix neg = s;
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    const RatMatrix k = kernel_basis(hstack(m, neg));
    RatMatrix x(m.cols(), k.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) x(i, j) = k(i, j);
    return x;
}

inline RatMatrix intersect_spaces(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("intersect_spaces: row mismatch");
    RatMatrix neg = b;
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    const RatMatrix k = kernel_basis(hstack(a, neg));
    RatMatrix u(a.cols(), k.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) u(i, j) = k(i, j);
    return a * u;
}

} // namespace emtor

#endif
