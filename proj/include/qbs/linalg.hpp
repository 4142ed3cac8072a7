#pragma once

#include <cstddef>
#include <vector>

#include "qbs/errors.hpp"

namespace qbs {

// Dense matrix over an exact field (Scalar or Rational). Row-major.
template <class F>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, F(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool isZero() const {
        for (auto& x : data_)
            if (!(x == F(0))) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == F(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }

    Matrix scaled(const F& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }

    std::size_t rank() const {
        Matrix m = *this;
        std::size_t rk = 0;
        for (std::size_t c = 0; c < cols_ && rk < rows_; ++c) {
            std::size_t piv = rk;
            while (piv < rows_ && m(piv, c) == F(0)) ++piv;
            if (piv == rows_) continue;
            m.swapRows(piv, rk);
            for (std::size_t r = rk + 1; r < rows_; ++r) {
                if (m(r, c) == F(0)) continue;
                F f = m(r, c) / m(rk, c);
                for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(rk, j);
            }
            ++rk;
        }
        return rk;
    }

    F det() const {
        if (rows_ != cols_) throw DomainError("det of non-square matrix");
        Matrix m = *this;
        F d(1);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t piv = c;
            while (piv < rows_ && m(piv, c) == F(0)) ++piv;
            if (piv == rows_) return F(0);
            if (piv != c) {
                m.swapRows(piv, c);
                d = -d;
            }
            d *= m(c, c);
            for (std::size_t r = c + 1; r < rows_; ++r) {
                if (m(r, c) == F(0)) continue;
                F f = m(r, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
            }
        }
        return d;
    }

    // Solves this * x = b; throws InternalInconsistency if singular or inconsistent.
    std::vector<F> solve(const std::vector<F>& b) const {
        Matrix m(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            m(i, cols_) = b[i];
        }
        std::vector<std::size_t> pivCol;
        std::size_t rk = 0;
        for (std::size_t c = 0; c < cols_ && rk < rows_; ++c) {
            std::size_t piv = rk;
            while (piv < rows_ && m(piv, c) == F(0)) ++piv;
            if (piv == rows_) continue;
            m.swapRows(piv, rk);
            F inv = F(1) / m(rk, c);
            for (std::size_t j = c; j <= cols_; ++j) m(rk, j) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rk || m(r, c) == F(0)) continue;
                F f = m(r, c);
                for (std::size_t j = c; j <= cols_; ++j) m(r, j) -= f * m(rk, j);
            }
            pivCol.push_back(c);
            ++rk;
        }
        for (std::size_t r = rk; r < rows_; ++r)
            if (!(m(r, cols_) == F(0)))
                throw InternalInconsistency("inconsistent linear system");
        std::vector<F> x(cols_, F(0));
        for (std::size_t r = 0; r < rk; ++r) x[pivCol[r]] = m(r, cols_);
        return x;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw DomainError("inverse of non-square matrix");
        Matrix m = *this, inv = identity(rows_);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t piv = c;
            while (piv < rows_ && m(piv, c) == F(0)) ++piv;
            if (piv == rows_) throw InternalInconsistency("singular matrix inversion");
            m.swapRows(piv, c);
            inv.swapRows(piv, c);
            F f = F(1) / m(c, c);
            for (std::size_t j = 0; j < cols_; ++j) {
                m(c, j) *= f;
                inv(c, j) *= f;
            }
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == c || m(r, c) == F(0)) continue;
                F g = m(r, c);
                for (std::size_t j = 0; j < cols_; ++j) {
                    m(r, j) -= g * m(c, j);
                    inv(r, j) -= g * inv(c, j);
                }
            }
        }
        return inv;
    }

    void swapRows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

  private:
    std::size_t rows_, cols_;
    std::vector<F> data_;
};

// Basis of the joint kernel / nullspace of m (solutions of m x = 0),
// returned as columns.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
    std::size_t rows = m.rows(), cols = m.cols(), rk = 0;
    std::vector<long> pivOfCol(cols, -1);
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t piv = rk;
        while (piv < rows && m(piv, c) == F(0)) ++piv;
        if (piv == rows) continue;
        m.swapRows(piv, rk);
        F inv = F(1) / m(rk, c);
        for (std::size_t j = c; j < cols; ++j) m(rk, j) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rk || m(r, c) == F(0)) continue;
            F f = m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(r, j) -= f * m(rk, j);
        }
        pivOfCol[c] = static_cast<long>(rk);
        ++rk;
    }
    std::vector<std::vector<F>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivOfCol[c] >= 0) continue;
        std::vector<F> v(cols, F(0));
        v[c] = F(1);
        for (std::size_t j = 0; j < cols; ++j)
            if (pivOfCol[j] >= 0) v[j] = -m(static_cast<std::size_t>(pivOfCol[j]), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qbs
