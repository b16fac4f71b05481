#include "cmatrix.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qosc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

Matrix Matrix::pow(long m) const {
    if (rows_ != cols_) throw std::logic_error("Matrix::pow: square matrix required");
    if (m < 0) throw std::logic_error("Matrix::pow: nonnegative power required");
    Matrix result = identity(rows_);
    for (long k = 0; k < m; ++k) result = result * (*this);
    return result;
}

std::vector<cplx> Matrix::apply(std::span<const cplx> v) const {
    assert(v.size() == cols_);
    std::vector<cplx> out(rows_, cplx(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double Matrix::max_abs() const { return max_abs_block(0, rows_, 0, cols_); }

double Matrix::max_abs_block(std::size_t r0, std::size_t r1, std::size_t c0,
                             std::size_t c1) const {
    double m = 0.0;
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

}  // namespace qosc
