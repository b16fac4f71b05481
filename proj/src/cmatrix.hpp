#ifndef QOSC_CMATRIX_HPP
#define QOSC_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qosc {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Dimensions here stay in the low hundreds,
// so naive O(n^3) products are fine and keep the arithmetic transparent.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);
    static Matrix diagonal(std::span<const cplx> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx scalar);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    Matrix transpose() const;
    Matrix adjoint() const;
    Matrix pow(long m) const;  // m >= 0, square matrices

    std::vector<cplx> apply(std::span<const cplx> v) const;

    double max_abs() const;
    // max |entry| over the half-open index block [r0,r1) x [c0,c1)
    double max_abs_block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

}  // namespace qosc

#endif
