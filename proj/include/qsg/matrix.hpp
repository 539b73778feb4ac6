#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsg/rational.hpp"

namespace qsg {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& entries() const noexcept { return data_; }

    std::vector<T> row(std::size_t i) const;
    std::vector<T> column(std::size_t j) const;
    std::vector<std::vector<T>> to_rows() const;

    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const T& factor);

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const T& s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, const T& s) { return lhs *= s; }
    friend Matrix operator*(const T& s, Matrix rhs) { return rhs *= s; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs) { return multiply(lhs, rhs); }
    friend std::vector<T> operator*(const Matrix& lhs, const std::vector<T>& v) { return apply(lhs, v); }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

   private:
    static Matrix multiply(const Matrix& lhs, const Matrix& rhs);
    static std::vector<T> apply(const Matrix& m, const std::vector<T>& v);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows);
RationalMatrix to_rational(const IntMatrix& m);
/// Throws std::domain_error naming the first non-integral entry.
IntMatrix to_integral(const RationalMatrix& m);
bool is_integral(const RationalMatrix& m);

Rational determinant(const RationalMatrix& m);
Integer determinant(const IntMatrix& m);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

std::string to_string(const IntMatrix& m);

// ---------------------------------------------------------------------------

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length does not match column count");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::to_rows() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <class T>
Matrix<T> Matrix<T>::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
void Matrix<T>::add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

template <class T>
void Matrix<T>::add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

template <class T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

template <class T>
Matrix<T> Matrix<T>::multiply(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch in *");
    Matrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const T& a = lhs(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

template <class T>
std::vector<T> Matrix<T>::apply(const Matrix& m, const std::vector<T>& v) {
    if (m.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(m.rows_);
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace qsg
