#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "cframe/errors.hpp"
#include "cframe/scalar.hpp"

namespace cframe {

// Dense vector over double or std::complex<double>.
template <ScalarType T>
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n) : data_(n, T{}) {}
    Vector(std::initializer_list<T> xs) : data_(xs) {}
    explicit Vector(std::vector<T> xs) : data_(std::move(xs)) {}

    std::size_t dim() const { return data_.size(); }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    const std::vector<T>& entries() const { return data_; }

    Vector& operator+=(const Vector& o) {
        assert(dim() == o.dim());
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        assert(dim() == o.dim());
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Vector& operator*=(T s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(T s, Vector a) { return a *= s; }

    double norm2() const {
        double acc = 0.0;
        for (const auto& x : data_) acc += abs2(x);
        return acc;
    }
    double norm() const { return std::sqrt(norm2()); }

private:
    std::vector<T> data_;
};

// <u, v> linear in the first argument, conjugate-linear in the second.
template <ScalarType T>
T inner(const Vector<T>& u, const Vector<T>& v) {
    assert(u.dim() == v.dim());
    T acc{};
    for (std::size_t i = 0; i < u.dim(); ++i) acc += u[i] * conj_s(v[i]);
    return acc;
}

// Dense row-major matrix.
template <ScalarType T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T{}) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            assert(row.size() == cols_);
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(T s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(T s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
        assert(a.cols_ == v.dim());
        Vector<T> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T acc{};
            for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    double max_norm() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::sqrt(abs2(x)));
        return m;
    }
    double fro_norm() const {
        double acc = 0.0;
        for (const auto& x : data_) acc += abs2(x);
        return std::sqrt(acc);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <ScalarType T>
Matrix<T> adjoint(const Matrix<T>& m) {
    Matrix<T> out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = conj_s(m(i, j));
    return out;
}

template <ScalarType T>
Matrix<T> hermitian_part(const Matrix<T>& m) {
    assert(m.square());
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = (m(i, j) + conj_s(m(j, i))) * T{0.5};
    return out;
}

template <ScalarType T>
Matrix<T> skew_part(const Matrix<T>& m) {
    assert(m.square());
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = (m(i, j) - conj_s(m(j, i))) * T{0.5};
    return out;
}

// acc += w * u * v^*
template <ScalarType T>
void add_scaled_outer(Matrix<T>& acc, double w, const Vector<T>& u, const Vector<T>& v) {
    assert(acc.rows() == u.dim() && acc.cols() == v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) acc(i, j) += w * (u[i] * conj_s(v[j]));
}

template <ScalarType T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::sqrt(abs2(a(i, j) - b(i, j))));
    return m;
}

template <ScalarType T>
double commutator_norm(const Matrix<T>& a, const Matrix<T>& b) {
    return max_abs_diff(a * b, b * a);
}

} // namespace cframe
