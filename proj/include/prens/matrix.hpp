// Copyright 2026 The prens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRENS_MATRIX_HPP
#define PRENS_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "prens/errors.hpp"

namespace prens {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

namespace detail {

/// Dense row-major matrix over `T` (double or Complex). Square-bracket-free
/// access through operator()(i, j); shapes are validated eagerly so the
/// numerical kernels can assume conformability.
template <typename T>
class Dense {
public:
    Dense() = default;

    Dense(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw InvalidInput("matrix dimensions must be positive");
    }

    Dense(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        if (rows_ == 0) throw InvalidInput("matrix dimensions must be positive");
        cols_ = init.begin()->size();
        if (cols_ == 0) throw InvalidInput("matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw InvalidInput("ragged initializer for matrix");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Dense identity(std::size_t n) {
        Dense m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    Dense& operator+=(const Dense& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Dense& operator-=(const Dense& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Dense& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Dense operator+(Dense a, const Dense& b) { return a += b; }
    friend Dense operator-(Dense a, const Dense& b) { return a -= b; }
    friend Dense operator*(Dense a, T s) { return a *= s; }
    friend Dense operator*(T s, Dense a) { return a *= s; }
    friend Dense operator-(const Dense& a) {
        Dense r = a;
        return r *= T{-1};
    }

    friend Dense operator*(const Dense& a, const Dense& b) {
        if (a.cols_ != b.rows_)
            throw InvalidInput("matrix product shape mismatch");
        Dense r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                const T* brow = &b.data_[k * b.cols_];
                T* rrow = &r.data_[i * r.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) rrow[j] += aik * brow[j];
            }
        }
        return r;
    }

    friend std::vector<T> operator*(const Dense& a, const std::vector<T>& x) {
        if (a.cols_ != x.size())
            throw InvalidInput("matrix-vector shape mismatch");
        std::vector<T> y(a.rows_, T{});
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T s{};
            const T* arow = &a.data_[i * a.cols_];
            for (std::size_t j = 0; j < a.cols_; ++j) s += arow[j] * x[j];
            y[i] = s;
        }
        return y;
    }

    Dense transpose() const {
        Dense r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        if (!square()) throw InvalidInput("trace of non-square matrix");
        T s{};
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto& v : data_) s += abs_sq(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!is_finite_value(v)) return false;
        return true;
    }

private:
    static bool is_finite_value(double v) { return std::isfinite(v); }
    static bool is_finite_value(const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }

    static double abs_sq(double v) { return v * v; }
    static double abs_sq(const Complex& v) { return std::norm(v); }

    void require_same_shape(const Dense& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw InvalidInput("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

} // namespace detail

using RealMatrix = detail::Dense<double>;
using ComplexMatrix = detail::Dense<Complex>;

/// Hermitian conjugate.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

/// Entrywise complex conjugate.
inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = std::conj(a(i, j));
    return r;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Complex(a(i, j), 0.0);
    return r;
}

/// Kronecker product a ⊗ b.
template <typename T>
detail::Dense<T> kron(const detail::Dense<T>& a, const detail::Dense<T>& b) {
    detail::Dense<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const T v = a(ia, ja);
            if (v == T{}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
        }
    return r;
}

/// Real square matrix constrained to be symmetric within a relative
/// tolerance of 1e-12 at construction; storage is the exactly symmetrized
/// part so downstream kernels never see asymmetry.
class RealSymmetricMatrix {
public:
    static constexpr double kSymmetryTol = 1e-12;

    explicit RealSymmetricMatrix(RealMatrix m) : mat_(std::move(m)) {
        if (!mat_.square()) throw InvalidInput("symmetric matrix must be square");
        if (!mat_.all_finite()) throw InvalidInput("symmetric matrix has non-finite entries");
        const double scale = mat_.max_abs();
        for (std::size_t i = 0; i < mat_.rows(); ++i)
            for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
                if (std::abs(mat_(i, j) - mat_(j, i)) > kSymmetryTol * (scale > 0 ? scale : 1.0))
                    throw InvalidInput("matrix is not symmetric within tolerance");
                const double avg = 0.5 * (mat_(i, j) + mat_(j, i));
                mat_(i, j) = avg;
                mat_(j, i) = avg;
            }
    }

    RealSymmetricMatrix(std::initializer_list<std::initializer_list<double>> init)
        : RealSymmetricMatrix(RealMatrix(init)) {}

    static RealSymmetricMatrix identity(std::size_t n) {
        return RealSymmetricMatrix(RealMatrix::identity(n));
    }

    static RealSymmetricMatrix zero(std::size_t n) {
        return RealSymmetricMatrix(RealMatrix(n, n));
    }

    static RealSymmetricMatrix diagonal(const RealVector& d) {
        RealMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return RealSymmetricMatrix(std::move(m));
    }

    std::size_t dim() const { return mat_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    const RealMatrix& mat() const { return mat_; }

private:
    RealMatrix mat_;
};

inline double frobenius_distance(const RealMatrix& a, const RealMatrix& b) {
    return (a - b).frobenius_norm();
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

inline double norm2(const RealVector& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double norm2(const ComplexVector& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace prens

#endif // PRENS_MATRIX_HPP
