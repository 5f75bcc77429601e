#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pschur/errors.hpp"
#include "pschur/scalar.hpp"

namespace pschur {

/// Dense row-major matrix over either scalar backend. Desk scale only.
template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, scalar_traits<S>::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw RangeError("matrix product shape mismatch");
        Matrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const S& a = (*this)(i, k);
                if (scalar_traits<S>::is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
        return out;
    }

    Matrix operator-() const {
        Matrix out = *this;
        for (auto& v : out.data_) v = -v;
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    /// Entrywise conjugate.
    Matrix conjugate() const {
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = conj((*this)(i, j));
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!scalar_traits<S>::is_zero(v)) return false;
        return true;
    }

    /// Copies `block` into position with top-left corner (i0, j0).
    void place(std::size_t i0, std::size_t j0, const Matrix& block) {
        if (i0 + block.rows_ > rows_ || j0 + block.cols_ > cols_)
            throw RangeError("block placement out of bounds");
        for (std::size_t i = 0; i < block.rows_; ++i)
            for (std::size_t j = 0; j < block.cols_; ++j) (*this)(i0 + i, j0 + j) = block(i, j);
    }

    Matrix submatrix(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) throw RangeError("submatrix out of bounds");
        Matrix out(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
        return out;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw RangeError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<S> data_;
};

using ExactMatrix = Matrix<GaussianRational>;
using FloatMatrix = Matrix<cdouble>;

template <class S>
double max_abs_entry(const Matrix<S>& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cdouble z;
            if constexpr (scalar_traits<S>::is_exact)
                z = m(i, j).to_cdouble();
            else
                z = m(i, j);
            best = std::max(best, std::abs(z));
        }
    return best;
}

/// Complex Hermitian matrix. Exact backend: conj-symmetry must hold bit-exactly.
/// Float backend: NaN/Inf rejected, tiny asymmetry folded away by construction.
template <class S>
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(Matrix<S> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw InvariantViolation("Hermitian matrix must be square");
        if constexpr (scalar_traits<S>::is_exact) {
            for (std::size_t i = 0; i < m_.rows(); ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    if (m_(i, j) != conj(m_(j, i)))
                        throw InvariantViolation("matrix is not Hermitian");
        } else {
            double scale = 0.0, asym = 0.0;
            for (std::size_t i = 0; i < m_.rows(); ++i)
                for (std::size_t j = 0; j < m_.cols(); ++j) {
                    const cdouble& z = m_(i, j);
                    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                        throw InvariantViolation("NaN/Inf entry in float matrix");
                    scale = std::max(scale, std::abs(z));
                }
            for (std::size_t i = 0; i < m_.rows(); ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    asym = std::max(asym, std::abs(m_(i, j) - std::conj(m_(j, i))));
            if (asym > 1e-10 * std::max(1.0, scale))
                throw InvariantViolation("matrix is not Hermitian (asymmetry above tolerance)");
            for (std::size_t i = 0; i < m_.rows(); ++i) {
                m_(i, i) = cdouble(m_(i, i).real(), 0.0);
                for (std::size_t j = 0; j < i; ++j) {
                    cdouble v = (m_(i, j) + std::conj(m_(j, i))) / 2.0;
                    m_(i, j) = v;
                    m_(j, i) = std::conj(v);
                }
            }
        }
    }

    std::size_t size() const { return m_.rows(); }
    const Matrix<S>& matrix() const { return m_; }
    const S& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix<S> m_;
};

using ExactHermitian = HermitianMatrix<GaussianRational>;
using FloatHermitian = HermitianMatrix<cdouble>;

template <class S>
FloatMatrix to_float(const Matrix<S>& m) {
    FloatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (scalar_traits<S>::is_exact)
                out(i, j) = m(i, j).to_cdouble();
            else
                out(i, j) = m(i, j);
        }
    return out;
}

} // namespace pschur
