#pragma once

#include <array>
#include <cstddef>

#include "viscoplast/errors.hpp"

namespace viscoplast {

/// Dense square matrix of dimension d in {1,2,3}, row-major, fixed capacity 3x3.
/// Used for velocity gradients and rate-of-strain tensors.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim) {
        if (dim < 1 || dim > 3)
            throw Error("Matrix dimension must be 1, 2 or 3");
        entries_.fill(0.0);
    }

    int dim() const { return dim_; }

    double& operator()(int i, int j) { return entries_[static_cast<size_t>(i) * 3 + j]; }
    double operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * 3 + j]; }

    double frobenius_sq() const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                s += (*this)(i, j) * (*this)(i, j);
        return s;
    }

    double trace() const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i)
            s += (*this)(i, i);
        return s;
    }

    Matrix& operator+=(const Matrix& other) {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                (*this)(i, j) += other(i, j);
        return *this;
    }

    Matrix& operator*=(double c) {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                (*this)(i, j) *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator*(double c, Matrix a) { return a *= c; }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a.dim_);
        for (int i = 0; i < a.dim_; ++i)
            for (int j = 0; j < a.dim_; ++j)
                r(i, j) = a(i, j) - b(i, j);
        return r;
    }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

  private:
    int dim_ = 3;
    std::array<double, 9> entries_{};
};

/// Symmetric d x d tensor (Hilbert-Schmidt/Frobenius structure). The symmetric
/// invariant is enforced at construction from a general matrix.
class SymTensor : public Matrix {
  public:
    SymTensor() = default;
    explicit SymTensor(int dim) : Matrix(dim) {}

    /// Symmetric part (A + A^T)/2 of a general matrix.
    static SymTensor symmetric_part(const Matrix& a) {
        SymTensor s(a.dim());
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j)
                s(i, j) = 0.5 * (a(i, j) + a(j, i));
        return s;
    }

    static SymTensor identity(int dim) {
        SymTensor s(dim);
        for (int i = 0; i < dim; ++i)
            s(i, i) = 1.0;
        return s;
    }

    static SymTensor diag(double d0, double d1, double d2) {
        SymTensor s(3);
        s(0, 0) = d0;
        s(1, 1) = d1;
        s(2, 2) = d2;
        return s;
    }

    /// Set the (i,j) and (j,i) entries together.
    void set(int i, int j, double v) {
        (*this)(i, j) = v;
        (*this)(j, i) = v;
    }

    /// Double contraction A : B.
    double dot(const SymTensor& other) const {
        double s = 0.0;
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                s += (*this)(i, j) * other(i, j);
        return s;
    }
};

/// Fourth-order coefficient tensor a_ij^kl, dimension d in {1,2,3}.
/// Indexing: (i,j,k,l) with i the equation row, j the unknown component,
/// (k,l) the second-derivative pair, as in [div S]_i = a_ij^kl d_k d_l u_j.
class CoeffTensor {
  public:
    explicit CoeffTensor(int dim) : dim_(dim) { entries_.fill(0.0); }

    int dim() const { return dim_; }

    double& operator()(int i, int j, int k, int l) {
        return entries_[static_cast<size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
    }
    double operator()(int i, int j, int k, int l) const {
        return entries_[static_cast<size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
    }

  private:
    int dim_;
    std::array<double, 81> entries_;
};

} // namespace viscoplast
