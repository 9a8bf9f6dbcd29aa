#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "kahler/scalar.hpp"

namespace kahler {

/// Dense square matrix acting on coefficient vectors. Storage is row-major.
/// Products skip zero entries, which matters because almost every operator
/// in this library is very sparse in the blade basis.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t k = 0; k < dim; ++k) m(k, k) = S(1);
    return m;
  }

  std::size_t dim() const { return dim_; }

  S& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const S& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<const S> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }
  std::span<const S> flat() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!is_exact_zero(o.data_[k])) data_[k] += o.data_[k];
    }
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!is_exact_zero(o.data_[k])) data_[k] -= o.data_[k];
    }
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) {
      if (!is_exact_zero(v)) v *= s;
    }
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= S(-1); }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check(b);
    const std::size_t n = a.dim_;
    Matrix c(n);
    // Sparse view of b's rows, built once per product.
    std::vector<std::vector<std::size_t>> nz(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_exact_zero(b(k, j))) nz[k].push_back(j);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a(i, k);
        if (is_exact_zero(aik)) continue;
        for (std::size_t j : nz[k]) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  std::vector<S> apply(std::span<const S> v) const {
    if (v.size() != dim_) throw std::invalid_argument("matrix/vector dimension mismatch");
    std::vector<S> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        const S& a = (*this)(i, j);
        if (is_exact_zero(a) || is_exact_zero(v[j])) continue;
        out[i] += a * v[j];
      }
    }
    return out;
  }

  /// Conjugate transpose; the adjoint for the sesquilinear blade inner product.
  Matrix adjoint() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = ScalarTraits<S>::conj((*this)(i, j));
    }
    return t;
  }

  Matrix transpose() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  /// Entrywise complex conjugate.
  Matrix conj() const {
    Matrix t(*this);
    for (auto& v : t.data_) v = ScalarTraits<S>::conj(v);
    return t;
  }

  double max_norm() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, ScalarTraits<S>::magnitude(v));
    return m;
  }

  /// The entry of largest magnitude, used to report exact residuals.
  S max_entry() const {
    S best{};
    double m = -1.0;
    for (const auto& v : data_) {
      double a = ScalarTraits<S>::magnitude(v);
      if (a > m) {
        m = a;
        best = v;
      }
    }
    return best;
  }

  bool is_zero(double tol = kDefaultTolerance) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const S& v) { return ScalarTraits<S>::is_zero(v, tol); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  static bool is_exact_zero(const S& v) { return v == S{}; }

  void check(const Matrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<S> data_;
};

}  // namespace kahler
