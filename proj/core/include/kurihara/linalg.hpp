#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace kurihara::linalg {

/// Dense matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  /// Columns of the result are the given vectors.
  static QMatrix from_columns(const std::vector<std::vector<mpq_class>>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<mpq_class> column(std::size_t j) const;
  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix scaled(const mpq_class& s) const;
  bool operator==(const QMatrix& o) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<mpq_class>> kernel(const QMatrix& m);

/// Clears denominators and divides by the content; the first nonzero entry
/// keeps its sign.
std::vector<mpz_class> primitive_integer(const std::vector<mpq_class>& v);

}  // namespace kurihara::linalg
