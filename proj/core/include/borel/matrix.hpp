#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace borel {

/// Exact rational scalar; GMP keeps every value in lowest terms with a positive denominator.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

Scalar parse_scalar(const std::string& text);
std::string format_scalar(const Scalar& value);

Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v);
Vector unit_vector(std::size_t n, std::size_t i);

/// Dense row-major matrix. A matrix of shape (m, n) maps column vectors of length n to length m.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);
  Vector row(std::size_t i) const;

  bool is_zero() const;
  Matrix transpose() const;

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);
  Matrix operator-() const;

  bool operator==(const Matrix& other) const;

  /// Places `block` with its top-left corner at (row, col).
  void set_block(std::size_t row, std::size_t col, const Matrix& block);
  Matrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator*(const Scalar& s, const Matrix& m);

/// Rank by fraction-free (Bareiss) elimination on the row-scaled integer matrix.
std::size_t rank(const Matrix& m);

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form; pivots are taken as the first nonzero entry, scanning row-major.
Echelon reduced_row_echelon(const Matrix& m);

/// Null space basis from the reduced echelon form, one vector per free column in increasing order.
std::vector<Vector> kernel_basis(const Matrix& m);

/// The pivot columns of `m` (the lexicographically first independent subset of its columns).
std::vector<Vector> image_basis(const Matrix& m);

std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

Matrix inverse(const Matrix& m);

/// A basis of k^dim assembled greedily from ordered blocks of candidate vectors, completed by
/// standard basis vectors. Vectors dependent on earlier choices are skipped.
///
/// With blocks (boundaries, cycles) this is the usual recipe for homology representatives:
/// the chosen members of block 1 form a basis of cycles modulo boundaries.
class Frame {
 public:
  Frame() = default;
  Frame(std::size_t dim, const std::vector<std::vector<Vector>>& blocks);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t block_count() const noexcept { return chosen_.size(); }
  /// Index `block_count() - 1` is the standard-vector completion.
  const std::vector<Vector>& chosen(std::size_t block) const { return chosen_[block]; }
  std::size_t chosen_size(std::size_t block) const { return chosen_[block].size(); }

  /// Coordinates of v in the full chosen basis (blocks concatenated).
  Vector coordinates(const Vector& v) const;
  Vector block_coordinates(const Vector& v, std::size_t block) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Vector>> chosen_;
  std::vector<std::size_t> offsets_;
  Matrix inverse_;
};

std::string to_string(const Matrix& m);

}  // namespace borel
