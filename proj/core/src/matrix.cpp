#include "borel/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "borel/error.hpp"

namespace borel {

Scalar parse_scalar(const std::string& text) {
  Scalar value;
  if (text.empty() || value.set_str(text, 10) != 0) {
    fail(ErrorCode::invalid_argument, "not a rational number: '" + text + "'");
  }
  if (value.get_den() == 0) fail(ErrorCode::invalid_argument, "zero denominator: '" + text + "'");
  value.canonicalize();
  return value;
}

std::string format_scalar(const Scalar& value) { return value.get_str(10); }

Vector zero_vector(std::size_t n) { return Vector(n); }

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorCode::invalid_argument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  require(v.size() == rows_, ErrorCode::invalid_argument, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  require(cols_ == other.rows_, ErrorCode::invalid_argument, "matrix product shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Scalar& b = other(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  require(cols_ == v.size(), ErrorCode::invalid_argument, "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0 && sgn((*this)(i, k)) != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix out = *this;
  out += other;
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix out = *this;
  out += -other;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::invalid_argument,
          "matrix sum shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

void Matrix::set_block(std::size_t row, std::size_t col, const Matrix& block) {
  require(row + block.rows_ <= rows_ && col + block.cols_ <= cols_, ErrorCode::invalid_argument,
          "block out of range");
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j) (*this)(row + i, col + j) = block(i, j);
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(row + i, col + j);
  return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  require(a.rows_ == b.rows_, ErrorCode::invalid_argument, "hstack row mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.cols_, ErrorCode::invalid_argument, "vstack column mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix out = m;
  out *= s;
  return out;
}

std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clearing denominators row by row leaves the rank unchanged.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }

  mpz_class previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = a[r][c];
    ++r;
  }
  return r;
}

Echelon reduced_row_echelon(const Matrix& m) {
  Echelon e{m, {}};
  Matrix& a = e.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    const Scalar inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Scalar factor = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= factor * a(r, j);
    }
    e.pivot_columns.push_back(c);
    ++r;
  }
  return e;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) v[e.pivot_columns[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> image_basis(const Matrix& m) {
  const Echelon e = reduced_row_echelon(m);
  std::vector<Vector> basis;
  for (auto c : e.pivot_columns) basis.push_back(m.column(c));
  return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::invalid_argument, "solve shape mismatch");
  const Echelon e = reduced_row_echelon(Matrix::hstack(a, b));
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
    const std::size_t c = e.pivot_columns[i];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = e.reduced(i, a.cols() + j);
  }
  return x;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  auto x = solve(a, Matrix::from_columns({b}, b.size()));
  if (!x) return std::nullopt;
  return x->column(0);
}

Matrix inverse(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_argument, "inverse of non-square matrix");
  auto x = solve(m, Matrix::identity(m.rows()));
  require(x.has_value() && rank(m) == m.rows(), ErrorCode::invalid_argument, "singular matrix");
  return *x;
}

Frame::Frame(std::size_t dim, const std::vector<std::vector<Vector>>& blocks) : dim_(dim) {
  std::vector<Vector> candidates;
  std::vector<std::size_t> owner;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (const auto& v : blocks[b]) {
      require(v.size() == dim, ErrorCode::invalid_argument, "frame vector length mismatch");
      candidates.push_back(v);
      owner.push_back(b);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    candidates.push_back(unit_vector(dim, i));
    owner.push_back(blocks.size());
  }
  chosen_.assign(blocks.size() + 1, {});
  const Echelon e = reduced_row_echelon(Matrix::from_columns(candidates, dim));
  std::vector<Vector> basis;
  for (auto c : e.pivot_columns) chosen_[owner[c]].push_back(candidates[c]);
  offsets_.assign(chosen_.size() + 1, 0);
  for (std::size_t b = 0; b < chosen_.size(); ++b) {
    offsets_[b + 1] = offsets_[b] + chosen_[b].size();
    for (const auto& v : chosen_[b]) basis.push_back(v);
  }
  inverse_ = dim == 0 ? Matrix() : inverse(Matrix::from_columns(basis, dim));
}

Vector Frame::coordinates(const Vector& v) const {
  if (dim_ == 0) return {};
  return inverse_ * v;
}

Vector Frame::block_coordinates(const Vector& v, std::size_t block) const {
  const Vector all = coordinates(v);
  return Vector(all.begin() + static_cast<std::ptrdiff_t>(offsets_[block]),
                all.begin() + static_cast<std::ptrdiff_t>(offsets_[block + 1]));
}

std::string to_string(const Matrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_scalar(m(i, j));
  }
  out << "]";
  return out.str();
}

}  // namespace borel
