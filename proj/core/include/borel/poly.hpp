#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "borel/matrix.hpp"

namespace borel {

using Exponent = std::vector<int>;

int weighted_degree(const Exponent& e, const std::vector<int>& weights);
Exponent add_exponents(const Exponent& a, const Exponent& b);

/// Sparse polynomial with rational coefficients over a fixed number of commuting variables.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Scalar& c);
  static Poly monomial(Exponent e, const Scalar& c = 1);
  static Poly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Exponent& e) const;
  /// Constant term.
  Scalar constant_term() const;

  void add_term(const Exponent& e, const Scalar& c);

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly scaled(const Scalar& c) const;
  Poly pow(int n) const;

  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

  /// Common weighted degree of all terms; nullopt for the zero polynomial.
  /// Throws InvariantViolation if the polynomial is not homogeneous.
  std::optional<int> weighted_degree(const std::vector<int>& weights) const;

  /// Substitutes polynomials (all in one common ring) for the variables.
  Poly substitute(const std::vector<Poly>& images) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  int nvars_ = 0;
  std::map<Exponent, Scalar> terms_;
};

/// Parses sums of terms like "3/2*x1^2*x2 - x3 + 1" in variables prefix1..prefixN.
Poly parse_poly(const std::string& text, int nvars, const std::string& prefix);

/// Dense matrix of polynomials; column j holds the image of the j-th basis element.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, int nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int nvars() const { return nvars_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& other) const;
  bool is_zero() const;
  PolyMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int nvars_ = 0;
  std::vector<Poly> data_;
};

}  // namespace borel
