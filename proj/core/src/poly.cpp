#include "borel/poly.hpp"

#include <cctype>
#include <sstream>

#include "borel/error.hpp"

namespace borel {

int weighted_degree(const Exponent& e, const std::vector<int>& weights) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weights[i];
  return d;
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Poly Poly::constant(int nvars, const Scalar& c) {
  Poly p(nvars);
  p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::monomial(Exponent e, const Scalar& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(e);
}

Scalar Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::constant_term() const {
  return coefficient(Exponent(static_cast<std::size_t>(nvars_), 0));
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
  require(static_cast<int>(e.size()) == nvars_, ErrorCode::invalid_argument,
          "exponent length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& other) const {
  Poly out = *this;
  out += other;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (terms_.empty() && nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Scalar& c) const {
  Poly out(nvars_);
  if (sgn(c) == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  Poly out(std::max(nvars_, other.nvars_));
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : other.terms_) out.add_term(add_exponents(a, b), x * y);
  return out;
}

Poly Poly::pow(int n) const {
  Poly out = constant(nvars_, 1);
  for (int k = 0; k < n; ++k) out = out * *this;
  return out;
}

std::optional<int> Poly::weighted_degree(const std::vector<int>& weights) const {
  std::optional<int> d;
  for (const auto& [e, c] : terms_) {
    const int k = borel::weighted_degree(e, weights);
    if (d && *d != k) fail(ErrorCode::invariant_violation, "polynomial is not homogeneous");
    d = k;
  }
  return d;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  require(static_cast<int>(images.size()) == nvars_, ErrorCode::invalid_argument,
          "substitution needs one image per variable");
  const int target_vars = images.empty() ? 0 : images.front().nvars();
  Poly out(target_vars);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(target_vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) term = term * images[i].pow(e[i]);
    out += term;
  }
  return out;
}

std::string Poly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest exponent first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      vars << (any_var ? "*" : "") << var << (i + 1);
      if (e[i] > 1) vars << "^" << e[i];
      any_var = true;
    }
    if (!any_var) {
      out << format_scalar(mag);
    } else if (mag == 1) {
      out << vars.str();
    } else {
      out << format_scalar(mag) << "*" << vars.str();
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, int nvars, const std::string& prefix)
      : text_(text), nvars_(nvars), prefix_(prefix) {}

  Poly parse() {
    Poly result(nvars_);
    skip();
    if (pos_ == text_.size()) error("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      Scalar sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      result += term().scaled(sign);
      skip();
    }
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, what + " in '" + text_ + "'");
  }

  Poly term() {
    Poly t = Poly::constant(nvars_, 1);
    while (true) {
      skip();
      t = t * factor();
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  Poly factor() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) error("bad fraction");
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      return Poly::constant(nvars_, parse_scalar(text_.substr(start, pos_ - start)));
    }
    if (text_.compare(pos_, prefix_.size(), prefix_) != 0) error("expected a variable " + prefix_ + "i");
    pos_ += prefix_.size();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    int index = 1;
    if (pos_ > start) {
      index = std::stoi(text_.substr(start, pos_ - start));
    } else if (nvars_ != 1) {
      error("variable index required");
    }
    if (index < 1 || index > nvars_) error("variable index out of range");
    int power = 1;
    if (peek() == '^') {
      ++pos_;
      std::size_t s = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == s) error("expected exponent");
      power = std::stoi(text_.substr(s, pos_ - s));
    }
    return Poly::variable(nvars_, index - 1).pow(power);
  }

  const std::string& text_;
  int nvars_;
  std::string prefix_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, int nvars, const std::string& prefix) {
  return PolyParser(text, nvars, prefix).parse();
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  require(cols_ == other.rows_, ErrorCode::invalid_argument, "polynomial matrix shape mismatch");
  PolyMatrix out(rows_, other.cols_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (!other(k, j).is_zero()) out(i, j) += a * other(k, j);
    }
  return out;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

}  // namespace borel
