#include "borel/algebra.hpp"

#include <bit>

#include "borel/error.hpp"

namespace borel {

namespace {

void enumerate(const std::vector<int>& w, std::size_t i, int remaining, Exponent& cur,
               std::vector<Exponent>& out) {
  if (i == w.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  // Lexicographic increasing: smaller leading exponents first.
  for (int e = 0; e * w[i] <= remaining; ++e) {
    cur[i] = e;
    enumerate(w, i + 1, remaining - e * w[i], cur, out);
  }
  cur[i] = 0;
}

}  // namespace

PolyAlgebra::PolyAlgebra(GroupData g) : group_(std::move(g)), cache_(std::make_shared<Cache>()) {}

const std::vector<Exponent>& PolyAlgebra::monomials(int degree) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  const int codegree = -degree;
  auto it = cache_->by_codegree.find(codegree);
  if (it != cache_->by_codegree.end()) return it->second;
  std::vector<Exponent> out;
  if (codegree >= 0) {
    Exponent cur(static_cast<std::size_t>(rank()), 0);
    enumerate(group_.codegrees(), 0, codegree, cur, out);
  }
  for (std::size_t k = 0; k < out.size(); ++k) cache_->index[out[k]] = k;
  return cache_->by_codegree.emplace(codegree, std::move(out)).first->second;
}

std::size_t PolyAlgebra::index(const Exponent& e) const {
  monomials(degree_of(e));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->index.at(e);
}

Matrix PolyAlgebra::multiplication(const Poly& p, int n) const {
  const auto deg = p.weighted_degree(group_.codegrees());
  const int shift = deg ? -*deg : 0;
  const auto& src = monomials(n);
  const auto& dst = monomials(n + shift);
  Matrix m(dst.size(), src.size());
  if (!deg) return m;
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [e, c] : p.terms()) m(index(add_exponents(src[j], e)), j) += c;
  return m;
}

ExtAlgebra::ExtAlgebra(GroupData g) : group_(std::move(g)) {
  require(group_.rank() < 24, ErrorCode::invalid_argument, "exterior algebra rank too large");
  for (std::uint32_t s = 0; s < (1u << group_.rank()); ++s) by_degree_[degree_of(s)].push_back(s);
  for (auto& [deg, subs] : by_degree_)
    for (std::size_t k = 0; k < subs.size(); ++k) index_[subs[k]] = k;
}

int ExtAlgebra::degree_of(std::uint32_t subset) const {
  int d = 0;
  for (int i = 0; i < rank(); ++i)
    if (contains(subset, i)) d += group_.ext_degree(i);
  return d;
}

std::size_t ExtAlgebra::dim(int degree) const {
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? 0 : it->second.size();
}

const std::vector<std::uint32_t>& ExtAlgebra::subsets(int degree) const {
  static const std::vector<std::uint32_t> none;
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? none : it->second;
}

std::size_t ExtAlgebra::index(std::uint32_t subset) const { return index_.at(subset); }

std::vector<int> ExtAlgebra::degrees() const {
  std::vector<int> out;
  for (const auto& [d, s] : by_degree_) out.push_back(d);
  return out;
}

bool contains(std::uint32_t subset, int i) { return (subset >> i) & 1u; }

int popcount(std::uint32_t subset) { return std::popcount(subset); }

int sign_before(std::uint32_t subset, int i) {
  const std::uint32_t below = subset & ((1u << i) - 1u);
  return (std::popcount(below) % 2) ? -1 : 1;
}

int exterior_left_sign(std::uint32_t subset, int i) {
  if (contains(subset, i)) return 0;
  return sign_before(subset, i);
}

}  // namespace borel
