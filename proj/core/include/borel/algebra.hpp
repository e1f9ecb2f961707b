#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "borel/group.hpp"
#include "borel/poly.hpp"

namespace borel {

/// H*(BG) = Q[x_1..x_r] with x_i in homological degree -d_i. Degree n has a basis of the
/// monomials of codegree -n, listed in increasing lexicographic order of exponent vectors.
class PolyAlgebra {
 public:
  PolyAlgebra() : PolyAlgebra(GroupData{}) {}
  explicit PolyAlgebra(GroupData g);

  const GroupData& group() const { return group_; }
  int rank() const { return group_.rank(); }
  std::vector<int> codegree_weights() const { return group_.codegrees(); }

  std::size_t dim(int degree) const { return monomials(degree).size(); }
  const std::vector<Exponent>& monomials(int degree) const;
  /// Position of e within the basis of its degree.
  std::size_t index(const Exponent& e) const;
  int degree_of(const Exponent& e) const { return -weighted_degree(e, group_.codegrees()); }

  /// Matrix of multiplication by a homogeneous polynomial p from degree n to n + deg(p),
  /// restricted to the monomial bases.
  Matrix multiplication(const Poly& p, int n) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, std::vector<Exponent>> by_codegree;
    std::map<Exponent, std::size_t> index;
  };
  GroupData group_;
  std::shared_ptr<Cache> cache_;
};

/// H_*(G) = Lambda(a_1..a_r) with a_i in degree d_i - 1. Basis elements are subsets S, stored
/// as bit masks and written a_S = a_{s1} a_{s2} ... in increasing index order.
class ExtAlgebra {
 public:
  ExtAlgebra() : ExtAlgebra(GroupData{}) {}
  explicit ExtAlgebra(GroupData g);

  const GroupData& group() const { return group_; }
  int rank() const { return group_.rank(); }
  std::size_t total_dim() const { return std::size_t{1} << group_.rank(); }

  int degree_of(std::uint32_t subset) const;
  std::size_t dim(int degree) const;
  const std::vector<std::uint32_t>& subsets(int degree) const;
  std::size_t index(std::uint32_t subset) const;
  std::vector<int> degrees() const;

 private:
  GroupData group_;
  std::map<int, std::vector<std::uint32_t>> by_degree_;
  std::map<std::uint32_t, std::size_t> index_;
};

/// (-1)^{#{j in S : j < i}}: the sign of moving an odd generator i past the elements of S below it.
int sign_before(std::uint32_t subset, int i);
bool contains(std::uint32_t subset, int i);
int popcount(std::uint32_t subset);

/// Left multiplication a_i * a_S = sign a_{S+i}, or 0 (returned as sign 0) when i is in S.
int exterior_left_sign(std::uint32_t subset, int i);

}  // namespace borel
