#pragma once

#include <optional>
#include <string>

#include "borel/constructions.hpp"

namespace borel {

/// k_Lambda = Lambda tensor Q[y_1..y_r], |y_i| = d_i, with
/// d(lambda y^alpha) = sum_i alpha_i (lambda a_i) y^{alpha - e_i}. Lambda acts by right
/// multiplication, which anticommutes with d. Stored on w (open above unless r = 0).
DGModule k_lambda(const GroupData& g, const Window& w);

/// T(M) = Hom_R(k-bar, M) with a_i f = (-1)^{|f|} f iota_i. Throws NotTorsion.
DGModule functor_T(const DGModule& m);
/// S(N) = N tensor_Lambda k_Lambda, with R acting by d/dy_i. Stored on [bottom of N, top].
DGModule functor_S(const DGModule& n, int top);

/// Homology dimensions together with the rank of each generator on homology, degree by degree.
struct HomologyProfile {
  GradedVS dims;
  std::map<std::pair<int, int>, std::size_t> action_ranks;  // (generator, degree) -> rank
  std::vector<int> shifts;  // degree of each generator

  bool operator==(const HomologyProfile& other) const = default;
};
HomologyProfile homology_profile(const DGModule& m);
/// The profile restricted to the degrees [lo, hi].
HomologyProfile restrict_profile(const HomologyProfile& p, int lo, int hi);

struct RoundTripReport {
  HomologyProfile original;
  HomologyProfile round_trip;
  bool agree = false;
  /// Degrees on which the comparison was made.
  int lo = 0;
  int hi = -1;
};
/// Lambda-module input: compares H(N) with H(T(S(N))). Throws WindowTooSmall.
RoundTripReport roundtrip_lambda(const DGModule& n);
/// Torsion R-module input: compares H(T(M)) with H(T(S(T(M)))).
RoundTripReport roundtrip_torsion(const DGModule& m);

/// End_R(k-bar) as a free module on the matrix units E_ij : e_j -> e_i (cell i * 2^r + j),
/// with composition E_ij E_kl = delta_jk E_il.
struct EndDGA {
  using Element = std::vector<Poly>;

  GroupData group;
  FreeDGModule kbar;
  FreeDGModule complex;

  std::size_t size() const { return kbar.rank(); }
  std::size_t cell(std::size_t target, std::size_t source) const { return target * size() + source; }
  int degree_of_cell(std::size_t c) const { return complex.cells()[c].degree; }

  Element zero() const;
  Element identity() const;
  Element unit_matrix(std::size_t target, std::size_t source) const;
  /// iota_i : e_S -> (-1)^{#{j in S : j < i}} e_{S - i}.
  Element iota(int i) const;
  /// iota_{s1} iota_{s2} ... for s1 < s2 < ...
  Element iota_product(std::uint32_t subset) const;
  Element compose(const Element& a, const Element& b) const;
  Element differential(const Element& a) const;
  Element add(const Element& a, const Element& b, const Scalar& c = 1) const;
  bool is_zero(const Element& a) const;
  /// Coordinates of a homogeneous element in degree n of the degreewise expansion.
  Vector to_vector(const Element& a, int n) const;
  DGModule degreewise(const Window& w) const { return to_degreewise(complex, w); }
  /// Window on which the homology of End(k-bar) is certified in every degree it can occur.
  Window standard_window() const;
};
EndDGA end_dga(const GroupData& g);

/// Hom_R(k-bar, k): zero differential, basis e_S^* in degree sum_{i in S}(d_i - 1), with the
/// product dual to the diagonal e_S -> sum_{A+B=S} sign(A,B) e_A tensor e_B.
struct HomToK {
  GroupData group;
  DGModule module;

  std::pair<int, std::size_t> position(std::uint32_t subset) const;
  Vector basis_vector(std::uint32_t subset) const;
  /// Sign c with e_A^* e_B^* = c e_{A+B}^*, or 0.
  int product_sign(std::uint32_t a, std::uint32_t b) const;
  Vector multiply(int p, const Vector& a, int q, const Vector& b) const;
};
HomToK hom_to_k(const GroupData& g);

/// Postcomposition with the augmentation k-bar -> k.
struct CartanMap {
  EndDGA source;
  HomToK target;
  ChainMap chain;
  bool unital = false;
  /// Multiplicative on the products of the iota_i, which represent all of homology.
  bool multiplicative_on_iota = false;
  bool homology_isomorphism = false;
  /// Counterexample to multiplicativity on all matrix units, if any.
  std::optional<std::string> chain_level_failure;
};
CartanMap cartan_map(const EndDGA& e);

struct DoubleCentralizerReport {
  GradedVS homology;
  GradedVS exterior;
  bool iota_cycles = false;
  bool exterior_relations = false;
  bool iota_basis = false;
  bool products_in_homology = false;
  bool ok() const { return homology == exterior && iota_cycles && exterior_relations && iota_basis && products_in_homology; }
};
DoubleCentralizerReport double_centralizer_check(const GroupData& g);

/// A DG algebra given degreewise: basis per degree, product tables, unit and differential.
/// Products are stored wherever the target degree lies in the window.
class DGAlgebra {
 public:
  DGAlgebra() = default;
  DGAlgebra(GradedVS space, Window window);

  /// Non-positively graded presentations truncated to degrees [lo, 0].
  static DGAlgebra polynomial(const GroupData& g, int lo);
  static DGAlgebra divided_power(const GroupData& g, int lo);
  /// Free graded-commutative on generators of the given (negative) degrees.
  static DGAlgebra free_commutative(const std::vector<int>& degrees, int lo);
  /// Free associative on generators of the given (negative) degrees.
  static DGAlgebra free_associative(const std::vector<int>& degrees, int lo);

  const GradedVS& space() const { return space_; }
  const Window& window() const { return window_; }
  std::size_t dim(int n) const { return space_.dim(n); }

  void set_unit(Vector u) { unit_ = std::move(u); }
  const Vector& unit() const { return unit_; }
  /// dim(p+q) x (dim p * dim q), column i * dim(q) + j holding b_i b_j.
  void set_product(int p, int q, Matrix m);
  Matrix product(int p, int q) const;
  bool knows_product(int p, int q) const { return window_.contains(p + q); }
  Vector multiply(int p, const Vector& a, int q, const Vector& b) const;
  void set_d(int n, Matrix m) { d_.set_block(n, std::move(m)); }
  Matrix d(int n) const { return d_.block(n); }

  /// Generators of a presented algebra: (degree, basis index).
  const std::vector<std::pair<int, std::size_t>>& generators() const { return generators_; }
  /// Product of generators in the given order.
  Vector word(const std::vector<std::size_t>& factors) const;
  /// Sets d on a generator and extends it as a derivation over the presentation.
  void set_generator_differential(std::size_t gen, const Vector& value);

  /// Throws InvariantViolation naming the failed axiom: d^2 = 0, unit, associativity, Leibniz.
  void validate() const;
  DGModule underlying() const;

 private:
  GradedVS space_;
  Window window_ = Window::empty();
  Vector unit_;
  std::map<std::pair<int, int>, Matrix> products_;
  GradedMap d_;
  std::vector<std::pair<int, std::size_t>> generators_;
  std::vector<Vector> generator_d_;
  std::vector<std::vector<std::vector<std::size_t>>> factorization_;  // per degree offset, per basis element
  std::map<int, std::size_t> degree_slot_;
};

/// A quasi-isomorphism from a polynomial ring to a DG algebra with polynomial homology.
struct FormalityMap {
  GroupData source;
  std::vector<std::pair<int, Vector>> generator_images;
  /// Degree n of the map from the monomial basis of the source.
  std::map<int, Matrix> blocks;
  bool quasi_isomorphism = false;
};
/// Throws NotPolynomialHomology or NotGradedCommutative.
FormalityMap formality_map(const DGAlgebra& a);

/// A chain map k-bar -> M that is a quasi-isomorphism, built stage by stage over the Koszul
/// filtration. Throws HomologyNotK or LinearSolveFailed.
struct RecognitionResult {
  FreeDGModule kbar;
  std::vector<Vector> images;
  ChainMap map;
  bool cone_acyclic = false;
  bool nonzero_on_h0 = false;
};
RecognitionResult recognize_k(const DGModule& m);

}  // namespace borel
