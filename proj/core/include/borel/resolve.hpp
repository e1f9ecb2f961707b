#pragma once

#include <map>
#include <optional>
#include <utility>

#include "borel/constructions.hpp"

namespace borel {

/// A finite resolution by free modules, or by sums of shifted basic injectives.
///
/// Free: M <- F_0 <- F_1 <- ... with boundaries[s] : F_{s+1} -> F_s and F_0 -> M sending
/// generator j to augmentation[j].
/// Injective: M -> I^0 -> I^1 -> ... obtained as the Matlis dual of a free resolution of D(M);
/// terms, boundaries and augmentation then describe that free resolution, and
/// I^s = sum over generators g of F_s of Sigma^{-deg g} I.
struct ResolutionData {
  enum class Kind { free, injective };

  Kind kind = Kind::free;
  DGModule module;
  /// The module the free terms resolve: M itself, or D(M) in the injective case.
  DGModule resolved;
  std::vector<FreeDGModule> terms;
  std::vector<PolyMatrix> boundaries;
  std::vector<Vector> augmentation;

  int length() const { return terms.empty() ? -1 : static_cast<int>(terms.size()) - 1; }
  std::vector<std::size_t> betti() const;
  std::vector<int> generator_degrees(int s) const { return cell_degrees(terms[static_cast<std::size_t>(s)]); }

  /// Injective case: (shift, multiplicity) pairs with I^s = sum of Sigma^shift I.
  std::vector<std::pair<int, std::size_t>> injective_term(int s) const;
};

/// Minimal free resolution of a finite-length module with zero differential, computed degree
/// by degree. Verifies exactness, minimality and the Hilbert identity before returning.
/// Throws NotFiniteLength; WindowTooSmall when the generator search leaves `search`.
ResolutionData minimal_free_resolution(const DGModule& m, std::optional<Window> search = std::nullopt);
/// Minimal free resolution of a bounded-above module with zero differential, with generators
/// searched and exactness verified on degrees [lo, top of M]. Nothing is claimed below lo.
ResolutionData free_resolution_on_band(const DGModule& m, int lo);
/// Injective resolution by Matlis duality from minimal_free_resolution(D(M)).
ResolutionData injective_resolution(const DGModule& m);

/// Degree n of F_s -> F_{s-1} for s >= 1, and of the augmentation F_0 -> M for s = 0.
Matrix resolution_block(const ResolutionData& res, int s, int n);
/// I^s realized as a degreewise module on w (exact on w, open above).
DGModule injective_term_module(const ResolutionData& res, int s, const Window& w);
/// Degree n of I^s -> I^{s+1}; for s = -1 the coaugmentation M -> I^0.
Matrix injective_coboundary(const ResolutionData& res, int s, int n);

/// Total complex of the free case: a cell module on the generators of every F_s, in degree
/// deg g + s, mapping quasi-isomorphically onto M.
FreeDGModule total_complex(const ResolutionData& res);

/// Bigraded dimensions keyed by (s, t); Ext^{s,t} contributes to total degree n = t - s.
struct BigradedTable {
  std::map<std::pair<int, int>, std::size_t> entries;

  std::size_t at(int s, int t) const;
  void set(int s, int t, std::size_t d);
  /// Largest s with a nonzero entry, or -1.
  int max_row() const;
  /// Dimensions summed along t - s = n.
  GradedVS total() const;
  bool operator==(const BigradedTable& other) const { return entries == other.entries; }
};

enum class ExtRoute { via_free, via_injective };

/// Ext_R^{s,t}(M, N) for finite-length modules with zero differential.
BigradedTable ext_bigraded(const DGModule& m, const DGModule& n, ExtRoute route = ExtRoute::via_free);

/// A semifree replacement P -> X: cells attached degree by degree to kill the homology of
/// the cone, then certified acyclic on a band below the last cell.
struct SemifreeReplacement {
  FreeDGModule cells;
  std::vector<Vector> images;
  /// Degree n of the comparison map.
  Matrix block(const DGModule& x, int n) const { return evaluate_on_cells(cells, images, x, n); }
};

/// Throws WindowTooSmall when the cone does not become acyclic on the search band.
SemifreeReplacement semifree_replacement(const DGModule& x);

/// Derived Hom: H_* Hom_R(P, Y) for a semifree replacement P of a finite X, reported on the
/// degrees of w certified by the Hom complex. Throws WindowTooSmall when w is not certified.
GradedVS rhom_homology(const DGModule& x, const DGModule& y, const Window& w);
/// As above on every certified degree.
GradedVS rhom_homology(const DGModule& x, const DGModule& y);

/// Degree -> dimension on [lo, hi].
std::map<int, std::size_t> hilbert_function(const DGModule& m, int lo, int hi);
std::map<int, std::size_t> hilbert_function(const FreeDGModule& f, int lo, int hi);

}  // namespace borel
