#pragma once

#include <string>
#include <vector>

#include "borel/resolve.hpp"

namespace borel {

/// r : H*(BG) -> H*(BH), x_i -> images[i] (a polynomial in the y_j).
struct RingMap {
  GroupData source;
  GroupData target;
  std::vector<Poly> images;
  std::string name;

  /// c = dim G - dim H.
  int shift() const { return source.dim() - target.dim(); }
  /// Throws InvariantViolation on an inhomogeneous image, NotFinite when H*(BH) / (images) is
  /// infinite-dimensional, InvalidArgument when c < 0.
  void validate() const;
  /// Codegree -> dim of H*(BH) / (images); finite by validate().
  std::map<int, std::size_t> fibre_dims() const;
  /// Largest codegree with fibre_dims() nonzero.
  int fibre_top() const;
};

RingMap identity_ring_map(const GroupData& g);
/// Images written in y1, y2, ... (or y for a single variable).
RingMap parse_ring_map(const GroupData& source, const GroupData& target, const std::vector<std::string>& images,
                       const std::string& name = {});

/// Subgroup pairs H < G with their restriction maps.
std::vector<RingMap> subgroup_catalog();
RingMap catalog_pair(const std::string& name);

/// r^*: same chain complex, x_i acting through r(x_i).
DGModule restrict_scalars(const RingMap& r, const DGModule& n);
/// H*(BH) as an H*(BG)-module on degrees [lo, 0].
DGModule target_as_source_module(const RingMap& r, int lo);

/// r_*(M) = H*(BH) tensor_{H*(BG)} M for finite M; supported in [min M - fibre top, max M].
DGModule extend_scalars(const RingMap& r, const DGModule& m);
/// r_!(M) = Hom_{H*(BG)}(H*(BH), M), y_j acting by precomposition. M finite, or closed below and
/// stored up to its top (a sum of shifted injectives).
DGModule coextend_scalars(const RingMap& r, const DGModule& m);

/// D(H*(BH)) = Hom_{H*(BG)}(F, H*(BG)) for the minimal free resolution F of H*(BH).
struct DerivedDual {
  RingMap map;
  ResolutionData resolution;
  FreeDGModule dual;
  /// Sum over s of (-1)^s t^codeg(g), times prod(1 - t^{e_j}), equals prod(1 - t^{d_i}).
  bool hilbert_certificate = false;
  /// H_*(D) with its H*(BH)-action, lifted through F, on degrees [lo, c].
  DGModule homology;
  /// H_*(D) is free of rank one over H*(BH) on a class of degree c.
  bool shifted_free = false;
};
/// Throws NotFinite.
DerivedDual derived_dual(const RingMap& r, int span = 16);

/// r'_!(M) = D tensor_{H*(BG)} M, as an H*(BG)-module.
DGModule r_shriek_left(const DerivedDual& d, const DGModule& m);

struct ShriekComparison {
  GradedVS tensor;
  GradedVS coextension;
  /// H_* Hom_{H*(BG)}(F, M), the derived coextension.
  GradedVS derived_coextension;
  bool agree = false;
};
ShriekComparison compare_shriek(const DerivedDual& d, const DGModule& m);

/// r^!(N) = Hom_{H*(BH)}(H_* D, N), for N closed below.
DGModule r_upper_shriek(const DerivedDual& d, const DGModule& n);

struct ShiftLawReport {
  int c = 0;
  GradedVS upper_shriek;
  GradedVS shifted_restriction;
  int lo = 0;
  int hi = -1;
  bool agree = false;
};
ShiftLawReport shift_law_check(const DerivedDual& d, const DGModule& n);

struct AdjunctionRow {
  int degree = 0;
  std::size_t extension_side = 0;    // Hom_H(r_* M, N)
  std::size_t restriction_side = 0;  // Hom_G(M, r^* N)
  std::size_t restriction_left = 0;  // Hom_G(r^* N, M)
  std::size_t coextension_side = 0;  // Hom_H(N, r_! M)
};
struct AdjunctionReport {
  std::vector<AdjunctionRow> rows;
  bool agree = false;
};
/// M over H*(BG), N over H*(BH), both finite; compares chain-map dimensions in degrees [lo, hi].
AdjunctionReport adjunction_check(const RingMap& r, const DGModule& m, const DGModule& n, int lo, int hi);

}  // namespace borel
