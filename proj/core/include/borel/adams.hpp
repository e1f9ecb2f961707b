#pragma once

#include <vector>

#include "borel/resolve.hpp"

namespace borel {

/// Sigma^{dim G} I on degrees [dim G, dim G + span]: the model of EG_+.
DGModule realize_injective(const GroupData& g, int span = 24);

/// Y = Y_0 <- Y_1 <- ... with Y_{j+1} the fibre of Y_j -> Sigma^{-j} I^j.
struct AdamsTower {
  ResolutionData resolution;
  std::vector<DGModule> stages;
  /// maps[j] : stages[j] -> targets[j].
  std::vector<ChainMap> maps;
  std::vector<DGModule> targets;
  /// Sigma^{-j} of the j-th cosyzygy, read off the resolution; expected H_*(Y_j).
  std::vector<GradedVS> syzygies;
  /// H_*(Y_j) on the certified range of Y_j.
  std::vector<GradedVS> stage_homology;
  bool syzygies_match = false;
  bool terminates = false;

  int length() const { return resolution.length(); }
};

/// Finite-length input with zero differential. Stages are exact up to degree top - j.
AdamsTower adams_tower(const DGModule& y, int margin = 8);

struct Page {
  BigradedTable e2;
  GradedVS abutment;
  /// Degrees on which the abutment was certified.
  int lo = 0;
  int hi = -1;
  /// sum over t - s = n of E_2^{s,t}.
  GradedVS e2_total;
  bool bounded = false;
  bool degenerate = false;
  /// Degrees where the abutment is strictly smaller than the E_2 total.
  std::vector<int> non_degenerate_degrees;
  long euler_e2 = 0;
  long euler_abutment = 0;
  bool rows_vanish_above_rank = false;
};

/// E_2 = Ext(H_* X, H_* Y) against [X, Y]_* = H_* RHom(X, Y). X and Y must have finite homology.
Page e2_page(const DGModule& x, const DGModule& y);

struct InjectiveCaseReport {
  GradedVS derived;
  GradedVS underived;
  int lo = 0;
  int hi = -1;
  bool agree = false;
};
/// Y = sum of Sigma^{shift} I, stored up to `top`; compares [X, Y]_n with Hom(H_* X, H_* Y)_n on [lo, hi].
InjectiveCaseReport injective_case_check(const DGModule& x, const std::vector<int>& shifts, int lo, int hi,
                                         int top = 30);

struct WhiteheadStage {
  /// Hom_R(K(x_1..x_i), M).
  int stage = 0;
  GradedVS homology;
  bool zero = false;
  /// x_i acts invertibly on the homology of the previous stage, on the degrees certified for both.
  bool acts_invertibly = false;
};

struct WhiteheadReport {
  bool homology_zero = false;
  bool koszul_zero = false;
  bool agree = false;
  std::vector<WhiteheadStage> stages;
  /// Every implication of the staged Koszul induction was checked.
  bool certificate = false;
};
/// Throws NotTorsion.
WhiteheadReport whitehead_detect(const DGModule& m);

}  // namespace borel
