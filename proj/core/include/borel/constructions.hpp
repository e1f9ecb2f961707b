#pragma once

#include <vector>

#include "borel/dg_module.hpp"

namespace borel {

/// The Koszul model k-bar: free on e_S for S in {1..r}, |e_S| = sum_{i in S}(1 - d_i),
/// d(e_S) = sum_{i in S} (-1)^{#{j in S : j < i}} x_i e_{S - i}. Cell j is the subset with bit mask j.
FreeDGModule koszul_model(const GroupData& g);
/// K(x_1, ..., x_i): the sub-complex on subsets of {1..i}.
FreeDGModule koszul_stage(const GroupData& g, int i);
/// Free module of rank one on a generator of the given degree.
FreeDGModule free_rank_one(const GroupData& g, int degree = 0);
std::string subset_label(std::uint32_t subset, const std::string& letter = "e");

/// Degree n of the R-linear map of degree `shift` between free modules on generators of the
/// given degrees, with column j of p the image of source generator j. Bases as in to_degreewise.
Matrix free_block(const PolyAlgebra& r, const std::vector<int>& source, const std::vector<int>& target,
                  const PolyMatrix& p, int n, int shift = 0);
/// Multiplication by x_i on a free module, from degree n.
Matrix free_action(const PolyAlgebra& r, const std::vector<int>& generators, int i, int n);
/// Splits a vector of degree n of a free module into one polynomial per generator.
std::vector<Poly> free_coordinates(const PolyAlgebra& r, const std::vector<int>& generators, int n,
                                   const Vector& v);
std::size_t free_dim(const PolyAlgebra& r, const std::vector<int>& generators, int n);
std::vector<int> cell_degrees(const FreeDGModule& f);
/// Adds cells whose differentials are given as vectors in the degreewise expansion of f.
FreeDGModule attach_cells(const FreeDGModule& f, const std::vector<FreeDGModule::Cell>& cells,
                          const std::vector<Vector>& boundaries);
/// Degree n of the R-linear map F -> M sending cell j to images[j].
Matrix evaluate_on_cells(const FreeDGModule& f, const std::vector<Vector>& images, const DGModule& m, int n);

/// Expands a cell module over the monomial basis, on the degrees of w (capped at the top cell).
DGModule to_degreewise(const FreeDGModule& f, const Window& w);

/// k concentrated in degree n.
DGModule residue_field(const GroupData& g, int n = 0);
/// I = graded dual of H*(BG): I_n dual to R_{-n}, x_i acting by precomposition. Basis element
/// k of I_n is dual to the k-th monomial of codegree n.
DGModule basic_injective(const GroupData& g, const Window& w);
/// R/(monomials) with zero differential; finite length whenever a pure power of every
/// variable is among the relations.
DGModule monomial_quotient(const GroupData& g, const std::vector<Exponent>& relations, int shift = 0);

/// Lambda/(a_T : T contains a relation subset), left multiplication a_i a_S = (-1)^{#{j in S :
/// j < i}} a_{S+i}. With no relations this is Lambda itself.
DGModule exterior_quotient(const GroupData& g, const std::vector<std::uint32_t>& relations, int shift = 0);

/// Hom_R(F, M): degree n holds tuples (f(e_j) in M_{n + |e_j|}), D f = d_M f - (-1)^{|f|} f d_F.
DGModule hom_R(const FreeDGModule& f, const DGModule& m);
/// Hom_R(F, G) is again free, on E_{i,j} : e_j -> g_i (cell index i * rank(F) + j).
FreeDGModule hom_free(const FreeDGModule& f, const FreeDGModule& g);

/// Cone_n = N_n + M_{n-1}, d(n, m) = (dn + f m, -dm); odd generators act by -a on the second part.
DGModule mapping_cone(const ChainMap& f);
/// Fibre = Sigma^{-1} Cone.
DGModule fibre(const ChainMap& f);
/// The map N -> Cone(f) including the first summand.
ChainMap cone_inclusion(const DGModule& cone, const ChainMap& f);

/// Elements annihilated by a power of the augmentation ideal, closed under d and the action.
/// In degree n the power is capped at floor((n - lo) / max d_i) when the window is open below,
/// which is the largest power whose targets are all stored.
DGModule gamma_m(const DGModule& m);
bool is_torsion(const DGModule& m);

/// D(M)_n = (M_{-n})^*; d is (-1)^{n+1} times the transpose; odd generators carry (-1)^{n}.
DGModule matlis_dual(const DGModule& m);

/// N tensor Q[y_1..y_r] with |y_i| = d_i and d(n y^a) = dn y^a + sum_i (a_i n) d/dy_i y^a;
/// R acts by d/dy_i. Stored on degrees of w at or above the bottom of N.
DGModule tensor_over_ext(const DGModule& n, const Window& w);

/// The R-linear map F -> M sending cell j to images[j] (a vector in M at that cell's degree),
/// with source to_degreewise(F) on the window of M. Throws WindowTooSmall when a cell degree of
/// F is not known to M.
ChainMap free_map(const FreeDGModule& f, const std::vector<Vector>& images, const DGModule& m);

}  // namespace borel
