#pragma once

#include <map>
#include <utility>

#include "borel/constructions.hpp"

/// Reference computations that share no code path with the library routine they check.
namespace oracle {

/// Number of exponent vectors with sum e_i d_i = c (coin-change recursion).
std::size_t monomial_count(const std::vector<int>& codegrees, int c);

/// Degree -> dimension of the exterior algebra on generators of degree d_i - 1.
std::map<int, std::size_t> exterior_dims(const std::vector<int>& codegrees);

/// Ext^{s,t}_R(M, N) for zero-differential finite modules, from the non-minimal resolution
/// Lambda(e_1..e_r) tensor R tensor M with d(e_i) = x_i tensor 1 - 1 tensor x_i.
std::map<std::pair<int, int>, std::size_t> ext_table(const borel::DGModule& m, const borel::DGModule& n);

/// The same resolution for a DG module X, as a cell module with the total differential.
borel::FreeDGModule diagonal_resolution(const borel::DGModule& x);

/// H_* Hom_R(P, Y) with P the diagonal resolution of X.
borel::GradedVS rhom(const borel::DGModule& x, const borel::DGModule& y);

}  // namespace oracle
