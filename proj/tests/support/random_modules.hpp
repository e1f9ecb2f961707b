#pragma once

#include <random>

#include "borel/constructions.hpp"

namespace test_support {

using Rng = std::mt19937;

borel::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound);
borel::Matrix random_invertible(Rng& rng, std::size_t n);

/// Conjugates every structure map by random invertible matrices, degree by degree.
borel::DGModule change_basis(const borel::DGModule& m, Rng& rng);

/// Sum of shifted cyclic and staircase monomial quotients, zero differential.
borel::DGModule random_finite_module(const borel::GroupData& g, Rng& rng, std::size_t max_total);

/// Cone of a random module map between two random finite modules; sometimes acyclic.
borel::DGModule random_dg_torsion(const borel::GroupData& g, Rng& rng, std::size_t max_total);

/// Shifted exterior quotients, optionally a cone of a random map between two of them.
borel::DGModule random_ext_module(const borel::GroupData& g, Rng& rng, std::size_t max_total);

/// Random linear combination of a basis of degree-k module maps (chain maps when chain = true).
borel::ChainMap random_module_map(const borel::DGModule& a, const borel::DGModule& b, Rng& rng,
                                  int k = 0, bool chain = true);

}  // namespace test_support
