#include "support/random_modules.hpp"

namespace test_support {

using namespace borel;

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  Matrix m(rows, cols);
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-2, 2);
  Matrix l = Matrix::identity(n);
  Matrix u = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i > j) l(i, j) = dist(rng);
      if (i < j) u(i, j) = dist(rng);
    }
  for (std::size_t i = 0; i < n; ++i) u(i, i) = (rng() % 2) ? Scalar(1) : Scalar(-2);
  return l * u;
}

DGModule change_basis(const DGModule& m, Rng& rng) {
  std::map<int, Matrix> p, pinv;
  for (int n : m.degrees()) {
    p[n] = random_invertible(rng, m.dim(n));
    pinv[n] = inverse(p[n]);
  }
  DGModule out(m.kind(), m.group(), m.space(), m.window());
  for (int n : m.degrees()) {
    if (m.dim(n - 1)) out.set_d(n, p[n - 1] * m.d(n) * pinv[n]);
    for (int i = 0; i < m.generator_count(); ++i) {
      const int t = n + m.generator_degree(i);
      if (m.dim(t)) out.set_action(i, n, p[t] * m.action(i, n) * pinv[n]);
    }
  }
  out.validate();
  return out;
}

namespace {

DGModule random_piece(const GroupData& g, Rng& rng, std::size_t budget) {
  const int r = g.rank();
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Exponent> rels;
    for (int i = 0; i < r; ++i) {
      Exponent e(static_cast<std::size_t>(r), 0);
      e[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % 3);
      rels.push_back(e);
    }
    if (r >= 2 && rng() % 2) {
      Exponent e(static_cast<std::size_t>(r), 0);
      for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 2);
      bool nonzero = false;
      for (int v : e) nonzero = nonzero || v;
      if (nonzero) rels.push_back(e);
    }
    const int shift = -2 * static_cast<int>(rng() % 3) + static_cast<int>(rng() % 2);
    DGModule q = monomial_quotient(g, rels, shift);
    if (q.total_dim() <= budget) return q;
  }
  return residue_field(g, -static_cast<int>(rng() % 3));
}

}  // namespace

DGModule random_finite_module(const GroupData& g, Rng& rng, std::size_t max_total) {
  std::vector<DGModule> parts;
  std::size_t total = 0;
  const int pieces = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < pieces && total < max_total; ++k) {
    DGModule q = random_piece(g, rng, max_total - total);
    total += q.total_dim();
    parts.push_back(std::move(q));
  }
  return change_basis(direct_sum(parts), rng);
}

ChainMap random_module_map(const DGModule& a, const DGModule& b, Rng& rng, int k, bool chain) {
  ChainMap f{a, b, k, {}};
  std::uniform_int_distribution<int> dist(-2, 2);
  for (const auto& basis_map : module_maps_basis(a, b, k, chain)) {
    const Scalar c = dist(rng);
    if (sgn(c) == 0) continue;
    for (const auto& [n, blk] : basis_map.blocks) {
      Matrix add = blk;
      add *= c;
      f.blocks[n] = f.blocks.count(n) ? f.blocks[n] + add : add;
    }
  }
  return f;
}

DGModule random_dg_torsion(const GroupData& g, Rng& rng, std::size_t max_total) {
  if (rng() % 5 == 0) {
    DGModule a = random_finite_module(g, rng, std::max<std::size_t>(1, max_total / 2));
    return change_basis(mapping_cone(identity_map(a)), rng);
  }
  const std::size_t half = std::max<std::size_t>(1, max_total / 2);
  DGModule a = random_finite_module(g, rng, half);
  DGModule b = random_finite_module(g, rng, max_total - std::min(max_total - 1, a.total_dim()));
  ChainMap f = random_module_map(a, b, rng);
  return change_basis(mapping_cone(f), rng);
}

DGModule random_ext_module(const GroupData& g, Rng& rng, std::size_t max_total) {
  auto piece = [&](std::size_t budget) {
    const int r = g.rank();
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<std::uint32_t> rels;
      const int count = static_cast<int>(rng() % 3);
      for (int k = 0; k < count; ++k) {
        const std::uint32_t s = static_cast<std::uint32_t>(rng() % (1u << r));
        if (s) rels.push_back(s);
      }
      const int shift = static_cast<int>(rng() % 5) - 2;
      DGModule q = exterior_quotient(g, rels, shift);
      if (q.total_dim() > 0 && q.total_dim() <= budget) return q;
    }
    return exterior_quotient(g, {(1u << r) - 1u}, 0);
  };
  DGModule a = piece(std::max<std::size_t>(1, max_total / 2));
  if (rng() % 2) return change_basis(a, rng);
  DGModule b = piece(std::max<std::size_t>(1, max_total - a.total_dim()));
  ChainMap f = random_module_map(a, b, rng);
  return change_basis(mapping_cone(f), rng);
}

}  // namespace test_support
