#include "support/oracles.hpp"

#include <algorithm>

namespace oracle {

using namespace borel;

std::size_t monomial_count(const std::vector<int>& codegrees, int c) {
  if (c < 0) return 0;
  std::vector<std::size_t> ways(static_cast<std::size_t>(c) + 1, 0);
  ways[0] = 1;
  for (int d : codegrees)
    for (int v = d; v <= c; ++v) ways[static_cast<std::size_t>(v)] += ways[static_cast<std::size_t>(v - d)];
  return ways[static_cast<std::size_t>(c)];
}

std::map<int, std::size_t> exterior_dims(const std::vector<int>& codegrees) {
  std::map<int, std::size_t> dims{{0, 1}};
  for (int d : codegrees) {
    std::map<int, std::size_t> next = dims;
    for (auto [deg, n] : dims) next[deg + d - 1] += n;
    dims = next;
  }
  return dims;
}

namespace {

struct Cell {
  std::uint32_t subset;
  int q;          // degree of the M basis element
  std::size_t m;  // index in M_q
  int internal;   // q - sum of d_i over the subset
};

int parity_sign(std::uint32_t s, int i) {
  int below = 0;
  for (int j = 0; j < i; ++j)
    if ((s >> j) & 1u) ++below;
  return below % 2 ? -1 : 1;
}

std::vector<Cell> cells_of(const DGModule& m, int s) {
  const GroupData& g = m.group();
  const int r = g.rank();
  std::vector<Cell> out;
  for (std::uint32_t sub = 0; sub < (1u << r); ++sub) {
    int size = 0, sum = 0;
    for (int i = 0; i < r; ++i)
      if ((sub >> i) & 1u) {
        ++size;
        sum += g.codegree(i);
      }
    if (size != s) continue;
    for (int q : m.degrees())
      for (std::size_t k = 0; k < m.dim(q); ++k) out.push_back({sub, q, k, q - sum});
  }
  return out;
}

/// Applies x^n repeatedly: the action of x_i^1 on N from degree p.
Matrix act(const DGModule& n, int i, int p) { return n.action(i, p); }

}  // namespace

std::map<std::pair<int, int>, std::size_t> ext_table(const DGModule& m, const DGModule& n) {
  const GroupData& g = m.group();
  const int r = g.rank();
  std::map<std::pair<int, int>, std::size_t> out;
  if (m.total_dim() == 0 || n.total_dim() == 0) return out;
  const auto ndeg = n.degrees();
  std::vector<std::vector<Cell>> cells;
  for (int s = 0; s <= r; ++s) cells.push_back(cells_of(m, s));
  int amin = 1 << 30, amax = -(1 << 30);
  for (const auto& cs : cells)
    for (const auto& c : cs) {
      amin = std::min(amin, c.internal);
      amax = std::max(amax, c.internal);
    }
  for (int t = ndeg.front() - amax; t <= ndeg.back() - amin; ++t) {
    // Cochain group C^s_t = product over cells of N_{internal + t}.
    std::vector<std::vector<std::size_t>> offsets(static_cast<std::size_t>(r) + 2);
    std::vector<std::size_t> size(static_cast<std::size_t>(r) + 2, 0);
    for (int s = 0; s <= r; ++s) {
      std::size_t acc = 0;
      for (const auto& c : cells[static_cast<std::size_t>(s)]) {
        offsets[static_cast<std::size_t>(s)].push_back(acc);
        acc += n.dim(c.internal + t);
      }
      size[static_cast<std::size_t>(s)] = acc;
    }
    // delta^s : C^{s-1} -> C^s,  (delta f)(e_S m) = sum_i sign (x_i f(e_{S-i} m) - f(e_{S-i} x_i m)).
    std::vector<Matrix> delta(static_cast<std::size_t>(r) + 2);
    for (int s = 1; s <= r; ++s) {
      Matrix dm(size[static_cast<std::size_t>(s)], size[static_cast<std::size_t>(s - 1)]);
      const auto& src = cells[static_cast<std::size_t>(s - 1)];
      auto find = [&](std::uint32_t sub, int q, std::size_t k) {
        for (std::size_t j = 0; j < src.size(); ++j)
          if (src[j].subset == sub && src[j].q == q && src[j].m == k) return j;
        return src.size();
      };
      const auto& dst = cells[static_cast<std::size_t>(s)];
      for (std::size_t c = 0; c < dst.size(); ++c) {
        const Cell& cell = dst[c];
        const std::size_t row0 = offsets[static_cast<std::size_t>(s)][c];
        const std::size_t rows = n.dim(cell.internal + t);
        if (rows == 0) continue;
        for (int i = 0; i < r; ++i) {
          if (!((cell.subset >> i) & 1u)) continue;
          const int sign = parity_sign(cell.subset, i);
          const std::uint32_t rest = cell.subset & ~(1u << i);
          // x_i f(e_rest m): e_rest m has internal degree cell.internal + d_i.
          const std::size_t j = find(rest, cell.q, cell.m);
          const std::size_t col0 = offsets[static_cast<std::size_t>(s - 1)][j];
          const int p = cell.internal + g.codegree(i) + t;
          const Matrix x = act(n, i, p);
          for (std::size_t a = 0; a < x.rows(); ++a)
            for (std::size_t b = 0; b < x.cols(); ++b) dm(row0 + a, col0 + b) += sign * x(a, b);
          // - f(e_rest x_i m).
          const Matrix xm = m.action(i, cell.q);
          const int q2 = cell.q - g.codegree(i);
          for (std::size_t k2 = 0; k2 < xm.rows(); ++k2) {
            const Scalar coeff = xm(k2, cell.m);
            if (sgn(coeff) == 0) continue;
            const std::size_t j2 = find(rest, q2, k2);
            const std::size_t c0 = offsets[static_cast<std::size_t>(s - 1)][j2];
            for (std::size_t a = 0; a < rows; ++a) dm(row0 + a, c0 + a) -= sign * coeff;
          }
        }
      }
      delta[static_cast<std::size_t>(s)] = dm;
    }
    for (int s = 0; s <= r; ++s) {
      const std::size_t dim = size[static_cast<std::size_t>(s)];
      if (dim == 0) continue;
      const std::size_t rank_out = s < r ? rank(delta[static_cast<std::size_t>(s + 1)]) : 0;
      const std::size_t rank_in = s > 0 ? rank(delta[static_cast<std::size_t>(s)]) : 0;
      const std::size_t h = dim - rank_out - rank_in;
      if (h) out[{s, t}] = h;
    }
  }
  return out;
}

FreeDGModule diagonal_resolution(const DGModule& x) {
  const GroupData& g = x.group();
  const int r = g.rank();
  struct Key {
    std::uint32_t subset;
    int q;
    std::size_t m;
  };
  std::vector<Key> keys;
  std::vector<FreeDGModule::Cell> cells;
  for (std::uint32_t sub = 0; sub < (1u << r); ++sub) {
    int deg = 0;
    for (int i = 0; i < r; ++i)
      if ((sub >> i) & 1u) deg += 1 - g.codegree(i);
    for (int q : x.degrees())
      for (std::size_t k = 0; k < x.dim(q); ++k) {
        keys.push_back({sub, q, k});
        cells.push_back({"c" + std::to_string(keys.size()), q + deg});
      }
  }
  auto find = [&](std::uint32_t sub, int q, std::size_t k) {
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (keys[j].subset == sub && keys[j].q == q && keys[j].m == k) return j;
    return keys.size();
  };
  PolyMatrix d(keys.size(), keys.size(), r);
  for (std::size_t c = 0; c < keys.size(); ++c) {
    const Key& key = keys[c];
    int size = 0;
    for (int i = 0; i < r; ++i)
      if ((key.subset >> i) & 1u) ++size;
    for (int i = 0; i < r; ++i) {
      if (!((key.subset >> i) & 1u)) continue;
      const int sign = parity_sign(key.subset, i);
      const std::uint32_t rest = key.subset & ~(1u << i);
      d(find(rest, key.q, key.m), c) += Poly::variable(r, i).scaled(sign);
      const Matrix xm = x.action(i, key.q);
      for (std::size_t k2 = 0; k2 < xm.rows(); ++k2)
        if (sgn(xm(k2, key.m)))
          d(find(rest, key.q - g.codegree(i), k2), c) += Poly::constant(r, -sign * xm(k2, key.m));
    }
    const Scalar koszul = size % 2 ? -1 : 1;
    const Matrix dx = x.d(key.q);
    for (std::size_t k2 = 0; k2 < dx.rows(); ++k2)
      if (sgn(dx(k2, key.m))) d(find(key.subset, key.q - 1, k2), c) += Poly::constant(r, koszul * dx(k2, key.m));
  }
  FreeDGModule p(g, std::move(cells), std::move(d));
  p.validate();
  return p;
}

GradedVS rhom(const DGModule& x, const DGModule& y) {
  return homology_dims(hom_R(diagonal_resolution(x), y));
}

}  // namespace oracle
