#include "borel/resolve.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "borel/error.hpp"

namespace borel {

std::vector<std::size_t> ResolutionData::betti() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.rank());
  return out;
}

std::vector<std::pair<int, std::size_t>> ResolutionData::injective_term(int s) const {
  std::map<int, std::size_t> count;
  for (int a : generator_degrees(s)) ++count[-a];
  return {count.begin(), count.end()};
}

namespace {

/// Columns of `candidates` that extend span(spanning), chosen greedily in order.
std::vector<Vector> complement(const std::vector<Vector>& spanning, const std::vector<Vector>& candidates,
                               std::size_t dim) {
  if (candidates.empty()) return {};
  Matrix m(dim, spanning.size() + candidates.size());
  for (std::size_t j = 0; j < spanning.size(); ++j) m.set_column(j, spanning[j]);
  for (std::size_t j = 0; j < candidates.size(); ++j) m.set_column(spanning.size() + j, candidates[j]);
  std::vector<Vector> out;
  for (auto c : reduced_row_echelon(m).pivot_columns)
    if (c >= spanning.size()) out.push_back(candidates[c - spanning.size()]);
  return out;
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

/// Sum of the s largest (or smallest) codegrees.
int extreme_sum(std::vector<int> d, int s, bool largest) {
  std::sort(d.begin(), d.end());
  if (largest) std::reverse(d.begin(), d.end());
  return std::accumulate(d.begin(), d.begin() + s, 0);
}

/// Minimal generators of a graded submodule K of an ambient module, found on [lo, hi].
///   kernel(n): basis of K_n;  act(i, n): x_i on the ambient module from degree n.
template <class Kernel, class Act>
std::vector<std::pair<int, Vector>> minimal_generators(const GroupData& g, int lo, int hi, Kernel kernel, Act act) {
  std::vector<std::pair<int, Vector>> out;
  std::map<int, std::vector<Vector>> cache;
  auto k_at = [&](int n) -> const std::vector<Vector>& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, kernel(n)).first;
    return it->second;
  };
  for (int n = hi; n >= lo; --n) {
    const auto& k = k_at(n);
    if (k.empty()) continue;
    std::vector<Vector> decomposable;
    for (int i = 0; i < g.rank(); ++i) {
      const int above = n + g.codegree(i);
      const auto& ka = k_at(above);
      if (ka.empty()) continue;
      const Matrix x = act(i, above);
      for (const auto& v : ka) decomposable.push_back(x * v);
    }
    for (auto& v : complement(decomposable, k, k.front().size())) out.emplace_back(n, std::move(v));
  }
  return out;
}

void verify_free_resolution(const ResolutionData& res, int band_lo, int band_hi) {
  const int len = res.length();
  for (int s = 0; s + 1 < len; ++s)
    require((res.boundaries[static_cast<std::size_t>(s)] * res.boundaries[static_cast<std::size_t>(s + 1)]).is_zero(),
            ErrorCode::composition_not_zero, "consecutive boundaries compose to nonzero");
  for (const auto& b : res.boundaries)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        require(sgn(b(i, j).constant_term()) == 0, ErrorCode::invariant_violation,
                "resolution is not minimal: unit entry in a boundary");
  const PolyAlgebra r(res.module.group());
  for (int n = band_lo; n <= band_hi; ++n) {
    long euler = 0;
    std::size_t previous_rank = 0;
    for (int s = 0; s <= len; ++s) {
      const auto gens = res.generator_degrees(s);
      const std::size_t dim = free_dim(r, gens, n);
      euler += (s % 2 ? -1 : 1) * static_cast<long>(dim);
      const Matrix b = resolution_block(res, s, n);
      const std::size_t rk = rank(b);
      if (s == 0)
        require(rk == res.resolved.dim(n), ErrorCode::invariant_violation,
                "augmentation is not surjective in degree " + std::to_string(n));
      else
        require(rk == free_dim(r, res.generator_degrees(s - 1), n) - previous_rank,
                ErrorCode::invariant_violation, "resolution is not exact in degree " + std::to_string(n));
      if (s == 1 && b.cols() && resolution_block(res, 0, n).rows())
        require((resolution_block(res, 0, n) * b).is_zero(), ErrorCode::composition_not_zero,
                "augmentation does not vanish on boundaries");
      previous_rank = rk;
    }
    if (len >= 0)
      require(previous_rank == free_dim(r, res.generator_degrees(len), n), ErrorCode::invariant_violation,
              "last term has a kernel in degree " + std::to_string(n));
    require(euler == static_cast<long>(res.resolved.dim(n)), ErrorCode::invariant_violation,
            "Hilbert identity fails in degree " + std::to_string(n));
  }
}

}  // namespace

ResolutionData minimal_free_resolution(const DGModule& m, std::optional<Window> search) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "free resolutions need a polynomial module");
  const Window& w = m.window();
  require(w.closed_below && w.closed_above, ErrorCode::not_finite_length,
          "free resolutions need a finite-length module");
  require(m.has_zero_differential(), ErrorCode::invalid_argument, "free resolutions need zero differential");
  const GroupData& g = m.group();
  const int r = g.rank();
  const PolyAlgebra R(g);
  ResolutionData res;
  res.kind = ResolutionData::Kind::free;
  res.module = m;
  res.resolved = m;
  if (m.total_dim() == 0) return res;
  const auto degs = m.degrees();
  const int min_m = degs.front(), max_m = degs.back();
  auto lower = [&](int s) { return min_m - extreme_sum(g.codegrees(), s, true); };
  auto upper = [&](int s) { return max_m - extreme_sum(g.codegrees(), s, false); };
  if (search)
    require(search->lo <= lower(r) && search->hi >= max_m, ErrorCode::window_too_small,
            "generator search needs degrees [" + std::to_string(lower(r)) + ", " + std::to_string(max_m) + "]");

  // F_0 from M / mM.
  const auto top = minimal_generators(
      g, min_m, max_m, [&](int n) { return columns_of(Matrix::identity(m.dim(n))); },
      [&](int i, int n) { return m.action(i, n); });
  std::vector<FreeDGModule::Cell> cells;
  for (const auto& [n, v] : top) {
    cells.push_back({"g0." + std::to_string(cells.size() + 1), n});
    res.augmentation.push_back(v);
  }
  res.terms.emplace_back(g, cells, PolyMatrix(cells.size(), cells.size(), r));

  for (int s = 1; s <= r; ++s) {
    const auto prev = res.generator_degrees(s - 1);
    const auto gens = minimal_generators(
        g, lower(s), upper(s), [&](int n) { return kernel_basis(resolution_block(res, s - 1, n)); },
        [&](int i, int n) { return free_action(R, prev, i, n); });
    if (gens.empty()) break;
    std::vector<FreeDGModule::Cell> cs;
    PolyMatrix b(prev.size(), gens.size(), r);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      cs.push_back({"g" + std::to_string(s) + "." + std::to_string(j + 1), gens[j].first});
      const auto coords = free_coordinates(R, prev, gens[j].first, gens[j].second);
      for (std::size_t i = 0; i < prev.size(); ++i) b(i, j) = coords[i];
    }
    res.terms.emplace_back(g, cs, PolyMatrix(cs.size(), cs.size(), r));
    res.boundaries.push_back(std::move(b));
  }
  verify_free_resolution(res, lower(r) - g.max_codegree(), max_m);
  return res;
}

ResolutionData free_resolution_on_band(const DGModule& m, int lo) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "free resolutions need a polynomial module");
  require(m.has_zero_differential(), ErrorCode::invalid_argument, "free resolutions need zero differential");
  const Window& w = m.window();
  require(w.closed_above, ErrorCode::unbounded, "band resolutions need a module bounded above");
  require(w.closed_below || w.lo <= lo, ErrorCode::window_too_small,
          "module is not stored down to degree " + std::to_string(lo));
  const GroupData& g = m.group();
  const int r = g.rank();
  const PolyAlgebra R(g);
  ResolutionData res;
  res.kind = ResolutionData::Kind::free;
  res.module = m;
  res.resolved = m;
  if (m.total_dim() == 0) return res;
  const int top = m.degrees().back();
  const auto tops = minimal_generators(
      g, lo, top, [&](int n) { return columns_of(Matrix::identity(m.dim(n))); },
      [&](int i, int n) { return m.action(i, n); });
  std::vector<FreeDGModule::Cell> cells;
  for (const auto& [n, v] : tops) {
    cells.push_back({"g0." + std::to_string(cells.size() + 1), n});
    res.augmentation.push_back(v);
  }
  res.terms.emplace_back(g, cells, PolyMatrix(cells.size(), cells.size(), r));
  for (int s = 1; s <= r; ++s) {
    const auto prev = res.generator_degrees(s - 1);
    const auto gens = minimal_generators(
        g, lo, top, [&](int n) { return kernel_basis(resolution_block(res, s - 1, n)); },
        [&](int i, int n) { return free_action(R, prev, i, n); });
    if (gens.empty()) break;
    std::vector<FreeDGModule::Cell> cs;
    PolyMatrix b(prev.size(), gens.size(), r);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      cs.push_back({"g" + std::to_string(s) + "." + std::to_string(j + 1), gens[j].first});
      const auto coords = free_coordinates(R, prev, gens[j].first, gens[j].second);
      for (std::size_t i = 0; i < prev.size(); ++i) b(i, j) = coords[i];
    }
    res.terms.emplace_back(g, cs, PolyMatrix(cs.size(), cs.size(), r));
    res.boundaries.push_back(std::move(b));
  }
  verify_free_resolution(res, lo, top);
  return res;
}

ResolutionData injective_resolution(const DGModule& m) {
  ResolutionData res = minimal_free_resolution(matlis_dual(m));
  res.kind = ResolutionData::Kind::injective;
  res.module = m;
  return res;
}

Matrix resolution_block(const ResolutionData& res, int s, int n) {
  const PolyAlgebra R(res.resolved.group());
  if (s == 0) return evaluate_on_cells(res.terms.front(), res.augmentation, res.resolved, n);
  const auto src = res.generator_degrees(s);
  if (s > res.length()) return Matrix(0, 0);
  return free_block(R, src, res.generator_degrees(s - 1), res.boundaries[static_cast<std::size_t>(s - 1)], n);
}

DGModule injective_term_module(const ResolutionData& res, int s, const Window& w) {
  return matlis_dual(to_degreewise(res.terms[static_cast<std::size_t>(s)], Window::make(-w.hi, -w.lo, false, false)));
}

Matrix injective_coboundary(const ResolutionData& res, int s, int n) {
  if (s + 1 > res.length()) {
    const PolyAlgebra R(res.resolved.group());
    return Matrix(0, free_dim(R, res.generator_degrees(s), -n));
  }
  return resolution_block(res, s + 1, -n).transpose();
}

FreeDGModule total_complex(const ResolutionData& res) {
  const GroupData& g = res.resolved.group();
  std::vector<FreeDGModule::Cell> cells;
  std::vector<std::size_t> offset;
  for (int s = 0; s <= res.length(); ++s) {
    offset.push_back(cells.size());
    for (const auto& c : res.terms[static_cast<std::size_t>(s)].cells()) cells.push_back({c.label, c.degree + s});
  }
  PolyMatrix d(cells.size(), cells.size(), g.rank());
  for (int s = 1; s <= res.length(); ++s) {
    const PolyMatrix& b = res.boundaries[static_cast<std::size_t>(s - 1)];
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        d(offset[static_cast<std::size_t>(s - 1)] + i, offset[static_cast<std::size_t>(s)] + j) = b(i, j);
  }
  return FreeDGModule(g, std::move(cells), std::move(d));
}

std::size_t BigradedTable::at(int s, int t) const {
  auto it = entries.find({s, t});
  return it == entries.end() ? 0 : it->second;
}

void BigradedTable::set(int s, int t, std::size_t d) {
  if (d)
    entries[{s, t}] = d;
  else
    entries.erase({s, t});
}

int BigradedTable::max_row() const {
  int out = -1;
  for (const auto& [k, d] : entries) out = std::max(out, k.first);
  return out;
}

GradedVS BigradedTable::total() const {
  GradedVS out;
  for (const auto& [k, d] : entries) out.set_dim(k.second - k.first, out.dim(k.second - k.first) + d);
  return out;
}

namespace {

void require_ext_input(const DGModule& m, const char* name) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, std::string(name) + " must be a polynomial module");
  require(m.window().closed_below && m.window().closed_above, ErrorCode::not_finite_length,
          std::string(name) + " must have finite length");
  require(m.has_zero_differential(), ErrorCode::invalid_argument, std::string(name) + " must have zero differential");
}

BigradedTable ext_via_free(const DGModule& m, const DGModule& n) {
  BigradedTable out;
  const ResolutionData res = minimal_free_resolution(m);
  const int len = res.length();
  const auto ndeg = n.degrees();
  int tmin = INT_MAX, tmax = INT_MIN;
  for (int s = 0; s <= len; ++s)
    for (int a : res.generator_degrees(s)) {
      tmin = std::min(tmin, ndeg.front() - a);
      tmax = std::max(tmax, ndeg.back() - a);
    }
  for (int t = tmin; t <= tmax; ++t) {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;  // ranks[s] = rank of C^s -> C^{s+1}
    for (int s = 0; s <= len; ++s) {
      std::size_t dim = 0;
      for (int a : res.generator_degrees(s)) dim += n.dim(a + t);
      dims.push_back(dim);
    }
    for (int s = 0; s < len; ++s) {
      const auto src = res.generator_degrees(s);
      const auto dst = res.generator_degrees(s + 1);
      const PolyMatrix& b = res.boundaries[static_cast<std::size_t>(s)];
      Matrix delta(dims[static_cast<std::size_t>(s + 1)], dims[static_cast<std::size_t>(s)]);
      std::size_t row = 0;
      for (std::size_t h = 0; h < dst.size(); ++h) {
        std::size_t col = 0;
        for (std::size_t j = 0; j < src.size(); ++j) {
          if (!b(j, h).is_zero() && n.dim(src[j] + t) && n.dim(dst[h] + t))
            delta.set_block(row, col, poly_action(n, b(j, h), src[j] + t));
          col += n.dim(src[j] + t);
        }
        row += n.dim(dst[h] + t);
      }
      ranks.push_back(rank(delta));
    }
    for (int s = 0; s <= len; ++s) {
      const std::size_t in = s > 0 ? ranks[static_cast<std::size_t>(s - 1)] : 0;
      const std::size_t outr = s < len ? ranks[static_cast<std::size_t>(s)] : 0;
      out.set(s, t, dims[static_cast<std::size_t>(s)] - in - outr);
    }
  }
  return out;
}

Vector flatten(const std::vector<Matrix>& blocks) {
  std::vector<Scalar> out;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(b(i, j));
  return Vector(out.begin(), out.end());
}

BigradedTable ext_via_injective(const DGModule& m, const DGModule& n) {
  BigradedTable out;
  const ResolutionData res = injective_resolution(n);
  const int len = res.length();
  const auto mdeg = m.degrees();
  const int min_m = mdeg.front(), max_m = mdeg.back();
  int tmin = INT_MAX, tmax = INT_MIN;
  for (int s = 0; s <= len; ++s)
    for (int a : res.generator_degrees(s)) {
      tmin = std::min(tmin, -a - max_m);
      tmax = std::max(tmax, -a - min_m);
    }
  const int maxd = m.group().max_codegree();
  for (int t = tmin; t <= tmax; ++t) {
    const Window w = Window::make(min_m + t - maxd, max_m + t, false, false);
    std::vector<std::size_t> dims, ranks;
    for (int s = 0; s <= len; ++s) {
      const DGModule j = injective_term_module(res, s, w);
      const auto basis = module_maps_basis(m, j, t, false);
      dims.push_back(basis.size());
      if (s == len || basis.empty()) {
        if (s < len) ranks.push_back(0);
        continue;
      }
      std::vector<Vector> images;
      for (const auto& f : basis) {
        std::vector<Matrix> blocks;
        for (int q : mdeg) blocks.push_back(injective_coboundary(res, s, q + t) * f.block(q));
        images.push_back(flatten(blocks));
      }
      ranks.push_back(rank(Matrix::from_columns(images, images.front().size())));
    }
    for (int s = 0; s <= len; ++s) {
      const std::size_t in = s > 0 ? ranks[static_cast<std::size_t>(s - 1)] : 0;
      const std::size_t outr = s < len ? ranks[static_cast<std::size_t>(s)] : 0;
      out.set(s, t, dims[static_cast<std::size_t>(s)] - in - outr);
    }
  }
  return out;
}

}  // namespace

BigradedTable ext_bigraded(const DGModule& m, const DGModule& n, ExtRoute route) {
  require_ext_input(m, "first argument");
  require_ext_input(n, "second argument");
  require(m.group() == n.group(), ErrorCode::algebra_mismatch, "Ext arguments over different algebras");
  if (m.total_dim() == 0 || n.total_dim() == 0) return {};
  return route == ExtRoute::via_free ? ext_via_free(m, n) : ext_via_injective(m, n);
}

SemifreeReplacement semifree_replacement(const DGModule& x) {
  require(x.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "semifree replacement needs a polynomial module");
  require(x.window().closed_below && x.window().closed_above, ErrorCode::not_finite_length,
          "semifree replacement needs a finite module");
  const GroupData& g = x.group();
  const PolyAlgebra R(g);
  SemifreeReplacement p{FreeDGModule(g, {}, PolyMatrix(0, 0, g.rank())), {}};
  if (x.total_dim() == 0) return p;
  const auto degs = x.degrees();
  const int lowest = degs.front() - g.dim();
  const int band = 2 * std::max(g.max_codegree(), 1) + 1;
  const int stop = lowest - band;

  // cone_n = X_n + P_{n-1},  d(x, p) = (dx + phi p, -dp).
  auto cone_d = [&](int n) {
    const auto cd = cell_degrees(p.cells);
    const std::size_t xs = x.dim(n), ps = free_dim(R, cd, n - 1);
    const std::size_t xt = x.dim(n - 1), pt = free_dim(R, cd, n - 2);
    Matrix d(xt + pt, xs + ps);
    if (xs && xt) d.set_block(0, 0, x.d(n));
    if (ps && xt) d.set_block(0, xs, p.block(x, n - 1));
    if (ps && pt) d.set_block(xt, xs, -free_block(R, cd, cd, p.cells.differential(), n - 1, -1));
    return d;
  };
  int last_cell = INT_MAX;
  for (int n = degs.back(); n >= stop; --n) {
    const Matrix d_out = cone_d(n);
    const HomologyPiece h = homology_from_blocks(cone_d(n + 1), d_out, n, d_out.cols());
    if (h.dim == 0) continue;
    const std::size_t xs = x.dim(n);
    std::vector<FreeDGModule::Cell> cells;
    std::vector<Vector> boundaries;
    for (const auto& v : h.representatives) {
      Vector xpart(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(xs));
      Vector q(v.begin() + static_cast<std::ptrdiff_t>(xs), v.end());
      for (auto& c : q) c = -c;
      cells.push_back({"c" + std::to_string(p.cells.rank() + cells.size() + 1), n});
      boundaries.push_back(std::move(q));
      p.images.push_back(std::move(xpart));
    }
    p.cells = attach_cells(p.cells, cells, boundaries);
    last_cell = n;
  }
  require(last_cell > stop + g.max_codegree(), ErrorCode::window_too_small,
          "cell attachment did not stop above degree " + std::to_string(stop + g.max_codegree()));
  p.cells.validate();
  return p;
}

GradedVS rhom_homology(const DGModule& x, const DGModule& y, const Window& w) {
  require(x.group() == y.group() && y.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch,
          "derived Hom arguments over different algebras");
  const DGModule h = hom_R(semifree_replacement(x).cells, y);
  GradedVS out;
  for (int n = w.lo; n <= w.hi; ++n) {
    require(h.window().certifies(n), ErrorCode::window_too_small, "derived Hom is not certified in degree " + std::to_string(n));
    if (h.dim(n) == 0) continue;
    const std::size_t d = homology(h, n).dim;
    if (d) out.set_dim(n, d);
  }
  return out;
}

GradedVS rhom_homology(const DGModule& x, const DGModule& y) {
  const DGModule h = hom_R(semifree_replacement(x).cells, y);
  const GradedVS all = homology_dims(h);
  GradedVS out;
  for (auto [n, d] : all.dims())
    if (d) out.set_dim(n, d);
  return out;
}

std::map<int, std::size_t> hilbert_function(const DGModule& m, int lo, int hi) {
  std::map<int, std::size_t> out;
  for (int n = lo; n <= hi; ++n) out[n] = m.dim(n);
  return out;
}

std::map<int, std::size_t> hilbert_function(const FreeDGModule& f, int lo, int hi) {
  const PolyAlgebra R(f.group());
  const auto degs = cell_degrees(f);
  std::map<int, std::size_t> out;
  for (int n = lo; n <= hi; ++n) out[n] = free_dim(R, degs, n);
  return out;
}

}  // namespace borel
