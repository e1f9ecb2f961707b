#include "borel/groups.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

#include "borel/error.hpp"

namespace borel {

namespace {

Vector poly_vector(const PolyAlgebra& r, const Poly& p, int n) {
  Vector v(r.dim(n));
  for (const auto& [e, c] : p.terms()) {
    require(r.degree_of(e) == n, ErrorCode::invariant_violation, "inhomogeneous polynomial");
    v[r.index(e)] += c;
  }
  return v;
}

/// Degree n vector of the free module on `gens` with coordinate polynomials p.
Vector free_vector(const PolyAlgebra& r, const std::vector<int>& gens, int n, const std::vector<Poly>& p) {
  Vector v;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Vector part = poly_vector(r, p[i], n - gens[i]);
    v.insert(v.end(), part.begin(), part.end());
  }
  return v;
}

int max_or_zero(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

GradedVS nonzero_part(const GradedVS& v) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d) out.set_dim(n, d);
  return out;
}

GradedVS slice(const GradedVS& v, int lo, int hi) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d && lo <= n && n <= hi) out.set_dim(n, d);
  return out;
}

/// Quotient by the degrees below lo; the result is closed below.
DGModule close_below(const DGModule& m, int lo) {
  GradedVS space;
  for (int n : m.degrees())
    if (n >= lo) space.set_dim(n, m.dim(n));
  const Window& w = m.window();
  DGModule out(m.kind(), m.group(), space, Window::make(std::max(lo, w.lo), w.hi, true, w.closed_above));
  for (int n : out.degrees()) {
    if (n - 1 >= lo && m.dim(n - 1)) out.set_d(n, m.d(n));
    for (int i = 0; i < m.generator_count(); ++i) {
      const int t = n + m.generator_degree(i);
      if (t >= lo && m.dim(t) && w.contains(t)) out.set_action(i, n, m.action(i, n));
    }
  }
  return out;
}

/// Hom_A(a, b) in degrees [lo, hi] as a module over `group`; generator j acts by precomposition
/// with op(j, n) : a_n -> a_{n + op_degree[j]}.
DGModule hom_module(const DGModule& a, const DGModule& b, const GroupData& group, const Window& w,
                    const std::function<Matrix(int, int)>& op, const std::vector<int>& op_degree) {
  std::map<int, std::vector<ChainMap>> basis;
  std::map<int, Matrix> flat;
  auto flatten = [&](const std::map<int, Matrix>& blocks, int k) {
    Vector v;
    for (int n : a.degrees()) {
      const std::size_t rows = b.dim(n + k);
      if (rows == 0) continue;
      auto it = blocks.find(n);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < a.dim(n); ++j) v.push_back(it == blocks.end() ? Scalar(0) : it->second(i, j));
    }
    return v;
  };
  GradedVS space;
  for (int k = w.lo; k <= w.hi; ++k) {
    auto maps = module_maps_basis(a, b, k, false);
    if (maps.empty()) continue;
    std::vector<Vector> cols;
    for (const auto& f : maps) cols.push_back(flatten(f.blocks, k));
    flat[k] = Matrix::from_columns(cols, cols.front().size());
    space.set_dim(k, maps.size());
    basis[k] = std::move(maps);
  }
  auto express = [&](const std::map<int, Matrix>& blocks, int k) {
    const Vector v = flatten(blocks, k);
    auto it = flat.find(k);
    if (it == flat.end()) {
      require(is_zero(v), ErrorCode::invariant_violation, "map outside the computed Hom space");
      return Vector{};
    }
    const auto sol = solve(it->second, v);
    require(sol.has_value(), ErrorCode::invariant_violation, "map outside the computed Hom space");
    return *sol;
  };
  DGModule out(AlgebraKind::poly, group, space, w);
  for (const auto& [k, maps] : basis) {
    if (w.contains(k - 1) && space.dim(k - 1)) {
      Matrix d(space.dim(k - 1), maps.size());
      for (std::size_t c = 0; c < maps.size(); ++c) {
        std::map<int, Matrix> blocks;
        for (int n : a.degrees()) {
          const std::size_t rows = b.dim(n + k - 1);
          if (rows == 0) continue;
          Matrix blk(rows, a.dim(n));
          if (b.dim(n + k)) blk += b.d(n + k) * maps[c].block(n);
          if (a.dim(n - 1)) {
            Matrix t = maps[c].block(n - 1) * a.d(n);
            if (k % 2 == 0) t = -t;
            blk += t;
          }
          blocks[n] = blk;
        }
        d.set_column(c, express(blocks, k - 1));
      }
      out.set_d(k, d);
    }
    for (std::size_t j = 0; j < op_degree.size(); ++j) {
      const int t = k + op_degree[j];
      if (!w.contains(t)) continue;
      Matrix act(space.dim(t), maps.size());
      for (std::size_t c = 0; c < maps.size(); ++c) {
        std::map<int, Matrix> blocks;
        for (int n : a.degrees()) {
          const std::size_t rows = b.dim(n + t);
          const int m = n + op_degree[j];
          if (rows == 0 || a.dim(m) == 0) continue;
          blocks[n] = maps[c].block(m) * op(static_cast<int>(j), n);
        }
        const Vector v = express(blocks, t);
        if (!v.empty()) act.set_column(c, v);
      }
      out.set_action(static_cast<int>(j), k, act);
    }
  }
  return out;
}

}  // namespace

void RingMap::validate() const {
  require(static_cast<int>(images.size()) == source.rank(), ErrorCode::invalid_argument,
          "ring map needs one image per generator");
  for (int i = 0; i < source.rank(); ++i) {
    const Poly& p = images[static_cast<std::size_t>(i)];
    require(p.nvars() == target.rank() || p.is_zero(), ErrorCode::invalid_argument, "image in the wrong ring");
    if (p.is_zero()) continue;
    const auto d = p.weighted_degree(target.codegrees());
    require(d.has_value() && *d == source.codegree(i), ErrorCode::invariant_violation,
            "image of x" + std::to_string(i + 1) + " is not homogeneous of codegree " +
                std::to_string(source.codegree(i)));
  }
  require(shift() >= 0, ErrorCode::invalid_argument, "dim G - dim H is negative");
  fibre_dims();
}

std::map<int, std::size_t> RingMap::fibre_dims() const {
  const PolyAlgebra rh(target);
  const int step = std::max(1, target.max_codegree());
  const int cap = 200;
  std::map<int, std::size_t> out;
  int zero_run = 0;
  for (int c = 0; c <= cap; ++c) {
    const std::size_t dim = rh.dim(-c);
    std::vector<Vector> ideal;
    for (int i = 0; i < source.rank(); ++i) {
      const Poly& p = images[static_cast<std::size_t>(i)];
      const int rest = c - source.codegree(i);
      if (p.is_zero() || rest < 0) continue;
      for (const auto& e : rh.monomials(-rest)) ideal.push_back(poly_vector(rh, p * Poly::monomial(e), -c));
    }
    const std::size_t q = dim - (ideal.empty() ? 0 : rank(Matrix::from_columns(ideal, dim)));
    if (q) {
      out[c] = q;
      zero_run = 0;
    } else if (++zero_run >= step) {
      return out;
    }
  }
  fail(ErrorCode::not_finite, "H*(BH) is not finite over H*(BG): the quotient by the images is infinite");
}

int RingMap::fibre_top() const {
  const auto f = fibre_dims();
  return f.empty() ? 0 : f.rbegin()->first;
}

RingMap identity_ring_map(const GroupData& g) {
  RingMap r{g, g, {}, "identity " + g.describe()};
  for (int i = 0; i < g.rank(); ++i) r.images.push_back(Poly::variable(g.rank(), i));
  return r;
}

RingMap parse_ring_map(const GroupData& source, const GroupData& target, const std::vector<std::string>& images,
                       const std::string& name) {
  RingMap r{source, target, {}, name};
  for (const auto& s : images) r.images.push_back(parse_poly(s, target.rank(), "y"));
  r.validate();
  return r;
}

std::vector<RingMap> subgroup_catalog() {
  const GroupData t({2}, "T"), t2({2, 2}, "T^2"), su2({4}, "SU(2)"), su3({4, 6}, "SU(3)"), so3({4}, "SO(3)");
  return {
      parse_ring_map(su2, t, {"y^2"}, "T<SU(2)"),
      parse_ring_map(so3, t, {"y^2"}, "T<SO(3)"),
      parse_ring_map(t2, t, {"y", "y"}, "T<T^2:diagonal"),
      parse_ring_map(t2, t, {"y", "0"}, "T<T^2:first"),
      parse_ring_map(su3, su2, {"y", "0"}, "SU(2)<SU(3)"),
      parse_ring_map(su3, t2, {"y1^2 + y1*y2 + y2^2", "y1^2*y2 + y1*y2^2"}, "T^2<SU(3)"),
      parse_ring_map(t, t, {"y"}, "T=T"),
  };
}

RingMap catalog_pair(const std::string& name) {
  for (auto& r : subgroup_catalog())
    if (r.name == name) return r;
  fail(ErrorCode::unknown_group, "unknown subgroup pair '" + name + "'");
}

DGModule restrict_scalars(const RingMap& r, const DGModule& n) {
  require(n.kind() == AlgebraKind::poly && n.group() == r.target, ErrorCode::algebra_mismatch,
          "restriction needs a module over H*(BH)");
  DGModule out(AlgebraKind::poly, r.source, n.space(), n.window());
  for (const auto& [k, b] : n.differential().blocks()) out.set_d(k, b);
  for (int i = 0; i < r.source.rank(); ++i) {
    const Poly& p = r.images[static_cast<std::size_t>(i)];
    for (int k : n.degrees()) {
      const int t = k - r.source.codegree(i);
      if (!n.window().contains(t)) continue;
      out.set_action(i, k, p.is_zero() ? Matrix(n.dim(t), n.dim(k)) : poly_action(n, p, k));
    }
  }
  return out;
}

DGModule target_as_source_module(const RingMap& r, int lo) {
  return restrict_scalars(r, to_degreewise(free_rank_one(r.target), Window::make(lo, 0, false, true)));
}

DGModule extend_scalars(const RingMap& r, const DGModule& m) {
  require(m.kind() == AlgebraKind::poly && m.group() == r.source, ErrorCode::algebra_mismatch,
          "extension needs a module over H*(BG)");
  require(m.window().closed_below && m.window().closed_above, ErrorCode::not_finite_length,
          "extension of scalars needs a finite-length module");
  const GroupData& h = r.target;
  if (m.total_dim() == 0) return zero_module(AlgebraKind::poly, h);
  const PolyAlgebra rh(h);
  const auto degs = m.degrees();
  const int lo = degs.front() - r.fibre_top(), hi = degs.back();

  // F_n = sum over q of H*(BH)_{n-q} tensor M_q, blocks in increasing q.
  auto offsets = [&](int n) {
    std::map<int, std::size_t> off;
    std::size_t acc = 0;
    for (int q : degs) {
      off[q] = acc;
      acc += rh.dim(n - q) * m.dim(q);
    }
    off[INT_MAX] = acc;
    return off;
  };
  auto at = [&](const std::map<int, std::size_t>& off, int q, std::size_t mono, std::size_t e) {
    return off.at(q) + mono * m.dim(q) + e;
  };
  struct Quotient {
    std::map<int, std::size_t> off;
    Frame frame;
    std::vector<Vector> lifts;
  };
  std::map<int, Quotient> quot;
  for (int n = lo - h.max_codegree(); n <= hi; ++n) {
    Quotient qd;
    qd.off = offsets(n);
    const std::size_t total = qd.off.at(INT_MAX);
    std::vector<Vector> rels;
    for (int i = 0; i < r.source.rank(); ++i) {
      const Poly& img = r.images[static_cast<std::size_t>(i)];
      const int di = r.source.codegree(i);
      for (int q : degs) {
        const int p = n - q + di;  // degree of y^beta
        if (p > 0) continue;
        for (const auto& beta : rh.monomials(p))
          for (std::size_t e = 0; e < m.dim(q); ++e) {
            Vector v(total);
            const Poly prod = img * Poly::monomial(beta);
            for (const auto& [mono, c] : prod.terms()) v[at(qd.off, q, rh.index(mono), e)] += c;
            if (m.dim(q - di)) {
              const Vector xm = m.action(i, q) * unit_vector(m.dim(q), e);
              for (std::size_t f = 0; f < xm.size(); ++f)
                if (sgn(xm[f])) v[at(qd.off, q - di, rh.index(beta), f)] -= xm[f];
            }
            rels.push_back(std::move(v));
          }
      }
    }
    qd.frame = Frame(total, {rels});
    qd.lifts = qd.frame.chosen(1);
    quot.emplace(n, std::move(qd));
  }
  GradedVS space;
  for (int n = lo; n <= hi; ++n)
    if (!quot.at(n).lifts.empty()) space.set_dim(n, quot.at(n).lifts.size());
  require(quot.at(lo - h.max_codegree()).lifts.empty() || h.rank() == 0, ErrorCode::invariant_violation,
          "extension of scalars has classes below the fibre bound");
  DGModule out(AlgebraKind::poly, h, space, Window::closed(lo, hi));
  for (int n = lo; n <= hi; ++n) {
    const Quotient& src = quot.at(n);
    if (src.lifts.empty()) continue;
    if (n - 1 >= lo && !quot.at(n - 1).lifts.empty()) {
      const Quotient& dst = quot.at(n - 1);
      Matrix d(dst.lifts.size(), src.lifts.size());
      for (std::size_t c = 0; c < src.lifts.size(); ++c) {
        Vector v(dst.off.at(INT_MAX));
        for (int q : degs) {
          if (m.dim(q - 1) == 0) continue;
          const Matrix dm = m.d(q);
          for (std::size_t mono = 0; mono < rh.dim(n - q); ++mono)
            for (std::size_t e = 0; e < m.dim(q); ++e) {
              const Scalar& coeff = src.lifts[c][at(src.off, q, mono, e)];
              if (sgn(coeff) == 0) continue;
              for (std::size_t f = 0; f < m.dim(q - 1); ++f)
                if (sgn(dm(f, e))) v[at(dst.off, q - 1, mono, f)] += coeff * dm(f, e);
            }
        }
        d.set_column(c, dst.frame.block_coordinates(v, 1));
      }
      out.set_d(n, d);
    }
    for (int j = 0; j < h.rank(); ++j) {
      const int t = n - h.codegree(j);
      if (t < lo || quot.at(t).lifts.empty()) continue;
      const Quotient& dst = quot.at(t);
      Matrix a(dst.lifts.size(), src.lifts.size());
      for (std::size_t c = 0; c < src.lifts.size(); ++c) {
        Vector v(dst.off.at(INT_MAX));
        for (int q : degs)
          for (std::size_t mono = 0; mono < rh.dim(n - q); ++mono) {
            Exponent e = rh.monomials(n - q)[mono];
            e[static_cast<std::size_t>(j)] += 1;
            const std::size_t target_mono = rh.index(e);
            for (std::size_t k = 0; k < m.dim(q); ++k) {
              const Scalar& coeff = src.lifts[c][at(src.off, q, mono, k)];
              if (sgn(coeff)) v[at(dst.off, q, target_mono, k)] += coeff;
            }
          }
        a.set_column(c, dst.frame.block_coordinates(v, 1));
      }
      out.set_action(j, n, a);
    }
  }
  return out;
}

DGModule coextend_scalars(const RingMap& r, const DGModule& m) {
  require(m.kind() == AlgebraKind::poly && m.group() == r.source, ErrorCode::algebra_mismatch,
          "coextension needs a module over H*(BG)");
  require(m.window().closed_below, ErrorCode::unbounded, "coextension needs a module bounded below");
  const GroupData& h = r.target;
  if (m.total_dim() == 0) return zero_module(AlgebraKind::poly, h);
  const auto degs = m.degrees();
  const int klo = degs.front();
  const int khi = m.window().closed_above ? degs.back() + r.fibre_top() : m.window().hi;
  const int lo = klo - khi - r.source.max_codegree() - 1;
  const DGModule a = close_below(target_as_source_module(r, std::min(lo, 0)), std::min(lo, 0));
  const PolyAlgebra rh(h);
  std::vector<int> op_degree;
  for (int j = 0; j < h.rank(); ++j) op_degree.push_back(h.poly_degree(j));
  return hom_module(
      a, m, h, Window::make(klo, khi, true, m.window().closed_above),
      [&](int j, int n) { return free_action(rh, {0}, j, n); }, op_degree);
}

DerivedDual derived_dual(const RingMap& r, int span) {
  r.validate();
  DerivedDual out;
  out.map = r;
  const GroupData& g = r.source;
  const GroupData& h = r.target;
  const PolyAlgebra rg(g), rh(h);
  const int band = -(r.fibre_top() + std::accumulate(g.codegrees().begin(), g.codegrees().end(), 0) +
                     2 * g.max_codegree() + 2);
  const DGModule target = target_as_source_module(r, band - h.max_codegree() - 1);
  out.resolution = free_resolution_on_band(target, band);
  const ResolutionData& res = out.resolution;

  // Hilbert series certificate: sum_s (-1)^s P_s(t) prod_j (1 - t^{e_j}) = prod_i (1 - t^{d_i}).
  std::map<int, long> lhs, rhs{{0, 1}};
  auto times = [](std::map<int, long> p, int e) {
    std::map<int, long> q = p;
    for (auto [k, c] : p) q[k + e] -= c;
    return q;
  };
  for (int s = 0; s <= res.length(); ++s)
    for (int a : res.generator_degrees(s)) lhs[-a] += s % 2 ? -1 : 1;
  for (int e : h.codegrees()) lhs = times(lhs, e);
  for (int d : g.codegrees()) rhs = times(rhs, d);
  auto clean = [](std::map<int, long> p) {
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
    return p;
  };
  out.hilbert_certificate = clean(lhs) == clean(rhs);
  require(out.hilbert_certificate, ErrorCode::window_too_small, "resolution of H*(BH) is incomplete on its band");

  const FreeDGModule total = total_complex(res);
  out.dual = hom_free(total, free_rank_one(g));

  // Lift multiplication by y_j to F, then dualize.
  std::vector<PolyMatrix> actions;
  for (int j = 0; j < h.rank(); ++j) {
    const int delta = h.poly_degree(j);
    std::vector<PolyMatrix> lift;
    for (int s = 0; s <= res.length(); ++s) {
      const auto gens = res.generator_degrees(s);
      PolyMatrix l(gens.size(), gens.size(), g.rank());
      for (std::size_t c = 0; c < gens.size(); ++c) {
        const int n = gens[c] + delta;
        Vector rhs_v;
        if (s == 0) {
          rhs_v = free_action(rh, {0}, j, gens[c]) * res.augmentation[c];
        } else {
          const PolyMatrix& b = res.boundaries[static_cast<std::size_t>(s - 1)];
          std::vector<Poly> img(b.rows(), Poly(g.rank()));
          const PolyMatrix& prev = lift[static_cast<std::size_t>(s - 1)];
          for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t k = 0; k < b.rows(); ++k)
              if (!prev(i, k).is_zero() && !b(k, c).is_zero()) img[i] += prev(i, k) * b(k, c);
          rhs_v = free_vector(rg, res.generator_degrees(s - 1), n, img);
        }
        const auto sol = solve(resolution_block(res, s, n), rhs_v);
        require(sol.has_value(), ErrorCode::invariant_violation, "multiplication by y does not lift");
        const auto coords = free_coordinates(rg, gens, n, *sol);
        for (std::size_t i = 0; i < gens.size(); ++i) l(i, c) = coords[i];
      }
      lift.push_back(std::move(l));
    }
    PolyMatrix a(total.rank(), total.rank(), g.rank());
    std::size_t off = 0;
    for (const auto& l : lift) {
      for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t k = 0; k < l.cols(); ++k) a(off + k, off + i) = l(i, k);
      off += l.rows();
    }
    actions.push_back(std::move(a));
  }

  const auto degs = cell_degrees(out.dual);
  const DGModule dd = to_degreewise(out.dual, Window::make(-span, max_or_zero(degs), false, true));
  const DGModule hg = homology_module(dd);
  DGModule hd(AlgebraKind::poly, h, hg.space(), hg.window());
  for (int n : hg.degrees())
    for (int j = 0; j < h.rank(); ++j) {
      const int t = n + h.poly_degree(j);
      if (!hg.window().contains(t) || hg.dim(t) == 0) continue;
      const Matrix blk = free_block(rg, degs, degs, actions[static_cast<std::size_t>(j)], n, h.poly_degree(j));
      const HomologyPiece src = homology(dd, n), dst = homology(dd, t);
      Matrix act(dst.dim, src.dim);
      for (std::size_t c = 0; c < src.dim; ++c) act.set_column(c, dst.classify(blk * src.representatives[c]));
      hd.set_action(j, n, act);
    }
  hd.validate();
  out.homology = hd;

  const int c = r.shift();
  const Window& w = hd.window();
  bool dims_match = true;
  std::size_t generators = 0;
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!w.certifies(n)) continue;
    if (hd.dim(n) != rh.dim(n - c)) dims_match = false;
    if (hd.dim(n) == 0) continue;
    std::vector<Vector> dec;
    for (int j = 0; j < h.rank(); ++j) {
      const int above = n + h.codegree(j);
      if (!w.contains(above) || hd.dim(above) == 0) continue;
      const Matrix x = hd.action(j, above);
      for (std::size_t k = 0; k < hd.dim(above); ++k) dec.push_back(x.column(k));
    }
    const std::size_t rk = dec.empty() ? 0 : rank(Matrix::from_columns(dec, hd.dim(n)));
    generators += hd.dim(n) - rk;
    if (hd.dim(n) != rk && n != c) dims_match = false;
  }
  out.shifted_free = dims_match && generators == 1;
  return out;
}

DGModule r_shriek_left(const DerivedDual& dd, const DGModule& m) {
  const GroupData& g = dd.map.source;
  require(m.kind() == AlgebraKind::poly && m.group() == g, ErrorCode::algebra_mismatch,
          "r'_! needs a module over H*(BG)");
  require(m.window().closed_below, ErrorCode::unbounded, "r'_! needs a module bounded below");
  const FreeDGModule& f = dd.dual;
  const auto cells = cell_degrees(f);
  if (m.total_dim() == 0 || cells.empty()) return zero_module(AlgebraKind::poly, g);
  const auto mdeg = m.degrees();
  const int cmin = *std::min_element(cells.begin(), cells.end());
  const int cmax = max_or_zero(cells);
  const bool closed = m.window().closed_above;
  const int lo = mdeg.front() + cmin;
  const int hi = closed ? mdeg.back() + cmax : m.window().hi + cmin;
  const Window w = Window::make(lo, hi, true, closed);
  auto offsets = [&](int n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (int c : cells) {
      off.push_back(acc);
      acc += m.dim(n - c);
    }
    off.push_back(acc);
    return off;
  };
  GradedVS space;
  for (int n = lo; n <= hi; ++n)
    if (offsets(n).back()) space.set_dim(n, offsets(n).back());
  DGModule out(AlgebraKind::poly, g, space, w);
  for (int n : out.degrees()) {
    const auto src = offsets(n);
    if (w.contains(n - 1)) {
      const auto dst = offsets(n - 1);
      Matrix d(dst.back(), src.back());
      for (std::size_t j = 0; j < cells.size(); ++j) {
        const int q = n - cells[j];
        const std::size_t dim = m.dim(q);
        if (dim == 0) continue;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const Poly& p = f.differential()(i, j);
          if (p.is_zero()) continue;
          const int tq = n - 1 - cells[i];
          if (m.dim(tq)) d.set_block(dst[i], src[j], poly_action(m, p, q));
        }
        if (m.dim(q - 1)) {
          Matrix dm = m.d(q);
          if (cells[j] % 2) dm = -dm;
          Matrix cur = d.block(dst[j], src[j], m.dim(q - 1), dim);
          d.set_block(dst[j], src[j], cur + dm);
        }
      }
      out.set_d(n, d);
    }
    for (int i = 0; i < g.rank(); ++i) {
      const int t = n - g.codegree(i);
      if (!w.contains(t)) continue;
      const auto dst = offsets(t);
      Matrix a(dst.back(), src.back());
      for (std::size_t j = 0; j < cells.size(); ++j) {
        const int q = n - cells[j];
        if (m.dim(q) && m.dim(q - g.codegree(i))) a.set_block(dst[j], src[j], m.action(i, q));
      }
      out.set_action(i, n, a);
    }
  }
  return out;
}

ShriekComparison compare_shriek(const DerivedDual& d, const DGModule& m) {
  ShriekComparison out;
  const DGModule t = r_shriek_left(d, m);
  const DGModule c = coextend_scalars(d.map, m);
  // Derived coextension, restricted back to H*(BG)-dimensions.
  const DGModule h = hom_R(total_complex(d.resolution), m);
  const GradedVS ht = nonzero_part(homology_dims(t));
  const GradedVS hc = nonzero_part(homology_dims(c));
  const GradedVS hh = nonzero_part(homology_dims(h));
  int lo = INT_MIN, hi = INT_MAX;
  for (const Window* w : {&t.window(), &c.window(), &h.window()}) {
    if (!w->closed_below) lo = std::max(lo, w->guaranteed_lo);
    if (!w->closed_above) hi = std::min(hi, w->guaranteed_hi);
  }
  out.tensor = slice(ht, lo, hi);
  out.coextension = slice(hc, lo, hi);
  out.derived_coextension = slice(hh, lo, hi);
  out.agree = out.tensor == out.derived_coextension;
  return out;
}

DGModule r_upper_shriek(const DerivedDual& d, const DGModule& n) {
  const GroupData& h = d.map.target;
  require(n.kind() == AlgebraKind::poly && n.group() == h, ErrorCode::algebra_mismatch,
          "r^! needs a module over H*(BH)");
  require(n.window().closed_below, ErrorCode::unbounded, "r^! needs a module bounded below");
  if (n.total_dim() == 0) return zero_module(AlgebraKind::poly, h);
  const DGModule& hd = d.homology;
  const auto hdeg = hd.degrees();
  const int top = max_or_zero(hdeg);
  const auto ndeg = n.degrees();
  const bool closed = n.window().closed_above;
  const int klo = ndeg.front() - top - 2;
  const int khi = closed ? ndeg.back() - d.map.shift() + 2 : n.window().hi - top;
  require(hd.window().guaranteed_lo <= ndeg.front() - khi - h.max_codegree() - 1, ErrorCode::window_too_small,
          "the derived dual is not stored far enough down for r^!");
  std::vector<int> op_degree;
  for (int j = 0; j < h.rank(); ++j) op_degree.push_back(h.poly_degree(j));
  return hom_module(
      close_below(hd, hd.window().guaranteed_lo), n, h, Window::make(klo, khi, false, false),
      [&](int j, int k) { return hd.action(j, k); }, op_degree);
}

ShiftLawReport shift_law_check(const DerivedDual& d, const DGModule& n) {
  ShiftLawReport rep;
  rep.c = d.map.shift();
  const DGModule u = r_upper_shriek(d, n);
  const DGModule s = shift(restrict_scalars(d.map, n), -rep.c);
  rep.lo = u.window().guaranteed_lo;
  rep.hi = u.window().guaranteed_hi;
  if (n.total_dim() == 0) {
    rep.lo = 0;
    rep.hi = -1;
  }
  if (!s.window().closed_above) rep.hi = std::min(rep.hi, s.window().guaranteed_hi);
  rep.upper_shriek = slice(nonzero_part(homology_dims(u)), rep.lo, rep.hi);
  rep.shifted_restriction = slice(nonzero_part(homology_dims(s)), rep.lo, rep.hi);
  rep.agree = rep.upper_shriek == rep.shifted_restriction;
  return rep;
}

AdjunctionReport adjunction_check(const RingMap& r, const DGModule& m, const DGModule& n, int lo, int hi) {
  AdjunctionReport rep;
  const DGModule ext = extend_scalars(r, m);
  const DGModule res = restrict_scalars(r, n);
  const DGModule coext = coextend_scalars(r, m);
  rep.agree = true;
  for (int k = lo; k <= hi; ++k) {
    AdjunctionRow row;
    row.degree = k;
    row.extension_side = module_maps_dimension(ext, n, k, true);
    row.restriction_side = module_maps_dimension(m, res, k, true);
    row.restriction_left = module_maps_dimension(res, m, k, true);
    row.coextension_side = module_maps_dimension(n, coext, k, true);
    if (row.extension_side != row.restriction_side || row.restriction_left != row.coextension_side) rep.agree = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace borel
