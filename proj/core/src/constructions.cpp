#include "borel/constructions.hpp"

#include <algorithm>
#include <climits>

#include "borel/error.hpp"

namespace borel {

std::string subset_label(std::uint32_t subset, const std::string& letter) {
  if (subset == 0) return "1";
  std::string out = letter;
  for (int i = 0; i < 32; ++i)
    if (contains(subset, i)) out += std::to_string(i + 1);
  return out;
}

FreeDGModule koszul_stage(const GroupData& g, int stage) {
  require(stage >= 0 && stage <= g.rank(), ErrorCode::invalid_argument, "Koszul stage out of range");
  const int r = g.rank();
  const std::uint32_t count = 1u << stage;
  std::vector<FreeDGModule::Cell> cells;
  for (std::uint32_t s = 0; s < count; ++s) {
    int deg = 0;
    for (int i = 0; i < stage; ++i)
      if (contains(s, i)) deg += 1 - g.codegree(i);
    cells.push_back({subset_label(s), deg});
  }
  PolyMatrix d(count, count, r);
  for (std::uint32_t s = 0; s < count; ++s)
    for (int i = 0; i < stage; ++i)
      if (contains(s, i)) d(s & ~(1u << i), s) = Poly::variable(r, i).scaled(sign_before(s, i));
  FreeDGModule f(g, std::move(cells), std::move(d));
  f.validate();
  return f;
}

FreeDGModule koszul_model(const GroupData& g) { return koszul_stage(g, g.rank()); }

FreeDGModule free_rank_one(const GroupData& g, int degree) {
  return FreeDGModule(g, {{"1", degree}}, PolyMatrix(1, 1, g.rank()));
}

namespace {

/// Offsets of each cell block inside degree n of the degreewise expansion.
std::vector<std::size_t> cell_offsets(const FreeDGModule& f, const PolyAlgebra& R, int n) {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (const auto& c : f.cells()) {
    off.push_back(acc);
    acc += R.dim(n - c.degree);
  }
  off.push_back(acc);
  return off;
}

std::string monomial_label(const Exponent& e, const std::string& var) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += var + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

DGModule to_degreewise(const FreeDGModule& f, const Window& w) {
  const GroupData& g = f.group();
  if (f.rank() == 0 || w.is_empty()) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::empty());
  const PolyAlgebra R(g);
  const int top = f.max_degree();
  const int hi = std::min(w.hi, top);
  const bool ca = w.hi >= top;
  const bool cb = g.rank() == 0 && w.lo <= f.min_degree();
  const int lo = w.lo;
  if (lo > hi) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::make(w.lo, w.hi, cb, true));
  const Window win = Window::make(lo, hi, cb, ca);
  GradedVS space;
  for (int n = lo; n <= hi; ++n) {
    const auto off = cell_offsets(f, R, n);
    if (off.back() == 0) continue;
    space.set_dim(n, off.back());
    std::vector<std::string> labels;
    for (const auto& c : f.cells())
      for (const auto& e : R.monomials(n - c.degree)) {
        const std::string m = monomial_label(e, "x");
        labels.push_back(m == "1" ? c.label : (c.label == "1" ? m : m + "*" + c.label));
      }
    space.set_labels(n, std::move(labels));
  }
  DGModule out(AlgebraKind::poly, g, space, win);
  for (int n : out.degrees()) {
    const auto src = cell_offsets(f, R, n);
    if (win.contains(n - 1)) {
      const auto dst = cell_offsets(f, R, n - 1);
      Matrix d(out.dim(n - 1), out.dim(n));
      for (std::size_t j = 0; j < f.rank(); ++j) {
        const auto& mons = R.monomials(n - f.cells()[j].degree);
        for (std::size_t k = 0; k < mons.size(); ++k)
          for (std::size_t i = 0; i < f.rank(); ++i) {
            const Poly& p = f.differential()(i, j);
            for (const auto& [e, c] : p.terms()) {
              const Exponent prod = add_exponents(mons[k], e);
              d(dst[i] + R.index(prod), src[j] + k) += c;
            }
          }
      }
      out.set_d(n, d);
    }
    for (int v = 0; v < g.rank(); ++v) {
      const int t = n - g.codegree(v);
      if (!win.contains(t)) continue;
      const auto dst = cell_offsets(f, R, t);
      Matrix a(out.dim(t), out.dim(n));
      for (std::size_t j = 0; j < f.rank(); ++j) {
        const auto& mons = R.monomials(n - f.cells()[j].degree);
        for (std::size_t k = 0; k < mons.size(); ++k) {
          Exponent e = mons[k];
          e[static_cast<std::size_t>(v)] += 1;
          a(dst[j] + R.index(e), src[j] + k) = 1;
        }
      }
      out.set_action(v, n, a);
    }
  }
  return out;
}

DGModule residue_field(const GroupData& g, int n) {
  GradedVS space;
  space.set_dim(n, 1);
  space.set_labels(n, {"1"});
  return DGModule(AlgebraKind::poly, g, space, Window::closed(n, n));
}

DGModule basic_injective(const GroupData& g, const Window& w) {
  const PolyAlgebra R(g);
  const int lo = std::max(0, w.lo);
  const bool cb = w.lo <= 0;
  const bool finite = g.rank() == 0;
  const int hi = finite ? std::min(w.hi, 0) : w.hi;
  const bool ca = finite && w.hi >= 0;
  if (w.is_empty() || lo > hi) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::make(0, -1, cb, ca));
  const Window win = Window::make(lo, hi, cb, ca);
  GradedVS space;
  for (int n = lo; n <= hi; ++n) {
    const auto& mons = R.monomials(-n);
    if (mons.empty()) continue;
    space.set_dim(n, mons.size());
    std::vector<std::string> labels;
    for (const auto& e : mons) labels.push_back("(" + monomial_label(e, "x") + ")*");
    space.set_labels(n, std::move(labels));
  }
  DGModule out(AlgebraKind::poly, g, space, win);
  for (int n : out.degrees())
    for (int v = 0; v < g.rank(); ++v) {
      const int t = n - g.codegree(v);
      if (!win.contains(t)) continue;
      const auto& mons = R.monomials(-n);
      Matrix a(out.dim(t), out.dim(n));
      for (std::size_t k = 0; k < mons.size(); ++k) {
        Exponent e = mons[k];
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        e[static_cast<std::size_t>(v)] -= 1;
        a(R.index(e), k) = 1;
      }
      out.set_action(v, n, a);
    }
  return out;
}

DGModule monomial_quotient(const GroupData& g, const std::vector<Exponent>& relations, int shift) {
  const int r = g.rank();
  std::vector<int> bound(static_cast<std::size_t>(r), INT_MAX);
  for (const auto& e : relations) {
    require(static_cast<int>(e.size()) == r, ErrorCode::invalid_argument, "relation has wrong length");
    int nonzero = -1;
    int count = 0;
    for (int i = 0; i < r; ++i)
      if (e[static_cast<std::size_t>(i)] > 0) {
        nonzero = i;
        ++count;
      }
    if (count == 0) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::empty());
    if (count == 1)
      bound[static_cast<std::size_t>(nonzero)] =
          std::min(bound[static_cast<std::size_t>(nonzero)], e[static_cast<std::size_t>(nonzero)]);
  }
  for (int b : bound)
    require(b != INT_MAX, ErrorCode::not_finite_length,
            "monomial quotient needs a pure power of every variable");
  auto standard = [&](const Exponent& e) {
    for (const auto& rel : relations) {
      bool divides = true;
      for (int i = 0; i < r; ++i)
        if (rel[static_cast<std::size_t>(i)] > e[static_cast<std::size_t>(i)]) divides = false;
      if (divides) return false;
    }
    return true;
  };
  const PolyAlgebra R(g);
  int max_codeg = 0;
  for (int i = 0; i < r; ++i) max_codeg += (bound[static_cast<std::size_t>(i)] - 1) * g.codegree(i);
  std::map<int, std::vector<Exponent>> basis;
  for (int c = 0; c <= max_codeg; ++c)
    for (const auto& e : R.monomials(-c))
      if (standard(e)) basis[-c + shift].push_back(e);
  GradedVS space;
  for (const auto& [n, b] : basis) {
    space.set_dim(n, b.size());
    std::vector<std::string> labels;
    for (const auto& e : b) labels.push_back(monomial_label(e, "x"));
    space.set_labels(n, std::move(labels));
  }
  const int lo = basis.empty() ? shift : basis.begin()->first;
  const int hi = basis.empty() ? shift : basis.rbegin()->first;
  DGModule out(AlgebraKind::poly, g, space, Window::closed(lo, hi));
  for (const auto& [n, b] : basis)
    for (int v = 0; v < r; ++v) {
      const int t = n - g.codegree(v);
      auto it = basis.find(t);
      if (it == basis.end()) continue;
      Matrix a(it->second.size(), b.size());
      for (std::size_t k = 0; k < b.size(); ++k) {
        Exponent e = b[k];
        e[static_cast<std::size_t>(v)] += 1;
        auto pos = std::find(it->second.begin(), it->second.end(), e);
        if (pos != it->second.end()) a(static_cast<std::size_t>(pos - it->second.begin()), k) = 1;
      }
      out.set_action(v, n, a);
    }
  return out;
}

DGModule exterior_quotient(const GroupData& g, const std::vector<std::uint32_t>& relations, int shift) {
  const ExtAlgebra L(g);
  auto allowed = [&](std::uint32_t s) {
    for (auto rel : relations)
      if ((s & rel) == rel) return false;
    return true;
  };
  std::map<int, std::vector<std::uint32_t>> basis;
  for (int deg : L.degrees())
    for (auto s : L.subsets(deg))
      if (allowed(s)) basis[deg + shift].push_back(s);
  GradedVS space;
  for (const auto& [n, b] : basis) {
    space.set_dim(n, b.size());
    std::vector<std::string> labels;
    for (auto s : b) labels.push_back(subset_label(s, "a"));
    space.set_labels(n, std::move(labels));
  }
  if (basis.empty()) return DGModule(AlgebraKind::ext, g, GradedVS{}, Window::empty());
  DGModule out(AlgebraKind::ext, g, space,
               Window::closed(basis.begin()->first, basis.rbegin()->first));
  const Scalar parity = (shift % 2 == 0) ? 1 : -1;
  for (const auto& [n, b] : basis)
    for (int i = 0; i < g.rank(); ++i) {
      const int t = n + g.ext_degree(i);
      auto it = basis.find(t);
      if (it == basis.end()) continue;
      Matrix a(it->second.size(), b.size());
      for (std::size_t k = 0; k < b.size(); ++k) {
        const int sign = exterior_left_sign(b[k], i);
        if (sign == 0) continue;
        const std::uint32_t target = b[k] | (1u << i);
        auto pos = std::find(it->second.begin(), it->second.end(), target);
        if (pos != it->second.end())
          a(static_cast<std::size_t>(pos - it->second.begin()), k) = parity * sign;
      }
      out.set_action(i, n, a);
    }
  return out;
}

DGModule hom_R(const FreeDGModule& f, const DGModule& m) {
  require(m.kind() == AlgebraKind::poly && m.group() == f.group(), ErrorCode::algebra_mismatch,
          "hom_R needs a module over the same polynomial algebra");
  const GroupData& g = f.group();
  const Window& w = m.window();
  if (f.rank() == 0 || (w.is_empty() && w.closed_below && w.closed_above))
    return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::empty());
  if (w.is_empty()) return DGModule(AlgebraKind::poly, g, GradedVS{}, w);
  const int bmin = f.min_degree();
  const int bmax = f.max_degree();
  const int lo = w.closed_below ? w.lo - bmax : w.lo - bmin;
  const int hi = w.closed_above ? w.hi - bmin : w.hi - bmax;
  if (lo > hi) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::make(0, -1, false, false));
  const Window win = Window::make(lo, hi, w.closed_below, w.closed_above);

  auto offsets = [&](int n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (const auto& c : f.cells()) {
      off.push_back(acc);
      acc += m.dim(n + c.degree);
    }
    off.push_back(acc);
    return off;
  };
  GradedVS space;
  for (int n = lo; n <= hi; ++n) {
    const auto off = offsets(n);
    if (off.back()) space.set_dim(n, off.back());
  }
  DGModule out(AlgebraKind::poly, g, space, win);
  for (int n : out.degrees()) {
    const auto src = offsets(n);
    if (win.contains(n - 1)) {
      const auto dst = offsets(n - 1);
      Matrix d(out.dim(n - 1), out.dim(n));
      const Scalar sign = (n % 2 == 0) ? -1 : 1;
      for (std::size_t j = 0; j < f.rank(); ++j) {
        const int dj = f.cells()[j].degree;
        if (m.dim(n + dj) && m.dim(n + dj - 1)) d.set_block(dst[j], src[j], m.d(n + dj));
        for (std::size_t i = 0; i < f.rank(); ++i) {
          const Poly& p = f.differential()(i, j);
          if (p.is_zero()) continue;
          const int di = f.cells()[i].degree;
          if (m.dim(n + di) == 0 || m.dim(n - 1 + dj) == 0) continue;
          Matrix op = poly_action(m, p, n + di);
          op *= sign;
          Matrix cur = d.block(dst[j], src[i], op.rows(), op.cols());
          d.set_block(dst[j], src[i], cur + op);
        }
      }
      out.set_d(n, d);
    }
    for (int v = 0; v < g.rank(); ++v) {
      const int t = n - g.codegree(v);
      if (!win.contains(t)) continue;
      const auto dst = offsets(t);
      Matrix a(out.dim(t), out.dim(n));
      for (std::size_t j = 0; j < f.rank(); ++j) {
        const int dj = f.cells()[j].degree;
        if (m.dim(n + dj) && m.dim(t + dj)) a.set_block(dst[j], src[j], m.action(v, n + dj));
      }
      out.set_action(v, n, a);
    }
  }
  return out;
}

FreeDGModule hom_free(const FreeDGModule& f, const FreeDGModule& g) {
  require(f.group() == g.group(), ErrorCode::algebra_mismatch, "hom_free over different algebras");
  const std::size_t nf = f.rank();
  const std::size_t ng = g.rank();
  const int r = f.group().rank();
  std::vector<FreeDGModule::Cell> cells;
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nf; ++j)
      cells.push_back({"[" + g.cells()[i].label + "<-" + f.cells()[j].label + "]",
                       g.cells()[i].degree - f.cells()[j].degree});
  PolyMatrix d(ng * nf, ng * nf, r);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      const std::size_t col = i * nf + j;
      const int deg = cells[col].degree;
      for (std::size_t k = 0; k < ng; ++k)
        if (!g.differential()(k, i).is_zero()) d(k * nf + j, col) += g.differential()(k, i);
      const Scalar sign = (deg % 2 == 0) ? -1 : 1;
      for (std::size_t l = 0; l < nf; ++l)
        if (!f.differential()(j, l).is_zero()) d(i * nf + l, col) += f.differential()(j, l).scaled(sign);
    }
  FreeDGModule out(f.group(), std::move(cells), std::move(d));
  out.validate();
  return out;
}

DGModule mapping_cone(const ChainMap& f) {
  require(f.degree == 0, ErrorCode::not_chain_map, "mapping cone needs a degree-0 map");
  f.validate();
  const DGModule& M = f.source;
  const DGModule& N = f.target;
  const Window w = combine_windows({{N.window(), 0}, {M.window(), 1}});
  GradedVS space;
  if (!w.is_empty())
    for (int n = w.lo; n <= w.hi; ++n) {
      const std::size_t d = N.dim(n) + M.dim(n - 1);
      if (d) space.set_dim(n, d);
    }
  DGModule out(N.kind(), N.group(), space, w);
  const bool odd = N.kind() == AlgebraKind::ext;
  for (int n : out.degrees()) {
    const std::size_t nn = N.dim(n);
    if (w.contains(n - 1)) {
      const std::size_t tn = N.dim(n - 1);
      Matrix d(out.dim(n - 1), out.dim(n));
      if (tn && nn) d.set_block(0, 0, N.d(n));
      if (tn && M.dim(n - 1)) d.set_block(0, nn, f.block(n - 1));
      if (M.dim(n - 2) && M.dim(n - 1)) d.set_block(tn, nn, -M.d(n - 1));
      out.set_d(n, d);
    }
    for (int i = 0; i < out.generator_count(); ++i) {
      const int t = n + out.generator_degree(i);
      if (!w.contains(t)) continue;
      const std::size_t tn = N.dim(t);
      Matrix a(out.dim(t), out.dim(n));
      if (tn && nn) a.set_block(0, 0, N.action(i, n));
      if (M.dim(t - 1) && M.dim(n - 1)) a.set_block(tn, nn, odd ? -M.action(i, n - 1) : M.action(i, n - 1));
      out.set_action(i, n, a);
    }
  }
  return out;
}

DGModule fibre(const ChainMap& f) { return shift(mapping_cone(f), -1); }

ChainMap cone_inclusion(const DGModule& cone, const ChainMap& f) {
  ChainMap inc{f.target, cone, 0, {}};
  for (int n : f.target.degrees()) {
    if (!cone.window().contains(n)) continue;
    Matrix b(cone.dim(n), f.target.dim(n));
    for (std::size_t k = 0; k < f.target.dim(n); ++k) b(k, k) = 1;
    inc.set_block(n, b);
  }
  return inc;
}

namespace {

/// All exponent vectors with total exponent exactly `total`.
void exponents_of_total(int r, int total, std::vector<Exponent>& out) {
  Exponent cur(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<std::size_t>(i)] = e;
      rec(i + 1, left - e);
    }
  };
  if (r == 0) {
    if (total == 0) out.push_back({});
    return;
  }
  rec(0, total);
}

/// Column basis of the span of the given vectors.
std::vector<Vector> span_basis(const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty() || dim == 0) return {};
  return image_basis(Matrix::from_columns(vs, dim));
}

}  // namespace

DGModule gamma_m(const DGModule& m) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "gamma_m needs a polynomial module");
  const Window& w = m.window();
  if (w.closed_below || m.generator_count() == 0) return m;
  const int dmax = m.group().max_codegree();
  std::map<int, std::vector<Vector>> basis;
  const auto degs = m.degrees();
  for (auto it = degs.rbegin(); it != degs.rend(); ++it) {
    const int n = *it;
    const std::size_t dim = m.dim(n);
    const int power = (n - w.lo) / dmax;
    std::vector<Vector> gens;
    if (power > 0) {
      std::vector<Exponent> exps;
      exponents_of_total(m.generator_count(), power, exps);
      Matrix stacked(0, dim);
      for (const auto& e : exps) {
        Poly p = Poly::monomial(e);
        stacked = Matrix::vstack(stacked, poly_action(m, p, n));
      }
      gens = kernel_basis(stacked);
    }
    if (basis.count(n + 1)) {
      const Matrix d = m.d(n + 1);
      for (const auto& v : basis[n + 1]) gens.push_back(d * v);
    }
    for (int i = 0; i < m.generator_count(); ++i) {
      const int src = n + m.group().codegree(i);
      if (!basis.count(src)) continue;
      const Matrix a = m.action(i, src);
      for (const auto& v : basis[src]) gens.push_back(a * v);
    }
    auto b = span_basis(gens, dim);
    if (!b.empty()) basis[n] = std::move(b);
  }
  GradedVS space;
  for (const auto& [n, b] : basis) space.set_dim(n, b.size());
  DGModule out(AlgebraKind::poly, m.group(), space, w);
  auto coords = [&](int n, const Matrix& images) {
    const Matrix B = Matrix::from_columns(basis.at(n), m.dim(n));
    auto sol = solve(B, images);
    require(sol.has_value(), ErrorCode::invariant_violation, "torsion part is not a submodule");
    return *sol;
  };
  for (const auto& [n, b] : basis) {
    const Matrix B = Matrix::from_columns(b, m.dim(n));
    if (basis.count(n - 1)) out.set_d(n, coords(n - 1, m.d(n) * B));
    for (int i = 0; i < m.generator_count(); ++i) {
      const int t = n - m.group().codegree(i);
      if (basis.count(t)) out.set_action(i, n, coords(t, m.action(i, n) * B));
    }
  }
  return out;
}

bool is_torsion(const DGModule& m) { return gamma_m(m).space() == m.space(); }

DGModule matlis_dual(const DGModule& m) {
  const Window& w = m.window();
  const Window dw = w.is_empty() ? Window::make(0, -1, w.closed_above, w.closed_below)
                                 : Window::make(-w.hi, -w.lo, w.closed_above, w.closed_below);
  GradedVS space;
  for (auto [n, d] : m.space().dims()) space.set_dim(-n, d);
  DGModule out(m.kind(), m.group(), space, dw);
  for (int n : out.degrees()) {
    if (dw.contains(n - 1)) {
      Matrix d = m.d(-n + 1).transpose();
      if (n % 2 == 0) d = -d;
      out.set_d(n, d);
    }
    for (int i = 0; i < m.generator_count(); ++i) {
      const int g = m.generator_degree(i);
      if (!dw.contains(n + g)) continue;
      Matrix a = m.action(i, -n - g).transpose();
      if (m.kind() == AlgebraKind::ext && n % 2 != 0) a = -a;
      out.set_action(i, n, a);
    }
  }
  return out;
}

DGModule tensor_over_ext(const DGModule& nmod, const Window& w) {
  require(nmod.kind() == AlgebraKind::ext, ErrorCode::algebra_mismatch,
          "tensor_over_ext needs a module over the exterior algebra");
  const Window& nw = nmod.window();
  require(nw.closed_below && nw.closed_above, ErrorCode::unbounded,
          "tensor_over_ext needs a bounded module");
  const GroupData& g = nmod.group();
  if (nmod.total_dim() == 0) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::empty());
  const PolyAlgebra R(g);
  const auto ndeg = nmod.degrees();
  const int bottom = ndeg.front();
  const int top = ndeg.back();
  const int lo = std::max(w.lo, bottom);
  const bool cb = w.lo <= bottom;
  const bool finite = g.rank() == 0;
  const int hi = finite ? std::min(w.hi, top) : w.hi;
  const bool ca = finite && w.hi >= top;
  if (w.is_empty() || lo > hi) return DGModule(AlgebraKind::poly, g, GradedVS{}, Window::make(0, -1, cb, ca));
  const Window win = Window::make(lo, hi, cb, ca);
  // y-monomials of degree p are the R-monomials of degree -p.
  auto ymons = [&](int p) -> const std::vector<Exponent>& { return R.monomials(-p); };
  auto offsets = [&](int n) {
    std::map<int, std::size_t> off;
    std::size_t acc = 0;
    for (int q : ndeg) {
      off[q] = acc;
      acc += nmod.dim(q) * ymons(n - q).size();
    }
    off[INT_MAX] = acc;
    return off;
  };
  auto index = [&](const std::map<int, std::size_t>& off, int n, int q, std::size_t b, const Exponent& e) {
    return off.at(q) + b * ymons(n - q).size() + R.index(e);
  };
  GradedVS space;
  for (int n = lo; n <= hi; ++n) {
    const auto off = offsets(n);
    if (off.at(INT_MAX)) space.set_dim(n, off.at(INT_MAX));
  }
  DGModule out(AlgebraKind::poly, g, space, win);
  for (int n : out.degrees()) {
    const auto src = offsets(n);
    if (win.contains(n - 1)) {
      const auto dst = offsets(n - 1);
      Matrix d(out.dim(n - 1), out.dim(n));
      for (int q : ndeg) {
        const auto& ys = ymons(n - q);
        if (ys.empty()) continue;
        const Matrix dn = nmod.d(q);
        for (std::size_t b = 0; b < nmod.dim(q); ++b)
          for (const auto& e : ys) {
            const std::size_t col = index(src, n, q, b, e);
            if (nmod.dim(q - 1))
              for (std::size_t t = 0; t < dn.rows(); ++t)
                if (sgn(dn(t, b))) d(index(dst, n - 1, q - 1, t, e), col) += dn(t, b);
            for (int i = 0; i < g.rank(); ++i) {
              const int ei = e[static_cast<std::size_t>(i)];
              if (ei == 0) continue;
              const int q2 = q + g.ext_degree(i);
              if (nmod.dim(q2) == 0) continue;
              Exponent e2 = e;
              e2[static_cast<std::size_t>(i)] -= 1;
              const Matrix a = nmod.action(i, q);
              for (std::size_t t = 0; t < a.rows(); ++t)
                if (sgn(a(t, b))) d(index(dst, n - 1, q2, t, e2), col) += a(t, b) * ei;
            }
          }
      }
      out.set_d(n, d);
    }
    for (int i = 0; i < g.rank(); ++i) {
      const int t = n - g.codegree(i);
      if (!win.contains(t)) continue;
      const auto dst = offsets(t);
      Matrix a(out.dim(t), out.dim(n));
      for (int q : ndeg)
        for (std::size_t b = 0; b < nmod.dim(q); ++b)
          for (const auto& e : ymons(n - q)) {
            const int ei = e[static_cast<std::size_t>(i)];
            if (ei == 0) continue;
            Exponent e2 = e;
            e2[static_cast<std::size_t>(i)] -= 1;
            a(index(dst, t, q, b, e2), index(src, n, q, b, e)) = ei;
          }
      out.set_action(i, n, a);
    }
  }
  return out;
}

ChainMap free_map(const FreeDGModule& f, const std::vector<Vector>& images, const DGModule& m) {
  require(images.size() == f.rank(), ErrorCode::invalid_argument, "one image per cell required");
  for (std::size_t j = 0; j < f.rank(); ++j) {
    const int dj = f.cells()[j].degree;
    require(m.knows(dj), ErrorCode::window_too_small,
            "cell degree " + std::to_string(dj) + " is not stored in the target");
    require(images[j].size() == m.dim(dj), ErrorCode::invalid_argument, "image has wrong dimension");
  }
  const Window& w = m.window();
  const DGModule src = to_degreewise(f, w.is_empty() ? Window::closed(0, -1) : w);
  const PolyAlgebra R(f.group());
  ChainMap out{src, m, 0, {}};
  for (int n : src.degrees()) {
    Matrix b(m.dim(n), src.dim(n));
    if (b.rows() == 0) continue;
    std::size_t col = 0;
    for (std::size_t j = 0; j < f.rank(); ++j) {
      const int dj = f.cells()[j].degree;
      for (const auto& e : R.monomials(n - dj)) {
        if (m.dim(dj)) b.set_column(col, apply_monomial(m, e, dj, images[j]));
        ++col;
      }
    }
    out.set_block(n, b);
  }
  return out;
}

Matrix free_block(const PolyAlgebra& r, const std::vector<int>& source, const std::vector<int>& target,
                  const PolyMatrix& p, int n, int shift) {
  std::vector<std::size_t> so, to;
  std::size_t acc = 0;
  for (int a : source) {
    so.push_back(acc);
    acc += r.dim(n - a);
  }
  Matrix m(free_dim(r, target, n + shift), acc);
  acc = 0;
  for (int a : target) {
    to.push_back(acc);
    acc += r.dim(n + shift - a);
  }
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto& mons = r.monomials(n - source[j]);
    for (std::size_t k = 0; k < mons.size(); ++k)
      for (std::size_t i = 0; i < target.size(); ++i)
        for (const auto& [e, c] : p(i, j).terms()) m(to[i] + r.index(add_exponents(mons[k], e)), so[j] + k) += c;
  }
  return m;
}

std::size_t free_dim(const PolyAlgebra& r, const std::vector<int>& generators, int n) {
  std::size_t acc = 0;
  for (int a : generators) acc += r.dim(n - a);
  return acc;
}

Matrix free_action(const PolyAlgebra& r, const std::vector<int>& generators, int i, int n) {
  const int t = n - r.group().codegree(i);
  Matrix m(free_dim(r, generators, t), free_dim(r, generators, n));
  std::size_t so = 0, to = 0;
  for (int a : generators) {
    const auto& mons = r.monomials(n - a);
    for (std::size_t k = 0; k < mons.size(); ++k) {
      Exponent e = mons[k];
      e[static_cast<std::size_t>(i)] += 1;
      m(to + r.index(e), so + k) = 1;
    }
    so += mons.size();
    to += r.dim(t - a);
  }
  return m;
}

std::vector<Poly> free_coordinates(const PolyAlgebra& r, const std::vector<int>& generators, int n,
                                   const Vector& v) {
  std::vector<Poly> out;
  std::size_t off = 0;
  for (int a : generators) {
    Poly p(r.rank());
    for (const auto& e : r.monomials(n - a)) {
      if (sgn(v[off]) != 0) p.add_term(e, v[off]);
      ++off;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<int> cell_degrees(const FreeDGModule& f) {
  std::vector<int> out;
  for (const auto& c : f.cells()) out.push_back(c.degree);
  return out;
}

FreeDGModule attach_cells(const FreeDGModule& f, const std::vector<FreeDGModule::Cell>& cells,
                          const std::vector<Vector>& boundaries) {
  const PolyAlgebra r(f.group());
  const std::size_t old = f.rank();
  const std::size_t total = old + cells.size();
  std::vector<FreeDGModule::Cell> all = f.cells();
  all.insert(all.end(), cells.begin(), cells.end());
  PolyMatrix d(total, total, f.group().rank());
  for (std::size_t i = 0; i < old; ++i)
    for (std::size_t j = 0; j < old; ++j) d(i, j) = f.differential()(i, j);
  const auto degs = cell_degrees(f);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto coords = free_coordinates(r, degs, cells[c].degree - 1, boundaries[c]);
    for (std::size_t i = 0; i < old; ++i) d(i, old + c) = coords[i];
  }
  return FreeDGModule(f.group(), std::move(all), std::move(d));
}

Matrix evaluate_on_cells(const FreeDGModule& f, const std::vector<Vector>& images, const DGModule& m, int n) {
  const PolyAlgebra r(f.group());
  Matrix b(m.dim(n), free_dim(r, cell_degrees(f), n));
  std::size_t col = 0;
  for (std::size_t j = 0; j < f.rank(); ++j) {
    const int dj = f.cells()[j].degree;
    for (const auto& e : r.monomials(n - dj)) {
      if (b.rows() && m.dim(dj)) b.set_column(col, apply_monomial(m, e, dj, images[j]));
      ++col;
    }
  }
  return b;
}

}  // namespace borel
