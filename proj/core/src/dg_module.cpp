#include "borel/dg_module.hpp"

#include <algorithm>
#include <climits>

#include "borel/error.hpp"

namespace borel {

std::string to_string(AlgebraKind kind) { return kind == AlgebraKind::poly ? "poly" : "ext"; }

DGModule::DGModule(AlgebraKind kind, GroupData group, GradedVS space, Window window)
    : kind_(kind), group_(std::move(group)), window_(window) {
  GradedVS trimmed;
  for (auto [n, dim] : space.dims()) {
    require(window_.contains(n), ErrorCode::invalid_argument,
            "degree " + std::to_string(n) + " lies outside the module window");
    trimmed.set_dim(n, dim);
    if (const auto* l = space.labels(n)) trimmed.set_labels(n, *l);
  }
  space_ = std::move(trimmed);
  d_ = GradedMap(space_, space_, -1);
  for (int i = 0; i < group_.rank(); ++i) actions_.emplace_back(space_, space_, generator_degree(i));
}

int DGModule::generator_degree(int i) const {
  return kind_ == AlgebraKind::poly ? group_.poly_degree(i) : group_.ext_degree(i);
}

bool DGModule::knows(int n) const {
  if (window_.is_empty()) return window_.closed_below && window_.closed_above;
  if (n < window_.lo) return window_.closed_below;
  if (n > window_.hi) return window_.closed_above;
  return true;
}

bool DGModule::has_zero_differential() const { return d_.blocks().empty(); }

void DGModule::validate() const {
  d_.validate();
  for (const auto& a : actions_) a.validate();
  const bool odd = kind_ == AlgebraKind::ext;
  for (int n : degrees()) {
    const std::string at = " at degree " + std::to_string(n);
    if (knows(n - 1) && knows(n - 2) && !(d(n - 1) * d(n)).is_zero())
      fail(ErrorCode::composition_not_zero, "d o d != 0" + at);
    for (int i = 0; i < generator_count(); ++i) {
      const int gi = generator_degree(i);
      if (knows(n + gi) && knows(n - 1) && knows(n + gi - 1)) {
        Matrix lhs = d(n + gi) * action(i, n);
        Matrix rhs = action(i, n - 1) * d(n);
        if (odd) rhs = -rhs;
        if (!(lhs == rhs))
          fail(ErrorCode::invariant_violation,
               "differential is not linear over generator " + std::to_string(i + 1) + at);
      }
      for (int j = i; j < generator_count(); ++j) {
        const int gj = generator_degree(j);
        if (!knows(n + gi) || !knows(n + gj) || !knows(n + gi + gj)) continue;
        Matrix ij = action(i, n + gj) * action(j, n);
        Matrix ji = action(j, n + gi) * action(i, n);
        if (odd) {
          if (!(ij + ji).is_zero())
            fail(ErrorCode::invariant_violation,
                 "exterior generators " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     " do not anticommute" + at);
        } else if (!(ij == ji)) {
          fail(ErrorCode::invariant_violation,
               "polynomial generators " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                   " do not commute" + at);
        }
      }
    }
  }
}

Window combine_windows(const std::vector<std::pair<Window, int>>& parts) {
  bool any = false;
  bool closed_below = true;
  bool closed_above = true;
  int lo_all = INT_MAX;
  int hi_all = INT_MIN;
  int lo_open = INT_MIN;
  int hi_open = INT_MAX;
  for (const auto& [w, s] : parts) {
    if (w.is_empty()) {
      if (w.closed_below && w.closed_above) continue;
      return Window::make(0, -1, false, false);
    }
    any = true;
    lo_all = std::min(lo_all, w.lo + s);
    hi_all = std::max(hi_all, w.hi + s);
    if (!w.closed_below) {
      closed_below = false;
      lo_open = std::max(lo_open, w.lo + s);
    }
    if (!w.closed_above) {
      closed_above = false;
      hi_open = std::min(hi_open, w.hi + s);
    }
  }
  if (!any) return Window::empty();
  const int lo = closed_below ? lo_all : lo_open;
  const int hi = closed_above ? hi_all : hi_open;
  if (lo > hi) return Window::make(0, -1, false, false);
  return Window::make(lo, hi, closed_below, closed_above);
}

DGModule zero_module(AlgebraKind kind, const GroupData& g) {
  return DGModule(kind, g, GradedVS{}, Window::empty());
}

DGModule shift(const DGModule& m, int k) {
  const Window& w = m.window();
  Window nw = w.is_empty() ? w : Window::make(w.lo + k, w.hi + k, w.closed_below, w.closed_above);
  DGModule out(m.kind(), m.group(), m.space().shifted(k), nw);
  const Scalar sign = (k % 2 == 0) ? 1 : -1;
  for (const auto& [n, b] : m.differential().blocks()) {
    Matrix s = b;
    s *= sign;
    out.set_d(n + k, s);
  }
  for (int i = 0; i < m.generator_count(); ++i)
    for (const auto& [n, b] : m.action_map(i).blocks()) {
      Matrix s = b;
      if (m.kind() == AlgebraKind::ext) s *= sign;
      out.set_action(i, n + k, s);
    }
  return out;
}

DGModule direct_sum(const std::vector<DGModule>& parts) {
  require(!parts.empty(), ErrorCode::invalid_argument, "direct sum of no modules");
  const auto kind = parts.front().kind();
  const auto& g = parts.front().group();
  std::vector<std::pair<Window, int>> ws;
  GradedVS space;
  for (const auto& p : parts) {
    require(p.kind() == kind && p.group() == g, ErrorCode::algebra_mismatch,
            "direct sum over different algebras");
    ws.emplace_back(p.window(), 0);
    for (auto [n, d] : p.space().dims()) space.set_dim(n, space.dim(n) + d);
  }
  const Window w = combine_windows(ws);
  GradedVS trimmed;
  for (auto [n, d] : space.dims())
    if (w.contains(n)) trimmed.set_dim(n, d);
  DGModule out(kind, g, trimmed, w);

  auto offsets = [&](int n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (const auto& p : parts) {
      off.push_back(acc);
      acc += w.contains(n) ? p.dim(n) : 0;
    }
    return off;
  };
  auto assemble = [&](int n, int shift, auto&& get) {
    Matrix m(out.dim(n + shift), out.dim(n));
    if (m.rows() == 0 || m.cols() == 0) return m;
    const auto src = offsets(n);
    const auto dst = offsets(n + shift);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (parts[k].dim(n) == 0 || parts[k].dim(n + shift) == 0) continue;
      m.set_block(dst[k], src[k], get(parts[k], n));
    }
    return m;
  };
  for (int n : out.degrees()) {
    out.set_d(n, assemble(n, -1, [](const DGModule& p, int q) { return p.d(q); }));
    for (int i = 0; i < out.generator_count(); ++i)
      out.set_action(i, n, assemble(n, out.generator_degree(i),
                                    [i](const DGModule& p, int q) { return p.action(i, q); }));
  }
  return out;
}

DGModule restrict_window(const DGModule& m, int lo, int hi) {
  const Window& w = m.window();
  const int nlo = w.is_empty() ? lo : std::max(lo, w.lo);
  const int nhi = w.is_empty() ? hi : std::min(hi, w.hi);
  bool cb = w.closed_below;
  bool ca = w.closed_above;
  for (int n : m.degrees()) {
    if (n < nlo) cb = false;
    if (n > nhi) ca = false;
  }
  if (nlo > nhi) return DGModule(m.kind(), m.group(), GradedVS{}, Window::make(0, -1, cb, ca));
  GradedVS space;
  for (int n : m.degrees())
    if (n >= nlo && n <= nhi) {
      space.set_dim(n, m.dim(n));
      if (const auto* l = m.space().labels(n)) space.set_labels(n, *l);
    }
  DGModule out(m.kind(), m.group(), space, Window::make(nlo, nhi, cb, ca));
  for (int n : out.degrees()) {
    if (out.window().contains(n - 1)) out.set_d(n, m.d(n));
    for (int i = 0; i < m.generator_count(); ++i)
      if (out.window().contains(n + m.generator_degree(i))) out.set_action(i, n, m.action(i, n));
  }
  return out;
}

Vector apply_monomial(const DGModule& m, const Exponent& e, int n, const Vector& v) {
  Vector cur = v;
  int deg = n;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) {
      cur = m.action(static_cast<int>(i), deg) * cur;
      deg += m.generator_degree(static_cast<int>(i));
    }
  return cur;
}

Matrix poly_action(const DGModule& m, const Poly& p, int n) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch,
          "polynomial action on an exterior module");
  const auto deg = p.weighted_degree(m.group().codegrees());
  const int target = n - (deg ? *deg : 0);
  Matrix out(m.dim(target), m.dim(n));
  if (!deg) return out;
  for (const auto& [e, c] : p.terms()) {
    Matrix op = Matrix::identity(m.dim(n));
    int cur = n;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) {
        op = m.action(static_cast<int>(i), cur) * op;
        cur += m.generator_degree(static_cast<int>(i));
      }
    op *= c;
    out += op;
  }
  return out;
}

HomologyPiece homology(const DGModule& m, int n) {
  return homology_from_blocks(m.d(n + 1), m.d(n), n, m.dim(n));
}

GradedVS homology_dims(const DGModule& m) {
  GradedVS out;
  const Window& w = m.window();
  if (w.is_empty()) return out;
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!w.certifies(n) || m.dim(n) == 0) continue;
    out.set_dim(n, homology(m, n).dim);
  }
  return out;
}

bool is_acyclic(const DGModule& m) { return homology_dims(m).is_zero(); }

DGModule homology_module(const DGModule& m) {
  const Window& w = m.window();
  if (w.is_empty()) return DGModule(m.kind(), m.group(), GradedVS{}, w);
  const Window hw = w.guaranteed_lo > w.guaranteed_hi
                        ? Window::make(0, -1, w.closed_below, w.closed_above)
                        : Window::make(w.guaranteed_lo, w.guaranteed_hi, w.closed_below,
                                       w.closed_above);
  std::map<int, HomologyPiece> pieces;
  GradedVS space;
  for (int n = hw.lo; n <= hw.hi; ++n) {
    if (m.dim(n) == 0) continue;
    auto piece = homology(m, n);
    space.set_dim(n, piece.dim);
    pieces.emplace(n, std::move(piece));
  }
  DGModule out(m.kind(), m.group(), space, hw);
  for (int n : out.degrees())
    for (int i = 0; i < m.generator_count(); ++i) {
      const int t = n + m.generator_degree(i);
      if (out.dim(t) == 0 || !hw.contains(t)) continue;
      const auto& src = pieces.at(n);
      const auto& dst = pieces.at(t);
      Matrix a(dst.dim, src.dim);
      const Matrix op = m.action(i, n);
      for (std::size_t j = 0; j < src.dim; ++j) a.set_column(j, dst.classify(op * src.representatives[j]));
      out.set_action(i, n, a);
    }
  return out;
}

Matrix ChainMap::block(int n) const {
  auto it = blocks.find(n);
  if (it != blocks.end()) return it->second;
  return Matrix(target.dim(n + degree), source.dim(n));
}

bool ChainMap::is_chain_map() const {
  try {
    validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

void ChainMap::validate() const {
  require(source.kind() == target.kind() && source.group() == target.group(),
          ErrorCode::algebra_mismatch, "chain map between modules over different algebras");
  const bool odd_map = degree % 2 != 0;
  for (const auto& [n, b] : blocks)
    require(b.rows() == target.dim(n + degree) && b.cols() == source.dim(n),
            ErrorCode::not_chain_map, "map block has wrong shape at degree " + std::to_string(n));
  for (int n : source.degrees()) {
    const std::string at = " at degree " + std::to_string(n);
    if (target.knows(n + degree) && target.knows(n + degree - 1) && source.knows(n - 1)) {
      Matrix lhs = target.d(n + degree) * block(n);
      Matrix rhs = block(n - 1) * source.d(n);
      if (odd_map) rhs = -rhs;
      if (!(lhs == rhs)) fail(ErrorCode::not_chain_map, "map does not commute with d" + at);
    }
    for (int i = 0; i < source.generator_count(); ++i) {
      const int g = source.generator_degree(i);
      if (!target.knows(n + degree + g) || !source.knows(n + g)) continue;
      Matrix lhs = target.action(i, n + degree) * block(n);
      Matrix rhs = block(n + g) * source.action(i, n);
      if (source.kind() == AlgebraKind::ext && odd_map) rhs = -rhs;
      if (!(lhs == rhs))
        fail(ErrorCode::not_chain_map,
             "map is not linear over generator " + std::to_string(i + 1) + at);
    }
  }
}

ChainMap identity_map(const DGModule& m) {
  ChainMap f{m, m, 0, {}};
  for (int n : m.degrees()) f.set_block(n, Matrix::identity(m.dim(n)));
  return f;
}

Matrix induced_map(const ChainMap& f, int n) {
  const auto src = homology(f.source, n);
  const auto dst = homology(f.target, n + f.degree);
  Matrix out(dst.dim, src.dim);
  const Matrix b = f.block(n);
  for (std::size_t j = 0; j < src.dim; ++j) out.set_column(j, dst.classify(b * src.representatives[j]));
  return out;
}

namespace {

struct MapSystem {
  std::map<int, std::size_t> offset;
  std::size_t unknowns = 0;
  Matrix equations;
};

MapSystem module_map_system(const DGModule& a, const DGModule& b, int k, bool chain) {
  require(a.kind() == b.kind() && a.group() == b.group(), ErrorCode::algebra_mismatch,
          "module maps between modules over different algebras");
  const bool odd_map = k % 2 != 0;
  MapSystem sys;
  for (int n : a.degrees()) {
    require(b.knows(n + k), ErrorCode::window_too_small,
            "target degree " + std::to_string(n + k) + " is not stored");
    sys.offset[n] = sys.unknowns;
    sys.unknowns += b.dim(n + k) * a.dim(n);
  }
  auto var = [&](int n, std::size_t r, std::size_t c) {
    return sys.offset.at(n) + r * a.dim(n) + c;
  };

  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
  // Relation  B * F_n - s * F_m * A = 0  with F_n : a_n -> b_{n+k}, F_m : a_m -> b_{m+k}.
  auto add_relation = [&](int n, const Matrix& bop, int m, const Matrix& aop, const Scalar& s) {
    for (std::size_t r = 0; r < bop.rows(); ++r)
      for (std::size_t c = 0; c < a.dim(n); ++c) {
        std::vector<std::pair<std::size_t, Scalar>> row;
        for (std::size_t t = 0; t < bop.cols(); ++t)
          if (sgn(bop(r, t)) != 0) row.emplace_back(var(n, t, c), bop(r, t));
        if (sys.offset.count(m))
          for (std::size_t t = 0; t < aop.rows(); ++t)
            if (sgn(aop(t, c)) != 0) row.emplace_back(var(m, r, t), -s * aop(t, c));
        if (!row.empty()) rows.push_back(std::move(row));
      }
  };

  for (int n : a.degrees()) {
    for (int i = 0; i < a.generator_count(); ++i) {
      const int g = a.generator_degree(i);
      require(b.knows(n + k + g) && a.knows(n + g), ErrorCode::window_too_small,
              "action target degree " + std::to_string(n + k + g) + " is not stored");
      const Scalar s = (a.kind() == AlgebraKind::ext && odd_map) ? -1 : 1;
      add_relation(n, b.action(i, n + k), n + g, a.action(i, n), s);
    }
    if (chain) {
      require(b.knows(n + k - 1) && a.knows(n - 1), ErrorCode::window_too_small,
              "differential target degree " + std::to_string(n + k - 1) + " is not stored");
      add_relation(n, b.d(n + k), n - 1, a.d(n), odd_map ? -1 : 1);
    }
  }
  sys.equations = Matrix(rows.size(), sys.unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) sys.equations(r, c) += v;
  return sys;
}

}  // namespace

std::size_t module_maps_dimension(const DGModule& a, const DGModule& b, int k, bool chain) {
  const MapSystem sys = module_map_system(a, b, k, chain);
  if (sys.unknowns == 0) return 0;
  return sys.unknowns - rank(sys.equations);
}

std::vector<ChainMap> module_maps_basis(const DGModule& a, const DGModule& b, int k, bool chain) {
  const MapSystem sys = module_map_system(a, b, k, chain);
  std::vector<ChainMap> out;
  if (sys.unknowns == 0) return out;
  for (const auto& v : kernel_basis(sys.equations)) {
    ChainMap f{a, b, k, {}};
    for (const auto& [n, off] : sys.offset) {
      Matrix blk(b.dim(n + k), a.dim(n));
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c) blk(r, c) = v[off + r * a.dim(n) + c];
      if (!blk.is_zero()) f.set_block(n, blk);
    }
    out.push_back(std::move(f));
  }
  return out;
}

FreeDGModule::FreeDGModule(GroupData group, std::vector<Cell> cells, PolyMatrix differential)
    : group_(std::move(group)), cells_(std::move(cells)), d_(std::move(differential)) {
  require(d_.rows() == cells_.size() && d_.cols() == cells_.size(), ErrorCode::invalid_argument,
          "cell differential must be square of size rank");
}

int FreeDGModule::min_degree() const {
  int m = INT_MAX;
  for (const auto& c : cells_) m = std::min(m, c.degree);
  return cells_.empty() ? 0 : m;
}

int FreeDGModule::max_degree() const {
  int m = INT_MIN;
  for (const auto& c : cells_) m = std::max(m, c.degree);
  return cells_.empty() ? 0 : m;
}

void FreeDGModule::validate() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) {
      const Poly& p = d_(i, j);
      if (p.is_zero()) continue;
      const auto deg = p.weighted_degree(group_.codegrees());
      if (-*deg + cells_[i].degree != cells_[j].degree - 1)
        fail(ErrorCode::invariant_violation,
             "differential entry (" + cells_[i].label + ", " + cells_[j].label +
                 ") has inconsistent degree");
    }
  if (!(d_ * d_).is_zero()) fail(ErrorCode::composition_not_zero, "cell differential squares to nonzero");
}

}  // namespace borel
