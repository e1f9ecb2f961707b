#include "borel/duality.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#include "borel/error.hpp"

namespace borel {

namespace {

int koszul_degree(const GroupData& g, std::uint32_t s) {
  int d = 0;
  for (int i = 0; i < g.rank(); ++i)
    if (contains(s, i)) d += 1 - g.codegree(i);
  return d;
}

/// lambda a_i = sign a_{lambda + i}: a_i moves left past the larger elements of lambda.
int right_sign(std::uint32_t lambda, int i) {
  if (contains(lambda, i)) return 0;
  return (popcount(lambda >> (i + 1)) % 2) ? -1 : 1;
}

/// Sign of the shuffle a_A a_B = sign a_{A+B}; 0 when A and B meet.
int shuffle_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int i = 0; i < 32; ++i)
    if (contains(b, i)) inversions += popcount(a >> (i + 1));
  return inversions % 2 ? -1 : 1;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

}  // namespace

DGModule k_lambda(const GroupData& g, const Window& w) {
  require(w.lo <= 0, ErrorCode::invalid_argument, "k_Lambda window must reach degree 0");
  const int r = g.rank();
  const PolyAlgebra y(g);
  const ExtAlgebra lam(g);
  struct Basis {
    std::uint32_t lambda;
    Exponent alpha;
  };
  std::map<int, std::vector<Basis>> basis;
  for (int n = std::max(w.lo, 0); n <= w.hi; ++n)
    for (std::uint32_t s = 0; s < (1u << r); ++s) {
      const int q = n - lam.degree_of(s);
      if (q < 0) continue;
      for (const auto& e : y.monomials(-q)) basis[n].push_back({s, e});
    }
  auto index = [&](int n, std::uint32_t s, const Exponent& e) -> std::size_t {
    const auto& b = basis.at(n);
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k].lambda == s && b[k].alpha == e) return k;
    fail(ErrorCode::invariant_violation, "k_Lambda basis lookup failed");
  };
  GradedVS space;
  for (const auto& [n, b] : basis) space.set_dim(n, b.size());
  const Window win = Window::make(w.lo, w.hi, true, r == 0);
  DGModule out(AlgebraKind::ext, g, space, win);
  for (const auto& [n, b] : basis) {
    if (space.dim(n - 1) || win.contains(n - 1)) {
      Matrix d(space.dim(n - 1), b.size());
      for (std::size_t k = 0; k < b.size(); ++k)
        for (int i = 0; i < r; ++i) {
          const int sign = right_sign(b[k].lambda, i);
          if (sign == 0 || b[k].alpha[static_cast<std::size_t>(i)] == 0) continue;
          Exponent e = b[k].alpha;
          const int c = e[static_cast<std::size_t>(i)]--;
          d(index(n - 1, b[k].lambda | (1u << i), e), k) += sign * c;
        }
      out.set_d(n, d);
    }
    for (int i = 0; i < r; ++i) {
      const int t = n + g.ext_degree(i);
      if (!win.contains(t)) continue;
      Matrix a(space.dim(t), b.size());
      for (std::size_t k = 0; k < b.size(); ++k) {
        const int sign = right_sign(b[k].lambda, i);
        if (sign) a(index(t, b[k].lambda | (1u << i), b[k].alpha), k) = sign;
      }
      out.set_action(i, n, a);
    }
  }
  return out;
}

DGModule functor_T(const DGModule& m) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "T needs a module over H*(BG)");
  require(is_torsion(m), ErrorCode::not_torsion, "T needs a torsion module");
  const GroupData& g = m.group();
  const DGModule h = hom_R(koszul_model(g), m);
  DGModule out(AlgebraKind::ext, g, h.space(), h.window());
  const std::uint32_t cells = 1u << g.rank();
  auto offsets = [&](int n) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (std::uint32_t s = 0; s < cells; ++s) {
      off.push_back(acc);
      acc += m.dim(n + koszul_degree(g, s));
    }
    return off;
  };
  for (int n : h.degrees()) {
    if (h.window().contains(n - 1)) out.set_d(n, h.d(n));
    const auto src = offsets(n);
    const Scalar parity = n % 2 ? -1 : 1;
    for (int i = 0; i < g.rank(); ++i) {
      const int t = n + g.ext_degree(i);
      if (!h.window().contains(t)) continue;
      const auto dst = offsets(t);
      Matrix a(h.dim(t), h.dim(n));
      for (std::uint32_t s = 0; s < cells; ++s) {
        if (!contains(s, i)) continue;
        const std::uint32_t rest = s & ~(1u << i);
        const std::size_t size = m.dim(n + koszul_degree(g, rest));
        for (std::size_t k = 0; k < size; ++k) a(dst[s] + k, src[rest] + k) = parity * sign_before(s, i);
      }
      out.set_action(i, n, a);
    }
  }
  return out;
}

DGModule functor_S(const DGModule& n, int top) {
  require(n.kind() == AlgebraKind::ext, ErrorCode::algebra_mismatch, "S needs a module over H_*(G)");
  const int bottom = n.total_dim() ? n.degrees().front() : 0;
  const DGModule out = tensor_over_ext(n, Window::make(std::min(bottom, top), top, true, false));
  require(is_torsion(out), ErrorCode::invariant_violation, "S produced a non-torsion module");
  return out;
}

HomologyProfile homology_profile(const DGModule& m) {
  HomologyProfile p;
  const DGModule h = homology_module(m);
  p.dims = h.space();
  for (int n : h.degrees())
    for (int i = 0; i < h.generator_count(); ++i) {
      const int t = n + h.generator_degree(i);
      if (!h.window().contains(t) || h.dim(t) == 0) continue;
      const std::size_t rk = rank(h.action(i, n));
      if (rk) p.action_ranks[{i, n}] = rk;
    }
  p.shifts.clear();
  for (int i = 0; i < m.generator_count(); ++i) p.shifts.push_back(m.generator_degree(i));
  return p;
}

HomologyProfile restrict_profile(const HomologyProfile& p, int lo, int hi) {
  HomologyProfile out;
  out.shifts = p.shifts;
  for (auto [n, d] : p.dims.dims())
    if (lo <= n && n <= hi) out.dims.set_dim(n, d);
  for (const auto& [key, rk] : p.action_ranks) {
    const int t = key.second + p.shifts[static_cast<std::size_t>(key.first)];
    if (lo <= key.second && key.second <= hi && lo <= t && t <= hi) out.action_ranks[key] = rk;
  }
  return out;
}

RoundTripReport roundtrip_lambda(const DGModule& n) {
  require(n.kind() == AlgebraKind::ext, ErrorCode::algebra_mismatch, "round trip needs a module over H_*(G)");
  require(n.window().closed_below && n.window().closed_above, ErrorCode::unbounded,
          "round trip needs a finite-dimensional module");
  RoundTripReport rep;
  const GroupData& g = n.group();
  const auto degs = n.degrees();
  const int lo = degs.empty() ? 0 : degs.front();
  const int hi = degs.empty() ? -1 : degs.back();
  const int top = hi + g.max_codegree() + 2;
  const DGModule back = functor_T(functor_S(n, top));
  rep.lo = lo;
  rep.hi = back.window().guaranteed_hi;
  require(rep.hi >= hi, ErrorCode::window_too_small, "round trip window does not cover the input");
  rep.original = restrict_profile(homology_profile(n), rep.lo, rep.hi);
  rep.round_trip = restrict_profile(homology_profile(back), rep.lo, rep.hi);
  rep.agree = rep.original == rep.round_trip;
  return rep;
}

RoundTripReport roundtrip_torsion(const DGModule& m) { return roundtrip_lambda(functor_T(m)); }

EndDGA::Element EndDGA::zero() const { return Element(complex.rank(), Poly(group.rank())); }

EndDGA::Element EndDGA::identity() const {
  Element e = zero();
  for (std::size_t j = 0; j < size(); ++j) e[cell(j, j)] = Poly::constant(group.rank(), 1);
  return e;
}

EndDGA::Element EndDGA::unit_matrix(std::size_t target, std::size_t source) const {
  Element e = zero();
  e[cell(target, source)] = Poly::constant(group.rank(), 1);
  return e;
}

EndDGA::Element EndDGA::iota(int i) const {
  Element e = zero();
  for (std::uint32_t s = 0; s < size(); ++s)
    if (contains(s, i)) e[cell(s & ~(1u << i), s)] = Poly::constant(group.rank(), sign_before(s, i));
  return e;
}

EndDGA::Element EndDGA::iota_product(std::uint32_t subset) const {
  Element e = identity();
  for (int i = 0; i < group.rank(); ++i)
    if (contains(subset, i)) e = compose(e, iota(i));
  return e;
}

EndDGA::Element EndDGA::compose(const Element& a, const Element& b) const {
  Element out = zero();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Poly& p = a[cell(i, j)];
      if (p.is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l) {
        const Poly& q = b[cell(j, l)];
        if (!q.is_zero()) out[cell(i, l)] += p * q;
      }
    }
  return out;
}

EndDGA::Element EndDGA::differential(const Element& a) const {
  Element out = zero();
  const PolyMatrix& d = complex.differential();
  for (std::size_t b = 0; b < a.size(); ++b) {
    if (a[b].is_zero()) continue;
    for (std::size_t c = 0; c < a.size(); ++c)
      if (!d(c, b).is_zero()) out[c] += a[b] * d(c, b);
  }
  return out;
}

EndDGA::Element EndDGA::add(const Element& a, const Element& b, const Scalar& c) const {
  Element out = a;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!b[k].is_zero()) out[k] += b[k].scaled(c);
  return out;
}

bool EndDGA::is_zero(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](const Poly& p) { return p.is_zero(); });
}

Vector EndDGA::to_vector(const Element& a, int n) const {
  const PolyAlgebra r(group);
  const auto degs = cell_degrees(complex);
  Vector v(free_dim(r, degs, n));
  std::size_t off = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (const auto& [e, coeff] : a[c].terms()) {
      require(r.degree_of(e) == n - degs[c], ErrorCode::invariant_violation,
              "element is not homogeneous of degree " + std::to_string(n));
      v[off + r.index(e)] += coeff;
    }
    off += r.dim(n - degs[c]);
  }
  return v;
}

Window EndDGA::standard_window() const {
  const int span = group.dim();
  return Window::make(-span - 2 * group.max_codegree() - 2, span, false, true);
}

EndDGA end_dga(const GroupData& g) {
  EndDGA e;
  e.group = g;
  e.kbar = koszul_model(g);
  e.complex = hom_free(e.kbar, e.kbar);
  return e;
}

std::pair<int, std::size_t> HomToK::position(std::uint32_t subset) const {
  const int n = -koszul_degree(group, subset);
  std::size_t idx = 0;
  for (std::uint32_t t = 0; t < subset; ++t)
    if (-koszul_degree(group, t) == n) ++idx;
  return {n, idx};
}

Vector HomToK::basis_vector(std::uint32_t subset) const {
  const auto [n, idx] = position(subset);
  return unit_vector(module.dim(n), idx);
}

int HomToK::product_sign(std::uint32_t a, std::uint32_t b) const {
  const int s = shuffle_sign(a, b);
  return (popcount(a) * popcount(b)) % 2 ? -s : s;
}

Vector HomToK::multiply(int p, const Vector& a, int q, const Vector& b) const {
  Vector out(module.dim(p + q));
  const std::uint32_t cells = 1u << group.rank();
  for (std::uint32_t s = 0; s < cells; ++s) {
    const auto [ps, is] = position(s);
    if (ps != p || sgn(a[is]) == 0) continue;
    for (std::uint32_t t = 0; t < cells; ++t) {
      const auto [pt, it] = position(t);
      if (pt != q || sgn(b[it]) == 0) continue;
      const int sign = product_sign(s, t);
      if (sign == 0) continue;
      out[position(s | t).second] += sign * a[is] * b[it];
    }
  }
  return out;
}

HomToK hom_to_k(const GroupData& g) { return HomToK{g, hom_R(koszul_model(g), residue_field(g, 0))}; }

CartanMap cartan_map(const EndDGA& e) {
  CartanMap out{e, hom_to_k(e.group), {}, false, false, false, std::nullopt};
  const DGModule src = e.degreewise(e.standard_window());
  const DGModule& tgt = out.target.module;
  const PolyAlgebra r(e.group);
  const auto degs = cell_degrees(e.complex);
  ChainMap f{src, tgt, 0, {}};
  for (int n : src.degrees()) {
    Matrix b(tgt.dim(n), src.dim(n));
    if (b.rows() == 0) continue;
    std::size_t off = 0;
    for (std::size_t c = 0; c < degs.size(); ++c) {
      // Constant term of the coefficient on E_{empty, j}.
      if (c < e.size() && degs[c] == n) b(out.target.position(static_cast<std::uint32_t>(c)).second, off) = 1;
      off += r.dim(n - degs[c]);
    }
    f.set_block(n, b);
  }
  f.validate();
  out.chain = f;
  auto apply = [&](const EndDGA::Element& a, int n) { return f.block(n) * e.to_vector(a, n); };
  out.unital = apply(e.identity(), 0) == out.target.basis_vector(0);

  const std::uint32_t cells = static_cast<std::uint32_t>(e.size());
  bool mult = true;
  for (std::uint32_t a = 0; a < cells; ++a)
    for (std::uint32_t b = 0; b < cells; ++b) {
      const auto [pa, ia] = out.target.position(a);
      const auto [pb, ib] = out.target.position(b);
      const Vector lhs = apply(e.compose(e.iota_product(a), e.iota_product(b)), pa + pb);
      const Vector rhs = out.target.multiply(pa, apply(e.iota_product(a), pa), pb, apply(e.iota_product(b), pb));
      if (!(lhs == rhs)) mult = false;
    }
  out.multiplicative_on_iota = mult;

  for (std::size_t a = 0; a < e.complex.rank() && !out.chain_level_failure; ++a)
    for (std::size_t b = 0; b < e.complex.rank() && !out.chain_level_failure; ++b) {
      const int pa = degs[a], pb = degs[b];
      const std::size_t n = e.size();
      const Vector lhs = apply(e.compose(e.unit_matrix(a / n, a % n), e.unit_matrix(b / n, b % n)), pa + pb);
      const Vector rhs = out.target.multiply(pa, apply(e.unit_matrix(a / n, a % n), pa), pb,
                                             apply(e.unit_matrix(b / n, b % n), pb));
      if (!(lhs == rhs))
        out.chain_level_failure = "E(" + std::to_string(a / n) + "," + std::to_string(a % n) + ") E(" +
                                  std::to_string(b / n) + "," + std::to_string(b % n) + ")";
    }

  bool iso = true;
  const Window& w = src.window();
  for (int n = w.guaranteed_lo; n <= w.guaranteed_hi; ++n) {
    const std::size_t h = src.dim(n) ? homology(src, n).dim : 0;
    if (h != tgt.dim(n)) {
      iso = false;
      continue;
    }
    if (h && rank(induced_map(f, n)) != h) iso = false;
  }
  out.homology_isomorphism = iso;
  return out;
}

DoubleCentralizerReport double_centralizer_check(const GroupData& g) {
  DoubleCentralizerReport rep;
  const EndDGA e = end_dga(g);
  const DGModule m = e.degreewise(e.standard_window());
  const GradedVS hd = homology_dims(m);
  for (auto [n, d] : hd.dims())
    if (d) rep.homology.set_dim(n, d);
  const ExtAlgebra lam(g);
  for (int n : lam.degrees()) rep.exterior.set_dim(n, lam.dim(n));

  rep.iota_cycles = true;
  rep.exterior_relations = true;
  for (int i = 0; i < g.rank(); ++i) {
    if (!e.is_zero(e.differential(e.iota(i)))) rep.iota_cycles = false;
    if (!e.is_zero(e.compose(e.iota(i), e.iota(i)))) rep.exterior_relations = false;
    for (int j = 0; j < g.rank(); ++j)
      if (!e.is_zero(e.add(e.compose(e.iota(i), e.iota(j)), e.compose(e.iota(j), e.iota(i)))))
        rep.exterior_relations = false;
  }

  const std::uint32_t cells = static_cast<std::uint32_t>(e.size());
  std::map<int, HomologyPiece> pieces;
  auto classify = [&](const EndDGA::Element& a, int n) {
    auto it = pieces.find(n);
    if (it == pieces.end()) it = pieces.emplace(n, homology(m, n)).first;
    return it->second.classify(e.to_vector(a, n));
  };
  rep.iota_basis = true;
  std::map<int, std::vector<Vector>> classes;
  for (std::uint32_t s = 0; s < cells; ++s) {
    const int n = lam.degree_of(s);
    if (!m.window().certifies(n)) {
      rep.iota_basis = false;
      continue;
    }
    classes[n].push_back(classify(e.iota_product(s), n));
  }
  for (const auto& [n, vs] : classes)
    if (vs.size() != rep.homology.dim(n) || rank(Matrix::from_columns(vs, vs.front().size())) != vs.size())
      rep.iota_basis = false;

  rep.products_in_homology = rep.iota_basis;
  for (std::uint32_t a = 0; a < cells && rep.products_in_homology; ++a)
    for (std::uint32_t b = 0; b < cells; ++b) {
      const int n = lam.degree_of(a) + lam.degree_of(b);
      if (!m.window().certifies(n)) continue;
      const Vector lhs = classify(e.compose(e.iota_product(a), e.iota_product(b)), n);
      const int sign = shuffle_sign(a, b);
      Vector rhs = sign ? classify(e.iota_product(a | b), n) : zero_vector(lhs.size());
      for (auto& c : rhs) c *= sign == 0 ? 1 : sign;
      if (!(lhs == rhs)) rep.products_in_homology = false;
    }
  return rep;
}

DGAlgebra::DGAlgebra(GradedVS space, Window window)
    : space_(std::move(space)), window_(window), d_(space_, space_, -1) {
  for (int n : space_.support())
    require(window_.contains(n), ErrorCode::invalid_argument, "algebra basis outside its window");
}

void DGAlgebra::set_product(int p, int q, Matrix m) {
  require(m.rows() == dim(p + q) && m.cols() == dim(p) * dim(q), ErrorCode::invalid_argument,
          "product table has the wrong shape");
  products_[{p, q}] = std::move(m);
}

Matrix DGAlgebra::product(int p, int q) const {
  auto it = products_.find({p, q});
  if (it != products_.end()) return it->second;
  return Matrix(dim(p + q), dim(p) * dim(q));
}

Vector DGAlgebra::multiply(int p, const Vector& a, int q, const Vector& b) const {
  require(knows_product(p, q), ErrorCode::window_too_small,
          "product in degree " + std::to_string(p + q) + " is outside the window");
  return product(p, q) * kron(a, b);
}

Vector DGAlgebra::word(const std::vector<std::size_t>& factors) const {
  Vector cur = unit_;
  int deg = 0;
  for (auto f : factors) {
    const auto [gd, gi] = generators_.at(f);
    cur = multiply(deg, cur, gd, unit_vector(dim(gd), gi));
    deg += gd;
  }
  return cur;
}

void DGAlgebra::set_generator_differential(std::size_t gen, const Vector& value) {
  require(!factorization_.empty(), ErrorCode::invalid_argument, "algebra has no presentation");
  const auto [gd, gi] = generators_.at(gen);
  require(value.size() == dim(gd - 1), ErrorCode::invalid_argument, "differential has wrong dimension");
  generator_d_.resize(generators_.size());
  generator_d_[gen] = value;
  for (int n : space_.support()) {
    if (!window_.contains(n - 1)) continue;
    Matrix d(dim(n - 1), dim(n));
    const auto& facts = factorization_[degree_slot_.at(n)];
    for (std::size_t k = 0; k < facts.size(); ++k) {
      const auto& f = facts[k];
      Vector col = zero_vector(dim(n - 1));
      int before = 0;
      for (std::size_t m = 0; m < f.size(); ++m) {
        const auto [md, mi] = generators_[f[m]];
        const Vector& dg = generator_d_[f[m]];
        if (!dg.empty() && !borel::is_zero(dg)) {
          const Vector left = word(std::vector<std::size_t>(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(m)));
          int right_deg = 0;
          const std::vector<std::size_t> tail(f.begin() + static_cast<std::ptrdiff_t>(m) + 1, f.end());
          for (auto t : tail) right_deg += generators_[t].first;
          const Vector right = word(tail);
          Vector term = multiply(before + md - 1, multiply(before, left, md - 1, dg), right_deg, right);
          if (before % 2)
            for (auto& c : term) c = -c;
          for (std::size_t c = 0; c < col.size(); ++c) col[c] += term[c];
        }
        (void)mi;
        before += md;
      }
      d.set_column(k, col);
    }
    d_.set_block(n, d);
  }
}

void DGAlgebra::validate() const {
  const auto degs = space_.support();
  for (int n : degs)
    if (window_.contains(n - 2) && dim(n - 2) && !(d(n - 1) * d(n)).is_zero())
      fail(ErrorCode::invariant_violation, "d^2 != 0 in degree " + std::to_string(n));
  require(unit_.size() == dim(0), ErrorCode::invariant_violation, "unit missing");
  for (int p : degs)
    for (std::size_t i = 0; i < dim(p); ++i) {
      const Vector b = unit_vector(dim(p), i);
      if (!(multiply(0, unit_, p, b) == b) || !(multiply(p, b, 0, unit_) == b))
        fail(ErrorCode::invariant_violation, "unit law fails in degree " + std::to_string(p));
    }
  for (int p : degs)
    for (int q : degs)
      for (int s : degs) {
        if (!window_.contains(p + q + s)) continue;
        for (std::size_t i = 0; i < dim(p); ++i)
          for (std::size_t j = 0; j < dim(q); ++j)
            for (std::size_t k = 0; k < dim(s); ++k) {
              const Vector a = unit_vector(dim(p), i), b = unit_vector(dim(q), j), c = unit_vector(dim(s), k);
              if (!(multiply(p + q, multiply(p, a, q, b), s, c) == multiply(p, a, q + s, multiply(q, b, s, c))))
                fail(ErrorCode::invariant_violation, "associativity fails in degrees " + std::to_string(p) + ", " +
                                                          std::to_string(q) + ", " + std::to_string(s));
            }
      }
  for (int p : degs)
    for (int q : degs) {
      const int n = p + q;
      if (!window_.contains(n - 1)) continue;
      for (std::size_t i = 0; i < dim(p); ++i)
        for (std::size_t j = 0; j < dim(q); ++j) {
          const Vector a = unit_vector(dim(p), i), b = unit_vector(dim(q), j);
          const Vector lhs = dim(n) ? d(n) * multiply(p, a, q, b) : zero_vector(dim(n - 1));
          Vector rhs = zero_vector(dim(n - 1));
          if (dim(p - 1)) {
            const Vector t = multiply(p - 1, d(p) * a, q, b);
            for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] += t[c];
          }
          if (dim(q - 1)) {
            const Vector t = multiply(p, a, q - 1, d(q) * b);
            for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] += (p % 2 ? -1 : 1) * t[c];
          }
          if (!(lhs == rhs)) fail(ErrorCode::invariant_violation, "Leibniz rule fails in degree " + std::to_string(n));
        }
    }
}

DGModule DGAlgebra::underlying() const {
  DGModule m(AlgebraKind::poly, GroupData(std::vector<int>{}, "trivial"), space_, window_);
  for (int n : space_.support())
    if (window_.contains(n - 1)) m.set_d(n, d(n));
  return m;
}

namespace {

struct PresentedBasis {
  // key -> (degree, index): keys are exponent vectors over even generators plus odd subset, or words.
  std::map<int, std::vector<std::vector<std::size_t>>> factorizations;
};

DGAlgebra assemble(const std::map<int, std::size_t>& dims, int lo,
                   const std::function<std::pair<int, std::pair<std::size_t, Scalar>>(int, std::size_t, int, std::size_t)>&
                       mult,
                   std::size_t unit_index) {
  GradedVS space;
  for (auto [n, d] : dims) space.set_dim(n, d);
  DGAlgebra a(space, Window::make(lo, 0, false, true));
  a.set_unit(unit_vector(space.dim(0), unit_index));
  for (auto [p, dp] : dims)
    for (auto [q, dq] : dims) {
      if (p + q < lo) continue;
      Matrix m(space.dim(p + q), dp * dq);
      for (std::size_t i = 0; i < dp; ++i)
        for (std::size_t j = 0; j < dq; ++j) {
          const auto [deg, val] = mult(p, i, q, j);
          if (sgn(val.second) != 0) m(val.first, i * dq + j) += val.second;
          (void)deg;
        }
      a.set_product(p, q, m);
    }
  return a;
}

}  // namespace

DGAlgebra DGAlgebra::polynomial(const GroupData& g, int lo) {
  const PolyAlgebra r(g);
  std::map<int, std::size_t> dims;
  for (int n = lo; n <= 0; ++n)
    if (r.dim(n)) dims[n] = r.dim(n);
  DGAlgebra a = assemble(dims, lo, [&](int p, std::size_t i, int q, std::size_t j) {
    const Exponent e = add_exponents(r.monomials(p)[i], r.monomials(q)[j]);
    return std::make_pair(p + q, std::make_pair(r.index(e), Scalar(1)));
  }, 0);
  for (int n : a.space().support()) {
    a.degree_slot_[n] = a.factorization_.size();
    std::vector<std::vector<std::size_t>> facts;
    for (const auto& e : r.monomials(n)) {
      std::vector<std::size_t> f;
      for (std::size_t v = 0; v < e.size(); ++v) f.insert(f.end(), static_cast<std::size_t>(e[v]), v);
      facts.push_back(f);
    }
    a.factorization_.push_back(facts);
  }
  for (int i = 0; i < g.rank(); ++i) {
    Exponent e(static_cast<std::size_t>(g.rank()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    a.generators_.emplace_back(g.poly_degree(i), r.index(e));
  }
  return a;
}

DGAlgebra DGAlgebra::divided_power(const GroupData& g, int lo) {
  const PolyAlgebra r(g);
  std::map<int, std::size_t> dims;
  for (int n = lo; n <= 0; ++n)
    if (r.dim(n)) dims[n] = r.dim(n);
  auto binom = [](int n, int k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(out);
  };
  DGAlgebra a = assemble(dims, lo, [&](int p, std::size_t i, int q, std::size_t j) {
    const Exponent& x = r.monomials(p)[i];
    const Exponent& y = r.monomials(q)[j];
    Scalar c = 1;
    for (std::size_t v = 0; v < x.size(); ++v) c *= binom(x[v] + y[v], x[v]);
    return std::make_pair(p + q, std::make_pair(r.index(add_exponents(x, y)), c));
  }, 0);
  for (int i = 0; i < g.rank(); ++i) {
    Exponent e(static_cast<std::size_t>(g.rank()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    a.generators_.emplace_back(g.poly_degree(i), r.index(e));
  }
  return a;
}

DGAlgebra DGAlgebra::free_commutative(const std::vector<int>& degrees, int lo) {
  for (int d : degrees) require(d < 0, ErrorCode::invalid_argument, "generators must have negative degree");
  std::vector<std::size_t> even, odd;
  for (std::size_t k = 0; k < degrees.size(); ++k) (degrees[k] % 2 ? odd : even).push_back(k);
  std::vector<int> codegrees;
  for (auto k : even) codegrees.push_back(-degrees[k]);
  const PolyAlgebra r{GroupData(codegrees, "even part")};
  struct Key {
    std::uint32_t odd;
    Exponent even;
  };
  std::map<int, std::vector<Key>> basis;
  for (std::uint32_t s = 0; s < (1u << odd.size()); ++s) {
    int od = 0;
    for (std::size_t k = 0; k < odd.size(); ++k)
      if (contains(s, static_cast<int>(k))) od += degrees[odd[k]];
    for (int n = lo; n <= 0; ++n)
      for (const auto& e : r.monomials(n - od)) basis[n].push_back({s, e});
  }
  std::map<int, std::size_t> dims;
  for (const auto& [n, b] : basis)
    if (!b.empty()) dims[n] = b.size();
  auto find = [&](int n, std::uint32_t s, const Exponent& e) -> std::size_t {
    const auto& b = basis.at(n);
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k].odd == s && b[k].even == e) return k;
    fail(ErrorCode::invariant_violation, "basis lookup failed");
  };
  DGAlgebra a = assemble(dims, lo, [&](int p, std::size_t i, int q, std::size_t j) {
    const Key& x = basis.at(p)[i];
    const Key& y = basis.at(q)[j];
    const int sign = shuffle_sign(x.odd, y.odd);
    if (sign == 0) return std::make_pair(p + q, std::make_pair(std::size_t{0}, Scalar(0)));
    return std::make_pair(p + q, std::make_pair(find(p + q, x.odd | y.odd, add_exponents(x.even, y.even)), Scalar(sign)));
  }, 0);
  for (int n : a.space().support()) {
    a.degree_slot_[n] = a.factorization_.size();
    std::vector<std::vector<std::size_t>> facts;
    for (const auto& key : basis.at(n)) {
      std::vector<std::size_t> f;
      for (std::size_t v = 0; v < even.size(); ++v) f.insert(f.end(), static_cast<std::size_t>(key.even[v]), even[v]);
      for (std::size_t k = 0; k < odd.size(); ++k)
        if (contains(key.odd, static_cast<int>(k))) f.push_back(odd[k]);
      facts.push_back(f);
    }
    a.factorization_.push_back(facts);
  }
  for (std::size_t g = 0; g < degrees.size(); ++g) {
    const auto pos = std::find(odd.begin(), odd.end(), g);
    Key key{0, Exponent(even.size(), 0)};
    if (pos != odd.end())
      key.odd = 1u << (pos - odd.begin());
    else
      key.even[static_cast<std::size_t>(std::find(even.begin(), even.end(), g) - even.begin())] = 1;
    a.generators_.emplace_back(degrees[g], find(degrees[g], key.odd, key.even));
  }
  return a;
}

DGAlgebra DGAlgebra::free_associative(const std::vector<int>& degrees, int lo) {
  for (int d : degrees) require(d < 0, ErrorCode::invalid_argument, "generators must have negative degree");
  std::map<int, std::vector<std::vector<std::size_t>>> words;
  std::vector<std::pair<std::vector<std::size_t>, int>> frontier{{{}, 0}};
  while (!frontier.empty()) {
    std::vector<std::pair<std::vector<std::size_t>, int>> next;
    for (const auto& [w, deg] : frontier) {
      words[deg].push_back(w);
      for (std::size_t g = 0; g < degrees.size(); ++g)
        if (deg + degrees[g] >= lo) {
          auto w2 = w;
          w2.push_back(g);
          next.emplace_back(std::move(w2), deg + degrees[g]);
        }
    }
    frontier = std::move(next);
  }
  std::map<int, std::size_t> dims;
  for (const auto& [n, ws] : words) dims[n] = ws.size();
  auto find = [&](int n, const std::vector<std::size_t>& w) -> std::size_t {
    const auto& ws = words.at(n);
    return static_cast<std::size_t>(std::find(ws.begin(), ws.end(), w) - ws.begin());
  };
  DGAlgebra a = assemble(dims, lo, [&](int p, std::size_t i, int q, std::size_t j) {
    auto w = words.at(p)[i];
    const auto& v = words.at(q)[j];
    w.insert(w.end(), v.begin(), v.end());
    return std::make_pair(p + q, std::make_pair(find(p + q, w), Scalar(1)));
  }, 0);
  for (int n : a.space().support()) {
    a.degree_slot_[n] = a.factorization_.size();
    a.factorization_.push_back(words.at(n));
  }
  for (std::size_t g = 0; g < degrees.size(); ++g) a.generators_.emplace_back(degrees[g], find(degrees[g], {g}));
  return a;
}

FormalityMap formality_map(const DGAlgebra& a) {
  const DGModule m = a.underlying();
  const Window& w = m.window();
  const int glo = w.guaranteed_lo, ghi = std::min(w.guaranteed_hi, 0);
  std::map<int, HomologyPiece> pieces;
  for (int n = glo; n <= ghi; ++n) {
    if (a.dim(n) == 0) continue;
    auto piece = homology(m, n);
    if (piece.dim && n % 2)
      fail(ErrorCode::not_polynomial_homology, "homology in odd degree " + std::to_string(n));
    pieces.emplace(n, std::move(piece));
  }
  for (int n = ghi + 1; n <= w.hi; ++n)
    if (a.dim(n)) fail(ErrorCode::not_polynomial_homology, "positive degrees present");
  require(pieces.count(0) && pieces.at(0).dim == 1 && !pieces.at(0).is_boundary(a.unit()),
          ErrorCode::not_polynomial_homology, "homology in degree 0 is not spanned by the unit");

  FormalityMap out;
  std::vector<int> codegrees;
  std::vector<Vector> reps;
  std::vector<int> rep_degrees;
  // Product of the chosen representatives with the given exponents, in generator order.
  auto monomial_image = [&](const Exponent& e) {
    Vector cur = a.unit();
    int deg = 0;
    for (std::size_t g = 0; g < e.size(); ++g)
      for (int k = 0; k < e[g]; ++k) {
        cur = a.multiply(deg, cur, rep_degrees[g], reps[g]);
        deg += rep_degrees[g];
      }
    return cur;
  };
  auto monomials_of = [&](int n) {
    std::vector<Exponent> out_e;
    if (codegrees.empty()) {
      if (n == 0) out_e.emplace_back();
      return out_e;
    }
    const PolyAlgebra r{GroupData(codegrees)};
    return r.monomials(n);
  };
  for (int n = -1; n >= glo; --n) {
    auto it = pieces.find(n);
    if (it == pieces.end() || it->second.dim == 0) continue;
    const HomologyPiece& h = it->second;
    std::vector<Vector> decomposable;
    for (const auto& e : monomials_of(n)) decomposable.push_back(h.classify(monomial_image(e)));
    std::vector<Vector> candidates;
    for (std::size_t j = 0; j < h.dim; ++j) candidates.push_back(unit_vector(h.dim, j));
    Matrix span(h.dim, decomposable.size() + candidates.size());
    for (std::size_t j = 0; j < decomposable.size(); ++j) span.set_column(j, decomposable[j]);
    for (std::size_t j = 0; j < candidates.size(); ++j) span.set_column(decomposable.size() + j, candidates[j]);
    for (auto c : reduced_row_echelon(span).pivot_columns) {
      if (c < decomposable.size()) continue;
      codegrees.push_back(-n);
      reps.push_back(h.representatives[c - decomposable.size()]);
      rep_degrees.push_back(n);
    }
  }
  for (const auto& [n, h] : pieces) {
    const auto mons = monomials_of(n);
    if (mons.size() != h.dim)
      fail(ErrorCode::not_polynomial_homology, "homology in degree " + std::to_string(n) + " is not polynomial");
    if (h.dim == 0) continue;
    std::vector<Vector> cls;
    for (const auto& e : mons) cls.push_back(h.classify(monomial_image(e)));
    if (rank(Matrix::from_columns(cls, h.dim)) != h.dim)
      fail(ErrorCode::not_polynomial_homology, "generators satisfy a relation in degree " + std::to_string(n));
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (!a.knows_product(rep_degrees[i], rep_degrees[j])) continue;
      const Vector ij = a.multiply(rep_degrees[i], reps[i], rep_degrees[j], reps[j]);
      const Vector ji = a.multiply(rep_degrees[j], reps[j], rep_degrees[i], reps[i]);
      if (!(ij == ji))
        fail(ErrorCode::not_graded_commutative, "representatives " + std::to_string(i + 1) + " and " +
                                                    std::to_string(j + 1) + " do not commute in degree " +
                                                    std::to_string(rep_degrees[i] + rep_degrees[j]));
    }

  out.source = codegrees.empty() ? GroupData(std::vector<int>{}, "trivial") : GroupData(codegrees);
  for (std::size_t i = 0; i < reps.size(); ++i) out.generator_images.emplace_back(rep_degrees[i], reps[i]);
  bool iso = true;
  for (int n = w.lo; n <= 0; ++n) {
    const auto mons = monomials_of(n);
    if (mons.empty() && a.dim(n) == 0) continue;
    std::vector<Vector> cols;
    for (const auto& e : mons) cols.push_back(monomial_image(e));
    out.blocks[n] = Matrix::from_columns(cols, a.dim(n));
    if (n < glo) continue;
    const auto& h = pieces.count(n) ? pieces.at(n) : HomologyPiece{};
    std::vector<Vector> cls;
    for (const auto& c : cols) {
      if (!(a.dim(n - 1) == 0 || !w.contains(n - 1) || borel::is_zero(a.d(n) * c))) iso = false;
      if (h.dim) cls.push_back(h.classify(c));
    }
    if (h.dim != cols.size() || (h.dim && rank(Matrix::from_columns(cls, h.dim)) != h.dim)) iso = false;
  }
  out.quasi_isomorphism = iso;
  return out;
}

RecognitionResult recognize_k(const DGModule& m) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "recognition needs a module over H*(BG)");
  const GroupData& g = m.group();
  require(m.window().certifies(0), ErrorCode::linear_solve_failed, "degree 0 is not certified");
  const GradedVS h = homology_dims(m);
  std::size_t total = 0;
  for (auto [n, d] : h.dims()) total += d;
  require(total == 1 && h.dim(0) == 1, ErrorCode::homology_not_k, "homology is not Q in degree 0");

  RecognitionResult out;
  out.kbar = koszul_model(g);
  const std::uint32_t cells = 1u << g.rank();
  out.images.assign(cells, Vector{});
  out.images[0] = homology(m, 0).representatives.front();
  for (std::uint32_t t = 1; t < cells; ++t) {
    const int n = koszul_degree(g, t);
    require(m.knows(n) && m.knows(n - 1), ErrorCode::linear_solve_failed,
            "degree " + std::to_string(n) + " is outside the window");
    Vector rhs = zero_vector(m.dim(n - 1));
    for (int j = 0; j < g.rank(); ++j) {
      if (!contains(t, j)) continue;
      const std::uint32_t rest = t & ~(1u << j);
      const Vector& src = out.images[rest];
      if (src.empty() || m.dim(n - 1) == 0) continue;
      const Vector x = m.action(j, koszul_degree(g, rest)) * src;
      for (std::size_t c = 0; c < rhs.size(); ++c) rhs[c] += sign_before(t, j) * x[c];
    }
    if (m.dim(n) == 0) {
      require(borel::is_zero(rhs), ErrorCode::linear_solve_failed,
              "no room for a null-homotopy in degree " + std::to_string(n));
      out.images[t] = Vector{};
      continue;
    }
    const auto sol = solve(m.d(n), rhs);
    require(sol.has_value(), ErrorCode::linear_solve_failed,
            "null-homotopy equation has no solution in degree " + std::to_string(n));
    out.images[t] = *sol;
  }

  const Window& mw = m.window();
  const int lo = mw.closed_below ? mw.lo - g.dim() - 2 * g.max_codegree() - 2 : mw.lo - 1;
  const DGModule src = to_degreewise(out.kbar, Window::make(lo, std::max(mw.hi, 0) + 1, false, true));
  ChainMap f{src, m, 0, {}};
  for (int n : src.degrees()) {
    if (!m.window().contains(n) || m.dim(n) == 0) continue;
    f.set_block(n, evaluate_on_cells(out.kbar, out.images, m, n));
  }
  f.validate();
  out.map = f;
  out.cone_acyclic = is_acyclic(mapping_cone(f));
  out.nonzero_on_h0 = !induced_map(f, 0).is_zero();
  require(out.cone_acyclic && out.nonzero_on_h0, ErrorCode::invariant_violation,
          "constructed map is not a quasi-isomorphism");
  return out;
}

}  // namespace borel
