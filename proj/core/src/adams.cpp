#include "borel/adams.hpp"

#include <algorithm>

#include "borel/error.hpp"

namespace borel {

namespace {

GradedVS nonzero_part(const GradedVS& v) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d) out.set_dim(n, d);
  return out;
}

GradedVS certified_part(const GradedVS& v, const Window& w) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d && w.certifies(n)) out.set_dim(n, d);
  return out;
}

}  // namespace

DGModule realize_injective(const GroupData& g, int span) {
  const Window w = g.rank() == 0 ? Window::closed(0, 0) : Window::make(0, span, true, false);
  return shift(basic_injective(g, w), g.dim());
}

AdamsTower adams_tower(const DGModule& y, int margin) {
  require(y.window().closed_below && y.window().closed_above, ErrorCode::not_finite_length,
          "Adams tower needs a finite-length module");
  AdamsTower t;
  t.resolution = injective_resolution(y);
  const ResolutionData& res = t.resolution;
  const int s = res.length();
  const auto degs = y.degrees();
  t.stages.push_back(y);
  t.stage_homology.push_back(nonzero_part(homology_dims(y)));
  t.syzygies.push_back(nonzero_part(y.space()));
  if (degs.empty() || s < 0) {
    t.syzygies_match = true;
    t.terminates = y.total_dim() == 0;
    return t;
  }
  const int top = degs.back() + margin;
  int bottom = degs.front();
  for (int j = 0; j <= s; ++j)
    for (auto [sh, mult] : res.injective_term(j)) bottom = std::min(bottom, sh - j);
  bottom -= 1;

  for (int j = 0; j <= s; ++j) {
    const DGModule& cur = t.stages.back();
    const DGModule target = shift(injective_term_module(res, j, Window::make(bottom + j, top, false, false)), -j);
    ChainMap f{cur, target, 0, {}};
    for (int n : cur.degrees()) {
      if (!target.window().contains(n) || target.dim(n) == 0) continue;
      if (j == 0) {
        f.set_block(n, injective_coboundary(res, -1, n));
        continue;
      }
      // Y_j at n is Sigma^{-(j-1)} I^{j-1} at n + 1 followed by Y_{j-1} at n.
      const Matrix delta = injective_coboundary(res, j - 1, n + j);
      Matrix b(target.dim(n), cur.dim(n));
      if (delta.rows() && delta.cols()) b.set_block(0, 0, delta);
      f.set_block(n, b);
    }
    f.validate();
    t.maps.push_back(f);
    t.targets.push_back(target);
    t.stages.push_back(fibre(f));
    const DGModule& next = t.stages.back();
    t.stage_homology.push_back(nonzero_part(homology_dims(next)));
    // Sigma^{-(j+1)} of the image of I^j -> I^{j+1}.
    GradedVS syz;
    const Window& w = next.window();
    for (int n = w.lo; n <= w.hi; ++n) {
      if (!w.certifies(n)) continue;
      const Matrix delta = injective_coboundary(res, j, n + j + 1);
      const std::size_t rk = delta.rows() && delta.cols() ? rank(delta) : 0;
      if (rk) syz.set_dim(n, rk);
    }
    t.syzygies.push_back(syz);
  }
  t.syzygies_match = true;
  for (std::size_t j = 0; j < t.stages.size(); ++j)
    if (!(certified_part(t.stage_homology[j], t.stages[j].window()) ==
          certified_part(t.syzygies[j], t.stages[j].window())))
      t.syzygies_match = false;
  t.terminates = s <= y.group().rank() && t.stage_homology.back().total_dim() == 0;
  return t;
}

Page e2_page(const DGModule& x, const DGModule& y) {
  require(x.window().closed_below && x.window().closed_above && y.window().closed_below && y.window().closed_above,
          ErrorCode::not_finite_length, "E_2 page needs modules with finite homology");
  Page p;
  const DGModule hx = homology_module(x);
  const DGModule hy = homology_module(y);
  p.e2 = ext_bigraded(hx, hy);
  p.e2_total = nonzero_part(p.e2.total());
  const auto tdeg = p.e2_total.support();
  p.lo = (tdeg.empty() ? 0 : tdeg.front()) - 2;
  p.hi = (tdeg.empty() ? 0 : tdeg.back()) + 2;
  p.abutment = rhom_homology(x, y, Window::make(p.lo, p.hi, false, false));
  p.bounded = true;
  p.degenerate = true;
  for (int n = p.lo; n <= p.hi; ++n) {
    const std::size_t a = p.abutment.dim(n), e = p.e2_total.dim(n);
    if (a > e) p.bounded = false;
    if (a != e) {
      p.degenerate = false;
      p.non_degenerate_degrees.push_back(n);
    }
    const long sign = n % 2 ? -1 : 1;
    p.euler_e2 += sign * static_cast<long>(e);
    p.euler_abutment += sign * static_cast<long>(a);
  }
  p.rows_vanish_above_rank = p.e2.max_row() <= x.group().rank();
  return p;
}

InjectiveCaseReport injective_case_check(const DGModule& x, const std::vector<int>& shifts, int lo, int hi,
                                         int top) {
  const GroupData& g = x.group();
  std::vector<DGModule> parts;
  for (int s : shifts) parts.push_back(shift(basic_injective(g, Window::make(0, top - s, true, g.rank() == 0)), s));
  const DGModule inj = parts.empty() ? zero_module(AlgebraKind::poly, g) : direct_sum(parts);
  InjectiveCaseReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.derived = rhom_homology(x, inj, Window::make(lo, hi, false, false));
  const DGModule hx = homology_module(x);
  for (int n = lo; n <= hi; ++n) {
    const std::size_t d = module_maps_dimension(hx, inj, n, true);
    if (d) rep.underived.set_dim(n, d);
  }
  rep.agree = rep.derived == rep.underived;
  return rep;
}

WhiteheadReport whitehead_detect(const DGModule& m) {
  require(m.kind() == AlgebraKind::poly, ErrorCode::algebra_mismatch, "detection needs a module over H*(BG)");
  require(is_torsion(m), ErrorCode::not_torsion, "detection needs a torsion module");
  const GroupData& g = m.group();
  WhiteheadReport rep;
  rep.homology_zero = is_acyclic(m);
  DGModule previous;
  for (int i = 0; i <= g.rank(); ++i) {
    const DGModule h = hom_R(koszul_stage(g, i), m);
    WhiteheadStage st;
    st.stage = i;
    st.homology = nonzero_part(homology_dims(h));
    st.zero = st.homology.total_dim() == 0;
    if (i > 0) {
      const DGModule hm = homology_module(previous);
      const Window& w = hm.window();
      st.acts_invertibly = true;
      const int d = g.codegree(i - 1);
      for (int n = w.lo - d; n <= w.hi + d; ++n) {
        const int t = n - d;
        if (!w.certifies(n) || !w.certifies(t)) continue;
        if (hm.dim(n) != hm.dim(t) || (hm.dim(n) && rank(hm.action(i - 1, n)) != hm.dim(n)))
          st.acts_invertibly = false;
      }
    }
    rep.stages.push_back(st);
    previous = h;
  }
  rep.koszul_zero = rep.stages.back().zero;
  rep.agree = rep.homology_zero == rep.koszul_zero;
  rep.certificate = !rep.homology_zero || rep.koszul_zero;
  for (std::size_t i = 1; i < rep.stages.size(); ++i)
    if (rep.stages[i].zero && !(rep.stages[i].acts_invertibly && rep.stages[i - 1].zero)) rep.certificate = false;
  return rep;
}

}  // namespace borel
