// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "borel/adams.hpp"
#include "borel/duality.hpp"
#include "borel/error.hpp"
#include "borel/groups.hpp"
#include "support/oracles.hpp"
#include "support/random_modules.hpp"

using namespace borel;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && s >= limit_s) {
    if (out.ok) out.detail = "over the time limit of " + std::to_string(limit_s) + " s";
    out.ok = false;
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), s,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

GroupData group(std::vector<int> c) { return GroupData(std::move(c)); }

GradedVS nonzero(const GradedVS& v) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d) out.set_dim(n, d);
  return out;
}

GradedVS restricted(const GradedVS& v, int lo, int hi) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d && lo <= n && n <= hi) out.set_dim(n, d);
  return out;
}

DGModule ext_residue(const GroupData& g) {
  return DGModule(AlgebraKind::ext, g, GradedVS(std::map<int, std::size_t>{{0, 1}}), Window::closed(0, 0));
}

/// Random torsion module of total dimension at most `cap`.
DGModule small_torsion(const GroupData& g, test_support::Rng& rng, std::size_t cap) {
  while (true) {
    const DGModule m = rng() % 3 ? test_support::random_dg_torsion(g, rng, cap / 2)
                                 : test_support::random_finite_module(g, rng, cap);
    if (m.total_dim() <= cap) return m;
  }
}

}  // namespace

int main() {
  criterion(1, "Koszul model has homology k", 3, [] {
    Outcome o;
    for (const auto& g : {group({2}), group({2, 2}), group({4, 6})}) {
      const auto start = std::chrono::steady_clock::now();
      const DGModule kb = to_degreewise(koszul_model(g), Window::make(-4 * g.dim() - 8, 0, false, true));
      o.expect(nonzero(homology_dims(kb)) == GradedVS(std::map<int, std::size_t>{{0, 1}}),
               "H(k-bar) != k for " + g.describe());
      o.expect(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1,
               "over 1 s for " + g.describe());
    }
    return o;
  });

  criterion(2, "Ext(k,k) is the exterior algebra H_*(G)", 10, [] {
    Outcome o;
    for (const auto& g : {group({2}), group({2, 2}), group({4}), group({4, 6})}) {
      BigradedTable expected;
      for (std::uint32_t s = 0; s < (1u << g.rank()); ++s) {
        int size = 0, t = 0;
        for (int i = 0; i < g.rank(); ++i)
          if (s >> i & 1u) ++size, t += g.codegree(i);
        expected.set(size, t, expected.at(size, t) + 1);
      }
      const BigradedTable e = ext_bigraded(residue_field(g), residue_field(g));
      o.expect(e == expected, "bigraded table differs for " + g.describe());
      GradedVS ext_dims;
      for (auto [n, d] : oracle::exterior_dims(g.codegrees())) ext_dims.set_dim(n, d);
      o.expect(nonzero(e.total()) == ext_dims, "total degrees n = t - s differ for " + g.describe());
    }
    return o;
  });

  criterion(3, "free and injective Ext routes agree on 60 random pairs", 120, [] {
    Outcome o;
    test_support::Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      const GroupData g = trial % 2 ? group({2, 2}) : group({2});
      const DGModule m = test_support::random_finite_module(g, rng, trial % 2 ? 4 : 6);
      const DGModule n = test_support::random_finite_module(g, rng, trial % 2 ? 4 : 6);
      o.expect(ext_bigraded(m, n, ExtRoute::via_free) == ext_bigraded(m, n, ExtRoute::via_injective),
               "routes differ on trial " + std::to_string(trial));
    }
    return o;
  });

  criterion(4, "double centralizer: H(End(k-bar)) is the exterior algebra on iota_i", 30, [] {
    Outcome o;
    for (const auto& g : {group({2}), group({4}), group({2, 2}), group({4, 6})}) {
      const auto r = double_centralizer_check(g);
      GradedVS ext_dims;
      for (auto [n, d] : oracle::exterior_dims(g.codegrees())) ext_dims.set_dim(n, d);
      o.expect(r.ok(), "check failed for " + g.describe());
      o.expect(nonzero(r.homology) == ext_dims, "dims differ from the oracle for " + g.describe());
    }
    return o;
  });

  criterion(5, "Cartan map End(k-bar) -> Hom(k-bar, k) is a multiplicative homology isomorphism", 30, [] {
    Outcome o;
    for (const auto& g : {group({2}), group({4}), group({2, 2}), group({4, 6})}) {
      const CartanMap c = cartan_map(end_dga(g));
      o.expect(c.unital && c.multiplicative_on_iota && c.homology_isomorphism, "failed for " + g.describe());
    }
    return o;
  });

  // Criteria 6 and 7 share the random pages.
  std::vector<Page> pages;
  criterion(6, "circle Adams spectral sequence degenerates on 120 random pairs", 120, [&] {
    Outcome o;
    test_support::Rng rng(6006);
    const GroupData g = group({2});
    for (int trial = 0; trial < 120; ++trial) {
      const DGModule x = small_torsion(g, rng, 8);
      const DGModule y = small_torsion(g, rng, 8);
      const Page p = e2_page(x, y);
      const GradedVS oracle_rhom = oracle::rhom(x, y);
      o.expect(restricted(oracle_rhom, p.lo, p.hi) == oracle_rhom, "oracle outside the page window");
      o.expect(p.abutment == oracle_rhom, "abutment differs from the oracle on trial " + std::to_string(trial));
      o.expect(nonzero(p.e2_total) == oracle_rhom, "E2 row sum differs from [X,Y] on trial " + std::to_string(trial));
      pages.push_back(p);
    }
    std::size_t nonzero_pages = 0;
    for (const auto& p : pages) nonzero_pages += p.abutment.total_dim() > 0;
    o.expect(2 * nonzero_pages > pages.size(), "most random pages are zero");
    return o;
  });

  criterion(7, "E2 rows vanish above the rank", 120, [&] {
    Outcome o;
    for (const auto& p : pages) o.expect(p.e2.max_row() <= 1, "row above 1 for the circle");
    test_support::Rng rng(7007);
    const GroupData g = group({2, 2});
    for (int trial = 0; trial < 30; ++trial) {
      const Page p = e2_page(small_torsion(g, rng, 6), small_torsion(g, rng, 6));
      o.expect(p.e2.max_row() <= 2, "row above 2 for T^2");
      o.expect(p.rows_vanish_above_rank, "flag disagrees");
    }
    return o;
  });

  criterion(8, "Koszul duality round trips", 120, [] {
    Outcome o;
    for (const auto& g : {group({2}), group({2, 2})}) {
      const int top = 20;
      const DGModule sq = functor_S(ext_residue(g), top);
      const GradedVS h = homology_dims(sq);
      for (int n = 0; n < top; ++n)
        o.expect(h.dim(n) == oracle::monomial_count(g.codegrees(), n), "S(Q) is not I for " + g.describe());
      const DGModule sl = functor_S(exterior_quotient(g, {}), top);
      o.expect(nonzero(homology_dims(sl)) == GradedVS(std::map<int, std::size_t>{{0, 1}}),
               "H(S(Lambda)) is not k for " + g.describe());
    }
    test_support::Rng rng(8008);
    for (const auto& g : {group({2}), group({2, 2})})
      for (int trial = 0; trial < 25; ++trial) {
        o.expect(roundtrip_lambda(test_support::random_ext_module(g, rng, 4)).agree,
                 "T S differs on " + g.describe() + " trial " + std::to_string(trial));
        const DGModule m = trial % 2 ? test_support::random_dg_torsion(g, rng, 4)
                                     : test_support::random_finite_module(g, rng, 4);
        o.expect(roundtrip_torsion(m).agree, "S T differs on " + g.describe() + " trial " + std::to_string(trial));
      }
    return o;
  });

  criterion(9, "recognize_k returns verified quasi-isomorphisms", 0, [] {
    Outcome o;
    test_support::Rng rng(9009);
    for (const auto& g : {group({2}), group({2, 2}), group({4, 6})}) {
      std::vector<DGModule> inputs = {residue_field(g),
                                      to_degreewise(koszul_model(g), Window::make(-3 * g.dim() - 6, 0, false, true))};
      for (int trial = 0; trial < 3; ++trial) {
        const DGModule x = test_support::random_finite_module(g, rng, 4);
        inputs.push_back(test_support::change_basis(direct_sum({residue_field(g), mapping_cone(identity_map(x))}), rng));
      }
      for (const auto& m : inputs) {
        const RecognitionResult r = recognize_k(m);
        o.expect(r.cone_acyclic && r.nonzero_on_h0 && r.map.is_chain_map(), "failed over " + g.describe());
      }
    }
    return o;
  });

  criterion(10, "T < SU(2): derived dual, shift law and adjunctions", 60, [] {
    Outcome o;
    const RingMap r = catalog_pair("T<SU(2)");
    const DerivedDual d = derived_dual(r);
    o.expect(d.hilbert_certificate && d.shifted_free, "D(Q[y]) is not a free module");
    const Window& w = d.homology.window();
    for (int n = w.lo; n <= w.hi; ++n)
      if (w.certifies(n)) o.expect(d.homology.dim(n) == (n <= 2 && n % 2 == 0 ? 1u : 0u), "D(Q[y]) != Sigma^2 Q[y]");
    const GroupData t = r.target;
    const auto inj = shift_law_check(d, basic_injective(t, Window::make(0, 12, true, false)));
    o.expect(inj.agree && inj.c == 2 && inj.upper_shriek.total_dim() > 0, "shift law fails on I_T");
    test_support::Rng rng(1010);
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = shift_law_check(d, test_support::random_finite_module(t, rng, 5));
      o.expect(s.agree, "shift law fails on random module " + std::to_string(trial));
    }
    o.expect(adjunction_check(r, residue_field(r.source), residue_field(t), -6, 6).agree, "adjunction fails on k");
    for (int trial = 0; trial < 6; ++trial) {
      const auto a = adjunction_check(r, test_support::random_dg_torsion(r.source, rng, 4),
                                      test_support::random_dg_torsion(t, rng, 4), -8, 8);
      o.expect(a.agree, "adjunction fails on random pair " + std::to_string(trial));
    }
    return o;
  });

  criterion(11, "Whitehead detection on 120 random torsion modules", 0, [] {
    Outcome o;
    test_support::Rng rng(1111);
    std::size_t acyclic = 0;
    for (int trial = 0; trial < 120; ++trial) {
      const GroupData g = trial % 2 ? group({2, 2}) : group({2});
      const auto rep = whitehead_detect(test_support::random_dg_torsion(g, rng, 5));
      o.expect(rep.agree && rep.certificate, "detection fails on trial " + std::to_string(trial));
      acyclic += rep.homology_zero;
    }
    o.expect(acyclic > 0, "no acyclic instance was generated");
    return o;
  });

  criterion(12, "Gamma_m: torsion adjunction, Gamma(I) = I, Gamma(R) = 0", 0, [] {
    Outcome o;
    test_support::Rng rng(1212);
    std::size_t maps = 0;
    for (const auto& g : {group({2}), group({2, 4})}) {
      const DGModule r = to_degreewise(free_rank_one(g), Window::make(-40, 0, false, true));
      const DGModule i = basic_injective(g, Window::make(0, 40, true, false));
      o.expect(gamma_m(r).total_dim() == 0, "Gamma(R) != 0");
      o.expect(gamma_m(i).space() == i.space(), "Gamma(I) != I");
      for (int trial = 0; trial < 4; ++trial) {
        const DGModule f = test_support::random_dg_torsion(g, rng, 4);
        const DGModule m = direct_sum({restrict_window(r, -30, 0), f});
        const DGModule gm = gamma_m(m);
        o.expect(homology_dims(gm) == homology_dims(f), "Gamma(R + M) != M");
        const DGModule tor = test_support::random_dg_torsion(g, rng, 4);
        for (int k = -4; k <= 4; ++k) {
          const std::size_t a = module_maps_dimension(tor, m, k);
          o.expect(a == module_maps_dimension(tor, gm, k), "Hom(T, M) != Hom(T, Gamma M) in degree " + std::to_string(k));
          maps += a;
        }
      }
    }
    o.expect(maps > 0, "every Hom space was zero");
    return o;
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures ? 1 : 0;
}
