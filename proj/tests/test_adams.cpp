#include <doctest.h>

#include "borel/adams.hpp"
#include "borel/error.hpp"
#include "support/oracles.hpp"
#include "support/random_modules.hpp"

using namespace borel;

namespace {

GroupData circle() { return GroupData({2}, "T"); }
GroupData torus2() { return GroupData({2, 2}, "T^2"); }

GradedVS restricted(const GradedVS& v, int lo, int hi) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d && lo <= n && n <= hi) out.set_dim(n, d);
  return out;
}

BigradedTable from_oracle(const std::map<std::pair<int, int>, std::size_t>& t) {
  BigradedTable out;
  for (auto [k, d] : t) out.set(k.first, k.second, d);
  return out;
}

}  // namespace

TEST_CASE("realized injectives") {
  const DGModule t = realize_injective(circle(), 10);
  CHECK(t.degrees().front() == 1);
  for (int n = 1; n <= 11; ++n) CHECK(t.dim(n) == oracle::monomial_count({2}, n - 1));
  const DGModule su2 = realize_injective(GroupData({4}), 12);
  CHECK(su2.degrees().front() == 3);
  CHECK(su2.dim(7) == 1);
  CHECK(su2.dim(5) == 0);
  const DGModule triv = realize_injective(GroupData(std::vector<int>{}));
  CHECK(triv.total_dim() == 1);
  CHECK(triv.dim(0) == 1);
}

TEST_CASE("Adams tower of k") {
  const AdamsTower t1 = adams_tower(residue_field(circle()));
  CHECK(t1.length() == 1);
  CHECK(t1.syzygies_match);
  CHECK(t1.terminates);
  // Cokernel of k -> I is Sigma^2 I, so Y_1 has homology Sigma^{-1} Sigma^2 I.
  const DGModule& y1 = t1.stages[1];
  for (int n = -4; n <= y1.window().hi; ++n)
    if (y1.window().certifies(n))
      CHECK(t1.stage_homology[1].dim(n) == (n >= 1 ? oracle::monomial_count({2}, n - 1) : 0));

  const AdamsTower t2 = adams_tower(residue_field(torus2()));
  CHECK(t2.length() == 2);
  CHECK(t2.syzygies_match);
  CHECK(t2.terminates);
  CHECK(t2.stages.size() == 4);
}

TEST_CASE("Adams towers of random finite modules") {
  test_support::Rng rng(81);
  for (int trial = 0; trial < 6; ++trial) {
    const GroupData g = trial % 2 ? torus2() : circle();
    const DGModule y = test_support::random_finite_module(g, rng, 5);
    const AdamsTower t = adams_tower(y);
    CHECK(t.length() <= g.rank());
    CHECK(t.syzygies_match);
    CHECK(t.terminates);
  }
}

TEST_CASE("E2 page for k, k over the circle") {
  const Page p = e2_page(residue_field(circle()), residue_field(circle()));
  CHECK(p.e2.at(0, 0) == 1);
  CHECK(p.e2.at(1, 2) == 1);
  CHECK(p.e2.entries.size() == 2);
  CHECK(p.abutment == GradedVS(std::map<int, std::size_t>{{0, 1}, {1, 1}}));
  CHECK(p.degenerate);
  CHECK(p.bounded);
  CHECK(p.euler_e2 == p.euler_abutment);
  CHECK(p.rows_vanish_above_rank);
}

TEST_CASE("E2 page for k + Sigma k") {
  const GroupData g = circle();
  const DGModule m = direct_sum({residue_field(g), residue_field(g, 1)});
  const Page p = e2_page(m, m);
  CHECK(p.e2 == from_oracle(oracle::ext_table(m, m)));
  std::size_t row0 = 0, row1 = 0;
  for (auto [k, d] : p.e2.entries) (k.first == 0 ? row0 : row1) += d;
  CHECK(row0 == 4);
  CHECK(row1 == 4);
  CHECK(p.bounded);
  CHECK(p.degenerate);
  CHECK(p.abutment == restricted(oracle::rhom(m, m), p.lo, p.hi));
}

TEST_CASE("E2 page of an acyclic input") {
  const GroupData g = circle();
  const DGModule x = mapping_cone(identity_map(residue_field(g)));
  const Page p = e2_page(x, residue_field(g));
  CHECK(p.e2.total().total_dim() == 0);
  CHECK(p.abutment.total_dim() == 0);
}

TEST_CASE("circle: two-row spectral sequence degenerates") {
  test_support::Rng rng(606);
  for (int trial = 0; trial < 12; ++trial) {
    const GroupData g = circle();
    const DGModule x = trial % 3 ? test_support::random_finite_module(g, rng, 4) : test_support::random_dg_torsion(g, rng, 4);
    const DGModule y = test_support::random_dg_torsion(g, rng, 4);
    const Page p = e2_page(x, y);
    CHECK(p.degenerate);
    CHECK(p.rows_vanish_above_rank);
    CHECK(p.euler_e2 == p.euler_abutment);
    const GradedVS o = oracle::rhom(x, y);
    CHECK(p.abutment == restricted(o, p.lo, p.hi));
    CHECK(restricted(o, p.lo, p.hi).total_dim() == o.total_dim());
  }
}

TEST_CASE("rank two pages are bounded by E2") {
  test_support::Rng rng(707);
  for (int trial = 0; trial < 4; ++trial) {
    const GroupData g = torus2();
    const DGModule x = test_support::random_finite_module(g, rng, 3);
    const DGModule y = test_support::random_dg_torsion(g, rng, 3);
    const Page p = e2_page(x, y);
    CHECK(p.bounded);
    CHECK(p.rows_vanish_above_rank);
    CHECK(p.euler_e2 == p.euler_abutment);
  }
}

TEST_CASE("maps into injectives are detected on homology") {
  const GroupData g = circle();
  const auto k = injective_case_check(residue_field(g), {0}, -4, 4);
  CHECK(k.agree);
  CHECK(k.derived == GradedVS(std::map<int, std::size_t>{{0, 1}}));
  // The Koszul model directly: Hom_R(k-bar, I) has homology Q in degree 0.
  const DGModule kb = hom_R(koszul_model(g), basic_injective(g, Window::make(0, 20, true, false)));
  CHECK(homology(kb, 0).dim == 1);
  CHECK(homology(kb, 1).dim == 0);
  CHECK(homology(kb, -1).dim == 0);

  const auto z = injective_case_check(residue_field(g), {}, -4, 4);
  CHECK(z.agree);
  CHECK(z.derived.total_dim() == 0);

  test_support::Rng rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    const DGModule x = test_support::random_dg_torsion(g, rng, 4);
    const auto rep = injective_case_check(x, {0, 3}, -6, 6);
    CHECK(rep.agree);
  }
}

TEST_CASE("Whitehead detection") {
  const GroupData g = circle();
  const auto i = whitehead_detect(basic_injective(g, Window::make(0, 16, true, false)));
  CHECK_FALSE(i.homology_zero);
  CHECK_FALSE(i.koszul_zero);
  CHECK(i.agree);
  const auto c = whitehead_detect(mapping_cone(identity_map(residue_field(g))));
  CHECK(c.homology_zero);
  CHECK(c.koszul_zero);
  CHECK(c.certificate);
  test_support::Rng rng(100);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupData h = trial % 2 ? torus2() : circle();
    const auto rep = whitehead_detect(test_support::random_dg_torsion(h, rng, 5));
    CHECK(rep.agree);
    CHECK(rep.certificate);
  }
  CHECK_THROWS_AS(whitehead_detect(to_degreewise(free_rank_one(g), Window::make(-8, 0, false, true))), Error);
}
