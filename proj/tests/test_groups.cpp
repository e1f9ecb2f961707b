#include <doctest.h>

#include "borel/error.hpp"
#include "borel/groups.hpp"
#include "support/oracles.hpp"
#include "support/random_modules.hpp"

using namespace borel;

namespace {

GroupData circle() { return GroupData({2}, "T"); }
GroupData su2() { return GroupData({4}, "SU(2)"); }

/// Coefficients of prod(1 - t^{d_i}) / prod(1 - t^{e_j}) up to t^top.
std::map<int, long> quotient_series(const std::vector<int>& d, const std::vector<int>& e, int top) {
  std::vector<long> p(static_cast<std::size_t>(top) + 1, 0);
  p[0] = 1;
  for (int di : d)
    for (int k = top; k >= di; --k) p[static_cast<std::size_t>(k)] -= p[static_cast<std::size_t>(k - di)];
  for (int ej : e)
    for (int k = ej; k <= top; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - ej)];
  std::map<int, long> out;
  for (int k = 0; k <= top; ++k)
    if (p[static_cast<std::size_t>(k)]) out[k] = p[static_cast<std::size_t>(k)];
  return out;
}

std::map<int, long> as_long(const std::map<int, std::size_t>& m) {
  std::map<int, long> out;
  for (auto [k, v] : m) out[k] = static_cast<long>(v);
  return out;
}

GradedVS nonzero(const GradedVS& v) {
  GradedVS out;
  for (auto [n, d] : v.dims())
    if (d) out.set_dim(n, d);
  return out;
}

/// For H*(BH) free over H*(BG) with basis codegrees f: r_* M = sum Sigma^{-c} M, r_! M = sum Sigma^c M.
GradedVS free_extension(const std::map<int, std::size_t>& f, const DGModule& m, int sign) {
  GradedVS out;
  for (auto [c, mult] : f)
    for (auto [n, d] : m.space().dims())
      if (d) out.set_dim(n + sign * c, out.dim(n + sign * c) + mult * d);
  return out;
}

/// Kernel and cokernel of x1 - x2 on M, degree by degree.
std::pair<GradedVS, GradedVS> difference_oracle(const DGModule& m) {
  GradedVS ker, coker;
  for (int n : m.degrees()) {
    const std::size_t below = m.dim(n - 2);
    const std::size_t r = below ? rank(m.action(0, n) - m.action(1, n)) : 0;
    if (m.dim(n) - r) ker.set_dim(n, m.dim(n) - r);
  }
  for (int n : m.degrees()) {
    const std::size_t r = m.dim(n + 2) ? rank(m.action(0, n + 2) - m.action(1, n + 2)) : 0;
    if (m.dim(n) - r) coker.set_dim(n, m.dim(n) - r);
  }
  return {ker, coker};
}

}  // namespace

TEST_CASE("ring maps and fibres") {
  for (const auto& r : subgroup_catalog()) {
    CAPTURE(r.name);
    r.validate();
    CHECK(r.shift() >= 0);
  }
  const RingMap a = catalog_pair("T<SU(2)");
  CHECK(a.shift() == 2);
  CHECK(as_long(a.fibre_dims()) == quotient_series({4}, {2}, 40));
  const RingMap b = catalog_pair("T^2<SU(3)");
  CHECK(b.shift() == 6);
  CHECK(as_long(b.fibre_dims()) == quotient_series({4, 6}, {2, 2}, 40));
  CHECK(b.fibre_top() == 6);
  CHECK(catalog_pair("T<T^2:diagonal").fibre_dims() == std::map<int, std::size_t>{{0, 1}});
  CHECK(catalog_pair("SU(2)<SU(3)").shift() == 5);
  CHECK(identity_ring_map(GroupData({2, 4})).fibre_top() == 0);

  try {
    parse_ring_map(su2(), circle(), {"0"});
    FAIL("x -> 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_finite);
  }
  CHECK_THROWS_AS(parse_ring_map(su2(), circle(), {"y"}), Error);
  CHECK_THROWS_AS(parse_ring_map(su2(), circle(), {"y^2", "y"}), Error);
  CHECK_THROWS_AS(catalog_pair("nonsense"), Error);
}

TEST_CASE("restriction, extension and coextension of k") {
  const RingMap r = catalog_pair("T<SU(2)");
  const DGModule k = residue_field(su2());
  const DGModule up = extend_scalars(r, k);
  CHECK(nonzero(up.space()) == GradedVS(std::map<int, std::size_t>{{-2, 1}, {0, 1}}));
  up.validate();
  const DGModule co = coextend_scalars(r, k);
  CHECK(nonzero(co.space()) == GradedVS(std::map<int, std::size_t>{{0, 1}, {2, 1}}));
  co.validate();
  const DGModule back = restrict_scalars(r, up);
  back.validate();
  // x = y^2 acts by zero on Q[y]/(y^2).
  CHECK(back.action(0, 0).is_zero());
}

TEST_CASE("free pairs match the free basis oracle") {
  test_support::Rng rng(17);
  for (const char* name : {"T<SU(2)", "T^2<SU(3)", "T<SO(3)", "T=T"}) {
    const RingMap r = catalog_pair(name);
    CAPTURE(r.name);
    const auto f = r.fibre_dims();
    for (int trial = 0; trial < 3; ++trial) {
      const DGModule m = test_support::random_finite_module(r.source, rng, 4);
      const DGModule up = extend_scalars(r, m);
      const DGModule co = coextend_scalars(r, m);
      up.validate();
      co.validate();
      CHECK(nonzero(up.space()) == free_extension(f, m, -1));
      CHECK(nonzero(co.space()) == free_extension(f, m, 1));
    }
  }
}

TEST_CASE("diagonal circle: kernel and cokernel of x1 - x2") {
  test_support::Rng rng(23);
  const RingMap r = catalog_pair("T<T^2:diagonal");
  for (int trial = 0; trial < 5; ++trial) {
    const DGModule m = test_support::random_finite_module(r.source, rng, 5);
    const auto [ker, coker] = difference_oracle(m);
    CHECK(nonzero(extend_scalars(r, m).space()) == coker);
    CHECK(nonzero(coextend_scalars(r, m).space()) == ker);
  }
}

TEST_CASE("coextension of the injective is the injective") {
  const RingMap r = catalog_pair("T<SU(2)");
  const DGModule i = basic_injective(su2(), Window::make(0, 20, true, false));
  const DGModule co = coextend_scalars(r, i);
  co.validate();
  const Window& w = co.window();
  CHECK(w.closed_below);
  for (int n = -4; n <= 20; ++n)
    if (w.certifies(n)) CHECK(co.dim(n) == oracle::monomial_count({2}, n));
  // y acts surjectively, as on the injective hull of k.
  for (int n = 2; n <= 18; n += 2) CHECK(rank(co.action(0, n)) == co.dim(n - 2));
}

TEST_CASE("adjunctions on chain maps") {
  test_support::Rng rng(5);
  for (const char* name : {"T<SU(2)", "T<T^2:diagonal", "T<T^2:first", "SU(2)<SU(3)"}) {
    const RingMap r = catalog_pair(name);
    CAPTURE(r.name);
    for (int trial = 0; trial < 2; ++trial) {
      const DGModule m = test_support::random_dg_torsion(r.source, rng, 4);
      const DGModule n = test_support::random_dg_torsion(r.target, rng, 4);
      const auto rep = adjunction_check(r, m, n, -8, 8);
      CHECK(rep.agree);
      CHECK(rep.rows.size() == 17);
    }
  }
}

TEST_CASE("derived dual of H*(BH) is a shifted copy") {
  for (const auto& r : subgroup_catalog()) {
    CAPTURE(r.name);
    const DerivedDual d = derived_dual(r);
    CHECK(d.hilbert_certificate);
    CHECK(d.shifted_free);
    const DGModule& h = d.homology;
    const PolyAlgebra rh(r.target);
    for (int n = -6; n <= r.shift() + 4; ++n)
      if (h.window().certifies(n)) CHECK(h.dim(n) == rh.dim(n - r.shift()));
  }
  const DerivedDual a = derived_dual(catalog_pair("T<SU(2)"));
  CHECK(a.resolution.length() == 0);
  CHECK(a.resolution.generator_degrees(0) == std::vector<int>{0, -2});
  const DerivedDual b = derived_dual(catalog_pair("T<T^2:diagonal"));
  CHECK(b.map.shift() == 1);
  CHECK(b.resolution.length() == 1);
  CHECK(b.resolution.generator_degrees(1) == std::vector<int>{-2});
}

TEST_CASE("r'_! agrees with the derived coextension") {
  test_support::Rng rng(44);
  const RingMap r = catalog_pair("T<SU(2)");
  const DerivedDual d = derived_dual(r);
  const auto inj = compare_shriek(d, basic_injective(su2(), Window::make(0, 20, true, false)));
  CHECK(inj.agree);
  CHECK(inj.tensor == inj.coextension);
  CHECK(inj.tensor.total_dim() > 0);
  const auto z = compare_shriek(d, zero_module(AlgebraKind::poly, su2()));
  CHECK(z.agree);
  CHECK(z.tensor.total_dim() == 0);
  for (int trial = 0; trial < 4; ++trial) {
    const auto rep = compare_shriek(d, test_support::random_dg_torsion(su2(), rng, 4));
    CHECK(rep.agree);
    CHECK(rep.tensor == rep.coextension);
  }
  const DerivedDual diag = derived_dual(catalog_pair("T<T^2:diagonal"));
  for (int trial = 0; trial < 3; ++trial) {
    const auto rep = compare_shriek(diag, test_support::random_finite_module(diag.map.source, rng, 4));
    CHECK(rep.agree);
  }
}

TEST_CASE("shift law for r^!") {
  test_support::Rng rng(12);
  for (const char* name : {"T<SU(2)", "T<T^2:diagonal", "SU(2)<SU(3)"}) {
    const RingMap r = catalog_pair(name);
    CAPTURE(r.name);
    const DerivedDual d = derived_dual(r);
    const auto inj = shift_law_check(d, basic_injective(r.target, Window::make(0, 10, true, false)));
    CHECK(inj.c == r.shift());
    CHECK(inj.agree);
    CHECK(inj.upper_shriek.total_dim() > 0);
    for (int trial = 0; trial < 3; ++trial) {
      const auto rep = shift_law_check(d, test_support::random_dg_torsion(r.target, rng, 4));
      CHECK(rep.agree);
    }
  }
}
