#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarsemaps/diffs.hpp"

using namespace coarsemaps;

namespace {

GroupPtr f2() { return Group::free_group(2); }
GroupPtr zz() { return Group::integers(); }

GroupMap gm(const std::string& dsl, GroupPtr src, GroupPtr tgt = nullptr) {
  return GroupMap(MapSpec::parse(dsl, std::move(src), std::move(tgt)));
}

std::vector<long long> ints(const std::vector<Elem>& v) {
  std::vector<long long> out;
  for (const Elem& e : v) out.push_back(e.integer());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("single difference operator") {
  GroupMap sq = gm("monomial{2}", zz());
  CHECK(dg(sq, Elem(zz(), 5))(Elem(zz(), 0)).integer() == 25);
  CHECK(dg(sq, Elem(zz(), 5))(Elem(zz(), 3)).integer() == 55);

  GroupMap idm = gm("id", f2());
  Elem a = parse_elem(f2(), "a"), b = parse_elem(f2(), "b");
  CHECK(encode_elem(dg(idm, a)(b)) == "a");

  CHECK_THROWS_AS(dg(sq, a), MapError);
}

TEST_CASE("iterated differences") {
  GroupMap sq = gm("monomial{2}", zz());
  CHECK(iter_diff(sq, {Elem(zz(), 3), Elem(zz(), 5)}).integer() == 30);
  for (long long g1 : {-2, 1, 4})
    for (long long g2 : {-3, 2})
      for (long long g3 : {-1, 5})
        CHECK(iter_diff(sq, {Elem(zz(), g1), Elem(zz(), g2), Elem(zz(), g3)})
                  .integer() == 0);

  // all-identity shifts telescope for unital maps
  GroupMap b = gm("brooks{ab}", f2());
  Elem e = g_id(f2());
  CHECK(g_eq(iter_diff(b, {e, e, e}), g_id(zz())));
}

TEST_CASE("closed formula is an unconditional oracle") {
  auto sweep = [](const GroupMap& phi, const std::vector<Elem>& shifts) {
    for (const Elem& g1 : shifts)
      for (const Elem& g2 : shifts)
        for (const Elem& g3 : shifts)
          CHECK(g_eq(lemma43(phi, g1, g2, g3), iter_diff(phi, {g1, g2, g3})));
  };
  for (std::uint64_t s : {3u, 8u, 21u}) {
    GroupMap r(MapSpec::random_map(f2(), f2(), s, 2, 2));
    sweep(r, g_ball(f2(), 1));
  }
  for (std::uint64_t s : {5u, 17u}) {
    GroupMap r(MapSpec::random_map(zz(), zz(), s, 8, 8));
    sweep(r, g_ball(zz(), 2));
  }
  // unital map, g3 = identity: the formula collapses to the identity
  GroupMap b = gm("brooks{ab}", f2());
  for (const Elem& g1 : g_ball(f2(), 2))
    for (const Elem& g2 : g_ball(f2(), 2))
      CHECK(g_eq(lemma43(b, g1, g2, g_id(f2())), g_id(zz())));
}

TEST_CASE("degree-d value sets") {
  GroupMap sq = gm("monomial{2}", zz());
  // P0 = phi(ball) shifted by phi(1)^-1
  GroupMap pa = gm("perturb{id,a}", f2());
  ElemSet want;
  for (const Elem& x : g_ball(f2(), 2))
    want.insert(g_op(pa(x), g_inv(pa(g_id(f2())))));
  SetResult p0 = set_Pd(pa, 0, 2);
  CHECK(p0.items.size() == want.size());
  for (const Elem& e : p0.items) CHECK(want.contains(e));

  CHECK(ints(set_Pd(sq, 2, 4).items) == std::vector<long long>{0});

  // P1 of n^2 is exactly {2*g1*g2}
  ElemSet p1want;
  for (long long g1 = -5; g1 <= 5; ++g1)
    for (long long g2 = -5; g2 <= 5; ++g2)
      p1want.insert(Elem(zz(), 2 * g1 * g2));
  SetResult p1 = set_Pd(sq, 1, 5);
  CHECK(p1.items.size() == p1want.size());
  for (const Elem& e : p1.items) CHECK(p1want.contains(e));

  // nesting in the radius
  for (int d : {0, 1, 2}) {
    GroupMap fq = gm("floor_quad{1,3}", zz());
    auto small = set_Pd(fq, d, 2).items;
    ElemSet big;
    for (const Elem& e : set_Pd(fq, d, 3).items) big.insert(e);
    for (const Elem& e : small) CHECK(big.contains(e));
  }

  CHECK_THROWS_AS(set_Pd(sq, 4, 2), MapError);
}

TEST_CASE("degree estimation") {
  auto degree = [](const GroupMap& m, int rmax = 5) {
    return degree_estimate(m, 3, rmax).degree;
  };
  CHECK(degree(gm("floor_scale{1,2}", zz())) == 1);
  CHECK(degree(gm("floor_quad{1,3}", zz())) == 2);
  CHECK(degree(gm("const{ab}", zz(), f2())) == 0);
  CHECK(degree(gm("compose{floor_scale{1,2},monomial{2}}", zz())) == 2);
  CHECK(degree(gm("hom{1->a}", zz(), f2())) == 1);
}

TEST_CASE("degree 1 matches flat middle defects on the small corpus") {
  std::vector<GroupMap> maps;
  maps.push_back(gm("brooks{ab}", f2()));
  maps.push_back(gm("floor_scale{1,2}", zz()));
  maps.push_back(gm("perturb{id,a}", f2()));
  maps.push_back(gm("floor_quad{1,3}", zz()));
  for (const GroupMap& m : maps) {
    bool deg1 = degree_estimate(m, 1, 5).degree == 1;
    bool mid = profile(DefectKind::M, m, 5).classification ==
               Classification::Plateau;
    CHECK(deg1 == mid);
  }
}
