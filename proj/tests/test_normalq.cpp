#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarsemaps/normalq.hpp"

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

TEST_CASE("degree-2 subgroup samples") {
  auto xsq = xi_sample(gm("monomial{2}", zz()), 4, 3);
  CHECK(ints(xsq) == std::vector<long long>{0});

  auto xfq = xi_sample(gm("floor_quad{1,3}", zz()), 5, 3);
  ElemSet s;
  for (const Elem& e : xfq) s.insert(e);
  CHECK(s.contains(Elem(zz(), 1)));
  CHECK(s.contains(Elem(zz(), -1)));
  for (const Elem& e : xfq) CHECK(s.contains(g_inv(e)));

  auto xcy = xi_sample(gm("zquad{a,aa}", zz(), f2()), 4, 3);
  REQUIRE(xcy.size() == 1);
  CHECK(xcy[0].word().is_identity());
}

TEST_CASE("abelian targets pass when the degree-2 profile is flat") {
  GroupMap qc = gm("compose{floor_scale{1,2},monomial{2}}", zz());
  NormalityReport r = check_normality(qc, 4, 3);
  CHECK(r.target_kind == "abelian");
  CHECK(r.q1_pass);
  CHECK(r.q2_pass);
  CHECK(r.q3_pass);
  CHECK(r.q4_pass);
  CHECK(r.all_pass());
  CHECK(r.exhausted);
}

TEST_CASE("finite targets are checked exhaustively") {
  GroupPtr s3 = Group::sym3();
  // wobbly unital map into the rotation subgroup: random Z map pushed
  // through n -> (3-cycle)^n
  GroupMap phi(MapSpec::compose(MapSpec::hom(zz(), s3, {{1, Elem(s3, 3)}}),
                                MapSpec::random_map(zz(), zz(), 51, 4, 4)));
  NormalityReport r = check_normality(phi, 4, 3);
  CHECK(r.target_kind == "finite");
  CHECK(r.all_pass());
  CHECK(r.exhausted);
  // the transversal is symmetric
  ElemSet y;
  for (const Elem& e : r.q3_transversal) y.insert(e);
  for (const Elem& e : r.q3_transversal) CHECK(y.contains(g_inv(e)));
}

TEST_CASE("free seeds fail the degree-2 plateau") {
  GroupMap zq = gm("zquad{a,b}", zz(), f2());
  NormalityReport r = check_normality(zq, 4, 2);
  CHECK(r.target_kind == "free");
  CHECK(!r.q1_pass);
  CHECK(!r.all_pass());
}

TEST_CASE("unital quasi-homomorphisms pass") {
  // the counting map's degree-2 profile only flattens around radius 6
  NormalityReport rb = check_normality(gm("brooks{ab}", f2()), 6, 3, 6, 3,
                                       2000000);
  CHECK(rb.all_pass());
  NormalityReport rh = check_normality(gm("hom{1->a}", zz(), f2()), 4, 3);
  CHECK(rh.all_pass());
}

TEST_CASE("unsupported target kinds are rejected") {
  GroupPtr prod = Group::product(zz(), zz());
  GroupMap c = gm("const{(0|0)}", zz(), prod);
  CHECK_THROWS_AS(check_normality(c, 3, 2), MapError);
}

TEST_CASE("desk trichotomy for free targets") {
  auto verdict = [](const GroupMap& m, int radius) {
    return hyperbolic_desk_check(m, radius).verdict;
  };
  CHECK(verdict(gm("hom{1->a}", zz(), f2()), 3) ==
        HyperbolicVerdict::QuadraticLike);
  // quadratic by the window check, so QuadraticLike despite cyclic image
  CHECK(verdict(gm("zquad{a,aa}", zz(), f2()), 3) ==
        HyperbolicVerdict::QuadraticLike);
  CHECK(verdict(gm("compose{hom{1->a},floor_quad{1,3}}", zz(), f2()), 4) ==
        HyperbolicVerdict::CyclicImage);
  HyperbolicResult v = hyperbolic_desk_check(gm("random{2,3,3}", f2(), f2()), 3);
  CHECK(v.verdict == HyperbolicVerdict::Violation);
  CHECK(v.witness.has_value());

  CHECK_THROWS_AS(hyperbolic_desk_check(gm("monomial{2}", zz()), 3), MapError);
}
