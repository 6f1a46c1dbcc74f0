#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarsemaps/gmaps.hpp"

using namespace coarsemaps;

namespace {

GroupPtr f2() { return Group::free_group(2); }
GroupPtr zz() { return Group::integers(); }

GroupMap gm(const std::string& dsl, GroupPtr src, GroupPtr tgt = nullptr) {
  return GroupMap(MapSpec::parse(dsl, std::move(src), std::move(tgt)));
}

}  // namespace

TEST_CASE("parse and type-check") {
  GroupMap pa = gm("perturb{id,c=a}", f2());
  CHECK(encode_elem(pa(parse_elem(f2(), "b"))) == "ba");

  CHECK_NOTHROW(gm("compose{floor_scale{1,2},monomial{2}}", zz()));
  // inner target Z, outer source Free: ill-typed
  CHECK_THROWS_AS(gm("compose{brooks{ab},floor_scale{1,2}}", zz()),
                  MapError);
  CHECK_THROWS_AS(gm("nosuch{1}", zz()), MapError);
  CHECK_THROWS_AS(gm("hom{a->ab", f2(), f2()), MapError);
}

TEST_CASE("print round-trips") {
  struct Case {
    std::string dsl;
    GroupPtr src, tgt;
  };
  for (const Case& c : {Case{"brooks{ab}", f2(), zz()},
                        Case{"perturb{id,a}", f2(), f2()},
                        Case{"unitalize{shift{id,ab}}", f2(), f2()},
                        Case{"zquad{a,b}", zz(), f2()},
                        Case{"random{7,2,3}", f2(), f2()}}) {
    MapSpecPtr spec = MapSpec::parse(c.dsl, c.src, c.tgt);
    MapSpecPtr again = MapSpec::parse(spec->print(), c.src, c.tgt);
    CHECK(again->print() == spec->print());
  }
}

TEST_CASE("brooks counting") {
  GroupMap b = gm("brooks{ab}", f2());
  auto at = [&](const std::string& w) {
    return b(parse_elem(f2(), w)).integer();
  };
  CHECK(at("abab") == 2);
  CHECK(at("BA") == -1);
  CHECK(at("") == 0);
  CHECK(at("aabab") == 2);
  CHECK(at("ba") == 0);
  // overlapping occurrences
  GroupMap aa = gm("brooks{aa}", f2());
  CHECK(aa(parse_elem(f2(), "aaaa")).integer() == 3);
}

TEST_CASE("integer families use floor toward minus infinity") {
  GroupMap half = gm("floor_scale{1,2}", zz());
  auto at = [&](long long n, const GroupMap& m) {
    return m(Elem(zz(), n)).integer();
  };
  CHECK(at(-1, half) == -1);
  CHECK(at(-3, half) == -2);
  CHECK(at(5, half) == 2);
  GroupMap fq = gm("floor_quad{1,3}", zz());
  CHECK(at(2, fq) == 1);
  CHECK(at(-2, fq) == 1);
  GroupMap cube = gm("monomial{3}", zz());
  CHECK(at(-3, cube) == -27);
}

TEST_CASE("hom semantics") {
  GroupMap h = gm("hom{a->ab,b->b}", f2(), f2());
  CHECK(encode_elem(h(parse_elem(f2(), "aB"))) == "a");
  GroupMap e = gm("hom{1->a}", zz(), f2());
  CHECK(encode_elem(e(Elem(zz(), 5))) == "aaaaa");
  CHECK(encode_elem(e(Elem(zz(), -2))) == "AA");
  GroupMap d = gm("hom{1->2}", zz(), zz());
  CHECK(d(Elem(zz(), -3)).integer() == -6);
  // fast exponentiation handles large inputs
  CHECK(d(Elem(zz(), 100000)).integer() == 200000);
  // homomorphism property on a sample
  for (const Elem& x : g_ball(f2(), 2))
    for (const Elem& y : g_ball(f2(), 2))
      CHECK(g_eq(h(g_op(x, y)), g_op(h(x), h(y))));
}

TEST_CASE("mixer golden values") {
  CHECK(mix64(1, 1) == 0);
  CHECK(mix64(1, 2) == 2185194620014831856ULL);
  CHECK(mix64(42, 0) == 12058926934050108962ULL);
}

TEST_CASE("random family") {
  GroupMap r = gm("random{1,2,2}", f2(), f2());
  CHECK(r(g_id(f2())).word().is_identity());
  // outside the domain ball: identity
  CHECK(r(parse_elem(f2(), "aaa")).word().is_identity());
  // frozen values: ball index of "a" is 1, mix64(1,1) = 0 -> ball[0]
  CHECK(encode_elem(r(parse_elem(f2(), "a"))) == "");
  // "A" has index 2, mix64(1,2) mod 17 = 2 -> ball[2] = "A"
  CHECK(encode_elem(r(parse_elem(f2(), "A"))) == "A");
  // "b" has index 3, mix64(1,3) mod 17 = 11 -> ball[11] = "ba"
  CHECK(encode_elem(r(parse_elem(f2(), "b"))) == "ba");
}

TEST_CASE("wrappers") {
  GroupMap pa = gm("perturb{id,a}", f2());
  CHECK(!pa.is_unital());
  GroupMap u = gm("unitalize{perturb{id,a}}", f2());
  CHECK(u.is_unital());
  GroupMap sh = gm("shift{id,ab}", f2());
  CHECK(encode_elem(sh(parse_elem(f2(), "b"))) == "bab");

  // perturbing back by the inverse recovers the base map
  GroupMap back = gm("perturb{perturb{id,a},A}", f2());
  for (const Elem& x : g_ball(f2(), 4)) CHECK(g_eq(back(x), x));
}

TEST_CASE("const and compose") {
  GroupMap c = gm("const{ab}", zz(), f2());
  CHECK(encode_elem(c(Elem(zz(), 7))) == "ab");
  GroupMap qc = gm("compose{floor_scale{1,2},monomial{2}}", zz());
  CHECK(qc(Elem(zz(), 5)).integer() == 12);
  CHECK(qc(Elem(zz(), -3)).integer() == 4);
}

TEST_CASE("memoized and fresh evaluation agree") {
  GroupMap r = gm("random{9,3,3}", f2(), f2());
  auto b = g_ball(f2(), 4);
  for (int i = 0; i < 1000; ++i) {
    const Elem& x = b[mix64(9, static_cast<std::uint64_t>(i)) % b.size()];
    Elem cached = r(x);
    CHECK(g_eq(cached, r.eval_uncached(x)));
    CHECK(g_eq(cached, r(x)));
  }
}

TEST_CASE("zquad family evaluates the recursion") {
  GroupMap zq = gm("zquad{a,b}", zz(), f2());
  CHECK(zq(Elem(zz(), 0)).word().is_identity());
  CHECK(encode_elem(zq(Elem(zz(), 1))) == "a");
  CHECK(encode_elem(zq(Elem(zz(), 2))) == "b");
}
