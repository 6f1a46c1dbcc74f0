#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarsemaps/coarse.hpp"

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

std::vector<long long> row_norms(const DefectProfile& p) {
  std::vector<long long> out;
  for (const auto& r : p.rows) out.push_back(r.max_norm);
  return out;
}

}  // namespace

TEST_CASE("graph samples") {
  GroupMap b = gm("brooks{ab}", f2());
  CHECK(graph_sample(b, 3).size() == 53);

  GroupMap c = gm("const{ab}", f2(), f2());
  for (const Elem& l : graph_sample(c, 1))
    CHECK(encode_elem(l.second()) == "ab");

  // homomorphism graphs are closed under in-range products
  GroupMap h = gm("hom{1->a}", zz(), f2());
  auto lam = graph_sample(h, 4);
  ElemSet lamset;
  for (const Elem& l : lam) lamset.insert(l);
  for (const Elem& l1 : lam)
    for (const Elem& l2 : lam) {
      Elem p = g_op(l1, l2);
      if (std::llabs(p.first().integer()) <= 4) CHECK(lamset.contains(p));
    }
}

TEST_CASE("quasi-subgroup witnesses") {
  GroupMap h = gm("hom{1->a}", zz(), f2());
  auto [inv, sq] = quasi_subgroup_witness(graph_sample(h, 3), 2, 5);
  CHECK(inv.worst_witness_norm == 0);
  CHECK(sq.worst_witness_norm == 0);
  CHECK(sq.condition == WitnessCondition::SquareCover);

  GroupMap b = gm("brooks{ab}", f2());
  long long dstar_bound = 0;
  for (const Elem& e : set_Dstar(b, 2))
    dstar_bound = std::max(dstar_bound, g_norm(e));
  auto [binv, bsq] = quasi_subgroup_witness(graph_sample(b, 4), 2, 6);
  CHECK(bsq.worst_witness_norm <= dstar_bound);

  GroupMap r = gm("random{5,4,4}", f2(), f2());
  auto [rinv, rsq] = quasi_subgroup_witness(graph_sample(r, 4), 2, 6);
  CHECK(rsq.worst_witness_norm > bsq.worst_witness_norm);

  CHECK_THROWS_AS(quasi_subgroup_witness(graph_sample(h, 3), 2, 3), MapError);
}

TEST_CASE("conjugation probe") {
  // abelian target: constant at the norm of the constant
  GroupMap b = gm("brooks{ab}", f2());
  DefectProfile p = pi_probe(b, Elem(zz(), -2), 5);
  for (const auto& row : p.rows) CHECK(row.max_norm == 2);
  CHECK(p.classification == Classification::Plateau);

  DefectProfile pid = pi_probe(gm("id", f2()), parse_elem(f2(), "a"), 5);
  CHECK(row_norms(pid) == std::vector<long long>{3, 5, 7, 9, 11});
  CHECK(pid.classification == Classification::Growing);

  DefectProfile ph =
      pi_probe(gm("hom{1->a}", zz(), f2()), parse_elem(f2(), "b"), 5);
  CHECK(row_norms(ph) == std::vector<long long>{3, 5, 7, 9, 11});

  CHECK_THROWS_AS(pi_probe(b, parse_elem(f2(), "a"), 3), MapError);
}

TEST_CASE("defect subgroup samples") {
  GroupMap h = gm("hom{a->ab,b->b}", f2(), f2());
  auto dh = delta_sample(h, 3, 3);
  REQUIRE(dh.size() == 1);
  CHECK(dh[0].word().is_identity());

  auto dhalf = delta_sample(gm("floor_scale{1,2}", zz()), 6, 3);
  CHECK(ints(dhalf) == std::vector<long long>{-3, -2, -1, 0, 1, 2, 3});

  auto db = delta_sample(gm("brooks{ab}", f2()), 4, 2);
  ElemSet dbset;
  for (const Elem& e : db) dbset.insert(e);
  for (const Elem& e : db) CHECK(dbset.contains(g_inv(e)));
}

TEST_CASE("perturbation by defect subgroup elements") {
  PertDeltaResult pb = pertdelta_check(gm("brooks{ab}", f2()), 3, 2, 5);
  CHECK(pb.precondition_ok);
  CHECK(pb.ok);

  PertDeltaResult ph = pertdelta_check(gm("floor_scale{1,2}", zz()), 6, 3, 8);
  CHECK(ph.ok);

  // a map whose own profile grows: precondition violation
  PertDeltaResult bad = pertdelta_check(gm("floor_quad{1,3}", zz()), 3, 2, 5);
  CHECK(!bad.precondition_ok);
  CHECK(!bad.ok);
}

TEST_CASE("twisted conjugation probe") {
  GroupMap idm = gm("id", f2());
  Elem one = g_id(f2());
  DefectProfile triv = s_ab_probe(idm, one, one, 4);
  for (const auto& row : triv.rows) CHECK(row.max_norm == 0);

  DefectProfile grow =
      s_ab_probe(idm, parse_elem(f2(), "a"), parse_elem(f2(), "A"), 5);
  CHECK(grow.classification == Classification::Growing);
  CHECK(grow.rows.back().max_norm == 12);  // |z^-1 a^-2 z| at |z| = 5

  DefectProfile flat =
      s_ab_probe(idm, parse_elem(f2(), "A"), parse_elem(f2(), "A"), 5);
  for (const auto& row : flat.rows) CHECK(row.max_norm == 0);
}

TEST_CASE("commensurator witnesses") {
  // the cyclic subgroup normalizes itself
  std::vector<Elem> cyc;
  for (long long k = -6; k <= 6; ++k) {
    std::string s(static_cast<size_t>(std::llabs(k)), k < 0 ? 'A' : 'a');
    cyc.push_back(parse_elem(f2(), s));
  }
  auto [l, r] = comm_probe(cyc, parse_elem(f2(), "a"), 2, 5);
  CHECK(l.worst_witness_norm == 0);
  CHECK(r.worst_witness_norm == 0);

  GroupMap h = gm("hom{1->a}", zz(), f2());
  GroupPtr prod = Group::product(zz(), f2());
  auto [hl, hr] =
      comm_probe(graph_sample(h, 4), parse_elem(prod, "(0|a)"), 2, 6);
  CHECK(hl.worst_witness_norm == 0);

  GroupMap idm = gm("id", f2());
  GroupPtr prod2 = Group::product(f2(), f2());
  auto [il, ir] =
      comm_probe(graph_sample(idm, 6), parse_elem(prod2, "(|a)"), 2, 6);
  CHECK(il.worst_witness_norm > 0);

  CHECK_THROWS_AS(comm_probe(cyc, parse_elem(f2(), "a"), 2, 3), MapError);
}

TEST_CASE("commensurator boundedness profiles") {
  GroupMap idm = gm("id", f2());
  GroupPtr prod = Group::product(f2(), f2());
  DefectProfile grow =
      comm_boundedness_profile(idm, parse_elem(prod, "(|a)"), 4);
  CHECK(grow.classification == Classification::Growing);

  DefectProfile flat =
      comm_boundedness_profile(idm, parse_elem(prod, "(|)"), 4);
  for (const auto& row : flat.rows) CHECK(row.max_norm == 0);

  GroupMap b = gm("brooks{ab}", f2());
  GroupPtr prodz = Group::product(f2(), zz());
  DefectProfile bf = comm_boundedness_profile(b, parse_elem(prodz, "(|1)"), 4);
  for (const auto& row : bf.rows) CHECK(row.max_norm == 0);
  CHECK(bf.classification == Classification::Plateau);
}
