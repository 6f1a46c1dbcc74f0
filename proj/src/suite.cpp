#include "coarsemaps/suite.hpp"

#include <chrono>
#include <sstream>

namespace coarsemaps {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<GroupMap> mk(const std::string& dsl, const GroupPtr& source,
                             const GroupPtr& target = nullptr) {
  return std::make_shared<GroupMap>(MapSpec::parse(dsl, source, target));
}

ElemSet to_set(const std::vector<Elem>& v) {
  ElemSet s;
  for (const Elem& e : v) s.insert(e);
  return s;
}

// Largest equivariance-defect norm seen for floor_quad{1,3} at radius 4,
// frozen from an exhaustive run (9^4 quadruples per radius row).
// Brute-force maximum of the equivariance defect of floor(n^2/3) at R=4,
// frozen as a golden value (the rounding error never exceeds one step).
constexpr long long kFloorQuadEquivBound = 1;

// Seeds for the deliberately non-flat maps in criterion 2, verified so each
// one's defect profile fails the plateau test at Rmax=5.
constexpr std::uint64_t kUnboundedSeeds[5] = {11, 12, 13, 14, 15};

}  // namespace

std::vector<NamedMap> base_corpus() {
  GroupPtr f2 = Group::free_group(2);
  GroupPtr z = Group::integers();
  return {
      {"brooks{ab}", mk("brooks{ab}", f2)},
      {"floor_scale{1,2}", mk("floor_scale{1,2}", z)},
      {"hom{a->ab,b->b}", mk("hom{a->ab,b->b}", f2, f2)},
      {"hom{1->a}", mk("hom{1->a}", z, f2)},
      {"id", mk("id", f2)},
      {"hom{1->2}", mk("hom{1->2}", z, z)},
  };
}

namespace {

CriterionResult c1_formula_oracle(std::uint64_t seed) {
  CriterionResult res{1, "closed difference formula matches literal recursion",
                      true, "", 0};
  auto start = Clock::now();
  GroupPtr f2 = Group::free_group(2);
  GroupPtr z = Group::integers();
  auto check = [&](const GroupMap& phi, const std::vector<Elem>& shifts) {
    for (const Elem& g1 : shifts)
      for (const Elem& g2 : shifts)
        for (const Elem& g3 : shifts) {
          Elem lhs = lemma43(phi, g1, g2, g3);
          Elem rhs = iter_diff(phi, {g1, g2, g3});
          if (!g_eq(lhs, rhs)) {
            res.pass = false;
            res.detail = "mismatch at (" + encode_elem(g1) + "," +
                         encode_elem(g2) + "," + encode_elem(g3) + ")";
            return false;
          }
        }
    return true;
  };
  auto f2_shifts = g_ball(f2, 1);
  auto z_shifts = g_ball(z, 2);
  for (int i = 0; i < 100 && res.pass; ++i) {
    GroupMap phi(MapSpec::random_map(f2, f2, seed + static_cast<std::uint64_t>(i), 2, 2));
    check(phi, f2_shifts);
  }
  for (int i = 0; i < 100 && res.pass; ++i) {
    GroupMap phi(MapSpec::random_map(z, z, seed + 1000 + static_cast<std::uint64_t>(i), 8, 8));
    check(phi, z_shifts);
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c2_unitalize_roundtrip() {
  CriterionResult res{2, "unitalized constant perturbations have flat defects",
                      true, "", 0};
  auto start = Clock::now();
  GroupPtr f2 = Group::free_group(2);
  GroupPtr z = Group::integers();
  auto corpus = base_corpus();
  // (base index, perturbation constant) pairs: the ten-map corpus.
  std::vector<std::pair<size_t, std::string>> pert = {
      {0, "0"}, {0, "1"}, {0, "2"},  // brooks{ab}
      {1, "1"}, {1, "-2"},           // floor_scale{1,2}
      {2, "a"}, {2, "ab"},           // hom{a->ab,b->b}
      {3, "b"},                      // hom{1->a}
      {4, "a"},                      // id
      {5, "1"},                      // hom{1->2}
  };
  for (const auto& [idx, ctext] : pert) {
    const auto& base = corpus[idx];
    Elem c = parse_elem(base.map->target(), ctext);
    GroupMap u(MapSpec::unitalize(MapSpec::perturb(base.map->spec(), c)));
    DefectProfile p = profile(DefectKind::D, u, 5, 3);
    if (p.classification != Classification::Plateau) {
      res.pass = false;
      res.detail = base.name + " perturbed by " + ctext + ": " +
                   to_string(p.classification);
      break;
    }
  }
  // Contrast set: seeded maps with unbounded image whose defect keeps
  // growing.  The bounded random family saturates its norm cap, so draw a
  // seeded perturbation-and-shift of the identity instead.
  auto ball3 = g_ball(f2, 3);
  for (std::uint64_t s : kUnboundedSeeds) {
    if (!res.pass) break;
    Elem c = ball3[1 + mix64(s, 1) % (ball3.size() - 1)];  // nontrivial
    Elem u = ball3[mix64(s, 2) % ball3.size()];
    GroupMap phi(MapSpec::shift(MapSpec::perturb(MapSpec::identity(f2), c), u));
    DefectProfile p = profile(DefectKind::D, phi, 5, 3);
    if (p.classification == Classification::Plateau) {
      res.pass = false;
      res.detail = "random seed " + std::to_string(s) + " classified Plateau";
    }
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c3_perturbation_identity() {
  CriterionResult res{3, "perturbation shifts the middle defect set exactly",
                      true, "", 0};
  auto start = Clock::now();
  for (const auto& entry : base_corpus()) {
    for (const Elem& c : g_ball(entry.map->target(), 2)) {
      GroupMap pert(MapSpec::perturb(entry.map->spec(), c));
      ElemSet got = to_set(set_M(pert, 3));
      ElemSet want;
      Elem cinv = g_inv(c);
      for (const Elem& m : set_M(*entry.map, 3)) want.insert(g_op(cinv, m));
      bool same = got.size() == want.size();
      for (const Elem& e : got.items())
        if (!want.contains(e)) same = false;
      if (!same) {
        res.pass = false;
        res.detail = entry.name + ", c = " + encode_elem(c);
        break;
      }
    }
    if (!res.pass) break;
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c4_inclusions(std::uint64_t seed) {
  CriterionResult res{4, "quadruple values nest between middle defect sets",
                      true, "", 0};
  auto start = Clock::now();
  for (const auto& entry : base_corpus()) {
    const GroupMap& phi = *entry.map;
    Elem phi1 = phi(g_id(phi.source()));
    SetResult a4 = set_A(phi, 4, 6000000, seed);
    ElemSet a4set = to_set(a4.items);
    for (const Elem& m : set_M(phi, 2)) {
      if (!a4set.contains(g_op(phi1, m))) {
        res.pass = false;
        res.detail = entry.name + ": phi(1)*" + encode_elem(m) +
                     " missing from the radius-4 quadruple set" +
                     (a4.exact ? "" : " (sampled)");
        break;
      }
    }
    if (!res.pass) break;
    SetResult a2 = set_A(phi, 2, 6000000, seed);
    std::vector<Elem> m6 = set_M(phi, 6);
    ElemSet m6set = to_set(m6);
    for (const Elem& a : a2.items) {
      bool found = false;
      for (const Elem& m1 : m6) {
        if (m6set.contains(g_op(m1, a))) {
          found = true;
          break;
        }
      }
      if (!found) {
        res.pass = false;
        res.detail = entry.name + ": " + encode_elem(a) +
                     " not a difference of radius-6 middle defects";
        break;
      }
    }
    if (!res.pass) break;
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c5_recursion_anchors() {
  CriterionResult res{5, "quadratic recursion anchors and commutation test",
                      true, "", 0};
  auto start = Clock::now();
  GroupPtr f2 = Group::free_group(2);
  GroupPtr z2 = Group::integer_lattice(2);
  auto fail = [&](const std::string& msg) {
    res.pass = false;
    if (res.detail.empty()) res.detail = msg;
  };

  ZQuadSequence seq(parse_elem(f2, "a"), parse_elem(f2, "b"));
  if (!g_eq(seq.at(3), parse_elem(f2, "bAAbAb"))) fail("value at 3");
  if (!g_eq(seq.at(-1), parse_elem(f2, "AbAA"))) fail("value at -1");

  // Commutative targets obey n*a + C(n,2)*(b - 2a).
  Elem a2 = parse_elem(z2, "(1,0)"), b2 = parse_elem(z2, "(0,1)");
  ZQuadSequence ab(a2, b2);
  for (long long n = -20; n <= 20; ++n) {
    long long ch = n * (n - 1) / 2;
    Elem want(z2, std::vector<long long>{n - 2 * ch, ch});
    if (!g_eq(ab.at(n), want)) {
      fail("closed form at n = " + std::to_string(n));
      break;
    }
  }

  if (l49_identity({parse_elem(f2, "a"), parse_elem(f2, "b")}))
    fail("free seed should fail the commutation identity");
  TripleCheckResult w = window_check(seq, 8, 2);
  if (w.ok) fail("free seed should fail the shift-window check");

  GroupPtr z = Group::integers();
  GroupPtr c6 = Group::cyclic(6);
  std::vector<ZQuadSeed> abelian = {
      {a2, b2},
      {parse_elem(z, "3"), parse_elem(z, "5")},
      {parse_elem(c6, "1"), parse_elem(c6, "4")},
      {parse_elem(f2, "a"), parse_elem(f2, "aa")},
  };
  for (const auto& s : abelian) {
    if (!l49_identity(s)) {
      fail("commuting seed failed the commutation identity");
      break;
    }
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c6_relator_battery(std::uint64_t seed) {
  CriterionResult res{6, "degree-2 relator and equivariance battery", true,
                      "", 0};
  auto start = Clock::now();
  GroupPtr z = Group::integers();
  auto fail = [&](const std::string& msg) {
    res.pass = false;
    if (res.detail.empty()) res.detail = msg;
  };

  GroupMap sq(MapSpec::parse("monomial{2}", z));
  GroupMap fq(MapSpec::parse("floor_quad{1,3}", z));

  if (!pol2_relator_check(sq, 5).ok) fail("n^2 violated a degree-2 relator");
  RelatorCheckResult bad = pol2_relator_check(fq, 5);
  if (bad.ok || !bad.witness) fail("floor_quad{1,3} relator check gave no witness");

  DefectProfile esq = equiv_defect(sq, 4, 3, kDefaultBudget, seed);
  if (esq.rows.back().max_norm != 0) fail("n^2 equivariance defect nonzero");
  DefectProfile efq = equiv_defect(fq, 4, 3, kDefaultBudget, seed);
  if (efq.classification != Classification::Plateau)
    fail("floor_quad{1,3} equivariance profile not flat");
  if (efq.rows.back().max_norm > kFloorQuadEquivBound)
    fail("floor_quad{1,3} equivariance defect exceeds frozen bound: " +
         std::to_string(efq.rows.back().max_norm));
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c7_pi_battery() {
  CriterionResult res{7, "conjugation probe battery", true, "", 0};
  auto start = Clock::now();
  GroupPtr f2 = Group::free_group(2);
  GroupPtr z = Group::integers();
  auto fail = [&](const std::string& msg) {
    res.pass = false;
    if (res.detail.empty()) res.detail = msg;
  };

  for (const auto& entry : base_corpus()) {
    if (entry.map->target()->kind() != GroupKind::Z) continue;
    for (const std::string& ctext : {"1", "-2"}) {
      Elem c = parse_elem(z, ctext);
      DefectProfile p = pi_probe(*entry.map, c, 5);
      for (const auto& row : p.rows) {
        if (row.max_norm != g_norm(c)) {
          fail(entry.name + ": conjugation probe of " + ctext +
               " not constant at its norm");
          break;
        }
      }
      if (p.classification != Classification::Plateau)
        fail(entry.name + ": abelian-target probe not flat");
    }
  }

  auto expect_rows = [&](const GroupMap& phi, const std::string& c,
                         const std::string& what) {
    DefectProfile p = pi_probe(phi, parse_elem(f2, c), 5);
    std::vector<long long> want = {3, 5, 7, 9, 11};
    for (size_t i = 0; i < want.size(); ++i) {
      if (p.rows[i].max_norm != want[i]) {
        fail(what + ": row " + std::to_string(i + 1) + " = " +
             std::to_string(p.rows[i].max_norm));
        return;
      }
    }
  };
  expect_rows(GroupMap(MapSpec::parse("id", f2)), "a", "identity map");
  expect_rows(GroupMap(MapSpec::parse("hom{1->a}", z, f2)), "b",
              "generator embedding");

  GroupMap brooks(MapSpec::parse("brooks{ab}", f2));
  PertDeltaResult pd = pertdelta_check(brooks, 3, 2, 5);
  if (!pd.ok)
    fail(std::string("defect-subgroup perturbations: ") +
         (pd.precondition_ok
              ? "failing constant " + encode_elem(*pd.failing_c)
              : "base profile not flat"));
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c8_correspondence() {
  CriterionResult res{8, "probe vs commensurator-witness correspondence", true,
                      "", 0};
  auto start = Clock::now();
  auto corpus = base_corpus();
  // Symmetric subset: maps with phi(x^-1) ~ phi(x)^-1 up to bounded error.
  std::vector<size_t> symmetric = {0, 1, 3, 4, 5};
  for (size_t idx : symmetric) {
    const auto& entry = corpus[idx];
    const GroupMap& phi = *entry.map;
    ElemSet cs;
    cs.insert(g_id(phi.target()));
    if (phi.target()->kind() == GroupKind::Free)
      cs.insert(parse_elem(phi.target(), "a"));
    for (const Elem& d : delta_sample(phi, 3, 2)) cs.insert(d);
    GroupPtr prod = Group::product(phi.source(), phi.target());
    for (const Elem& c : cs.items()) {
      DefectProfile pi = pi_probe(phi, c, 5);
      Elem conj(prod, std::vector<Elem>{g_id(phi.source()), c});
      DefectProfile comm = comm_boundedness_profile(phi, conj, 5);
      bool pi_flat = pi.classification == Classification::Plateau;
      bool comm_flat = comm.classification == Classification::Plateau;
      if (pi_flat != comm_flat) {
        res.pass = false;
        res.detail = entry.name + ", c = " + encode_elem(c) + ": probe " +
                     to_string(pi.classification) + " vs witnesses " +
                     to_string(comm.classification);
        break;
      }
    }
    if (!res.pass) break;
  }
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c9_normality(std::uint64_t seed) {
  CriterionResult res{9, "normality battery", true, "", 0};
  auto start = Clock::now();
  GroupPtr z = Group::integers();
  GroupPtr f2 = Group::free_group(2);
  GroupPtr s3 = Group::sym3();
  auto fail = [&](const std::string& msg) {
    res.pass = false;
    if (res.detail.empty()) res.detail = msg;
  };

  // A wobbly unital map into the rotation subgroup of sym3: a random
  // integer map pushed through n -> (3-cycle)^n.
  GroupMap into_s3(MapSpec::compose(
      MapSpec::hom(z, s3, {{1, Elem(s3, 3)}}),
      MapSpec::random_map(z, z, seed + 9, 4, 4)));
  NormalityReport r1 = check_normality(into_s3, 4, 3);
  if (!r1.all_pass() || !r1.exhausted)
    fail("finite-target example failed: " +
         normality_json(r1).dump());

  GroupMap halved_square(MapSpec::compose(MapSpec::parse("floor_scale{1,2}", z),
                                          MapSpec::parse("monomial{2}", z)));
  NormalityReport r2 = check_normality(halved_square, 4, 3);
  if (!r2.all_pass()) fail("floor(n^2/2) failed the normality checks");

  GroupMap zq(MapSpec::zquad(f2, parse_elem(f2, "a"), parse_elem(f2, "b")));
  NormalityReport r3 = check_normality(zq, 4, 3);
  if (r3.q1_pass) fail("free-seed recursion unexpectedly flat at degree 2");

  auto verdict = [&](const GroupMap& m, int radius) {
    return hyperbolic_desk_check(m, radius).verdict;
  };
  if (verdict(GroupMap(MapSpec::parse("hom{1->a}", z, f2)), 3) !=
      HyperbolicVerdict::QuadraticLike)
    fail("homomorphism not classified QuadraticLike");
  if (verdict(GroupMap(MapSpec::zquad(f2, parse_elem(f2, "a"),
                                      parse_elem(f2, "aa"))),
              3) != HyperbolicVerdict::QuadraticLike)
    fail("commuting-seed recursion not classified QuadraticLike");
  if (verdict(GroupMap(MapSpec::compose(MapSpec::parse("hom{1->a}", z, f2),
                                        MapSpec::parse("floor_quad{1,3}", z))),
              4) != HyperbolicVerdict::CyclicImage)
    fail("cyclic-image map not classified CyclicImage");
  if (verdict(GroupMap(MapSpec::random_map(f2, f2, 2, 3, 3)), 3) !=
      HyperbolicVerdict::Violation)
    fail("random map not classified Violation");
  res.seconds = elapsed(start);
  return res;
}

CriterionResult c10_performance() {
  CriterionResult res{10, "defect profile throughput", true, "", 0};
  auto start = Clock::now();
  GroupPtr f2 = Group::free_group(2);
  GroupMap brooks(MapSpec::parse("brooks{ab}", f2));
  DefectProfile p = profile(DefectKind::D, brooks, 6, 3, 10000000);
  if (p.classification != Classification::Plateau) {
    res.pass = false;
    res.detail = "radius-6 defect profile not flat";
  }
  res.seconds = elapsed(start);
  if (res.seconds > 30.0) {
    res.pass = false;
    res.detail = "radius-6 profile took " + std::to_string(res.seconds) + "s";
  }
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  return {
      c1_formula_oracle(seed), c2_unitalize_roundtrip(),
      c3_perturbation_identity(), c4_inclusions(seed), c5_recursion_anchors(),
      c6_relator_battery(seed), c7_pi_battery(), c8_correspondence(),
      c9_normality(seed), c10_performance(),
  };
}

}  // namespace coarsemaps
