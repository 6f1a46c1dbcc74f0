#include "coarsemaps/zquad.hpp"

#include "coarsemaps/diffs.hpp"

namespace coarsemaps {

ZQuadSequence::ZQuadSequence(Elem a, Elem b) : zsrc_(Group::integers()) {
  if (!a.group()->same(*b.group())) {
    throw MapError("zquad seed values must share a target group");
  }
  GroupPtr h = a.group();
  map_ = std::make_shared<GroupMap>(
      MapSpec::zquad(std::move(h), std::move(a), std::move(b)));
}

TripleCheckResult window_check(const ZQuadSequence& seq, long long n_window,
                               long long shift_bound) {
  if (n_window < 3 * shift_bound) {
    throw MapError("window_check: need N >= 3S");
  }
  GroupPtr z = Group::integers();
  auto shifts = g_ball(z, static_cast<int>(shift_bound));
  Elem one_h = g_id(seq.target());
  for (const Elem& g1 : shifts) {
    for (const Elem& g2 : shifts) {
      for (const Elem& g3 : shifts) {
        Elem v = lemma43(seq.map(), g1, g2, g3);
        if (!g_eq(v, one_h)) {
          return {false,
                  std::array<long long, 3>{g1.integer(), g2.integer(),
                                           g3.integer()}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

bool l49_identity(const ZQuadSeed& seed) {
  const Elem& a = seed.a;
  const Elem& b = seed.b;
  Elem comm = g_op(g_op(g_op(g_inv(a), g_inv(b)), a), b);  // [a,b]
  Elem other = g_op(g_op(g_inv(b), a), a);                 // b^-1 a^2
  return g_eq(g_op(comm, other), g_op(other, comm));
}

std::vector<std::pair<Elem, int>> pol2_relator(const Elem& g1, const Elem& g2,
                                               const Elem& g3) {
  Elem g21 = g_op(g2, g1);
  Elem g31 = g_op(g3, g1);
  Elem g32 = g_op(g3, g2);
  Elem g321 = g_op(g3, g21);
  return {{g321, +1}, {g21, -1}, {g1, +1}, {g31, -1},
          {g3, +1},  {g2, +1},  {g32, -1}};
}

RelatorCheckResult pol2_relator_check(const GroupMap& phi, int radius) {
  if (!phi.is_unital()) {
    throw MapError("pol2_relator_check: map must be unital");
  }
  auto b = g_ball(phi.source(), radius);
  Elem one_h = g_id(phi.target());
  for (const Elem& g1 : b) {
    for (const Elem& g2 : b) {
      for (const Elem& g3 : b) {
        Elem acc = one_h;
        for (const auto& [arg, sign] : pol2_relator(g1, g2, g3)) {
          Elem v = phi(arg);
          acc = g_op(acc, sign > 0 ? v : g_inv(v));
        }
        if (!g_eq(acc, one_h)) {
          return {false, std::array<Elem, 3>{g1, g2, g3}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace coarsemaps
