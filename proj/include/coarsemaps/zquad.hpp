#pragma once

#include <array>
#include <optional>

#include "coarsemaps/gmaps.hpp"

// Quadratic maps Z -> H generated from the seed values phi(1) = a and
// phi(2) = b by the degree-2 recursion
//   phi(n+1) = phi(n) a^-1 phi(n-1)^-1 phi(n) a^-1 b,
// plus the commutation identity and the Pol2 relator checks. The recursion
// defines the candidate map; quadraticity is a checked property, not an
// assumption.

namespace coarsemaps {

struct ZQuadSeed {
  Elem a;  // phi(1)
  Elem b;  // phi(2)
};

class ZQuadSequence {
 public:
  ZQuadSequence(Elem a, Elem b);

  Elem at(long long n) const { return (*map_)(Elem(zsrc_, n)); }
  const GroupPtr& target() const { return map_->target(); }
  const GroupMap& map() const { return *map_; }

 private:
  GroupPtr zsrc_;
  std::shared_ptr<GroupMap> map_;
};

struct TripleCheckResult {
  bool ok = true;
  std::optional<std::array<long long, 3>> witness;
};

// Checks (d_{g1,g2,g3} phi)(1) = 1 for all |g1|,|g2|,|g3| <= S; the seven
// evaluation arguments stay within [-3S, 3S], which must fit in [-N, N].
TripleCheckResult window_check(const ZQuadSequence& seq, long long n_window,
                               long long shift_bound);

// Does [a, b] commute with b^-1 a^2?
bool l49_identity(const ZQuadSeed& seed);

// Degree-2 relator on symbols tau(g), as (argument, sign) pairs:
// tau(g3g2g1) tau(g2g1)^-1 tau(g1) tau(g3g1)^-1 tau(g3) tau(g2) tau(g3g2)^-1
std::vector<std::pair<Elem, int>> pol2_relator(const Elem& g1, const Elem& g2,
                                               const Elem& g3);

struct RelatorCheckResult {
  bool ok = true;
  std::optional<std::array<Elem, 3>> witness;
};

// Substitutes phi for tau in every relator with g1,g2,g3 in ball(R): all
// must evaluate to the identity for the induced homomorphism to be well
// defined. Requires a unital map.
RelatorCheckResult pol2_relator_check(const GroupMap& phi, int radius);

}  // namespace coarsemaps
