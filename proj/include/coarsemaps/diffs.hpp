#pragma once

#include <functional>

#include "coarsemaps/defects.hpp"

// Non-commutative difference operators, iterated differences, the P_d sets,
// and quasi-polynomial degree estimation.
//
// (d_g phi)(x) = phi(gx) phi(x)^-1, and d_{g1,...,gr} = d_{g1} o ... o d_{gr}
// (d_{g1} applied last).

namespace coarsemaps {

using EvalFn = std::function<Elem(const Elem&)>;

EvalFn dg(const GroupMap& phi, const Elem& g);

// (d_{g1,...,gk} phi)(1) by literal recursive expansion (2^k leaves).
Elem iter_diff(const GroupMap& phi, const std::vector<Elem>& shifts);

// Closed formula for (d_{g1,g2,g3} phi)(1):
//   phi(g3g2g1) phi(g2g1)^-1 phi(g1) phi(g3g1)^-1
//   phi(g3) phi(1)^-1 phi(g2) phi(g3g2)^-1
// Holds for every map; the module's primary oracle.
Elem lemma43(const GroupMap& phi, const Elem& g1, const Elem& g2,
             const Elem& g3);

// P_d(phi) with shifts over ball(R)^{d+1}; d = 2 uses the closed formula.
// d is capped at 3.
SetResult set_Pd(const GroupMap& phi, int d, int radius,
                 long long budget = kDefaultBudget, std::uint64_t seed = 0);

DefectProfile pd_profile(const GroupMap& phi, int d, int radius_max,
                         int window = 3, long long budget = kDefaultBudget,
                         std::uint64_t seed = 0);

struct DegreeEstimate {
  std::vector<DefectProfile> per_degree;  // index d = 0..dmax
  int degree = -1;                        // smallest plateau degree, -1 = none
};

DegreeEstimate degree_estimate(const GroupMap& phi, int dmax, int radius_max,
                               int window = 3,
                               long long budget = kDefaultBudget,
                               std::uint64_t seed = 0);

}  // namespace coarsemaps
