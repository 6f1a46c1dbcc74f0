#pragma once

#include "coarsemaps/defects.hpp"

// Quasi-subgroup and commensurator witnesses, graph-of-map sampling in
// G x H, the conjugation probe behind the Pi group of a map, and the
// S_{(a,b)} probe. Every "bounded" statement is rendered as a profile or
// witness report at explicitly declared radii.

namespace coarsemaps {

enum class WitnessCondition { InverseCover, SquareCover, LeftComm, RightComm };
std::string to_string(WitnessCondition c);

struct WitnessReport {
  WitnessCondition condition = WitnessCondition::InverseCover;
  int scale = 0;        // R: probed elements come from the ball of this radius
  int probe_radius = 0; // R': cover candidates come from this larger ball
  long long worst_witness_norm = -1;  // -1: some probed element has no witness
  std::vector<Elem> witness_set;      // one minimal witness per probed element
  bool exhausted = true;
};

// Lambda = {(x, phi(x)) : x in ball_G(R)}, in source x target.
std::vector<Elem> graph_sample(const GroupMap& phi, int radius);

// InverseCover: for each lambda in Lambda cap ball(R), the minimal-norm
// f = mu^-1 lambda^-1 over mu in Lambda cap ball(R'). SquareCover: same for
// each product lambda1 lambda2. Requires R' >= 2R.
std::pair<WitnessReport, WitnessReport> quasi_subgroup_witness(
    const std::vector<Elem>& lambda, int scale, int probe_radius);

// Rows: max over x in ball(r) of ||phi(x)^-1 c^-1 phi(x)||. Plateau for
// every r-window means c behaves like a member of the Pi group at this scale.
DefectProfile pi_probe(const GroupMap& phi, const Elem& c, int radius_max,
                       int window = 3);

// Products of at most L factors from set_D(phi,R) and its inverses
// (a ball-like sample of the defect subgroup). Always contains the identity.
std::vector<Elem> delta_sample(const GroupMap& phi, int radius, int factors);

struct PertDeltaResult {
  bool ok = false;
  bool precondition_ok = false;  // phi's own D-profile must plateau
  std::optional<Elem> failing_c;
};

// For every c in delta_sample(phi,R,L): does the D-profile of perturb{phi,c}
// still plateau at radius_max?
PertDeltaResult pertdelta_check(const GroupMap& phi, int radius, int factors,
                                int radius_max, int window = 3,
                                long long budget = kDefaultBudget,
                                std::uint64_t seed = 0);

// Rows: max over z in ball(r) of ||phi(z^-1 a^-1 z) phi(z)^-1 b phi(z)||.
DefectProfile s_ab_probe(const GroupMap& phi, const Elem& a, const Elem& b,
                         int radius_max, int window = 3);

// Left report: for each lambda in Lambda cap ball(R), the minimal-norm f
// with a lambda a^-1 = mu f, mu in Lambda cap ball(R'). The right condition
// is probed by running the left probe on (Lambda^-1, a^-1).
// Requires R' >= R + 2||a||.
std::pair<WitnessReport, WitnessReport> comm_probe(
    const std::vector<Elem>& lambda, const Elem& a, int scale,
    int probe_radius);

// Boundedness rendering of the left-commensurator condition on a graph
// sample: for r = 1..Rmax, probe lambda = (x, phi(x)) for x in ball_G(r) and
// record the worst minimal witness norm, searching mu over the graph of
// ball_G(r + 2||a||). Indexing by the G-coordinate radius keeps the rows
// strictly comparable across r.
DefectProfile comm_boundedness_profile(const GroupMap& phi, const Elem& conj,
                                       int radius_max, int window = 3);

}  // namespace coarsemaps
