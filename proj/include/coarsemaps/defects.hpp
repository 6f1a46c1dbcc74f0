#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "coarsemaps/gmaps.hpp"

// Radius-parametrized defect-type sets D, D*, M, A, the quadruple map and its
// equivariance defect, and plateau classification of growth profiles.
//
// "Bounded" is operationalized as a plateau of the max-norm statistic over a
// trailing window of radii; the result is a classification, never a proof.

namespace coarsemaps {

constexpr long long kDefaultBudget = 1000000;

// Deduplicating element set keyed by canonical encoding; keeps insertion
// order for deterministic reports.
class ElemSet {
 public:
  bool insert(const Elem& e);
  bool contains(const Elem& e) const;
  const std::vector<Elem>& items() const { return items_; }
  size_t size() const { return items_.size(); }

 private:
  std::vector<Elem> items_;
  std::unordered_set<std::string> keys_;
};

enum class Classification { Plateau, Growing, Inconclusive };
std::string to_string(Classification c);

struct ProfileRow {
  int radius = 0;
  long long set_size = 0;
  long long max_norm = 0;
  bool exact = true;
};

struct DefectProfile {
  std::string kind;
  std::vector<ProfileRow> rows;
  Classification classification = Classification::Inconclusive;
};

// Plateau iff the last `window` max_norm values are equal; Growing iff they
// strictly increase; otherwise Inconclusive.
Classification classify(const std::vector<ProfileRow>& rows, int window);

enum class DefectKind { D, Dstar, M, A };
std::string to_string(DefectKind k);

struct SetResult {
  std::vector<Elem> items;
  bool exact = true;
};

// D(phi)  = { phi(y)^-1 phi(x)^-1 phi(xy) }   over x,y in ball(R)
// D*(phi) = { phi(x) phi(y) phi(xy)^-1 }
// M(phi)  = { phi(x)^-1 phi(xy) phi(y)^-1 }
std::vector<Elem> set_D(const GroupMap& phi, int radius);
std::vector<Elem> set_Dstar(const GroupMap& phi, int radius);
std::vector<Elem> set_M(const GroupMap& phi, int radius);

// Pointwise variants, exposed for the perturbation-identity tests.
Elem defect_D_at(const GroupMap& phi, const Elem& x, const Elem& y);
Elem defect_M_at(const GroupMap& phi, const Elem& x, const Elem& y);

struct Quadruple {
  Elem x1, x2, x3, x4;

  // x4 = x1 x2^-1 x3, the unique completion to a multiplicative quadruple.
  static Quadruple from_triple(const Elem& x1, const Elem& x2, const Elem& x3);
  bool valid() const;  // x1 x2^-1 x3 x4^-1 = 1
  Quadruple translated(const Elem& t) const;
  Quadruple opposite() const;
};

Elem mu(const GroupMap& phi, const Quadruple& q);

// A(phi) over triples (x1,x2,x3) in ball(R)^3; switches to seeded
// deterministic sampling above the budget.
SetResult set_A(const GroupMap& phi, int radius,
                long long budget = kDefaultBudget, std::uint64_t seed = 0);

// Equivariance defect of mu: per radius, the set
// { mu(x.t)^-1 mu(x) : (x1,x2,x3) in ball(r)^3, t in ball(r) }.
DefectProfile equiv_defect(const GroupMap& phi, int radius, int window = 3,
                           long long budget = kDefaultBudget,
                           std::uint64_t seed = 0);

DefectProfile profile(DefectKind kind, const GroupMap& phi, int radius_max,
                      int window = 3, long long budget = kDefaultBudget,
                      std::uint64_t seed = 0);

}  // namespace coarsemaps
