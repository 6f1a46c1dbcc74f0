#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarsemaps/groups.hpp"

// Map-description DSL and the evaluable, memoizing GroupMap.
//
// Families:
//   hom{g1->w1,...}          free or Z source, extended multiplicatively
//   id                       G -> G
//   const{c}                 constant c in the target
//   brooks{w}                Free(k) -> Z counting quasimorphism
//   floor_scale{p,q}         Z -> Z, n -> floor(p*n/q)
//   monomial{d}              Z -> Z, n -> n^d
//   floor_quad{p,q}          Z -> Z, n -> floor(p*n^2/q)
//   perturb{base,c}          g -> base(g)*c
//   shift{base,a}            g -> base(g*a)
//   unitalize{base}          g -> base(g)*base(1)^-1
//   compose{outer,inner}     outer(inner(g))
//   zquad{a,b}               Z -> H via the quadratic seed recursion
//   random{seed,domR,tgtR}   seeded table map, identity off ball(domR)

namespace coarsemaps {

struct MapError : std::exception {
  std::string msg;
  explicit MapError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

enum class MapFamily {
  Hom,
  Id,
  Const,
  Brooks,
  FloorScale,
  Monomial,
  FloorQuad,
  Perturb,
  Shift,
  Unitalize,
  Compose,
  ZQuad,
  Random
};

class MapSpec;
using MapSpecPtr = std::shared_ptr<const MapSpec>;

class MapSpec {
 public:
  // Parses the DSL and type-checks against the endpoint groups. `target`
  // may be null when the family forces it (id, brooks, the Z -> Z families).
  static MapSpecPtr parse(const std::string& text, GroupPtr source,
                          GroupPtr target = nullptr);

  // Direct constructors for programmatic use.
  static MapSpecPtr hom(GroupPtr source, GroupPtr target,
                        std::vector<std::pair<int, Elem>> images);
  static MapSpecPtr identity(GroupPtr g);
  static MapSpecPtr constant(GroupPtr source, Elem c);
  static MapSpecPtr brooks(GroupPtr source, Word pattern);
  static MapSpecPtr floor_scale(long long p, long long q);
  static MapSpecPtr monomial(long long d);
  static MapSpecPtr floor_quad(long long p, long long q);
  static MapSpecPtr perturb(MapSpecPtr base, Elem c);
  static MapSpecPtr shift(MapSpecPtr base, Elem a);
  static MapSpecPtr unitalize(MapSpecPtr base);
  static MapSpecPtr compose(MapSpecPtr outer, MapSpecPtr inner);
  static MapSpecPtr zquad(GroupPtr target, Elem a, Elem b);
  static MapSpecPtr random_map(GroupPtr source, GroupPtr target,
                               std::uint64_t seed, int dom_radius,
                               int tgt_radius);

  MapFamily family() const { return family_; }
  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<std::pair<int, Elem>>& hom_images() const {
    return hom_images_;
  }
  const Elem& elem_a() const { return *elem_a_; }
  const Elem& elem_b() const { return *elem_b_; }
  const Word& pattern() const { return *pattern_; }
  long long p() const { return p_; }
  long long q() const { return q_; }
  long long degree() const { return d_; }
  std::uint64_t seed() const { return seed_; }
  int dom_radius() const { return dom_radius_; }
  int tgt_radius() const { return tgt_radius_; }
  const MapSpecPtr& inner() const { return inner_; }
  const MapSpecPtr& outer() const { return outer_; }

  // Canonical printer; parse(print()) reproduces the spec.
  std::string print() const;

 private:
  MapSpec() = default;
  MapFamily family_ = MapFamily::Id;
  GroupPtr source_, target_;
  std::vector<std::pair<int, Elem>> hom_images_;
  std::optional<Elem> elem_a_, elem_b_;
  std::optional<Word> pattern_;
  long long p_ = 0, q_ = 0, d_ = 0;
  std::uint64_t seed_ = 0;
  int dom_radius_ = 0, tgt_radius_ = 0;
  MapSpecPtr inner_, outer_;
};

// SplitMix64 finalizer over seed XOR index; the random-family mixer.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t index);

// Evaluable map with a memoization table keyed by the canonical element
// encoding. Evaluation is pure given the spec; instances are not shared
// between threads.
class GroupMap {
 public:
  explicit GroupMap(MapSpecPtr spec);

  const MapSpecPtr& spec() const { return spec_; }
  const GroupPtr& source() const { return spec_->source(); }
  const GroupPtr& target() const { return spec_->target(); }

  Elem operator()(const Elem& g) const;
  Elem eval_uncached(const Elem& g) const;  // bypasses this level's cache

  bool is_unital() const;

 private:
  Elem eval_raw(const Elem& g) const;

  MapSpecPtr spec_;
  mutable std::unordered_map<std::string, Elem> cache_;
  std::unique_ptr<GroupMap> inner_map_, outer_map_;
  // random family tables, built on demand
  mutable std::unordered_map<std::string, std::uint64_t> dom_index_;
  mutable std::vector<Elem> tgt_ball_;
  mutable bool random_ready_ = false;
  // zquad sequence values, grown outward from 0
  mutable std::vector<Elem> zq_fwd_, zq_bwd_;
};

}  // namespace coarsemaps
