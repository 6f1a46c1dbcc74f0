#pragma once

#include "coarsemaps/diffs.hpp"

// Checkers for the four normality conditions on the subgroup generated by
// the degree-2 sets of a quasi-quadratic map, for abelian, finite-table, and
// free targets, plus the desk-scale trichotomy for maps into free groups.

namespace coarsemaps {

// Products of at most `factors` factors from set_Pd(phi,2,R) and inverses;
// a ball-like sample of the subgroup those values generate.
std::vector<Elem> xi_sample(const GroupMap& phi, int radius, int factors,
                            long long budget = kDefaultBudget,
                            std::uint64_t seed = 0);

struct NormalityReport {
  std::string target_kind;  // "abelian", "finite", or "free"

  DefectProfile q1;  // P2 growth profile
  bool q1_pass = false;

  // Q2: conjugates of sampled subgroup elements by image values stay inside
  // the sampled subgroup's closure.
  bool q2_pass = false;
  std::optional<std::pair<Elem, Elem>> q2_counterexample;  // (g, k)

  // Q3: symmetric greedy transversal covering the image by centralizer
  // cosets.
  std::vector<Elem> q3_transversal;
  std::vector<Elem> q3_uncovered;
  bool q3_pass = false;

  // Q4: smallest n with Y^{n+1} inside Y^n * centralizer * subgroup sample.
  int q4_n = -1;
  bool q4_pass = false;

  // Exact exhaustive checks (finite and abelian targets) vs sample-based
  // evidence (free targets, or truncated searches).
  bool exhausted = false;
  std::string note;

  bool all_pass() const { return q1_pass && q2_pass && q3_pass && q4_pass; }
};

NormalityReport check_normality(const GroupMap& phi, int radius, int factors,
                                int q4_cap = 6, int window = 3,
                                long long budget = kDefaultBudget,
                                std::uint64_t seed = 0);

enum class HyperbolicVerdict { QuadraticLike, CyclicImage, Violation };
std::string to_string(HyperbolicVerdict v);

struct HyperbolicResult {
  HyperbolicVerdict verdict = HyperbolicVerdict::Violation;
  std::optional<Elem> witness;
};

// For maps into a free group: degree-2 values all trivial -> QuadraticLike;
// else all image values powers of one primitive root -> CyclicImage; else
// Violation with a witness image value.
HyperbolicResult hyperbolic_desk_check(const GroupMap& phi, int radius,
                                       long long budget = kDefaultBudget,
                                       std::uint64_t seed = 0);

}  // namespace coarsemaps
