#include "coarsemaps/diffs.hpp"

#include <algorithm>

namespace coarsemaps {

namespace {

// Evaluates (d_{shifts[i..]} phi)(x) recursively.
Elem iter_eval(const GroupMap& phi, const std::vector<Elem>& shifts, size_t i,
               const Elem& x) {
  if (i == shifts.size()) return phi(x);
  Elem shifted = iter_eval(phi, shifts, i + 1, g_op(shifts[i], x));
  Elem base = iter_eval(phi, shifts, i + 1, x);
  return g_op(shifted, g_inv(base));
}

void require_source(const GroupMap& phi, const Elem& g) {
  if (!g.group()->same(*phi.source())) {
    throw MapError("difference shift not in the source group");
  }
}

}  // namespace

EvalFn dg(const GroupMap& phi, const Elem& g) {
  require_source(phi, g);
  return [&phi, g](const Elem& x) {
    return g_op(phi(g_op(g, x)), g_inv(phi(x)));
  };
}

Elem iter_diff(const GroupMap& phi, const std::vector<Elem>& shifts) {
  for (const Elem& g : shifts) require_source(phi, g);
  return iter_eval(phi, shifts, 0, g_id(phi.source()));
}

Elem lemma43(const GroupMap& phi, const Elem& g1, const Elem& g2,
             const Elem& g3) {
  Elem g21 = g_op(g2, g1);
  Elem g31 = g_op(g3, g1);
  Elem g32 = g_op(g3, g2);
  Elem g321 = g_op(g3, g21);
  Elem one = g_id(phi.source());
  Elem acc = phi(g321);
  acc = g_op(acc, g_inv(phi(g21)));
  acc = g_op(acc, phi(g1));
  acc = g_op(acc, g_inv(phi(g31)));
  acc = g_op(acc, phi(g3));
  acc = g_op(acc, g_inv(phi(one)));
  acc = g_op(acc, phi(g2));
  acc = g_op(acc, g_inv(phi(g32)));
  return acc;
}

SetResult set_Pd(const GroupMap& phi, int d, int radius, long long budget,
                 std::uint64_t seed) {
  if (d < 0 || d > 3) throw MapError("set_Pd: d must be in {0,1,2,3}");
  SetResult res;
  ElemSet out;
  auto b = g_ball(phi.source(), radius);
  long long n = static_cast<long long>(b.size());
  int k = d + 1;
  long long tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;

  auto value = [&](const std::vector<Elem>& shifts) {
    if (d == 2) return lemma43(phi, shifts[0], shifts[1], shifts[2]);
    return iter_diff(phi, shifts);
  };

  if (tuples <= budget) {
    res.exact = true;
    std::vector<size_t> idx(static_cast<size_t>(k), 0);
    std::vector<Elem> shifts;
    while (true) {
      shifts.clear();
      for (int i = 0; i < k; ++i) shifts.push_back(b[idx[static_cast<size_t>(i)]]);
      out.insert(value(shifts));
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == b.size()) {
        idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  } else {
    res.exact = false;
    std::uint64_t counter = 0;
    std::vector<Elem> shifts;
    for (long long t = 0; t < budget; ++t) {
      shifts.clear();
      for (int i = 0; i < k; ++i) {
        shifts.push_back(b[mix64(seed, counter++) % b.size()]);
      }
      out.insert(value(shifts));
    }
  }
  res.items = out.items();
  return res;
}

DefectProfile pd_profile(const GroupMap& phi, int d, int radius_max,
                         int window, long long budget, std::uint64_t seed) {
  DefectProfile prof;
  prof.kind = "P" + std::to_string(d);
  ElemSet seen;
  long long max_norm = 0;
  for (int r = 1; r <= radius_max; ++r) {
    SetResult s = set_Pd(phi, d, r, budget, seed);
    for (const Elem& e : s.items) {
      if (seen.insert(e)) max_norm = std::max(max_norm, g_norm(e));
    }
    prof.rows.push_back(
        {r, static_cast<long long>(seen.size()), max_norm, s.exact});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

DegreeEstimate degree_estimate(const GroupMap& phi, int dmax, int radius_max,
                               int window, long long budget,
                               std::uint64_t seed) {
  if (dmax > 3) throw MapError("degree_estimate: dmax capped at 3");
  DegreeEstimate est;
  for (int d = 0; d <= dmax; ++d) {
    est.per_degree.push_back(
        pd_profile(phi, d, radius_max, window, budget, seed));
    if (est.degree < 0 &&
        est.per_degree.back().classification == Classification::Plateau) {
      est.degree = d;
    }
  }
  return est;
}

}  // namespace coarsemaps
