#include "coarsemaps/coarse.hpp"

#include <algorithm>

namespace coarsemaps {

std::string to_string(WitnessCondition c) {
  switch (c) {
    case WitnessCondition::InverseCover:
      return "InverseCover";
    case WitnessCondition::SquareCover:
      return "SquareCover";
    case WitnessCondition::LeftComm:
      return "LeftComm";
    case WitnessCondition::RightComm:
      return "RightComm";
  }
  return "?";
}

std::vector<Elem> graph_sample(const GroupMap& phi, int radius) {
  GroupPtr prod = Group::product(phi.source(), phi.target());
  std::vector<Elem> out;
  for (const Elem& x : g_ball(phi.source(), radius)) {
    out.push_back(Elem(prod, std::vector<Elem>{x, phi(x)}));
  }
  return out;
}

namespace {

std::vector<Elem> norm_filter(const std::vector<Elem>& set, int radius) {
  std::vector<Elem> out;
  for (const Elem& e : set)
    if (g_norm(e) <= radius) out.push_back(e);
  return out;
}

// Minimal-norm f with target = mu f over the candidate list; ties broken by
// canonical order. Empty candidate list -> nullopt.
std::optional<Elem> best_witness(const std::vector<Elem>& candidates,
                                 const Elem& target) {
  std::optional<Elem> best;
  long long best_norm = -1;
  for (const Elem& mu : candidates) {
    Elem f = g_op(g_inv(mu), target);
    long long n = g_norm(f);
    if (!best || n < best_norm ||
        (n == best_norm && canonical_less(f, *best))) {
      best = f;
      best_norm = n;
    }
    if (best_norm == 0) break;
  }
  return best;
}

template <typename TargetsFn>
WitnessReport cover_report(WitnessCondition cond, int scale, int probe_radius,
                           const std::vector<Elem>& candidates,
                           TargetsFn&& for_each_target) {
  WitnessReport rep;
  rep.condition = cond;
  rep.scale = scale;
  rep.probe_radius = probe_radius;
  rep.worst_witness_norm = 0;
  ElemSet witnesses;
  for_each_target([&](const Elem& target) {
    std::optional<Elem> f = best_witness(candidates, target);
    if (!f) {
      rep.worst_witness_norm = -1;
      return;
    }
    if (rep.worst_witness_norm >= 0) {
      rep.worst_witness_norm = std::max(rep.worst_witness_norm, g_norm(*f));
    }
    witnesses.insert(*f);
  });
  rep.witness_set = witnesses.items();
  return rep;
}

}  // namespace

std::pair<WitnessReport, WitnessReport> quasi_subgroup_witness(
    const std::vector<Elem>& lambda, int scale, int probe_radius) {
  if (probe_radius < 2 * scale) {
    throw MapError("quasi_subgroup_witness: need R' >= 2R");
  }
  std::vector<Elem> probed = norm_filter(lambda, scale);
  std::vector<Elem> candidates = norm_filter(lambda, probe_radius);

  WitnessReport inv = cover_report(
      WitnessCondition::InverseCover, scale, probe_radius, candidates,
      [&](auto&& emit) {
        for (const Elem& l : probed) emit(g_inv(l));
      });
  WitnessReport sq = cover_report(
      WitnessCondition::SquareCover, scale, probe_radius, candidates,
      [&](auto&& emit) {
        for (const Elem& l1 : probed)
          for (const Elem& l2 : probed) emit(g_op(l1, l2));
      });
  return {inv, sq};
}

DefectProfile pi_probe(const GroupMap& phi, const Elem& c, int radius_max,
                       int window) {
  if (!c.group()->same(*phi.target())) {
    throw MapError("pi_probe: constant not in the target group");
  }
  DefectProfile prof;
  prof.kind = "Pi";
  Elem cinv = g_inv(c);
  ElemSet seen;
  long long max_norm = 0;
  for (int r = 1; r <= radius_max; ++r) {
    for (const Elem& x : g_ball(phi.source(), r)) {
      Elem h = phi(x);
      Elem v = g_op(g_op(g_inv(h), cinv), h);
      if (seen.insert(v)) max_norm = std::max(max_norm, g_norm(v));
    }
    prof.rows.push_back(
        {r, static_cast<long long>(seen.size()), max_norm, true});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

std::vector<Elem> delta_sample(const GroupMap& phi, int radius, int factors) {
  std::vector<Elem> gens;
  for (const Elem& d : set_D(phi, radius)) {
    gens.push_back(d);
    gens.push_back(g_inv(d));
  }
  ElemSet all;
  all.insert(g_id(phi.target()));
  std::vector<Elem> level = all.items();
  for (int k = 0; k < factors; ++k) {
    std::vector<Elem> next;
    for (const Elem& x : level)
      for (const Elem& d : gens) {
        Elem y = g_op(x, d);
        if (all.insert(y)) next.push_back(y);
      }
    level = std::move(next);
  }
  std::vector<Elem> out = all.items();
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
    long long na = g_norm(a), nb = g_norm(b);
    if (na != nb) return na < nb;
    return canonical_less(a, b);
  });
  return out;
}

PertDeltaResult pertdelta_check(const GroupMap& phi, int radius, int factors,
                                int radius_max, int window, long long budget,
                                std::uint64_t seed) {
  PertDeltaResult res;
  DefectProfile own =
      profile(DefectKind::D, phi, radius_max, window, budget, seed);
  res.precondition_ok = own.classification == Classification::Plateau;
  if (!res.precondition_ok) return res;
  for (const Elem& c : delta_sample(phi, radius, factors)) {
    GroupMap pert(MapSpec::perturb(phi.spec(), c));
    DefectProfile p =
        profile(DefectKind::D, pert, radius_max, window, budget, seed);
    if (p.classification != Classification::Plateau) {
      res.failing_c = c;
      return res;
    }
  }
  res.ok = true;
  return res;
}

DefectProfile s_ab_probe(const GroupMap& phi, const Elem& a, const Elem& b,
                         int radius_max, int window) {
  if (!a.group()->same(*phi.source()) || !b.group()->same(*phi.target())) {
    throw MapError("s_ab_probe: (a,b) must lie in source x target");
  }
  DefectProfile prof;
  prof.kind = "S_ab";
  Elem ainv = g_inv(a);
  ElemSet seen;
  long long max_norm = 0;
  for (int r = 1; r <= radius_max; ++r) {
    for (const Elem& z : g_ball(phi.source(), r)) {
      Elem left = phi(g_op(g_op(g_inv(z), ainv), z));
      Elem h = phi(z);
      Elem v = g_op(left, g_op(g_op(g_inv(h), b), h));
      if (seen.insert(v)) max_norm = std::max(max_norm, g_norm(v));
    }
    prof.rows.push_back(
        {r, static_cast<long long>(seen.size()), max_norm, true});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

namespace {

WitnessReport conj_cover(WitnessCondition cond, const std::vector<Elem>& set,
                         const Elem& a, int scale, int probe_radius) {
  std::vector<Elem> probed = norm_filter(set, scale);
  std::vector<Elem> candidates = norm_filter(set, probe_radius);
  Elem ainv = g_inv(a);
  return cover_report(cond, scale, probe_radius, candidates,
                      [&](auto&& emit) {
                        for (const Elem& l : probed)
                          emit(g_op(g_op(a, l), ainv));
                      });
}

}  // namespace

std::pair<WitnessReport, WitnessReport> comm_probe(
    const std::vector<Elem>& lambda, const Elem& a, int scale,
    int probe_radius) {
  if (probe_radius < scale + 2 * g_norm(a)) {
    throw MapError("comm_probe: need R' >= R + 2||a||");
  }
  WitnessReport left = conj_cover(WitnessCondition::LeftComm, lambda, a, scale,
                                  probe_radius);
  std::vector<Elem> inv_set;
  for (const Elem& l : lambda) inv_set.push_back(g_inv(l));
  WitnessReport right = conj_cover(WitnessCondition::RightComm, inv_set,
                                   g_inv(a), scale, probe_radius);
  return {left, right};
}

DefectProfile comm_boundedness_profile(const GroupMap& phi, const Elem& conj,
                                       int radius_max, int window) {
  GroupPtr prod = Group::product(phi.source(), phi.target());
  if (!conj.group()->same(*prod)) {
    throw MapError("comm_boundedness_profile: conjugator not in G x H");
  }
  int pad = static_cast<int>(2 * g_norm(conj));
  auto src_ball = g_ball(phi.source(), radius_max + pad);
  std::vector<Elem> graph = graph_sample(phi, radius_max + pad);
  Elem cinv = g_inv(conj);

  // Prefix cutoffs into src_ball/graph at each source radius.
  auto cutoff = [&](int r) {
    size_t cut = 0;
    while (cut < src_ball.size() && g_norm(src_ball[cut]) <= r) ++cut;
    return cut;
  };

  DefectProfile prof;
  prof.kind = "Comm";
  ElemSet seen;
  for (int r = 1; r <= radius_max; ++r) {
    std::vector<Elem> candidates(
        graph.begin(), graph.begin() + static_cast<long>(cutoff(r + pad)));
    size_t probes = cutoff(r);
    long long row_max = 0;
    for (size_t i = 0; i < probes; ++i) {
      Elem target = g_op(g_op(conj, graph[i]), cinv);
      std::optional<Elem> f = best_witness(candidates, target);
      if (f) {
        row_max = std::max(row_max, g_norm(*f));
        seen.insert(*f);
      }
    }
    prof.rows.push_back({r, static_cast<long long>(seen.size()), row_max, true});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

}  // namespace coarsemaps
