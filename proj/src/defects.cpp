#include "coarsemaps/defects.hpp"

#include <algorithm>

namespace coarsemaps {

bool ElemSet::insert(const Elem& e) {
  auto [it, fresh] = keys_.insert(encode_elem(e));
  if (fresh) items_.push_back(e);
  return fresh;
}

bool ElemSet::contains(const Elem& e) const {
  return keys_.count(encode_elem(e)) != 0;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Plateau:
      return "Plateau";
    case Classification::Growing:
      return "Growing";
    case Classification::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(DefectKind k) {
  switch (k) {
    case DefectKind::D:
      return "D";
    case DefectKind::Dstar:
      return "Dstar";
    case DefectKind::M:
      return "M";
    case DefectKind::A:
      return "A";
  }
  return "?";
}

Classification classify(const std::vector<ProfileRow>& rows, int window) {
  if (window < 2 || static_cast<int>(rows.size()) < window) {
    return Classification::Inconclusive;
  }
  size_t begin = rows.size() - static_cast<size_t>(window);
  bool flat = true, strict = true;
  for (size_t i = begin + 1; i < rows.size(); ++i) {
    if (rows[i].max_norm != rows[i - 1].max_norm) flat = false;
    if (rows[i].max_norm <= rows[i - 1].max_norm) strict = false;
  }
  if (flat) return Classification::Plateau;
  if (strict) return Classification::Growing;
  return Classification::Inconclusive;
}

Elem defect_D_at(const GroupMap& phi, const Elem& x, const Elem& y) {
  return g_op(g_op(g_inv(phi(y)), g_inv(phi(x))), phi(g_op(x, y)));
}

Elem defect_M_at(const GroupMap& phi, const Elem& x, const Elem& y) {
  return g_op(g_op(g_inv(phi(x)), phi(g_op(x, y))), g_inv(phi(y)));
}

static Elem defect_Dstar_at(const GroupMap& phi, const Elem& x, const Elem& y) {
  return g_op(g_op(phi(x), phi(y)), g_inv(phi(g_op(x, y))));
}

namespace {

template <typename Fn>
std::vector<Elem> pair_set(const GroupMap& phi, int radius, Fn&& defect) {
  ElemSet out;
  auto b = g_ball(phi.source(), radius);
  for (const Elem& x : b)
    for (const Elem& y : b) out.insert(defect(x, y));
  return out.items();
}

}  // namespace

std::vector<Elem> set_D(const GroupMap& phi, int radius) {
  return pair_set(phi, radius,
                  [&](const Elem& x, const Elem& y) { return defect_D_at(phi, x, y); });
}

std::vector<Elem> set_Dstar(const GroupMap& phi, int radius) {
  return pair_set(phi, radius, [&](const Elem& x, const Elem& y) {
    return defect_Dstar_at(phi, x, y);
  });
}

std::vector<Elem> set_M(const GroupMap& phi, int radius) {
  return pair_set(phi, radius,
                  [&](const Elem& x, const Elem& y) { return defect_M_at(phi, x, y); });
}

Quadruple Quadruple::from_triple(const Elem& x1, const Elem& x2,
                                 const Elem& x3) {
  return Quadruple{x1, x2, x3, g_op(g_op(x1, g_inv(x2)), x3)};
}

bool Quadruple::valid() const {
  Elem rel = g_op(g_op(g_op(x1, g_inv(x2)), x3), g_inv(x4));
  return g_eq(rel, g_id(x1.group()));
}

Quadruple Quadruple::translated(const Elem& t) const {
  return Quadruple{g_op(x1, t), g_op(x2, t), g_op(x3, t), g_op(x4, t)};
}

Quadruple Quadruple::opposite() const { return Quadruple{x4, x3, x2, x1}; }

Elem mu(const GroupMap& phi, const Quadruple& q) {
  if (!q.valid()) throw MapError("mu: quadruple is not multiplicative");
  return g_op(g_op(g_op(phi(q.x1), g_inv(phi(q.x2))), phi(q.x3)),
              g_inv(phi(q.x4)));
}

namespace {

Elem mu_of_triple(const GroupMap& phi, const Elem& x1, const Elem& x2,
                  const Elem& x3) {
  Elem x4 = g_op(g_op(x1, g_inv(x2)), x3);
  return g_op(g_op(g_op(phi(x1), g_inv(phi(x2))), phi(x3)), g_inv(phi(x4)));
}

}  // namespace

SetResult set_A(const GroupMap& phi, int radius, long long budget,
                std::uint64_t seed) {
  SetResult res;
  ElemSet out;
  auto b = g_ball(phi.source(), radius);
  long long n = static_cast<long long>(b.size());
  if (n * n * n <= budget) {
    for (const Elem& x1 : b)
      for (const Elem& x2 : b)
        for (const Elem& x3 : b) out.insert(mu_of_triple(phi, x1, x2, x3));
    res.exact = true;
  } else {
    std::uint64_t counter = 0;
    for (long long t = 0; t < budget; ++t) {
      const Elem& x1 = b[mix64(seed, counter++) % b.size()];
      const Elem& x2 = b[mix64(seed, counter++) % b.size()];
      const Elem& x3 = b[mix64(seed, counter++) % b.size()];
      out.insert(mu_of_triple(phi, x1, x2, x3));
    }
    res.exact = false;
  }
  res.items = out.items();
  return res;
}

DefectProfile equiv_defect(const GroupMap& phi, int radius, int window,
                           long long budget, std::uint64_t seed) {
  DefectProfile prof;
  prof.kind = "Equiv";
  ElemSet seen;  // cumulative across radii, so rows stay monotone
  long long max_norm = 0;
  for (int r = 1; r <= radius; ++r) {
    auto b = g_ball(phi.source(), r);
    long long n = static_cast<long long>(b.size());
    bool exact = n * n * n * n <= budget;
    auto record = [&](const Elem& x1, const Elem& x2, const Elem& x3,
                      const Elem& t) {
      Quadruple q = Quadruple::from_triple(x1, x2, x3);
      Elem e = g_op(g_inv(mu(phi, q.translated(t))), mu(phi, q));
      if (seen.insert(e)) max_norm = std::max(max_norm, g_norm(e));
    };
    if (exact) {
      for (const Elem& x1 : b)
        for (const Elem& x2 : b)
          for (const Elem& x3 : b)
            for (const Elem& t : b) record(x1, x2, x3, t);
    } else {
      std::uint64_t counter = static_cast<std::uint64_t>(r) << 32;
      for (long long i = 0; i < budget; ++i) {
        record(b[mix64(seed, counter++) % b.size()],
               b[mix64(seed, counter++) % b.size()],
               b[mix64(seed, counter++) % b.size()],
               b[mix64(seed, counter++) % b.size()]);
      }
    }
    prof.rows.push_back(
        {r, static_cast<long long>(seen.size()), max_norm, exact});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

DefectProfile profile(DefectKind kind, const GroupMap& phi, int radius_max,
                      int window, long long budget, std::uint64_t seed) {
  DefectProfile prof;
  prof.kind = to_string(kind);
  auto defect_at = [&](const Elem& x, const Elem& y) {
    switch (kind) {
      case DefectKind::D:
        return defect_D_at(phi, x, y);
      case DefectKind::Dstar:
        return defect_Dstar_at(phi, x, y);
      default:
        return defect_M_at(phi, x, y);
    }
  };
  ElemSet seen;
  long long max_norm = 0;
  for (int r = 1; r <= radius_max; ++r) {
    auto b = g_ball(phi.source(), r);
    long long n = static_cast<long long>(b.size());
    bool exact;
    auto note = [&](const Elem& e) {
      if (seen.insert(e)) max_norm = std::max(max_norm, g_norm(e));
    };
    if (kind == DefectKind::A) {
      SetResult a = set_A(phi, r, budget, seed);
      exact = a.exact;
      for (const Elem& e : a.items) note(e);
    } else if (n * n <= budget) {
      exact = true;
      for (const Elem& x : b)
        for (const Elem& y : b) note(defect_at(x, y));
    } else {
      exact = false;
      std::uint64_t counter = static_cast<std::uint64_t>(r) << 32;
      for (long long i = 0; i < budget; ++i) {
        note(defect_at(b[mix64(seed, counter++) % b.size()],
                       b[mix64(seed, counter++) % b.size()]));
      }
    }
    prof.rows.push_back(
        {r, static_cast<long long>(seen.size()), max_norm, exact});
  }
  prof.classification = classify(prof.rows, window);
  return prof;
}

}  // namespace coarsemaps
