#include "coarsemaps/groups.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>

namespace coarsemaps {

namespace {

void validate_table(CayleyTable& t) {
  int n = t.order;
  if (n <= 0 || static_cast<int>(t.mul.size()) != n * n) {
    throw GroupError("table " + t.name + ": bad dimensions");
  }
  for (int v : t.mul) {
    if (v < 0 || v >= n) throw GroupError("table " + t.name + ": entry out of range");
  }
  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      ok = t.at(cand, a) == a && t.at(a, cand) == a;
    }
    if (ok) e = cand;
  }
  if (e < 0) throw GroupError("table " + t.name + ": no identity");
  t.identity = e;

  t.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (t.at(a, b) == e && t.at(b, a) == e) {
        t.inv[a] = b;
        break;
      }
    }
    if (t.inv[a] < 0) throw GroupError("table " + t.name + ": missing inverse");
  }

  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
            throw GroupError("table " + t.name + ": not associative");
  }

  if (t.generators.empty()) throw GroupError("table " + t.name + ": no generators");
  for (int g : t.generators) {
    if (g < 0 || g >= n) throw GroupError("table " + t.name + ": bad generator index");
    if (std::find(t.generators.begin(), t.generators.end(), t.inv[g]) ==
        t.generators.end()) {
      throw GroupError("table " + t.name + ": generator set not symmetric");
    }
  }

  // Geodesic norms by BFS; every element must be reachable.
  t.norms.assign(n, -1);
  t.norms[e] = 0;
  std::deque<int> queue{e};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int g : t.generators) {
      int y = t.at(x, g);
      if (t.norms[y] < 0) {
        t.norms[y] = t.norms[x] + 1;
        queue.push_back(y);
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (t.norms[a] < 0)
      throw GroupError("table " + t.name + ": generators do not generate");
  }
}

CayleyTable make_sym3() {
  // Permutations of {0,1,2} in lexicographic one-line order.
  std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2},
                                              {0, 2, 1},
                                              {1, 0, 2},
                                              {1, 2, 0},
                                              {2, 0, 1},
                                              {2, 1, 0}}};
  CayleyTable t;
  t.name = "sym3";
  t.order = 6;
  t.mul.assign(36, 0);
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw GroupError("sym3: internal");
  };
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t.mul[a * 6 + b] = find(c);
    }
  }
  t.generators = {1, 2};  // transpositions (1 2) and (0 1)
  validate_table(t);
  return t;
}

CayleyTable make_dih4() {
  // Elements r^i s^j with index i + 4j; s r = r^-1 s.
  CayleyTable t;
  t.name = "dih4";
  t.order = 8;
  t.mul.assign(64, 0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 2; ++l) {
          int rot = ((i + (j ? -k : k)) % 4 + 4) % 4;
          int ref = (j + l) % 2;
          t.mul[(i + 4 * j) * 8 + (k + 4 * l)] = rot + 4 * ref;
        }
      }
    }
  }
  t.generators = {1, 3, 4};  // r, r^3, s
  validate_table(t);
  return t;
}

CayleyTable make_quat8() {
  // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  auto idx = [](int sign, int basis) { return 2 * basis + (sign < 0 ? 1 : 0); };
  // basis products with signs: b1*b2 -> (sign, basis)
  static const int basis_mul[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}};
  CayleyTable t;
  t.name = "quat8";
  t.order = 8;
  t.mul.assign(64, 0);
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int sa = a % 2 ? -1 : 1, ba = a / 2;
      int sb = b % 2 ? -1 : 1, bb = b / 2;
      int sign = sa * sb * basis_mul[ba][bb][0];
      int basis = basis_mul[ba][bb][1];
      t.mul[a * 8 + b] = idx(sign, basis);
    }
  }
  t.generators = {2, 3, 4, 5};  // i, -i, j, -j
  validate_table(t);
  return t;
}

CayleyTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open table file " + path);
  CayleyTable t;
  t.name = path;
  if (!(in >> t.order)) throw GroupError("table file " + path + ": missing order");
  t.mul.resize(static_cast<size_t>(t.order) * t.order);
  for (auto& v : t.mul) {
    if (!(in >> v)) throw GroupError("table file " + path + ": truncated table");
  }
  int g;
  while (in >> g) t.generators.push_back(g);
  validate_table(t);
  return t;
}

// Integer order 0 < 1 < -1 < 2 < -2 < ...
bool int_canonical_less(long long a, long long b) {
  long long aa = std::llabs(a), ab = std::llabs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

}  // namespace

GroupPtr Group::free_group(int rank) {
  if (rank < 1) throw GroupError("free group rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Free;
  g->rank_ = rank;
  return g;
}

GroupPtr Group::integers() {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Z;
  return g;
}

GroupPtr Group::integer_lattice(int dim) {
  if (dim < 1) throw GroupError("lattice dimension must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::ZPow;
  g->dim_ = dim;
  return g;
}

GroupPtr Group::cyclic(long long modulus) {
  if (modulus < 1) throw GroupError("cyclic modulus must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Cyclic;
  g->modulus_ = modulus;
  return g;
}

GroupPtr Group::finite_table(CayleyTable table) {
  validate_table(table);
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->table_ = std::move(table);
  return g;
}

GroupPtr Group::sym3() {
  static const CayleyTable t = make_sym3();
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->table_ = t;
  return g;
}

GroupPtr Group::dih4() {
  static const CayleyTable t = make_dih4();
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->table_ = t;
  return g;
}

GroupPtr Group::quat8() {
  static const CayleyTable t = make_quat8();
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->table_ = t;
  return g;
}

GroupPtr Group::product(GroupPtr left, GroupPtr right) {
  if (!left || !right) throw GroupError("null factor in product");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Product;
  g->left_ = std::move(left);
  g->right_ = std::move(right);
  return g;
}

bool Group::same(const Group& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case GroupKind::Free:
      return rank_ == o.rank_;
    case GroupKind::Z:
      return true;
    case GroupKind::ZPow:
      return dim_ == o.dim_;
    case GroupKind::Cyclic:
      return modulus_ == o.modulus_;
    case GroupKind::FiniteTable:
      return table_->mul == o.table_->mul &&
             table_->generators == o.table_->generators;
    case GroupKind::Product:
      return left_->same(*o.left_) && right_->same(*o.right_);
  }
  return false;
}

std::string Group::spec_string() const {
  switch (kind_) {
    case GroupKind::Free:
      return "free:" + std::to_string(rank_);
    case GroupKind::Z:
      return "z";
    case GroupKind::ZPow:
      return "zpow:" + std::to_string(dim_);
    case GroupKind::Cyclic:
      return "cyc:" + std::to_string(modulus_);
    case GroupKind::FiniteTable:
      if (table_->name == "sym3" || table_->name == "dih4" ||
          table_->name == "quat8") {
        return table_->name;
      }
      return "table:" + table_->name;
    case GroupKind::Product:
      return "prod(" + left_->spec_string() + "," + right_->spec_string() + ")";
  }
  return "?";
}

namespace {

long long parse_count(const std::string& text, const std::string& spec) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw GroupError("bad group spec: " + spec);
  }
  if (pos != text.size()) throw GroupError("bad group spec: " + spec);
  return v;
}

}  // namespace

GroupPtr parse_group(const std::string& spec) {
  if (spec == "z") return Group::integers();
  if (spec == "sym3") return Group::sym3();
  if (spec == "dih4") return Group::dih4();
  if (spec == "quat8") return Group::quat8();
  if (spec.rfind("free:", 0) == 0)
    return Group::free_group(static_cast<int>(parse_count(spec.substr(5), spec)));
  if (spec.rfind("zpow:", 0) == 0)
    return Group::integer_lattice(static_cast<int>(parse_count(spec.substr(5), spec)));
  if (spec.rfind("cyc:", 0) == 0)
    return Group::cyclic(parse_count(spec.substr(4), spec));
  if (spec.rfind("table:", 0) == 0)
    return Group::finite_table(load_table_file(spec.substr(6)));
  if (spec.rfind("prod(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(5, spec.size() - 6);
    int depth = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
      char c = inner[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        return Group::product(parse_group(inner.substr(0, i)),
                              parse_group(inner.substr(i + 1)));
      }
    }
    throw GroupError("prod spec needs two factors: " + spec);
  }
  throw GroupError("unknown group spec: " + spec);
}

Elem::Elem(GroupPtr group, Payload payload)
    : group_(std::move(group)), payload_(std::move(payload)) {
  if (!group_) throw GroupError("element without a group");
  // Integer literals may arrive as either int or long long; normalize to
  // whichever alternative the group kind expects.
  if ((group_->kind() == GroupKind::Z || group_->kind() == GroupKind::Cyclic) &&
      std::holds_alternative<int>(payload_)) {
    payload_ = static_cast<long long>(std::get<int>(payload_));
  }
  if (group_->kind() == GroupKind::FiniteTable &&
      std::holds_alternative<long long>(payload_)) {
    payload_ = static_cast<int>(std::get<long long>(payload_));
  }
  bool ok = false;
  switch (group_->kind()) {
    case GroupKind::Free:
      ok = std::holds_alternative<Word>(payload_) &&
           std::get<Word>(payload_).rank() == group_->rank();
      break;
    case GroupKind::Z:
      ok = std::holds_alternative<long long>(payload_);
      break;
    case GroupKind::ZPow:
      ok = std::holds_alternative<std::vector<long long>>(payload_) &&
           static_cast<int>(std::get<std::vector<long long>>(payload_).size()) ==
               group_->dim();
      break;
    case GroupKind::Cyclic: {
      ok = std::holds_alternative<long long>(payload_);
      if (ok) {
        long long m = group_->modulus();
        long long& v = std::get<long long>(payload_);
        v = (v % m + m) % m;
      }
      break;
    }
    case GroupKind::FiniteTable:
      ok = std::holds_alternative<int>(payload_) &&
           std::get<int>(payload_) >= 0 &&
           std::get<int>(payload_) < group_->table().order;
      break;
    case GroupKind::Product: {
      ok = std::holds_alternative<std::vector<Elem>>(payload_) &&
           std::get<std::vector<Elem>>(payload_).size() == 2;
      if (ok) {
        const auto& p = std::get<std::vector<Elem>>(payload_);
        ok = p[0].group()->same(*group_->left()) &&
             p[1].group()->same(*group_->right());
      }
      break;
    }
  }
  if (!ok) throw GroupError("payload does not match group kind");
}

Elem g_id(const GroupPtr& g) {
  switch (g->kind()) {
    case GroupKind::Free:
      return Elem(g, Word({}, g->rank()));
    case GroupKind::Z:
    case GroupKind::Cyclic:
      return Elem(g, 0LL);
    case GroupKind::ZPow:
      return Elem(g, std::vector<long long>(g->dim(), 0));
    case GroupKind::FiniteTable:
      return Elem(g, g->table().identity);
    case GroupKind::Product: {
      std::vector<Elem> p{g_id(g->left()), g_id(g->right())};
      return Elem(g, std::move(p));
    }
  }
  throw GroupError("bad group kind");
}

static void require_same_group(const Elem& x, const Elem& y) {
  if (!x.group()->same(*y.group())) throw GroupError("group mismatch");
}

Elem g_op(const Elem& x, const Elem& y) {
  require_same_group(x, y);
  const GroupPtr& g = x.group();
  switch (g->kind()) {
    case GroupKind::Free:
      return Elem(g, mul(x.word(), y.word()));
    case GroupKind::Z:
      return Elem(g, x.integer() + y.integer());
    case GroupKind::Cyclic:
      return Elem(g, (x.integer() + y.integer()) % g->modulus());
    case GroupKind::ZPow: {
      std::vector<long long> v = x.vec();
      for (size_t i = 0; i < v.size(); ++i) v[i] += y.vec()[i];
      return Elem(g, std::move(v));
    }
    case GroupKind::FiniteTable:
      return Elem(g, g->table().at(x.index(), y.index()));
    case GroupKind::Product: {
      std::vector<Elem> p{g_op(x.first(), y.first()),
                          g_op(x.second(), y.second())};
      return Elem(g, std::move(p));
    }
  }
  throw GroupError("bad group kind");
}

Elem g_inv(const Elem& x) {
  const GroupPtr& g = x.group();
  switch (g->kind()) {
    case GroupKind::Free:
      return Elem(g, inv(x.word()));
    case GroupKind::Z:
      return Elem(g, -x.integer());
    case GroupKind::Cyclic:
      return Elem(g, (g->modulus() - x.integer()) % g->modulus());
    case GroupKind::ZPow: {
      std::vector<long long> v = x.vec();
      for (auto& c : v) c = -c;
      return Elem(g, std::move(v));
    }
    case GroupKind::FiniteTable:
      return Elem(g, g->table().inv[x.index()]);
    case GroupKind::Product: {
      std::vector<Elem> p{g_inv(x.first()), g_inv(x.second())};
      return Elem(g, std::move(p));
    }
  }
  throw GroupError("bad group kind");
}

bool g_eq(const Elem& x, const Elem& y) {
  require_same_group(x, y);
  switch (x.group()->kind()) {
    case GroupKind::Free:
      return x.word() == y.word();
    case GroupKind::Z:
    case GroupKind::Cyclic:
      return x.integer() == y.integer();
    case GroupKind::ZPow:
      return x.vec() == y.vec();
    case GroupKind::FiniteTable:
      return x.index() == y.index();
    case GroupKind::Product:
      return g_eq(x.first(), y.first()) && g_eq(x.second(), y.second());
  }
  return false;
}

long long g_norm(const Elem& x) {
  const GroupPtr& g = x.group();
  switch (g->kind()) {
    case GroupKind::Free:
      return x.word().length();
    case GroupKind::Z:
      return std::llabs(x.integer());
    case GroupKind::Cyclic: {
      long long n = x.integer();
      return std::min(n, g->modulus() - n);
    }
    case GroupKind::ZPow: {
      long long s = 0;
      for (long long c : x.vec()) s += std::llabs(c);
      return s;
    }
    case GroupKind::FiniteTable:
      return g->table().norms[x.index()];
    case GroupKind::Product:
      return g_norm(x.first()) + g_norm(x.second());
  }
  throw GroupError("bad group kind");
}

long long g_dist(const Elem& x, const Elem& y) {
  return g_norm(g_op(g_inv(x), y));
}

bool canonical_less(const Elem& x, const Elem& y) {
  switch (x.group()->kind()) {
    case GroupKind::Free:
      return shortlex_less(x.word(), y.word());
    case GroupKind::Z:
    case GroupKind::Cyclic:
      return int_canonical_less(x.integer(), y.integer());
    case GroupKind::ZPow: {
      const auto& a = x.vec();
      const auto& b = y.vec();
      for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return int_canonical_less(a[i], b[i]);
      }
      return false;
    }
    case GroupKind::FiniteTable:
      return x.index() < y.index();
    case GroupKind::Product:
      if (!g_eq(x.first(), y.first())) return canonical_less(x.first(), y.first());
      return canonical_less(x.second(), y.second());
  }
  return false;
}

static void lattice_points(int dim, int radius, std::vector<long long>& cur,
                           std::vector<std::vector<long long>>& out) {
  if (static_cast<int>(cur.size()) == dim) {
    out.push_back(cur);
    return;
  }
  for (long long v = -radius; v <= radius; ++v) {
    long long used = std::llabs(v);
    long long left = radius;
    for (long long c : cur) left -= std::llabs(c);
    if (used > left) continue;
    cur.push_back(v);
    lattice_points(dim, radius, cur, out);
    cur.pop_back();
  }
}

std::vector<Elem> g_ball(const GroupPtr& g, int radius) {
  if (radius < 0) throw GroupError("ball radius must be >= 0");
  std::vector<Elem> out;
  switch (g->kind()) {
    case GroupKind::Free: {
      for (auto& w : ball(g->rank(), radius)) out.emplace_back(g, std::move(w));
      return out;  // already (length, shortlex) ordered
    }
    case GroupKind::Z: {
      out.emplace_back(g, 0LL);
      for (long long n = 1; n <= radius; ++n) {
        out.emplace_back(g, n);
        out.emplace_back(g, -n);
      }
      return out;
    }
    case GroupKind::Cyclic: {
      for (long long n = 0; n < g->modulus(); ++n) {
        Elem e(g, n);
        if (g_norm(e) <= radius) out.push_back(std::move(e));
      }
      break;
    }
    case GroupKind::ZPow: {
      std::vector<std::vector<long long>> pts;
      std::vector<long long> cur;
      lattice_points(g->dim(), radius, cur, pts);
      for (auto& p : pts) out.emplace_back(g, std::move(p));
      break;
    }
    case GroupKind::FiniteTable: {
      for (int i = 0; i < g->table().order; ++i) {
        if (g->table().norms[i] <= radius) out.emplace_back(g, i);
      }
      break;
    }
    case GroupKind::Product: {
      auto lb = g_ball(g->left(), radius);
      for (const auto& l : lb) {
        int rem = radius - static_cast<int>(g_norm(l));
        for (const auto& r : g_ball(g->right(), rem)) {
          std::vector<Elem> p{l, r};
          out.emplace_back(g, std::move(p));
        }
      }
      break;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
    long long na = g_norm(a), nb = g_norm(b);
    if (na != nb) return na < nb;
    return canonical_less(a, b);
  });
  return out;
}

Elem parse_elem(const GroupPtr& g, const std::string& text) {
  switch (g->kind()) {
    case GroupKind::Free:
      return Elem(g, parse_word(text, g->rank()));
    case GroupKind::Z:
    case GroupKind::Cyclic: {
      size_t pos = 0;
      long long v = std::stoll(text, &pos);
      if (pos != text.size()) throw GroupError("bad integer literal: " + text);
      return Elem(g, v);
    }
    case GroupKind::ZPow: {
      std::string body = text;
      if (!body.empty() && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
      }
      std::vector<long long> v;
      std::stringstream ss(body);
      std::string part;
      while (std::getline(ss, part, ',')) v.push_back(std::stoll(part));
      return Elem(g, std::move(v));
    }
    case GroupKind::FiniteTable: {
      size_t pos = 0;
      int v = std::stoi(text, &pos);
      if (pos != text.size()) throw GroupError("bad table index: " + text);
      return Elem(g, v);
    }
    case GroupKind::Product: {
      if (text.size() < 3 || text.front() != '(' || text.back() != ')') {
        throw GroupError("product literal must be (<elem>|<elem>): " + text);
      }
      std::string inner = text.substr(1, text.size() - 2);
      int depth = 0;
      for (size_t i = 0; i < inner.size(); ++i) {
        char c = inner[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '|' && depth == 0) {
          std::vector<Elem> p{parse_elem(g->left(), inner.substr(0, i)),
                              parse_elem(g->right(), inner.substr(i + 1))};
          return Elem(g, std::move(p));
        }
      }
      throw GroupError("product literal missing '|': " + text);
    }
  }
  throw GroupError("bad group kind");
}

std::string encode_elem(const Elem& x) {
  switch (x.group()->kind()) {
    case GroupKind::Free:
      return format_word(x.word());
    case GroupKind::Z:
    case GroupKind::Cyclic:
      return std::to_string(x.integer());
    case GroupKind::ZPow: {
      std::string out;
      for (size_t i = 0; i < x.vec().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(x.vec()[i]);
      }
      return out;
    }
    case GroupKind::FiniteTable:
      return std::to_string(x.index());
    case GroupKind::Product:
      return "(" + encode_elem(x.first()) + "|" + encode_elem(x.second()) + ")";
  }
  return "?";
}

}  // namespace coarsemaps
