#include "coarsemaps/gmaps.hpp"

#include <algorithm>
#include <cctype>

namespace coarsemaps {

namespace {

// ---------- raw DSL parsing ----------

struct RawNode {
  std::string name;
  std::vector<std::string> args;
  bool has_braces = false;
};

size_t find_matching(const std::string& s, size_t open) {
  int depth = 0;
  for (size_t i = open; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') {
      if (--depth == 0) return i;
    }
  }
  throw MapError("unbalanced '{' at position " + std::to_string(open) +
                 " in map spec");
}

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

RawNode parse_raw(const std::string& text_in) {
  std::string text = trim(text_in);
  if (text.empty()) throw MapError("empty map spec");
  size_t brace = text.find('{');
  RawNode node;
  if (brace == std::string::npos) {
    node.name = text;
    return node;
  }
  node.name = trim(text.substr(0, brace));
  size_t close = find_matching(text, brace);
  if (trim(text.substr(close + 1)) != "") {
    throw MapError("trailing text after '}' at position " +
                   std::to_string(close + 1) + ": " + text);
  }
  node.has_braces = true;
  std::string body = text.substr(brace + 1, close - brace - 1);
  if (trim(body) != "") {
    for (auto& part : split_top(body)) node.args.push_back(trim(part));
  }
  return node;
}

// Drops a leading "name=" tag on element-position arguments (perturb{id,c=a}).
std::string strip_tag(const std::string& arg) {
  size_t eq = arg.find('=');
  if (eq == std::string::npos) return arg;
  for (size_t i = 0; i < eq; ++i) {
    if (!std::isalnum(static_cast<unsigned char>(arg[i])) && arg[i] != '_') {
      return arg;
    }
  }
  if (eq + 1 < arg.size() && arg[eq + 1] == '=') return arg;  // '==' is not a tag
  return arg.substr(eq + 1);
}

GroupPtr forced_source(const RawNode& n) {
  if (n.name == "floor_scale" || n.name == "monomial" ||
      n.name == "floor_quad" || n.name == "zquad") {
    return Group::integers();
  }
  if (n.name == "hom" && !n.args.empty() && n.args[0].rfind("1->", 0) == 0) {
    return Group::integers();
  }
  if ((n.name == "perturb" || n.name == "shift" || n.name == "unitalize") &&
      !n.args.empty()) {
    return forced_source(parse_raw(n.args[0]));
  }
  if (n.name == "compose" && n.args.size() == 2) {
    return forced_source(parse_raw(n.args[1]));
  }
  return nullptr;
}

GroupPtr forced_target(const RawNode& n) {
  if (n.name == "floor_scale" || n.name == "monomial" ||
      n.name == "floor_quad" || n.name == "brooks") {
    return Group::integers();
  }
  if ((n.name == "perturb" || n.name == "shift" || n.name == "unitalize") &&
      !n.args.empty()) {
    return forced_target(parse_raw(n.args[0]));
  }
  if (n.name == "compose" && n.args.size() == 2) {
    return forced_target(parse_raw(n.args[0]));
  }
  return nullptr;
}

GroupPtr resolve(const GroupPtr& given, const GroupPtr& forced,
                 const std::string& what) {
  if (given && forced && !given->same(*forced)) {
    throw MapError("type mismatch: " + what + " requires " +
                   forced->spec_string() + " but got " + given->spec_string());
  }
  if (given) return given;
  if (forced) return forced;
  throw MapError("cannot determine " + what + " group");
}

long long arg_int(const RawNode& n, size_t i) {
  if (i >= n.args.size()) {
    throw MapError(n.name + ": missing argument " + std::to_string(i + 1));
  }
  size_t pos = 0;
  std::string a = strip_tag(n.args[i]);
  long long v = std::stoll(a, &pos);
  if (pos != a.size()) throw MapError(n.name + ": bad integer '" + a + "'");
  return v;
}

MapSpecPtr bind_node(const RawNode& n, GroupPtr source, GroupPtr target);

MapSpecPtr bind_text(const std::string& text, GroupPtr source,
                     GroupPtr target) {
  return bind_node(parse_raw(text), std::move(source), std::move(target));
}

MapSpecPtr bind_node(const RawNode& n, GroupPtr source, GroupPtr target) {
  source = resolve(source, forced_source(n), "source of " + n.name);
  if (n.name == "id") {
    if (target && !target->same(*source)) {
      throw MapError("id requires equal source and target groups");
    }
    return MapSpec::identity(source);
  }
  if (n.name == "hom") {
    if (!target) throw MapError("hom: target group required");
    if (n.args.empty()) throw MapError("hom: needs generator images");
    std::vector<std::pair<int, Elem>> images;
    for (const auto& a : n.args) {
      size_t arrow = a.find("->");
      if (arrow == std::string::npos) {
        throw MapError("hom: entry '" + a + "' is not of the form g->w");
      }
      std::string key = trim(a.substr(0, arrow));
      std::string val = trim(a.substr(arrow + 2));
      int gen;
      if (source->kind() == GroupKind::Z) {
        if (key != "1") throw MapError("hom over z: key must be 1");
        gen = 1;
      } else if (source->kind() == GroupKind::Free) {
        if (key.size() != 1 || key[0] < 'a' || key[0] >= 'a' + source->rank()) {
          throw MapError("hom: bad generator key '" + key + "'");
        }
        gen = key[0] - 'a' + 1;
      } else {
        throw MapError("hom: source must be free or z");
      }
      images.emplace_back(gen, parse_elem(target, val));
    }
    return MapSpec::hom(source, target, std::move(images));
  }
  if (n.name == "const") {
    if (!target) throw MapError("const: target group required");
    std::string lit = n.args.empty() ? "" : strip_tag(n.args[0]);
    return MapSpec::constant(source, parse_elem(target, lit));
  }
  if (n.name == "brooks") {
    if (n.args.size() != 1) throw MapError("brooks: needs one pattern word");
    if (source->kind() != GroupKind::Free) {
      throw MapError("brooks: source must be free");
    }
    return MapSpec::brooks(source, parse_word(n.args[0], source->rank()));
  }
  if (n.name == "floor_scale") return MapSpec::floor_scale(arg_int(n, 0), arg_int(n, 1));
  if (n.name == "monomial") return MapSpec::monomial(arg_int(n, 0));
  if (n.name == "floor_quad") return MapSpec::floor_quad(arg_int(n, 0), arg_int(n, 1));
  if (n.name == "perturb" || n.name == "shift") {
    if (n.args.size() != 2) throw MapError(n.name + ": needs base and element");
    MapSpecPtr base = bind_text(n.args[0], source, target);
    std::string lit = strip_tag(n.args[1]);
    if (n.name == "perturb") {
      return MapSpec::perturb(base, parse_elem(base->target(), lit));
    }
    return MapSpec::shift(base, parse_elem(base->source(), lit));
  }
  if (n.name == "unitalize") {
    if (n.args.size() != 1) throw MapError("unitalize: needs a base map");
    return MapSpec::unitalize(bind_text(n.args[0], source, target));
  }
  if (n.name == "compose") {
    if (n.args.size() != 2) throw MapError("compose: needs outer and inner");
    RawNode outer_raw = parse_raw(n.args[0]);
    RawNode inner_raw = parse_raw(n.args[1]);
    GroupPtr mid = forced_target(inner_raw);
    if (!mid) mid = forced_source(outer_raw);
    if (!mid) {
      throw MapError("compose: cannot infer the intermediate group");
    }
    MapSpecPtr inner = bind_node(inner_raw, source, mid);
    MapSpecPtr outer = bind_node(outer_raw, inner->target(), target);
    return MapSpec::compose(outer, inner);
  }
  if (n.name == "zquad") {
    if (!target) throw MapError("zquad: target group required");
    if (n.args.size() != 2) throw MapError("zquad: needs seed values a,b");
    return MapSpec::zquad(target, parse_elem(target, strip_tag(n.args[0])),
                          parse_elem(target, strip_tag(n.args[1])));
  }
  if (n.name == "random") {
    if (!target) throw MapError("random: target group required");
    if (n.args.size() != 3) throw MapError("random: needs seed,domR,tgtR");
    return MapSpec::random_map(source, target,
                               static_cast<std::uint64_t>(arg_int(n, 0)),
                               static_cast<int>(arg_int(n, 1)),
                               static_cast<int>(arg_int(n, 2)));
  }
  throw MapError("unknown map family '" + n.name + "'");
}

Elem pow_elem(const Elem& base, long long n) {
  Elem acc = g_id(base.group());
  Elem b = n < 0 ? g_inv(base) : base;
  unsigned long long e = n < 0 ? -(unsigned long long)n : (unsigned long long)n;
  while (e) {
    if (e & 1) acc = g_op(acc, b);
    b = g_op(b, b);
    e >>= 1;
  }
  return acc;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long count_occurrences(const std::vector<int>& text,
                            const std::vector<int>& pat) {
  if (pat.empty() || pat.size() > text.size()) return 0;
  long long count = 0;
  for (size_t i = 0; i + pat.size() <= text.size(); ++i) {
    bool hit = true;
    for (size_t j = 0; j < pat.size() && hit; ++j) hit = text[i + j] == pat[j];
    if (hit) ++count;
  }
  return count;
}

}  // namespace

std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ index;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------- MapSpec constructors ----------

MapSpecPtr MapSpec::parse(const std::string& text, GroupPtr source,
                          GroupPtr target) {
  if (!source) throw MapError("parse: source group required");
  return bind_text(text, std::move(source), std::move(target));
}

MapSpecPtr MapSpec::hom(GroupPtr source, GroupPtr target,
                        std::vector<std::pair<int, Elem>> images) {
  if (source->kind() == GroupKind::Free) {
    for (int i = 1; i <= source->rank(); ++i) {
      bool found = false;
      for (auto& [k, v] : images) found |= k == i;
      if (!found) {
        throw MapError("hom: missing image for generator " + std::to_string(i));
      }
    }
  } else if (source->kind() != GroupKind::Z) {
    throw MapError("hom: source must be free or z");
  }
  for (auto& [k, v] : images) {
    if (!v.group()->same(*target)) throw MapError("hom: image group mismatch");
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Hom;
  s->source_ = std::move(source);
  s->target_ = std::move(target);
  s->hom_images_ = std::move(images);
  std::sort(s->hom_images_.begin(), s->hom_images_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

MapSpecPtr MapSpec::identity(GroupPtr g) {
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Id;
  s->source_ = g;
  s->target_ = g;
  return s;
}

MapSpecPtr MapSpec::constant(GroupPtr source, Elem c) {
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Const;
  s->source_ = std::move(source);
  s->target_ = c.group();
  s->elem_a_ = std::move(c);
  return s;
}

MapSpecPtr MapSpec::brooks(GroupPtr source, Word pattern) {
  if (source->kind() != GroupKind::Free) {
    throw MapError("brooks: source must be free");
  }
  if (pattern.is_identity()) throw MapError("brooks: empty pattern");
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Brooks;
  s->source_ = std::move(source);
  s->target_ = Group::integers();
  s->pattern_ = std::move(pattern);
  return s;
}

MapSpecPtr MapSpec::floor_scale(long long p, long long q) {
  if (q <= 0) throw MapError("floor_scale: q must be positive");
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::FloorScale;
  s->source_ = Group::integers();
  s->target_ = Group::integers();
  s->p_ = p;
  s->q_ = q;
  return s;
}

MapSpecPtr MapSpec::monomial(long long d) {
  if (d < 0) throw MapError("monomial: degree must be >= 0");
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Monomial;
  s->source_ = Group::integers();
  s->target_ = Group::integers();
  s->d_ = d;
  return s;
}

MapSpecPtr MapSpec::floor_quad(long long p, long long q) {
  if (q <= 0) throw MapError("floor_quad: q must be positive");
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::FloorQuad;
  s->source_ = Group::integers();
  s->target_ = Group::integers();
  s->p_ = p;
  s->q_ = q;
  return s;
}

MapSpecPtr MapSpec::perturb(MapSpecPtr base, Elem c) {
  if (!c.group()->same(*base->target())) {
    throw MapError("perturb: constant not in the target group");
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Perturb;
  s->source_ = base->source();
  s->target_ = base->target();
  s->inner_ = std::move(base);
  s->elem_a_ = std::move(c);
  return s;
}

MapSpecPtr MapSpec::shift(MapSpecPtr base, Elem a) {
  if (!a.group()->same(*base->source())) {
    throw MapError("shift: shift element not in the source group");
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Shift;
  s->source_ = base->source();
  s->target_ = base->target();
  s->inner_ = std::move(base);
  s->elem_a_ = std::move(a);
  return s;
}

MapSpecPtr MapSpec::unitalize(MapSpecPtr base) {
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Unitalize;
  s->source_ = base->source();
  s->target_ = base->target();
  s->inner_ = std::move(base);
  return s;
}

MapSpecPtr MapSpec::compose(MapSpecPtr outer, MapSpecPtr inner) {
  if (!inner->target()->same(*outer->source())) {
    throw MapError("compose: inner target " + inner->target()->spec_string() +
                   " does not match outer source " +
                   outer->source()->spec_string());
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Compose;
  s->source_ = inner->source();
  s->target_ = outer->target();
  s->inner_ = std::move(inner);
  s->outer_ = std::move(outer);
  return s;
}

MapSpecPtr MapSpec::zquad(GroupPtr target, Elem a, Elem b) {
  if (!a.group()->same(*target) || !b.group()->same(*target)) {
    throw MapError("zquad: seed values must lie in the target group");
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::ZQuad;
  s->source_ = Group::integers();
  s->target_ = std::move(target);
  s->elem_a_ = std::move(a);
  s->elem_b_ = std::move(b);
  return s;
}

MapSpecPtr MapSpec::random_map(GroupPtr source, GroupPtr target,
                               std::uint64_t seed, int dom_radius,
                               int tgt_radius) {
  if (dom_radius < 0 || tgt_radius < 0) {
    throw MapError("random: radii must be >= 0");
  }
  auto s = std::shared_ptr<MapSpec>(new MapSpec());
  s->family_ = MapFamily::Random;
  s->source_ = std::move(source);
  s->target_ = std::move(target);
  s->seed_ = seed;
  s->dom_radius_ = dom_radius;
  s->tgt_radius_ = tgt_radius;
  return s;
}

std::string MapSpec::print() const {
  switch (family_) {
    case MapFamily::Id:
      return "id";
    case MapFamily::Hom: {
      std::string out = "hom{";
      for (size_t i = 0; i < hom_images_.size(); ++i) {
        if (i) out += ',';
        if (source_->kind() == GroupKind::Z) {
          out += "1->";
        } else {
          out += static_cast<char>('a' + hom_images_[i].first - 1);
          out += "->";
        }
        out += encode_elem(hom_images_[i].second);
      }
      return out + "}";
    }
    case MapFamily::Const:
      return "const{" + encode_elem(*elem_a_) + "}";
    case MapFamily::Brooks:
      return "brooks{" + format_word(*pattern_) + "}";
    case MapFamily::FloorScale:
      return "floor_scale{" + std::to_string(p_) + "," + std::to_string(q_) + "}";
    case MapFamily::Monomial:
      return "monomial{" + std::to_string(d_) + "}";
    case MapFamily::FloorQuad:
      return "floor_quad{" + std::to_string(p_) + "," + std::to_string(q_) + "}";
    case MapFamily::Perturb:
      return "perturb{" + inner_->print() + "," + encode_elem(*elem_a_) + "}";
    case MapFamily::Shift:
      return "shift{" + inner_->print() + "," + encode_elem(*elem_a_) + "}";
    case MapFamily::Unitalize:
      return "unitalize{" + inner_->print() + "}";
    case MapFamily::Compose:
      return "compose{" + outer_->print() + "," + inner_->print() + "}";
    case MapFamily::ZQuad:
      return "zquad{" + encode_elem(*elem_a_) + "," + encode_elem(*elem_b_) + "}";
    case MapFamily::Random:
      return "random{" + std::to_string(seed_) + "," +
             std::to_string(dom_radius_) + "," + std::to_string(tgt_radius_) +
             "}";
  }
  return "?";
}

// ---------- GroupMap ----------

GroupMap::GroupMap(MapSpecPtr spec) : spec_(std::move(spec)) {
  if (spec_->inner()) inner_map_ = std::make_unique<GroupMap>(spec_->inner());
  if (spec_->outer()) outer_map_ = std::make_unique<GroupMap>(spec_->outer());
}

Elem GroupMap::operator()(const Elem& g) const {
  std::string key = encode_elem(g);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Elem value = eval_raw(g);
  cache_.emplace(std::move(key), value);
  return value;
}

Elem GroupMap::eval_uncached(const Elem& g) const { return eval_raw(g); }

bool GroupMap::is_unital() const {
  return g_eq((*this)(g_id(source())), g_id(target()));
}

Elem GroupMap::eval_raw(const Elem& g) const {
  if (!g.group()->same(*source())) {
    throw MapError("eval: element not in the source group");
  }
  const MapSpec& s = *spec_;
  switch (s.family()) {
    case MapFamily::Id:
      return g;
    case MapFamily::Const:
      return s.elem_a();
    case MapFamily::Hom: {
      if (source()->kind() == GroupKind::Z) {
        return pow_elem(s.hom_images()[0].second, g.integer());
      }
      Elem acc = g_id(target());
      for (int l : g.word().letters()) {
        int gen = l > 0 ? l : -l;
        const Elem* img = nullptr;
        for (auto& [k, v] : s.hom_images()) {
          if (k == gen) img = &v;
        }
        acc = g_op(acc, l > 0 ? *img : g_inv(*img));
      }
      return acc;
    }
    case MapFamily::Brooks: {
      const auto& text = g.word().letters();
      const auto& pat = s.pattern().letters();
      const auto ipat = inv(s.pattern()).letters();
      long long v = count_occurrences(text, pat) - count_occurrences(text, ipat);
      return Elem(target(), v);
    }
    case MapFamily::FloorScale:
      return Elem(target(), floor_div(s.p() * g.integer(), s.q()));
    case MapFamily::Monomial: {
      long long v = 1;
      for (long long i = 0; i < s.degree(); ++i) v *= g.integer();
      return Elem(target(), v);
    }
    case MapFamily::FloorQuad:
      return Elem(target(), floor_div(s.p() * g.integer() * g.integer(), s.q()));
    case MapFamily::Perturb:
      return g_op((*inner_map_)(g), s.elem_a());
    case MapFamily::Shift:
      return (*inner_map_)(g_op(g, s.elem_a()));
    case MapFamily::Unitalize: {
      Elem at_one = (*inner_map_)(g_id(source()));
      return g_op((*inner_map_)(g), g_inv(at_one));
    }
    case MapFamily::Compose:
      return (*outer_map_)((*inner_map_)(g));
    case MapFamily::ZQuad: {
      if (zq_fwd_.empty()) {
        zq_fwd_ = {g_id(target()), s.elem_a(), s.elem_b()};
        zq_bwd_ = {g_id(target())};
      }
      const Elem& a = s.elem_a();
      const Elem& b = s.elem_b();
      long long n = g.integer();
      if (n >= 0) {
        // phi(n+1) = phi(n) a^-1 phi(n-1)^-1 phi(n) a^-1 b
        while (static_cast<long long>(zq_fwd_.size()) <= n) {
          const Elem& cur = zq_fwd_[zq_fwd_.size() - 1];
          const Elem& prev = zq_fwd_[zq_fwd_.size() - 2];
          Elem next = g_op(
              g_op(g_op(g_op(g_op(cur, g_inv(a)), g_inv(prev)), cur), g_inv(a)),
              b);
          zq_fwd_.push_back(std::move(next));
        }
        return zq_fwd_[static_cast<size_t>(n)];
      }
      // phi(n-1) = phi(n) a^-1 b phi(n+1)^-1 phi(n) a^-1
      while (static_cast<long long>(zq_bwd_.size()) <= -n) {
        size_t k = zq_bwd_.size();  // building phi(-k)
        const Elem& cur = zq_bwd_[k - 1];                      // phi(-(k-1))
        const Elem& next = k >= 2 ? zq_bwd_[k - 2] : zq_fwd_[1];  // phi(-(k-2))
        Elem prev = g_op(
            g_op(g_op(g_op(g_op(cur, g_inv(a)), b), g_inv(next)), cur),
            g_inv(a));
        zq_bwd_.push_back(std::move(prev));
      }
      return zq_bwd_[static_cast<size_t>(-n)];
    }
    case MapFamily::Random: {
      if (!random_ready_) {
        auto dom = g_ball(source(), s.dom_radius());
        for (std::uint64_t i = 0; i < dom.size(); ++i) {
          dom_index_.emplace(encode_elem(dom[i]), i);
        }
        tgt_ball_ = g_ball(target(), s.tgt_radius());
        random_ready_ = true;
      }
      if (g_eq(g, g_id(source()))) return g_id(target());
      auto it = dom_index_.find(encode_elem(g));
      if (it == dom_index_.end()) return g_id(target());
      std::uint64_t pick = mix64(s.seed(), it->second) % tgt_ball_.size();
      return tgt_ball_[pick];
    }
  }
  throw MapError("bad map family");
}

}  // namespace coarsemaps
