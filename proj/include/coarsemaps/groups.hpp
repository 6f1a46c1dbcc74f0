#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coarsemaps/words.hpp"

// Uniform group abstraction over the supported computable families, with
// left-invariant word metrics and deterministic ball enumeration.

namespace coarsemaps {

struct GroupError : std::exception {
  std::string msg;
  explicit GroupError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

enum class GroupKind { Free, Z, ZPow, Cyclic, FiniteTable, Product };

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Explicit Cayley table with a symmetric generating set. Norms are geodesic
// distances from the identity over the generating set, computed by BFS.
struct CayleyTable {
  std::string name;  // "sym3", "dih4", "quat8", or a file path
  int order = 0;
  std::vector<int> mul;  // order x order, row-major
  std::vector<int> inv;
  std::vector<int> generators;
  std::vector<int> norms;
  int identity = 0;

  int at(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
};

class Group {
 public:
  static GroupPtr free_group(int rank);
  static GroupPtr integers();
  static GroupPtr integer_lattice(int dim);
  static GroupPtr cyclic(long long modulus);
  // Validates the table: identity row/column, associativity (all triples for
  // order <= 64), symmetric generating set that reaches every element.
  static GroupPtr finite_table(CayleyTable table);
  static GroupPtr sym3();
  static GroupPtr dih4();
  static GroupPtr quat8();
  static GroupPtr product(GroupPtr left, GroupPtr right);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  long long modulus() const { return modulus_; }
  const CayleyTable& table() const { return *table_; }
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }

  bool same(const Group& other) const;

  // CLI spec string: free:2, z, zpow:3, cyc:6, sym3, dih4, quat8,
  // table:<file>, prod(<spec>,<spec>).
  std::string spec_string() const;

 private:
  Group() = default;
  GroupKind kind_ = GroupKind::Z;
  int rank_ = 0;
  int dim_ = 0;
  long long modulus_ = 0;
  std::optional<CayleyTable> table_;
  GroupPtr left_, right_;
};

GroupPtr parse_group(const std::string& spec);

class Elem {
 public:
  using Payload =
      std::variant<Word, long long, std::vector<long long>, int,
                   std::vector<Elem>>;  // vector<Elem> has exactly 2 entries

  Elem() = default;
  Elem(GroupPtr group, Payload payload);

  const GroupPtr& group() const { return group_; }
  const Payload& payload() const { return payload_; }

  const Word& word() const { return std::get<Word>(payload_); }
  long long integer() const { return std::get<long long>(payload_); }
  const std::vector<long long>& vec() const {
    return std::get<std::vector<long long>>(payload_);
  }
  int index() const { return std::get<int>(payload_); }
  const Elem& first() const { return std::get<std::vector<Elem>>(payload_)[0]; }
  const Elem& second() const {
    return std::get<std::vector<Elem>>(payload_)[1];
  }

 private:
  GroupPtr group_;
  Payload payload_;
};

Elem g_id(const GroupPtr& g);
Elem g_op(const Elem& x, const Elem& y);
Elem g_inv(const Elem& x);
bool g_eq(const Elem& x, const Elem& y);
long long g_norm(const Elem& x);
long long g_dist(const Elem& x, const Elem& y);

// Deterministic order: by norm, then canonical encoding
// (words shortlex, integers 0 < 1 < -1 < 2 < -2, vectors/pairs lexicographic,
// table elements by index).
bool canonical_less(const Elem& x, const Elem& y);

// All elements of norm <= radius, sorted by (norm, canonical order).
// Prefix-closed: g_ball(G, r) is a prefix of g_ball(G, r+1).
std::vector<Elem> g_ball(const GroupPtr& g, int radius);

// Element literals: words in ASCII, integers decimal, vectors
// comma-separated (optionally parenthesized), table indices decimal,
// products (<elem>|<elem>).
Elem parse_elem(const GroupPtr& g, const std::string& text);
std::string encode_elem(const Elem& x);  // round-trips through parse_elem

}  // namespace coarsemaps
