#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coarsemaps/words.hpp"

using namespace coarsemaps;

namespace {

Word w(const std::string& s, int rank = 2) { return parse_word(s, rank); }

// Brute-force primitive root: try every candidate exponent directly.
std::pair<Word, int> root_oracle(const Word& word) {
  // Cancellation in conjugated powers (e.g. (bab^-1)^3) means the exponent
  // need not divide the length, so try every candidate word up to length n.
  int n = word.length();
  for (int e = n; e >= 2; --e) {
    for (const Word& cand : ball(word.rank(), n)) {
      if (cand.is_identity()) continue;
      Word acc = cand;
      for (int i = 1; i < e; ++i) acc = mul(acc, cand);
      if (acc == word) return {cand, e};
    }
  }
  return {word, 1};
}

}  // namespace

TEST_CASE("reduce") {
  CHECK(format_word(w("abB")) == "a");
  CHECK(format_word(w("aA")) == "");
  CHECK(format_word(w("abAB")) == "abAB");
  CHECK(w("abB") == w("a"));
  CHECK_THROWS_AS(parse_word("abc", 2), WordError);
  CHECK_THROWS_AS(reduce({0}, 2), WordError);
  CHECK_THROWS_AS(reduce({3}, 2), WordError);
}

TEST_CASE("mul and inv") {
  CHECK(format_word(mul(w("ab"), w("BA"))) == "");
  CHECK(format_word(mul(w("ab"), w("a"))) == "aba");
  CHECK(format_word(mul(w("aB"), w("ba"))) == "aa");
  CHECK(format_word(inv(w("ab"))) == "BA");
  CHECK(format_word(inv(w(""))) == "");
  CHECK(format_word(inv(w("aab"))) == "BAA");
  CHECK_THROWS_AS(mul(w("a", 2), w("a", 3)), WordError);
}

TEST_CASE("conj and commutator") {
  CHECK(format_word(conj(w("a"), w("b"))) == "Bab");
  CHECK(format_word(conj(w("a"), w(""))) == "a");
  CHECK(format_word(conj(w("ab"), w("ab"))) == "ab");
  CHECK(format_word(commutator(w("a"), w("b"))) == "ABab");
  CHECK(commutator(w("a"), w("aa")).is_identity());
  CHECK(commutator(w("ab"), w("")).is_identity());
}

TEST_CASE("commutes") {
  CHECK(commutes(w("a"), w("aa")));
  CHECK_FALSE(commutes(w("a"), w("b")));
  CHECK(commutes(w("ab"), w("abab")));
}

TEST_CASE("root basics") {
  auto [p1, e1] = root(w("abab"));
  CHECK(format_word(p1) == "ab");
  CHECK(e1 == 2);
  auto [p2, e2] = root(w("a"));
  CHECK(format_word(p2) == "a");
  CHECK(e2 == 1);
  auto [p3, e3] = root(w("Baba"));
  CHECK(format_word(p3) == "Baba");
  CHECK(e3 == 1);
  CHECK_THROWS_AS(root(w("")), WordError);
}

TEST_CASE("root soundness on ball(2,6)") {
  for (const Word& word : ball(2, 6)) {
    if (word.is_identity()) continue;
    auto [prim, exp] = root(word);
    Word acc = prim;
    for (int i = 1; i < exp; ++i) acc = mul(acc, prim);
    CHECK(acc == word);
    // No smaller-exponent factorization beyond what root reports: the
    // oracle must agree on the exponent.
    if (word.length() <= 6) {
      auto [oprim, oexp] = root_oracle(word);
      CHECK(exp == oexp);
    }
  }
}

TEST_CASE("ball sizes and order") {
  CHECK(ball(2, 0).size() == 1);
  CHECK(ball(2, 1).size() == 5);
  CHECK(ball(2, 3).size() == 53);
  CHECK(ball_size(2, 3) == 53);
  for (int r = 0; r <= 5; ++r) {
    CHECK(static_cast<long long>(ball(2, r).size()) == ball_size(2, r));
  }
  auto b = ball(2, 3);
  for (size_t i = 1; i < b.size(); ++i) {
    CHECK(shortlex_less(b[i - 1], b[i]));
  }
  // Nesting: ball(r) is a prefix of ball(r+1).
  auto b4 = ball(2, 4);
  for (size_t i = 0; i < b.size(); ++i) CHECK(b[i] == b4[i]);
}

TEST_CASE("group laws on small balls") {
  auto b3 = ball(2, 3);
  for (const Word& u : b3) {
    CHECK(mul(u, inv(u)).is_identity());
    CHECK(reduce(u.letters(), 2) == u);
  }
  auto b2 = ball(2, 2);
  for (const Word& u : b2)
    for (const Word& v : b2)
      for (const Word& x : b2) CHECK(mul(mul(u, v), x) == mul(u, mul(v, x)));
  for (const Word& u : ball(2, 3))
    for (const Word& v : ball(2, 3))
      CHECK(commutes(u, v) == commutator(u, v).is_identity());
}

TEST_CASE("norm under conjugation bound") {
  for (const Word& x : ball(2, 3))
    for (const Word& b : ball(2, 2))
      CHECK(conj(x, b).length() <= x.length() + 2 * b.length());
}
