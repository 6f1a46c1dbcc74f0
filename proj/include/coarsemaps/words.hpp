#pragma once

#include <string>
#include <utility>
#include <vector>

// Free-group word algebra on freely reduced words over a ranked alphabet.
// Letters are signed generator indices: +i is generator i, -i its inverse.
// The empty word is the identity.

namespace coarsemaps {

struct WordError : std::exception {
  std::string msg;
  explicit WordError(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

class Word {
 public:
  Word() = default;
  Word(std::vector<int> letters, int rank);  // reduces on construction

  int rank() const { return rank_; }
  const std::vector<int>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const Word& o) const { return !(*this == o); }

 private:
  std::vector<int> letters_;
  int rank_ = 0;
};

// Letter order used everywhere: 1 < -1 < 2 < -2 < ...
inline int letter_key(int letter) {
  int a = letter < 0 ? -letter : letter;
  return 2 * (a - 1) + (letter < 0 ? 1 : 0);
}

// Shortlex: by length, then letterwise in the order above.
bool shortlex_less(const Word& u, const Word& v);

Word reduce(std::vector<int> letters, int rank);
Word mul(const Word& u, const Word& v);
Word inv(const Word& w);
Word conj(const Word& x, const Word& b);        // b^-1 x b
Word commutator(const Word& a, const Word& b);  // a^-1 b^-1 a b
bool commutes(const Word& u, const Word& v);

// Primitive root: w = primitive^exponent with primitive not a proper power.
// Cyclically reduces first, then conjugates the root back.
std::pair<Word, int> root(const Word& w);

// All reduced words of length <= radius in shortlex order.
std::vector<Word> ball(int rank, int radius);

// Sphere/ball sizes: |sphere(r)| = 2k(2k-1)^(r-1) for rank k.
long long sphere_size(int rank, int radius);
long long ball_size(int rank, int radius);

// ASCII format: 'a' = 1, 'A' = -1, 'b' = 2, ... Empty string = identity.
Word parse_word(const std::string& text, int rank);
std::string format_word(const Word& w);

}  // namespace coarsemaps
