#include "coarsemaps/words.hpp"

#include <algorithm>
#include <cstdlib>

namespace coarsemaps {

namespace {

void check_letters(const std::vector<int>& letters, int rank) {
  for (int l : letters) {
    int a = std::abs(l);
    if (a == 0 || a > rank) {
      throw WordError("letter index " + std::to_string(l) +
                      " out of range for rank " + std::to_string(rank));
    }
  }
}

std::vector<int> reduce_letters(const std::vector<int>& letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

Word::Word(std::vector<int> letters, int rank) : rank_(rank) {
  check_letters(letters, rank);
  letters_ = reduce_letters(letters);
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.length() != v.length()) return u.length() < v.length();
  const auto& a = u.letters();
  const auto& b = v.letters();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  }
  return false;
}

Word reduce(std::vector<int> letters, int rank) {
  return Word(std::move(letters), rank);
}

Word mul(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw WordError("rank mismatch in mul");
  std::vector<int> cat = u.letters();
  cat.insert(cat.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(cat), u.rank());
}

Word inv(const Word& w) {
  std::vector<int> out(w.letters().rbegin(), w.letters().rend());
  for (int& l : out) l = -l;
  return Word(std::move(out), w.rank());
}

Word conj(const Word& x, const Word& b) {
  return mul(mul(inv(b), x), b);
}

Word commutator(const Word& a, const Word& b) {
  return mul(inv(a), conj(a, b));
}

bool commutes(const Word& u, const Word& v) {
  return mul(u, v) == mul(v, u);
}

std::pair<Word, int> root(const Word& w) {
  if (w.is_identity()) throw WordError("root of the identity is undefined");
  // Cyclic reduction: peel matching first/last letters, w = c^-1 w' c.
  std::vector<int> core = w.letters();
  std::vector<int> conj_tail;  // the c part, outermost first
  while (core.size() >= 2 && core.front() == -core.back()) {
    conj_tail.push_back(core.back());
    core.pop_back();
    core.erase(core.begin());
  }
  int n = static_cast<int>(core.size());
  int period = n;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = core[i] == core[i - d];
    if (ok) {
      period = d;
      break;
    }
  }
  Word prim(std::vector<int>(core.begin(), core.begin() + period), w.rank());
  std::reverse(conj_tail.begin(), conj_tail.end());
  Word c(conj_tail, w.rank());
  return {conj(prim, c), n / period};
}

std::vector<Word> ball(int rank, int radius) {
  std::vector<Word> out;
  out.emplace_back(std::vector<int>{}, rank);
  // Letters in rank order: 1, -1, 2, -2, ...
  std::vector<int> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      for (int l : alphabet) {
        const auto& base = out[i].letters();
        if (!base.empty() && base.back() == -l) continue;
        std::vector<int> next = base;
        next.push_back(l);
        out.emplace_back(std::move(next), rank);
      }
    }
    level_begin = level_end;
  }
  return out;
}

long long sphere_size(int rank, int radius) {
  if (radius == 0) return 1;
  long long s = 2LL * rank;
  for (int i = 1; i < radius; ++i) s *= 2LL * rank - 1;
  return s;
}

long long ball_size(int rank, int radius) {
  long long total = 0;
  for (int r = 0; r <= radius; ++r) total += sphere_size(rank, r);
  return total;
}

Word parse_word(const std::string& text, int rank) {
  std::vector<int> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    int l;
    if (ch >= 'a' && ch <= 'z') {
      l = ch - 'a' + 1;
    } else if (ch >= 'A' && ch <= 'Z') {
      l = -(ch - 'A' + 1);
    } else {
      throw WordError(std::string("bad word character '") + ch + "'");
    }
    if (std::abs(l) > rank) {
      throw WordError(std::string("letter '") + ch + "' beyond rank " +
                      std::to_string(rank));
    }
    letters.push_back(l);
  }
  return Word(std::move(letters), rank);
}

std::string format_word(const Word& w) {
  std::string out;
  out.reserve(w.letters().size());
  for (int l : w.letters()) {
    out += l > 0 ? static_cast<char>('a' + l - 1)
                 : static_cast<char>('A' - l - 1);
  }
  return out;
}

}  // namespace coarsemaps
