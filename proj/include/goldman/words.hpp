#pragma once

// Free-group words and cyclic words (conjugacy classes) with canonical forms.
//
// Letters are encoded as 2*index + inverted, which makes the canonical total
// order a < A < b < B < ... coincide with integer order on the code.

#include <algorithm>
#include <iterator>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "goldman/errors.hpp"

namespace goldman {

inline constexpr int kMaxTextRank = 26;

struct Letter {
  std::uint16_t code = 0;

  static constexpr Letter generator(int index, bool inverted = false) {
    return Letter{static_cast<std::uint16_t>(2 * index + (inverted ? 1 : 0))};
  }

  /// 0-based generator index.
  constexpr int index() const { return code >> 1; }
  constexpr bool inverted() const { return (code & 1U) != 0; }
  constexpr Letter inverse() const {
    return Letter{static_cast<std::uint16_t>(code ^ 1U)};
  }

  friend constexpr auto operator<=>(Letter, Letter) = default;
};

using Word = std::vector<Letter>;

inline char to_char(Letter l) {
  const char base = l.inverted() ? 'A' : 'a';
  return static_cast<char>(base + l.index());
}

inline std::optional<Letter> letter_from_char(char c) {
  if (c >= 'a' && c <= 'z') return Letter::generator(c - 'a', false);
  if (c >= 'A' && c <= 'Z') return Letter::generator(c - 'A', true);
  return std::nullopt;
}

/// Parses the lowercase/uppercase word syntax. "1" and "" denote the empty
/// word. Letters beyond `rank` are rejected.
inline Word parse_word(std::string_view text, int rank = kMaxTextRank) {
  Word w;
  if (text == "1") return w;
  w.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    auto l = letter_from_char(text[k]);
    if (!l) {
      throw ParseError("unexpected character '" + std::string(1, text[k]) +
                           "' in word",
                       0, k + 1);
    }
    if (l->index() >= rank) {
      throw ParseError("generator '" + std::string(1, text[k]) +
                           "' exceeds rank " + std::to_string(rank),
                       0, k + 1);
    }
    w.push_back(*l);
  }
  return w;
}

inline std::string to_string(std::span<const Letter> w) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(to_char(l));
  return out;
}

inline Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

/// Free reduction: cancels adjacent letter/inverse pairs until none remain.
inline Word reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline bool is_reduced(std::span<const Letter> w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] == w[k - 1].inverse()) return false;
  }
  return true;
}

inline bool is_cyclically_reduced(std::span<const Letter> w) {
  return is_reduced(w) && (w.size() < 2 || w.front() != w.back().inverse());
}

template <typename... Words>
Word concat_words(const Words&... parts) {
  Word out;
  (out.insert(out.end(), std::begin(parts), std::end(parts)), ...);
  return out;
}

/// Product of two words, freely reduced.
inline Word multiply(std::span<const Letter> u, std::span<const Letter> v) {
  Word w(u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return reduce(w);
}

inline Word power(std::span<const Letter> w, int k) {
  Word base = k < 0 ? inverse(w) : Word(w.begin(), w.end());
  Word out;
  for (int n = 0; n < (k < 0 ? -k : k); ++n) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return reduce(out);
}

/// Reduces, then cancels first-against-last until stable.
inline Word cyclically_reduce(std::span<const Letter> w) {
  Word r = reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

/// Start index of the lexicographically least rotation (two-pointer scan).
inline std::size_t least_rotation(std::span<const Letter> w) {
  const std::size_t n = w.size();
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < n && j < n && k < n) {
    const Letter a = w[(i + k) % n];
    const Letter b = w[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

inline Word rotate(std::span<const Letter> w, std::size_t start) {
  Word out;
  out.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.push_back(w[(start + k) % w.size()]);
  }
  return out;
}

/// Conjugacy class in a free group, stored as its canonical cyclic word:
/// cyclically reduced and rotated to the least rotation. The empty word is
/// the trivial class.
class CyclicClass {
 public:
  CyclicClass() = default;

  static CyclicClass of(std::span<const Letter> w) {
    Word r = cyclically_reduce(w);
    CyclicClass c;
    c.word_ = rotate(r, r.empty() ? 0 : least_rotation(r));
    return c;
  }

  static CyclicClass parse(std::string_view text, int rank = kMaxTextRank) {
    return of(parse_word(text, rank));
  }

  const Word& word() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }
  bool trivial() const noexcept { return word_.empty(); }
  Letter operator[](std::size_t k) const { return word_[k]; }

  /// Word read starting at position `start` (a based representative).
  Word rotation(std::size_t start) const { return rotate(word_, start); }

  std::string str() const { return to_string(word_); }

  /// Shortlex: shorter classes first, then lexicographic in letter order.
  friend std::strong_ordering operator<=>(const CyclicClass& x,
                                          const CyclicClass& y) {
    if (auto c = x.word_.size() <=> y.word_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(
        x.word_.begin(), x.word_.end(), y.word_.begin(), y.word_.end());
  }
  friend bool operator==(const CyclicClass&, const CyclicClass&) = default;

 private:
  Word word_;
};

inline CyclicClass canonical_cyclic(std::span<const Letter> w) {
  return CyclicClass::of(w);
}

inline CyclicClass inverse(const CyclicClass& x) {
  return CyclicClass::of(inverse(x.word()));
}

inline CyclicClass power(const CyclicClass& x, int k) {
  return CyclicClass::of(power(x.word(), k));
}

struct PrimitiveRoot {
  CyclicClass root;
  int exponent = 1;
};

/// x = root^exponent with root not a proper power.
inline PrimitiveRoot primitive_root(const CyclicClass& x) {
  if (x.trivial()) {
    throw PreconditionError("primitive_root: trivial class has no root");
  }
  const Word& w = x.word();
  const std::size_t n = w.size();
  // KMP failure function; the smallest period of the cyclic word is
  // n - border when it divides n.
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t b = fail[k];
    while (b > 0 && w[k] != w[b]) b = fail[b];
    if (w[k] == w[b]) ++b;
    fail[k + 1] = b;
  }
  std::size_t period = n - fail[n];
  if (n % period != 0) period = n;
  // The least rotation of r^k is (least rotation of r)^k, so the prefix is
  // already canonical.
  PrimitiveRoot out;
  out.root = CyclicClass::of(std::span<const Letter>(w.data(), period));
  out.exponent = static_cast<int>(n / period);
  return out;
}

inline bool is_primitive(const CyclicClass& x) {
  return !x.trivial() && primitive_root(x).exponent == 1;
}

/// True when x and y are non-trivial powers of a common root, up to inversion.
inline bool share_root(const CyclicClass& x, const CyclicClass& y) {
  if (x.trivial() || y.trivial()) return false;
  const CyclicClass rx = primitive_root(x).root;
  const CyclicClass ry = primitive_root(y).root;
  return rx == ry || rx == inverse(ry);
}

/// All non-trivial canonical classes of length <= max_len over `rank`
/// generators, in shortlex order.
inline std::vector<CyclicClass> enumerate_cyclic_words(int rank,
                                                       std::size_t max_len) {
  std::vector<CyclicClass> out;
  const auto letters = static_cast<std::uint16_t>(2 * rank);
  Word w;
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.assign(len, Letter{});
    // Depth-first in letter order yields lexicographic order per length.
    auto visit = [&](auto&& self, std::size_t depth) -> void {
      if (depth == len) {
        if (len >= 2 && w.front() == w.back().inverse()) return;
        if (least_rotation(w) != 0) return;
        CyclicClass c = CyclicClass::of(w);
        if (c.word() == w) out.push_back(std::move(c));
        return;
      }
      for (std::uint16_t code = 0; code < letters; ++code) {
        const Letter l{code};
        if (depth > 0 && w[depth - 1] == l.inverse()) continue;
        // A canonical word starts with its least letter.
        if (depth > 0 && l < w[0]) continue;
        w[depth] = l;
        self(self, depth + 1);
      }
    };
    visit(visit, 0);
  }
  return out;
}

}  // namespace goldman
