#pragma once

// The Goldman bracket on the free abelian group spanned by free homotopy
// classes. Each crossing p of x and y contributes sign(p) times the class of
// the loop product based at p; for an occurrence pair (i, j) that is the
// class of rotation_i(x) followed by rotation_j(y).

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>
#include <string>
#include <string_view>
#include <utility>

#include "goldman/errors.hpp"
#include "goldman/linking.hpp"
#include "goldman/parallel.hpp"
#include "goldman/surface.hpp"
#include "goldman/words.hpp"

namespace goldman {

/// Finitely supported integer combination of cyclic classes. Zero
/// coefficients are never stored, so structural equality is equality.
class BracketElement {
 public:
  using Terms = std::map<CyclicClass, std::int64_t>;

  BracketElement() = default;
  explicit BracketElement(const CyclicClass& x, std::int64_t coeff = 1) {
    add(x, coeff);
  }

  void add(const CyclicClass& x, std::int64_t coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(x, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  std::int64_t coefficient(const CyclicClass& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? 0 : it->second;
  }

  BracketElement& operator+=(const BracketElement& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  BracketElement& operator-=(const BracketElement& o) {
    for (const auto& [x, c] : o.terms_) add(x, -c);
    return *this;
  }
  BracketElement& operator*=(std::int64_t k) {
    if (k == 0) {
      terms_.clear();
    } else {
      for (auto& [x, c] : terms_) c *= k;
    }
    return *this;
  }

  friend BracketElement operator+(BracketElement a, const BracketElement& b) {
    return a += b;
  }
  friend BracketElement operator-(BracketElement a, const BracketElement& b) {
    return a -= b;
  }
  friend BracketElement operator-(BracketElement a) { return a *= -1; }
  friend BracketElement operator*(std::int64_t k, BracketElement a) {
    return a *= k;
  }
  friend bool operator==(const BracketElement&, const BracketElement&) = default;

  /// `+1*ab + -2*aB`, sorted by canonical word; `0` for the zero element.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      if (c > 0) out += '+';
      out += std::to_string(c);
      out += '*';
      out += x.str();
    }
    return out;
  }

  /// Accepts `2*abAB + -1*ab`, `+1*ab`, `ab` (coefficient 1), `-ab`, `0`.
  /// The trivial class is written `1`.
  static BracketElement parse(std::string_view text, int rank = kMaxTextRank) {
    BracketElement e;
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() &&
             std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    auto scan = [&](auto pred) {
      const std::size_t from = pos;
      while (pos < text.size() && pred(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      return text.substr(from, pos - from);
    };
    skip_space();
    if (pos == text.size()) return e;
    if (text.substr(pos) == "0") return e;
    while (true) {
      skip_space();
      std::int64_t sign = 1;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
        skip_space();
      }
      const std::size_t number_at = pos;
      const std::string_view number = scan([](int c) { return std::isdigit(c); });
      std::int64_t coeff = 1;
      std::string_view word;
      std::size_t word_at = pos;
      if (!number.empty() && pos < text.size() && text[pos] == '*') {
        coeff = std::stoll(std::string(number));
        ++pos;
        word_at = pos;
        word = text.substr(pos, 1) == "1" ? text.substr(pos++, 1)
                                          : scan([](int c) { return std::isalpha(c); });
      } else if (number == "1") {
        word = number;
        word_at = number_at;
      } else if (number.empty()) {
        word = scan([](int c) { return std::isalpha(c); });
      } else {
        throw ParseError("expected '*' after coefficient", 0, pos + 1);
      }
      if (word.empty()) throw ParseError("expected a word", 0, word_at + 1);
      try {
        e.add(CyclicClass::parse(word, rank), sign * coeff);
      } catch (const ParseError& err) {
        throw ParseError("bad word in term", 0, word_at + err.column());
      }
      skip_space();
      if (pos >= text.size()) return e;
      if (text[pos] != '+') {
        throw ParseError("expected '+' between terms", 0, pos + 1);
      }
      ++pos;
    }
  }

 private:
  Terms terms_;
};

/// Bracket of two classes; trivial input gives the zero element.
inline BracketElement bracket_classes(const SurfaceSymbol& s,
                                      const CyclicClass& x,
                                      const CyclicClass& y) {
  BracketElement out;
  if (x.trivial() || y.trivial()) return out;
  for (const LinkedPair& p : linked_pairs(s, x, y)) {
    Word loop = x.rotation(p.first);
    const Word tail = y.rotation(p.second);
    loop.insert(loop.end(), tail.begin(), tail.end());
    out.add(CyclicClass::of(loop), p.sign);
  }
  return out;
}

/// Bilinear extension of bracket_classes.
inline BracketElement bracket(const SurfaceSymbol& s, const BracketElement& x,
                              const BracketElement& y) {
  BracketElement out;
  for (const auto& [cx, kx] : x.terms()) {
    for (const auto& [cy, ky] : y.terms()) {
      BracketElement term = bracket_classes(s, cx, cy);
      term *= kx * ky;
      out += term;
    }
  }
  return out;
}

/// Primitive with an embedded taut representative.
inline bool is_simple(const SurfaceSymbol& s, const CyclicClass& x) {
  if (x.trivial()) throw PreconditionError("is_simple: trivial class");
  return is_primitive(x) && self_intersection(s, x) == 0;
}

struct SccAuditReport {
  bool pass = true;
  /// First (x, y) in enumeration order where the bracket and the linked-pair
  /// count disagree about vanishing.
  std::optional<std::pair<CyclicClass, CyclicClass>> violation;
  std::size_t max_len = 0;
  std::size_t class_count = 0;
  std::size_t simple_count = 0;
  std::size_t pairs_checked = 0;
};

/// For every simple x and every y of length <= max_len: [x, y] = 0 exactly
/// when x and y have no linked pair.
inline SccAuditReport scc_criterion_audit(const SurfaceSymbol& s,
                                          std::size_t max_len,
                                          unsigned threads = 0) {
  if (max_len < 1) throw PreconditionError("scc_criterion_audit: L >= 1");
  SccAuditReport report;
  report.max_len = max_len;
  const std::vector<CyclicClass> classes =
      enumerate_cyclic_words(s.rank(), max_len);
  report.class_count = classes.size();

  std::vector<char> simple(classes.size(), 0);
  parallel_for(classes.size(), threads,
               [&](std::size_t i) { simple[i] = is_simple(s, classes[i]); });
  std::vector<std::size_t> simple_index;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (simple[i]) simple_index.push_back(i);
  }
  report.simple_count = simple_index.size();

  // Per simple x: index of the first offending y, or classes.size().
  std::vector<std::size_t> first_bad(simple_index.size(), classes.size());
  parallel_for(simple_index.size(), threads, [&](std::size_t k) {
    const CyclicClass& x = classes[simple_index[k]];
    for (std::size_t j = 0; j < classes.size(); ++j) {
      const bool bracket_zero = bracket_classes(s, x, classes[j]).is_zero();
      const bool disjoint = linked_count(s, x, classes[j]) == 0;
      if (bracket_zero != disjoint) {
        first_bad[k] = j;
        return;
      }
    }
  });
  report.pairs_checked = simple_index.size() * classes.size();
  for (std::size_t k = 0; k < simple_index.size(); ++k) {
    if (first_bad[k] != classes.size()) {
      report.pass = false;
      report.violation.emplace(classes[simple_index[k]], classes[first_bad[k]]);
      break;
    }
  }
  return report;
}

}  // namespace goldman
