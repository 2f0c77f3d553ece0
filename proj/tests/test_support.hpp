#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the linking or amalgam code it is used to check.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "goldman/amalgam.hpp"
#include "goldman/surface.hpp"
#include "goldman/words.hpp"

namespace goldman::testing {

inline SurfaceSymbol torus() { return SurfaceSymbol::parse_order("abAB"); }
inline SurfaceSymbol pants() { return SurfaceSymbol::parse_order("aAbB"); }
/// Genus 1 with two boundary components, rank 3.
inline SurfaceSymbol torus_two_holes() {
  return SurfaceSymbol::parse_order("abcABC");
}

inline std::string data_path(const std::string& name) {
  return std::string(GOLDMAN_DATA_DIR) + "/" + name;
}

inline CyclicClass cls(const char* text) { return CyclicClass::parse(text); }

/// Uniform reduced word with exactly `len` letters.
inline Word random_reduced_word(std::mt19937_64& rng, int rank,
                                std::size_t len) {
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  Word w;
  while (w.size() < len) {
    const Letter l{static_cast<std::uint16_t>(pick(rng))};
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

/// Random non-trivial class whose canonical word has length 1..max_len.
inline CyclicClass random_class(std::mt19937_64& rng, int rank,
                                std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  while (true) {
    const CyclicClass c = CyclicClass::of(random_reduced_word(rng, rank, len(rng)));
    if (!c.trivial()) return c;
  }
}

// --- Slope oracle on the once-punctured torus -------------------------------

/// The simple closed curve of slope (p, q) on the torus abAB, written as the
/// Christoffel word with |p| copies of a^{sign p} and |q| copies of
/// b^{sign q}: the k-th letter is the b-letter exactly when the line of slope
/// |q|/|p| crosses a horizontal grid line between steps k-1 and k.
inline CyclicClass slope_class(int p, int q) {
  const int big_p = std::abs(p);
  const int big_q = std::abs(q);
  const int n = big_p + big_q;
  std::string w;
  for (int k = 1; k <= n; ++k) {
    const bool b_step = (k * big_q) / n > ((k - 1) * big_q) / n;
    if (b_step) {
      w.push_back(q > 0 ? 'b' : 'B');
    } else {
      w.push_back(p > 0 ? 'a' : 'A');
    }
  }
  return CyclicClass::parse(w);
}

/// Algebraic-intersection formula for simple curves of slopes (p, q), (r, s).
inline int slope_intersection(int p, int q, int r, int s) {
  return std::abs(p * s - q * r);
}

// --- Free-group oracle for the amalgam with c_A = x, c_B = u ----------------
//
// Identifying u with x turns A *_C B into the free group on x, y, v (and the
// extra letters z, w, s, t when the ranks allow). Elements and conjugacy
// into a factor can then be decided with ordinary free-group words.

inline Word to_free_group(const amalgam::AmalgamWord& w) {
  // x y z w -> a b c d ; u -> a ; v s t -> e f g
  Word out;
  for (const amalgam::Syllable& s : w.syllables) {
    for (Letter l : s.word) {
      int index = l.index();
      if (s.factor == amalgam::Factor::B) index = index == 0 ? 0 : index + 3;
      out.push_back(Letter::generator(index, l.inverted()));
    }
  }
  return reduce(out);
}

enum class OracleFactor { A, B, none };

/// A cyclically reduced word lies in a free factor iff all its letters do.
inline std::vector<OracleFactor> free_group_factors(const amalgam::AmalgamWord& w) {
  const Word c = cyclically_reduce(to_free_group(w));
  bool in_a = true;
  bool in_b = true;
  for (Letter l : c) {
    in_a = in_a && l.index() <= 3;
    in_b = in_b && (l.index() == 0 || l.index() >= 4);
  }
  std::vector<OracleFactor> out;
  if (in_a) out.push_back(OracleFactor::A);
  if (in_b) out.push_back(OracleFactor::B);
  if (out.empty()) out.push_back(OracleFactor::none);
  return out;
}

}  // namespace goldman::testing
