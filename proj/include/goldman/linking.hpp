#pragma once

// Crossings of taut representatives of two cyclic words on a fat-graph
// surface.
//
// Occurrence i of a cyclic word x is the vertex visit between x[i-1] and
// x[i]; the periodic bi-infinite word read from there is U with u_k =
// x[(i+k) mod |x|]. Two occurrences either meet at a single vertex with four
// distinct germs, or run together along a maximal shared segment S, in the
// same direction (parallel) or in opposite directions (anti-parallel). The
// strands cross iff their ends alternate around S. With P and Q the two ends
// of S, s_P and s_Q the germs pointing into S, and p_*, q_* the germs where
// each strand leaves S, this is
//
//     turn(s_P, p_U, p_V) == turn(s_Q, q_U, q_V).
//
// Every crossing is reported once, at the occurrence pair where S starts in
// the direction of the first word.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "goldman/errors.hpp"
#include "goldman/surface.hpp"
#include "goldman/words.hpp"

namespace goldman {

enum class SegmentKind : std::uint8_t { vertex, parallel, anti_parallel };

struct LinkedPair {
  std::size_t first = 0;   // occurrence in the first class
  std::size_t second = 0;  // occurrence in the second class
  int sign = 1;            // orientation of (tangent of first, tangent of second)
  SegmentKind kind = SegmentKind::vertex;
  std::size_t overlap = 0;  // letters shared along the segment

  friend bool operator==(const LinkedPair&, const LinkedPair&) = default;
};

inline int turn_sign(const SurfaceSymbol& s, Letter d, Letter x, Letter y) {
  return s.turn_sign(d, x, y);
}

namespace detail {

/// Periodic reader for an occurrence of a cyclic word.
class Strand {
 public:
  Strand(const Word& w, std::size_t start)
      : w_(&w), n_(static_cast<std::ptrdiff_t>(w.size())),
        start_(static_cast<std::ptrdiff_t>(start)) {}

  Letter operator[](std::ptrdiff_t k) const {
    std::ptrdiff_t idx = (start_ + k) % n_;
    if (idx < 0) idx += n_;
    return (*w_)[static_cast<std::size_t>(idx)];
  }

 private:
  const Word* w_;
  std::ptrdiff_t n_;
  std::ptrdiff_t start_;
};

/// Decides whether occurrence (i, j) is the start of a crossing.
inline std::optional<LinkedPair> link_at(const SurfaceSymbol& s, const Word& x,
                                         std::size_t i, const Word& y,
                                         std::size_t j) {
  const Strand u(x, i);
  const Strand v(y, j);
  // Fine-Wilf: periodic words agreeing on |x|+|y| letters coincide.
  const auto horizon = static_cast<std::ptrdiff_t>(x.size() + y.size());

  const Letter u_in = u[-1].inverse();
  const Letter u_out = u[0];
  const Letter v_in = v[-1].inverse();
  const Letter v_out = v[0];

  if (u_in != v_in && u_out != v_out && u_out != v_in && u_in != v_out) {
    // Single vertex, four distinct germs: chords cross iff they alternate.
    const int a = s.turn_sign(u_in, v_in, u_out);
    const int b = s.turn_sign(u_in, v_out, u_out);
    if (a == b) return std::nullopt;
    return LinkedPair{i, j, a, SegmentKind::vertex, 0};
  }

  if (u_out == v_out && u_in != v_in) {
    std::ptrdiff_t f = 1;
    while (f < horizon && u[f] == v[f]) ++f;
    if (f >= horizon) return std::nullopt;
    const int at_start = s.turn_sign(u_out, u_in, v_in);
    const int at_end = s.turn_sign(u[f - 1].inverse(), u[f], v[f]);
    if (at_start != at_end) return std::nullopt;
    return LinkedPair{i, j, at_start, SegmentKind::parallel,
                      static_cast<std::size_t>(f)};
  }

  if (u_out == v_in && u_in != v_out) {
    std::ptrdiff_t f = 1;
    while (f < horizon && u[f] == v[-1 - f].inverse()) ++f;
    if (f >= horizon) return std::nullopt;
    const int at_start = s.turn_sign(u_out, u_in, v_out);
    const int at_end =
        s.turn_sign(u[f - 1].inverse(), u[f], v[-1 - f].inverse());
    if (at_start != at_end) return std::nullopt;
    // The second strand runs backwards along S, which flips the frame.
    return LinkedPair{i, j, -at_start, SegmentKind::anti_parallel,
                      static_cast<std::size_t>(f)};
  }

  // Interior or far end of a shared segment: counted at its start.
  return std::nullopt;
}

inline void require_nontrivial(const CyclicClass& x, const char* what) {
  if (x.trivial()) {
    throw PreconditionError(std::string(what) + ": trivial class");
  }
}

}  // namespace detail

/// All crossings of the occurrence grid, ordered by (first, second).
inline std::vector<LinkedPair> linked_pairs(const SurfaceSymbol& s,
                                            const CyclicClass& x,
                                            const CyclicClass& y) {
  detail::require_nontrivial(x, "linked_pairs");
  detail::require_nontrivial(y, "linked_pairs");
  if (!s.contains(x.word()) || !s.contains(y.word())) {
    throw PreconditionError("linked_pairs: word uses a generator beyond rank");
  }
  std::vector<LinkedPair> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (auto p = detail::link_at(s, x.word(), i, y.word(), j)) {
        out.push_back(*p);
      }
    }
  }
  return out;
}

/// Number of linked pairs over the full grid, with no primitivity
/// restriction; 0 when either class is trivial.
inline std::size_t linked_count(const SurfaceSymbol& s, const CyclicClass& x,
                                const CyclicClass& y) {
  if (x.trivial() || y.trivial()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (detail::link_at(s, x.word(), i, y.word(), j)) ++count;
    }
  }
  return count;
}

/// Whether intersection_number is defined for (x, y).
inline bool in_guaranteed_regime(const CyclicClass& x, const CyclicClass& y) {
  return is_primitive(x) && is_primitive(y) && !share_root(x, y);
}

inline std::size_t intersection_number(const SurfaceSymbol& s,
                                       const CyclicClass& x,
                                       const CyclicClass& y) {
  detail::require_nontrivial(x, "intersection_number");
  detail::require_nontrivial(y, "intersection_number");
  if (!is_primitive(x) || !is_primitive(y)) {
    throw UnguaranteedRegime(
        "intersection_number: classes must be primitive (not proper powers)");
  }
  if (share_root(x, y)) {
    throw UnguaranteedRegime(
        "intersection_number: classes share a primitive root");
  }
  return linked_pairs(s, x, y).size();
}

/// Double points of a taut representative of one primitive class.
inline std::size_t self_intersection(const SurfaceSymbol& s,
                                     const CyclicClass& x) {
  detail::require_nontrivial(x, "self_intersection");
  if (!is_primitive(x)) {
    throw UnguaranteedRegime("self_intersection: class is a proper power");
  }
  // Each double point is seen once from each of its two strands.
  return linked_pairs(s, x, x).size() / 2;
}

}  // namespace goldman
