#pragma once

// Oriented bordered surfaces presented by a one-vertex fat graph.
//
// Edge i is the loop labelled by generator i. Traversing letter x leaves the
// vertex through germ x and comes back through germ x^-1, so the germ set is
// the letter set. The germ order is read counterclockwise around the vertex.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/errors.hpp"
#include "goldman/words.hpp"

namespace goldman {

class SurfaceSymbol {
 public:
  SurfaceSymbol(int rank, std::vector<Letter> germ_order)
      : rank_(rank), order_(std::move(germ_order)) {
    if (rank_ < 1) throw PreconditionError("surface symbol needs rank >= 1");
    const auto germs = static_cast<std::size_t>(2 * rank_);
    if (order_.size() != germs) {
      throw PreconditionError("germ order must list all " +
                              std::to_string(germs) + " germs");
    }
    position_.assign(germs, germs);
    for (std::size_t k = 0; k < germs; ++k) {
      const Letter g = order_[k];
      if (g.code >= germs) {
        throw PreconditionError("germ '" + std::string(1, to_char(g)) +
                                "' exceeds rank");
      }
      if (position_[g.code] != germs) {
        throw PreconditionError("germ '" + std::string(1, to_char(g)) +
                                "' listed twice");
      }
      position_[g.code] = k;
    }
  }

  /// Convenience: `SurfaceSymbol::parse_order("abAB")`.
  static SurfaceSymbol parse_order(std::string_view germs) {
    Word order = parse_word(germs);
    const auto rank = static_cast<int>(order.size() / 2);
    return SurfaceSymbol(rank, std::move(order));
  }

  int rank() const noexcept { return rank_; }
  std::size_t germ_count() const noexcept { return order_.size(); }
  const std::vector<Letter>& germ_order() const noexcept { return order_; }
  std::size_t position(Letter g) const { return position_.at(g.code); }

  /// Next germ counterclockwise.
  Letter successor(Letter g) const {
    return order_[(position(g) + 1) % order_.size()];
  }

  /// +1 when d, x, y appear in this counterclockwise cyclic order.
  int turn_sign(Letter d, Letter x, Letter y) const {
    if (d == x || d == y || x == y) {
      throw PreconditionError("turn_sign needs three distinct germs");
    }
    const std::size_t n = order_.size();
    const std::size_t pd = position(d);
    const std::size_t dx = (position(x) + n - pd) % n;
    const std::size_t dy = (position(y) + n - pd) % n;
    return dx < dy ? 1 : -1;
  }

  bool contains(std::span<const Letter> w) const {
    return std::all_of(w.begin(), w.end(),
                       [&](Letter l) { return l.index() < rank_; });
  }

  std::string order_string() const {
    std::string out;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      if (k) out.push_back(' ');
      out.push_back(to_char(order_[k]));
    }
    return out;
  }

  friend bool operator==(const SurfaceSymbol& a, const SurfaceSymbol& b) {
    return a.rank_ == b.rank_ && a.order_ == b.order_;
  }

 private:
  int rank_;
  std::vector<Letter> order_;
  std::vector<std::size_t> position_;
};

/// Faces of the ribbon graph: after traversing letter x, continue with the
/// counterclockwise successor of the arrival germ x^-1. Sorted canonically.
inline std::vector<CyclicClass> boundary_cycles(const SurfaceSymbol& s) {
  const std::size_t n = s.germ_count();
  std::vector<bool> used(n, false);
  std::vector<CyclicClass> faces;
  for (std::uint16_t start = 0; start < n; ++start) {
    if (used[start]) continue;
    Word face;
    Letter l{start};
    while (!used[l.code]) {
      used[l.code] = true;
      face.push_back(l);
      l = s.successor(l.inverse());
    }
    faces.push_back(CyclicClass::of(face));
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

struct Classification {
  int genus = 0;
  int boundary_count = 0;
  friend bool operator==(const Classification&, const Classification&) = default;
};

inline Classification classify(const SurfaceSymbol& s) {
  const int b = static_cast<int>(boundary_cycles(s).size());
  const int euler = 1 - s.rank();
  return Classification{(2 - euler - b) / 2, b};
}

/// The annulus (cylinder). A disc would need rank 0, which is unrepresentable.
inline bool is_excluded_surface(const SurfaceSymbol& s) {
  return classify(s) == Classification{0, 2};
}

/// x or x^-1 is a positive power of a boundary cycle.
inline bool is_peripheral(const SurfaceSymbol& s, const CyclicClass& x) {
  if (x.trivial()) {
    throw PreconditionError("is_peripheral: trivial class");
  }
  const PrimitiveRoot rx = primitive_root(x);
  const CyclicClass rx_inv = inverse(rx.root);
  for (const CyclicClass& d : boundary_cycles(s)) {
    const PrimitiveRoot rd = primitive_root(d);
    if ((rd.root == rx.root || rd.root == rx_inv) &&
        rx.exponent % rd.exponent == 0) {
      return true;
    }
  }
  return false;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

/// Surface file: `rank <n>` then `order <germ> <germ> ...`. Blank lines and
/// lines starting with '#' are ignored.
inline SurfaceSymbol parse_surface(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  int rank = -1;
  std::size_t rank_line = 0;
  std::vector<Letter> order;
  bool have_order = false;
  std::size_t order_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t indent = raw.find_first_not_of(" \t") + 1;
    std::istringstream tokens(line);
    std::string key;
    tokens >> key;
    if (key == "rank") {
      std::string value;
      tokens >> value;
      std::size_t used = 0;
      try {
        rank = std::stoi(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (value.empty() || used != value.size() || rank < 1) {
        throw ParseError("rank must be a positive integer", line_no,
                         indent + 5);
      }
      rank_line = line_no;
    } else if (key == "order") {
      have_order = true;
      order_line = line_no;
      std::size_t column = indent + 5;
      for (std::size_t k = 5; k < line.size(); ++k) {
        const char c = line[k];
        column = indent + k;
        if (c == ' ' || c == '\t') continue;
        auto l = letter_from_char(c);
        if (!l) {
          throw ParseError("unexpected character '" + std::string(1, c) +
                               "' in germ order",
                           line_no, column);
        }
        if (k + 1 < line.size() && line[k + 1] != ' ' && line[k + 1] != '\t') {
          throw ParseError("germs must be single letters separated by spaces",
                           line_no, column + 1);
        }
        order.push_back(*l);
      }
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no, indent);
    }
  }
  if (rank < 0) throw ParseError("missing 'rank' line", line_no + 1, 1);
  if (!have_order) throw ParseError("missing 'order' line", line_no + 1, 1);
  try {
    return SurfaceSymbol(rank, std::move(order));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), order_line ? order_line : rank_line, 1);
  }
}

inline SurfaceSymbol load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open surface file " + path.string(), 1, 1);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_surface(buf.str());
}

inline std::string format_surface(const SurfaceSymbol& s) {
  return "rank " + std::to_string(s.rank()) + "\norder " + s.order_string() +
         "\n";
}

}  // namespace goldman
