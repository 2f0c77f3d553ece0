#pragma once

// Bounded audits of a map between surface groups: does it commute with the
// bracket (up to a global sign), and does it preserve intersection numbers?
// A "preserving" verdict means no violation was found within the sample.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "goldman/bracket.hpp"
#include "goldman/errors.hpp"
#include "goldman/linking.hpp"
#include "goldman/parallel.hpp"
#include "goldman/surface.hpp"
#include "goldman/words.hpp"

namespace goldman::audit {

/// Homomorphism pi_1(source) -> pi_1(target) given by generator images.
struct SurfaceMap {
  SurfaceSymbol source;
  SurfaceSymbol target;
  std::vector<Word> images;
  /// The caller's claim that the map is a homotopy equivalence. Recorded,
  /// not checked.
  bool expect_equivalence = false;

  SurfaceMap(SurfaceSymbol src, SurfaceSymbol tgt, std::vector<Word> imgs,
             bool equivalence = false)
      : source(std::move(src)),
        target(std::move(tgt)),
        images(std::move(imgs)),
        expect_equivalence(equivalence) {
    if (images.size() != static_cast<std::size_t>(source.rank())) {
      throw PreconditionError("map needs one image per source generator");
    }
    for (const Word& w : images) {
      if (!target.contains(w)) {
        throw PreconditionError("image uses a generator beyond target rank");
      }
    }
  }

  static SurfaceMap identity(const SurfaceSymbol& src, const SurfaceSymbol& tgt) {
    std::vector<Word> imgs;
    for (int i = 0; i < src.rank(); ++i) imgs.push_back({Letter::generator(i)});
    return SurfaceMap(src, tgt, std::move(imgs));
  }
};

inline Word apply_map(const SurfaceMap& m, std::span<const Letter> w) {
  Word out;
  for (Letter l : w) {
    const Word& img = m.images.at(static_cast<std::size_t>(l.index()));
    if (l.inverted()) {
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        out.push_back(it->inverse());
      }
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return reduce(out);
}

inline CyclicClass apply_map(const SurfaceMap& m, const CyclicClass& x) {
  return CyclicClass::of(apply_map(m, std::span<const Letter>(x.word())));
}

inline BracketElement apply_map(const SurfaceMap& m, const BracketElement& e) {
  BracketElement out;
  for (const auto& [x, c] : e.terms()) out.add(apply_map(m, x), c);
  return out;
}

enum class Verdict : std::uint8_t { preserving, anti_preserving, violating };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::preserving: return "preserving";
    case Verdict::anti_preserving: return "anti_preserving";
    case Verdict::violating: return "violating";
  }
  return "?";
}

/// Process exit status used by the command line tool.
inline int exit_status(Verdict v) {
  switch (v) {
    case Verdict::preserving: return 0;
    case Verdict::anti_preserving: return 2;
    case Verdict::violating: return 3;
  }
  return 1;
}

struct Sample {
  enum class Kind : std::uint8_t { exhaustive, random };
  Kind kind = Kind::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static Sample exhaustive() { return {}; }
  static Sample random(std::size_t count, std::uint64_t seed) {
    return {Kind::random, count, seed};
  }

  std::string describe() const {
    if (kind == Kind::exhaustive) return "exhaustive";
    return "random " + std::to_string(count) + " pairs, seed " +
           std::to_string(seed);
  }
};

enum class ClassFilter : std::uint8_t { all, nonperipheral, simple };

/// Canonical non-trivial classes of length <= max_len, shortlex order.
inline std::vector<CyclicClass> enumerate_classes(const SurfaceSymbol& s,
                                                  std::size_t max_len,
                                                  ClassFilter filter,
                                                  unsigned threads = 0) {
  if (max_len < 1) throw PreconditionError("enumerate_classes: L >= 1");
  std::vector<CyclicClass> all = enumerate_cyclic_words(s.rank(), max_len);
  if (filter == ClassFilter::all) return all;
  std::vector<char> keep(all.size(), 0);
  parallel_for(all.size(), threads, [&](std::size_t i) {
    keep[i] = filter == ClassFilter::simple ? is_simple(s, all[i])
                                            : !is_peripheral(s, all[i]);
  });
  std::vector<CyclicClass> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(std::move(all[i]));
  }
  return out;
}

/// One sampled pair with both sides of the tested identity.
template <typename Value>
struct Certificate {
  CyclicClass x;
  CyclicClass y;
  Value source_side{};  // f_*(bracket or count in the source)
  Value target_side{};  // same quantity computed in the target from f_*x, f_*y
};

template <typename Value>
struct AuditReport {
  Verdict verdict = Verdict::preserving;
  std::vector<Certificate<Value>> certificates;
  std::size_t max_len = 0;
  Sample sample;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;
  std::string scope;
};

using BracketAudit = AuditReport<BracketElement>;
using IntersectionAudit = AuditReport<std::int64_t>;

inline constexpr std::size_t kMaxCertificates = 10;

namespace detail {

inline void require_admissible_target(const SurfaceMap& m) {
  if (is_excluded_surface(m.target)) {
    throw PreconditionError(
        "target surface is homeomorphic to the plane or the cylinder");
  }
}

inline std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(
    std::size_t n, const Sample& sample) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n < 2) return pairs;
  if (sample.kind == Sample::Kind::exhaustive) {
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  std::mt19937_64 rng(sample.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  pairs.reserve(sample.count);
  while (pairs.size() < sample.count) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i != j) pairs.emplace_back(i, j);
  }
  return pairs;
}

}  // namespace detail

inline Certificate<BracketElement> bracket_certificate(const SurfaceMap& m,
                                                       const CyclicClass& x,
                                                       const CyclicClass& y) {
  return {x, y, apply_map(m, bracket_classes(m.source, x, y)),
          bracket_classes(m.target, apply_map(m, x), apply_map(m, y))};
}

/// Compares f_*([x, y]) with [f_*x, f_*y] over the sample.
inline BracketAudit audit_bracket(const SurfaceMap& m, std::size_t max_len,
                                  const Sample& sample = Sample::exhaustive(),
                                  unsigned threads = 0) {
  detail::require_admissible_target(m);
  BracketAudit report;
  report.max_len = max_len;
  report.sample = sample;
  report.scope = "all class pairs";
  const auto classes = enumerate_classes(m.source, max_len, ClassFilter::all);
  const auto pairs = detail::sample_pairs(classes.size(), sample);

  std::vector<Certificate<BracketElement>> rows(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    rows[k] = bracket_certificate(m, classes[pairs[k].first],
                                  classes[pairs[k].second]);
  });
  report.pairs_checked = rows.size();

  bool all_equal = true;
  bool all_negated = true;
  bool any_nonzero = false;
  for (const auto& r : rows) {
    all_equal = all_equal && r.source_side == r.target_side;
    all_negated = all_negated && r.source_side == -r.target_side;
    any_nonzero = any_nonzero || !r.source_side.is_zero() ||
                  !r.target_side.is_zero();
  }
  if (all_equal) {
    report.verdict = Verdict::preserving;
    return report;
  }
  if (all_negated && any_nonzero) {
    report.verdict = Verdict::anti_preserving;
    return report;
  }
  report.verdict = Verdict::violating;
  for (const auto& r : rows) {
    if (report.certificates.size() == kMaxCertificates) break;
    if (r.source_side != r.target_side && r.source_side != -r.target_side) {
      report.certificates.push_back(r);
    }
  }
  if (report.certificates.empty()) {
    // Every pair matches up to sign, but the signs are mixed: witness one
    // pair of each kind.
    auto not_plus = std::find_if(rows.begin(), rows.end(), [](const auto& r) {
      return r.source_side != r.target_side;
    });
    auto not_minus = std::find_if(rows.begin(), rows.end(), [](const auto& r) {
      return r.source_side != -r.target_side;
    });
    for (auto it : {std::min(not_plus, not_minus), std::max(not_plus, not_minus)}) {
      if (it != rows.end()) report.certificates.push_back(*it);
    }
  }
  return report;
}

enum class IntersectionMode : std::uint8_t { zero_pattern, exact };

inline std::optional<Certificate<std::int64_t>> intersection_certificate(
    const SurfaceMap& m, const CyclicClass& x, const CyclicClass& y) {
  if (!in_guaranteed_regime(x, y)) return std::nullopt;
  const CyclicClass fx = apply_map(m, x);
  const CyclicClass fy = apply_map(m, y);
  if (fx.trivial() || fy.trivial() || !in_guaranteed_regime(fx, fy)) {
    return std::nullopt;
  }
  return Certificate<std::int64_t>{
      x, y, static_cast<std::int64_t>(intersection_number(m.source, x, y)),
      static_cast<std::int64_t>(intersection_number(m.target, fx, fy))};
}

/// Compares intersection numbers before and after the map, on pairs where
/// both counts are guaranteed geometric.
inline IntersectionAudit audit_intersection(
    const SurfaceMap& m, std::size_t max_len, IntersectionMode mode,
    const Sample& sample = Sample::exhaustive(), unsigned threads = 0) {
  detail::require_admissible_target(m);
  IntersectionAudit report;
  report.max_len = max_len;
  report.sample = sample;
  report.scope =
      "pairs of primitive classes with distinct roots, in source and target";
  const auto classes = enumerate_classes(m.source, max_len, ClassFilter::all);
  const auto pairs = detail::sample_pairs(classes.size(), sample);

  std::vector<std::optional<Certificate<std::int64_t>>> rows(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    rows[k] = intersection_certificate(m, classes[pairs[k].first],
                                       classes[pairs[k].second]);
  });
  report.verdict = Verdict::preserving;
  for (const auto& r : rows) {
    if (!r) {
      ++report.pairs_skipped;
      continue;
    }
    ++report.pairs_checked;
    const bool ok = mode == IntersectionMode::exact
                        ? r->source_side == r->target_side
                        : (r->source_side == 0) == (r->target_side == 0);
    if (!ok) {
      report.verdict = Verdict::violating;
      if (report.certificates.size() < kMaxCertificates) {
        report.certificates.push_back(*r);
      }
    }
  }
  return report;
}

/// Recomputes a certificate from scratch.
inline bool verify_certificate(const SurfaceMap& m,
                               const Certificate<BracketElement>& c) {
  const auto fresh = bracket_certificate(m, c.x, c.y);
  return fresh.source_side == c.source_side &&
         fresh.target_side == c.target_side;
}

inline bool verify_certificate(const SurfaceMap& m,
                               const Certificate<std::int64_t>& c) {
  const auto fresh = intersection_certificate(m, c.x, c.y);
  return fresh && fresh->source_side == c.source_side &&
         fresh->target_side == c.target_side;
}

struct FillReport {
  bool pass = true;
  /// Non-peripheral class with no linked pair against any system member.
  std::optional<CyclicClass> counterexample;
  std::size_t classes_checked = 0;
};

/// Every non-peripheral class of length <= max_len must cross some member of
/// the system.
inline FillReport fill_check(const SurfaceSymbol& s,
                             const std::vector<CyclicClass>& system,
                             std::size_t max_len, unsigned threads = 0) {
  for (const CyclicClass& a : system) {
    if (a.trivial()) throw PreconditionError("fill_check: trivial system curve");
    if (!s.contains(a.word())) {
      throw PreconditionError("fill_check: system curve exceeds rank");
    }
  }
  const auto candidates =
      enumerate_classes(s, max_len, ClassFilter::nonperipheral, threads);
  std::vector<char> misses(candidates.size(), 0);
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    misses[i] = std::all_of(system.begin(), system.end(), [&](const auto& a) {
      return linked_count(s, candidates[i], a) == 0;
    });
  });
  FillReport report;
  report.classes_checked = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (misses[i]) {
      report.pass = false;
      report.counterexample = candidates[i];
      break;
    }
  }
  return report;
}

/// Map file: `source <surface-file>`, `target <surface-file>`, then
/// `map <generator> -> <word>` for every source generator. Optional
/// `expect_equivalence true|false`. Paths are relative to the map file.
inline SurfaceMap parse_map(std::string_view text,
                            const std::filesystem::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<SurfaceSymbol> source;
  std::optional<SurfaceSymbol> target;
  std::vector<std::optional<Word>> images;
  struct MapLine {
    std::size_t line;
    std::size_t gen_column;
    std::size_t word_column;
    Letter gen;
    std::string word;
  };
  std::vector<MapLine> pending;
  bool equivalence = false;
  auto load = [&](const std::string& rel, std::size_t column) {
    try {
      return load_surface(base_dir / rel);
    } catch (const ParseError& e) {
      throw ParseError("cannot load surface file " + rel + " (" + e.what() + ")",
                       line_no, column);
    }
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = goldman::detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t indent = raw.find_first_not_of(" \t") + 1;
    std::istringstream tokens(line);
    std::string key;
    tokens >> key;
    if (key == "source" || key == "target") {
      std::string path;
      tokens >> path;
      if (path.empty()) throw ParseError("missing surface path", line_no, indent + key.size() + 1);
      (key == "source" ? source : target) = load(path, indent + key.size() + 1);
    } else if (key == "map") {
      std::string gen;
      std::string arrow;
      std::string word;
      std::string extra;
      tokens >> gen >> arrow >> word >> extra;
      const std::size_t gen_col = indent + line.find(gen, 3);
      auto l = gen.size() == 1 ? letter_from_char(gen[0]) : std::nullopt;
      if (!l || l->inverted()) {
        throw ParseError("expected a lowercase generator", line_no, gen_col);
      }
      if (arrow != "->") {
        throw ParseError("expected '->'", line_no, gen_col + gen.size() + 1);
      }
      if (word.empty()) {
        throw ParseError("missing image word", line_no, indent + line.size());
      }
      const std::size_t word_col =
          indent + line.find(word, gen_col - indent + gen.size() + arrow.size());
      if (!extra.empty()) {
        throw ParseError("unexpected text after the image word", line_no,
                         indent + line.rfind(extra));
      }
      pending.push_back({line_no, gen_col, word_col, *l, word});
    } else if (key == "expect_equivalence") {
      std::string value;
      tokens >> value;
      if (value != "true" && value != "false") {
        throw ParseError("expected true or false", line_no, indent + key.size() + 1);
      }
      equivalence = value == "true";
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no, indent);
    }
  }
  if (!source) throw ParseError("missing 'source' line", line_no + 1, 1);
  if (!target) throw ParseError("missing 'target' line", line_no + 1, 1);
  images.assign(static_cast<std::size_t>(source->rank()), std::nullopt);
  for (const MapLine& m : pending) {
    if (m.gen.index() >= source->rank()) {
      throw ParseError("generator exceeds source rank", m.line, m.gen_column);
    }
    auto& slot = images[static_cast<std::size_t>(m.gen.index())];
    if (slot) {
      throw ParseError("generator mapped twice", m.line, m.gen_column);
    }
    try {
      slot = reduce(parse_word(m.word, target->rank()));
    } catch (const ParseError& e) {
      throw ParseError("bad image word: " + e.message(), m.line,
                       m.word_column + e.column() - 1);
    }
  }
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) {
      throw ParseError(std::string("no image for generator '") +
                           to_char(Letter::generator(static_cast<int>(i))) + "'",
                       line_no + 1, 1);
    }
    imgs.push_back(*images[i]);
  }
  return SurfaceMap(*source, *target, std::move(imgs), equivalence);
}

inline SurfaceMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file " + path.string(), 1, 1);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str(), path.parent_path());
}

}  // namespace goldman::audit
