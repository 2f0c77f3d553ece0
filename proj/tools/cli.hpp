#pragma once

// Command-line front end. `run` never calls exit() and writes only to the
// given streams, so tests can drive it in-process.
//
// Exit status: 0 success / preserving / pass, 1 usage or parse error,
// 2 anti-preserving, 3 violating / check failed, 4 precondition violation.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "goldman/amalgam.hpp"
#include "goldman/auditor.hpp"
#include "goldman/bracket.hpp"
#include "goldman/errors.hpp"
#include "goldman/linking.hpp"
#include "goldman/surface.hpp"
#include "goldman/words.hpp"

namespace goldman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitPrecondition = 4;

namespace detail {

inline SurfaceSymbol load_surface_arg(const std::string& path) {
  try {
    return load_surface(path);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

inline CyclicClass class_arg(const std::string& text, int rank) {
  try {
    return CyclicClass::parse(text, rank);
  } catch (const ParseError& e) {
    throw ParseError("word '" + text + "'", e);
  }
}

inline std::vector<CyclicClass> class_list_arg(const std::string& text,
                                               int rank) {
  std::vector<CyclicClass> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(class_arg(item, rank));
  return out;
}

inline void print_audit_header(std::ostream& out, std::string_view kind,
                               const audit::SurfaceMap& m, std::size_t max_len,
                               const audit::Sample& sample) {
  const Classification cs = classify(m.source);
  const Classification ct = classify(m.target);
  out << "audit " << kind << "\n";
  out << "source: order " << m.source.order_string() << " (genus " << cs.genus
      << ", boundary " << cs.boundary_count << ")\n";
  out << "target: order " << m.target.order_string() << " (genus " << ct.genus
      << ", boundary " << ct.boundary_count << ")\n";
  out << "images:";
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    out << ' ' << to_char(Letter::generator(static_cast<int>(i))) << "->"
        << to_string(m.images[i]);
  }
  out << "\nexpect_equivalence: " << (m.expect_equivalence ? "true" : "false")
      << " (not verified)\n";
  out << "max-len: " << max_len << "\nsample: " << sample.describe() << "\n";
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Curves on surfaces: intersection numbers, the Goldman bracket, "
               "amalgam normal forms and map audits.",
               "goldman"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  int status = kExitOk;
  unsigned threads = 0;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads,
                    "Worker threads (0 = one per hardware thread); output does "
                    "not depend on this")
        ->capture_default_str();
  };

  // bracket ---------------------------------------------------------------
  std::string surface_path;
  std::string w1;
  std::string w2;
  auto* bracket_cmd = app.add_subcommand(
      "bracket",
      "Goldman bracket of two integer combinations of classes.\n"
      "Arguments are words (ab, aB) or combinations such as '2*ab + -1*b'.\n"
      "Output: terms '<coeff>*<word>' joined by ' + ', ordered shortlex by "
      "canonical word; the zero element prints '0'.");
  bracket_cmd->add_option("surface", surface_path, "Surface file")->required();
  bracket_cmd->add_option("x", w1, "First argument")->required();
  bracket_cmd->add_option("y", w2, "Second argument")->required();
  bracket_cmd->callback([&] {
    const SurfaceSymbol s = detail::load_surface_arg(surface_path);
    auto parse = [&](const std::string& t) {
      try {
        return BracketElement::parse(t, s.rank());
      } catch (const ParseError& e) {
        throw ParseError("argument '" + t + "'", e);
      }
    };
    out << bracket(s, parse(w1), parse(w2)).str() << "\n";
  });

  // intersect -------------------------------------------------------------
  bool show_pairs = false;
  auto* intersect_cmd = app.add_subcommand(
      "intersect",
      "Geometric intersection number of two primitive classes with distinct "
      "primitive roots.\nOutput: the count; with --pairs, one line "
      "'(i, j, sign)' per crossing, where i and j index the canonical words.");
  intersect_cmd->add_option("surface", surface_path, "Surface file")->required();
  intersect_cmd->add_option("x", w1, "First word")->required();
  intersect_cmd->add_option("y", w2, "Second word")->required();
  intersect_cmd->add_flag("--pairs", show_pairs, "List the linked pairs");
  intersect_cmd->callback([&] {
    const SurfaceSymbol s = detail::load_surface_arg(surface_path);
    const CyclicClass x = detail::class_arg(w1, s.rank());
    const CyclicClass y = detail::class_arg(w2, s.rank());
    out << intersection_number(s, x, y) << "\n";
    if (show_pairs) {
      for (const LinkedPair& p : linked_pairs(s, x, y)) {
        out << "(" << p.first << ", " << p.second << ", "
            << (p.sign > 0 ? "+1" : "-1") << ")\n";
      }
    }
  });

  // selfint ---------------------------------------------------------------
  auto* selfint_cmd = app.add_subcommand(
      "selfint",
      "Self-intersection number of a primitive class. Output: the count.");
  selfint_cmd->add_option("surface", surface_path, "Surface file")->required();
  selfint_cmd->add_option("x", w1, "Word")->required();
  selfint_cmd->callback([&] {
    const SurfaceSymbol s = detail::load_surface_arg(surface_path);
    out << self_intersection(s, detail::class_arg(w1, s.rank())) << "\n";
  });

  // boundary --------------------------------------------------------------
  auto* boundary_cmd = app.add_subcommand(
      "boundary",
      "Boundary cycles of the surface, one canonical word per line, in "
      "shortlex order.");
  boundary_cmd->add_option("surface", surface_path, "Surface file")->required();
  boundary_cmd->callback([&] {
    for (const CyclicClass& d :
         boundary_cycles(detail::load_surface_arg(surface_path))) {
      out << d.str() << "\n";
    }
  });

  // classify --------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand(
      "classify", "Topological type. Output: 'genus <g>, boundary <b>'.");
  classify_cmd->add_option("surface", surface_path, "Surface file")->required();
  classify_cmd->callback([&] {
    const Classification c = classify(detail::load_surface_arg(surface_path));
    out << "genus " << c.genus << ", boundary " << c.boundary_count << "\n";
  });

  // enumerate -------------------------------------------------------------
  std::size_t max_len = 0;
  std::string filter = "all";
  bool count_only = false;
  auto* enumerate_cmd = app.add_subcommand(
      "enumerate",
      "Canonical non-trivial classes up to a length, one per line, shortlex "
      "order.");
  enumerate_cmd->add_option("surface", surface_path, "Surface file")->required();
  enumerate_cmd->add_option("--max-len", max_len, "Maximum word length")
      ->required()
      ->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--filter", filter, "all | nonperipheral | simple")
      ->check(CLI::IsMember({"all", "nonperipheral", "simple"}))
      ->capture_default_str();
  enumerate_cmd->add_flag("--count", count_only, "Print only the number of classes");
  add_threads(enumerate_cmd);
  enumerate_cmd->callback([&] {
    const SurfaceSymbol s = detail::load_surface_arg(surface_path);
    const auto f = filter == "simple"          ? audit::ClassFilter::simple
                   : filter == "nonperipheral" ? audit::ClassFilter::nonperipheral
                                               : audit::ClassFilter::all;
    const auto classes = audit::enumerate_classes(s, max_len, f, threads);
    if (count_only) {
      out << classes.size() << "\n";
      return;
    }
    std::string buf;
    for (const CyclicClass& c : classes) {
      buf += c.str();
      buf += '\n';
    }
    out << buf;
  });

  // audit -----------------------------------------------------------------
  std::string audit_kind;
  std::string map_path;
  std::string mode = "zero";
  std::optional<std::size_t> sample_count;
  std::uint64_t seed = 0;
  auto* audit_cmd = app.add_subcommand(
      "audit",
      "Bounded audit of a surface map (map file: 'source <file>', 'target "
      "<file>', 'map <g> -> <word>' per generator, optional "
      "'expect_equivalence true|false').\n"
      "bracket: compares f(bracket(x, y)) with bracket(f x, f y).\n"
      "intersection: compares intersection numbers on pairs that are "
      "primitive with distinct roots in source and target.\n"
      "Output: a readable header, 'verdict: <v>', then one line per "
      "certificate:\n"
      "  cert <x> <y> source=<value> target=<value>\n"
      "Exit status 0 preserving, 2 anti_preserving, 3 violating.");
  audit_cmd->add_option("kind", audit_kind, "bracket | intersection")
      ->required()
      ->check(CLI::IsMember({"bracket", "intersection"}));
  audit_cmd->add_option("map", map_path, "Map file")->required();
  audit_cmd->add_option("--max-len", max_len, "Maximum source word length")
      ->required()
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--mode", mode, "Intersection audits: zero | exact")
      ->check(CLI::IsMember({"zero", "exact"}))
      ->capture_default_str();
  auto* sample_opt = audit_cmd->add_option(
      "--sample", sample_count, "Check N random ordered pairs instead of all");
  audit_cmd->add_option("--seed", seed, "Seed for --sample")
      ->capture_default_str()
      ->needs(sample_opt);
  add_threads(audit_cmd);
  audit_cmd->callback([&] {
    const audit::SurfaceMap m = [&] {
      try {
        return audit::load_map(map_path);
      } catch (const ParseError& e) {
        throw ParseError(map_path, e);
      }
    }();
    const audit::Sample sample = sample_count
                                     ? audit::Sample::random(*sample_count, seed)
                                     : audit::Sample::exhaustive();
    if (audit_kind == "bracket") {
      const auto r = audit::audit_bracket(m, max_len, sample, threads);
      detail::print_audit_header(out, "bracket", m, max_len, sample);
      out << "pairs checked: " << r.pairs_checked << "\n";
      out << "verdict: " << audit::verdict_name(r.verdict) << "\n";
      for (const auto& c : r.certificates) {
        out << "cert " << c.x.str() << " " << c.y.str()
            << " source=" << c.source_side.str()
            << " target=" << c.target_side.str() << "\n";
      }
      status = audit::exit_status(r.verdict);
    } else {
      const auto im = mode == "exact" ? audit::IntersectionMode::exact
                                      : audit::IntersectionMode::zero_pattern;
      const auto r = audit::audit_intersection(m, max_len, im, sample, threads);
      detail::print_audit_header(out, "intersection", m, max_len, sample);
      out << "mode: " << mode << "\nscope: " << r.scope << "\n";
      out << "pairs checked: " << r.pairs_checked
          << ", skipped: " << r.pairs_skipped << "\n";
      out << "verdict: " << audit::verdict_name(r.verdict) << "\n";
      for (const auto& c : r.certificates) {
        out << "cert " << c.x.str() << " " << c.y.str()
            << " source=" << c.source_side << " target=" << c.target_side
            << "\n";
      }
      status = audit::exit_status(r.verdict);
    }
  });

  // fill-check ------------------------------------------------------------
  std::string system_text;
  auto* fill_cmd = app.add_subcommand(
      "fill-check",
      "Does every non-peripheral class up to --max-len cross some curve of "
      "the system?\nOutput: 'pass (<n> classes checked)' or 'fail: <word> "
      "crosses no system curve' (exit status 3).");
  fill_cmd->add_option("surface", surface_path, "Surface file")->required();
  fill_cmd->add_option("--system", system_text, "Comma-separated words")
      ->required();
  fill_cmd->add_option("--max-len", max_len, "Maximum word length")
      ->required()
      ->check(CLI::PositiveNumber);
  add_threads(fill_cmd);
  fill_cmd->callback([&] {
    const SurfaceSymbol s = detail::load_surface_arg(surface_path);
    const auto system = detail::class_list_arg(system_text, s.rank());
    const audit::FillReport r = audit::fill_check(s, system, max_len, threads);
    if (r.pass) {
      out << "pass (" << r.classes_checked << " classes checked)\n";
    } else {
      out << "fail: " << r.counterexample->str() << " crosses no system curve\n";
      status = kExitViolation;
    }
  });

  // amalgam ---------------------------------------------------------------
  auto* amalgam_cmd =
      app.add_subcommand("amalgam", "Amalgamated free product tools");
  amalgam_cmd->require_subcommand(1);
  amalgam::SweepConfig sweep;
  std::string c_a_text;
  std::string c_b_text;
  bool skip_brute = false;
  auto* lemma_cmd = amalgam_cmd->add_subcommand(
      "check-lemma",
      "Exhaustive check of two statements in A *_C B (A on letters xyzw, B "
      "on uvst, C generated by cA = cB), for a in A non-peripheral:\n"
      "  1. g = h b h^-1, b in B non-peripheral: a*g is not conjugate into "
      "a factor.\n"
      "  2. g = h a' h^-1, a' in A non-peripheral: if a*g is conjugate into "
      "a factor then g is in A.\n"
      "Output: one line per statement and shape of h with instance and "
      "failure counts, then brute-force and listed-form agreement, then "
      "'result: pass' or 'result: fail' (exit status 3).");
  lemma_cmd->add_option("--rankA", sweep.rank_a, "Rank of A (1-4)")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  lemma_cmd->add_option("--rankB", sweep.rank_b, "Rank of B (1-4)")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  lemma_cmd->add_option("--cA", c_a_text, "Amalgamating word in A")->required();
  lemma_cmd->add_option("--cB", c_b_text, "Amalgamating word in B")->required();
  lemma_cmd->add_option("--max-letter", sweep.max_letters,
                        "Letters per factor element and per syllable of h")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  lemma_cmd->add_option("--max-syllables", sweep.max_syllables,
                        "Syllables of h")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
  lemma_cmd->add_flag("--no-brute-force", skip_brute,
                      "Skip the bounded conjugator search");
  add_threads(lemma_cmd);
  lemma_cmd->callback([&] {
    auto factor_word = [](amalgam::Factor f, const std::string& t, int rank) {
      try {
        return amalgam::parse_factor_element(f, t, rank).word;
      } catch (const ParseError& e) {
        throw ParseError("word '" + t + "'", e);
      }
    };
    sweep.c_a = factor_word(amalgam::Factor::A, c_a_text, sweep.rank_a);
    sweep.c_b = factor_word(amalgam::Factor::B, c_b_text, sweep.rank_b);
    sweep.check_brute_force = !skip_brute;
    sweep.threads = threads;
    const amalgam::SweepReport r = amalgam::lemma_sweep(sweep);
    out << "non-peripheral a: " << r.a_count << ", b: " << r.b_count
        << ", h words: " << r.h_count << "\n";
    for (int st = 1; st <= 2; ++st) {
      const auto& counts = st == 1 ? r.statement_1 : r.statement_2;
      for (std::size_t k = 0; k < amalgam::kAllShapes.size(); ++k) {
        out << "statement " << st << "  "
            << amalgam::shape_name(amalgam::kAllShapes[k])
            << ": instances " << counts.instances[k] << ", failures "
            << counts.failures[k] << "\n";
      }
    }
    if (sweep.check_brute_force) {
      out << "brute force: " << r.brute_checked << " compared, "
          << r.brute_disagreements << " disagreements\n";
    } else {
      out << "brute force: skipped\n";
    }
    out << "listed forms: " << r.listed_checked << " compared, "
        << r.listed_mismatches << " mismatches\n";
    out << "result: " << (r.pass() ? "pass" : "fail") << "\n";
    if (!r.pass()) status = kExitViolation;
  });

  // Dispatch ----------------------------------------------------------------
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnguaranteedRegime& e) {
    err << "error: outside the guaranteed regime: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    err << "error: precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return status;
}

}  // namespace goldman::cli
