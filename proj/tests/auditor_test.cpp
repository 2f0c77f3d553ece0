#include <gtest/gtest.h>

#include <random>

#include "goldman/auditor.hpp"
#include "test_support.hpp"

namespace goldman::audit {
namespace {

using testing::cls;

SurfaceMap make_map(const SurfaceSymbol& src, const SurfaceSymbol& tgt,
                    std::initializer_list<const char*> images) {
  std::vector<Word> w;
  for (const char* t : images) w.push_back(parse_word(t));
  return SurfaceMap(src, tgt, std::move(w));
}

SurfaceMap torus_map(std::initializer_list<const char*> images) {
  return make_map(testing::torus(), testing::torus(), images);
}

SurfaceMap flagship() {
  return SurfaceMap::identity(testing::torus(), testing::pants());
}

TEST(ApplyMap, Examples) {
  const SurfaceMap id = SurfaceMap::identity(testing::torus(), testing::torus());
  EXPECT_EQ(apply_map(id, cls("abAAB")), cls("abAAB"));
  const SurfaceMap twist = torus_map({"ab", "b"});
  EXPECT_EQ(apply_map(twist, cls("a")), cls("ab"));
  EXPECT_EQ(apply_map(twist, cls("aB")), cls("a"));
  EXPECT_EQ(apply_map(twist, cls("A")), cls("BA"));
  EXPECT_EQ(apply_map(twist, BracketElement::parse("2*a + -1*aB")).str(), "-1*a + +2*ab");
}

TEST(SurfaceMap, Validation) {
  EXPECT_THROW(make_map(testing::torus(), testing::torus(), {"a"}),
               PreconditionError);
  EXPECT_THROW(make_map(testing::torus(), testing::torus(), {"a", "c"}),
               PreconditionError);
}

TEST(EnumerateClasses, Examples) {
  const auto all = enumerate_classes(testing::torus(), 1, ClassFilter::all);
  ASSERT_EQ(all.size(), 4U);
  EXPECT_EQ(all[0].str(), "a");
  EXPECT_EQ(all[3].str(), "B");
  EXPECT_EQ(enumerate_classes(testing::torus(), 1, ClassFilter::simple), all);

  const auto np = enumerate_classes(testing::pants(), 2, ClassFilter::nonperipheral);
  for (const char* excluded : {"a", "A", "b", "B", "ab", "AB"}) {
    EXPECT_EQ(std::count(np.begin(), np.end(), cls(excluded)), 0) << excluded;
  }
  EXPECT_EQ(std::count(np.begin(), np.end(), cls("aB")), 1);
  EXPECT_EQ(std::count(np.begin(), np.end(), cls("Ab")), 1);
  // aa and bb are powers of boundary cycles; AA, BB, too.
  EXPECT_EQ(np.size(), 2U);
  EXPECT_THROW(enumerate_classes(testing::torus(), 0, ClassFilter::all),
               PreconditionError);
}

TEST(EnumerateClasses, SortedAndThreadIndependent) {
  const auto one = enumerate_classes(testing::torus(), 6, ClassFilter::simple, 1);
  const auto four = enumerate_classes(testing::torus(), 6, ClassFilter::simple, 4);
  EXPECT_EQ(one, four);
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end()));
}

TEST(AuditBracket, FlagshipIsViolating) {
  const BracketAudit r = audit_bracket(flagship(), 2);
  EXPECT_EQ(r.verdict, Verdict::violating);
  ASSERT_FALSE(r.certificates.empty());
  EXPECT_LE(r.certificates.size(), kMaxCertificates);
  const auto& c = r.certificates.front();
  EXPECT_EQ(c.x, cls("a"));
  EXPECT_EQ(c.y, cls("b"));
  EXPECT_EQ(c.source_side.str(), "+1*ab");
  EXPECT_TRUE(c.target_side.is_zero());
  EXPECT_EQ(exit_status(r.verdict), 3);
}

TEST(AuditBracket, TwistsPreserveSwapReverses) {
  EXPECT_EQ(audit_bracket(torus_map({"ab", "b"}), 4).verdict, Verdict::preserving);
  EXPECT_EQ(audit_bracket(torus_map({"a", "ba"}), 4).verdict, Verdict::preserving);
  const BracketAudit swap = audit_bracket(torus_map({"b", "a"}), 4);
  EXPECT_EQ(swap.verdict, Verdict::anti_preserving);
  EXPECT_TRUE(swap.certificates.empty());
  EXPECT_EQ(exit_status(swap.verdict), 2);
}

TEST(AuditBracket, ExcludedTargetRejected) {
  const SurfaceMap m = make_map(testing::pants(), SurfaceSymbol::parse_order("aA"),
                                {"a", "A"});
  try {
    audit_bracket(m, 2);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("plane or the cylinder"), std::string::npos);
  }
  EXPECT_THROW(audit_intersection(m, 2, IntersectionMode::exact), PreconditionError);
}

TEST(AuditBracket, AllZeroSampleIsPreserving) {
  // Every bracket on the pants between length-1 classes vanishes, so no
  // sign can be observed.
  const SurfaceMap m = make_map(testing::pants(), testing::pants(), {"b", "a"});
  EXPECT_EQ(audit_bracket(m, 1).verdict, Verdict::preserving);
}

TEST(AuditIntersection, Flagship) {
  const IntersectionAudit r =
      audit_intersection(flagship(), 2, IntersectionMode::zero_pattern);
  EXPECT_EQ(r.verdict, Verdict::violating);
  ASSERT_FALSE(r.certificates.empty());
  EXPECT_EQ(r.certificates.front().x, cls("a"));
  EXPECT_EQ(r.certificates.front().y, cls("b"));
  EXPECT_EQ(r.certificates.front().source_side, 1);
  EXPECT_EQ(r.certificates.front().target_side, 0);
}

TEST(AuditIntersection, TwistPreservesExactly) {
  const IntersectionAudit r =
      audit_intersection(torus_map({"ab", "b"}), 4, IntersectionMode::exact);
  EXPECT_EQ(r.verdict, Verdict::preserving);
  EXPECT_GT(r.pairs_checked, 0U);
  EXPECT_GT(r.pairs_skipped, 0U);
}

TEST(AuditIntersection, IdentityAlwaysPreserves) {
  for (const auto& s : {testing::torus(), testing::pants(),
                        testing::torus_two_holes()}) {
    const SurfaceMap id = SurfaceMap::identity(s, s);
    EXPECT_EQ(audit_intersection(id, 3, IntersectionMode::exact).verdict,
              Verdict::preserving);
    EXPECT_EQ(audit_intersection(id, 3, IntersectionMode::zero_pattern).verdict,
              Verdict::preserving);
    EXPECT_EQ(audit_bracket(id, 3).verdict, Verdict::preserving);
  }
}

// Products of the generators of the homeomorphism-induced corpus.
std::vector<std::vector<Word>> nielsen_corpus() {
  const std::vector<std::vector<Word>> moves{
      {parse_word("ab"), parse_word("b")},
      {parse_word("a"), parse_word("ba")},
      {parse_word("A"), parse_word("B")}};
  std::vector<std::vector<Word>> out = moves;
  for (const auto& f : moves) {
    for (const auto& g : moves) {
      const SurfaceMap mf(testing::torus(), testing::torus(), f);
      std::vector<Word> fg;
      for (const Word& img : g) fg.push_back(apply_map(mf, img));
      out.push_back(fg);
    }
  }
  return out;
}

TEST(Soundness, HomeomorphismsNeverViolate) {
  for (const auto& images : nielsen_corpus()) {
    const SurfaceMap m(testing::torus(), testing::torus(), images);
    const BracketAudit r = audit_bracket(m, 4);
    EXPECT_NE(r.verdict, Verdict::violating)
        << to_string(images[0]) << "," << to_string(images[1]);
  }
}

std::vector<SurfaceMap> consistency_maps() {
  std::vector<SurfaceMap> maps{flagship(), torus_map({"ab", "b"}),
                               torus_map({"b", "a"}), torus_map({"aa", "b"}),
                               torus_map({"ab", "ba"}),
                               make_map(testing::pants(), testing::torus(), {"a", "b"}),
                               make_map(testing::pants(), testing::pants(), {"B", "A"})};
  std::mt19937_64 rng(41);
  for (int t = 0; t < 6; ++t) {
    maps.push_back(make_map(testing::torus(), testing::torus(), {"a", "b"}));
    maps.back().images = {testing::random_reduced_word(rng, 2, 1 + t % 3),
                          testing::random_reduced_word(rng, 2, 1 + t % 2)};
  }
  return maps;
}

TEST(Consistency, BracketPreservingImpliesZeroPatternPreserving) {
  for (const SurfaceMap& m : consistency_maps()) {
    if (audit_bracket(m, 3).verdict == Verdict::preserving) {
      EXPECT_EQ(audit_intersection(m, 3, IntersectionMode::zero_pattern).verdict,
                Verdict::preserving);
    }
  }
}

TEST(Monotonicity, ViolationsPersistAtLargerBounds) {
  for (const SurfaceMap& m : consistency_maps()) {
    bool seen = false;
    for (std::size_t len = 1; len <= 4; ++len) {
      const bool violating = audit_bracket(m, len).verdict == Verdict::violating;
      if (seen) {
        EXPECT_TRUE(violating) << "L=" << len;
      }
      seen = seen || violating;
    }
  }
}

TEST(Certificates, ReverifyFromScratch) {
  for (const SurfaceMap& m : consistency_maps()) {
    for (const auto& c : audit_bracket(m, 3).certificates) {
      EXPECT_TRUE(verify_certificate(m, c));
      auto tampered = c;
      tampered.target_side += BracketElement(cls("a"));
      EXPECT_FALSE(verify_certificate(m, tampered));
    }
    for (const auto& c :
         audit_intersection(m, 3, IntersectionMode::exact).certificates) {
      EXPECT_TRUE(verify_certificate(m, c));
      auto tampered = c;
      ++tampered.source_side;
      EXPECT_FALSE(verify_certificate(m, tampered));
    }
  }
}

TEST(Sampling, SeededAndThreadIndependent) {
  const SurfaceMap m = flagship();
  const auto a = audit_bracket(m, 4, Sample::random(200, 7), 1);
  const auto b = audit_bracket(m, 4, Sample::random(200, 7), 4);
  EXPECT_EQ(a.pairs_checked, 200U);
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_EQ(a.certificates.size(), b.certificates.size());
  for (std::size_t k = 0; k < a.certificates.size(); ++k) {
    EXPECT_EQ(a.certificates[k].x, b.certificates[k].x);
    EXPECT_EQ(a.certificates[k].y, b.certificates[k].y);
  }
  const auto c = audit_bracket(m, 4, Sample::random(200, 8), 1);
  bool differs = c.certificates.size() != a.certificates.size();
  for (std::size_t k = 0; !differs && k < a.certificates.size(); ++k) {
    differs = a.certificates[k].x != c.certificates[k].x ||
              a.certificates[k].y != c.certificates[k].y;
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(Sample::random(5, 3).describe(), "random 5 pairs, seed 3");
}

TEST(FillCheck, Examples) {
  const SurfaceSymbol t = testing::torus();
  EXPECT_TRUE(fill_check(t, {cls("a"), cls("b")}, 6).pass);

  const FillReport single = fill_check(t, {cls("a")}, 4);
  ASSERT_FALSE(single.pass);
  ASSERT_TRUE(single.counterexample.has_value());
  EXPECT_EQ(*single.counterexample, cls("a"));
  EXPECT_FALSE(is_peripheral(t, *single.counterexample));
  EXPECT_EQ(linked_count(t, *single.counterexample, cls("a")), 0U);

  EXPECT_TRUE(fill_check(testing::pants(), {cls("aB")}, 6).pass);
  EXPECT_THROW(fill_check(t, {CyclicClass{}}, 3), PreconditionError);
}

TEST(FillCheck, GeneratorSystems) {
  EXPECT_TRUE(fill_check(testing::torus(), {cls("a"), cls("b")}, 6).pass);
  EXPECT_TRUE(
      fill_check(testing::torus_two_holes(), {cls("a"), cls("b"), cls("c")}, 6).pass);
  // On the pants both generators are boundary curves, so they cannot fill:
  // the figure-eight misses both.
  const FillReport pants = fill_check(testing::pants(), {cls("a"), cls("b")}, 6);
  EXPECT_FALSE(pants.pass);
  EXPECT_EQ(pants.counterexample, cls("aB"));
}

TEST(MapFile, LoadsBundledMaps) {
  const SurfaceMap m = load_map(testing::data_path("torus_to_pants.map"));
  EXPECT_EQ(m.source, testing::torus());
  EXPECT_EQ(m.target, testing::pants());
  EXPECT_TRUE(m.expect_equivalence);
  EXPECT_EQ(to_string(m.images[0]), "a");
  const SurfaceMap twist = load_map(testing::data_path("twist_a.map"));
  EXPECT_EQ(to_string(twist.images[0]), "ab");
}

TEST(MapFile, Errors) {
  const std::filesystem::path dir = GOLDMAN_DATA_DIR;
  auto expect_error = [&](const char* text, std::size_t line) {
    try {
      parse_map(text, dir);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text << ": " << e.what();
    }
  };
  expect_error("source torus1.srf\ntarget pants.srf\nmap a -> a\n", 4);
  expect_error("source torus1.srf\ntarget pants.srf\nmap a => a\nmap b -> b\n", 3);
  expect_error("source torus1.srf\ntarget pants.srf\nmap a -> c\nmap b -> b\n", 3);
  expect_error("source torus1.srf\ntarget pants.srf\nmap A -> a\n", 3);
  expect_error("source missing.srf\n", 1);
  expect_error("target pants.srf\n", 2);
  expect_error("source torus1.srf\ntarget pants.srf\nfoo\n", 3);
  expect_error("source torus1.srf\ntarget pants.srf\nmap c -> a\n", 3);
  expect_error("source torus1.srf\ntarget pants.srf\nexpect_equivalence maybe\n", 3);
}

}  // namespace
}  // namespace goldman::audit
