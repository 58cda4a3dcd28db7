#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "nilaw/catalog.hpp"
#include "nilaw/lemma.hpp"
#include "oracle.hpp"

using namespace nilaw;

namespace {
constexpr uint64_t kAllTwelve = 0xFFF;
}

TEST_CASE("canonical pattern rows") {
  TranslationPattern p = TranslationPattern::canonical_right();
  REQUIRE(p.rows.size() == 12);
  CHECK(p.arity == 3);
  CHECK(p.is_canonical_right());
  CHECK_FALSE(TranslationPattern::canonical_left().is_canonical_right());

  auto conditions = render_conditions(p);
  std::vector<std::string> expected_conditions = {
      "[x1, x2, x3]",        "[x1 g1, x2 g2, x3 g3]", "[x1 g1, x2 g2, x3]",
      "[x1 g1, x2, x3 g2]",  "[x1 g1, x2, x3]",       "[x1 g1, x2, x3 g3]",
      "[x1, x2, x3 g1]",     "[x1, x2 g2, x3 g1]",    "[x1, x2 g2, x3]",
      "[x1, x2, x3 g2]",     "[x1, x2 g2, x3 g3]",    "[x1, x2, x3 g3]",
  };
  CHECK(conditions == expected_conditions);

  auto translates = render_translate_vectors(p);
  std::vector<std::string> expected_translates = {
      "(g1^-1, g2^-1, g3^-1)", "(g1^-1, g2^-1, 1)", "(g1^-1, 1, g2^-1)", "(g1^-1, 1, 1)",
      "(g1^-1, 1, g3^-1)",     "(1, 1, g1^-1)",     "(1, g2^-1, g1^-1)", "(1, g2^-1, 1)",
      "(1, 1, g2^-1)",         "(1, g2^-1, g3^-1)", "(1, 1, g3^-1)",
  };
  CHECK(translates == expected_translates);

  // left side renders with the translation on the left
  auto left = render_conditions(TranslationPattern::canonical_left());
  CHECK(left[1] == "[g1 x1, g2 x2, g3 x3]");
}

TEST_CASE("pattern file round-trip and validation") {
  TranslationPattern p = TranslationPattern::canonical_right();
  CHECK(TranslationPattern::parse(p.serialize()) == p);
  TranslationPattern l = TranslationPattern::canonical_left();
  CHECK(TranslationPattern::parse(l.serialize()) == l);
  TranslationPattern p4 = TranslationPattern::default_arity4();
  CHECK(p4.rows.size() == 40);
  CHECK(p4.rows[0] == std::array<int, 4>{0, 0, 0, 0});
  CHECK(TranslationPattern::parse(p4.serialize()) == p4);

  CHECK_THROWS_WITH_AS(TranslationPattern::parse("0 0 0\n"), doctest::Contains("side"), Error);
  CHECK_THROWS_WITH_AS(TranslationPattern::parse("side=right\n0 0 0\n1 2\n"),
                       doctest::Contains("inconsistent"), Error);
  CHECK_THROWS_WITH_AS(TranslationPattern::parse("side=right\n1 0 0\n"),
                       doctest::Contains("all-zero"), Error);
  CHECK_THROWS_WITH_AS(TranslationPattern::parse("side=right\n0 0 0\n0 0 7\n"),
                       doctest::Contains("out of range"), Error);
}

TEST_CASE("premise mask agrees with the oracle and known instances") {
  Group s3 = build_group("S3");
  TranslationPattern p = TranslationPattern::canonical_right();

  // x = (e,e,e), g = ((12),(13),e): every condition degenerates to a
  // commutator with an identity coordinate
  std::array<element_t, 3> x{0, 0, 0};
  std::array<element_t, 3> g{2, 5, 0};
  uint64_t mask = premise_mask(s3, p, x, g);
  CHECK((mask & 1) != 0);  // the untranslated row
  CHECK(mask == oracle::premise_mask(s3, p, x, g));
  CHECK(mask == kAllTwelve);
  CHECK(premises_hold(s3, p, x, g));

  // abelian group: every instance satisfies every row
  Group c6 = build_group("C6");
  for (element_t a = 0; a < 6; ++a) {
    std::array<element_t, 3> xs{a, element_t((a + 1) % 6), element_t((a + 2) % 6)};
    std::array<element_t, 3> gs{element_t((5 * a) % 6), a, element_t((a + 3) % 6)};
    CHECK(premise_mask(c6, p, xs, gs) == kAllTwelve);
  }

  // random S3 instances: staged evaluation equals the plain oracle
  for (element_t i = 0; i < 6; ++i)
    for (element_t j = 0; j < 6; ++j) {
      std::array<element_t, 3> xs{i, j, element_t((i + j) % 6)};
      std::array<element_t, 3> gs{j, i, element_t((2 * i + j) % 6)};
      CHECK(premise_mask(s3, p, xs, gs) == oracle::premise_mask(s3, p, xs, gs));
    }
}

TEST_CASE("conclusion evaluation") {
  Group s3 = build_group("S3");
  std::array<element_t, 3> all_id{0, 0, 0};
  CHECK(conclusion_holds(s3, all_id));
  std::array<element_t, 3> repeated{2, 2, 5};  // [g,g] = 1
  CHECK(conclusion_holds(s3, repeated));
  std::array<element_t, 3> probe{2, 5, 2};
  CHECK(conclusion_holds(s3, probe) == (s3.comm(s3.comm(2, 5), 2) == 0));
}

TEST_CASE("exhaustive verification: trivial group") {
  SweepReport rep = verify_lemma_exhaustive(build_group("C1"),
                                            TranslationPattern::canonical_right());
  CHECK(rep.tuples_scanned == 1);
  CHECK(rep.premise_count == 1);
  CHECK(rep.violations_total == 0);
  CHECK_FALSE(rep.vacuous);
}

TEST_CASE("exhaustive verification: no violations on S3, D4, C6") {
  for (const char* spec : {"S3", "D4", "C6"}) {
    Group g = build_group(spec);
    SweepReport rep = verify_lemma_exhaustive(g, TranslationPattern::canonical_right());
    uint64_t expected = 1;
    for (int i = 0; i < 6; ++i) expected *= uint64_t(g.order());
    CHECK(rep.tuples_scanned == expected);
    CHECK(rep.violations_total == 0);
    CHECK(rep.premise_count > 0);
  }
}

TEST_CASE("exhaustive premise count matches the per-instance public op on S3") {
  Group s3 = build_group("S3");
  TranslationPattern p = TranslationPattern::canonical_right();
  SweepReport rep = verify_lemma_exhaustive(s3, p);

  uint64_t manual = 0;
  std::array<element_t, 3> x, g;
  for (x[0] = 0; x[0] < 6; ++x[0])
    for (x[1] = 0; x[1] < 6; ++x[1])
      for (x[2] = 0; x[2] < 6; ++x[2])
        for (g[0] = 0; g[0] < 6; ++g[0])
          for (g[1] = 0; g[1] < 6; ++g[1])
            for (g[2] = 0; g[2] < 6; ++g[2])
              if (premises_hold(s3, p, x, g)) ++manual;
  CHECK(rep.premise_count == manual);

  // worker counts do not change the report
  SweepReport rep8 = verify_lemma_exhaustive(s3, p, kDefaultSweepBudget, 8);
  CHECK(rep8.premise_count == rep.premise_count);
  CHECK(rep8.tuples_scanned == rep.tuples_scanned);
  CHECK(rep8.violations_total == rep.violations_total);
}

TEST_CASE("exhaustive verification respects the budget") {
  Group s4 = build_group("S4");  // 24^6 instances exceed the default budget
  CHECK_THROWS_WITH_AS(verify_lemma_exhaustive(s4, TranslationPattern::canonical_right()),
                       doctest::Contains("budget"), Error);
}

TEST_CASE("randomized verification") {
  Group c6 = build_group("C6");
  TranslationPattern p = TranslationPattern::canonical_right();
  SweepReport rep = verify_lemma_randomized(c6, p, 1000, 99);
  CHECK(rep.tuples_scanned == 1000);
  CHECK(rep.premise_count == 1000);  // abelian: premise-hit rate 1.0
  CHECK(rep.violations_total == 0);

  Group s4 = build_group("S4");
  SweepReport s4_rep = verify_lemma_randomized(s4, p, 100000, 7);
  CHECK(s4_rep.violations_total == 0);
  CHECK(s4_rep.premise_count > 0);

  SweepReport again = verify_lemma_randomized(s4, p, 100000, 7, 8);
  CHECK(again.premise_count == s4_rep.premise_count);

  CHECK_THROWS_AS(verify_lemma_randomized(c6, p, 0, 1), Error);
}

TEST_CASE("violations are reported with an independent transcript") {
  // a deliberately weak pattern (only the untranslated row) produces plenty
  // of conclusion failures on S3 and exercises the counterexample machinery
  TranslationPattern weak;
  weak.side = TranslationPattern::Side::kRight;
  weak.arity = 3;
  weak.rows = {{0, 0, 0, 0}};
  Group s3 = build_group("S3");
  SweepReport rep = verify_lemma_exhaustive(s3, weak);
  CHECK(rep.violations_total > 0);
  CHECK(rep.violations.size() <= size_t(kMaxViolationsKept));
  REQUIRE_FALSE(rep.violations.empty());
  const Counterexample& ce = rep.violations.front();
  CHECK(ce.conclusion_value != 0);
  CHECK(ce.transcript.size() == 2);  // one row + the conclusion line
  CHECK(ce.group_name == "S3");
  // the premise really holds and the conclusion really fails
  CHECK(oracle::premise_mask(s3, weak, ce.x, ce.g) == 1);
  CHECK(s3.comm(s3.comm(ce.g[0], ce.g[1]), ce.g[2]) == ce.conclusion_value);
}

TEST_CASE("left-version search on small groups") {
  // abelian and class-2 groups cannot produce counterexamples: the
  // conclusion is a law there
  for (const char* spec : {"C6", "Q8", "D4"}) {
    SearchOutcome out = search_left_version(build_group(spec));
    CHECK(out.sweep.exhaustive);
    CHECK_FALSE(out.found.has_value());
    CHECK(out.certificate.find("exhausted") != std::string::npos);
  }

  // S3: the run itself is the oracle; record whatever it finds, but any hit
  // must re-verify under the independent path
  Group s3 = build_group("S3");
  SearchOutcome out = search_left_version(s3);
  CHECK(out.sweep.exhaustive);
  CHECK(out.sweep.tuples_scanned == 46656);
  if (out.found) {
    const Counterexample& ce = *out.found;
    TranslationPattern left = TranslationPattern::canonical_left();
    CHECK(oracle::premise_mask(s3, left, ce.x, ce.g) == kAllTwelve);
    CHECK(ce.conclusion_value != 0);
  } else {
    CHECK_FALSE(out.certificate.empty());
  }
}

TEST_CASE("search falls back to sampling and then requires a seed") {
  Group s4 = build_group("S4");
  CHECK_THROWS_WITH_AS(search_left_version(s4), doctest::Contains("seed"), Error);

  SearchOutcome out = search_left_version(s4, kDefaultSweepBudget, 4242, 20000);
  CHECK_FALSE(out.sweep.exhaustive);
  CHECK(out.used_seed);
  CHECK(out.sweep.tuples_scanned == 20000);
  if (!out.found) CHECK(out.certificate.find("not exhaustive") != std::string::npos);
}

TEST_CASE("length-4 search") {
  TranslationPattern p4 = TranslationPattern::default_arity4();

  SearchOutcome abelian = search_length4(build_group("C2"), p4);
  CHECK(abelian.sweep.exhaustive);
  CHECK_FALSE(abelian.found.has_value());

  // class-3 group: the length-4 conclusion is a law, so no hit is possible
  Group d8 = build_group("D8");
  SearchOutcome d8_out = search_length4(d8, p4, kDefaultSweepBudget, 77, 20000);
  CHECK_FALSE(d8_out.sweep.exhaustive);
  CHECK_FALSE(d8_out.found.has_value());

  Group s4 = build_group("S4");
  SearchOutcome s4_out = search_length4(s4, p4, kDefaultSweepBudget, 99, 50000);
  if (s4_out.found) {
    CHECK(oracle::premise_mask(s4, p4, s4_out.found->x, s4_out.found->g) ==
          (uint64_t(1) << p4.rows.size()) - 1);
    CHECK(s4_out.found->conclusion_value != 0);
  }

  CHECK_THROWS_AS(search_length4(s4, TranslationPattern::canonical_right()), Error);
}

TEST_CASE("proof-step identities hold exhaustively on small groups") {
  for (const char* spec : {"C6", "S3", "Q8", "D4"}) {
    Group g = build_group(spec);
    IdentityReport rep = proof_step_identities(g);
    CHECK(rep.failures == 0);
    uint64_t n = uint64_t(g.order());
    CHECK(rep.expansion_checks == 2 * n * n * n);
    // chain instances are exactly the premise-satisfying instances
    SweepReport sweep = verify_lemma_exhaustive(g, TranslationPattern::canonical_right());
    CHECK(rep.chain_instances == sweep.premise_count);
  }
  CHECK_THROWS_WITH_AS(proof_step_identities(build_group("heisenberg(3)")),
                       doctest::Contains("24"), Error);
}
