#include <gtest/gtest.h>

#include "splearn/recogniser.hpp"
#include "support/fixtures.hpp"

using namespace splearn;

namespace {

Elem named(const Recogniser& r, const std::string& name) {
  return *r.bimonoid().find(name);
}

}  // namespace

TEST(Eval, LoopExamples) {
  Recogniser loop = fixtures::loop_recogniser();
  EXPECT_EQ(eval(loop, Pomset::parse("(a|b).(a|b)")), named(loop, "q1"));
  EXPECT_EQ(eval(loop, Pomset::empty()), loop.unit());
  EXPECT_EQ(eval(loop, Pomset::parse("a")), named(loop, "qa"));
}

TEST(Eval, NestedExample) {
  Recogniser nested = fixtures::nested_recogniser();
  EXPECT_EQ(eval(nested, Pomset::parse("a.(b|b)")), named(nested, "qb"));
}

TEST(Eval, UnknownLetter) {
  Recogniser loop = fixtures::loop_recogniser();
  EXPECT_THROW(eval(loop, Pomset::parse("z")), UnknownLetterError);
}

TEST(Accepts, Examples) {
  Recogniser loop = fixtures::loop_recogniser();
  EXPECT_TRUE(accepts(loop, Pomset::empty()));
  EXPECT_FALSE(accepts(loop, Pomset::parse("a")));
  EXPECT_TRUE(accepts(fixtures::nested_recogniser(), Pomset::parse("b")));
}

TEST(Eval, IsAHomomorphism) {
  for (const Recogniser& r : {fixtures::loop_recogniser(), fixtures::nested_recogniser()}) {
    std::vector<Pomset> all = enumerate_pomsets(r.alphabet(), 4);
    EXPECT_EQ(eval(r, Pomset::empty()), r.unit());
    for (const Pomset& u : all) {
      for (const Pomset& v : all) {
        if (u.node_count() + v.node_count() > 4) continue;
        EXPECT_EQ(eval(r, seq(u, v)), r.bimonoid().seq(eval(r, u), eval(r, v)));
        EXPECT_EQ(eval(r, par(u, v)), r.bimonoid().par(eval(r, u), eval(r, v)));
      }
    }
  }
}

TEST(Eval, EqualValuesStayEqualUnderContexts) {
  Recogniser loop = fixtures::loop_recogniser();
  std::vector<Pomset> all = enumerate_pomsets(loop.alphabet(), 3);
  std::vector<Context> contexts = fixtures::enumerate_contexts(loop.alphabet(), 2);
  for (const Pomset& u : all) {
    for (const Pomset& v : all) {
      if (eval(loop, u) != eval(loop, v)) continue;
      for (const Context& c : contexts) {
        EXPECT_EQ(eval(loop, plug(c, u)), eval(loop, plug(c, v)));
      }
    }
  }
}

TEST(Reachable, LoopWitnesses) {
  Recogniser loop = fixtures::loop_recogniser();
  std::map<Elem, Pomset> witness = reachable(loop);
  ASSERT_EQ(witness.size(), 5u);
  EXPECT_EQ(witness.at(named(loop, "q1")), Pomset::parse("a|b"));
  EXPECT_EQ(eval(loop, witness.at(named(loop, "q1"))), named(loop, "q1"));
  EXPECT_EQ(witness.at(loop.unit()), Pomset::empty());
  EXPECT_EQ(witness.at(named(loop, "qbot")), Pomset::parse("a.a"));
  for (const auto& [element, pomset] : witness) {
    EXPECT_EQ(eval(loop, pomset), element);
  }
}

TEST(Reachable, JunkElementIsAbsent) {
  Recogniser junked = fixtures::loop_with_junk();
  std::map<Elem, Pomset> witness = reachable(junked);
  EXPECT_EQ(witness.size(), 5u);
  EXPECT_FALSE(witness.count(named(junked, "junk")));
}

TEST(Reachable, NestedQ1Witness) {
  Recogniser nested = fixtures::nested_recogniser();
  std::map<Elem, Pomset> witness = reachable(nested);
  EXPECT_EQ(witness.at(named(nested, "q1")), Pomset::parse("b|b"));
  EXPECT_EQ(eval(nested, Pomset::parse("b|b")), named(nested, "q1"));
}

TEST(Equivalence, ReflexiveAndAlphabetChecked) {
  Recogniser loop = fixtures::loop_recogniser();
  EXPECT_TRUE(equivalence(loop, loop).equal);
  Recogniser other = fixtures::trivial_recogniser(Alphabet({"a"}), false);
  EXPECT_THROW(equivalence(loop, other), AlphabetMismatchError);
}

TEST(Equivalence, RestrictedAcceptingSetGivesMinimalCounterexample) {
  Recogniser loop = fixtures::loop_recogniser();
  std::vector<bool> accepting(loop.size(), false);
  accepting[loop.unit()] = true;  // F = {1}
  Recogniser restricted(loop.bimonoid(), loop.alphabet(),
                        {named(loop, "qa"), named(loop, "qb")}, accepting);
  EquivalenceOutcome outcome = equivalence(loop, restricted);
  ASSERT_FALSE(outcome.equal);
  EXPECT_EQ(*outcome.counterexample, Pomset::parse("a|b"));
  // Cross-check minimality against bounded enumeration.
  for (const Pomset& u : enumerate_pomsets(loop.alphabet(), 2)) {
    if (u < *outcome.counterexample) {
      EXPECT_EQ(accepts(loop, u), accepts(restricted, u));
    }
  }
}

TEST(Equivalence, LoopVersusNested) {
  EquivalenceOutcome outcome =
      equivalence(fixtures::loop_recogniser(), fixtures::nested_recogniser());
  ASSERT_FALSE(outcome.equal);
  EXPECT_EQ(*outcome.counterexample, Pomset::empty());
  EXPECT_TRUE(accepts(fixtures::loop_recogniser(), Pomset::empty()));
  EXPECT_FALSE(accepts(fixtures::nested_recogniser(), Pomset::empty()));
}

TEST(Equivalence, AgreesWithBoundedEnumeration) {
  Recogniser loop = fixtures::loop_recogniser();
  Recogniser nested = fixtures::nested_recogniser();
  auto check_pair = [&](const Recogniser& r1, const Recogniser& r2) {
    EquivalenceOutcome outcome = equivalence(r1, r2);
    bool agree_to_five = true;
    for (const Pomset& u : enumerate_pomsets(r1.alphabet(), 5)) {
      if (accepts(r1, u) != accepts(r2, u)) agree_to_five = false;
    }
    if (outcome.equal) {
      EXPECT_TRUE(agree_to_five);
    } else {
      EXPECT_NE(accepts(r1, *outcome.counterexample),
                accepts(r2, *outcome.counterexample));
    }
  };
  check_pair(loop, loop);
  check_pair(loop, nested);
  check_pair(nested, fixtures::trivial_recogniser(nested.alphabet(), false));
}

TEST(Minimize, LoopIsAlreadyMinimal) {
  Recogniser loop = fixtures::loop_recogniser();
  Recogniser minimal = minimize(loop);
  EXPECT_EQ(minimal.size(), 5u);
  EXPECT_TRUE(equivalence(minimal, loop).equal);
  EXPECT_TRUE(is_minimal(minimal).minimal);
}

TEST(Minimize, DropsUnreachableJunk) {
  Recogniser junked = fixtures::loop_with_junk();
  Recogniser minimal = minimize(junked);
  EXPECT_EQ(minimal.size(), 5u);
  EXPECT_FALSE(minimal.bimonoid().find("junk").has_value());
  EXPECT_TRUE(equivalence(minimal, junked).equal);
}

TEST(Minimize, SelfProductWithDiagonalAcceptance) {
  Recogniser loop = fixtures::loop_recogniser();
  Recogniser product = fixtures::product_recogniser(
      loop, loop, [&](Elem x, Elem y) { return x == y && loop.accepting(x); });
  Recogniser minimal = minimize(product);
  EXPECT_EQ(minimal.size(), minimize(loop).size());
  EXPECT_TRUE(equivalence(minimal, loop).equal);
}

TEST(Minimize, IdempotentAndSizeBounded) {
  for (const Recogniser& r :
       {fixtures::loop_recogniser(), fixtures::nested_recogniser(),
        fixtures::loop_with_junk()}) {
    Recogniser once = minimize(r);
    EXPECT_LE(once.size(), r.size());
    Recogniser twice = minimize(once);
    EXPECT_EQ(twice.size(), once.size());
    EXPECT_TRUE(equivalence(once, twice).equal);
  }
}

TEST(IsMinimal, LoopAndTrivial) {
  EXPECT_TRUE(is_minimal(fixtures::loop_recogniser()).minimal);
  EXPECT_TRUE(is_minimal(fixtures::trivial_recogniser(Alphabet({"a"}), false)).minimal);
}

TEST(IsMinimal, DetectsDuplicatedElement) {
  // Split qbot into two interchangeable absorbing copies.
  std::vector<std::string> names{"1", "qa", "qb", "q1", "qbot", "qbot2"};
  auto is_bot = [](const std::string& x) { return x == "qbot" || x == "qbot2"; };
  auto seq_op = [&](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "q1" && y == "q1") return "q1";
    return is_bot(x) && x == y ? x : "qbot";
  };
  auto par_op = [&](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if ((x == "qa" && y == "qb") || (x == "qb" && y == "qa")) return "q1";
    return is_bot(x) && x == y ? x : "qbot";
  };
  Bimonoid b = fixtures::table_bimonoid(names, "1", seq_op, par_op);
  std::vector<bool> accepting(b.size(), false);
  accepting[*b.find("1")] = true;
  accepting[*b.find("q1")] = true;
  Recogniser r(std::move(b), Alphabet({"a", "b"}), {1, 2}, accepting);
  ASSERT_TRUE(validate_axioms(r.bimonoid()).ok);

  MinimalityReport report = is_minimal(r);
  EXPECT_FALSE(report.minimal);
  if (report.unreachable) {
    EXPECT_EQ(r.bimonoid().name(*report.unreachable), "qbot2");
  } else {
    ASSERT_TRUE(report.indistinct.has_value());
    EXPECT_EQ(r.bimonoid().name(report.indistinct->first), "qbot");
    EXPECT_EQ(r.bimonoid().name(report.indistinct->second), "qbot2");
  }
}
