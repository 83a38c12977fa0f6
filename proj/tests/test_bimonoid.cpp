#include <gtest/gtest.h>

#include "splearn/bimonoid.hpp"
#include "support/fixtures.hpp"

using namespace splearn;

TEST(Bimonoid, PaperStructuresSatisfyTheAxioms) {
  EXPECT_TRUE(validate_axioms(fixtures::loop_recogniser().bimonoid()).ok);
  EXPECT_TRUE(validate_axioms(fixtures::nested_recogniser().bimonoid()).ok);
}

TEST(Bimonoid, OneElementBimonoidIsValid) {
  Bimonoid b({"1"}, 0, {{0}}, {{0}});
  EXPECT_TRUE(validate_axioms(b).ok);
}

TEST(Bimonoid, RedirectedParCellBreaksCommutativity) {
  // qa ⊛ qb redirected to qbot while qb ⊛ qa stays q1.
  std::vector<std::string> names{"1", "qa", "qb", "q1", "qbot"};
  auto seq_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "q1" && y == "q1") return "q1";
    return "qbot";
  };
  auto par_op = [](const std::string& x, const std::string& y) -> std::string {
    if (y == "1") return x;
    if (x == "1") return y;
    if (x == "qa" && y == "qb") return "qbot";
    if (x == "qb" && y == "qa") return "q1";
    return "qbot";
  };
  Bimonoid b = fixtures::table_bimonoid(names, "1", seq_op, par_op);
  AxiomReport report = validate_axioms(b);
  ASSERT_FALSE(report.ok);
  bool found = false;
  for (const auto& violation : report.violations) {
    if (violation.law == "par-commutativity") {
      found = true;
      EXPECT_EQ(b.name(violation.witness[0]), "qa");
      EXPECT_EQ(b.name(violation.witness[1]), "qb");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Bimonoid, ShapeErrorsAreRejectedAtConstruction) {
  EXPECT_THROW(Bimonoid({}, 0, {}, {}), InvalidBimonoidError);
  EXPECT_THROW(Bimonoid({"1"}, 1, {{0}}, {{0}}), InvalidBimonoidError);
  EXPECT_THROW(Bimonoid({"1"}, 0, {{0, 0}}, {{0}}), InvalidBimonoidError);
  EXPECT_THROW(Bimonoid({"1"}, 0, {{1}}, {{0}}), InvalidBimonoidError);
}
