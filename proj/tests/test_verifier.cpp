#include <gtest/gtest.h>

#include "kahler/verifier.hpp"

using namespace kahler;
using G = GaussianRational;

namespace {

const Verifier<G>& verifier(const std::string& model) {
  static std::map<std::string, std::unique_ptr<Verifier<G>>> cache;
  auto& slot = cache[model];
  if (!slot) slot = std::make_unique<Verifier<G>>(models::builtin(model));
  return *slot;
}

const IdentityEntry& entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw std::out_of_range(id);
}

IdentityEntry adhoc(const std::string& lhs, const std::string& rhs, std::vector<std::string> guards = {}) {
  IdentityEntry e;
  e.id = "adhoc";
  e.statement = lhs + " = " + rhs;
  e.lhs = lhs;
  e.rhs = rhs;
  e.guards = std::move(guards);
  return e;
}

}  // namespace

TEST(Verify, MainTheoremOnNil6IsExercised) {
  auto r = verifier("nil6").verify(entry("main1.dL"));
  EXPECT_EQ(r.status, EntryStatus::pass);
  EXPECT_EQ(r.guard, GuardStatus::exercised);
  EXPECT_EQ(r.residual, "0");
  for (const char* id : {"main1.dstarL", "main2.tauL", "main2.tauLambda", "clif.master"}) {
    auto x = verifier("nil6").verify(entry(id));
    EXPECT_EQ(x.status, EntryStatus::pass) << id;
    EXPECT_EQ(x.guard, GuardStatus::exercised) << id;
  }
}

TEST(Verify, AbelianEntriesAreVacuous) {
  auto r = verifier("t4").verify(entry("main1.dL"));
  EXPECT_EQ(r.status, EntryStatus::pass);
  EXPECT_EQ(r.guard, GuardStatus::vacuous);
  auto rep = verifier("t4").run();
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.count(GuardStatus::vacuous), rep.count(GuardStatus::exercised));
}

TEST(Verify, AlmostKahlerEntriesOnKt4) {
  for (const char* id : {"ak.del_Lambda", "ak.mu_Lambda", "ak.del_L", "ak.mu_L", "ak.tau_zero"}) {
    auto r = verifier("kt4").verify(entry(id));
    EXPECT_EQ(r.status, EntryStatus::pass) << id;
    EXPECT_EQ(r.guard, GuardStatus::exercised) << id;
  }
}

TEST(Verify, AlmostKahlerEntriesAreInapplicableWhenOmegaIsNotClosed) {
  auto r = verifier("nil6").verify(entry("ak.del_L"));
  EXPECT_EQ(r.status, EntryStatus::skipped);
  EXPECT_EQ(r.guard, GuardStatus::inapplicable);
}

TEST(Verify, FalseIdentityFailsWithExactResidual) {
  auto r = verifier("nil6").verify(adhoc("[d, L]", "2*lambda"));
  EXPECT_EQ(r.status, EntryStatus::fail);
  EXPECT_NE(r.residual, "0");
  EXPECT_GT(r.residual_value, 0.0);
  auto printed = verifier("nil6").verify(adhoc("[d, Lambda]", "d^c^* - tau^c^*", {"tau"}));
  EXPECT_EQ(printed.status, EntryStatus::fail);
}

TEST(Verify, UnknownOperatorIsAnError) {
  auto r = verifier("kt4").verify(adhoc("[d, frobnicator]", "0"));
  EXPECT_EQ(r.status, EntryStatus::error);
  EXPECT_FALSE(r.detail.empty());
}

TEST(Verify, GuardOnZeroOperatorMakesEntryVacuous) {
  auto r = verifier("kt4").verify(adhoc("[lambda, L]", "0", {"lambda"}));
  EXPECT_EQ(r.status, EntryStatus::pass);
  EXPECT_EQ(r.guard, GuardStatus::vacuous);
}

TEST(Verify, CliffordMultiplicationPrintedSignIsRecorded) {
  auto r = verifier("nil6").verify(entry("clifmult.domega"));
  EXPECT_EQ(r.status, EntryStatus::pass);
  ASSERT_TRUE(r.printed_holds.has_value());
  EXPECT_FALSE(*r.printed_holds);
}

TEST(Run, FullCatalogOnKt4AndNil6) {
  for (const char* model : {"kt4", "nil6"}) {
    auto rep = verifier(model).run("all", true);
    EXPECT_TRUE(rep.ok()) << model;
    EXPECT_EQ(rep.entries.size(), 372u);
    EXPECT_EQ(rep.count(EntryStatus::fail), 0);
    EXPECT_EQ(rep.count(EntryStatus::error), 0);
    ASSERT_TRUE(rep.figure1.has_value());
    EXPECT_EQ(rep.figure1->unresolved, 0) << model;
    EXPECT_EQ(rep.figure1->mismatches, 0) << model;
    ASSERT_TRUE(rep.figure2.has_value());
    EXPECT_EQ(rep.figure2->misplaced, 0) << model;
  }
}

TEST(Run, SuiteSelection) {
  auto rep = verifier("kt4").run("clifford");
  EXPECT_EQ(rep.entries.size(), 34u);
  for (const auto& e : rep.entries) EXPECT_EQ(e.suite, Suite::clifford);
  EXPECT_TRUE(valid_suite("tables"));
  EXPECT_FALSE(valid_suite("everything"));
}

TEST(Tables, CommutatorTableOnNil6) {
  auto t = verifier("nil6").commutator_table();
  EXPECT_EQ(t.cells.size(), 60u);
  EXPECT_EQ(t.unresolved, 0);
  EXPECT_EQ(t.mismatches, 0);
  for (const auto& c : t.cells) EXPECT_EQ(c.status, "match") << c.row << " " << c.column;
  auto find = [&](const std::string& row, const std::string& col) {
    for (const auto& c : t.cells)
      if (c.row == row && c.column == col) return c;
    throw std::out_of_range(row);
  };
  EXPECT_EQ(find("d", "L").computed, "lambda_mu + lambda_del + lambda_delbar + lambda_mubar");
  EXPECT_EQ(find("lambda_mubar", "L").computed, "0");
  EXPECT_FALSE(t.coincidences.empty());
}

TEST(Tables, BidegreeTableOnNil6) {
  auto t = verifier("nil6").bidegree_table();
  EXPECT_EQ(t.cells.size(), 72u);
  EXPECT_EQ(t.misplaced, 0);
  int placed = 0;
  for (const auto& c : t.cells) {
    placed += c.status == "placed";
    if (c.op == "mu") {
      EXPECT_EQ(c.status, "placed");
      EXPECT_EQ(c.measured, (std::vector<Bidegree>{{2, -1}}));
    }
  }
  EXPECT_EQ(placed, 64);
}

TEST(Tables, FloatModeAgrees) {
  Verifier<Complex> v(models::nil6());
  auto rep = v.run("all", true);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.figure1->unresolved, 0);
  EXPECT_EQ(rep.figure2->misplaced, 0);
  EXPECT_EQ(rep.mode, "float");
}

TEST(Report, JsonAndMarkdownRendering) {
  auto rep = verifier("kt4").run("exterior");
  auto j = report_json(rep);
  EXPECT_EQ(j["model"]["name"], "kt4");
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["entries"].size(), rep.entries.size());
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_EQ(j.dump(), report_json(verifier("kt4").run("exterior")).dump());
  std::string md = report_markdown(rep);
  EXPECT_NE(md.find("| id | anchor | residual | guard | status |"), std::string::npos);
  EXPECT_NE(md.find("main1.dL"), std::string::npos);
  EXPECT_EQ(md_escape("a|b_c*"), "a\\|b\\_c\\*");
}
