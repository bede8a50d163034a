#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jtab/json_io.hpp"
#include "jtab/parse.hpp"
#include "jtab/prover.hpp"
#include "jtab/subformula.hpp"

using namespace jtab;

namespace {

FormulaPtr F(const std::string& s) { return parse_formula(s); }

ConstantSpec example_cs() {
  ConstantSpec cs;
  cs.add(F("c:(A -> (B -> A))"));
  return cs;
}

int count_rule(const Tableau& t, Rule r) {
  int n = 0;
  for (Rule q : t.rule_applications()) n += q == r;
  return n;
}

}  // namespace

TEST_CASE("worked example: F->, PB, T*, six formulas") {
  auto res = prove_analytic(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), example_cs());
  REQUIRE(res.verdict == Verdict::Proved);
  REQUIRE(res.proof.has_value());
  CHECK(res.check_ok);
  CHECK(res.weak_subformula_ok);
  CHECK(res.proof->size() == 6);
  CHECK(count_rule(*res.proof, Rule::FImp) == 1);
  CHECK(count_rule(*res.proof, Rule::PB) == 1);
  CHECK(count_rule(*res.proof, Rule::TApp) == 1);
  CHECK(count_rule(*res.proof, Rule::Cut) == 0);
}

TEST_CASE("sum axiom closes without PB") {
  auto res = prove_analytic(F("x:p -> (x+y):p"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(count_rule(*res.proof, Rule::PB) == 0);
}

TEST_CASE("the jD replacement rule: t:False -> False closes via T:bot") {
  auto res = prove_analytic(F("x:False -> False"), LogicId::parse("JD"), {});
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(count_rule(*res.proof, Rule::TBotColon) == 1);
  CHECK(count_rule(*res.proof, Rule::FBotColon) == 0);
}

TEST_CASE("jK instances are proved via T*, never open") {
  auto res = prove_analytic(F("x:(p -> q) -> (y:p -> x*y:q)"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(count_rule(*res.proof, Rule::TApp) == 1);
  CHECK(count_rule(*res.proof, Rule::PB) == 0);
}

TEST_CASE("positive introspection instance under j4") {
  auto res = prove_analytic(F("x:p -> !x:x:p"), LogicId::parse("J4"), {});
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(count_rule(*res.proof, Rule::FBang) == 1);
}

TEST_CASE("open verdicts carry validated countermodels") {
  auto res = prove_analytic(F("x:p"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Open);
  REQUIRE(res.model.has_value());
  CHECK(validate_countermodel(*res.model, F("x:p"), LogicId::parse("J"), {}));
}

TEST_CASE("the subformula property holds on every analytic proof") {
  ConstantSpec cs = example_cs();
  const char* formulas[] = {
      "x:A -> c*x:(B -> A)",
      "x:(p -> q) -> (y:p -> x*y:q)",
      "p -> (q -> p)",
      "x:p -> (x+y):p",
  };
  for (const char* s : formulas) {
    CAPTURE(s);
    auto res = prove_analytic(F(s), LogicId::parse("J"), cs);
    REQUIRE(res.verdict == Verdict::Proved);
    CHECK(res.weak_subformula_ok);
    SubformulaOracle oracle({res.proof->root_formula()}, cs, LogicId::parse("J"));
    for (const auto& n : res.proof->nodes()) {
      CAPTURE(print_formula(n.formula));
      CHECK(oracle.contains_weak(n.formula));
    }
  }
}

TEST_CASE("cross-calculus agreement on definite verdicts") {
  ConstantSpec cs = example_cs();
  const char* formulas[] = {"x:A -> c*x:(B -> A)", "p -> p", "x:p", "p -> q",
                            "x:(p -> q) -> (y:p -> x*y:q)", "(x+y):p -> x:p"};
  for (const char* s : formulas) {
    CAPTURE(s);
    auto a = prove_jl(F(s), LogicId::parse("J"), cs);
    auto b = prove_analytic(F(s), LogicId::parse("J"), cs);
    bool a_proved = a.verdict == Verdict::Proved;
    bool b_refuted = b.verdict == Verdict::Open && b.model.has_value();
    bool b_proved = b.verdict == Verdict::Proved;
    bool a_refuted = a.verdict == Verdict::Open && a.model.has_value();
    CHECK_FALSE((a_proved && b_refuted));
    CHECK_FALSE((b_proved && a_refuted));
  }
}

TEST_CASE("allow_cut targets the cut calculus") {
  auto res = prove_analytic(F("p -> p"), LogicId::parse("J"), {}, {}, /*allow_cut=*/true);
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(res.proof->calculus() == Calculus::JLTCut);
  CHECK(res.check_ok);
}

TEST_CASE("a proof using cut fails the analytic check but passes the cut calculus") {
  // build one directly: ~(p -> p) with a gratuitous cut on q
  Tableau t(Calculus::JLTCut, LogicId::parse("J"), {}, {F("~(p -> p)")});
  auto cut = t.apply(0, RuleApp{Rule::Cut, {}, F("q")});
  for (int side : cut) t.apply(side, RuleApp{Rule::FImp, {0}, nullptr});
  REQUIRE(check_proof(t).ok());

  // the same tree in the analytic calculus must be rejected
  Tableau strict(Calculus::JLT, LogicId::parse("J"), {}, {F("~(p -> p)")});
  RuleApp cut_app{Rule::Cut, {}, F("q")};
  int l = strict.append(0, F("q"), cut_app);
  int r = strict.append(0, F("~q"), cut_app);
  for (int side : {l, r}) strict.apply(side, RuleApp{Rule::FImp, {0}, nullptr});
  CHECK(check_proof(strict).has(DefectClass::RuleNotInCalculus));
}

TEST_CASE("PB restriction enforcement is real") {
  // no PB candidate can prove q alone, so the prover cannot cheat
  auto res = prove_analytic(F("q"), LogicId::parse("J"), {});
  CHECK(res.verdict == Verdict::Open);
}

TEST_CASE("identical inputs produce byte-identical serialized output") {
  ConstantSpec cs = example_cs();
  auto once = prove_analytic(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), cs);
  auto twice = prove_analytic(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), cs);
  REQUIRE(once.verdict == Verdict::Proved);
  REQUIRE(twice.verdict == Verdict::Proved);
  CHECK(proof_to_json(*once.proof).dump() == proof_to_json(*twice.proof).dump());

  auto open1 = prove_jl(F("x:p -> q"), LogicId::parse("J"), {});
  auto open2 = prove_jl(F("x:p -> q"), LogicId::parse("J"), {});
  REQUIRE(open1.model.has_value());
  REQUIRE(open2.model.has_value());
  CHECK(model_to_json(*open1.model).dump() == model_to_json(*open2.model).dump());
}
