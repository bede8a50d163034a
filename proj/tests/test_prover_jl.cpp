#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jtab/parse.hpp"
#include "jtab/prover.hpp"

using namespace jtab;

namespace {

FormulaPtr F(const std::string& s) { return parse_formula(s); }

ConstantSpec example_cs() {
  ConstantSpec cs;
  cs.add(F("c:(A -> (B -> A))"));
  return cs;
}

}  // namespace

TEST_CASE("worked example: proved with F-> then F*, five formulas") {
  auto res = prove_jl(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), example_cs());
  REQUIRE(res.verdict == Verdict::Proved);
  REQUIRE(res.proof.has_value());
  CHECK(res.check_ok);
  CHECK(res.proof->size() == 5);
  auto rules = res.proof->rule_applications();
  REQUIRE(rules.size() == 2);
  CHECK(rules[0] == Rule::FImp);
  CHECK(rules[1] == Rule::FApp);
  // the branching instantiation is A
  bool found = false;
  for (const auto& n : res.proof->nodes()) {
    if (n.rule && n.rule->rule == Rule::FApp) {
      REQUIRE(n.rule->instantiation);
      CHECK(equal(n.rule->instantiation, F("A")));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("propositional closure") {
  auto res = prove_jl(F("p -> p"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Proved);
  CHECK(res.check_ok);
}

TEST_CASE("open with validated countermodel") {
  auto res = prove_jl(F("x:p"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Open);
  REQUIRE(res.model.has_value());
  CHECK(validate_countermodel(*res.model, F("x:p"), LogicId::parse("J"), {}));
}

TEST_CASE("propositional countermodel from a saturated branch") {
  auto res = prove_jl(F("p -> q"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Open);
  REQUIRE(res.model.has_value());
  CHECK(res.model->value_of("p"));
  CHECK_FALSE(res.model->value_of("q"));
}

TEST_CASE("x:p -> p is refutable without jT") {
  auto res = prove_jl(F("x:p -> p"), LogicId::parse("J"), {});
  REQUIRE(res.verdict == Verdict::Open);
  REQUIRE(res.model.has_value());
  CHECK(res.model->has_evidence(parse_term("x"), F("p")));
  CHECK_FALSE(res.model->value_of("p"));
  // and proved with jT
  auto res_t = prove_jl(F("x:p -> p"), LogicId::parse("JT"), {});
  CHECK(res_t.verdict == Verdict::Proved);
}

TEST_CASE("axioms of every logic close in the basic calculus") {
  struct Case { const char* logic; const char* formula; };
  const Case cases[] = {
      {"J", "x:p -> (x+y):p"},
      {"J", "x:p -> (y+x):p"},
      {"J", "x:(p -> q) -> (y:p -> x*y:q)"},
      {"JT", "x:p -> p"},
      {"JD", "x:False -> False"},
      {"J4", "x:p -> !x:x:p"},
      {"JB", "~p -> @x:(~x:p)"},
      {"J5", "~x:p -> ?x:(~x:p)"},
      {"JT45", "x:p -> !x:x:p"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.logic);
    CAPTURE(c.formula);
    auto res = prove_jl(F(c.formula), LogicId::parse(c.logic), {});
    CHECK(res.verdict == Verdict::Proved);
    if (res.proof) CHECK(check_proof(*res.proof).ok());
  }
}

TEST_CASE("every proved result passes the checker") {
  std::mt19937 rng(41);
  const char* formulas[] = {
      "p -> (q -> p)",
      "x:(p -> q) -> (y:p -> x*y:q)",
      "(x:p -> q) -> (~q -> ~x:p)",
      "x:p -> x:p",
      "~~p -> p",
      "((p -> q) -> p) -> p",
  };
  for (const char* s : formulas) {
    auto res = prove_jl(F(s), LogicId::parse("J"), {});
    CAPTURE(s);
    CHECK(res.verdict == Verdict::Proved);
    REQUIRE(res.proof.has_value());
    CHECK(check_proof(*res.proof).ok());
  }
}

TEST_CASE("no proof is claimed for refutable formulas, and models validate") {
  const char* formulas[] = {"p", "~p", "p -> q", "x:p", "~x:p -> q", "x:p -> x:q",
                            "(x+y):p -> x:p"};
  for (const char* s : formulas) {
    CAPTURE(s);
    auto res = prove_jl(F(s), LogicId::parse("J"), {});
    REQUIRE(res.verdict == Verdict::Open);
    REQUIRE(res.model.has_value());
    CHECK(validate_countermodel(*res.model, F(s), LogicId::parse("J"), {}));
  }
}

TEST_CASE("saturation is idempotent: reruns agree") {
  auto a = prove_jl(F("x:p -> (q -> x:p)"), LogicId::parse("J"), {});
  auto b = prove_jl(F("x:p -> (q -> x:p)"), LogicId::parse("J"), {});
  CHECK(a.verdict == b.verdict);
  if (a.verdict == Verdict::Open) {
    REQUIRE(a.model.has_value());
    REQUIRE(b.model.has_value());
    CHECK(a.open_branch.size() == b.open_branch.size());
  }
}

TEST_CASE("budget exhaustion is reported as unknown") {
  Budget tiny;
  tiny.max_nodes = 2;
  auto res = prove_jl(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), example_cs(), tiny);
  CHECK(res.verdict == Verdict::Unknown);
}

TEST_CASE("preconditions are enforced") {
  ConstantSpec bad;
  bad.add(F("c2:c1:(p -> p)"));
  CHECK_THROWS_AS(prove_jl(F("p -> p"), LogicId::parse("J"), bad), std::invalid_argument);
  CHECK_THROWS_AS(prove_jl(F("!x:p -> p"), LogicId::parse("J"), {}), std::invalid_argument);
}

TEST_CASE("extraction from an explicit branch") {
  // the saturated branch for ~(x:p -> p) in the basic logic
  std::vector<FormulaPtr> branch = {F("~(x:p -> p)"), F("x:p"), F("~p")};
  auto res = extract_countermodel(branch, F("x:p -> p"), LogicId::parse("J"), {});
  REQUIRE(res.ok());
  CHECK(res.model->has_evidence(parse_term("x"), F("p")));
  CHECK_FALSE(res.model->value_of("p"));
  CHECK(validate_countermodel(*res.model, F("x:p -> p"), LogicId::parse("J"), {}));

  // the same branch cannot refute under jT (clause 5 forces the body)
  auto res_t = extract_countermodel(branch, F("x:p -> p"), LogicId::parse("JT"), {});
  CHECK_FALSE(res_t.ok());
  CHECK_FALSE(res_t.failure.empty());
}

TEST_CASE("extraction reports failure honestly under jB") {
  // any saturated open branch in a jB logic either validates or reports
  auto res = prove_jl(F("x:p -> q"), LogicId::parse("JB"), {});
  if (res.verdict == Verdict::Open) {
    CHECK((res.model.has_value() || res.extraction_failed));
    if (res.model)
      CHECK(validate_countermodel(*res.model, F("x:p -> q"), LogicId::parse("JB"), {}));
  }
}
