// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is deterministic (fixed seeds, sequential search).
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "jtab/cutelim.hpp"
#include "jtab/hilbert.hpp"
#include "jtab/json_io.hpp"
#include "jtab/prover.hpp"
#include "jtab/subformula.hpp"

using namespace jtab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) g_failures++;
}

FormulaPtr F(const std::string& s) { return parse_formula(s); }

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ConstantSpec example_cs() {
  ConstantSpec cs;
  cs.add(F("c:(A -> (B -> A))"));
  return cs;
}

std::vector<Rule> sorted_rules(const Tableau& t) {
  auto rules = t.rule_applications();
  std::sort(rules.begin(), rules.end());
  return rules;
}

// ---------------------------------------------------------------------------
// criterion 1: reproduction of the two worked examples
// ---------------------------------------------------------------------------

void criterion1() {
  bool ok = true;
  std::string detail;

  auto start = Clock::now();
  auto jl = prove_jl(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), example_cs());
  double jl_ms = ms_since(start);
  if (jl.verdict != Verdict::Proved || !jl.check_ok) {
    ok = false;
    detail = "basic calculus did not prove the example";
  } else {
    auto rules = sorted_rules(*jl.proof);
    if (rules != std::vector<Rule>{Rule::FImp, Rule::FApp} &&
        rules != std::vector<Rule>{Rule::FApp, Rule::FImp}) {
      ok = false;
      detail = "basic-calculus rule multiset differs";
    }
    if (jl.proof->size() != 5) {
      ok = false;
      detail = "basic-calculus proof is not the five-formula tree";
    }
    for (int leaf : jl.proof->leaves()) {
      if (!jl.proof->branch_status(leaf).closed()) ok = false;
    }
  }
  if (jl_ms >= 1000.0) {
    ok = false;
    detail = "basic-calculus run took too long";
  }

  start = Clock::now();
  auto jlt = prove_analytic(F("x:A -> c*x:(B -> A)"), LogicId::parse("J"), example_cs());
  double jlt_ms = ms_since(start);
  if (jlt.verdict != Verdict::Proved || !jlt.check_ok) {
    ok = false;
    detail = "analytic calculus did not prove the example";
  } else {
    auto rules = sorted_rules(*jlt.proof);
    std::vector<Rule> expect{Rule::FImp, Rule::TApp, Rule::PB};
    std::sort(expect.begin(), expect.end());
    if (rules != expect) {
      ok = false;
      detail = "analytic rule multiset differs";
    }
    if (jlt.proof->size() != 6) {
      ok = false;
      detail = "analytic proof is not the six-formula tree";
    }
  }
  if (jlt_ms >= 1000.0) {
    ok = false;
    detail = "analytic run took too long";
  }

  std::ostringstream os;
  os << "jl " << jl_ms << " ms, jlt " << jlt_ms << " ms";
  report(1, ok, "worked examples reproduced exactly", detail.empty() ? os.str() : detail);
}

// ---------------------------------------------------------------------------
// criterion 2: every axiom of every logic closes analytically without PB/cut
// ---------------------------------------------------------------------------

struct SchemeInstances {
  Scheme scheme;
  std::vector<std::string> instances;
};

std::vector<SchemeInstances> instances_for(const LogicId& logic) {
  std::vector<SchemeInstances> out;
  out.push_back({Scheme::Taut, {"p -> p", "p -> (q -> p)", "((p -> q) -> p) -> p"}});
  out.push_back({Scheme::Sum,
                 {"x:p -> (x+y):p", "y:q -> (x+y):q", "x:(p -> q) -> (x+x):(p -> q)"}});
  out.push_back({Scheme::jK,
                 {"x:(p -> q) -> (y:p -> x*y:q)", "x:(q -> p) -> (x:q -> x*x:p)",
                  "y:(p -> p) -> (x:p -> y*x:p)"}});
  if (logic.has(Axiom::jT))
    out.push_back({Scheme::jT, {"x:p -> p", "y:(p -> q) -> (p -> q)", "x:x:p -> x:p"}});
  if (logic.has(Axiom::jD))
    out.push_back({Scheme::jD,
                   {"x:False -> False", "y:False -> False", "(x+y):False -> False"}});
  if (logic.has(Axiom::j4))
    out.push_back({Scheme::j4,
                   {"x:p -> !x:x:p", "y:(p -> q) -> !y:y:(p -> q)", "!x:p -> !!x:!x:p"}});
  if (logic.has(Axiom::jB))
    out.push_back({Scheme::jB,
                   {"~p -> @x:(~x:p)", "~(p -> q) -> @y:(~y:(p -> q))", "~q -> @(x+y):(~(x+y):q)"}});
  if (logic.has(Axiom::j5))
    out.push_back({Scheme::j5,
                   {"~x:p -> ?x:(~x:p)", "~y:(p -> q) -> ?y:(~y:(p -> q))", "~?x:p -> ??x:(~?x:p)"}});
  return out;
}

void criterion2() {
  const char* logics[] = {"J", "JT", "JD", "J4", "JB", "J5", "JT4", "JD4", "JT45"};
  bool ok = true;
  std::string detail;
  int total = 0;
  for (const char* lname : logics) {
    auto logic = LogicId::parse(lname);
    for (const auto& si : instances_for(logic)) {
      for (const auto& inst : si.instances) {
        total++;
        auto start = Clock::now();
        auto res = prove_analytic(F(inst), logic, {});
        double ms = ms_since(start);
        bool this_ok = res.verdict == Verdict::Proved && res.check_ok && ms < 1000.0;
        if (this_ok) {
          for (Rule r : res.proof->rule_applications()) {
            if (r == Rule::PB || r == Rule::Cut) this_ok = false;
          }
        }
        if (!this_ok && ok) {
          ok = false;
          detail = std::string(lname) + " " + scheme_name(si.scheme) + ": " + inst;
        }
      }
    }
  }
  report(2, ok, "axiom suite closes analytically with zero PB and zero cut",
         ok ? std::to_string(total) + " instances" : detail);
}

// ---------------------------------------------------------------------------
// criteria 3 and 4: random corpus, mutual exclusion and countermodel validity
// ---------------------------------------------------------------------------

struct CorpusGen {
  std::mt19937 rng;
  LogicId logic;
  std::vector<std::string> atoms{"p", "q"};
  std::vector<std::string> vars{"x", "y"};

  explicit CorpusGen(const LogicId& l, unsigned seed) : rng(seed), logic(l) {}

  TermPtr term(int depth) {
    std::vector<int> kinds{0, 0, 1, 2};  // favor leaves
    if (depth > 0) {
      if (logic.has(Axiom::j4)) kinds.push_back(3);
      if (logic.has(Axiom::j5)) kinds.push_back(4);
      if (logic.has(Axiom::jB)) kinds.push_back(5);
    }
    switch (kinds[rng() % kinds.size()]) {
      case 0: return Term::var(vars[rng() % vars.size()]);
      case 1: return depth > 0 ? Term::app(term(depth - 1), term(depth - 1))
                               : Term::var(vars[rng() % vars.size()]);
      case 2: return depth > 0 ? Term::sum(term(depth - 1), term(depth - 1))
                               : Term::var(vars[rng() % vars.size()]);
      case 3: return Term::bang(term(depth - 1));
      case 4: return Term::query(term(depth - 1));
      default: return Term::bar_query(term(depth - 1));
    }
  }

  FormulaPtr formula(int depth) {
    switch (rng() % (depth <= 0 ? 2 : 6)) {
      case 0: return Formula::atom(atoms[rng() % atoms.size()]);
      case 1: return rng() % 8 == 0 ? Formula::bottom()
                                    : Formula::atom(atoms[rng() % atoms.size()]);
      case 2: return Formula::neg(formula(depth - 1));
      case 3:
      case 4: return Formula::imp(formula(depth - 1), formula(depth - 1));
      default: return Formula::just(term(1), formula(depth - 1));
    }
  }

  FormulaPtr next() {
    while (true) {
      auto f = formula(3);
      if (node_count(f) <= 12) return f;
    }
  }

  ConstantSpec next_cs() {
    // at most three entries including the downward closure
    ConstantSpec cs;
    const char* bodies[] = {"p -> (q -> p)", "p -> p", "q -> (p -> q)"};
    int n = rng() % 3;
    for (int i = 0; i < n; i++) {
      std::string c = "c" + std::to_string(1 + (rng() % 2));
      auto entry = Formula::just(Term::constant(c), F(bodies[rng() % 3]));
      if (n == 1 && rng() % 3 == 0) entry = Formula::just(Term::constant("d1"), entry);
      cs.add(entry, true);
    }
    return cs;
  }
};

void criteria3and4(std::vector<Tableau>* analytic_proofs) {
  const char* logics[] = {"J", "JT", "JD", "J4", "JB", "J5", "JT4", "JD4", "JT45"};
  bool ok3 = true, ok4 = true;
  std::string detail3, detail4;
  int conflicts = 0, proved_checked = 0, opens = 0, opens_validated = 0, extraction_failures = 0;

  Budget budget;
  budget.max_nodes = 1200;
  budget.max_depth = 80;

  for (const char* lname : logics) {
    auto logic = LogicId::parse(lname);
    bool has_jb = logic.has(Axiom::jB);
    CorpusGen gen(logic, 0xC0FFEE);
    for (int i = 0; i < 200; i++) {
      auto f = gen.next();
      auto cs = gen.next_cs();
      ProveResult a, b;
      try {
        a = prove_jl(f, logic, cs, budget);
        b = prove_analytic(f, logic, cs, budget);
      } catch (const std::exception& e) {
        ok3 = false;
        detail3 = std::string("prover error on ") + print_formula(f) + ": " + e.what();
        continue;
      }

      for (const ProveResult* r : {&a, &b}) {
        if (r->verdict == Verdict::Proved) {
          proved_checked++;
          if (!r->check_ok) {
            ok3 = false;
            detail3 = "proved result failed check_proof on " + print_formula(f);
          }
        }
        if (r->verdict == Verdict::Open) {
          opens++;
          if (r->model) {
            if (!validate_countermodel(*r->model, f, logic, cs)) {
              ok4 = false;
              detail4 = "invalid model presented as valid on " + print_formula(f);
            } else {
              opens_validated++;
            }
          } else {
            extraction_failures++;
            if (!has_jb) {
              ok4 = false;
              detail4 = std::string(lname) + ": open without a model on " + print_formula(f);
            } else if (!r->extraction_failed) {
              ok4 = false;
              detail4 = "missing extraction-failure report on " + print_formula(f);
            }
          }
        }
      }
      if (b.verdict == Verdict::Proved && b.proof && analytic_proofs &&
          b.proof->calculus() == Calculus::JLT)
        analytic_proofs->push_back(*b.proof);

      bool a_proved = a.verdict == Verdict::Proved;
      bool b_proved = b.verdict == Verdict::Proved;
      bool a_refuted = a.verdict == Verdict::Open && a.model.has_value();
      bool b_refuted = b.verdict == Verdict::Open && b.model.has_value();
      if ((a_proved && b_refuted) || (b_proved && a_refuted)) {
        conflicts++;
        ok3 = false;
        detail3 = "contradictory verdicts on " + print_formula(f) + " in " + lname;
      }
    }
  }

  std::ostringstream os3;
  os3 << proved_checked << " proofs checked, " << conflicts << " conflicts";
  report(3, ok3, "soundness mutual exclusion over the random corpus",
         ok3 ? os3.str() : detail3);
  std::ostringstream os4;
  os4 << opens << " opens, " << opens_validated << " validated, " << extraction_failures
      << " reported failures (jB only)";
  report(4, ok4, "countermodel validity on open verdicts", ok4 ? os4.str() : detail4);
}

// ---------------------------------------------------------------------------
// criterion 5: the translation + elimination pipeline
// ---------------------------------------------------------------------------

struct PipelineCase {
  std::string logic;
  std::string cs_text;  // may be empty
  std::string proof;
};

std::vector<PipelineCase> pipeline_corpus() {
  std::vector<PipelineCase> out;

  // one-line axiom proofs across the logics: every scheme is covered
  const char* logics[] = {"J", "JT", "JD", "J4", "JB", "J5", "JT4", "JD4", "JT45"};
  for (const char* lname : logics) {
    auto logic = LogicId::parse(lname);
    for (const auto& si : instances_for(logic)) {
      out.push_back({lname, "", "1. " + si.instances[0] + "  [" +
                                    scheme_name(si.scheme) + "]\n"});
    }
  }

  // IAN one-liner
  out.push_back({"J", "c:(A -> (B -> A))\n", "1. c:(A -> (B -> A))  [IAN]\n"});

  // the worked derivation: IAN + jK + MP
  out.push_back({"J", "c:(A -> (B -> A))\n",
                 "1. c:(A -> (B -> A))                            [IAN]\n"
                 "2. c:(A -> (B -> A)) -> (x:A -> c*x:(B -> A))   [jK]\n"
                 "3. x:A -> c*x:(B -> A)                          [MP 1 2]\n"});

  // a modus-ponens chain of depth three
  out.push_back({"J", "",
                 "1. p -> p                                              [Taut]\n"
                 "2. (p -> p) -> (q -> (p -> p))                         [Taut]\n"
                 "3. q -> (p -> p)                                       [MP 1 2]\n"
                 "4. (q -> (p -> p)) -> (r -> (q -> (p -> p)))           [Taut]\n"
                 "5. r -> (q -> (p -> p))                                [MP 3 4]\n"
                 "6. (r -> (q -> (p -> p))) -> (p -> (r -> (q -> (p -> p))))  [Taut]\n"
                 "7. p -> (r -> (q -> (p -> p)))                         [MP 5 6]\n"});

  // nested constants: downward-closed two-level CS with MP
  out.push_back({"JT", "d1:c1:(x:p -> p)\nc1:(x:p -> p)\n",
                 "1. c1:(x:p -> p)                                 [IAN]\n"
                 "2. d1:c1:(x:p -> p)                              [IAN]\n"
                 "3. c1:(x:p -> p) -> (d1:c1:(x:p -> p) -> c1:(x:p -> p))  [Taut]\n"
                 "4. d1:c1:(x:p -> p) -> c1:(x:p -> p)             [MP 1 3]\n"
                 "5. c1:(x:p -> p)                                 [MP 2 4]\n"});

  // justification-flavored modus ponens in the logic of proofs
  out.push_back({"JT4", "c:(x:p -> p)\n",
                 "1. c:(x:p -> p)                                  [IAN]\n"
                 "2. c:(x:p -> p) -> (y:x:p -> c*y:p)              [jK]\n"
                 "3. y:x:p -> c*y:p                                [MP 1 2]\n"});

  // sum axiom chained through modus ponens
  out.push_back({"J", "",
                 "1. x:p -> (x+y):p                                 [Sum]\n"
                 "2. (x:p -> (x+y):p) -> (q -> (x:p -> (x+y):p))    [Taut]\n"
                 "3. q -> (x:p -> (x+y):p)                          [MP 1 2]\n"});

  // deep propositional chain with repeated citation
  out.push_back({"J", "",
                 "1. p -> (q -> p)                                   [Taut]\n"
                 "2. (p -> (q -> p)) -> ((p -> q) -> (p -> (q -> p)))  [Taut]\n"
                 "3. (p -> q) -> (p -> (q -> p))                     [MP 1 2]\n"
                 "4. ((p -> q) -> (p -> (q -> p))) -> (r -> ((p -> q) -> (p -> (q -> p))))  [Taut]\n"
                 "5. r -> ((p -> q) -> (p -> (q -> p)))              [MP 3 4]\n"});

  return out;
}

void criterion5(std::vector<Tableau>* analytic_proofs) {
  bool ok = true;
  std::string detail;
  auto corpus = pipeline_corpus();
  int mp_lines = 0, steps_total = 0;
  auto start = Clock::now();
  for (const auto& c : corpus) {
    try {
      auto logic = LogicId::parse(c.logic);
      ConstantSpec cs =
          c.cs_text.empty() ? ConstantSpec{} : load_cs(c.cs_text, logic, true);
      auto proof = parse_hilbert(c.proof);
      for (const auto& line : proof.lines) mp_lines += line.kind == HilbertLine::Kind::MP;
      if (auto defect = check_hilbert(proof, logic, cs)) {
        ok = false;
        detail = "hilbert defect in corpus: " + defect->message;
        continue;
      }
      auto translated = translate_to_tableau(proof, logic, cs);
      if (!check_proof(translated).ok()) {
        ok = false;
        detail = "translated tableau invalid for " + c.proof.substr(0, 30);
        continue;
      }
      ElimTrace trace;
      auto final_proof = eliminate_all(translated, &trace);
      steps_total += static_cast<int>(trace.steps.size());
      // measure claims are re-verified inside eliminate_step; assert shape here
      for (const auto& step : trace.steps) {
        for (const auto& claim : step.claims) {
          bool fine = claim.relation == MeasureClaim::Relation::BecamePB ||
                      (claim.relation == MeasureClaim::Relation::LowerRank &&
                       claim.rank < step.rank) ||
                      (claim.relation == MeasureClaim::Relation::SameRankLowerWeight &&
                       claim.rank == step.rank && claim.weight < step.weight);
          if (!fine) {
            ok = false;
            detail = "measure claim not verified: " + claim.to_string();
          }
        }
      }
      auto final_check = check_proof(final_proof);
      if (!final_check.ok()) {
        ok = false;
        detail = "final proof invalid: " + final_check.to_string();
      }
      if (analytic_proofs) analytic_proofs->push_back(final_proof);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
  }
  double total_ms = ms_since(start);
  if (corpus.size() < 20) {
    ok = false;
    detail = "corpus too small";
  }
  if (mp_lines < 3) {
    ok = false;
    detail = "corpus lacks modus-ponens chains";
  }
  if (total_ms >= 60000.0) {
    ok = false;
    detail = "corpus runtime over budget";
  }
  std::ostringstream os;
  os << corpus.size() << " proofs, " << steps_total << " elimination steps, " << total_ms
     << " ms";
  report(5, ok, "translation + cut-elimination pipeline", ok ? os.str() : detail);
}

// ---------------------------------------------------------------------------
// criterion 6: the subformula property over every analytic proof produced
// ---------------------------------------------------------------------------

void criterion6(const std::vector<Tableau>& analytic_proofs) {
  bool ok = true;
  std::string detail;
  int nodes = 0;
  for (const auto& t : analytic_proofs) {
    SubformulaOracle oracle({t.root_formula()}, t.cs(), t.logic());
    for (const auto& n : t.nodes()) {
      nodes++;
      if (!oracle.contains_weak(n.formula)) {
        ok = false;
        detail = print_formula(n.formula) + " is not a weak subformula of " +
                 print_formula(t.root_formula());
      }
    }
  }
  std::ostringstream os;
  os << analytic_proofs.size() << " proofs, " << nodes << " nodes scanned";
  report(6, ok, "subformula property on all analytic proofs", ok ? os.str() : detail);
}

// ---------------------------------------------------------------------------
// criterion 7: the infinite-closure witness
// ---------------------------------------------------------------------------

void criterion7() {
  bool ok = true;
  std::string detail;
  auto j = LogicId::parse("J");
  auto root = F("x:A");
  int b1 = node_count(F("x:A"));
  int b2 = node_count(F("x:x:A"));
  int b3 = node_count(F("x:x:x:A"));
  auto s1 = weak_subformulas_up_to({root, {}, j, b1});
  auto s2 = weak_subformulas_up_to({root, {}, j, b2});
  auto s3 = weak_subformulas_up_to({root, {}, j, b3});
  auto member = [](const std::vector<FormulaPtr>& v, const FormulaPtr& f) {
    for (const auto& g : v)
      if (equal(g, f)) return true;
    return false;
  };
  if (!(s1.size() < s2.size() && s2.size() < s3.size())) {
    ok = false;
    detail = "closure sizes not strictly increasing";
  }
  if (!member(s2, F("x:x:A")) || member(s1, F("x:x:A"))) {
    ok = false;
    detail = "x:x:A missing at its bound or present too early";
  }
  if (!member(s3, F("x:x:x:A")) || member(s2, F("x:x:x:A"))) {
    ok = false;
    detail = "x:x:x:A missing at its bound or present too early";
  }
  std::ostringstream os;
  os << s1.size() << " < " << s2.size() << " < " << s3.size();
  report(7, ok, "strictly growing closure chain for x:A", ok ? os.str() : detail);
}

// ---------------------------------------------------------------------------
// criterion 8: corrupted proofs are rejected with the right defect class
// ---------------------------------------------------------------------------

void criterion8() {
  bool ok = true;
  std::string detail;
  ConstantSpec cs = example_cs();

  // PB formula outside the closure
  {
    Tableau t(Calculus::JLT, LogicId::parse("J"), cs, {F("~(x:A -> c*x:(B -> A))")});
    auto fimp = t.apply(0, RuleApp{Rule::FImp, {0}, nullptr});
    RuleApp pb{Rule::PB, {}, F("q")};
    t.append(fimp[1], F("q"), pb);
    t.append(fimp[1], F("~q"), pb);
    auto result = check_proof(t);
    if (!result.has(DefectClass::PBRestriction)) {
      ok = false;
      detail = "PB corruption not classified";
    }
  }

  // T* conclusion outside the closure
  {
    Tableau t(Calculus::JLT, LogicId::parse("JD"), {},
              {F("x:(p -> False)"), F("y:p"), F("~q")});
    RuleApp tapp{Rule::TApp, {0, 1}, nullptr};
    int n = t.append(2, F("x*y:False"), tapp);
    t.append(n, F("False"), RuleApp{Rule::TBotColon, {n}, nullptr});
    auto result = check_proof(t);
    if (!result.has(DefectClass::TAppRestriction)) {
      ok = false;
      detail = "T* corruption not classified";
    }
  }

  // the basic-calculus bottom refutation inside the analytic calculus under jD
  {
    Tableau t(Calculus::JLT, LogicId::parse("JD"), {}, {F("~(x:False -> False)")});
    auto fimp = t.apply(0, RuleApp{Rule::FImp, {0}, nullptr});
    t.append(fimp[1], F("~y:False"), RuleApp{Rule::FBotColon, {}, F("y:False")});
    auto result = check_proof(t);
    if (!result.has(DefectClass::RuleNotInCalculus)) {
      ok = false;
      detail = "F:bot-in-analytic corruption not classified";
    }
  }

  report(8, ok, "rule-restriction enforcement on corrupted proofs", detail);
}

}  // namespace

int main() {
  std::vector<Tableau> analytic_proofs;
  criterion1();
  criterion2();
  criteria3and4(&analytic_proofs);
  criterion5(&analytic_proofs);
  criterion6(analytic_proofs);
  criterion7();
  criterion8();
  std::cout << (g_failures == 0 ? "all criteria passed" : "criteria failed") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
