#include "jtab/semantics.hpp"

#include <stdexcept>

namespace jtab {

bool MModel::value_of(const std::string& atom) const {
  auto it = valuation.find(atom);
  return it != valuation.end() && it->second;
}

void MModel::add_to_universe(const FormulaPtr& f) {
  for (const auto& g : syntactic_subformulas(f)) universe_.insert(g);
}

void MModel::add_evidence(const TermPtr& t, const FormulaPtr& a) {
  add_to_universe(a);
  evidence_[t].insert(a);
}

bool MModel::has_evidence(const TermPtr& t, const FormulaPtr& a) const {
  auto it = evidence_.find(t);
  return it != evidence_.end() && it->second.count(a) > 0;
}

TermSet MModel::term_pool(const LogicId& logic) const {
  TermSet pool;
  for (const auto& [t, _] : evidence_) pool.insert(t);
  TermSet keys = pool;
  for (const auto& s : keys) {
    for (const auto& t : keys) {
      pool.insert(Term::app(s, t));
      pool.insert(Term::sum(s, t));
    }
    if (logic.has(Axiom::j4)) pool.insert(Term::bang(s));
    if (logic.has(Axiom::j5)) pool.insert(Term::query(s));
    if (logic.has(Axiom::jB)) pool.insert(Term::bar_query(s));
  }
  return pool;
}

bool forces(const MModel& m, const FormulaPtr& f, const LogicId& logic) {
  if (!m.in_universe(f))
    throw std::invalid_argument("formula outside the model universe: " + print_formula(f));
  switch (f->kind()) {
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Atom:
      return m.value_of(f->name());
    case Formula::Kind::Neg:
      return !forces(m, f->left(), logic);
    case Formula::Kind::Imp:
      return !forces(m, f->left(), logic) || forces(m, f->right(), logic);
    case Formula::Kind::Just: {
      bool in_evidence = m.has_evidence(f->term(), f->left());
      if (!logic.has(Axiom::jT)) return in_evidence;
      return in_evidence && forces(m, f->left(), logic);
    }
  }
  return false;
}

namespace {

const FormulaSet& evidence_of(const MModel& m, const TermPtr& t) {
  static const FormulaSet empty;
  auto it = m.evidence().find(t);
  return it == m.evidence().end() ? empty : it->second;
}

std::string ev_atom(const TermPtr& t, const FormulaPtr& a) {
  return print_formula(Formula::just(t, a));
}

}  // namespace

ConditionReport check_conditions(const MModel& m, const LogicId& logic, const ConstantSpec& cs) {
  ConditionReport report;
  TermSet pool = m.term_pool(logic);

  // E1: A->B in E(s) and A in E(t) implies B in E(s*t). Antecedents need
  // members, so the keys suffice on that side; conclusions are looked up at
  // the composite term.
  for (const auto& [s, es] : m.evidence()) {
    for (const auto& ab : es) {
      if (ab->kind() != Formula::Kind::Imp) continue;
      for (const auto& [t, et] : m.evidence()) {
        if (!et.count(ab->left())) continue;
        auto st = Term::app(s, t);
        auto conclusion = Formula::just(st, ab->right());
        if (!m.in_universe(conclusion)) continue;
        if (!m.has_evidence(st, ab->right())) {
          report.failures.push_back(
              {"E1", "s=" + print_term(s) + ", t=" + print_term(t) + ", " + print_formula(ab) +
                         " in E(s), " + print_formula(ab->left()) + " in E(t), but " +
                         ev_atom(st, ab->right()) + " fails"});
        }
      }
    }
  }

  // E2: E(s) ∪ E(t) ⊆ E(s+t).
  for (const auto& [s, es] : m.evidence()) {
    for (const auto& [t, et] : m.evidence()) {
      auto st = Term::sum(s, t);
      for (const auto* side_ev : {&es, &et}) {
        const auto& side = side_ev == &es ? s : t;
        for (const auto& a : *side_ev) {
          if (!m.in_universe(Formula::just(st, a))) continue;
          if (!m.has_evidence(st, a)) {
            report.failures.push_back(
                {"E2", print_formula(a) + " in E(" + print_term(side) + ") but not in E(" +
                           print_term(st) + ")"});
          }
        }
      }
    }
  }

  // E3: c:F in CS implies F in E(c).
  for (const auto& e : cs.entries()) {
    if (e->kind() != Formula::Kind::Just) continue;
    if (!m.has_evidence(e->term(), e->left())) {
      report.failures.push_back({"E3", "CS entry " + print_formula(e) + " lacks evidence"});
    }
  }

  // E4: bottom never in E(t).
  if (logic.has(Axiom::jD)) {
    for (const auto& t : pool) {
      if (evidence_of(m, t).count(Formula::bottom())) {
        report.failures.push_back({"E4", "False in E(" + print_term(t) + ")"});
      }
    }
  }

  // E5: A in E(t) implies t:A in E(!t).
  if (logic.has(Axiom::j4)) {
    for (const auto& [t, et] : m.evidence()) {
      auto bang = Term::bang(t);
      for (const auto& a : et) {
        auto ta = Formula::just(t, a);
        if (!m.in_universe(Formula::just(bang, ta))) continue;
        if (!m.has_evidence(bang, ta)) {
          report.failures.push_back(
              {"E5", print_formula(a) + " in E(" + print_term(t) + ") but " +
                         ev_atom(bang, ta) + " fails"});
        }
      }
    }
  }

  // E6: M does not force A implies ~t:A in E(@t).
  if (logic.has(Axiom::jB)) {
    for (const auto& t : pool) {
      auto bq = Term::bar_query(t);
      for (const auto& a : m.universe()) {
        auto nta = Formula::neg(Formula::just(t, a));
        if (!m.in_universe(Formula::just(bq, nta))) continue;
        if (forces(m, a, logic)) continue;
        if (!m.has_evidence(bq, nta)) {
          report.failures.push_back(
              {"E6", print_formula(a) + " unforced but " + ev_atom(bq, nta) + " fails"});
        }
      }
    }
  }

  // E7: A not in E(t) implies ~t:A in E(?t); A ranges over the universe.
  if (logic.has(Axiom::j5)) {
    for (const auto& t : pool) {
      auto q = Term::query(t);
      for (const auto& a : m.universe()) {
        if (evidence_of(m, t).count(a)) continue;
        auto nta = Formula::neg(Formula::just(t, a));
        if (!m.in_universe(Formula::just(q, nta))) continue;
        if (!m.has_evidence(q, nta)) {
          report.failures.push_back(
              {"E7", print_formula(a) + " not in E(" + print_term(t) + ") but " +
                         ev_atom(q, nta) + " fails"});
        }
      }
    }
  }

  return report;
}

bool validate_countermodel(const MModel& m, const FormulaPtr& root, const LogicId& logic,
                           const ConstantSpec& cs) {
  if (!m.in_universe(root)) return false;
  for (const auto& e : cs.entries()) {
    if (e->kind() != Formula::Kind::Just) return false;
    if (!m.has_evidence(e->term(), e->left())) return false;
  }
  if (!check_conditions(m, logic, cs).ok()) return false;
  return !forces(m, root, logic);
}

}  // namespace jtab
