#ifndef JTAB_SEMANTICS_HPP
#define JTAB_SEMANTICS_HPP

#include <map>
#include <string>
#include <vector>

#include "jtab/logic.hpp"
#include "jtab/syntax.hpp"

namespace jtab {

/// A finite presentation of a single-world model: a valuation, an evidence
/// map from terms to formula sets, and a finite universe that scopes the
/// evidence-condition checks. The universe is kept closed under immediate
/// syntactic subformulas; every evidence formula belongs to it.
class MModel {
public:
  std::map<std::string, bool> valuation;

  void set_valuation(const std::string& atom, bool value) { valuation[atom] = value; }
  bool value_of(const std::string& atom) const;

  /// Adds f (and its syntactic subformulas) to the universe.
  void add_to_universe(const FormulaPtr& f);
  /// Bottom is in scope everywhere; its forcing is constant.
  bool in_universe(const FormulaPtr& f) const {
    return f->kind() == Formula::Kind::Bottom || universe_.count(f) > 0;
  }
  const FormulaSet& universe() const { return universe_; }

  /// Records A in E(t); A is added to the universe as well.
  void add_evidence(const TermPtr& t, const FormulaPtr& a);
  bool has_evidence(const TermPtr& t, const FormulaPtr& a) const;
  const std::map<TermPtr, FormulaSet, TermLess>& evidence() const { return evidence_; }

  /// Evidence keys plus their one-step operator images under the admitted
  /// operations of `logic` (s*t, s+t for key pairs; !t, ?t, @t per key).
  TermSet term_pool(const LogicId& logic) const;

private:
  std::map<TermPtr, FormulaSet, TermLess> evidence_;
  FormulaSet universe_;
};

/// Forcing per the single-world semantics; for logics with jT the clause for
/// t:A additionally requires the body to be forced.
/// Throws std::invalid_argument when f is not in the universe.
bool forces(const MModel& m, const FormulaPtr& f, const LogicId& logic);

struct ConditionFailure {
  std::string condition;  // "E1".."E7"
  std::string witness;    // human-readable instance
};

struct ConditionReport {
  std::vector<ConditionFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks the evidence conditions over the model's term pool and universe.
/// E1-E3 always; E4 iff jD, E5 iff j4, E6 iff jB, E7 iff j5. Conditions whose
/// conclusion lives at a composite evidence atom (E1, E2, E5, E6, E7) are
/// checked for exactly the instances whose conclusion atom — the
/// corresponding t:A formula — lies in the universe; only those instances
/// can influence forcing over the universe, and a finite presentation cannot
/// satisfy the unbounded remainder.
ConditionReport check_conditions(const MModel& m, const LogicId& logic, const ConstantSpec& cs);

/// True iff all conditions pass, the root is not forced, and every CS entry
/// c:F has F in E(c).
bool validate_countermodel(const MModel& m, const FormulaPtr& root, const LogicId& logic,
                           const ConstantSpec& cs);

}  // namespace jtab

#endif  // JTAB_SEMANTICS_HPP
