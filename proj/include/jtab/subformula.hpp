#ifndef JTAB_SUBFORMULA_HPP
#define JTAB_SUBFORMULA_HPP

#include <map>
#include <string>
#include <vector>

#include "jtab/logic.hpp"
#include "jtab/syntax.hpp"

namespace jtab {

/// The extended subformula relation for a constant specification. Beyond the
/// syntactic clauses it contains t:F for any subterm t of a term occurring in
/// the closure and any closure member F, every subformula of every CS entry,
/// and is transitively closed. The closure normalizes to "a base of
/// syntactic subformulas of roots and CS entries, under arbitrary pooled-term
/// justification prefixes", so membership is a linear scan; only bounded
/// enumeration materializes members (the unbounded closure is infinite in
/// general).
class SubformulaOracle {
public:
  SubformulaOracle(std::vector<FormulaPtr> roots, const ConstantSpec& cs, LogicId logic);

  /// Decides whether a is in the closure of the roots.
  bool contains(const FormulaPtr& a);
  /// a or its unnegated body is in the closure.
  bool contains_weak(const FormulaPtr& a);

  /// All subterms of terms occurring in the closure.
  const TermSet& term_pool() const;

  /// All closure members with node count <= bound, deterministically ordered
  /// by (node count, canonical string).
  std::vector<FormulaPtr> members_up_to(int bound);

  /// One-line derivation note per known member.
  const std::map<FormulaPtr, std::string, FormulaLess>& provenance() const { return provenance_; }

private:
  bool add(const FormulaPtr& f, const std::string& why);

  std::vector<FormulaPtr> roots_;
  LogicId logic_;
  FormulaSet members_;
  TermSet term_pool_;
  std::map<FormulaPtr, std::string, FormulaLess> provenance_;
};

struct ClosureRequest {
  FormulaPtr root;
  ConstantSpec cs;
  LogicId logic;
  int size_bound = 0;  // max node count of enumerated formulas
};

/// Subformulas of the root up to the bound (no negations), sorted.
std::vector<FormulaPtr> subformulas_up_to(const ClosureRequest& req);

/// Subformulas up to the bound plus the single negation of each, sorted.
std::vector<FormulaPtr> weak_subformulas_up_to(const ClosureRequest& req);

bool is_subformula(const FormulaPtr& a, const FormulaPtr& b, const ConstantSpec& cs,
                   const LogicId& logic);
bool is_weak_subformula(const FormulaPtr& a, const FormulaPtr& b, const ConstantSpec& cs,
                        const LogicId& logic);

}  // namespace jtab

#endif  // JTAB_SUBFORMULA_HPP
