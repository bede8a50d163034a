#ifndef JTAB_TABLEAU_HPP
#define JTAB_TABLEAU_HPP

#include <optional>
#include <string>
#include <vector>

#include "jtab/logic.hpp"
#include "jtab/subformula.hpp"
#include "jtab/syntax.hpp"

namespace jtab {

/// The two calculi plus the cut extension of the analytic one.
/// JL: non-analytic branching on applications, combined F+, zero-premise
/// refutation of t:False under jD. JLT: split F+, two-premise T*, PB
/// restricted to subformulas of the root, T:False under jD. JLTCut adds the
/// unrestricted cut; the side condition of T* is not enforced there (cut
/// elimination is what establishes it).
enum class Calculus { JL, JLT, JLTCut };

std::string calculus_name(Calculus c);
std::optional<Calculus> calculus_from_name(const std::string& name);

enum class Rule {
  FNeg, FImp, TImp,            // propositional
  FPlus, FApp,                 // JL justification rules
  TColon, FBotColon, FBang, FBarQuery, FQuery,  // per-axiom rules
  FPlusL, FPlusR, TApp, TBotColon,              // JLT justification rules
  PB, Cut
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
bool rule_branches(Rule r);

struct RuleApp {
  Rule rule;
  std::vector<int> premises;
  FormulaPtr instantiation;  // chosen A for FApp/PB/Cut; t:False for FBotColon

  bool same_as(const RuleApp& other) const;
};

struct BranchStatus {
  enum class Kind { Open, Contradiction, Bottom, CsRefutation };
  Kind kind = Kind::Open;
  FormulaPtr witness;              // A for contradictions, the CS entry, or False
  int witness_node = -1;           // positive occurrence when ids are known
  int witness_neg_node = -1;       // negated occurrence
  bool closed() const { return kind != Kind::Open; }
};

/// Closure test on a plain sequence of formulas: a contradiction pair, an
/// occurrence of False, or a negated CS entry.
BranchStatus branch_closed(const std::vector<FormulaPtr>& branch, const ConstantSpec& cs);

struct Node {
  int id = -1;
  FormulaPtr formula;
  std::optional<RuleApp> rule;  // nullopt for root nodes
  int parent = -1;
  std::vector<int> children;
};

enum class DefectClass {
  Structure,
  RuleNotInCalculus,
  RuleNotInLogic,
  SchemaMismatch,
  PBRestriction,
  TAppRestriction,
  OpenBranch,
  InvalidCS,
  InadmissibleOp,
};

std::string defect_class_name(DefectClass c);

struct Defect {
  int node = -1;
  DefectClass cls;
  std::string message;
};

struct CheckResult {
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
  bool has(DefectClass c) const;
  std::string to_string() const;
};

/// A tableau: a binary tree of formula nodes. The root prefix is a chain of
/// unjustified nodes (one for proofs, several for set-rooted tableaux); every
/// other node records the rule application that introduced it. Node ids are
/// stable integers in creation order.
class Tableau {
public:
  Tableau(Calculus calculus, LogicId logic, ConstantSpec cs, std::vector<FormulaPtr> roots);

  Calculus calculus() const { return calculus_; }
  LogicId logic() const { return logic_; }
  const ConstantSpec& cs() const { return cs_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(id); }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<int>& root_ids() const { return roots_; }
  FormulaPtr root_formula() const { return nodes_[0].formula; }

  /// Low-level append below a leaf or as extra branching child. No schema
  /// validation; check_proof is the arbiter.
  int append(int parent, FormulaPtr formula, std::optional<RuleApp> rule);

  /// Validated rule application at a leaf. Non-branching rules append their
  /// conclusions in schema order; branching rules create the two children.
  /// Returns the ids of the created nodes. Throws std::invalid_argument on
  /// inadmissible applications. `unrestricted_fbot` lifts the subterm
  /// restriction on the zero-premise t:False refutation.
  std::vector<int> apply(int at, const RuleApp& app, bool unrestricted_fbot = false);

  /// Value-semantics variant of apply.
  Tableau applied(int at, const RuleApp& app, bool unrestricted_fbot = false) const;

  bool is_leaf(int id) const { return nodes_[id].children.empty(); }
  std::vector<int> leaves() const;
  std::vector<int> branch_ids(int leaf) const;               // root..leaf
  std::vector<FormulaPtr> branch_formulas(int leaf) const;   // root..leaf
  /// Innermost node on the branch to `from` carrying exactly `f`, or -1.
  int find_on_branch(int from, const FormulaPtr& f) const;
  BranchStatus branch_status(int leaf) const;

  /// Node ids of the subtree rooted at id (preorder, id first).
  std::vector<int> subtree(int id) const;

  /// Rule multiset of the proof (root nodes excluded); one entry per
  /// application (branching and paired conclusions count once).
  std::vector<Rule> rule_applications() const;

  friend Tableau condense(const Tableau& t);

private:
  Calculus calculus_;
  LogicId logic_;
  ConstantSpec cs_;
  std::vector<Node> nodes_;
  std::vector<int> roots_;
};

/// Full independent verification: structure, per-rule schemas, calculus and
/// logic admissibility, the analytic side conditions, and closure of every
/// leaf branch.
CheckResult check_proof(const Tableau& t);

/// Removes branching splits whose subtree closes without using the split
/// formula, then renumbers nodes in preorder. The result proves the same
/// root with a subset of the rule applications.
Tableau condense(const Tableau& t);

/// Numbered-line rendering with closure marks.
std::string render_text(const Tableau& t);

}  // namespace jtab

#endif  // JTAB_TABLEAU_HPP
