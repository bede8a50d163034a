#ifndef JTAB_PROVER_HPP
#define JTAB_PROVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "jtab/semantics.hpp"
#include "jtab/tableau.hpp"

namespace jtab {

struct Budget {
  int max_nodes = 4000;
  int max_depth = 200;
  int size_bound = 0;           // subformula closure bound; 0 = 3 * |root|
  int instantiation_bound = 0;  // max node count of a chosen instantiation; 0 = size_bound

  int effective_size_bound(const FormulaPtr& root) const;
  int effective_instantiation_bound(const FormulaPtr& root) const;
};

enum class Verdict { Proved, Open, Unknown };

struct ProveResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Tableau> proof;          // Proved: condensed, check_proof-clean
  std::vector<FormulaPtr> open_branch;   // Open: the saturated branch
  std::optional<MModel> model;           // Open: validated countermodel
  bool extraction_failed = false;        // Open without model (jB logics only)
  bool check_ok = false;                 // Proved: check_proof result
  bool weak_subformula_ok = true;        // analytic cut-free proofs: node scan
  std::string note;
};

/// Proof search in the non-analytic calculus. Branching on applications is
/// instantiated on demand: when a saturated branch fails countermodel
/// validation, the failing evidence instance names the branching formula to
/// try next. Open verdicts always carry a validated countermodel (except
/// under jB, where extraction may fail and is reported as such).
ProveResult prove_jl(const FormulaPtr& root, const LogicId& logic, const ConstantSpec& cs,
                     const Budget& budget = {});

/// Proof search in the analytic calculus: split sum rules, two-premise T*
/// under its side condition, PB drawn lazily from the closure of the root.
/// With `allow_cut` the target calculus admits the unrestricted cut and T*
/// is applied without its side condition.
ProveResult prove_analytic(const FormulaPtr& root, const LogicId& logic, const ConstantSpec& cs,
                           const Budget& budget = {}, bool allow_cut = false);

struct ExtractionResult {
  std::optional<MModel> model;
  std::string failure;
  bool ok() const { return model.has_value(); }
};

/// Builds a candidate countermodel from a saturated open branch: valuation
/// from branch literals, evidence seeded from branch t:A formulas plus CS,
/// then saturated inside the universe (the weak syntactic closure of the
/// root, the branch and the CS). The result is validated; failure is
/// reported, never papered over.
ExtractionResult extract_countermodel(const std::vector<FormulaPtr>& branch,
                                      const FormulaPtr& root, const LogicId& logic,
                                      const ConstantSpec& cs);

}  // namespace jtab

#endif  // JTAB_PROVER_HPP
