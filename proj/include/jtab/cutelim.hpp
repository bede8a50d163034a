#ifndef JTAB_CUTELIM_HPP
#define JTAB_CUTELIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "jtab/tableau.hpp"

namespace jtab {

struct CutSite {
  int split_parent = -1;  // node whose two children are the cut halves
  int pos_child = -1;     // the A side
  int neg_child = -1;     // the ~A side
  FormulaPtr cut_formula;
  int rank = 0;
  int weight = 0;  // formulas strictly below the two halves
  bool is_minimal = false;
  bool is_branch_end = false;
};

struct MeasureClaim {
  enum class Relation { LowerRank, SameRankLowerWeight, BecamePB };
  Relation relation;
  FormulaPtr cut_formula;
  int rank = 0;
  int weight = 0;
  std::string to_string() const;
};

struct ElimStep {
  char kase = '?';  // 'I', 'II' -> '2', 'III' -> '3'
  std::string sub_case;
  FormulaPtr cut_formula;
  int rank = 0;
  int weight = 0;
  std::vector<MeasureClaim> claims;  // re-verified on the rewritten tree
};

struct ElimTrace {
  std::vector<ElimStep> steps;
  std::vector<std::string> snapshots;  // optional renderings per step
  bool keep_snapshots = false;
};

/// An innermost cut (no cuts inside its subtableaux), deepest first, then
/// smallest split-parent id; nullopt iff the tableau is cut-free.
std::optional<CutSite> find_minimal_cut(const Tableau& t);

/// All cut occurrences with their measures.
std::vector<CutSite> cut_sites(const Tableau& t);

/// Applies one elimination transformation at a minimal cut. The result stays
/// a closed tableau of the cut calculus; every measure claim is recomputed on
/// the rewritten tree and a violation aborts with std::logic_error.
std::pair<Tableau, ElimStep> eliminate_step(const Tableau& t, const CutSite& site);

/// Eliminates every cut, deepest minimal cuts first, and returns the proof in
/// the analytic calculus where every two-way split is a legal PB.
Tableau eliminate_all(const Tableau& t, ElimTrace* trace = nullptr);

}  // namespace jtab

#endif  // JTAB_CUTELIM_HPP
