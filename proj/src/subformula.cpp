#include "jtab/subformula.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtab {

// The extended-subformula closure has a normal form: a base of syntactic
// subformulas of the roots and the CS entries, extended by prefixing any
// pooled subterm as a justification (t:F for pooled t and closure member F).
// Decomposing such a prefix only reaches formulas already in the closure, and
// no new terms ever appear, so membership reduces to stripping prefixes.
SubformulaOracle::SubformulaOracle(std::vector<FormulaPtr> roots, const ConstantSpec& cs,
                                   LogicId logic)
    : roots_(std::move(roots)), logic_(logic) {
  for (const auto& r : roots_) {
    for (const auto& f : syntactic_subformulas(r)) add(f, "part of the root");
    provenance_[r] = "root";
  }
  for (const auto& e : cs.entries()) {
    for (const auto& f : syntactic_subformulas(e)) add(f, "part of a cs entry");
    provenance_[e] = "cs entry";
  }
}

bool SubformulaOracle::add(const FormulaPtr& f, const std::string& why) {
  if (!members_.insert(f).second) return false;
  provenance_.emplace(f, why);
  for (const auto& t : terms_of(f)) {
    for (const auto& st : subterms(t)) term_pool_.insert(st);
  }
  return true;
}

bool SubformulaOracle::contains(const FormulaPtr& a) {
  FormulaPtr cur = a;
  while (true) {
    if (members_.count(cur)) return true;
    if (cur->kind() != Formula::Kind::Just) return false;
    if (!term_pool_.count(cur->term())) return false;
    if (!logic_.admits(cur->term()->kind())) return false;
    cur = cur->left();
  }
}

bool SubformulaOracle::contains_weak(const FormulaPtr& a) {
  if (contains(a)) return true;
  auto body = un_neg(a);
  return body && contains(body);
}

const TermSet& SubformulaOracle::term_pool() const { return term_pool_; }

std::vector<FormulaPtr> SubformulaOracle::members_up_to(int bound) {
  // breadth-first justification prefixing over the base, capped by size
  FormulaSet out;
  for (const auto& f : members_) {
    if (node_count(f) <= bound) out.insert(f);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<FormulaPtr> snapshot(out.begin(), out.end());
    for (const auto& t : term_pool_) {
      if (!logic_.admits(t->kind())) continue;
      int tn = node_count(t);
      for (const auto& f : snapshot) {
        if (tn + node_count(f) + 1 > bound) continue;
        auto built = Formula::just(t, f);
        if (out.insert(built).second) {
          provenance_.emplace(built,
                              "subterm " + print_term(t) + " : " + print_formula(f));
          changed = true;
        }
      }
    }
  }
  std::vector<FormulaPtr> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), size_lex_less);
  return sorted;
}

std::vector<FormulaPtr> subformulas_up_to(const ClosureRequest& req) {
  if (req.size_bound < node_count(req.root))
    throw std::invalid_argument("size bound below the root's node count");
  SubformulaOracle oracle({req.root}, req.cs, req.logic);
  return oracle.members_up_to(req.size_bound);
}

std::vector<FormulaPtr> weak_subformulas_up_to(const ClosureRequest& req) {
  auto base = subformulas_up_to(req);
  std::vector<FormulaPtr> out;
  out.reserve(base.size() * 2);
  for (const auto& f : base) {
    out.push_back(f);
    out.push_back(Formula::neg(f));
  }
  std::sort(out.begin(), out.end(), size_lex_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
            out.end());
  return out;
}

bool is_subformula(const FormulaPtr& a, const FormulaPtr& b, const ConstantSpec& cs,
                   const LogicId& logic) {
  SubformulaOracle oracle({b}, cs, logic);
  return oracle.contains(a);
}

bool is_weak_subformula(const FormulaPtr& a, const FormulaPtr& b, const ConstantSpec& cs,
                        const LogicId& logic) {
  SubformulaOracle oracle({b}, cs, logic);
  return oracle.contains_weak(a);
}

}  // namespace jtab
