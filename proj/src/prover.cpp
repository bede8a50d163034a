#include "jtab/prover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "jtab/subformula.hpp"

namespace jtab {

int Budget::effective_size_bound(const FormulaPtr& root) const {
  // The closure can hold exponentially many members in the bound (nested
  // justification chains), so the default stays close to the root size.
  int n = node_count(root);
  return std::max(size_bound > 0 ? size_bound : n + 4, n);
}

int Budget::effective_instantiation_bound(const FormulaPtr& root) const {
  return instantiation_bound > 0 ? instantiation_bound : effective_size_bound(root);
}

namespace {

struct Provenance {
  enum class Kind { Seed, Cs, E1, E2, E5, E6, E7 };
  Kind kind = Kind::Seed;
  TermPtr minor_term;  // E1: the t with A in E(t); E2: the source summand; E5: t
  FormulaPtr imp;      // E1: the A->B member of E(s)
};

struct Demand {
  FormulaPtr premise;      // branch formula ~(s*t):B to branch on
  FormulaPtr inst;         // chosen instantiation A
  FormulaPtr cut_formula;  // minor premise t:A, for guided cut
};

using AtomKey = std::pair<TermPtr, FormulaPtr>;
struct AtomKeyLess {
  bool operator()(const AtomKey& a, const AtomKey& b) const {
    int c = compare(a.first, b.first);
    if (c != 0) return c < 0;
    return compare(a.second, b.second) < 0;
  }
};

// Builds candidate countermodels from saturated branches. Evidence is
// saturated to a fixpoint over exactly the instances whose conclusion atom
// lies in the universe, with provenance kept so a failed validation can name
// the rule application that would defend the branch.
class Extractor {
 public:
  Extractor(FormulaPtr root, LogicId logic, ConstantSpec cs)
      : root_(std::move(root)), logic_(logic), cs_(std::move(cs)) {}

  struct Outcome {
    MModel model;
    bool valid = false;
    std::string failure;
    std::vector<Demand> demands;
  };

  Outcome run(const std::vector<FormulaPtr>& branch) {
    Outcome out;
    MModel& m = out.model;
    std::map<AtomKey, Provenance, AtomKeyLess> prov;

    // certification scope: the weak syntactic closure of root, branch and CS
    m.add_to_universe(root_);
    for (const auto& f : branch) {
      m.add_to_universe(f);
      m.add_to_universe(Formula::neg(f));
    }
    for (const auto& e : cs_.entries()) m.add_to_universe(e);

    FormulaSet on_branch(branch.begin(), branch.end());
    for (const auto& f : branch) {
      if (f->kind() == Formula::Kind::Atom) m.set_valuation(f->name(), true);
      if (f->kind() == Formula::Kind::Just) {
        m.add_evidence(f->term(), f->left());
        prov.emplace(AtomKey{f->term(), f->left()}, Provenance{Provenance::Kind::Seed, {}, {}});
      }
    }
    for (const auto& e : cs_.entries()) {
      m.add_evidence(e->term(), e->left());
      prov.emplace(AtomKey{e->term(), e->left()}, Provenance{Provenance::Kind::Cs, {}, {}});
    }

    saturate(m, prov);

    auto report = check_conditions(m, logic_, cs_);
    bool root_unforced = !forces(m, root_, logic_);
    if (report.ok() && root_unforced) {
      out.valid = true;
      return out;
    }
    if (!report.ok())
      out.failure = report.failures.front().condition + ": " + report.failures.front().witness;
    else
      out.failure = "root is forced by the extracted model";

    // Defenses: branch formulas ~u:X whose evidence atom the saturation
    // filled in anyway. Chasing provenance lands on the application
    // instance whose branching defends the branch.
    std::set<std::string> seen;
    for (const auto& f : branch) {
      auto body = un_neg(f);
      if (!body || body->kind() != Formula::Kind::Just) continue;
      if (!m.has_evidence(body->term(), body->left())) continue;
      chase(m, prov, on_branch, body->term(), body->left(), out.demands, seen);
    }
    std::sort(out.demands.begin(), out.demands.end(), [](const Demand& a, const Demand& b) {
      int na = node_count(a.inst), nb = node_count(b.inst);
      if (na != nb) return na < nb;
      auto ka = print_formula(a.inst) + "|" + print_formula(a.premise);
      auto kb = print_formula(b.inst) + "|" + print_formula(b.premise);
      return ka < kb;
    });
    return out;
  }

 private:
  void saturate(MModel& m, std::map<AtomKey, Provenance, AtomKeyLess>& prov) {
    bool changed = true;
    auto add = [&](const TermPtr& t, const FormulaPtr& a, Provenance p) {
      if (m.has_evidence(t, a)) return false;
      if (!m.in_universe(Formula::just(t, a))) return false;
      m.add_evidence(t, a);
      prov.emplace(AtomKey{t, a}, std::move(p));
      return true;
    };
    while (changed) {
      changed = false;
      std::vector<std::pair<TermPtr, FormulaSet>> snap(m.evidence().begin(), m.evidence().end());
      for (const auto& [s, es] : snap) {
        for (const auto& ab : es) {
          if (ab->kind() != Formula::Kind::Imp) continue;
          for (const auto& [t, et] : snap) {
            if (!et.count(ab->left())) continue;
            changed |= add(Term::app(s, t), ab->right(),
                           Provenance{Provenance::Kind::E1, t, ab});
          }
        }
      }
      for (const auto& [s, es] : snap) {
        for (const auto& [t, et] : snap) {
          auto sum = Term::sum(s, t);
          for (const auto& a : es)
            changed |= add(sum, a, Provenance{Provenance::Kind::E2, s, {}});
          for (const auto& a : et)
            changed |= add(sum, a, Provenance{Provenance::Kind::E2, t, {}});
        }
      }
      if (logic_.has(Axiom::j4)) {
        for (const auto& [t, et] : snap) {
          auto bang = Term::bang(t);
          for (const auto& a : et)
            changed |= add(bang, Formula::just(t, a), Provenance{Provenance::Kind::E5, t, {}});
        }
      }
      if (logic_.has(Axiom::j5)) {
        for (const auto& t : m.term_pool(logic_)) {
          auto q = Term::query(t);
          for (const auto& a : m.universe()) {
            if (m.has_evidence(t, a)) continue;
            changed |= add(q, Formula::neg(Formula::just(t, a)),
                           Provenance{Provenance::Kind::E7, t, {}});
          }
        }
      }
      if (logic_.has(Axiom::jB)) {
        for (const auto& t : m.term_pool(logic_)) {
          auto bq = Term::bar_query(t);
          for (const auto& a : m.universe()) {
            if (forces(m, a, logic_)) continue;
            changed |= add(bq, Formula::neg(Formula::just(t, a)),
                           Provenance{Provenance::Kind::E6, t, {}});
          }
        }
      }
    }
  }

  void chase(const MModel& m, const std::map<AtomKey, Provenance, AtomKeyLess>& prov,
             const FormulaSet& on_branch, const TermPtr& u, const FormulaPtr& x,
             std::vector<Demand>& out, std::set<std::string>& seen) {
    auto it = prov.find(AtomKey{u, x});
    if (it == prov.end()) return;
    const Provenance& p = it->second;
    switch (p.kind) {
      case Provenance::Kind::Seed:
      case Provenance::Kind::Cs:
      case Provenance::Kind::E6:
      case Provenance::Kind::E7:
        return;  // seeds contradict closure; introspective additions have no defense
      case Provenance::Kind::E1: {
        auto premise = Formula::neg(Formula::just(u, x));
        if (!on_branch.count(premise)) return;
        Demand d;
        d.premise = premise;
        d.inst = p.imp->left();
        d.cut_formula = Formula::just(p.minor_term, p.imp->left());
        std::string key = print_formula(d.premise) + "#" + print_formula(d.inst);
        if (seen.insert(key).second) out.push_back(std::move(d));
        return;
      }
      case Provenance::Kind::E2: {
        // membership copied from a summand; defend there
        if (!on_branch.count(Formula::neg(Formula::just(p.minor_term, x)))) return;
        chase(m, prov, on_branch, p.minor_term, x, out, seen);
        return;
      }
      case Provenance::Kind::E5: {
        // x = t:A justified at !t; defend the inner atom
        if (x->kind() != Formula::Kind::Just) return;
        if (!on_branch.count(Formula::neg(x))) return;
        chase(m, prov, on_branch, x->term(), x->left(), out, seen);
        return;
      }
    }
  }

  FormulaPtr root_;
  LogicId logic_;
  ConstantSpec cs_;
};

// Depth-first saturation search shared by both calculi. Branch-local state
// (the once-per-branch application guard) is passed down by value.
class Search {
 public:
  Search(Calculus calculus, FormulaPtr root, LogicId logic, ConstantSpec cs, Budget budget)
      : calculus_(calculus),
        root_(std::move(root)),
        logic_(logic),
        cs_(std::move(cs)),
        budget_(budget),
        tableau_(calculus, logic, cs_, {Formula::neg(root_)}),
        extractor_(root_, logic, cs_) {
    if (auto bad = logic.inadmissible_op(root_))
      throw std::invalid_argument("formula uses operations outside logic " + logic.name());
    auto violations = validate_cs(logic, cs_);
    if (!violations.empty())
      throw std::invalid_argument("invalid constant specification: " + violations.front().reason);
    if (calculus_ != Calculus::JL) {
      std::vector<FormulaPtr> roots{Formula::neg(root_)};
      oracle_ = std::make_unique<SubformulaOracle>(roots, cs_, logic_);
    }
  }

  ProveResult run() {
    ProveResult res;
    Out out = search(tableau_.root_ids().back(), {});
    switch (out) {
      case Out::Closed: {
        res.verdict = Verdict::Proved;
        Tableau proof = condense(tableau_);
        res.check_ok = check_proof(proof).ok();
        if (calculus_ == Calculus::JLT) {
          res.weak_subformula_ok = true;
          for (const auto& n : proof.nodes()) {
            if (!oracle_->contains_weak(n.formula)) res.weak_subformula_ok = false;
          }
        }
        res.proof = std::move(proof);
        break;
      }
      case Out::OpenValidated:
        res.verdict = Verdict::Open;
        res.open_branch = open_branch_;
        res.model = std::move(open_model_);
        break;
      case Out::OpenUnvalidated:
        res.verdict = Verdict::Open;
        res.open_branch = open_branch_;
        res.extraction_failed = true;
        res.note = open_failure_;
        break;
      case Out::Exhausted:
        res.verdict = Verdict::Unknown;
        res.note = "saturated without a certified countermodel: " + open_failure_;
        break;
      case Out::OverBudget:
        res.verdict = Verdict::Unknown;
        res.note = "budget exhausted";
        break;
    }
    return res;
  }

 private:
  enum class Out { Closed, OpenValidated, OpenUnvalidated, Exhausted, OverBudget };

  using Guard = std::set<std::string>;

  Out combine_split(int left, int right, const Guard& guard) {
    Out a = search(left, guard);
    if (a == Out::OpenValidated || a == Out::OpenUnvalidated) return a;
    Out b = search(right, guard);
    if (b == Out::OpenValidated || b == Out::OpenUnvalidated) return b;
    if (a == Out::Closed && b == Out::Closed) return Out::Closed;
    if (a == Out::OverBudget || b == Out::OverBudget) return Out::OverBudget;
    return Out::Exhausted;
  }

  Out search(int leaf, Guard guard) {
    while (true) {
      if (tableau_.branch_status(leaf).closed()) return Out::Closed;
      if (tableau_.size() > budget_.max_nodes) return Out::OverBudget;
      auto branch_ids = tableau_.branch_ids(leaf);
      if (static_cast<int>(branch_ids.size()) > budget_.max_depth) return Out::OverBudget;

      if (auto app = next_nonbranching(branch_ids, guard)) {
        guard.insert(app->second);
        auto created = tableau_.apply(leaf, app->first);
        leaf = created.back();
        continue;
      }
      if (auto split = next_timp(branch_ids, guard)) {
        guard.insert(split->second);
        auto created = tableau_.apply(leaf, split->first);
        return combine_split(created[0], created[1], guard);
      }
      if (calculus_ != Calculus::JL) {
        if (auto pb = next_pb(branch_ids, guard)) {
          guard.insert(pb->second);
          auto created = tableau_.apply(leaf, pb->first);
          return combine_split(created[0], created[1], guard);
        }
      }

      // saturated: try to certify the branch as a countermodel
      auto branch = tableau_.branch_formulas(leaf);
      auto ext = extractor_.run(branch);
      if (ext.valid) {
        open_branch_ = branch;
        open_model_ = std::move(ext.model);
        return Out::OpenValidated;
      }
      open_failure_ = ext.failure;

      // guided defense against the failing evidence instance
      if (calculus_ == Calculus::JL) {
        for (const auto& d : ext.demands) {
          if (node_count(d.inst) > budget_.effective_instantiation_bound(root_)) continue;
          std::string key = "Fapp|" + print_formula(d.premise) + "|" + print_formula(d.inst);
          if (guard.count(key)) continue;
          int pid = tableau_.find_on_branch(leaf, d.premise);
          if (pid < 0) continue;
          guard.insert(key);
          RuleApp app{Rule::FApp, {pid}, d.inst};
          auto created = tableau_.apply(leaf, app);
          return combine_split(created[0], created[1], guard);
        }
      } else if (calculus_ == Calculus::JLTCut) {
        for (const auto& d : ext.demands) {
          std::string key = "cut|" + print_formula(d.cut_formula);
          if (guard.count(key)) continue;
          guard.insert(key);
          RuleApp app{Rule::Cut, {}, d.cut_formula};
          auto created = tableau_.apply(leaf, app);
          return combine_split(created[0], created[1], guard);
        }
      }

      open_branch_ = branch;
      if (logic_.has(Axiom::jB)) return Out::OpenUnvalidated;
      return Out::Exhausted;
    }
  }

  using Pick = std::pair<RuleApp, std::string>;  // application + guard key

  std::optional<Pick> next_nonbranching(const std::vector<int>& branch_ids,
                                        const Guard& guard) {
    auto pick1 = [&](Rule r, int premise) -> std::optional<Pick> {
      std::string key = rule_name(r) + "|" + print_formula(tableau_.node(premise).formula);
      if (guard.count(key)) return std::nullopt;
      return Pick{RuleApp{r, {premise}, nullptr}, key};
    };
    using FK = Formula::Kind;
    using TK = Term::Kind;
    bool jl = calculus_ == Calculus::JL;

    for (int id : branch_ids) {
      const auto& f = tableau_.node(id).formula;
      if (f->kind() == FK::Just) {
        if (logic_.has(Axiom::jT)) {
          if (auto p = pick1(Rule::TColon, id)) return p;
        }
        if (!jl && logic_.has(Axiom::jD) && f->left()->kind() == FK::Bottom) {
          if (auto p = pick1(Rule::TBotColon, id)) return p;
        }
        continue;
      }
      auto body = un_neg(f);
      if (!body) continue;
      if (body->kind() == FK::Neg) {
        if (auto p = pick1(Rule::FNeg, id)) return p;
        continue;
      }
      if (body->kind() == FK::Imp) {
        if (auto p = pick1(Rule::FImp, id)) return p;
        continue;
      }
      if (body->kind() != FK::Just) continue;
      switch (body->term()->kind()) {
        case TK::Sum:
          if (jl) {
            if (auto p = pick1(Rule::FPlus, id)) return p;
          } else {
            if (auto p = pick1(Rule::FPlusL, id)) return p;
            if (auto p = pick1(Rule::FPlusR, id)) return p;
          }
          break;
        case TK::Bang:
          if (logic_.has(Axiom::j4) && body->left()->kind() == FK::Just &&
              equal(body->left()->term(), body->term()->left())) {
            if (auto p = pick1(Rule::FBang, id)) return p;
          }
          break;
        case TK::BarQuery:
          if (logic_.has(Axiom::jB)) {
            auto inner = un_neg(body->left());
            if (inner && inner->kind() == FK::Just &&
                equal(inner->term(), body->term()->left())) {
              if (auto p = pick1(Rule::FBarQuery, id)) return p;
            }
          }
          break;
        case TK::Query:
          if (logic_.has(Axiom::j5)) {
            auto inner = un_neg(body->left());
            if (inner && inner->kind() == FK::Just &&
                equal(inner->term(), body->term()->left())) {
              if (auto p = pick1(Rule::FQuery, id)) return p;
            }
          }
          break;
        default:
          break;
      }
    }

    // two-premise T* in the analytic calculi
    if (!jl) {
      for (int i : branch_ids) {
        const auto& fi = tableau_.node(i).formula;
        if (fi->kind() != FK::Just || fi->left()->kind() != FK::Imp) continue;
        for (int j : branch_ids) {
          const auto& fj = tableau_.node(j).formula;
          if (fj->kind() != FK::Just) continue;
          if (!equal(fj->left(), fi->left()->left())) continue;
          auto conclusion =
              Formula::just(Term::app(fi->term(), fj->term()), fi->left()->right());
          std::string key = "Tapp|" + print_formula(fi) + "|" + print_formula(fj);
          if (guard.count(key)) continue;
          if (calculus_ == Calculus::JLT) {
            if (!oracle_->contains(fi) || !oracle_->contains(fj) ||
                !oracle_->contains(conclusion))
              continue;
          }
          return Pick{RuleApp{Rule::TApp, {i, j}, nullptr}, key};
        }
      }
    }

    // zero-premise refutation of t:False over branch subterms
    if (jl && logic_.has(Axiom::jD)) {
      TermSet pool;
      for (int id : branch_ids) {
        for (const auto& t : terms_of(tableau_.node(id).formula)) {
          for (const auto& st : subterms(t)) pool.insert(st);
        }
      }
      std::vector<TermPtr> ordered(pool.begin(), pool.end());
      std::sort(ordered.begin(), ordered.end(), [](const TermPtr& a, const TermPtr& b) {
        int na = node_count(a), nb = node_count(b);
        if (na != nb) return na < nb;
        return print_term(a) < print_term(b);
      });
      for (const auto& t : ordered) {
        std::string key = "Fbot|" + print_term(t);
        if (guard.count(key)) continue;
        return Pick{RuleApp{Rule::FBotColon, {}, Formula::just(t, Formula::bottom())}, key};
      }
    }
    return std::nullopt;
  }

  std::optional<Pick> next_timp(const std::vector<int>& branch_ids,
                                const Guard& guard) {
    for (int id : branch_ids) {
      const auto& f = tableau_.node(id).formula;
      if (f->kind() != Formula::Kind::Imp) continue;
      std::string key = "Timp|" + print_formula(f);
      if (guard.count(key)) continue;
      return Pick{RuleApp{Rule::TImp, {id}, nullptr}, key};
    }
    return std::nullopt;
  }

  // Lazy PB: constant-specification entries first, then closure members that
  // enable a T* step against some branch formula (t:X for a pooled subterm t
  // when s:(X -> Y) is on the branch and (s*t):Y stays in the closure).
  std::optional<Pick> next_pb(const std::vector<int>& branch_ids, const Guard& guard) {
    std::vector<FormulaPtr> candidates(cs_.entries().begin(), cs_.entries().end());
    for (int id : branch_ids) {
      const auto& f = tableau_.node(id).formula;
      if (f->kind() != Formula::Kind::Just || f->left()->kind() != Formula::Kind::Imp) continue;
      for (const auto& t : oracle_->term_pool()) {
        if (!logic_.admits(t->kind())) continue;
        auto phi = Formula::just(t, f->left()->left());
        if (!oracle_->contains(phi)) continue;
        auto conclusion = Formula::just(Term::app(f->term(), t), f->left()->right());
        if (!oracle_->contains(conclusion)) continue;
        candidates.push_back(phi);
      }
    }
    std::sort(candidates.begin(), candidates.end(), size_lex_less);
    for (const auto& phi : candidates) {
      std::string key = "PB|" + print_formula(phi);
      if (guard.count(key)) continue;
      return Pick{RuleApp{Rule::PB, {}, phi}, key};
    }
    return std::nullopt;
  }

  Calculus calculus_;
  FormulaPtr root_;
  LogicId logic_;
  ConstantSpec cs_;
  Budget budget_;
  Tableau tableau_;
  Extractor extractor_;
  std::unique_ptr<SubformulaOracle> oracle_;

  std::vector<FormulaPtr> open_branch_;
  std::optional<MModel> open_model_;
  std::string open_failure_;
};

}  // namespace

ProveResult prove_jl(const FormulaPtr& root, const LogicId& logic, const ConstantSpec& cs,
                     const Budget& budget) {
  return Search(Calculus::JL, root, logic, cs, budget).run();
}

ProveResult prove_analytic(const FormulaPtr& root, const LogicId& logic, const ConstantSpec& cs,
                           const Budget& budget, bool allow_cut) {
  return Search(allow_cut ? Calculus::JLTCut : Calculus::JLT, root, logic, cs, budget).run();
}

ExtractionResult extract_countermodel(const std::vector<FormulaPtr>& branch,
                                      const FormulaPtr& root, const LogicId& logic,
                                      const ConstantSpec& cs) {
  Extractor ex(root, logic, cs);
  auto out = ex.run(branch);
  ExtractionResult res;
  if (out.valid)
    res.model = std::move(out.model);
  else
    res.failure = out.failure;
  return res;
}

}  // namespace jtab
