#include "jtab/tableau.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jtab {

std::string calculus_name(Calculus c) {
  switch (c) {
    case Calculus::JL: return "jl";
    case Calculus::JLT: return "jlt";
    case Calculus::JLTCut: return "jlt+cut";
  }
  return "?";
}

std::optional<Calculus> calculus_from_name(const std::string& name) {
  if (name == "jl") return Calculus::JL;
  if (name == "jlt") return Calculus::JLT;
  if (name == "jlt+cut") return Calculus::JLTCut;
  return std::nullopt;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::FNeg: return "Fneg";
    case Rule::FImp: return "Fimp";
    case Rule::TImp: return "Timp";
    case Rule::FPlus: return "Fplus";
    case Rule::FApp: return "Fapp";
    case Rule::TColon: return "Tcolon";
    case Rule::FBotColon: return "Fbot";
    case Rule::FBang: return "Fbang";
    case Rule::FBarQuery: return "Fbarquery";
    case Rule::FQuery: return "Fquery";
    case Rule::FPlusL: return "FplusL";
    case Rule::FPlusR: return "FplusR";
    case Rule::TApp: return "Tapp";
    case Rule::TBotColon: return "Tbot";
    case Rule::PB: return "PB";
    case Rule::Cut: return "cut";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  static const std::map<std::string, Rule> table = {
      {"Fneg", Rule::FNeg},           {"Fimp", Rule::FImp},
      {"Timp", Rule::TImp},           {"Fplus", Rule::FPlus},
      {"Fapp", Rule::FApp},           {"Tcolon", Rule::TColon},
      {"Fbot", Rule::FBotColon},      {"Fbang", Rule::FBang},
      {"Fbarquery", Rule::FBarQuery}, {"Fquery", Rule::FQuery},
      {"FplusL", Rule::FPlusL},       {"FplusR", Rule::FPlusR},
      {"Tapp", Rule::TApp},           {"Tbot", Rule::TBotColon},
      {"PB", Rule::PB},               {"cut", Rule::Cut}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool rule_branches(Rule r) {
  return r == Rule::TImp || r == Rule::FApp || r == Rule::PB || r == Rule::Cut;
}

bool RuleApp::same_as(const RuleApp& other) const {
  if (rule != other.rule || premises != other.premises) return false;
  if (!instantiation != !other.instantiation) return false;
  return !instantiation || equal(instantiation, other.instantiation);
}

std::string defect_class_name(DefectClass c) {
  switch (c) {
    case DefectClass::Structure: return "structure";
    case DefectClass::RuleNotInCalculus: return "rule-not-in-calculus";
    case DefectClass::RuleNotInLogic: return "rule-not-in-logic";
    case DefectClass::SchemaMismatch: return "schema-mismatch";
    case DefectClass::PBRestriction: return "PB-restriction";
    case DefectClass::TAppRestriction: return "Tapp-restriction";
    case DefectClass::OpenBranch: return "open-branch";
    case DefectClass::InvalidCS: return "invalid-cs";
    case DefectClass::InadmissibleOp: return "inadmissible-operation";
  }
  return "?";
}

bool CheckResult::has(DefectClass c) const {
  return std::any_of(defects.begin(), defects.end(),
                     [c](const Defect& d) { return d.cls == c; });
}

std::string CheckResult::to_string() const {
  std::ostringstream os;
  for (const auto& d : defects)
    os << "node " << d.node << ": [" << defect_class_name(d.cls) << "] " << d.message << "\n";
  return os.str();
}

BranchStatus branch_closed(const std::vector<FormulaPtr>& branch, const ConstantSpec& cs) {
  FormulaSet seen;
  for (const auto& f : branch) {
    BranchStatus st;
    if (f->kind() == Formula::Kind::Bottom) {
      st.kind = BranchStatus::Kind::Bottom;
      st.witness = f;
      return st;
    }
    if (auto body = un_neg(f)) {
      if (seen.count(body)) {
        st.kind = BranchStatus::Kind::Contradiction;
        st.witness = body;
        return st;
      }
      if (cs_member(cs, body)) {
        st.kind = BranchStatus::Kind::CsRefutation;
        st.witness = body;
        return st;
      }
    }
    if (seen.count(Formula::neg(f))) {
      st.kind = BranchStatus::Kind::Contradiction;
      st.witness = f;
      return st;
    }
    seen.insert(f);
  }
  return {};
}

Tableau::Tableau(Calculus calculus, LogicId logic, ConstantSpec cs, std::vector<FormulaPtr> roots)
    : calculus_(calculus), logic_(logic), cs_(std::move(cs)) {
  if (roots.empty()) throw std::invalid_argument("tableau needs at least one root formula");
  int parent = -1;
  for (auto& f : roots) {
    int id = append(parent, std::move(f), std::nullopt);
    roots_.push_back(id);
    parent = id;
  }
}

int Tableau::append(int parent, FormulaPtr formula, std::optional<RuleApp> rule) {
  Node n;
  n.id = static_cast<int>(nodes_.size());
  n.formula = std::move(formula);
  n.rule = std::move(rule);
  n.parent = parent;
  if (parent >= 0) nodes_.at(parent).children.push_back(n.id);
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

namespace {

struct Schema {
  std::vector<FormulaPtr> conclusions;
  bool branching = false;
};

using FK = Formula::Kind;
using TK = Term::Kind;

// Expected conclusions for a rule given its premise formulas and
// instantiation; nullopt when the shapes do not match.
std::optional<Schema> rule_schema(Rule r, const std::vector<FormulaPtr>& prem,
                                  const FormulaPtr& inst) {
  auto neg_just = [](const FormulaPtr& f, TK op) -> FormulaPtr {
    // matches ~OP(t):A, returns the Just inside
    auto body = un_neg(f);
    if (!body || body->kind() != FK::Just) return nullptr;
    if (body->term()->kind() != op) return nullptr;
    return body;
  };
  switch (r) {
    case Rule::FNeg: {
      if (prem.size() != 1) return std::nullopt;
      auto a = un_neg(prem[0]);
      if (!a) return std::nullopt;
      auto b = un_neg(a);
      if (!b) return std::nullopt;
      return Schema{{b}, false};
    }
    case Rule::FImp: {
      if (prem.size() != 1) return std::nullopt;
      auto body = un_neg(prem[0]);
      if (!body || body->kind() != FK::Imp) return std::nullopt;
      return Schema{{body->left(), Formula::neg(body->right())}, false};
    }
    case Rule::TImp: {
      if (prem.size() != 1 || prem[0]->kind() != FK::Imp) return std::nullopt;
      return Schema{{Formula::neg(prem[0]->left()), prem[0]->right()}, true};
    }
    case Rule::FPlus: {
      if (prem.size() != 1) return std::nullopt;
      auto just = neg_just(prem[0], TK::Sum);
      if (!just) return std::nullopt;
      auto sum = just->term();
      return Schema{{Formula::neg(Formula::just(sum->left(), just->left())),
                     Formula::neg(Formula::just(sum->right(), just->left()))},
                    false};
    }
    case Rule::FApp: {
      if (prem.size() != 1 || !inst) return std::nullopt;
      auto just = neg_just(prem[0], TK::App);
      if (!just) return std::nullopt;
      auto app = just->term();
      auto b = just->left();
      return Schema{{Formula::neg(Formula::just(app->left(), Formula::imp(inst, b))),
                     Formula::neg(Formula::just(app->right(), inst))},
                    true};
    }
    case Rule::TColon: {
      if (prem.size() != 1 || prem[0]->kind() != FK::Just) return std::nullopt;
      return Schema{{prem[0]->left()}, false};
    }
    case Rule::FBotColon: {
      if (!prem.empty() || !inst) return std::nullopt;
      if (inst->kind() != FK::Just || inst->left()->kind() != FK::Bottom) return std::nullopt;
      return Schema{{Formula::neg(inst)}, false};
    }
    case Rule::FBang: {
      if (prem.size() != 1) return std::nullopt;
      auto just = neg_just(prem[0], TK::Bang);
      if (!just || just->left()->kind() != FK::Just) return std::nullopt;
      auto t = just->term()->left();
      if (!equal(just->left()->term(), t)) return std::nullopt;
      return Schema{{Formula::neg(just->left())}, false};
    }
    case Rule::FBarQuery: {
      if (prem.size() != 1) return std::nullopt;
      auto just = neg_just(prem[0], TK::BarQuery);
      if (!just) return std::nullopt;
      auto inner = un_neg(just->left());
      if (!inner || inner->kind() != FK::Just) return std::nullopt;
      if (!equal(inner->term(), just->term()->left())) return std::nullopt;
      return Schema{{inner->left()}, false};
    }
    case Rule::FQuery: {
      if (prem.size() != 1) return std::nullopt;
      auto just = neg_just(prem[0], TK::Query);
      if (!just) return std::nullopt;
      auto inner = un_neg(just->left());
      if (!inner || inner->kind() != FK::Just) return std::nullopt;
      if (!equal(inner->term(), just->term()->left())) return std::nullopt;
      return Schema{{inner}, false};
    }
    case Rule::FPlusL:
    case Rule::FPlusR: {
      if (prem.size() != 1) return std::nullopt;
      auto just = neg_just(prem[0], TK::Sum);
      if (!just) return std::nullopt;
      auto side = r == Rule::FPlusL ? just->term()->left() : just->term()->right();
      return Schema{{Formula::neg(Formula::just(side, just->left()))}, false};
    }
    case Rule::TApp: {
      if (prem.size() != 2) return std::nullopt;
      for (int order = 0; order < 2; order++) {
        const auto& imp = prem[order];
        const auto& arg = prem[1 - order];
        if (imp->kind() != FK::Just || imp->left()->kind() != FK::Imp) continue;
        if (arg->kind() != FK::Just) continue;
        if (!equal(imp->left()->left(), arg->left())) continue;
        return Schema{{Formula::just(Term::app(imp->term(), arg->term()), imp->left()->right())},
                      false};
      }
      return std::nullopt;
    }
    case Rule::TBotColon: {
      if (prem.size() != 1 || prem[0]->kind() != FK::Just) return std::nullopt;
      if (prem[0]->left()->kind() != FK::Bottom) return std::nullopt;
      return Schema{{Formula::bottom()}, false};
    }
    case Rule::PB:
    case Rule::Cut: {
      if (!prem.empty() || !inst) return std::nullopt;
      return Schema{{inst, Formula::neg(inst)}, true};
    }
  }
  return std::nullopt;
}

bool rule_in_calculus(Rule r, Calculus c) {
  switch (r) {
    case Rule::FNeg:
    case Rule::FImp:
    case Rule::TImp:
    case Rule::TColon:
    case Rule::FBang:
    case Rule::FBarQuery:
    case Rule::FQuery:
      return true;
    case Rule::FPlus:
    case Rule::FApp:
    case Rule::FBotColon:
      return c == Calculus::JL;
    case Rule::FPlusL:
    case Rule::FPlusR:
    case Rule::TApp:
    case Rule::TBotColon:
    case Rule::PB:
      return c != Calculus::JL;
    case Rule::Cut:
      return c == Calculus::JLTCut;
  }
  return false;
}

// Per-axiom rules need the axiom in the logic; the rest are unconditional.
std::optional<Axiom> rule_axiom(Rule r) {
  switch (r) {
    case Rule::TColon: return Axiom::jT;
    case Rule::FBotColon:
    case Rule::TBotColon: return Axiom::jD;
    case Rule::FBang: return Axiom::j4;
    case Rule::FBarQuery: return Axiom::jB;
    case Rule::FQuery: return Axiom::j5;
    default: return std::nullopt;
  }
}

}  // namespace

std::vector<int> Tableau::apply(int at, const RuleApp& app, bool unrestricted_fbot) {
  if (at < 0 || at >= size()) throw std::invalid_argument("no such node");
  if (!is_leaf(at)) throw std::invalid_argument("rule applications extend a leaf");
  if (!rule_in_calculus(app.rule, calculus_))
    throw std::invalid_argument("rule " + rule_name(app.rule) + " is not part of calculus " +
                                calculus_name(calculus_));
  if (auto ax = rule_axiom(app.rule)) {
    if (!logic_.has(*ax))
      throw std::invalid_argument("rule " + rule_name(app.rule) + " needs an axiom logic " +
                                  logic_.name() + " lacks");
  }
  auto branch = branch_ids(at);
  std::vector<FormulaPtr> prem;
  for (int p : app.premises) {
    if (std::find(branch.begin(), branch.end(), p) == branch.end())
      throw std::invalid_argument("premise " + std::to_string(p) + " is not on the branch");
    prem.push_back(node(p).formula);
  }
  auto schema = rule_schema(app.rule, prem, app.instantiation);
  if (!schema) throw std::invalid_argument("premises do not match rule " + rule_name(app.rule));

  if (calculus_ != Calculus::JL) {
    std::vector<FormulaPtr> root_fs;
    for (int r : roots_) root_fs.push_back(node(r).formula);
    SubformulaOracle oracle(root_fs, cs_, logic_);
    if (app.rule == Rule::PB && !oracle.contains(app.instantiation))
      throw std::invalid_argument("PB formula is not a subformula of the root");
    if (app.rule == Rule::TApp && calculus_ == Calculus::JLT) {
      for (const auto& f : {prem[0], prem[1], schema->conclusions[0]}) {
        if (!oracle.contains(f))
          throw std::invalid_argument("T* side condition fails for " + print_formula(f));
      }
    }
  }
  if (app.rule == Rule::FBotColon && !unrestricted_fbot) {
    TermSet pool;
    for (int id : branch) {
      for (const auto& t : terms_of(node(id).formula)) {
        for (const auto& st : subterms(t)) pool.insert(st);
      }
    }
    if (!pool.count(app.instantiation->term()))
      throw std::invalid_argument("t:False refutation term is not a subterm on the branch");
  }

  std::vector<int> created;
  if (schema->branching) {
    created.push_back(append(at, schema->conclusions[0], app));
    created.push_back(append(at, schema->conclusions[1], app));
  } else {
    int parent = at;
    for (const auto& c : schema->conclusions) {
      parent = append(parent, c, app);
      created.push_back(parent);
    }
  }
  return created;
}

Tableau Tableau::applied(int at, const RuleApp& app, bool unrestricted_fbot) const {
  Tableau copy = *this;
  copy.apply(at, app, unrestricted_fbot);
  return copy;
}

std::vector<int> Tableau::leaves() const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (n.children.empty()) out.push_back(n.id);
  }
  return out;
}

std::vector<int> Tableau::branch_ids(int leaf) const {
  std::vector<int> out;
  for (int id = leaf; id >= 0; id = nodes_[id].parent) out.push_back(id);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<FormulaPtr> Tableau::branch_formulas(int leaf) const {
  std::vector<FormulaPtr> out;
  for (int id : branch_ids(leaf)) out.push_back(nodes_[id].formula);
  return out;
}

int Tableau::find_on_branch(int from, const FormulaPtr& f) const {
  for (int id = from; id >= 0; id = nodes_[id].parent) {
    if (equal(nodes_[id].formula, f)) return id;
  }
  return -1;
}

BranchStatus Tableau::branch_status(int leaf) const {
  auto ids = branch_ids(leaf);
  std::map<FormulaPtr, int, FormulaLess> seen;
  for (int id : ids) {
    const auto& f = nodes_[id].formula;
    BranchStatus st;
    if (f->kind() == Formula::Kind::Bottom) {
      st.kind = BranchStatus::Kind::Bottom;
      st.witness = f;
      st.witness_node = id;
      return st;
    }
    if (auto body = un_neg(f)) {
      auto it = seen.find(body);
      if (it != seen.end()) {
        st.kind = BranchStatus::Kind::Contradiction;
        st.witness = body;
        st.witness_node = it->second;
        st.witness_neg_node = id;
        return st;
      }
      if (cs_member(cs_, body)) {
        st.kind = BranchStatus::Kind::CsRefutation;
        st.witness = body;
        st.witness_neg_node = id;
        return st;
      }
    }
    auto itn = seen.find(Formula::neg(f));
    if (itn != seen.end()) {
      st.kind = BranchStatus::Kind::Contradiction;
      st.witness = f;
      st.witness_node = id;
      st.witness_neg_node = itn->second;
      return st;
    }
    seen.emplace(f, id);
  }
  return {};
}

std::vector<int> Tableau::subtree(int id) const {
  std::vector<int> out;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = nodes_[cur].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<Rule> Tableau::rule_applications() const {
  std::vector<Rule> out;
  for (const auto& n : nodes_) {
    if (!n.rule) continue;
    const Node& parent = nodes_[n.parent];
    // skip second conclusions of chained rules and right siblings of splits
    if (parent.rule && parent.rule->same_as(*n.rule) && parent.children.size() == 1) continue;
    if (parent.children.size() == 2 && parent.children[1] == n.id &&
        nodes_[parent.children[0]].rule && nodes_[parent.children[0]].rule->same_as(*n.rule))
      continue;
    out.push_back(n.rule->rule);
  }
  return out;
}

CheckResult check_proof(const Tableau& t) {
  CheckResult res;
  auto defect = [&](int node, DefectClass cls, std::string msg) {
    res.defects.push_back({node, cls, std::move(msg)});
  };

  for (const auto& v : validate_cs(t.logic(), t.cs()))
    defect(-1, DefectClass::InvalidCS, print_formula(v.entry) + ": " + v.reason);

  // structural sanity
  const auto& nodes = t.nodes();
  for (const auto& n : nodes) {
    if (n.id != static_cast<int>(&n - nodes.data())) {
      defect(n.id, DefectClass::Structure, "node id out of order");
      return res;
    }
    if (n.parent >= 0) {
      const auto& ch = nodes[n.parent].children;
      if (std::find(ch.begin(), ch.end(), n.id) == ch.end()) {
        defect(n.id, DefectClass::Structure, "parent/child mismatch");
        return res;
      }
    }
    if (n.children.size() > 2) {
      defect(n.id, DefectClass::Structure, "more than two children");
      return res;
    }
  }
  // root prefix: unjustified nodes form the initial chain
  for (const auto& n : nodes) {
    bool is_root = std::find(t.root_ids().begin(), t.root_ids().end(), n.id) != t.root_ids().end();
    if (!n.rule && !is_root) defect(n.id, DefectClass::Structure, "unjustified non-root node");
    if (n.rule && is_root) defect(n.id, DefectClass::Structure, "root node carries a rule");
  }
  for (size_t i = 0; i < t.root_ids().size(); i++) {
    const auto& n = nodes[t.root_ids()[i]];
    int expected_parent = i == 0 ? -1 : t.root_ids()[i - 1];
    if (n.parent != expected_parent)
      defect(n.id, DefectClass::Structure, "root nodes must form the initial chain");
  }

  std::vector<FormulaPtr> root_fs;
  for (int r : t.root_ids()) root_fs.push_back(nodes[r].formula);
  SubformulaOracle oracle(root_fs, t.cs(), t.logic());

  for (const auto& n : nodes) {
    if (!n.rule) continue;
    const RuleApp& app = *n.rule;

    if (!rule_in_calculus(app.rule, t.calculus())) {
      defect(n.id, DefectClass::RuleNotInCalculus,
             rule_name(app.rule) + " is not a rule of " + calculus_name(t.calculus()));
      continue;
    }
    if (auto ax = rule_axiom(app.rule)) {
      if (!t.logic().has(*ax)) {
        defect(n.id, DefectClass::RuleNotInLogic,
               rule_name(app.rule) + " is not available in logic " + t.logic().name());
        continue;
      }
    }
    if (auto bad = t.logic().inadmissible_op(n.formula)) {
      defect(n.id, DefectClass::InadmissibleOp,
             "formula uses an operation outside logic " + t.logic().name());
    }

    // premises: proper ancestors
    bool prem_ok = true;
    std::vector<FormulaPtr> prem;
    for (int p : app.premises) {
      if (p < 0 || p >= t.size()) {
        defect(n.id, DefectClass::Structure, "premise id out of range");
        prem_ok = false;
        break;
      }
      bool ancestor = false;
      for (int id = n.parent; id >= 0; id = nodes[id].parent) {
        if (id == p) { ancestor = true; break; }
      }
      if (!ancestor) {
        defect(n.id, DefectClass::Structure,
               "premise " + std::to_string(p) + " is not above the node");
        prem_ok = false;
        break;
      }
      prem.push_back(nodes[p].formula);
    }
    if (!prem_ok) continue;

    auto schema = rule_schema(app.rule, prem, app.instantiation);
    if (!schema) {
      defect(n.id, DefectClass::SchemaMismatch, "premises do not fit " + rule_name(app.rule));
      continue;
    }

    if (schema->branching) {
      const Node& parent = nodes[n.parent];
      if (parent.children.size() != 2) {
        defect(n.id, DefectClass::Structure, "branching rule without a sibling");
        continue;
      }
      int pos = parent.children[0] == n.id ? 0 : 1;
      const Node& sibling = nodes[parent.children[1 - pos]];
      if (!sibling.rule || !sibling.rule->same_as(app)) {
        defect(n.id, DefectClass::Structure, "branching siblings carry different applications");
        continue;
      }
      if (!equal(n.formula, schema->conclusions[pos])) {
        defect(n.id, DefectClass::SchemaMismatch,
               "expected " + print_formula(schema->conclusions[pos]) + ", found " +
                   print_formula(n.formula));
        continue;
      }
    } else if (schema->conclusions.size() == 2) {
      // a node is either the second conclusion under its pair partner, or the
      // first conclusion immediately followed by the second
      const Node& parent = nodes[n.parent];
      bool second_ok = parent.rule && parent.rule->same_as(app) &&
                       equal(parent.formula, schema->conclusions[0]) &&
                       equal(n.formula, schema->conclusions[1]);
      bool first_ok = equal(n.formula, schema->conclusions[0]) && n.children.size() == 1 &&
                      nodes[n.children[0]].rule && nodes[n.children[0]].rule->same_as(app) &&
                      equal(nodes[n.children[0]].formula, schema->conclusions[1]);
      if (!second_ok && !first_ok) {
        defect(n.id, DefectClass::SchemaMismatch,
               rule_name(app.rule) + " must append " +
                   print_formula(schema->conclusions[0]) + " then " +
                   print_formula(schema->conclusions[1]));
      }
    } else {
      if (!equal(n.formula, schema->conclusions[0])) {
        defect(n.id, DefectClass::SchemaMismatch,
               "expected " + print_formula(schema->conclusions[0]) + ", found " +
                   print_formula(n.formula));
        continue;
      }
    }

    // analytic side conditions
    if (app.rule == Rule::PB && !oracle.contains(app.instantiation)) {
      defect(n.id, DefectClass::PBRestriction,
             print_formula(app.instantiation) + " is not a subformula of the root");
    }
    if (app.rule == Rule::TApp && t.calculus() == Calculus::JLT) {
      for (const auto& f : {prem[0], prem[1], schema->conclusions[0]}) {
        if (!oracle.contains(f)) {
          defect(n.id, DefectClass::TAppRestriction,
                 print_formula(f) + " is not a subformula of the root");
        }
      }
    }
  }

  // two-children parents must host branching siblings
  for (const auto& n : nodes) {
    if (n.children.size() == 2) {
      for (int c : n.children) {
        if (!nodes[c].rule || !rule_branches(nodes[c].rule->rule))
          defect(c, DefectClass::Structure, "two children without a branching rule");
      }
    }
  }

  for (int leaf : t.leaves()) {
    if (!t.branch_status(leaf).closed())
      defect(leaf, DefectClass::OpenBranch, "leaf branch is open");
  }

  return res;
}

namespace {

// Rebuilds a tableau keeping only `alive` nodes, renumbering in preorder.
// Children of a dead node are reattached to its nearest live ancestor.
Tableau rebuild(const Tableau& t, const std::vector<bool>& alive) {
  std::vector<FormulaPtr> root_fs;
  for (int r : t.root_ids()) root_fs.push_back(t.node(r).formula);
  Tableau out(t.calculus(), t.logic(), t.cs(), root_fs);

  std::map<int, int> remap;
  for (size_t i = 0; i < t.root_ids().size(); i++)
    remap[t.root_ids()[i]] = out.root_ids()[i];

  auto is_root = [&](int id) {
    return std::find(t.root_ids().begin(), t.root_ids().end(), id) != t.root_ids().end();
  };
  std::function<void(int, int)> walk = [&](int old_id, int new_parent) {
    for (int child : t.node(old_id).children) {
      if (is_root(child)) continue;  // chain already rebuilt
      if (!alive[child]) {
        walk(child, new_parent);
        continue;
      }
      const Node& n = t.node(child);
      RuleApp app = *n.rule;
      for (int& p : app.premises) {
        auto it = remap.find(p);
        if (it == remap.end()) throw std::logic_error("rebuild: premise node was dropped");
        p = it->second;
      }
      int nid = out.append(new_parent, n.formula, app);
      remap[child] = nid;
      walk(child, nid);
    }
  };
  for (int r : t.root_ids()) walk(r, remap[r]);
  return out;
}

}  // namespace

Tableau condense(const Tableau& t) {
  Tableau cur = t;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& n : cur.nodes()) {
      if (n.children.size() != 2) continue;
      for (int side = 0; side < 2 && !changed; side++) {
        int cand = n.children[side];
        int other = n.children[1 - side];
        auto sub = cur.subtree(cand);
        // the split formula must be unused: no premise reference, and every
        // leaf below must close without it
        bool used = false;
        for (int id : sub) {
          const auto& m = cur.node(id);
          if (!m.rule) continue;
          if (id != cand &&
              std::find(m.rule->premises.begin(), m.rule->premises.end(), cand) !=
                  m.rule->premises.end()) {
            used = true;
            break;
          }
        }
        if (used) continue;
        bool all_closed = true;
        for (int id : sub) {
          if (!cur.node(id).children.empty()) continue;
          std::vector<FormulaPtr> fs;
          for (int b : cur.branch_ids(id)) {
            if (b != cand) fs.push_back(cur.node(b).formula);
          }
          if (!branch_closed(fs, cur.cs()).closed()) {
            all_closed = false;
            break;
          }
        }
        if (!all_closed) continue;
        // splice: drop the split node and the sibling subtree
        std::vector<bool> alive(cur.size(), true);
        alive[cand] = false;
        for (int id : cur.subtree(other)) alive[id] = false;
        cur = rebuild(cur, alive);
        changed = true;
      }
      if (changed) break;
    }
  }
  return rebuild(cur, std::vector<bool>(cur.size(), true));  // normalize ids
}

std::string render_text(const Tableau& t) {
  std::ostringstream os;
  auto line = [&](const Node& n, int depth) {
    for (int i = 0; i < depth; i++) os << "  ";
    os << n.id << ". " << print_formula(n.formula) << "   [";
    if (!n.rule) {
      os << "root";
    } else {
      os << rule_name(n.rule->rule);
      for (int p : n.rule->premises) os << " " << p;
      if (n.rule->instantiation) os << " / " << print_formula(n.rule->instantiation);
    }
    os << "]";
    if (t.is_leaf(n.id)) {
      auto st = t.branch_status(n.id);
      if (st.closed())
        os << "   \u2297 (" << print_formula(st.witness) << ")";
      else
        os << "   open";
    }
    os << "\n";
  };
  // iterative DFS keeping depth
  struct Item { int id; int depth; };
  std::vector<Item> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const Node& n = t.node(id);
    line(n, depth);
    int child_depth = n.children.size() == 2 ? depth + 1 : depth;
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back({*it, child_depth});
  }
  return os.str();
}

}  // namespace jtab
