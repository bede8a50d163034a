#include "jtab/cutelim.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace jtab {

std::string MeasureClaim::to_string() const {
  std::string rel = relation == Relation::LowerRank
                        ? "lower-rank"
                        : (relation == Relation::SameRankLowerWeight ? "same-rank-lower-weight"
                                                                     : "became-PB");
  return print_formula(cut_formula) + " [" + rel + ", r=" + std::to_string(rank) +
         ", w=" + std::to_string(weight) + "]";
}

namespace {

bool is_cut_pair(const Tableau& t, const Node& n) {
  if (n.children.size() != 2) return false;
  const auto& l = t.node(n.children[0]);
  return l.rule && l.rule->rule == Rule::Cut;
}

CutSite site_at(const Tableau& t, int parent) {
  const Node& p = t.node(parent);
  CutSite s;
  s.split_parent = parent;
  s.pos_child = p.children[0];
  s.neg_child = p.children[1];
  s.cut_formula = t.node(s.pos_child).formula;
  s.rank = rank(s.cut_formula);
  int t1 = static_cast<int>(t.subtree(s.pos_child).size()) - 1;
  int t2 = static_cast<int>(t.subtree(s.neg_child).size()) - 1;
  s.weight = t1 + t2;
  s.is_branch_end = t1 == 0 || t2 == 0;
  s.is_minimal = true;
  for (int side : {s.pos_child, s.neg_child}) {
    for (int id : t.subtree(side)) {
      if (id == side) continue;
      const auto& m = t.node(id);
      if (m.rule && m.rule->rule == Rule::Cut) {
        s.is_minimal = false;
        break;
      }
    }
    if (!s.is_minimal) break;
  }
  return s;
}

int depth_of(const Tableau& t, int id) {
  int d = 0;
  for (int cur = id; cur >= 0; cur = t.node(cur).parent) d++;
  return d;
}

}  // namespace

std::vector<CutSite> cut_sites(const Tableau& t) {
  std::vector<CutSite> out;
  for (const auto& n : t.nodes()) {
    if (is_cut_pair(t, n)) out.push_back(site_at(t, n.id));
  }
  return out;
}

std::optional<CutSite> find_minimal_cut(const Tableau& t) {
  std::optional<CutSite> best;
  int best_depth = -1;
  for (const auto& s : cut_sites(t)) {
    if (!s.is_minimal) continue;
    int d = depth_of(t, s.split_parent);
    if (d > best_depth || (d == best_depth && best && s.split_parent < best->split_parent)) {
      best = s;
      best_depth = d;
    }
  }
  return best;
}

namespace {

// ---------------------------------------------------------------------------
// rewrite machinery
// ---------------------------------------------------------------------------

struct Rewriter {
  const Tableau& src;
  Tableau out;
  std::map<int, int> remap;  // surviving src node -> out node

  // Copies src except the subtrees rooted at the two cut halves; the split
  // parent maps to a leaf of `out`.
  Rewriter(const Tableau& s, const CutSite& site)
      : src(s), out(s.calculus(), s.logic(), s.cs(), root_formulas(s)) {
    for (size_t i = 0; i < s.root_ids().size(); i++)
      remap[s.root_ids()[i]] = out.root_ids()[i];
    std::function<void(int, int)> walk = [&](int old_id, int new_parent) {
      for (int child : src.node(old_id).children) {
        if (child == site.pos_child || child == site.neg_child) continue;
        bool child_is_root = std::find(src.root_ids().begin(), src.root_ids().end(), child) !=
                             src.root_ids().end();
        if (child_is_root) continue;
        const Node& n = src.node(child);
        RuleApp app = *n.rule;
        for (int& p : app.premises) p = remap.at(p);
        int nid = out.append(new_parent, n.formula, app);
        remap[child] = nid;
        walk(child, nid);
      }
    };
    for (int r : s.root_ids()) walk(r, remap[r]);
  }

  static std::vector<FormulaPtr> root_formulas(const Tableau& s) {
    std::vector<FormulaPtr> fs;
    for (int r : s.root_ids()) fs.push_back(s.node(r).formula);
    return fs;
  }

  int new_split_parent(const CutSite& site) const { return remap.at(site.split_parent); }

  // --- replay -------------------------------------------------------------

  bool two_conclusion(Rule r) const { return r == Rule::FImp || r == Rule::FPlus; }

  std::optional<std::vector<int>> resolve(const std::vector<int>& premises, int target) {
    std::vector<int> out_ids;
    for (int p : premises) {
      int found = out.find_on_branch(target, src.node(p).formula);
      if (found < 0) return std::nullopt;
      out_ids.push_back(found);
    }
    return out_ids;
  }

  // Replays the children of src node `from` below `target`. Premises are
  // re-resolved by formula on the target branch; single conclusions already
  // present on the branch are elided; replay stops under a closed branch.
  void replay_below(int from, int target) {
    if (out.branch_status(target).closed()) return;
    const Node& parent = src.node(from);
    if (parent.children.empty()) return;

    if (parent.children.size() == 2) {
      int c1 = parent.children[0], c2 = parent.children[1];
      const RuleApp& app = *src.node(c1).rule;
      auto prem = resolve(app.premises, target);
      if (!prem) throw std::logic_error("replay: split premises unavailable");
      RuleApp napp{app.rule, *prem, app.instantiation};
      int n1 = out.append(target, src.node(c1).formula, napp);
      int n2 = out.append(target, src.node(c2).formula, napp);
      replay_below(c1, n1);
      replay_below(c2, n2);
      return;
    }

    int c = parent.children[0];
    const Node& n = src.node(c);
    const RuleApp& app = *n.rule;

    if (two_conclusion(app.rule)) {
      int c2 = n.children.empty() ? -1 : n.children[0];
      bool paired = c2 >= 0 && src.node(c2).rule && src.node(c2).rule->same_as(app);
      bool both_present = out.find_on_branch(target, n.formula) >= 0 &&
                          (!paired || out.find_on_branch(target, src.node(c2).formula) >= 0);
      if (both_present) {  // elide duplicated pairs
        replay_below(paired ? c2 : c, target);
        return;
      }
      auto prem = resolve(app.premises, target);
      if (!prem) throw std::logic_error("replay: lost premises of " + rule_name(app.rule));
      RuleApp napp{app.rule, *prem, app.instantiation};
      int n1 = out.append(target, n.formula, napp);
      if (!paired) {
        // half of a pair (the other half was pruned in the source)
        replay_below(c, n1);
        return;
      }
      int n2 = out.append(n1, src.node(c2).formula, napp);
      replay_below(c2, n2);
      return;
    }

    // single conclusion: elide when redundant
    if (out.find_on_branch(target, n.formula) >= 0) {
      replay_below(c, target);
      return;
    }
    auto prem = resolve(app.premises, target);
    if (!prem) throw std::logic_error("replay: lost premises of " + rule_name(app.rule));
    int nid = out.append(target, n.formula, RuleApp{app.rule, *prem, app.instantiation});
    replay_below(c, nid);
  }

  // --- construction helpers -------------------------------------------------

  struct NewCut {
    int pos_child;
    MeasureClaim::Relation relation;
  };
  std::vector<NewCut> new_cuts;

  std::pair<int, int> add_cut(int at, const FormulaPtr& a, MeasureClaim::Relation rel) {
    RuleApp app{Rule::Cut, {}, a};
    int l = out.append(at, a, app);
    int r = out.append(at, Formula::neg(a), app);
    new_cuts.push_back({l, rel});
    return {l, r};
  }

  int add_node(int at, const FormulaPtr& f, Rule rule, std::vector<int> premises,
               FormulaPtr inst = nullptr) {
    return out.append(at, f, RuleApp{rule, std::move(premises), std::move(inst)});
  }
};

// ---------------------------------------------------------------------------

struct StepError : std::logic_error {
  using std::logic_error::logic_error;
};

class Eliminator {
 public:
  Eliminator(const Tableau& t, const CutSite& site) : t_(t), site_(site) {}

  std::pair<Tableau, ElimStep> run() {
    if (!site_.is_minimal) throw StepError("eliminate_step requires a minimal cut");
    step_.cut_formula = site_.cut_formula;
    step_.rank = site_.rank;
    step_.weight = site_.weight;

    Tableau result = dispatch();

    // re-verify the measure claims on the rewritten tree
    for (const auto& claim : step_.claims) {
      switch (claim.relation) {
        case MeasureClaim::Relation::LowerRank:
          if (claim.rank >= site_.rank)
            throw StepError("measure claim violated (rank): " + claim.to_string());
          break;
        case MeasureClaim::Relation::SameRankLowerWeight:
          if (claim.rank != site_.rank || claim.weight >= site_.weight)
            throw StepError("measure claim violated (weight): " + claim.to_string());
          break;
        case MeasureClaim::Relation::BecamePB:
          break;
      }
    }
    return {std::move(result), std::move(step_)};
  }

 private:
  const Tableau& t_;
  const CutSite& site_;
  ElimStep step_;

  const Node& pos() const { return t_.node(site_.pos_child); }
  const Node& neg() const { return t_.node(site_.neg_child); }

  // The rule application at the top of the given half, if any.
  const RuleApp* top_app(const Node& half) const {
    if (half.children.empty()) return nullptr;
    return &*t_.node(half.children[0]).rule;
  }

  bool consumes(const RuleApp& app, int node_id) const {
    return std::find(app.premises.begin(), app.premises.end(), node_id) != app.premises.end();
  }

  Tableau finalize(Rewriter& rw) {
    for (const auto& nc : rw.new_cuts) {
      MeasureClaim c;
      c.relation = nc.relation;
      c.cut_formula = rw.out.node(nc.pos_child).formula;
      c.rank = rank(c.cut_formula);
      const Node& parent = rw.out.node(rw.out.node(nc.pos_child).parent);
      int t1 = static_cast<int>(rw.out.subtree(parent.children[0]).size()) - 1;
      int t2 = static_cast<int>(rw.out.subtree(parent.children[1]).size()) - 1;
      c.weight = t1 + t2;
      step_.claims.push_back(std::move(c));
    }
    return std::move(rw.out);
  }

  Tableau dispatch() {
    auto theta = t_.branch_formulas(site_.split_parent);
    if (branch_closed(theta, t_.cs()).closed()) return case_one_theta_closed();

    int t1 = static_cast<int>(t_.subtree(site_.pos_child).size()) - 1;
    int t2 = static_cast<int>(t_.subtree(site_.neg_child).size()) - 1;
    if (t2 == 0) return case_one_neg_leaf();
    if (t1 == 0) return case_one_pos_leaf();

    const RuleApp* app1 = top_app(pos());
    const RuleApp* app2 = top_app(neg());
    bool t1_from_cut = consumes(*app1, site_.pos_child);
    bool t2_from_cut = consumes(*app2, site_.neg_child);

    if (!t1_from_cut) return case_two(true);
    if (!t2_from_cut) return case_two(false);
    return case_three(*app1, *app2);
  }

  // --- Case I ---------------------------------------------------------------

  Tableau case_one_theta_closed() {
    step_.kase = '1';
    step_.sub_case = "I branch-closed-above";
    Rewriter rw(t_, site_);
    return finalize(rw);
  }

  // ~A side is a leaf; its branch closes through ~A.
  Tableau case_one_neg_leaf() {
    step_.kase = '1';
    const auto& a = site_.cut_formula;
    // A occurs above: the A half duplicates the branch, splice T1 in
    if (t_.find_on_branch(site_.split_parent, a) >= 0) {
      step_.sub_case = "I splice-positive";
      Rewriter rw(t_, site_);
      rw.replay_below(site_.pos_child, rw.new_split_parent(site_));
      return finalize(rw);
    }
    // ~~A occurs above: derive A first, then splice
    if (t_.find_on_branch(site_.split_parent, Formula::neg(Formula::neg(a))) >= 0) {
      step_.sub_case = "I double-negation";
      Rewriter rw(t_, site_);
      int nn = rw.out.find_on_branch(rw.new_split_parent(site_),
                                     Formula::neg(Formula::neg(a)));
      int na = rw.add_node(rw.new_split_parent(site_), a, Rule::FNeg, {nn});
      rw.replay_below(site_.pos_child, na);
      return finalize(rw);
    }
    // closure by the constant specification: the cut is already analytic
    if (cs_member(t_.cs(), a)) {
      step_.sub_case = "I cs-entry-PB";
      return relabel_as_pb(a);
    }
    throw StepError("unimplemented branch-end case (negative leaf)");
  }

  // A side is a leaf; its branch closes through A.
  Tableau case_one_pos_leaf() {
    step_.kase = '1';
    const auto& a = site_.cut_formula;
    if (t_.find_on_branch(site_.split_parent, Formula::neg(a)) >= 0) {
      step_.sub_case = "I splice-negative";
      Rewriter rw(t_, site_);
      rw.replay_below(site_.neg_child, rw.new_split_parent(site_));
      return finalize(rw);
    }
    if (a->kind() == Formula::Kind::Bottom) {
      step_.sub_case = "I bottom";
      Rewriter rw(t_, site_);
      rw.replay_below(site_.neg_child, rw.new_split_parent(site_));
      return finalize(rw);
    }
    auto body = un_neg(a);
    if (body && t_.find_on_branch(site_.split_parent, body) >= 0) {
      step_.sub_case = "I negated-context";
      Rewriter rw(t_, site_);
      rw.replay_below(site_.neg_child, rw.new_split_parent(site_));
      return finalize(rw);
    }
    if (body && cs_member(t_.cs(), body)) {
      // cut on ~e for a CS entry e: flip into PB on e
      step_.sub_case = "I cs-entry-PB-flipped";
      Rewriter rw(t_, site_);
      RuleApp app{Rule::PB, {}, body};
      int l = rw.out.append(rw.new_split_parent(site_), body, app);
      rw.out.append(rw.new_split_parent(site_), Formula::neg(body), app);
      rw.new_cuts.push_back({l, MeasureClaim::Relation::BecamePB});
      rw.replay_below(site_.neg_child, l);
      return finalize(rw);
    }
    throw StepError("unimplemented branch-end case (positive leaf)");
  }

  Tableau relabel_as_pb(const FormulaPtr& a) {
    SubformulaOracle oracle(Rewriter::root_formulas(t_), t_.cs(), t_.logic());
    if (!oracle.contains(a))
      throw StepError("cut formula is not analytic: " + print_formula(a));
    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    RuleApp app{Rule::PB, {}, a};
    int l = rw.out.append(p, a, app);
    int r = rw.out.append(p, Formula::neg(a), app);
    rw.new_cuts.push_back({l, MeasureClaim::Relation::BecamePB});
    rw.replay_below(site_.pos_child, l);
    rw.replay_below(site_.neg_child, r);
    return finalize(rw);
  }

  // --- Case II ----------------------------------------------------------------

  // The top of one half is derived from the context; move it above the cut.
  Tableau case_two(bool pos_side) {
    step_.kase = '2';
    const Node& half = pos_side ? pos() : neg();
    int top = half.children[0];
    const RuleApp app = *t_.node(top).rule;

    if (!rule_branches(app.rule)) {
      step_.sub_case = std::string("II move ") + rule_name(app.rule);
      Rewriter rw(t_, site_);
      int at = rw.new_split_parent(site_);
      int rest_src = top;
      int second = -1;
      if (rw.two_conclusion(app.rule) && !t_.node(top).children.empty() &&
          t_.node(t_.node(top).children[0]).rule->same_as(app)) {
        second = t_.node(top).children[0];
        rest_src = second;
      }
      bool already = rw.out.find_on_branch(at, t_.node(top).formula) >= 0 &&
                     (second < 0 || rw.out.find_on_branch(at, t_.node(second).formula) >= 0);
      int chain_end = at;
      if (!already) {
        auto prem = rw.resolve(app.premises, at);
        if (!prem) throw StepError("case II: moved premises unavailable");
        RuleApp napp{app.rule, *prem, app.instantiation};
        chain_end = rw.out.append(at, t_.node(top).formula, napp);
        if (second >= 0)
          chain_end = rw.out.append(chain_end, t_.node(second).formula, napp);
      }
      auto [l, r] = rw.add_cut(chain_end, site_.cut_formula,
                               MeasureClaim::Relation::SameRankLowerWeight);
      rw.replay_below(rest_src, pos_side ? l : r);
      rw.replay_below(pos_side ? site_.neg_child : site_.pos_child, pos_side ? r : l);
      return finalize(rw);
    }

    // branching context rule: push the split above the cut, duplicating the
    // other half into both sides
    step_.sub_case = std::string("II pushdown ") + rule_name(app.rule);
    Rewriter rw(t_, site_);
    int at = rw.new_split_parent(site_);
    auto prem = rw.resolve(app.premises, at);
    if (!prem) throw StepError("case II: pushdown premises unavailable");
    RuleApp napp{app.rule, *prem, app.instantiation};
    int c1 = half.children[0], c2 = half.children[1];
    int s1 = rw.out.append(at, t_.node(c1).formula, napp);
    int s2 = rw.out.append(at, t_.node(c2).formula, napp);
    for (auto [s, c] : {std::pair{s1, c1}, std::pair{s2, c2}}) {
      if (rw.out.branch_status(s).closed()) continue;
      auto [l, r] = rw.add_cut(s, site_.cut_formula,
                               MeasureClaim::Relation::SameRankLowerWeight);
      rw.replay_below(c, pos_side ? l : r);
      rw.replay_below(pos_side ? site_.neg_child : site_.pos_child, pos_side ? r : l);
    }
    return finalize(rw);
  }

  // --- Case III ---------------------------------------------------------------

  Tableau case_three(const RuleApp& app1, const RuleApp& app2) {
    step_.kase = '3';
    // a cut on a premise of the two-premise rule is an analytic PB
    if (app1.rule == Rule::TApp) {
      step_.sub_case = "III two-premise-(5)/(6)";
      return relabel_as_pb(site_.cut_formula);
    }

    if (app2.rule == Rule::FNeg) {
      switch (app1.rule) {
        case Rule::FPlusL:
        case Rule::FPlusR:
        case Rule::FBang:
          return neg_structural(app1.rule);
        case Rule::FBarQuery:
        case Rule::FQuery:
          return neg_witness(app1.rule);
        case Rule::FImp:
        case Rule::FNeg:
          return neg_uniform(app1.rule);
        default:
          break;
      }
    }
    if (app1.rule == Rule::TImp && app2.rule == Rule::FImp) return timp_fimp();
    if (app1.rule == Rule::TColon) {
      switch (app2.rule) {
        case Rule::FPlusL:
        case Rule::FPlusR:
        case Rule::FBarQuery:
          return tcolon_structural(app2.rule);
        case Rule::FBang:
        case Rule::FQuery:
          return tcolon_introspective(app2.rule);
        default:
          break;
      }
    }
    if (app1.rule == Rule::TBotColon &&
        (app2.rule == Rule::FPlusL || app2.rule == Rule::FPlusR))
      return tbot_fplus(app2.rule);

    throw StepError(std::string("unimplemented case III pairing ") + rule_name(app1.rule) +
                    "/" + rule_name(app2.rule));
  }

  // Cut on ~X against F-neg: the structural rules whose conclusion is a
  // negated justification assertion (F+L, F+R, F!).
  Tableau neg_structural(Rule r1) {
    step_.sub_case = std::string("III ") + rule_name(r1) + "/Fneg";
    const auto& a = site_.cut_formula;
    auto x = un_neg(a);
    int top1 = pos().children[0];
    const auto& w = t_.node(top1).formula;  // ~u:V
    auto pos_w = un_neg(w);

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, pos_w, MeasureClaim::Relation::LowerRank);
    auto [c2l, c2r] = rw.add_cut(c1l, x, MeasureClaim::Relation::LowerRank);
    auto [c4l, c4r] = rw.add_cut(c2l, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c4l);  // emits w, closing against pos_w
    rw.replay_below(site_.neg_child, c4r);  // F-neg conclusion x is redundant here
    rw.replay_below(site_.pos_child, c2r);  // emits w, closing against pos_w
    auto [c3l, c3r] = rw.add_cut(c1r, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c3l);  // top elided: w already on the branch
    rw.replay_below(site_.neg_child, c3r);  // F-neg replays, then T2
    return finalize(rw);
  }

  // Cut on ~X against F-neg for the witnessing rules (F?bar, F?), whose
  // conclusion is positive.
  Tableau neg_witness(Rule r1) {
    step_.sub_case = std::string("III ") + rule_name(r1) + "/Fneg";
    const auto& a = site_.cut_formula;
    auto x = un_neg(a);
    int top1 = pos().children[0];
    const auto& w = t_.node(top1).formula;  // positive

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, w, MeasureClaim::Relation::LowerRank);
    auto [c2l, c2r] = rw.add_cut(c1l, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c2l);  // top elided: w on the branch
    rw.replay_below(site_.neg_child, c2r);
    auto [c3l, c3r] = rw.add_cut(c1r, x, MeasureClaim::Relation::LowerRank);
    auto [c4l, c4r] = rw.add_cut(c3l, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c4l);  // emits w, closing against ~w
    rw.replay_below(site_.neg_child, c4r);  // F-neg conclusion x redundant
    rw.replay_below(site_.pos_child, c3r);  // emits w, closing against ~w
    return finalize(rw);
  }

  // Cut on ~X against F-neg for the propositional rules: the standard
  // propositional transformation, a single cut on X.
  Tableau neg_uniform(Rule r1) {
    step_.sub_case = std::string("III ") + rule_name(r1) + "/Fneg";
    const auto& a = site_.cut_formula;
    auto x = un_neg(a);
    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [cl, cr] = rw.add_cut(p, x, MeasureClaim::Relation::LowerRank);
    rw.replay_below(site_.neg_child, cl);  // F-neg elided: x is the branch formula
    rw.replay_below(site_.pos_child, cr);  // verbatim: cr carries ~x = a
    return finalize(rw);
  }

  // Cut on B->C against T->/F->: the standard propositional transformation,
  // nested cuts on B and C.
  Tableau timp_fimp() {
    step_.sub_case = "III Timp/Fimp";
    const auto& a = site_.cut_formula;
    const auto& b = a->left();
    const auto& c = a->right();
    int nb_side = pos().children[0];  // ~B half of the T-> split
    int c_side = pos().children[1];   // C half

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, b, MeasureClaim::Relation::LowerRank);
    auto [c2l, c2r] = rw.add_cut(c1l, c, MeasureClaim::Relation::LowerRank);
    rw.replay_below(c_side, c2l);            // T1 under C
    rw.replay_below(site_.neg_child, c2r);   // F-> pair elided: B, ~C on the branch
    rw.replay_below(nb_side, c1r);           // T1 under ~B
    return finalize(rw);
  }

  // Cut on a justification assertion against T:, paired with a structural
  // rule whose conclusion differs from the T: body (F+L, F+R, F?bar).
  Tableau tcolon_structural(Rule r2) {
    step_.sub_case = std::string("III Tcolon/") + rule_name(r2);
    const auto& a = site_.cut_formula;
    const auto& w1 = t_.node(pos().children[0]).formula;  // T: body
    const auto& w2 = t_.node(neg().children[0]).formula;  // structural conclusion
    // for F+L/F+R the structural conclusion ~u:Y carries the cut pair; for
    // F?bar it is the T: body ~t:Y
    FormulaPtr n = r2 == Rule::FBarQuery ? w1 : w2;
    FormulaPtr pw = r2 == Rule::FBarQuery ? w2 : w1;
    auto pos_n = un_neg(n);
    if (!pos_n) throw StepError("unexpected conclusion shape in Tcolon pairing");

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, pos_n, MeasureClaim::Relation::LowerRank);
    auto [c2l, c2r] = rw.add_cut(c1l, pw, MeasureClaim::Relation::LowerRank);
    auto [c4l, c4r] = rw.add_cut(c2l, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c4l);
    rw.replay_below(site_.neg_child, c4r);
    rw.add_node(c2r, pw, Rule::TColon, {c1l});  // pos_n is t:pw here; closes against ~pw
    auto [c3l, c3r] = rw.add_cut(c1r, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c3l);
    rw.replay_below(site_.neg_child, c3r);
    return finalize(rw);
  }

  // T: against F! or F?, where the two conclusions meet in one formula.
  Tableau tcolon_introspective(Rule r2) {
    step_.sub_case = std::string("III Tcolon/") + rule_name(r2);
    const auto& a = site_.cut_formula;
    const auto& w1 = t_.node(pos().children[0]).formula;
    // F!: the T: body t:Y itself; F?: the body is ~t:Y, the meeting point t:Y
    FormulaPtr k = r2 == Rule::FBang ? w1 : un_neg(w1);
    if (!k) throw StepError("unexpected conclusion shape in introspective pairing");

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, k, MeasureClaim::Relation::LowerRank);
    auto [c2l, c2r] = rw.add_cut(c1l, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c2l);
    rw.replay_below(site_.neg_child, c2r);
    auto [c3l, c3r] = rw.add_cut(c1r, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c3l);
    rw.replay_below(site_.neg_child, c3r);
    return finalize(rw);
  }

  // T:bot against F+L/F+R on (t+s):bot, trees (7) -> (8).
  Tableau tbot_fplus(Rule r2) {
    step_.sub_case = std::string("III Tbot/") + rule_name(r2) + "-(7)->(8)";
    const auto& a = site_.cut_formula;  // (t+s):bot
    auto summand = r2 == Rule::FPlusL ? a->term()->left() : a->term()->right();
    auto u_bot = Formula::just(summand, Formula::bottom());

    Rewriter rw(t_, site_);
    int p = rw.new_split_parent(site_);
    auto [c1l, c1r] = rw.add_cut(p, u_bot, MeasureClaim::Relation::LowerRank);
    rw.add_node(c1l, Formula::bottom(), Rule::TBotColon, {c1l});
    auto [c2l, c2r] = rw.add_cut(c1r, a, MeasureClaim::Relation::SameRankLowerWeight);
    rw.replay_below(site_.pos_child, c2l);  // T:bot emits bottom
    rw.replay_below(site_.neg_child, c2r);  // F+ conclusion redundant, T2 follows
    return finalize(rw);
  }
};

}  // namespace

std::pair<Tableau, ElimStep> eliminate_step(const Tableau& t, const CutSite& site) {
  return Eliminator(t, site).run();
}

Tableau eliminate_all(const Tableau& t, ElimTrace* trace) {
  Tableau cur = t;
  int steps = 0;
  while (auto site = find_minimal_cut(cur)) {
    if (++steps > 20000) throw std::logic_error("cut elimination exceeded the step limit");
    auto [next, step] = eliminate_step(cur, *site);
    auto check = check_proof(next);
    if (!check.ok())
      throw std::logic_error("cut elimination produced an invalid tableau:\n" + check.to_string());
    if (trace) {
      trace->steps.push_back(std::move(step));
      if (trace->keep_snapshots) trace->snapshots.push_back(render_text(next));
    }
    cur = std::move(next);
  }

  // cut-free: rebuild in the analytic calculus
  std::vector<FormulaPtr> roots;
  for (int r : cur.root_ids()) roots.push_back(cur.node(r).formula);
  Tableau out(Calculus::JLT, cur.logic(), cur.cs(), roots);
  std::map<int, int> remap;
  for (size_t i = 0; i < cur.root_ids().size(); i++)
    remap[cur.root_ids()[i]] = out.root_ids()[i];
  std::function<void(int, int)> walk = [&](int old_id, int new_parent) {
    for (int child : cur.node(old_id).children) {
      bool child_is_root = std::find(cur.root_ids().begin(), cur.root_ids().end(), child) !=
                           cur.root_ids().end();
      if (child_is_root) continue;
      const Node& n = cur.node(child);
      RuleApp app = *n.rule;
      for (int& q : app.premises) q = remap.at(q);
      int nid = out.append(new_parent, n.formula, app);
      remap[child] = nid;
      walk(child, nid);
    }
  };
  for (int r : cur.root_ids()) walk(r, remap[r]);
  return out;
}

}  // namespace jtab
