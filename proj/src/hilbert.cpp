#include "jtab/hilbert.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jtab {

std::optional<HilbertDefect> check_hilbert(const HilbertProof& p, const LogicId& logic,
                                           const ConstantSpec& cs) {
  if (p.lines.empty()) return HilbertDefect{0, "empty proof"};
  for (size_t k = 0; k < p.lines.size(); k++) {
    const auto& line = p.lines[k];
    int n = static_cast<int>(k);
    if (auto bad = logic.inadmissible_op(line.formula))
      return HilbertDefect{n, "formula uses an operation outside logic " + logic.name()};
    switch (line.kind) {
      case HilbertLine::Kind::Axiom: {
        switch (line.scheme) {
          case Scheme::jT: if (!logic.has(Axiom::jT)) return HilbertDefect{n, "jT unavailable"}; break;
          case Scheme::jD: if (!logic.has(Axiom::jD)) return HilbertDefect{n, "jD unavailable"}; break;
          case Scheme::j4: if (!logic.has(Axiom::j4)) return HilbertDefect{n, "j4 unavailable"}; break;
          case Scheme::jB: if (!logic.has(Axiom::jB)) return HilbertDefect{n, "jB unavailable"}; break;
          case Scheme::j5: if (!logic.has(Axiom::j5)) return HilbertDefect{n, "j5 unavailable"}; break;
          default: break;
        }
        if (!matches_scheme(line.scheme, line.formula))
          return HilbertDefect{n, print_formula(line.formula) + " is not an instance of " +
                                      scheme_name(line.scheme)};
        break;
      }
      case HilbertLine::Kind::MP: {
        if (line.from < 0 || line.from >= n || line.imp < 0 || line.imp >= n)
          return HilbertDefect{n, "MP must cite earlier lines"};
        const auto& b = p.lines[line.from].formula;
        const auto& ba = p.lines[line.imp].formula;
        if (ba->kind() != Formula::Kind::Imp || !equal(ba->left(), b) ||
            !equal(ba->right(), line.formula))
          return HilbertDefect{n, "cited lines do not fit modus ponens"};
        break;
      }
      case HilbertLine::Kind::IAN: {
        if (!cs_member(cs, line.formula))
          return HilbertDefect{n, print_formula(line.formula) +
                                      " is not in the constant specification"};
        break;
      }
    }
  }
  return std::nullopt;
}

namespace {

// Propositional closure of a branch whose tip negates a tautology; treats
// t:A formulas as opaque literals.
void expand_tautology(Tableau& tab, int leaf, std::set<std::string> guard) {
  while (true) {
    if (tab.branch_status(leaf).closed()) return;
    auto ids = tab.branch_ids(leaf);
    bool applied = false;
    for (int id : ids) {
      const auto& f = tab.node(id).formula;
      auto body = un_neg(f);
      if (!body) continue;
      if (body->kind() != Formula::Kind::Neg && body->kind() != Formula::Kind::Imp) continue;
      Rule r = body->kind() == Formula::Kind::Neg ? Rule::FNeg : Rule::FImp;
      std::string key = rule_name(r) + "|" + print_formula(f);
      if (guard.count(key)) continue;
      guard.insert(key);
      leaf = tab.apply(leaf, RuleApp{r, {id}, nullptr}).back();
      applied = true;
      break;
    }
    if (applied) continue;
    for (int id : ids) {
      const auto& f = tab.node(id).formula;
      if (f->kind() != Formula::Kind::Imp) continue;
      std::string key = "Timp|" + print_formula(f);
      if (guard.count(key)) continue;
      guard.insert(key);
      auto created = tab.apply(leaf, RuleApp{Rule::TImp, {id}, nullptr});
      expand_tautology(tab, created[0], guard);
      expand_tautology(tab, created[1], guard);
      return;
    }
    throw std::logic_error("tautology expansion failed to close the branch");
  }
}

class Translator {
 public:
  Translator(const HilbertProof& p, const LogicId& logic, const ConstantSpec& cs)
      : proof_(p), tab_(Calculus::JLTCut, logic, cs, {Formula::neg(p.conclusion())}) {}

  Tableau run() {
    build(static_cast<int>(proof_.lines.size()) - 1, tab_.root_ids().back());
    return std::move(tab_);
  }

 private:
  // Grafts a closed subtree under `at`, whose formula is the negation of
  // line k's formula.
  void build(int k, int at) {
    const auto& line = proof_.lines[k];
    switch (line.kind) {
      case HilbertLine::Kind::IAN:
        return;  // ~c:F closes by the constant specification
      case HilbertLine::Kind::Axiom:
        expand_axiom(line, at);
        return;
      case HilbertLine::Kind::MP: {
        const auto& b = proof_.lines[line.from].formula;
        const auto& ba = proof_.lines[line.imp].formula;
        auto cut1 = tab_.apply(at, RuleApp{Rule::Cut, {}, b});
        int on_b = cut1[0], on_not_b = cut1[1];
        build(line.from, on_not_b);
        auto cut2 = tab_.apply(on_b, RuleApp{Rule::Cut, {}, ba});
        int on_ba = cut2[0], on_not_ba = cut2[1];
        build(line.imp, on_not_ba);
        tab_.apply(on_ba, RuleApp{Rule::TImp, {on_ba}, nullptr});
        // left child ~B closes against B, right child A against ~A at `at`
        return;
      }
    }
  }

  void expand_axiom(const HilbertLine& line, int at) {
    const auto& f = line.formula;
    switch (line.scheme) {
      case Scheme::Taut:
        expand_tautology(tab_, at, {});
        return;
      case Scheme::Sum: {
        auto created = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        int neg_sum = created[1];
        // pick the side that mirrors the premise s:A
        const auto& premise = f->left();
        const auto& sum = f->right()->term();
        Rule side = equal(sum->left(), premise->term()) ? Rule::FPlusL : Rule::FPlusR;
        tab_.apply(neg_sum, RuleApp{side, {neg_sum}, nullptr});
        return;
      }
      case Scheme::jK: {
        auto c1 = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        int s_imp = c1[0];
        auto c2 = tab_.apply(c1[1], RuleApp{Rule::FImp, {c1[1]}, nullptr});
        int t_a = c2[0];
        tab_.apply(c2[1], RuleApp{Rule::TApp, {s_imp, t_a}, nullptr});
        return;
      }
      case Scheme::jT: {
        auto c = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        tab_.apply(c[1], RuleApp{Rule::TColon, {c[0]}, nullptr});
        return;
      }
      case Scheme::jD: {
        auto c = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        tab_.apply(c[1], RuleApp{Rule::TBotColon, {c[0]}, nullptr});
        return;
      }
      case Scheme::j4: {
        auto c = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        tab_.apply(c[1], RuleApp{Rule::FBang, {c[1]}, nullptr});
        return;
      }
      case Scheme::jB: {
        auto c = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        tab_.apply(c[1], RuleApp{Rule::FBarQuery, {c[1]}, nullptr});
        return;
      }
      case Scheme::j5: {
        auto c = tab_.apply(at, RuleApp{Rule::FImp, {at}, nullptr});
        tab_.apply(c[1], RuleApp{Rule::FQuery, {c[1]}, nullptr});
        return;
      }
    }
  }

  const HilbertProof& proof_;
  Tableau tab_;
};

}  // namespace

Tableau translate_to_tableau(const HilbertProof& p, const LogicId& logic, const ConstantSpec& cs) {
  if (auto defect = check_hilbert(p, logic, cs))
    throw std::invalid_argument("line " + std::to_string(defect->line + 1) + ": " +
                                defect->message);
  return Translator(p, logic, cs).run();
}

HilbertProof parse_hilbert(const std::string& text, Lexicon lexicon) {
  HilbertProof proof;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    lineno++;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = raw.find_last_not_of(" \t\r");
    std::string s = raw.substr(first, last - first + 1);

    std::istringstream ls(s);
    std::string word;
    ls >> word;
    if (word == "var" || word == "const") {
      std::string name;
      while (ls >> name) {
        if (word == "var")
          lexicon.declare_variable(name);
        else
          lexicon.declare_constant(name);
      }
      continue;
    }

    if (word.empty() || word.back() != '.')
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'n.' prefix");
    size_t expected = proof.lines.size() + 1;
    if (word != std::to_string(expected) + ".")
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected step " +
                                  std::to_string(expected));

    auto open = s.find('[');
    auto close = s.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": missing [justification]");
    std::string formula_part = s.substr(word.size(), open - word.size());
    std::string just_part = s.substr(open + 1, close - open - 1);

    HilbertLine line;
    line.formula = parse_formula(formula_part, lexicon);
    std::istringstream js(just_part);
    std::string j;
    js >> j;
    if (j == "MP") {
      line.kind = HilbertLine::Kind::MP;
      int i = 0, k = 0;
      if (!(js >> i >> k))
        throw std::invalid_argument("line " + std::to_string(lineno) + ": MP needs two line numbers");
      line.from = i - 1;
      line.imp = k - 1;
    } else if (j == "IAN") {
      line.kind = HilbertLine::Kind::IAN;
    } else if (auto scheme = scheme_from_name(j)) {
      line.kind = HilbertLine::Kind::Axiom;
      line.scheme = *scheme;
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown justification '" +
                                  j + "'");
    }
    proof.lines.push_back(std::move(line));
  }
  if (proof.lines.empty()) throw std::invalid_argument("empty proof");
  return proof;
}

std::string print_hilbert(const HilbertProof& p) {
  std::ostringstream os;
  for (size_t k = 0; k < p.lines.size(); k++) {
    const auto& line = p.lines[k];
    os << (k + 1) << ". " << print_formula(line.formula) << "   [";
    switch (line.kind) {
      case HilbertLine::Kind::Axiom: os << scheme_name(line.scheme); break;
      case HilbertLine::Kind::MP: os << "MP " << (line.from + 1) << " " << (line.imp + 1); break;
      case HilbertLine::Kind::IAN: os << "IAN"; break;
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace jtab
