#include "jtab/logic.hpp"

#include <map>
#include <stdexcept>

namespace jtab {

namespace {

unsigned bit(Axiom ax) { return 1u << static_cast<unsigned>(ax); }

}  // namespace

LogicId LogicId::parse(const std::string& name) {
  if (name == "LP") return LogicId().add(Axiom::jT).add(Axiom::j4);
  if (name.empty() || name[0] != 'J')
    throw std::invalid_argument("unknown logic '" + name + "'");
  LogicId id;
  for (size_t i = 1; i < name.size(); i++) {
    switch (name[i]) {
      case 'T': id.add(Axiom::jT); break;
      case 'D': id.add(Axiom::jD); break;
      case '4': id.add(Axiom::j4); break;
      case 'B': id.add(Axiom::jB); break;
      case '5': id.add(Axiom::j5); break;
      default:
        throw std::invalid_argument("unknown logic '" + name + "'");
    }
  }
  return id;
}

LogicId& LogicId::add(Axiom ax) {
  mask_ |= bit(ax);
  return *this;
}

bool LogicId::has(Axiom ax) const { return mask_ & bit(ax); }

std::string LogicId::name() const {
  std::string out = "J";
  if (has(Axiom::jT)) out += 'T';
  if (has(Axiom::jD)) out += 'D';
  if (has(Axiom::j4)) out += '4';
  if (has(Axiom::jB)) out += 'B';
  if (has(Axiom::j5)) out += '5';
  return out;
}

bool LogicId::admits(Term::Kind op) const {
  switch (op) {
    case Term::Kind::Bang: return has(Axiom::j4);
    case Term::Kind::BarQuery: return has(Axiom::jB);
    case Term::Kind::Query: return has(Axiom::j5);
    default: return true;
  }
}

namespace {

std::optional<Term::Kind> inadmissible_in_term(const LogicId& logic, const TermPtr& t) {
  if (!logic.admits(t->kind())) return t->kind();
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return std::nullopt;
    case Term::Kind::App:
    case Term::Kind::Sum: {
      auto l = inadmissible_in_term(logic, t->left());
      return l ? l : inadmissible_in_term(logic, t->right());
    }
    default:
      return inadmissible_in_term(logic, t->left());
  }
}

}  // namespace

std::optional<Term::Kind> LogicId::inadmissible_op(const FormulaPtr& f) const {
  for (const auto& t : terms_of(f)) {
    if (auto bad = inadmissible_in_term(*this, t)) return bad;
  }
  return std::nullopt;
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Taut: return "Taut";
    case Scheme::Sum: return "Sum";
    case Scheme::jK: return "jK";
    case Scheme::jT: return "jT";
    case Scheme::jD: return "jD";
    case Scheme::j4: return "j4";
    case Scheme::jB: return "jB";
    case Scheme::j5: return "j5";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  static const std::map<std::string, Scheme> table = {
      {"Taut", Scheme::Taut}, {"Sum", Scheme::Sum}, {"jK", Scheme::jK},
      {"jT", Scheme::jT},     {"jD", Scheme::jD},   {"j4", Scheme::j4},
      {"jB", Scheme::jB},     {"j5", Scheme::j5}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

// Collects the opaque letters of a formula: atoms and maximal t:A subformulas.
void collect_opaque(const FormulaPtr& f, FormulaSet& out) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Atom:
    case Formula::Kind::Just:
      out.insert(f);
      return;
    case Formula::Kind::Neg:
      collect_opaque(f->left(), out);
      return;
    case Formula::Kind::Imp:
      collect_opaque(f->left(), out);
      collect_opaque(f->right(), out);
      return;
  }
}

bool eval_opaque(const FormulaPtr& f, const std::map<FormulaPtr, bool, FormulaLess>& val) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Atom:
    case Formula::Kind::Just:
      return val.at(f);
    case Formula::Kind::Neg:
      return !eval_opaque(f->left(), val);
    case Formula::Kind::Imp:
      return !eval_opaque(f->left(), val) || eval_opaque(f->right(), val);
  }
  return false;
}

}  // namespace

bool is_tautology(const FormulaPtr& f) {
  FormulaSet letters;
  collect_opaque(f, letters);
  std::vector<FormulaPtr> ls(letters.begin(), letters.end());
  if (ls.size() > 20)
    throw std::invalid_argument("tautology check limited to 20 distinct letters");
  size_t n = ls.size();
  for (size_t mask = 0; mask < (size_t{1} << n); mask++) {
    std::map<FormulaPtr, bool, FormulaLess> val;
    for (size_t i = 0; i < n; i++) val[ls[i]] = (mask >> i) & 1;
    if (!eval_opaque(f, val)) return false;
  }
  return true;
}

bool matches_scheme(Scheme s, const FormulaPtr& f) {
  using FK = Formula::Kind;
  using TK = Term::Kind;
  switch (s) {
    case Scheme::Taut:
      return is_tautology(f);
    case Scheme::Sum: {
      // s:A -> (s+t):A  or  s:A -> (t+s):A
      if (f->kind() != FK::Imp) return false;
      const auto& l = f->left();
      const auto& r = f->right();
      if (l->kind() != FK::Just || r->kind() != FK::Just) return false;
      if (r->term()->kind() != TK::Sum) return false;
      if (!equal(l->left(), r->left())) return false;
      return equal(r->term()->left(), l->term()) || equal(r->term()->right(), l->term());
    }
    case Scheme::jK: {
      // s:(A->B) -> (t:A -> (s*t):B)
      if (f->kind() != FK::Imp) return false;
      const auto& l = f->left();
      const auto& r = f->right();
      if (l->kind() != FK::Just || l->left()->kind() != FK::Imp) return false;
      if (r->kind() != FK::Imp) return false;
      const auto& ta = r->left();
      const auto& stb = r->right();
      if (ta->kind() != FK::Just || stb->kind() != FK::Just) return false;
      if (stb->term()->kind() != TK::App) return false;
      const auto& a = l->left()->left();
      const auto& b = l->left()->right();
      return equal(ta->left(), a) && equal(stb->left(), b) &&
             equal(stb->term()->left(), l->term()) && equal(stb->term()->right(), ta->term());
    }
    case Scheme::jT: {
      // t:A -> A
      if (f->kind() != FK::Imp || f->left()->kind() != FK::Just) return false;
      return equal(f->left()->left(), f->right());
    }
    case Scheme::jD: {
      // t:False -> False
      if (f->kind() != FK::Imp || f->left()->kind() != FK::Just) return false;
      return f->left()->left()->kind() == FK::Bottom && f->right()->kind() == FK::Bottom;
    }
    case Scheme::j4: {
      // t:A -> !t:t:A
      if (f->kind() != FK::Imp) return false;
      const auto& l = f->left();
      const auto& r = f->right();
      if (l->kind() != FK::Just || r->kind() != FK::Just) return false;
      if (r->term()->kind() != TK::Bang || !equal(r->term()->left(), l->term())) return false;
      return equal(r->left(), l);
    }
    case Scheme::jB: {
      // ~A -> @t:~t:A
      if (f->kind() != FK::Imp || f->left()->kind() != FK::Neg) return false;
      const auto& a = f->left()->left();
      const auto& r = f->right();
      if (r->kind() != FK::Just || r->term()->kind() != TK::BarQuery) return false;
      if (r->left()->kind() != FK::Neg || r->left()->left()->kind() != FK::Just) return false;
      const auto& inner = r->left()->left();
      return equal(inner->term(), r->term()->left()) && equal(inner->left(), a);
    }
    case Scheme::j5: {
      // ~t:A -> ?t:~t:A
      if (f->kind() != FK::Imp || f->left()->kind() != FK::Neg) return false;
      const auto& nta = f->left();
      if (nta->left()->kind() != FK::Just) return false;
      const auto& r = f->right();
      if (r->kind() != FK::Just || r->term()->kind() != TK::Query) return false;
      if (!equal(r->term()->left(), nta->left()->term())) return false;
      return equal(r->left(), nta);
    }
  }
  return false;
}

std::optional<Scheme> is_axiom_instance(const LogicId& logic, const FormulaPtr& f) {
  if (auto bad = logic.inadmissible_op(f)) {
    std::string op = *bad == Term::Kind::Bang ? "!" : (*bad == Term::Kind::Query ? "?" : "@");
    throw std::invalid_argument("operation '" + op + "' is not admitted in logic " + logic.name());
  }
  static const Scheme order[] = {Scheme::Taut, Scheme::Sum, Scheme::jK, Scheme::jT,
                                 Scheme::jD,   Scheme::j4,  Scheme::jB, Scheme::j5};
  for (Scheme s : order) {
    switch (s) {
      case Scheme::jT: if (!logic.has(Axiom::jT)) continue; break;
      case Scheme::jD: if (!logic.has(Axiom::jD)) continue; break;
      case Scheme::j4: if (!logic.has(Axiom::j4)) continue; break;
      case Scheme::jB: if (!logic.has(Axiom::jB)) continue; break;
      case Scheme::j5: if (!logic.has(Axiom::j5)) continue; break;
      default: break;
    }
    if (matches_scheme(s, f)) return s;
  }
  return std::nullopt;
}

void ConstantSpec::add(const FormulaPtr& entry, bool close_downward) {
  entries_.insert(entry);
  if (!close_downward) return;
  FormulaPtr body = entry;
  while (body->kind() == Formula::Kind::Just && body->term()->kind() == Term::Kind::Const &&
         body->left()->kind() == Formula::Kind::Just &&
         body->left()->term()->kind() == Term::Kind::Const) {
    body = body->left();
    entries_.insert(body);
  }
}

bool ConstantSpec::member(const FormulaPtr& f) const { return entries_.count(f) > 0; }

std::vector<CsViolation> validate_cs(const LogicId& logic, const ConstantSpec& cs) {
  std::vector<CsViolation> out;
  for (const auto& e : cs.entries()) {
    if (e->kind() != Formula::Kind::Just || e->term()->kind() != Term::Kind::Const) {
      out.push_back({e, "entry is not a constant-justified formula"});
      continue;
    }
    // Strip the maximal chain of constant justifications.
    FormulaPtr body = e->left();
    FormulaPtr prev = e;
    while (body->kind() == Formula::Kind::Just && body->term()->kind() == Term::Kind::Const) {
      if (!cs.member(body)) {
        out.push_back({e, "not downward closed: missing " + print_formula(body)});
      }
      prev = body;
      body = body->left();
    }
    try {
      if (!is_axiom_instance(logic, body)) {
        out.push_back({e, "innermost body " + print_formula(body) +
                              " is not an axiom instance of " + logic.name()});
      }
    } catch (const std::invalid_argument& ex) {
      out.push_back({e, ex.what()});
    }
  }
  return out;
}

bool cs_member(const ConstantSpec& cs, const FormulaPtr& f) { return cs.member(f); }

}  // namespace jtab
