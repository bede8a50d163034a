#include "jtab/syntax.hpp"

#include <cassert>
#include <stdexcept>

namespace jtab {

TermPtr Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("term variable name must be nonempty");
  return TermPtr(new Term(Kind::Var, std::move(name), nullptr, nullptr));
}
TermPtr Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("term constant name must be nonempty");
  return TermPtr(new Term(Kind::Const, std::move(name), nullptr, nullptr));
}
TermPtr Term::app(TermPtr left, TermPtr right) {
  assert(left && right);
  return TermPtr(new Term(Kind::App, "", std::move(left), std::move(right)));
}
TermPtr Term::sum(TermPtr left, TermPtr right) {
  assert(left && right);
  return TermPtr(new Term(Kind::Sum, "", std::move(left), std::move(right)));
}
TermPtr Term::bang(TermPtr inner) {
  assert(inner);
  return TermPtr(new Term(Kind::Bang, "", std::move(inner), nullptr));
}
TermPtr Term::query(TermPtr inner) {
  assert(inner);
  return TermPtr(new Term(Kind::Query, "", std::move(inner), nullptr));
}
TermPtr Term::bar_query(TermPtr inner) {
  assert(inner);
  return TermPtr(new Term(Kind::BarQuery, "", std::move(inner), nullptr));
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr kBottom(new Formula(Kind::Bottom, "", nullptr, nullptr, nullptr));
  return kBottom;
}
FormulaPtr Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return FormulaPtr(new Formula(Kind::Atom, std::move(name), nullptr, nullptr, nullptr));
}
FormulaPtr Formula::neg(FormulaPtr inner) {
  assert(inner);
  return FormulaPtr(new Formula(Kind::Neg, "", nullptr, std::move(inner), nullptr));
}
FormulaPtr Formula::imp(FormulaPtr antecedent, FormulaPtr consequent) {
  assert(antecedent && consequent);
  return FormulaPtr(new Formula(Kind::Imp, "", nullptr, std::move(antecedent), std::move(consequent)));
}
FormulaPtr Formula::just(TermPtr term, FormulaPtr body) {
  assert(term && body);
  return FormulaPtr(new Formula(Kind::Just, "", std::move(term), std::move(body), nullptr));
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  switch (a->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return a->name().compare(b->name());
    case Term::Kind::App:
    case Term::Kind::Sum: {
      int c = compare(a->left(), b->left());
      return c != 0 ? c : compare(a->right(), b->right());
    }
    case Term::Kind::Bang:
    case Term::Kind::Query:
    case Term::Kind::BarQuery:
      return compare(a->left(), b->left());
  }
  return 0;
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  switch (a->kind()) {
    case Formula::Kind::Bottom:
      return 0;
    case Formula::Kind::Atom:
      return a->name().compare(b->name());
    case Formula::Kind::Neg:
      return compare(a->left(), b->left());
    case Formula::Kind::Imp: {
      int c = compare(a->left(), b->left());
      return c != 0 ? c : compare(a->right(), b->right());
    }
    case Formula::Kind::Just: {
      int c = compare(a->term(), b->term());
      return c != 0 ? c : compare(a->left(), b->left());
    }
  }
  return 0;
}

bool equal(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }
bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

int node_count(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return 1;
    case Term::Kind::App:
    case Term::Kind::Sum:
      return node_count(t->left()) + node_count(t->right()) + 1;
    default:
      return node_count(t->left()) + 1;
  }
}

int node_count(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Atom:
      return 1;
    case Formula::Kind::Neg:
      return node_count(f->left()) + 1;
    case Formula::Kind::Imp:
      return node_count(f->left()) + node_count(f->right()) + 1;
    case Formula::Kind::Just:
      return node_count(f->term()) + node_count(f->left()) + 1;
  }
  return 0;
}

int rank(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return 0;
    case Term::Kind::App:
    case Term::Kind::Sum:
      return rank(t->left()) + rank(t->right()) + 1;
    default:
      return rank(t->left()) + 1;
  }
}

int rank(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Neg:
      return rank(f->left()) + 1;
    case Formula::Kind::Imp:
      return rank(f->left()) + rank(f->right()) + 1;
    case Formula::Kind::Just:
      return rank(f->term()) + rank(f->left()) + 1;
  }
  return 0;
}

namespace {

void collect_subterms(const TermPtr& t, TermSet& out) {
  if (!out.insert(t).second) return;
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      break;
    case Term::Kind::App:
    case Term::Kind::Sum:
      collect_subterms(t->left(), out);
      collect_subterms(t->right(), out);
      break;
    default:
      collect_subterms(t->left(), out);
      break;
  }
}

void collect_subformulas(const FormulaPtr& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  for (const auto& g : immediate_subformulas(f)) collect_subformulas(g, out);
}

void collect_terms(const FormulaPtr& f, TermSet& out) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Atom:
      break;
    case Formula::Kind::Neg:
      collect_terms(f->left(), out);
      break;
    case Formula::Kind::Imp:
      collect_terms(f->left(), out);
      collect_terms(f->right(), out);
      break;
    case Formula::Kind::Just:
      out.insert(f->term());
      collect_terms(f->left(), out);
      break;
  }
}

}  // namespace

TermSet subterms(const TermPtr& t) {
  TermSet out;
  collect_subterms(t, out);
  return out;
}

FormulaSet syntactic_subformulas(const FormulaPtr& f) {
  FormulaSet out;
  collect_subformulas(f, out);
  return out;
}

std::vector<FormulaPtr> immediate_subformulas(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Atom:
      return {};
    case Formula::Kind::Neg:
      return {f->left()};
    case Formula::Kind::Imp:
      return {f->left(), f->right()};
    case Formula::Kind::Just:
      return {f->left()};
  }
  return {};
}

TermSet terms_of(const FormulaPtr& f) {
  TermSet out;
  collect_terms(f, out);
  return out;
}

FormulaPtr neg_of(const FormulaPtr& f) { return Formula::neg(f); }

FormulaPtr un_neg(const FormulaPtr& f) {
  return f->kind() == Formula::Kind::Neg ? f->left() : nullptr;
}

namespace {

// Term precedence levels: prefix ops bind tightest, then `*`, then `+`.
enum TermPrec { kTermSum = 0, kTermApp = 1, kTermPrefix = 2 };

void print_term_rec(const TermPtr& t, int min_prec, std::string& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += t->name();
      return;
    case Term::Kind::Sum: {
      bool paren = min_prec > kTermSum;
      if (paren) out += '(';
      print_term_rec(t->left(), kTermSum, out);     // left associative
      out += '+';
      print_term_rec(t->right(), kTermSum + 1, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::App: {
      bool paren = min_prec > kTermApp;
      if (paren) out += '(';
      print_term_rec(t->left(), kTermApp, out);
      out += '*';
      print_term_rec(t->right(), kTermApp + 1, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Bang:
    case Term::Kind::Query:
    case Term::Kind::BarQuery: {
      out += t->kind() == Term::Kind::Bang ? '!' : (t->kind() == Term::Kind::Query ? '?' : '@');
      print_term_rec(t->left(), kTermPrefix, out);
      return;
    }
  }
}

// Formula precedence: `:` > `~` > `->`.
enum FormulaPrec { kFImp = 0, kFNeg = 1, kFJust = 2 };

void print_formula_rec(const FormulaPtr& f, int min_prec, std::string& out) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
      out += "False";
      return;
    case Formula::Kind::Atom:
      out += f->name();
      return;
    case Formula::Kind::Imp: {
      bool paren = min_prec > kFImp;
      if (paren) out += '(';
      print_formula_rec(f->left(), kFImp + 1, out);  // right associative
      out += " -> ";
      print_formula_rec(f->right(), kFImp, out);
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::Neg: {
      bool paren = min_prec > kFNeg;
      if (paren) out += '(';
      out += '~';
      print_formula_rec(f->left(), kFNeg, out);
      if (paren) out += ')';
      return;
    }
    case Formula::Kind::Just: {
      // Sums are parenthesized on the left of `:`, e.g. "(t+s):A".
      if (f->term()->kind() == Term::Kind::Sum) {
        out += '(';
        print_term_rec(f->term(), kTermSum, out);
        out += ')';
      } else {
        print_term_rec(f->term(), kTermApp, out);
      }
      out += ':';
      print_formula_rec(f->left(), kFJust, out);
      return;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_term_rec(t, kTermSum, out);
  return out;
}

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_formula_rec(f, kFImp, out);
  return out;
}

bool size_lex_less(const FormulaPtr& a, const FormulaPtr& b) {
  int na = node_count(a), nb = node_count(b);
  if (na != nb) return na < nb;
  return print_formula(a) < print_formula(b);
}

}  // namespace jtab
