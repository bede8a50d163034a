#ifndef JTAB_SYNTAX_HPP
#define JTAB_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace jtab {

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Justification terms: variables, constants and the five evidence operations.
class Term {
public:
  enum class Kind { Var, Const, App, Sum, Bang, Query, BarQuery };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }   // Var/Const only
  const TermPtr& left() const { return left_; }       // binary left / unary inner
  const TermPtr& right() const { return right_; }     // binary right

  static TermPtr var(std::string name);
  static TermPtr constant(std::string name);
  static TermPtr app(TermPtr left, TermPtr right);
  static TermPtr sum(TermPtr left, TermPtr right);
  static TermPtr bang(TermPtr inner);
  static TermPtr query(TermPtr inner);
  static TermPtr bar_query(TermPtr inner);

private:
  Term(Kind kind, std::string name, TermPtr left, TermPtr right)
      : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {}

  Kind kind_;
  std::string name_;
  TermPtr left_, right_;
};

/// Formulas: bottom, atoms, negation, implication and t:A.
class Formula {
public:
  enum class Kind { Bottom, Atom, Neg, Imp, Just };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }   // Atom only
  const TermPtr& term() const { return term_; }       // Just only
  const FormulaPtr& left() const { return left_; }    // Neg inner / Imp antecedent / Just body
  const FormulaPtr& right() const { return right_; }  // Imp consequent

  static FormulaPtr bottom();
  static FormulaPtr atom(std::string name);
  static FormulaPtr neg(FormulaPtr inner);
  static FormulaPtr imp(FormulaPtr antecedent, FormulaPtr consequent);
  static FormulaPtr just(TermPtr term, FormulaPtr body);

private:
  Formula(Kind kind, std::string name, TermPtr term, FormulaPtr left, FormulaPtr right)
      : kind_(kind), name_(std::move(name)), term_(std::move(term)),
        left_(std::move(left)), right_(std::move(right)) {}

  Kind kind_;
  std::string name_;
  TermPtr term_;
  FormulaPtr left_, right_;
};

// Structural equality / total order (kind, then name, then children).
int compare(const TermPtr& a, const TermPtr& b);
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return compare(a, b) < 0; }
};
struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};
using TermSet = std::set<TermPtr, TermLess>;
using FormulaSet = std::set<FormulaPtr, FormulaLess>;

// Node counts (terms count their own nodes; |t:A| = |t| + |A| + 1).
int node_count(const TermPtr& t);
int node_count(const FormulaPtr& f);

// Structural rank: r(x)=r(c)=0, binary ops add ranks plus one, unary ops add one;
// r(p)=r(false)=0, r(~A)=r(A)+1, r(A->B)=r(A)+r(B)+1, r(t:A)=r(t)+r(A)+1.
int rank(const TermPtr& t);
int rank(const FormulaPtr& f);

/// All subterms of t (reflexive-transitive over constructor arguments).
TermSet subterms(const TermPtr& t);

/// All syntactic subformulas of f, including f itself. Descends through
/// negation, implication and the body of t:A (terms are not entered).
FormulaSet syntactic_subformulas(const FormulaPtr& f);

/// Immediate syntactic subformulas (one constructor step).
std::vector<FormulaPtr> immediate_subformulas(const FormulaPtr& f);

/// All terms occurring in f (heads of : and nothing else carries terms).
TermSet terms_of(const FormulaPtr& f);

/// Negation with double-negation left intact: neg_of(A) = ~A.
FormulaPtr neg_of(const FormulaPtr& f);

/// Strips one negation if present, nullptr otherwise.
FormulaPtr un_neg(const FormulaPtr& f);

// Canonical ASCII printing. `*` for application, `+` for sum, `!` `?`
// prefix verifiers, `@` for the weak negative verifier, `~` negation,
// `->` implication, `False` for bottom. Sums are parenthesized before `:`.
std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);

// Ordering used for deterministic enumeration: node count first, then the
// canonical string.
bool size_lex_less(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace jtab

#endif  // JTAB_SYNTAX_HPP
