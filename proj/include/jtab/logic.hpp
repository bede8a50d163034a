#ifndef JTAB_LOGIC_HPP
#define JTAB_LOGIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "jtab/syntax.hpp"

namespace jtab {

enum class Axiom { jT, jD, j4, jB, j5 };

/// A justification logic is identified by its optional axiom schemes.
/// Application and sum are always admitted; `!` needs j4, `@` needs jB,
/// `?` needs j5.
class LogicId {
public:
  LogicId() = default;
  static LogicId parse(const std::string& name);  // "J", "JT4", "JD", alias "LP"

  LogicId& add(Axiom ax);
  bool has(Axiom ax) const;
  std::string name() const;

  bool admits(Term::Kind op) const;
  /// First inadmissible operation found in f, if any.
  std::optional<Term::Kind> inadmissible_op(const FormulaPtr& f) const;

  bool operator==(const LogicId&) const = default;

private:
  unsigned mask_ = 0;
};

enum class Scheme { Taut, Sum, jK, jT, jD, j4, jB, j5 };

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

/// True iff f matches the given scheme (shape match; Taut by truth table
/// over opaque atoms). Scheme availability under `logic` is not checked here.
bool matches_scheme(Scheme s, const FormulaPtr& f);

/// First matching scheme in the fixed order Taut, Sum, jK, jT, jD, j4, jB, j5,
/// restricted to schemes available in `logic`.
/// Throws std::invalid_argument when f uses an operation `logic` does not admit.
std::optional<Scheme> is_axiom_instance(const LogicId& logic, const FormulaPtr& f);

/// Propositional tautology test treating maximal t:A subformulas and atoms as
/// opaque letters, with bottom fixed false. Exhaustive valuation.
bool is_tautology(const FormulaPtr& f);

/// A finite, downward-closed set of constant-justified axiom instances.
class ConstantSpec {
public:
  ConstantSpec() = default;

  /// Inserts the entry and (`close_downward`) its justification suffixes.
  void add(const FormulaPtr& entry, bool close_downward = false);
  bool member(const FormulaPtr& f) const;
  const FormulaSet& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

private:
  FormulaSet entries_;
};

struct CsViolation {
  FormulaPtr entry;
  std::string reason;
};

/// Empty result means the set is valid for `logic`: every entry is a chain of
/// constant justifications over an axiom instance, and the set is downward
/// closed.
std::vector<CsViolation> validate_cs(const LogicId& logic, const ConstantSpec& cs);

bool cs_member(const ConstantSpec& cs, const FormulaPtr& f);

}  // namespace jtab

#endif  // JTAB_LOGIC_HPP
