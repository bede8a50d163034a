#ifndef JTAB_HILBERT_HPP
#define JTAB_HILBERT_HPP

#include <optional>
#include <string>
#include <vector>

#include "jtab/parse.hpp"
#include "jtab/tableau.hpp"

namespace jtab {

/// One line of an axiomatic proof: an axiom instance, modus ponens over two
/// earlier lines, or a constant-specification member introduced by iterated
/// axiom necessitation.
struct HilbertLine {
  enum class Kind { Axiom, MP, IAN };
  Kind kind = Kind::Axiom;
  FormulaPtr formula;
  Scheme scheme = Scheme::Taut;  // Axiom lines
  int from = -1;                 // MP: index of B
  int imp = -1;                  // MP: index of B -> A
};

struct HilbertProof {
  std::vector<HilbertLine> lines;
  FormulaPtr conclusion() const { return lines.back().formula; }
};

struct HilbertDefect {
  int line;  // 0-based
  std::string message;
};

/// Line-by-line verification: axiom lines match their declared scheme, MP
/// lines cite earlier lines of the right shapes, IAN lines are CS members.
/// Returns the first defect, if any.
std::optional<HilbertDefect> check_hilbert(const HilbertProof& p, const LogicId& logic,
                                           const ConstantSpec& cs);

/// Translates a checked proof into a closed tableau for its conclusion in
/// the cut calculus. Axiom lines expand to cut- and PB-free subtableaux, MP
/// lines become the two-cut tree over B and B -> A, IAN lines close against
/// the constant specification.
Tableau translate_to_tableau(const HilbertProof& p, const LogicId& logic, const ConstantSpec& cs);

/// Text format: one line per step, `n. formula [Taut|Sum|jK|...|MP i j|IAN]`,
/// 1-based citations, `#` comments, and `var`/`const` declarations.
HilbertProof parse_hilbert(const std::string& text, Lexicon lexicon = {});
std::string print_hilbert(const HilbertProof& p);

}  // namespace jtab

#endif  // JTAB_HILBERT_HPP
