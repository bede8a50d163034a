#ifndef JTAB_PARSE_HPP
#define JTAB_PARSE_HPP

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "jtab/syntax.hpp"

namespace jtab {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line), column(column) {}
  int line;
  int column;
};

/// Classification of term identifiers. By default the leading letter decides:
/// x..z are variables, a..w are constants, anything else is not a term.
/// Explicit `var`/`const` declarations in input files override this.
struct Lexicon {
  std::unordered_set<std::string> variables;
  std::unordered_set<std::string> constants;

  bool is_variable(const std::string& name) const;
  bool is_constant(const std::string& name) const;
  void declare_variable(std::string name) { variables.insert(std::move(name)); }
  void declare_constant(std::string name) { constants.insert(std::move(name)); }
};

/// Parses a single formula; the whole input must be consumed.
FormulaPtr parse_formula(const std::string& input, const Lexicon& lexicon = {});

/// Parses a single term; the whole input must be consumed.
TermPtr parse_term(const std::string& input, const Lexicon& lexicon = {});

}  // namespace jtab

#endif  // JTAB_PARSE_HPP
