#ifndef JTAB_JSON_IO_HPP
#define JTAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "jtab/hilbert.hpp"
#include "jtab/parse.hpp"
#include "jtab/semantics.hpp"
#include "jtab/tableau.hpp"

namespace jtab {

using Json = nlohmann::ordered_json;

/// Structured tree form: {"kind": ..., "children": [...]} with "name" on
/// atoms/identifiers and "term" on justification assertions.
Json term_to_json(const TermPtr& t);
Json formula_to_json(const FormulaPtr& f);

/// {"calculus", "logic", "cs": [...], "nodes": [{"id", "formula", "rule",
///  "premises", "instantiation", "children"}]}
Json proof_to_json(const Tableau& t);
Tableau proof_from_json(const Json& j, const Lexicon& lexicon = {});

/// {"valuation": {...}, "evidence": [{"term", "formulas"}], "universe": [...]}
Json model_to_json(const MModel& m);
MModel model_from_json(const Json& j, const Lexicon& lexicon = {});

/// CS text format: one `constant-chain : formula` entry per line, with `#`
/// comments and `var`/`const` declarations. `auto_close` completes the
/// downward closure. The result is validated against the logic.
ConstantSpec load_cs(const std::string& text, const LogicId& logic, bool auto_close,
                     Lexicon* lexicon = nullptr);
std::string print_cs(const ConstantSpec& cs);

}  // namespace jtab

#endif  // JTAB_JSON_IO_HPP
