#include "jtab/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace jtab {

Json term_to_json(const TermPtr& t) {
  Json j;
  switch (t->kind()) {
    case Term::Kind::Var: j["kind"] = "var"; j["name"] = t->name(); return j;
    case Term::Kind::Const: j["kind"] = "const"; j["name"] = t->name(); return j;
    case Term::Kind::App: j["kind"] = "app"; break;
    case Term::Kind::Sum: j["kind"] = "sum"; break;
    case Term::Kind::Bang: j["kind"] = "bang"; break;
    case Term::Kind::Query: j["kind"] = "query"; break;
    case Term::Kind::BarQuery: j["kind"] = "bar-query"; break;
  }
  Json children = Json::array();
  children.push_back(term_to_json(t->left()));
  if (t->right()) children.push_back(term_to_json(t->right()));
  j["children"] = std::move(children);
  return j;
}

Json formula_to_json(const FormulaPtr& f) {
  Json j;
  switch (f->kind()) {
    case Formula::Kind::Bottom: j["kind"] = "bottom"; return j;
    case Formula::Kind::Atom: j["kind"] = "atom"; j["name"] = f->name(); return j;
    case Formula::Kind::Neg: j["kind"] = "neg"; break;
    case Formula::Kind::Imp: j["kind"] = "imp"; break;
    case Formula::Kind::Just: j["kind"] = "just"; j["term"] = term_to_json(f->term()); break;
  }
  Json children = Json::array();
  children.push_back(formula_to_json(f->left()));
  if (f->right()) children.push_back(formula_to_json(f->right()));
  j["children"] = std::move(children);
  return j;
}

Json proof_to_json(const Tableau& t) {
  Json j;
  j["calculus"] = calculus_name(t.calculus());
  j["logic"] = t.logic().name();
  Json cs = Json::array();
  for (const auto& e : t.cs().entries()) cs.push_back(print_formula(e));
  j["cs"] = std::move(cs);
  Json nodes = Json::array();
  for (const auto& n : t.nodes()) {
    Json nj;
    nj["id"] = n.id;
    nj["formula"] = print_formula(n.formula);
    if (n.rule) {
      nj["rule"] = rule_name(n.rule->rule);
      nj["premises"] = n.rule->premises;
      if (n.rule->instantiation)
        nj["instantiation"] = print_formula(n.rule->instantiation);
    } else {
      nj["rule"] = "root";
    }
    nj["children"] = n.children;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Tableau proof_from_json(const Json& j, const Lexicon& lexicon) {
  auto calculus = calculus_from_name(j.at("calculus").get<std::string>());
  if (!calculus) throw std::invalid_argument("unknown calculus in proof file");
  LogicId logic = LogicId::parse(j.at("logic").get<std::string>());
  ConstantSpec cs;
  for (const auto& e : j.at("cs")) cs.add(parse_formula(e.get<std::string>(), lexicon));

  const auto& nodes = j.at("nodes");
  if (nodes.empty()) throw std::invalid_argument("proof has no nodes");

  // the root chain: leading nodes with rule "root"
  std::vector<FormulaPtr> roots;
  size_t i = 0;
  while (i < nodes.size() && nodes[i].at("rule").get<std::string>() == "root") {
    roots.push_back(parse_formula(nodes[i].at("formula").get<std::string>(), lexicon));
    i++;
  }
  if (roots.empty()) throw std::invalid_argument("proof has no root node");
  Tableau t(*calculus, logic, cs, roots);

  // ids must match positions; parents are reconstructed from children lists
  std::vector<int> parent(nodes.size(), -1);
  for (size_t k = 0; k < nodes.size(); k++) {
    if (nodes[k].at("id").get<int>() != static_cast<int>(k))
      throw std::invalid_argument("proof nodes must be numbered consecutively");
    for (const auto& c : nodes[k].at("children")) {
      int child = c.get<int>();
      if (child <= static_cast<int>(k) || child >= static_cast<int>(nodes.size()))
        throw std::invalid_argument("child index out of range at node " + std::to_string(k));
      parent[child] = static_cast<int>(k);
    }
  }
  for (size_t k = i; k < nodes.size(); k++) {
    const auto& nj = nodes[k];
    if (parent[k] < 0)
      throw std::invalid_argument("node " + std::to_string(k) + " is not reachable from a parent");
    std::string rname = nj.at("rule").get<std::string>();
    if (rname == "root")
      throw std::invalid_argument("root nodes must precede rule nodes");
    auto rule = rule_from_name(rname);
    if (!rule) throw std::invalid_argument("unknown rule '" + rname + "'");
    RuleApp app;
    app.rule = *rule;
    for (const auto& p : nj.at("premises")) app.premises.push_back(p.get<int>());
    if (nj.contains("instantiation"))
      app.instantiation = parse_formula(nj.at("instantiation").get<std::string>(), lexicon);
    int id = t.append(parent[k], parse_formula(nj.at("formula").get<std::string>(), lexicon), app);
    if (id != static_cast<int>(k))
      throw std::invalid_argument("proof nodes must be listed parents-first");
  }
  return t;
}

Json model_to_json(const MModel& m) {
  Json j;
  Json val = Json::object();
  for (const auto& [p, v] : m.valuation) val[p] = v ? 1 : 0;
  j["valuation"] = std::move(val);
  Json ev = Json::array();
  for (const auto& [t, fs] : m.evidence()) {
    Json e;
    e["term"] = print_term(t);
    Json list = Json::array();
    for (const auto& f : fs) list.push_back(print_formula(f));
    e["formulas"] = std::move(list);
    ev.push_back(std::move(e));
  }
  j["evidence"] = std::move(ev);
  Json uni = Json::array();
  for (const auto& f : m.universe()) uni.push_back(print_formula(f));
  j["universe"] = std::move(uni);
  return j;
}

MModel model_from_json(const Json& j, const Lexicon& lexicon) {
  MModel m;
  if (j.contains("valuation")) {
    for (const auto& [k, v] : j.at("valuation").items())
      m.set_valuation(k, v.get<int>() != 0);
  }
  if (j.contains("universe")) {
    for (const auto& f : j.at("universe"))
      m.add_to_universe(parse_formula(f.get<std::string>(), lexicon));
  }
  if (j.contains("evidence")) {
    for (const auto& e : j.at("evidence")) {
      auto t = parse_term(e.at("term").get<std::string>(), lexicon);
      for (const auto& f : e.at("formulas"))
        m.add_evidence(t, parse_formula(f.get<std::string>(), lexicon));
    }
  }
  return m;
}

ConstantSpec load_cs(const std::string& text, const LogicId& logic, bool auto_close,
                     Lexicon* lexicon) {
  Lexicon local;
  Lexicon& lex = lexicon ? *lexicon : local;
  ConstantSpec cs;
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
          lex.declare_variable(name);
        else
          lex.declare_constant(name);
      }
      continue;
    }
    try {
      cs.add(parse_formula(s, lex), auto_close);
    } catch (const ParseError& e) {
      throw std::invalid_argument("cs line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  auto violations = validate_cs(logic, cs);
  if (!violations.empty())
    throw std::invalid_argument("invalid constant specification: " +
                                print_formula(violations.front().entry) + ": " +
                                violations.front().reason);
  return cs;
}

std::string print_cs(const ConstantSpec& cs) {
  std::string out;
  for (const auto& e : cs.entries()) {
    out += print_formula(e);
    out += "\n";
  }
  return out;
}

}  // namespace jtab
