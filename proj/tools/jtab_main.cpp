#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "jtab/cutelim.hpp"
#include "jtab/hilbert.hpp"
#include "jtab/json_io.hpp"
#include "jtab/prover.hpp"
#include "jtab/subformula.hpp"

namespace {

constexpr int kExitProved = 0;
constexpr int kExitOpen = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

struct Common {
  std::string logic_name = "J";
  std::string cs_path;
  bool no_auto_close = false;

  jtab::LogicId logic() const { return jtab::LogicId::parse(logic_name); }

  jtab::ConstantSpec cs(jtab::Lexicon* lex = nullptr) const {
    if (cs_path.empty()) return {};
    return jtab::load_cs(read_file(cs_path), logic(), !no_auto_close, lex);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--logic", logic_name, "logic name, e.g. J, JT, JD4, JT45, LP");
    cmd->add_option("--cs", cs_path, "constant specification file");
    cmd->add_flag("--no-auto-close", no_auto_close,
                  "do not complete the downward closure of the CS file");
  }
};

struct Bounds {
  jtab::Budget budget;
  void attach(CLI::App* cmd) {
    cmd->add_option("--max-nodes", budget.max_nodes, "search node limit")
        ->envname("JTAB_MAX_NODES");
    cmd->add_option("--max-depth", budget.max_depth, "branch depth limit")
        ->envname("JTAB_MAX_DEPTH");
    cmd->add_option("--size-bound", budget.size_bound,
                    "subformula closure bound (0 = 3x root size)")
        ->envname("JTAB_SIZE_BOUND");
    cmd->add_option("--inst-bound", budget.instantiation_bound,
                    "instantiation size bound (0 = size bound)")
        ->envname("JTAB_INST_BOUND");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tableau proving toolkit for justification logics"};
  app.require_subcommand(1);

  // ---- prove ----
  auto* prove = app.add_subcommand("prove", "prove a formula or emit a countermodel");
  Common prove_common;
  Bounds prove_bounds;
  std::string prove_formula, prove_calculus = "jl", prove_output = "text", prove_out;
  bool allow_cut = false;
  prove_common.attach(prove);
  prove_bounds.attach(prove);
  prove->add_option("formula", prove_formula, "formula in the ASCII grammar")->required();
  prove->add_option("--calculus", prove_calculus, "jl or jlt")
      ->check(CLI::IsMember({"jl", "jlt"}));
  prove->add_flag("--allow-cut", allow_cut, "jlt with the unrestricted cut");
  prove->add_option("--output", prove_output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  prove->add_option("--out", prove_out, "write the proof/model to a file");

  // ---- check ----
  auto* check = app.add_subcommand("check", "verify a proof file");
  std::string check_path;
  check->add_option("proof", check_path, "proof JSON file")->required();

  // ---- subformulas ----
  auto* subf = app.add_subcommand("subformulas", "enumerate the subformula closure");
  Common subf_common;
  std::string subf_formula, subf_output = "text";
  int subf_bound = 0;
  bool subf_explain = false, subf_weak = false;
  subf_common.attach(subf);
  subf->add_option("formula", subf_formula)->required();
  subf->add_option("--bound", subf_bound, "size bound (0 = 3x root size)");
  subf->add_flag("--explain", subf_explain, "print a derivation note per member");
  subf->add_flag("--weak", subf_weak, "include the negations (weak closure)");
  subf->add_option("--output", subf_output)->check(CLI::IsMember({"text", "json"}));

  // ---- model ----
  auto* model = app.add_subcommand("model", "validate a countermodel file against a formula");
  Common model_common;
  std::string model_path, model_root;
  model_common.attach(model);
  model->add_option("model", model_path, "model JSON file")->required();
  model->add_option("--root", model_root, "the formula the model should refute")->required();

  // ---- translate ----
  auto* translate = app.add_subcommand("translate", "axiomatic proof to cut-calculus tableau");
  Common tr_common;
  std::string tr_path, tr_out;
  tr_common.attach(translate);
  translate->add_option("proof", tr_path, "axiomatic proof text file")->required();
  translate->add_option("--out", tr_out, "write the tableau JSON to a file");

  // ---- cutelim ----
  auto* cutelim = app.add_subcommand("cutelim", "eliminate cuts from a tableau proof");
  std::string ce_path, ce_out;
  bool ce_trace = false;
  cutelim->add_option("proof", ce_path, "proof JSON file")->required();
  cutelim->add_option("--out", ce_out, "write the final proof JSON to a file");
  cutelim->add_flag("--trace", ce_trace, "print every step with its measures");

  // ---- pipeline ----
  auto* pipeline = app.add_subcommand(
      "pipeline", "axiomatic proof -> translation -> cut elimination -> analytic check");
  Common pl_common;
  std::string pl_path;
  bool pl_trace = false;
  pl_common.attach(pipeline);
  pipeline->add_option("proof", pl_path, "axiomatic proof text file")->required();
  pipeline->add_flag("--trace", pl_trace, "print the elimination steps");

  // ---- parse ----
  auto* parse = app.add_subcommand("parse", "canonical form and JSON tree of a formula");
  std::string parse_formula_arg, parse_output = "text";
  parse->add_option("formula", parse_formula_arg)->required();
  parse->add_option("--output", parse_output)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    using namespace jtab;

    if (*prove) {
      Lexicon lex;
      auto logic = prove_common.logic();
      auto cs = prove_common.cs(&lex);
      auto root = parse_formula(prove_formula, lex);
      ProveResult res = prove_calculus == "jl"
                            ? prove_jl(root, logic, cs, prove_bounds.budget)
                            : prove_analytic(root, logic, cs, prove_bounds.budget, allow_cut);
      switch (res.verdict) {
        case Verdict::Proved: {
          std::string body = prove_output == "json" ? proof_to_json(*res.proof).dump(2) + "\n"
                                                    : render_text(*res.proof);
          write_output(prove_out, body);
          if (!res.check_ok) {
            std::cerr << "internal error: emitted proof failed verification\n";
            return kExitUnknown;
          }
          std::cerr << "proved (" << res.proof->size() << " formulas)\n";
          return kExitProved;
        }
        case Verdict::Open: {
          if (res.model) {
            write_output(prove_out, model_to_json(*res.model).dump(2) + "\n");
            std::cerr << "open: countermodel emitted and validated\n";
          } else {
            std::cerr << "open: saturated branch, countermodel extraction failed ("
                      << res.note << ")\n";
          }
          return kExitOpen;
        }
        case Verdict::Unknown:
          std::cerr << "unknown: " << res.note << "\n";
          return kExitUnknown;
      }
    }

    if (*check) {
      auto t = proof_from_json(Json::parse(read_file(check_path)));
      auto result = check_proof(t);
      if (result.ok()) {
        std::cerr << "ok\n";
        return 0;
      }
      std::cerr << result.to_string();
      return 1;
    }

    if (*subf) {
      Lexicon lex;
      auto logic = subf_common.logic();
      auto cs = subf_common.cs(&lex);
      auto root = parse_formula(subf_formula, lex);
      int bound = subf_bound > 0 ? subf_bound : node_count(root) + 4;
      if (bound < node_count(root))
        throw std::invalid_argument("--bound is below the root's node count");
      SubformulaOracle oracle({root}, cs, logic);
      auto members = oracle.members_up_to(bound);
      if (subf_weak) {
        auto base = members;
        for (const auto& f : base) members.push_back(Formula::neg(f));
        std::sort(members.begin(), members.end(), size_lex_less);
      }
      if (subf_output == "json") {
        Json out = Json::array();
        for (const auto& f : members) out.push_back(print_formula(f));
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& f : members) {
          std::cout << print_formula(f);
          if (subf_explain) {
            auto it = oracle.provenance().find(f);
            if (it != oracle.provenance().end()) std::cout << "   # " << it->second;
          }
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (*model) {
      Lexicon lex;
      auto logic = model_common.logic();
      auto cs = model_common.cs(&lex);
      auto m = model_from_json(Json::parse(read_file(model_path)), lex);
      auto root = parse_formula(model_root, lex);
      for (const auto& f : weak_subformulas_up_to({root, cs, logic, node_count(root)}))
        m.add_to_universe(f);
      auto report = check_conditions(m, logic, cs);
      for (const auto& fail : report.failures)
        std::cerr << fail.condition << " fails: " << fail.witness << "\n";
      bool refutes = validate_countermodel(m, root, logic, cs);
      std::cerr << (refutes ? "valid countermodel\n" : "not a countermodel\n");
      return refutes ? 0 : 1;
    }

    if (*translate) {
      Lexicon lex;
      auto logic = tr_common.logic();
      auto cs = tr_common.cs(&lex);
      auto proof = parse_hilbert(read_file(tr_path), lex);
      if (auto defect = check_hilbert(proof, logic, cs)) {
        std::cerr << "line " << (defect->line + 1) << ": " << defect->message << "\n";
        return 1;
      }
      auto tableau = translate_to_tableau(proof, logic, cs);
      write_output(tr_out, proof_to_json(tableau).dump(2) + "\n");
      return 0;
    }

    if (*cutelim) {
      auto t = proof_from_json(Json::parse(read_file(ce_path)));
      ElimTrace trace;
      trace.keep_snapshots = ce_trace;
      auto result = eliminate_all(t, &trace);
      auto check_result = check_proof(result);
      if (ce_trace) {
        for (size_t i = 0; i < trace.steps.size(); i++) {
          const auto& s = trace.steps[i];
          std::cerr << "step " << (i + 1) << ": case " << s.kase << " [" << s.sub_case
                    << "] on " << print_formula(s.cut_formula) << " (r=" << s.rank
                    << ", w=" << s.weight << ")\n";
          for (const auto& c : s.claims) std::cerr << "    -> " << c.to_string() << "\n";
          if (i < trace.snapshots.size()) std::cerr << trace.snapshots[i];
        }
      }
      write_output(ce_out, proof_to_json(result).dump(2) + "\n");
      if (!check_result.ok()) {
        std::cerr << check_result.to_string();
        return 1;
      }
      std::cerr << "cut-free (" << trace.steps.size() << " steps)\n";
      return 0;
    }

    if (*pipeline) {
      Lexicon lex;
      auto logic = pl_common.logic();
      auto cs = pl_common.cs(&lex);
      auto proof = parse_hilbert(read_file(pl_path), lex);
      if (auto defect = check_hilbert(proof, logic, cs)) {
        std::cerr << "hilbert check failed at line " << (defect->line + 1) << ": "
                  << defect->message << "\n";
        return 1;
      }
      auto translated = translate_to_tableau(proof, logic, cs);
      auto tcheck = check_proof(translated);
      if (!tcheck.ok()) {
        std::cerr << "translated tableau invalid:\n" << tcheck.to_string();
        return 1;
      }
      ElimTrace trace;
      auto final_proof = eliminate_all(translated, &trace);
      if (pl_trace) {
        for (const auto& s : trace.steps)
          std::cerr << "case " << s.kase << " [" << s.sub_case << "] on "
                    << print_formula(s.cut_formula) << "\n";
      }
      auto fcheck = check_proof(final_proof);
      if (!fcheck.ok()) {
        std::cerr << "final proof invalid:\n" << fcheck.to_string();
        return 1;
      }
      SubformulaOracle oracle({final_proof.root_formula()}, cs, logic);
      for (const auto& n : final_proof.nodes()) {
        if (!oracle.contains_weak(n.formula)) {
          std::cerr << "subformula property violated at node " << n.id << "\n";
          return 1;
        }
      }
      std::cerr << "pipeline ok: " << proof.lines.size() << " lines, "
                << trace.steps.size() << " elimination steps, final proof "
                << final_proof.size() << " formulas\n";
      return 0;
    }

    if (*parse) {
      auto f = jtab::parse_formula(parse_formula_arg);
      if (parse_output == "json")
        std::cout << formula_to_json(f).dump(2) << "\n";
      else
        std::cout << print_formula(f) << "\n";
      return 0;
    }
  } catch (const jtab::ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
