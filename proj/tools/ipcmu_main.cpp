#include "ipcmu/bounds.hpp"
#include "ipcmu/eliminate.hpp"
#include "ipcmu/formula.hpp"
#include "ipcmu/json_io.hpp"
#include "ipcmu/prover.hpp"
#include "ipcmu/selftest.hpp"
#include "ipcmu/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using ipcmu::Countermodel;
using ipcmu::DownsetAlgebra;
using ipcmu::EliminationStep;
using ipcmu::Formula;
using ipcmu::Kind;
using ipcmu::ProverOptions;
using ipcmu::Sequent;

// Exit codes, fixed for scriptability. CLI11 reports usage errors above 100,
// so the two ranges never collide.
constexpr int kExitOk = 0;            // success / formulas equivalent
constexpr int kExitParseError = 1;    // input is not a formula
constexpr int kExitIllFormed = 2;     // ill-formed binder or wrong input shape
constexpr int kExitVerifyFailed = 3;  // --verify / --measure / selftest violation
constexpr int kExitNotEquivalent = 4; // equiv: refuted
constexpr int kExitUndetermined = 5;  // proof search budget exhausted, no countermodel
constexpr int kExitOracleClash = 6;   // prover and algebras contradict each other

struct RunConfig {
  std::vector<std::string> inputs;  // positional formula text (or JSON trees)
  std::string file;                 // optional file source, appended after positionals
  bool json = false;
  bool verify = false;
  bool measure = false;
  int max_poset_size = 4;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  int corpus = 500;
};

// Bad input text, unreadable files, wrong formula counts.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parseable input that the command cannot accept (ill-formed binder, not a
// least fixed point, ...).
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts either the concrete grammar or a serialized JSON tree.
Formula parse_one(const std::string& text) {
  try {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      return ipcmu::from_json(nlohmann::json::parse(text));
    }
    return ipcmu::parse(text);
  } catch (const ipcmu::ParseError& e) {
    throw InputError(e.what());  // already carries line and column
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("parse error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

// Positional arguments first, then the contents of --file: one formula per
// non-empty line, or a whole-file JSON tree (an array supplies several).
std::vector<std::string> gather_texts(const RunConfig& config, std::size_t expected) {
  std::vector<std::string> texts = config.inputs;
  if (!config.file.empty()) {
    std::ifstream in(config.file);
    if (!in) throw InputError("cannot read file: " + config.file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();
    const std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (content[first] == '{' || content[first] == '[')) {
      try {
        nlohmann::json j = nlohmann::json::parse(content);
        if (j.is_array()) {
          for (const auto& item : j) texts.push_back(item.dump());
        } else {
          texts.push_back(j.dump());
        }
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("parse error in ") + config.file + ": " + e.what());
      }
    } else {
      std::istringstream lines(content);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) texts.push_back(line);
      }
    }
  }
  if (texts.size() != expected) {
    std::ostringstream out;
    out << "expected " << expected << " formula" << (expected == 1 ? "" : "s") << ", got "
        << texts.size();
    throw InputError(out.str());
  }
  return texts;
}

Formula single_input(const RunConfig& config) {
  return parse_one(gather_texts(config, 1).front());
}

std::pair<Formula, Formula> pair_input(const RunConfig& config) {
  const std::vector<std::string> texts = gather_texts(config, 2);
  Formula first = parse_one(texts[0]);
  Formula second = parse_one(texts[1]);
  return {std::move(first), std::move(second)};
}

void require_well_formed(const Formula& f, const std::string& what) {
  const ipcmu::WellFormedness wf = ipcmu::well_formed(f);
  if (!wf.ok) throw ShapeError(what + ": " + wf.issues.front().message());
}

std::string countermodel_line(const Countermodel& cm, const DownsetAlgebra& algebra,
                              const char* lhs_name, const char* rhs_name) {
  std::ostringstream out;
  out << algebra.poset().describe();
  for (const auto& [name, value] : cm.valuation) {
    out << "; " << name << " = " << algebra.label(value);
  }
  out << "; " << lhs_name << " = " << algebra.label(cm.lhs);
  out << "; " << rhs_name << " = " << algebra.label(cm.rhs);
  return out.str();
}

nlohmann::json countermodel_json(const Countermodel& cm, const DownsetAlgebra& algebra,
                                 const char* lhs_name, const char* rhs_name) {
  nlohmann::json valuation = nlohmann::json::object();
  for (const auto& [name, value] : cm.valuation) valuation[name] = algebra.label(value);
  return {{"poset", algebra.poset().describe()},
          {"valuation", std::move(valuation)},
          {lhs_name, algebra.label(cm.lhs)},
          {rhs_name, algebra.label(cm.rhs)}};
}

int cmd_parse(const RunConfig& config) {
  const Formula f = single_input(config);
  if (config.json) {
    std::cout << ipcmu::to_json(f).dump(2) << "\n";
  } else {
    std::cout << ipcmu::to_string(f) << "\n";
  }
  const ipcmu::WellFormedness wf = ipcmu::well_formed(f);
  if (!wf.ok) {
    for (const auto& issue : wf.issues) std::cerr << "ill-formed: " << issue.message() << "\n";
    return kExitIllFormed;
  }
  return kExitOk;
}

// Semantic re-check on every algebra, then a per-binder proof: each recorded
// replacement is a fixed point of its body and is extremal among the
// (pre/post) fixed points, witnessed through a fresh atom.
int verify_elimination(const Formula& input, const Formula& result,
                       const std::vector<EliminationStep>& steps, const RunConfig& config) {
  const std::vector<DownsetAlgebra> algebras = ipcmu::algebras_up_to(config.max_poset_size);
  for (const DownsetAlgebra& algebra : algebras) {
    if (const auto cm = ipcmu::check_equiv(input, result, algebra)) {
      std::cerr << "verification failed: " << countermodel_line(*cm, algebra, "input", "output")
                << "\n";
      return kExitVerifyFailed;
    }
  }
  const ProverOptions options{config.budget};
  const Formula p = Formula::var("p'");
  try {
    for (const EliminationStep& step : steps) {
      const Formula folded = ipcmu::substitute(step.body, step.var, step.replacement);
      const Formula at_p = ipcmu::substitute(step.body, step.var, p);
      const bool fixed = ipcmu::equivalent(step.replacement, folded, options);
      const bool extremal =
          step.binder == Kind::Mu
              ? ipcmu::provable(Sequent({Formula::imp(at_p, p)}, Formula::imp(step.replacement, p)),
                                options)
              : ipcmu::provable(Sequent({Formula::imp(p, at_p)}, Formula::imp(p, step.replacement)),
                                options);
      if (!fixed || !extremal) {
        std::cerr << "verification failed: replacement for " << (step.binder == Kind::Mu ? "mu " : "nu ")
                  << step.var << " is not " << (fixed ? "extremal" : "a fixed point") << ": "
                  << ipcmu::to_string(step.replacement) << "\n";
        return kExitVerifyFailed;
      }
    }
  } catch (const ipcmu::BudgetExceeded&) {
    std::cerr << "verification inconclusive: proof search ran out of node budget (" << config.budget
              << " nodes)\n";
    return kExitUndetermined;
  }
  std::cerr << "verified: equal on " << algebras.size() << " algebras (posets <= "
            << config.max_poset_size << "); " << steps.size() << " binder certificate"
            << (steps.size() == 1 ? "" : "s") << " proved\n";
  return kExitOk;
}

int cmd_eliminate(const RunConfig& config) {
  const Formula input = single_input(config);
  require_well_formed(input, "eliminate");
  std::vector<EliminationStep> steps;
  const Formula result = ipcmu::eliminate_all(input, &steps);
  if (config.json) {
    std::cout << ipcmu::to_json(result).dump(2) << "\n";
  } else {
    std::cout << ipcmu::to_string(result) << "\n";
  }
  if (!config.verify) return kExitOk;
  return verify_elimination(input, result, steps, config);
}

int cmd_equiv(const RunConfig& config) {
  auto [lhs, rhs] = pair_input(config);
  require_well_formed(lhs, "equiv");
  require_well_formed(rhs, "equiv");

  Formula lhs_free = lhs;
  Formula rhs_free = rhs;
  if (!ipcmu::fixed_point_free(lhs_free)) {
    lhs_free = ipcmu::eliminate_all(lhs_free);
    std::cerr << "note: eliminated fixed points from the first formula: "
              << ipcmu::to_string(lhs_free) << "\n";
  }
  if (!ipcmu::fixed_point_free(rhs_free)) {
    rhs_free = ipcmu::eliminate_all(rhs_free);
    std::cerr << "note: eliminated fixed points from the second formula: "
              << ipcmu::to_string(rhs_free) << "\n";
  }

  const std::vector<DownsetAlgebra> algebras = ipcmu::algebras_up_to(config.max_poset_size);
  std::optional<Countermodel> cm;
  const DownsetAlgebra* where = nullptr;
  for (const DownsetAlgebra& algebra : algebras) {
    if ((cm = ipcmu::check_equiv(lhs, rhs, algebra))) {
      where = &algebra;
      break;
    }
  }

  bool proved = false;
  bool exhausted = false;
  try {
    proved = ipcmu::equivalent(lhs_free, rhs_free, ProverOptions{config.budget});
  } catch (const ipcmu::BudgetExceeded&) {
    exhausted = true;
  }

  const std::string prover_says = exhausted ? "budget exhausted"
                                 : proved   ? "equivalent"
                                            : "not equivalent";
  std::string verdict;
  int exit_code = kExitOk;
  if (!exhausted && proved && !cm) {
    verdict = "equivalent";
  } else if (cm && (exhausted || !proved)) {
    verdict = "not equivalent";
    exit_code = kExitNotEquivalent;
  } else if (!exhausted && !proved) {
    verdict = "not equivalent";  // the prover is complete; small algebras just missed a witness
    exit_code = kExitNotEquivalent;
  } else if (exhausted) {
    verdict = "undetermined";
    exit_code = kExitUndetermined;
  } else {
    verdict = "oracle disagreement";  // proved equivalent yet refuted: library defect
    exit_code = kExitOracleClash;
  }

  if (config.json) {
    nlohmann::json out = {{"verdict", verdict},
                          {"prover", prover_says},
                          {"algebras", algebras.size()},
                          {"max_poset_size", config.max_poset_size},
                          {"countermodel", nullptr}};
    if (cm) out["countermodel"] = countermodel_json(*cm, *where, "first", "second");
    std::cout << out.dump(2) << "\n";
    return exit_code;
  }

  if (exhausted) {
    std::cout << "prover: budget exhausted (" << config.budget << " nodes)\n";
  } else {
    std::cout << "prover: " << prover_says << "\n";
  }
  if (cm) {
    std::cout << "algebras: countermodel found\n";
    std::cout << "countermodel: " << countermodel_line(*cm, *where, "first", "second") << "\n";
  } else {
    std::cout << "algebras: no countermodel on " << algebras.size() << " algebras (posets <= "
              << config.max_poset_size << ")\n";
  }
  std::cout << "verdict: " << verdict << "\n";
  return exit_code;
}

nlohmann::json derivation_json(const ipcmu::ConvergenceBound& bound) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& input : bound.inputs) inputs.push_back(derivation_json(input));
  return {{"value", bound.value}, {"rule", bound.rule}, {"inputs", std::move(inputs)}};
}

int cmd_bound(const RunConfig& config) {
  const Formula input = single_input(config);
  require_well_formed(input, "bound");
  if (input.kind() != Kind::Mu || !ipcmu::fixed_point_free(input.body())) {
    throw ShapeError("bound: input must be a least fixed point mu x. phi with phi fixed-point free");
  }
  const ipcmu::ConvergenceBound bound = ipcmu::bound_mu(input.body(), input.name());

  nlohmann::json measured = nlohmann::json::array();
  int worst = 0;
  bool violated = false;
  if (config.measure) {
    for (const DownsetAlgebra& algebra : ipcmu::algebras_up_to(config.max_poset_size)) {
      const int steps = ipcmu::measure_closure_ordinal(input.body(), input.name(), algebra);
      worst = std::max(worst, steps);
      violated = violated || steps > bound.value;
      if (config.json) {
        measured.push_back({{"poset", algebra.poset().describe()},
                            {"points", algebra.poset().size()},
                            {"downsets", algebra.size()},
                            {"steps", steps}});
      }
    }
  }

  if (config.json) {
    nlohmann::json out = {{"bound", bound.value}, {"derivation", derivation_json(bound)}};
    if (config.measure) {
      out["measured"] = std::move(measured);
      out["max_measured"] = worst;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "bound: " << bound.value << "\n" << bound.render();
    if (config.measure) {
      for (const DownsetAlgebra& algebra : ipcmu::algebras_up_to(config.max_poset_size)) {
        const int steps = ipcmu::measure_closure_ordinal(input.body(), input.name(), algebra);
        std::cout << "measured " << steps << " on the " << algebra.poset().describe() << " ("
                  << algebra.size() << " downsets)\n";
      }
      std::cout << "max measured: " << worst << (worst <= bound.value ? " <= " : " > ")
                << "bound " << bound.value << "\n";
    }
  }

  if (violated) {
    std::cerr << "measured closure ordinal exceeds the bound\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_iterate(const RunConfig& config) {
  const Formula input = single_input(config);
  require_well_formed(input, "iterate");
  if (input.kind() != Kind::Mu) {
    throw ShapeError("iterate: input must be a least fixed point mu x. phi");
  }

  // Stabilized value shown for the all-F assignment of the other variables;
  // the step count is the worst case over every assignment.
  ipcmu::Valuation bottoms;
  for (const std::string& name : ipcmu::free_vars(input.body())) {
    if (name != input.name()) bottoms.emplace_back(name, 0);
  }

  nlohmann::json rows = nlohmann::json::array();
  int max_steps = 0;
  for (const DownsetAlgebra& algebra : ipcmu::algebras_up_to(config.max_poset_size)) {
    ipcmu::Valuation others;
    for (const auto& [name, ignored] : bottoms) others.emplace_back(name, algebra.bottom());
    const int steps = ipcmu::measure_closure_ordinal(input.body(), input.name(), algebra);
    const ipcmu::FixpointTrace at_bottom =
        ipcmu::lfp_trace(input.body(), input.name(), algebra, others);
    max_steps = std::max(max_steps, steps);
    if (config.json) {
      rows.push_back({{"poset", algebra.poset().describe()},
                      {"points", algebra.poset().size()},
                      {"downsets", algebra.size()},
                      {"steps", steps},
                      {"value_all_bottom", algebra.label(at_bottom.value)}});
    } else {
      std::cout << "steps " << steps << " on the " << algebra.poset().describe() << " ("
                << algebra.size() << " downsets); value at the all-F valuation: "
                << algebra.label(at_bottom.value) << "\n";
    }
  }

  if (config.json) {
    const nlohmann::json out = {{"algebras", std::move(rows)}, {"max_steps", max_steps}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "max steps: " << max_steps << "\n";
  }
  return kExitOk;
}

int cmd_selftest(const RunConfig& config) {
  ipcmu::SelftestConfig suite_config;
  suite_config.seed = config.seed;
  suite_config.corpus = config.corpus;
  suite_config.max_poset_size = config.max_poset_size;
  suite_config.prover_budget = config.budget;

  const std::vector<ipcmu::SuiteResult> results = ipcmu::run_all_suites(suite_config);
  int failures = 0;
  std::ostringstream timing;
  nlohmann::json rows = nlohmann::json::array();
  for (const ipcmu::SuiteResult& result : results) {
    if (!result.passed) ++failures;
    if (config.json) {
      rows.push_back({{"name", result.name},
                      {"passed", result.passed},
                      {"checks", result.checks},
                      {"detail", result.detail}});
    } else {
      std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << " - "
                << result.detail << " (" << result.checks << " checks)\n";
    }
    timing << (timing.tellp() == 0 ? "timing: " : "; ") << result.name << " "
           << static_cast<long long>(result.seconds * 10 + 0.5) / 10.0 << "s";
  }
  if (config.json) {
    const nlohmann::json out = {{"suites", std::move(rows)}, {"failures", failures}};
    std::cout << out.dump(2) << "\n";
  } else if (failures == 0) {
    std::cout << "all " << results.size() << " suites passed\n";
  } else {
    std::cout << failures << " of " << results.size() << " suites failed\n";
  }
  std::cerr << timing.str() << "\n";
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point elimination for the intuitionistic propositional mu-calculus"};
  app.require_subcommand(1);
  RunConfig config;

  const auto add_input = [&config](CLI::App* cmd, const char* label, int count) {
    cmd->add_option(label, config.inputs,
                    "formula text (grammar: ->, \\/, /\\, ~, T, F, mu x. ..., nu x. ...) or a "
                    "JSON tree")
        ->expected(0, count);
    cmd->add_option("--file", config.file,
                    "read formulas from a file: one per non-empty line, or a JSON tree/array");
  };
  const auto add_json = [&config](CLI::App* cmd) {
    cmd->add_flag("--json", config.json, "emit JSON instead of text");
  };
  const auto add_cap = [&config](CLI::App* cmd) {
    cmd->add_option("--max-poset-size", config.max_poset_size,
                    "check on down-set algebras of every poset up to this many points")
        ->check(CLI::Range(1, 5))
        ->capture_default_str();
  };
  const auto add_budget = [&config](CLI::App* cmd) {
    cmd->add_option("--budget", config.budget, "proof search node budget")->capture_default_str();
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a formula and print it back");
  add_input(parse_cmd, "formula", 1);
  add_json(parse_cmd);

  CLI::App* eliminate_cmd =
      app.add_subcommand("eliminate", "rewrite a formula into a fixed-point-free equivalent");
  add_input(eliminate_cmd, "formula", 1);
  add_json(eliminate_cmd);
  add_cap(eliminate_cmd);
  add_budget(eliminate_cmd);
  eliminate_cmd->add_flag("--verify", config.verify,
                          "re-check the result against the algebras and the prover");

  CLI::App* equiv_cmd = app.add_subcommand("equiv", "decide whether two formulas are equivalent");
  add_input(equiv_cmd, "formulas", 2);
  add_json(equiv_cmd);
  add_cap(equiv_cmd);
  add_budget(equiv_cmd);

  CLI::App* bound_cmd =
      app.add_subcommand("bound", "closure-ordinal upper bound for a least fixed point");
  add_input(bound_cmd, "formula", 1);
  add_json(bound_cmd);
  add_cap(bound_cmd);
  bound_cmd->add_flag("--measure", config.measure,
                      "also measure closure ordinals on every algebra and check them against "
                      "the bound");

  CLI::App* iterate_cmd =
      app.add_subcommand("iterate", "iterate a least fixed point to stabilization per algebra");
  add_input(iterate_cmd, "formula", 1);
  add_json(iterate_cmd);
  add_cap(iterate_cmd);

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the verification suites");
  add_json(selftest_cmd);
  add_cap(selftest_cmd);
  add_budget(selftest_cmd);
  selftest_cmd->add_option("--seed", config.seed, "random corpus seed")->capture_default_str();
  selftest_cmd->add_option("--corpus", config.corpus, "random formulas per corpus-driven suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(config);
    if (eliminate_cmd->parsed()) return cmd_eliminate(config);
    if (equiv_cmd->parsed()) return cmd_equiv(config);
    if (bound_cmd->parsed()) return cmd_bound(config);
    if (iterate_cmd->parsed()) return cmd_iterate(config);
    if (selftest_cmd->parsed()) return cmd_selftest(config);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitParseError;
  } catch (const ipcmu::BudgetExceeded& e) {
    std::cerr << "undetermined: " << e.what() << "\n";
    return kExitUndetermined;
  } catch (const ShapeError& e) {
    std::cerr << e.what() << "\n";
    return kExitIllFormed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIllFormed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kExitOk;
}
