// starchart: command-line front end for 1-free star expressions and charts.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "starchart/bisim.hpp"
#include "starchart/certify.hpp"
#include "starchart/dot.hpp"
#include "starchart/error.hpp"
#include "starchart/generators.hpp"
#include "starchart/json_io.hpp"
#include "starchart/layering.hpp"
#include "starchart/rerouting.hpp"
#include "starchart/semantics.hpp"
#include "starchart/solution.hpp"

using namespace starchart;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;  // inequivalent / no witness / check failed
constexpr int kInputError = 2;
constexpr int kInternal = 3;

struct Globals {
  std::string alphabet;
  std::uint64_t seed = 1;
  bool dot = false;
};

std::optional<Alphabet> declared(const Globals& g) {
  if (g.alphabet.empty()) return std::nullopt;
  return Alphabet::from_list(g.alphabet);
}

Expr read_expr(const Globals& g, const std::string& text) {
  auto a = declared(g);
  return a ? parse(text, *a) : parse(text);
}

ExpressionChart expr_chart(const Globals& g, const Expr& e) {
  auto a = declared(g);
  return a ? chart_of(e, *a) : chart_of(e);
}

bool has_tags(const Json& j) {
  if (!j.contains("transitions") || !j.at("transitions").is_array()) return false;
  for (const auto& t : j.at("transitions"))
    if (t.contains("tag")) return true;
  return false;
}

// A source is a chart/witness JSON file, or else an expression whose chart
// comes with its syntactic witness.
struct Source {
  Prechart chart;
  std::optional<LabelledPrechart> witness;
};

Source load(const Globals& g, const std::string& arg) {
  bool looks_like_path = arg.find('/') != std::string::npos || arg.ends_with(".json");
  if (arg == "-" || looks_like_path || std::filesystem::is_regular_file(arg)) {
    auto j = read_json_file(arg);
    Source s{chart_from_json(j), std::nullopt};
    if (has_tags(j)) s.witness = witness_from_json(j, s.chart);
    return s;
  }
  auto ec = expr_chart(g, read_expr(g, arg));
  auto w = syntactic_witness(ec);
  return {ec.chart, w};
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void emit_chart(const Globals& g, const Prechart& x) {
  if (g.dot) std::cout << to_dot(x);
  else emit(chart_to_json(x));
}

void emit_witness(const Globals& g, const LabelledPrechart& l) {
  if (g.dot) std::cout << to_dot(l);
  else emit(witness_to_json(l));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starchart: charts, bisimilarity and layering witnesses for 1-free star expressions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--alphabet", g.alphabet, "Declared alphabet, comma separated (default: atoms of the input)");
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_flag("--dot", g.dot, "Emit Graphviz DOT instead of JSON where a chart is printed");

  std::string expr_text, f_text, file, witness_file;
  bool want_witness = false, simplified = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse an expression and print it with its measures");
  parse_cmd->add_option("expr", expr_text)->required();

  auto* chart_cmd = app.add_subcommand("chart", "Print the chart generated by an expression");
  chart_cmd->add_option("expr", expr_text)->required();
  chart_cmd->add_flag("--witness", want_witness, "Include the syntactic layering witness tags");

  auto* bisim_cmd = app.add_subcommand("bisim", "Decide bisimilarity of two expressions");
  bisim_cmd->add_option("e", expr_text)->required();
  bisim_cmd->add_option("f", f_text)->required();
  bisim_cmd->add_flag("--witness", want_witness, "Print the bisimulation or a distinguishing clause");

  auto* witness_cmd = app.add_subcommand("witness", "Verify, infer or derive a layering witness");
  witness_cmd->add_option("source", file, "Chart/witness JSON file or expression")->required();
  bool verify = false, infer = false, syntactic = false, llee = false;
  std::size_t count_limit = 0;
  auto* mode = witness_cmd->add_option_group("mode");
  mode->add_flag("--verify", verify, "Check the tags given in the file");
  mode->add_flag("--infer", infer, "Search for a witness of the chart");
  mode->add_flag("--syntactic", syntactic, "Derive the witness of an expression chart");
  mode->add_option("--count", count_limit, "Count witnesses by exhaustive search, up to N");
  mode->require_option(1);
  witness_cmd->add_flag("--llee", llee, "Print the weighted form");

  auto* solve_cmd = app.add_subcommand("solve", "Canonical solution of a well-layered chart");
  solve_cmd->add_option("source", file, "Chart/witness JSON file or expression")->required();
  solve_cmd->add_option("--witness", witness_file, "Witness JSON for the chart");
  solve_cmd->add_flag("--simplify", simplified, "Apply e + 0 -> e and 0e -> 0 to the output");

  auto* reroute_cmd = app.add_subcommand("reroute", "Connect states through to others");
  reroute_cmd->add_option("source", file, "Chart JSON file or expression")->required();
  std::vector<std::string> merges;
  reroute_cmd->add_option("--merge", merges, "x1:x2 removes x1 and redirects its incoming transitions to x2")
      ->required();

  auto* collapse_cmd = app.add_subcommand("collapse", "Witness-preserving bisimulation collapse");
  collapse_cmd->add_option("source", file, "Witness JSON file or expression")->required();
  collapse_cmd->add_option("--witness", witness_file, "Witness JSON for the chart");

  auto* certify_cmd = app.add_subcommand("certify", "Certify equivalence or inequivalence of two expressions");
  certify_cmd->add_option("e", expr_text);
  certify_cmd->add_option("f", f_text);
  std::string recheck_file;
  certify_cmd->add_option("--recheck", recheck_file, "Re-run the checks of a certificate JSON file");

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a chart, witness or expression");
  dot_cmd->add_option("source", file)->required();

  auto* random_cmd = app.add_subcommand("random", "Print seeded random expressions");
  std::size_t count = 10, depth = 4;
  random_cmd->add_option("--count", count);
  random_cmd->add_option("--depth", depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*parse_cmd) {
      auto e = read_expr(g, expr_text);
      emit({{"expr", render(e)}, {"nodes", e.node_count()}, {"star_height", star_height(e)},
            {"size_bound", size_bound(e)}});
      return kOk;
    }
    if (*chart_cmd) {
      auto ec = expr_chart(g, read_expr(g, expr_text));
      if (want_witness) emit_witness(g, syntactic_witness(ec));
      else emit_chart(g, ec.chart);
      return kOk;
    }
    if (*bisim_cmd) {
      auto e = read_expr(g, expr_text), f = read_expr(g, f_text);
      auto alpha = declared(g).value_or(alphabet_of({e, f}));
      auto both = chart_of_all({e, f}, alpha);
      auto r = bisimilarity(both.chart);
      StateId se = *both.find(e), sf = *both.find(f);
      bool same = r.related(se, sf);
      std::cout << (same ? "bisimilar" : "not-bisimilar") << "\n";
      if (want_witness) {
        if (same) emit({{"states", both.chart.names()}, {"bisimilarity", partition_to_json(both.chart, r)}});
        else emit(violation_to_json(both.chart, both.chart, *distinguish(both.chart, r, se, sf)));
      }
      return same ? kOk : kNegative;
    }
    if (*witness_cmd) {
      auto src = load(g, file);
      if (verify) {
        if (!src.witness) throw InputError("no tags to verify");
        auto report = verify_witness(*src.witness);
        if (report.ok) {
          std::cout << "valid layering witness\n";
          return kOk;
        }
        Json j{{"valid", false}, {"clause", clause_name(report.clause)}, {"detail", report.detail}};
        Json states = Json::array();
        for (StateId s : report.states) states.push_back(src.chart.name(s));
        j["states"] = std::move(states);
        emit(j);
        return kNegative;
      }
      if (count_limit > 0) {
        auto all = enumerate_witnesses(src.chart, count_limit);
        std::cout << all.size() << "\n";
        return all.empty() ? kNegative : kOk;
      }
      std::optional<LabelledPrechart> w;
      if (syntactic) {
        if (std::filesystem::is_regular_file(file)) throw InputError("--syntactic takes an expression");
        w = src.witness;
      } else {
        w = infer_witness(src.chart);
      }
      if (!w) {
        std::cout << "no layering witness\n";
        return kNegative;
      }
      if (llee) emit(weighted_to_json(to_llee(*w)));
      else emit_witness(g, *w);
      return kOk;
    }
    if (*solve_cmd) {
      auto src = load(g, file);
      if (!witness_file.empty()) src.witness = witness_from_json(read_json_file(witness_file), src.chart);
      if (!src.witness) src.witness = infer_witness(src.chart);
      if (!src.witness) {
        std::cerr << "no layering witness\n";
        return kNegative;
      }
      if (auto report = verify_witness(*src.witness); !report.ok) {
        std::cerr << "invalid layering witness: " << clause_name(report.clause) << "\n";
        return kNegative;
      }
      auto sol = canonical_solution(*src.witness);
      emit(solution_to_json(sol, simplified));
      return verify_solution(sol).ok ? kOk : kInternal;
    }
    if (*reroute_cmd) {
      auto src = load(g, file);
      std::vector<std::pair<StateId, StateId>> pairs;
      for (const auto& m : merges) {
        auto colon = m.find(':');
        if (colon == std::string::npos) throw InputError("--merge expects x1:x2, got " + m);
        pairs.emplace_back(src.chart.index(m.substr(0, colon)), src.chart.index(m.substr(colon + 1)));
      }
      if (pairs.size() == 1) emit_chart(g, connect_through(src.chart, pairs[0].first, pairs[0].second).chart);
      else emit_chart(g, rerouting(src.chart, Splitting::merging(src.chart.size(), pairs)));
      return kOk;
    }
    if (*collapse_cmd) {
      auto src = load(g, file);
      if (!witness_file.empty()) src.witness = witness_from_json(read_json_file(witness_file), src.chart);
      if (!src.witness) src.witness = infer_witness(src.chart);
      if (!src.witness) {
        std::cerr << "no layering witness\n";
        return kNegative;
      }
      auto c = collapse(*src.witness);
      if (g.dot) std::cout << to_dot(c.result);
      else emit(collapse_to_json(src.chart, c));
      return kOk;
    }
    if (*certify_cmd) {
      if (!recheck_file.empty()) {
        auto cert = certificate_from_json(read_json_file(recheck_file));
        auto checks = recheck(cert);
        bool ok = true;
        for (const auto& c : checks) {
          std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                    << "\n";
          ok = ok && c.passed;
        }
        if (!ok) return kNegative;
        return cert.verdict == Verdict::Equivalent ? kOk : kNegative;
      }
      if (expr_text.empty() || f_text.empty()) throw InputError("certify needs two expressions or --recheck");
      auto cert = certify(read_expr(g, expr_text), read_expr(g, f_text));
      emit(certificate_to_json(cert));
      return cert.verdict == Verdict::Equivalent ? kOk : kNegative;
    }
    if (*dot_cmd) {
      auto src = load(g, file);
      std::cout << (src.witness ? to_dot(*src.witness) : to_dot(src.chart));
      return kOk;
    }
    if (*random_cmd) {
      Rng rng(g.seed);
      auto alpha = declared(g).value_or(Alphabet::from_list("a,b,c"));
      for (std::size_t i = 0; i < count; ++i) std::cout << render(random_expr(rng, alpha, depth)) << "\n";
      return kOk;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
