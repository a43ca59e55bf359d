// gkz: command-line front end. Every invocation prints one JSON report.

#include "gkz/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using gkz::cli::json;

namespace {

struct Flags {
  std::string input, output = "json";
  unsigned long seed = 0;
  std::vector<long> gamma, alpha, beta, c, a, v, degree;
  long order = 0, box = 0, bound = 0, oracle_samples = 0;
  std::string fixture, semantics;
  bool balanced7 = false;
};

void emit(const gkz::cli::AnalysisReport &rep, const std::string &output) {
  auto j = rep.to_json();
  std::cout << (output == "pretty" ? j.dump(2) : j.dump()) << "\n";
}

gkz::cli::AnalysisReport input_error(const std::string &command, const std::string &msg, unsigned long seed) {
  gkz::cli::AnalysisReport rep;
  rep.command = command;
  rep.seed = seed;
  rep.exit_code = 2;
  rep.diagnostics.push_back({{"kind", "input"}, {"message", msg}});
  return rep;
}

bool read_input(const std::string &name, std::string &text) {
  if (name == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(name, std::ios::binary);
  if (!in)
    return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gale duals, rational A-hypergeometric functions and residue series"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--output", f.output, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
  app.add_option("--seed", f.seed, "seed for sampled checks");

  std::map<std::string, CLI::App *> subs;
  const std::map<std::string, std::string> help{
      {"validate", "check nonconfluence, pyramid-freeness and distinct duals; report cocircuits"},
      {"gale", "Gale dual of matrix_A (or A from an integral gale_B)"},
      {"classify", "classify a planar configuration of 4 to 7 vectors"},
      {"cayley", "detect an essential Cayley structure in matrix_A"},
      {"residue", "truncated residue series for a trinomial system"},
      {"annihilate", "check that the hypergeometric generators kill a function"},
      {"stability", "look for a derivative that kills a function"},
      {"arrangement", "minimal cells of the line arrangement at a degree"},
      {"ej-test", "Euler-Jacobi position test for (c, a)"},
      {"fixtures", "list the built-in closed-form functions"},
      {"run", "run a request file whose \"command\" field selects the subcommand"}};
  for (const auto &[name, text] : help) {
    auto *s = app.add_subcommand(name, text);
    s->add_option("--input,-i", f.input, "request JSON file, - for stdin");
    s->add_option("--output", f.output, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
    s->add_option("--seed", f.seed, "seed for sampled checks");
    subs[name] = s;
  }
  auto triple = [&](CLI::App *s) {
    s->add_option("--gamma", f.gamma, "g1,g2")->delimiter(',')->expected(2);
    s->add_option("--alpha", f.alpha, "a1,a2")->delimiter(',')->expected(2);
    s->add_option("--beta", f.beta, "b1,b2")->delimiter(',')->expected(2);
  };
  for (auto n : {"residue", "ej-test", "annihilate", "arrangement"})
    triple(subs[n]);
  for (auto n : {"residue", "ej-test"}) {
    subs[n]->add_option("--c", f.c, "c1,c2,c3")->delimiter(',')->expected(3);
    subs[n]->add_option("--a", f.a, "a1,a2")->delimiter(',')->expected(2);
  }
  subs["residue"]->add_option("--order", f.order, "truncation order (default 6)");
  subs["residue"]->add_option("--oracle-samples", f.oracle_samples, "compare with the numeric residue oracle");
  subs["arrangement"]->add_option("--v", f.v, "v1,...,vn")->delimiter(',');
  subs["arrangement"]->add_option("--box", f.box, "search box half-width (default 12)");
  subs["arrangement"]->add_option("--semantics", f.semantics, "chambers or lattice")
      ->check(CLI::IsMember({"chambers", "lattice"}));
  for (auto n : {"arrangement", "annihilate"})
    subs[n]->add_option("--degree", f.degree, "d1,...,dd")->delimiter(',');
  for (auto n : {"annihilate", "stability"}) {
    subs[n]->add_option("--fixture", f.fixture, "R12, R1, R2, R3 or R_112_11");
    subs[n]->add_option("--bound", f.bound, "search bound");
  }
  subs["classify"]->add_flag("--balanced7", f.balanced7, "use the balanced seven-vector classification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    emit(input_error("", std::string("command line: ") + e.what(), f.seed), f.output);
    return 2;
  }

  std::string command;
  for (const auto &[name, s] : subs)
    if (s->parsed())
      command = name;
  CLI::App *sub = subs[command];

  json doc = json::object();
  if (!f.input.empty()) {
    std::string text;
    if (!read_input(f.input, text)) {
      auto rep = input_error(command == "run" ? "" : command, "cannot read " + f.input, f.seed);
      emit(rep, f.output);
      return rep.exit_code;
    }
    try {
      doc = json::parse(text);
    } catch (const json::parse_error &e) {
      auto rep = input_error(command == "run" ? "" : command, "malformed JSON at byte " + std::to_string(e.byte),
                             f.seed);
      emit(rep, f.output);
      return rep.exit_code;
    }
  } else if (command == "run") {
    auto rep = input_error("", "run needs --input", f.seed);
    emit(rep, f.output);
    return rep.exit_code;
  }

  // command-line parameters override the request file
  if (doc.is_object()) {
    json params = doc.contains("params") ? doc["params"] : json::object();
    auto set = [&](const char *flag, const char *key, json value) {
      const auto *opt = sub->get_option_no_throw(flag);
      if (opt && opt->count() > 0 && params.is_object())
        params[key] = std::move(value);
    };
    set("--gamma", "gamma", f.gamma);
    set("--alpha", "alpha", f.alpha);
    set("--beta", "beta", f.beta);
    set("--c", "c", f.c);
    set("--a", "a", f.a);
    set("--v", "v", f.v);
    set("--degree", "degree", f.degree);
    set("--order", "order", f.order);
    set("--box", "box", f.box);
    set("--bound", "bound", f.bound);
    set("--oracle-samples", "oracle_samples", f.oracle_samples);
    set("--fixture", "fixture", f.fixture);
    set("--semantics", "semantics", f.semantics);
    if (f.balanced7)
      set("--balanced7", "balanced7", true);
    if (!params.empty() || doc.contains("params"))
      doc["params"] = params;
    if (sub->get_option("--seed")->count() > 0 || app.get_option("--seed")->count() > 0)
      doc["seed"] = f.seed;
  }

  auto rep = gkz::cli::run_document(doc, f.seed, command == "run" ? "" : command);
  emit(rep, f.output);
  return rep.exit_code;
}
