// Command-line front end: parse an input file, run one analysis verb, and
// print a JSON result. Exit codes: 0 success, 1 domain error, 2 parse or
// usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "closol/closure.hpp"
#include "closol/coding.hpp"
#include "closol/digraph.hpp"
#include "closol/errors.hpp"
#include "closol/netcode.hpp"
#include "closol/partition.hpp"
#include "closol/reduce.hpp"
#include "closol/solvability_graph.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace closol;

enum class Kind { kDigraph, kClosure, kNetwork, kCoding };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::kDigraph: return "digraph";
    case Kind::kClosure: return "closure";
    case Kind::kNetwork: return "network";
    case Kind::kCoding: return "coding";
  }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Extension first, then the first token of the content.
Kind sniff(const std::string& path, const std::string& text) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    if (ext == "digraph") return Kind::kDigraph;
    if (ext == "closure") return Kind::kClosure;
    if (ext == "json") return Kind::kNetwork;
    if (ext == "coding") return Kind::kCoding;
  }
  std::istringstream is(text);
  std::string first;
  if (is >> first) {
    if (first == "digraph") return Kind::kDigraph;
    if (first == "closure") return Kind::kClosure;
    if (first == "coding") return Kind::kCoding;
    if (first[0] == '{') return Kind::kNetwork;
  }
  throw ParseError(path + ": unrecognized input format");
}

struct Input {
  Kind kind;
  std::optional<Digraph> digraph;
  std::optional<ClosureOp> closure;
  std::optional<NetworkInstance> network;
  std::optional<CodingFunction> coding;
};

Input load(const std::string& path) {
  std::string text = read_file(path);
  Input in{sniff(path, text), {}, {}, {}, {}};
  switch (in.kind) {
    case Kind::kDigraph: in.digraph = parse_digraph(text); break;
    case Kind::kClosure: in.closure = parse_closure(text); break;
    case Kind::kNetwork: in.network = parse_network(text); break;
    case Kind::kCoding: in.coding = parse_coding(text); break;
  }
  return in;
}

// A parsed closure table is only trusted after the axioms hold.
ClosureOp checked(ClosureOp cl) {
  AxiomReport report = verify_axioms(cl);
  if (!report.ok())
    throw DomainError("closure axioms violated: " +
                      report.violations.front().axiom);
  return cl;
}

Digraph as_digraph(const Input& in) {
  if (in.kind == Kind::kDigraph) return *in.digraph;
  if (in.kind == Kind::kNetwork) return to_guessing_digraph(*in.network);
  throw DomainError(std::string("expected a digraph or network, got a ") +
                    kind_name(in.kind));
}

ClosureOp as_closure(const Input& in, int jobs) {
  if (in.kind == Kind::kClosure) return checked(*in.closure);
  if (in.kind == Kind::kCoding)
    throw DomainError("expected a digraph, closure, or network, got a coding function");
  return from_digraph(as_digraph(in), jobs);
}

json set_to_json(VertexSet s) {
  json out = json::array();
  for (int v : s) out.push_back(v);
  return out;
}

json arcs_to_json(const Digraph& d) {
  json out = json::array();
  for (auto [u, v] : d.arcs()) out.push_back({u, v});
  return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// Writes text to --output when given and records it; otherwise inlines it.
void attach_text(json& doc, const std::string& text, const std::string& output) {
  if (output.empty()) {
    doc["text"] = text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw DomainError("cannot write " + output);
  out << text;
  doc["written"] = output;
}

std::string log_string(int q, long long alpha) {
  return "log_" + std::to_string(q) + "(" + std::to_string(alpha) + ")";
}

int run(int argc, char** argv) {
  CLI::App app{"closure solvability toolkit"};
  app.require_subcommand(1);
  std::string input, second, output, cert_path;
  int q = 2, jobs = 1;

  auto* closure_cmd = app.add_subcommand("closure", "tabulate the closure operator");
  auto* rank_cmd = app.add_subcommand("rank", "rank of the closure");
  auto* reduce_cmd = app.add_subcommand("reduce", "strip the useless part of a digraph");
  auto* guess_cmd = app.add_subcommand("guess", "independence number of the solvability graph");
  auto* solve_cmd = app.add_subcommand("solve", "decide solvability and emit a certificate");
  auto* convert_cmd = app.add_subcommand("convert", "rewrite the input one representation down");
  auto* axioms_cmd = app.add_subcommand("check-axioms", "verify the closure axioms");
  auto* product_cmd = app.add_subcommand("product-check", "compare union solvability graphs with products");
  auto* bounds_cmd = app.add_subcommand("bounds", "code-theoretic sandwich on the independence number");

  for (auto* cmd : {closure_cmd, rank_cmd, reduce_cmd, guess_cmd, solve_cmd,
                    convert_cmd, axioms_cmd, product_cmd, bounds_cmd}) {
    cmd->add_option("input", input, "input file")->required();
    cmd->add_option("--jobs", jobs, "worker threads");
  }
  product_cmd->add_option("input2", second, "second input file")->required();
  for (auto* cmd : {guess_cmd, solve_cmd, product_cmd, bounds_cmd})
    cmd->add_option("--q", q, "alphabet size")->required()->check(CLI::Range(2, 1 << 20));
  for (auto* cmd : {closure_cmd, reduce_cmd, convert_cmd})
    cmd->add_option("--output", output, "write the result text here");
  solve_cmd->add_option("--emit-certificate", cert_path,
                        "write the coding function here when solvable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"error", "usage"}, {"message", e.what()}});
    return 2;
  }

  if (app.got_subcommand(closure_cmd)) {
    ClosureOp cl = as_closure(load(input), jobs);
    json doc{{"verb", "closure"}, {"n", cl.ground_size()}, {"rank", cl.rank()}};
    attach_text(doc, to_text(cl), output);
    emit(doc);
  } else if (app.got_subcommand(rank_cmd)) {
    Input in = load(input);
    ClosureOp cl = as_closure(in, jobs);
    emit({{"verb", "rank"},
          {"kind", kind_name(in.kind)},
          {"n", cl.ground_size()},
          {"rank", cl.rank()}});
  } else if (app.got_subcommand(reduce_cmd)) {
    Input in = load(input);
    if (in.kind != Kind::kDigraph)
      throw DomainError("reduce needs a digraph input");
    ReductionTrace trace = remove_useless_part(*in.digraph);
    json doc{{"verb", "reduce"},
             {"n", in.digraph->order()},
             {"removed", trace.removed},
             {"kept", set_to_json(trace.kept)},
             {"reduced", {{"n", trace.reduced.order()},
                          {"arcs", arcs_to_json(trace.reduced)}}}};
    attach_text(doc, to_text(trace.reduced), output);
    emit(doc);
  } else if (app.got_subcommand(guess_cmd)) {
    Input in = load(input);
    ClosureOp cl = as_closure(in, jobs);
    GuessingNumber g = guessing_number(cl, q, jobs);
    emit({{"verb", "guess"},
          {"kind", kind_name(in.kind)},
          {"q", q},
          {"n", cl.ground_size()},
          {"rank", cl.rank()},
          {"alpha", g.alpha},
          {"guessing_number", log_string(q, g.alpha)},
          {"solvable", g.alpha == static_cast<long long>(power(q, cl.rank()))}});
  } else if (app.got_subcommand(solve_cmd)) {
    Input in = load(input);
    json doc{{"verb", "solve"}, {"kind", kind_name(in.kind)}, {"q", q}};
    std::optional<CodingFunction> certificate;
    if (in.kind == Kind::kNetwork) {
      NetworkDecision dec = solve_network(*in.network, q, true, jobs);
      doc["r"] = dec.r;
      doc["rank"] = dec.rank;
      doc["solvable"] = dec.solvable;
      doc["reason"] = dec.reason;
      doc["alpha"] = dec.alpha;
      doc["target"] = power(q, dec.r);
      certificate = std::move(dec.certificate);
    } else {
      ClosureOp cl = as_closure(in, jobs);
      SolveDecision dec = is_solvable(cl, q, true, jobs);
      doc["n"] = cl.ground_size();
      doc["rank"] = cl.rank();
      doc["solvable"] = dec.solvable;
      doc["reason"] = dec.solvable ? "solved" : "no coding function";
      doc["alpha"] = dec.alpha;
      doc["target"] = dec.target;
      certificate = std::move(dec.certificate);
    }
    if (certificate && !cert_path.empty()) {
      std::ofstream out(cert_path, std::ios::binary);
      if (!out) throw DomainError("cannot write " + cert_path);
      write_coding(out, *certificate);
      doc["certificate"] = cert_path;
    }
    emit(doc);
  } else if (app.got_subcommand(convert_cmd)) {
    Input in = load(input);
    json doc{{"verb", "convert"}, {"from", kind_name(in.kind)}};
    std::string text;
    switch (in.kind) {
      case Kind::kNetwork:
        doc["to"] = "digraph";
        text = to_text(to_guessing_digraph(*in.network));
        break;
      case Kind::kDigraph:
        doc["to"] = "closure";
        text = to_text(from_digraph(*in.digraph, jobs));
        break;
      case Kind::kClosure:
        doc["to"] = "closure";
        text = to_text(*in.closure);
        break;
      case Kind::kCoding:
        doc["to"] = "coding";
        text = to_text(*in.coding);
        break;
    }
    attach_text(doc, text, output);
    emit(doc);
  } else if (app.got_subcommand(axioms_cmd)) {
    Input in = load(input);
    if (in.kind == Kind::kCoding)
      throw DomainError("check-axioms needs a closure or digraph input");
    ClosureOp cl = in.kind == Kind::kClosure ? *in.closure
                                             : from_digraph(as_digraph(in), jobs);
    AxiomReport report = verify_axioms(cl);
    json violations = json::array();
    for (const AxiomViolation& v : report.violations)
      violations.push_back({{"axiom", v.axiom},
                            {"x", set_to_json(v.x)},
                            {"y", set_to_json(v.y)}});
    emit({{"verb", "check-axioms"},
          {"valid", report.ok()},
          {"n", cl.ground_size()},
          {"rank", cl.rank()},
          {"violations", violations}});
  } else if (app.got_subcommand(product_cmd)) {
    ClosureOp left = as_closure(load(input), jobs);
    ClosureOp right = as_closure(load(second), jobs);
    ProductCheck check = product_check(left, right, q, jobs);
    emit({{"verb", "product-check"},
          {"q", q},
          {"disjoint_ok", check.disjoint_ok},
          {"unidirectional_ok", check.unidirectional_ok},
          {"bidirectional_ok", check.bidirectional_ok},
          {"alpha_left", check.alpha_left},
          {"alpha_right", check.alpha_right},
          {"alpha_disjoint", check.alpha_disjoint},
          {"alpha_unidirectional", check.alpha_unidirectional},
          {"alpha_bidirectional", check.alpha_bidirectional}});
  } else if (app.got_subcommand(bounds_cmd)) {
    Input in = load(input);
    ClosureOp cl = as_closure(in, jobs);
    const int n = cl.ground_size();
    const int delta = min_degree(cl);
    const int girth = closure_girth(cl);
    GuessingNumber g = guessing_number(cl, q, jobs);
    emit({{"verb", "bounds"},
          {"q", q},
          {"n", n},
          {"rank", cl.rank()},
          {"min_degree", delta},
          {"closure_girth", girth},
          {"lower", max_code(n, n - delta + 1, q)},
          {"alpha", g.alpha},
          {"upper", max_code(n, girth, q)}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    emit({{"error", "parse"}, {"message", e.what()}});
    return 2;
  } catch (const DomainError& e) {
    emit({{"error", "domain"}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    emit({{"error", "internal"}, {"message", e.what()}});
    return 1;
  }
}
