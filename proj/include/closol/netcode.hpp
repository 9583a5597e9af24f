#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "closol/coding.hpp"
#include "closol/digraph.hpp"
#include "closol/errors.hpp"
#include "closol/solvability_graph.hpp"

namespace closol {

// Multiple-unicast network in circuit representation: node ids are grouped
// sources-first (0..r-1), sinks-second (r..2r-1, paired with the source of
// the same index), then intermediates (2r..2r+m-1). Every node emits one
// value computed from its in-arcs; sources emit their own message.
struct NetworkInstance {
  int r = 0;
  int m = 0;
  std::vector<std::pair<int, int>> arcs;

  int node_count() const { return 2 * r + m; }
  bool is_source(int id) const { return id < r; }
  bool is_sink(int id) const { return id >= r && id < 2 * r; }

  bool operator==(const NetworkInstance& other) const = default;
};

// Checks every structural rule; the rule name leads the error message.
inline void validate_network(const NetworkInstance& net) {
  if (net.r < 1) throw DomainError("source-count: need at least one source/sink pair");
  if (net.m < 0) throw DomainError("intermediate-count: negative");
  if (net.node_count() > VertexSet::kMaxVertices)
    throw DomainError("size: more than 24 nodes");
  Digraph d(net.node_count());
  for (auto [a, b] : net.arcs) {
    if (a < 0 || a >= net.node_count() || b < 0 || b >= net.node_count())
      throw DomainError("id-range: arc (" + std::to_string(a) + ", " +
                        std::to_string(b) + ") out of range");
    if (d.has_arc(a, b))
      throw DomainError("duplicate-arc: (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
    d.add_arc(a, b);
  }
  for (int id = 0; id < net.node_count(); ++id) {
    if (net.is_source(id) && !d.in_neighbors(id).empty())
      throw DomainError("source-in-degree: node " + std::to_string(id) +
                        " has incoming arcs");
    if (net.is_sink(id) && !d.out_neighbors(id).empty())
      throw DomainError("sink-out-degree: node " + std::to_string(id) +
                        " has outgoing arcs");
    if (id >= 2 * net.r && d.out_neighbors(id).empty())
      throw DomainError("intermediate-out-degree: node " + std::to_string(id) +
                        " feeds nothing");
  }
  if (!is_acyclic(d)) throw DomainError("acyclic: network contains a directed cycle");
}

inline NetworkInstance parse_network(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  NetworkInstance net;
  try {
    net.r = doc.at("r").get<int>();
    net.m = doc.at("m").get<int>();
    for (const auto& pair : doc.at("arcs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("network JSON: arcs must be [from, to] pairs");
      net.arcs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    if (doc.contains("labels")) {
      std::vector<int> sources = doc["labels"].at("sources").get<std::vector<int>>();
      std::vector<int> sinks = doc["labels"].at("sinks").get<std::vector<int>>();
      for (int i = 0; i < net.r; ++i) {
        if (i >= static_cast<int>(sources.size()) || sources[i] != i ||
            i >= static_cast<int>(sinks.size()) || sinks[i] != net.r + i)
          throw DomainError("label-grouping: sources must be 0..r-1 and sinks r..2r-1");
      }
      if (static_cast<int>(sources.size()) != net.r ||
          static_cast<int>(sinks.size()) != net.r)
        throw DomainError("label-grouping: label counts must equal r");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  validate_network(net);
  return net;
}

inline std::string to_json(const NetworkInstance& net) {
  std::ostringstream out;
  out << "{\n  \"r\": " << net.r << ",\n  \"m\": " << net.m << ",\n  \"arcs\": [";
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    if (i > 0) out << ", ";
    out << '[' << net.arcs[i].first << ", " << net.arcs[i].second << ']';
  }
  out << "],\n  \"labels\": {\"sources\": [";
  for (int i = 0; i < net.r; ++i) out << (i > 0 ? ", " : "") << i;
  out << "], \"sinks\": [";
  for (int i = 0; i < net.r; ++i) out << (i > 0 ? ", " : "") << net.r + i;
  out << "]}\n}\n";
  return out.str();
}

// Merges each sink onto its paired source: the merged vertex keeps the
// sink's in-arcs and the source's out-arcs. Intermediates shift down by r.
inline Digraph to_guessing_digraph(const NetworkInstance& net) {
  validate_network(net);
  auto map = [&net](int id) { return id < net.r ? id : id - net.r; };
  Digraph d(net.r + net.m);
  for (auto [a, b] : net.arcs) d.add_arc(map(a), map(b));
  return d;
}

// Network solvability: the merged closure must have rank r and admit a
// coding function over the alphabet.
struct NetworkDecision {
  bool solvable;
  std::string reason;  // "rank deficit", "no coding function", or "solved"
  int rank;
  int r;
  long long alpha;
  std::optional<CodingFunction> certificate;
};

inline NetworkDecision solve_network(const NetworkInstance& net, int q,
                                     bool want_certificate = true, int jobs = 1) {
  Digraph d = to_guessing_digraph(net);
  ClosureOp cl = from_digraph(d, jobs);
  if (cl.rank() > net.r)
    throw std::logic_error("merged digraph rank exceeds the source count");
  if (cl.rank() < net.r)
    return {false, "rank deficit", cl.rank(), net.r, 0, {}};
  SolveDecision sd = is_solvable(cl, q, want_certificate, jobs);
  return {sd.solvable, sd.solvable ? "solved" : "no coding function",
          cl.rank(), net.r, sd.alpha, std::move(sd.certificate)};
}

// Simulates the network over every message: each non-source node's output
// must be a function of its inputs, and every sink's inputs must determine
// its paired source's symbol. The source symbols taken jointly must cover
// all q^r messages. With `strict`, source i must emit digit i of the
// message index verbatim.
inline bool verify_network_solution(const NetworkInstance& net,
                                    const CodingFunction& f, int q,
                                    bool strict = false) {
  validate_network(net);
  if (f.order() != net.r + net.m || f.alphabet() != q || f.rank() != net.r)
    return false;
  const std::uint64_t base = power(q, net.r);
  // Joint source tuples must be pairwise distinct.
  {
    std::vector<std::vector<int>> seen;
    for (std::uint64_t e = 0; e < base; ++e) {
      std::vector<int> tuple(net.r);
      for (int i = 0; i < net.r; ++i) tuple[i] = f.symbol(i, static_cast<int>(e));
      seen.push_back(std::move(tuple));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  if (strict) {
    for (std::uint64_t e = 0; e < base; ++e)
      for (int i = 0; i < net.r; ++i)
        if (f.symbol(i, static_cast<int>(e)) != word_digit(e, i, q)) return false;
  }
  // Value emitted by each network node, indexed by message. Sinks emit
  // nothing; their requirement is decoding the paired source.
  auto merged = [&net](int id) { return id < net.r ? id : id - net.r; };
  std::vector<VertexSet> inputs(net.node_count());
  for (auto [a, b] : net.arcs) inputs[b] |= VertexSet::single(a);
  for (int node = net.r; node < net.node_count(); ++node) {
    std::map<std::vector<int>, int> table;
    for (std::uint64_t e = 0; e < base; ++e) {
      std::vector<int> tuple;
      for (int a : inputs[node]) tuple.push_back(f.symbol(merged(a), static_cast<int>(e)));
      int out = f.symbol(merged(node), static_cast<int>(e));
      auto [it, inserted] = table.emplace(std::move(tuple), out);
      if (!inserted && it->second != out) return false;
    }
  }
  return true;
}

// Guessing protocol: one local function per vertex, tabulated over the
// vertex's in-neighbor tuples (ascending neighbor order, low radix first).
struct Protocol {
  std::vector<std::vector<int>> tables;
};

inline long long fixed_point_count(const Digraph& d, const Protocol& p, int q) {
  const int n = d.order();
  if (static_cast<int>(p.tables.size()) != n)
    throw DomainError("protocol table count differs from the digraph order");
  const std::uint64_t space = power(q, n);
  long long count = 0;
  for (std::uint64_t x = 0; x < space; ++x) {
    bool fixed = true;
    for (int v = 0; v < n && fixed; ++v) {
      std::uint64_t index = 0, radix = 1;
      for (int u : d.in_neighbors(v)) {
        index += static_cast<std::uint64_t>(word_digit(x, u, q)) * radix;
        radix *= static_cast<std::uint64_t>(q);
      }
      fixed = p.tables[v][index] == word_digit(x, v, q);
    }
    if (fixed) ++count;
  }
  return count;
}

// Exact maximum number of fixed points over all protocols, by enumerating
// every per-vertex function table.
inline long long protocol_guessing_oracle(const Digraph& d, int q) {
  const int n = d.order();
  if (n < 1) throw DomainError("digraph is empty");
  const std::uint64_t space = power(q, n);
  double cost = static_cast<double>(space) * n;
  std::vector<std::uint64_t> table_sizes(n);
  for (int v = 0; v < n; ++v) {
    table_sizes[v] = power(q, d.in_neighbors(v).count());
    double choices = std::pow(q, static_cast<double>(table_sizes[v]));
    cost *= choices;
    if (cost > 1e8) throw DomainError("protocol enumeration too large");
  }
  Protocol p;
  for (int v = 0; v < n; ++v) p.tables.emplace_back(table_sizes[v], 0);
  long long best = 0;
  for (;;) {
    best = std::max(best, fixed_point_count(d, p, q));
    // Odometer over all table entries.
    int v = 0;
    std::size_t slot = 0;
    for (;;) {
      if (v == n) return best;
      if (slot == p.tables[v].size()) {
        ++v;
        slot = 0;
        continue;
      }
      if (++p.tables[v][slot] < q) break;
      p.tables[v][slot] = 0;
      ++slot;
    }
  }
}

}  // namespace closol
