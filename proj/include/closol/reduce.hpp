#pragma once

#include <utility>
#include <vector>

#include "closol/closure.hpp"
#include "closol/digraph.hpp"
#include "closol/errors.hpp"

namespace closol {

// One consumer u of a removed vertex v, together with the closure of u's
// remaining sources, which recovers v.
struct UselessWitness {
  int consumer;
  VertexSet closure;
};

struct ReductionStep {
  int vertex;
  std::vector<UselessWitness> witnesses;
};

// Reduction outcome. `kept` and `removed` use the input labels; `reduced` is
// the induced subgraph on `kept`, relabeled ascending.
struct ReductionTrace {
  Digraph reduced;
  VertexSet kept;
  std::vector<int> removed;
  std::vector<ReductionStep> steps;
};

namespace detail {

// v can be dropped within `domain` when every remaining consumer of v
// recovers it from the closure of its other sources.
inline bool singleton_useless(const Digraph& d, int v, VertexSet domain,
                              std::vector<UselessWitness>* witnesses) {
  for (int u : d.out_neighbors(v) & domain) {
    VertexSet others = (d.in_neighbors(u) & domain) - VertexSet::single(v);
    VertexSet cl = d_closure(d, others, domain);
    if (!cl.contains(v)) return false;
    if (witnesses) witnesses->push_back({u, cl});
  }
  return true;
}

}  // namespace detail

inline bool is_singleton_useless(const Digraph& d, int v) {
  if (v < 0 || v >= d.order()) throw DomainError("vertex out of range");
  if (d.has_arc(v, v)) throw DomainError("vertex has a loop");
  return detail::singleton_useless(d, v, d.vertices(), nullptr);
}

// Repeatedly removes single useless vertices, scanning the vertices on no
// chordless cycle in ascending order and restarting after each removal,
// until a full scan removes nothing.
inline ReductionTrace remove_useless_part(const Digraph& d) {
  for (int v = 0; v < d.order(); ++v)
    if (d.has_arc(v, v)) throw DomainError("digraph must be loopless");
  if (!is_strongly_connected(d))
    throw DomainError("digraph must be strongly connected");
  VertexSet alive = d.vertices();
  std::vector<int> removed;
  std::vector<ReductionStep> steps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : chordless_free_vertices(d, alive)) {
      std::vector<UselessWitness> witnesses;
      if (!detail::singleton_useless(d, v, alive, &witnesses)) continue;
      alive -= VertexSet::single(v);
      removed.push_back(v);
      steps.push_back({v, std::move(witnesses)});
      changed = true;
      break;
    }
  }
  return {induced_subgraph(d, alive), alive, std::move(removed), std::move(steps)};
}

// Oracle: the union of every vertex set that is weak for the closure and
// induces an acyclic subgraph.
inline VertexSet brute_largest_useless(const Digraph& d) {
  if (d.order() > 10) throw DomainError("useless-part oracle limited to 10 vertices");
  ClosureOp cl = from_digraph(d);
  VertexSet total;
  for (auto s = subsets_of(d.vertices()); !s.done(); s.next()) {
    VertexSet sub = s.get();
    if (sub.empty() || sub == d.vertices()) continue;
    if (induces_acyclic(d, sub) && is_weak(cl, sub)) total |= sub;
  }
  return total;
}

}  // namespace closol
