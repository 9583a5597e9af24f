#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "closol/errors.hpp"
#include "closol/vertex_set.hpp"

namespace closol {

// Finite digraph on vertices {0, ..., n-1}, n <= 24. Loops allowed; parallel
// arcs collapse. Stored as in/out neighborhood bitmasks.
class Digraph {
 public:
  explicit Digraph(int n, const std::vector<std::pair<int, int>>& arc_list = {})
      : n_(n), in_(n), out_(n) {
    if (n < 0 || n > VertexSet::kMaxVertices)
      throw DomainError("digraph order must be between 0 and 24, got " + std::to_string(n));
    for (auto [u, v] : arc_list) add_arc(u, v);
  }

  void add_arc(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw DomainError("arc (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") out of range for order " + std::to_string(n_));
    out_[u] |= VertexSet::single(v);
    in_[v] |= VertexSet::single(u);
  }

  int order() const { return n_; }
  VertexSet vertices() const { return VertexSet::full(n_); }
  VertexSet in_neighbors(int v) const { return in_[v]; }
  VertexSet out_neighbors(int v) const { return out_[v]; }
  bool has_arc(int u, int v) const { return out_[u].contains(v); }

  int arc_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += out_[v].count();
    return total;
  }

  // Arcs in lexicographic order.
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(arc_count());
    for (int u = 0; u < n_; ++u)
      for (int v : out_[u]) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  int n_;
  std::vector<VertexSet> in_, out_;
};

// One closure step: X together with every vertex whose whole in-neighborhood
// lies in X. `domain` restricts the graph to an induced subset without
// relabeling; vertices outside it are ignored entirely.
inline VertexSet c_step(const Digraph& d, VertexSet x, VertexSet domain) {
  VertexSet out = x & domain;
  for (int v : domain - x)
    if ((d.in_neighbors(v) & domain).subset_of(x)) out |= VertexSet::single(v);
  return out;
}

inline VertexSet c_step(const Digraph& d, VertexSet x) {
  return c_step(d, x, d.vertices());
}

// Least fixpoint of c_step above X, reached within |domain| iterations.
inline VertexSet d_closure(const Digraph& d, VertexSet x, VertexSet domain) {
  VertexSet cur = x & domain;
  for (;;) {
    VertexSet next = c_step(d, cur, domain);
    if (next == cur) return cur;
    cur = next;
  }
}

inline VertexSet d_closure(const Digraph& d, VertexSet x) {
  return d_closure(d, x, d.vertices());
}

// Whether the subgraph induced by `sub` is acyclic (a loop is a 1-cycle,
// a bidirectional edge a 2-cycle). Peels vertices with no in-neighbors left.
inline bool induces_acyclic(const Digraph& d, VertexSet sub) {
  VertexSet cur = sub;
  for (;;) {
    VertexSet removable;
    for (int v : cur)
      if ((d.in_neighbors(v) & cur).empty()) removable |= VertexSet::single(v);
    if (removable.empty()) return cur.empty();
    cur -= removable;
  }
}

inline bool is_acyclic(const Digraph& d) { return induces_acyclic(d, d.vertices()); }

// Vertices reachable from `start` (inclusive) inside `domain`.
inline VertexSet reach_forward(const Digraph& d, int start, VertexSet domain) {
  VertexSet seen = VertexSet::single(start) & domain;
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    for (int v : frontier) next |= d.out_neighbors(v);
    next = (next & domain) - seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline VertexSet reach_backward(const Digraph& d, int start, VertexSet domain) {
  VertexSet seen = VertexSet::single(start) & domain;
  VertexSet frontier = seen;
  while (!frontier.empty()) {
    VertexSet next;
    for (int v : frontier) next |= d.in_neighbors(v);
    next = (next & domain) - seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

// Strongly connected components of the subgraph induced by `domain`,
// ordered by smallest member.
inline std::vector<VertexSet> strong_components(const Digraph& d, VertexSet domain) {
  std::vector<VertexSet> comps;
  VertexSet left = domain;
  while (!left.empty()) {
    int v = left.lowest();
    VertexSet comp = reach_forward(d, v, left) & reach_backward(d, v, left);
    comps.push_back(comp);
    left -= comp;
  }
  return comps;
}

inline std::vector<VertexSet> strong_components(const Digraph& d) {
  return strong_components(d, d.vertices());
}

inline bool is_strongly_connected(const Digraph& d) {
  if (d.order() == 0) return true;
  return strong_components(d).size() == 1;
}

namespace detail {

// Exact max induced acyclic subset within one strongly connected component.
// Branch and bound: keep a growing acyclic set, candidates in index order,
// include-branch first, prune on kept + remaining <= best.
inline void mias_expand(const Digraph& d, VertexSet kept, VertexSet cand,
                        int& best) {
  if (kept.count() + cand.count() <= best) return;
  if (cand.empty()) {
    best = std::max(best, kept.count());
    return;
  }
  int v = cand.lowest();
  VertexSet rest = cand.without(v);
  if (induces_acyclic(d, kept.with(v))) mias_expand(d, kept.with(v), rest, best);
  mias_expand(d, kept, rest, best);
}

}  // namespace detail

// Size of a maximum induced acyclic subgraph. Decomposes over strongly
// connected components first: arcs between components never close a cycle.
inline int mias(const Digraph& d, VertexSet domain) {
  int total = 0;
  for (VertexSet comp : strong_components(d, domain)) {
    if (comp.count() == 1) {
      int v = comp.lowest();
      total += d.has_arc(v, v) ? 0 : 1;
      continue;
    }
    int best = 0;
    detail::mias_expand(d, VertexSet(), comp, best);
    total += best;
  }
  return total;
}

inline int mias(const Digraph& d) { return mias(d, d.vertices()); }

// Rank of the closure operator of d: n minus the max induced acyclic size
// (equivalently, the minimum feedback vertex set size).
inline int rank_of(const Digraph& d) { return d.order() - mias(d); }

// Whether `sub` induces exactly one directed cycle covering all of `sub`:
// every vertex has in- and out-degree 1 inside, and one walk closes after
// |sub| steps. Such a cycle is chordless by construction.
inline bool induces_single_cycle(const Digraph& d, VertexSet sub) {
  if (sub.empty()) return false;
  for (int v : sub) {
    if ((d.out_neighbors(v) & sub).count() != 1) return false;
    if ((d.in_neighbors(v) & sub).count() != 1) return false;
  }
  // In/out degrees are all 1 inside sub, so arcs restricted to sub form a
  // permutation; a single cycle means first return to start takes |sub| steps.
  int start = sub.lowest();
  int cur = start;
  int steps = 0;
  do {
    cur = (d.out_neighbors(cur) & sub).lowest();
    ++steps;
  } while (cur != start && steps < sub.count());
  return cur == start && steps == sub.count();
}

// Vertices lying on no chordless cycle (the search space of the useless-part
// reduction). Enumerates vertex subsets of `domain`; keep |domain| <= 20.
inline VertexSet chordless_free_vertices(const Digraph& d, VertexSet domain) {
  VertexSet on_cycle;
  for (auto s = subsets_of(domain); !s.done(); s.next()) {
    VertexSet sub = s.get();
    if (sub.subset_of(on_cycle)) continue;
    if (induces_single_cycle(d, sub)) on_cycle |= sub;
  }
  return domain - on_cycle;
}

inline VertexSet chordless_free_vertices(const Digraph& d) {
  return chordless_free_vertices(d, d.vertices());
}

// Length of a shortest directed cycle; n + 1 when the digraph is acyclic
// (mirroring the closure girth convention).
inline int girth(const Digraph& d) {
  int best = d.order() + 1;
  for (int u = 0; u < d.order(); ++u) {
    if (d.has_arc(u, u)) return 1;
    // BFS from u; a cycle through u closes via an in-neighbor of u.
    VertexSet seen = VertexSet::single(u);
    VertexSet frontier = seen;
    for (int dist = 1; dist < best && !frontier.empty(); ++dist) {
      VertexSet next;
      for (int v : frontier) next |= d.out_neighbors(v);
      if (next.intersects(d.in_neighbors(u))) {
        best = std::min(best, dist + 1);
        // dist+1-cycle found: u -> ... -> v -> u where v reached at `dist`.
      }
      next -= seen;
      seen |= next;
      frontier = next;
    }
  }
  return best;
}

// Subgraph induced by `sub`, vertices relabeled to 0..|sub|-1 keeping order.
inline Digraph induced_subgraph(const Digraph& d, VertexSet sub) {
  std::vector<int> idx(d.order(), -1);
  int next = 0;
  for (int v : sub) idx[v] = next++;
  Digraph out(next);
  for (int u : sub)
    for (int v : d.out_neighbors(u) & sub) out.add_arc(idx[u], idx[v]);
  return out;
}

namespace detail {

// Copies d1 onto vertices 0..n1-1 and d2 onto n1..n1+n2-1.
inline Digraph side_by_side(const Digraph& d1, const Digraph& d2) {
  int n1 = d1.order();
  Digraph out(n1 + d2.order());
  for (auto [u, v] : d1.arcs()) out.add_arc(u, v);
  for (auto [u, v] : d2.arcs()) out.add_arc(n1 + u, n1 + v);
  return out;
}

}  // namespace detail

inline Digraph disjoint_union(const Digraph& d1, const Digraph& d2) {
  return detail::side_by_side(d1, d2);
}

// Adds every arc from the first part to the second.
inline Digraph unidirectional_union(const Digraph& d1, const Digraph& d2) {
  Digraph out = detail::side_by_side(d1, d2);
  for (int u = 0; u < d1.order(); ++u)
    for (int v = 0; v < d2.order(); ++v) out.add_arc(u, d1.order() + v);
  return out;
}

// Adds every arc between the parts, both ways.
inline Digraph bidirectional_union(const Digraph& d1, const Digraph& d2) {
  Digraph out = detail::side_by_side(d1, d2);
  for (int u = 0; u < d1.order(); ++u)
    for (int v = 0; v < d2.order(); ++v) {
      out.add_arc(u, d1.order() + v);
      out.add_arc(d1.order() + v, u);
    }
  return out;
}

// k-fold blow-up: vertex v becomes the class {vk, ..., vk+k-1}; every arc
// (u, v) becomes all k*k arcs between the classes. Copies within a class are
// never adjacent to each other (unless v had a loop).
inline Digraph blowup(const Digraph& d, int k) {
  if (k < 1) throw DomainError("blow-up factor must be positive");
  if (d.order() * k > VertexSet::kMaxVertices)
    throw DomainError("blow-up order exceeds 24 vertices");
  Digraph out(d.order() * k);
  for (auto [u, v] : d.arcs())
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out.add_arc(u * k + i, v * k + j);
  return out;
}

// Text format: first line "digraph <n>", then one "<u> <v>" line per arc;
// blank lines and lines starting with '#' are skipped.
inline Digraph parse_digraph(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> arcs;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (n < 0) {
      if (first != "digraph")
        throw ParseError("line " + std::to_string(lineno) + ": expected 'digraph <n>'");
      if (!(ls >> n) || n < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad vertex count");
      continue;
    }
    int u, v;
    std::istringstream as(line);
    if (!(as >> u >> v))
      throw ParseError("line " + std::to_string(lineno) + ": expected '<u> <v>'");
    arcs.emplace_back(u, v);
  }
  if (n < 0) throw ParseError("missing 'digraph <n>' header");
  try {
    return Digraph(n, arcs);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

inline Digraph parse_digraph(const std::string& text) {
  std::istringstream is(text);
  return parse_digraph(is);
}

inline void write_digraph(std::ostream& os, const Digraph& d) {
  os << "digraph " << d.order() << "\n";
  for (auto [u, v] : d.arcs()) os << u << " " << v << "\n";
}

inline std::string to_text(const Digraph& d) {
  std::ostringstream os;
  write_digraph(os, d);
  return os.str();
}

}  // namespace closol
