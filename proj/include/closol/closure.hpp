#pragma once

#include <algorithm>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "closol/digraph.hpp"
#include "closol/errors.hpp"
#include "closol/vertex_set.hpp"

namespace closol {

// Closure operator on the ground set {0, ..., n-1}, tabulated over all 2^n
// subsets. Construction does not enforce the closure axioms (verify_axioms
// reports violations); every operator built by the functions below
// satisfies them.
class ClosureOp {
 public:
  static constexpr int kMaxGround = 16;

  ClosureOp(int n, std::vector<std::uint32_t> table)
      : n_(n), table_(std::move(table)) {
    if (n < 0 || n > kMaxGround)
      throw DomainError("closure ground set must be between 0 and 16, got " +
                        std::to_string(n));
    if (table_.size() != (std::size_t{1} << n_))
      throw DomainError("closure table has wrong length");
    const std::uint32_t limit = VertexSet::full(n_).bits();
    for (std::uint32_t t : table_)
      if (t & ~limit) throw DomainError("closure table entry out of range");
    rank_ = n_ + 1;
    for (std::uint32_t x = 0; x < table_.size(); ++x)
      if (table_[x] == limit) rank_ = std::min(rank_, std::popcount(x));
  }

  int ground_size() const { return n_; }
  VertexSet ground() const { return VertexSet::full(n_); }

  VertexSet operator()(VertexSet x) const { return VertexSet(table_[x.bits()]); }
  bool closed(VertexSet x) const { return table_[x.bits()] == x.bits(); }

  // Minimum size of a basis (a subset whose closure is everything);
  // n + 1 if no subset closes to the full set (possible only off-axiom).
  int rank() const { return rank_; }

  const std::vector<std::uint32_t>& table() const { return table_; }

  friend bool operator==(const ClosureOp& a, const ClosureOp& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  int n_;
  std::vector<std::uint32_t> table_;
  int rank_;
};

// Tabulates the digraph closure of every subset. Subset ranges are
// independent, so the fill splits across threads when jobs > 1; the result
// does not depend on the split.
inline ClosureOp from_digraph(const Digraph& d, int jobs = 1) {
  const int n = d.order();
  if (n > ClosureOp::kMaxGround)
    throw DomainError("closure tables support at most 16 vertices, got " +
                      std::to_string(n));
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint32_t> table(size);
  auto fill = [&d, &table](std::size_t lo, std::size_t hi) {
    for (std::size_t x = lo; x < hi; ++x)
      table[x] = d_closure(d, VertexSet(static_cast<std::uint32_t>(x))).bits();
  };
  jobs = std::min<int>(jobs, std::thread::hardware_concurrency());
  if (jobs <= 1 || size < 4096) {
    fill(0, size);
  } else {
    std::vector<std::future<void>> parts;
    const std::size_t chunk = (size + jobs - 1) / jobs;
    for (std::size_t lo = 0; lo < size; lo += chunk)
      parts.push_back(std::async(std::launch::async, fill, lo,
                                 std::min(size, lo + chunk)));
    for (auto& p : parts) p.get();
  }
  return ClosureOp(n, std::move(table));
}

// Uniform operator U_{r,n}: subsets smaller than r are closed, everything
// else closes to the full set.
inline ClosureOp uniform(int r, int n) {
  if (r < 0 || r > n) throw DomainError("uniform rank must lie in [0, n]");
  const std::size_t size = std::size_t{1} << n;
  const std::uint32_t all = VertexSet::full(n).bits();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x)
    table[x] = std::popcount(x) < r ? x : all;
  return ClosureOp(n, std::move(table));
}

struct AxiomViolation {
  std::string axiom;  // "extensive", "isotone", or "idempotent"
  VertexSet x, y;     // witness pair (y unused for extensivity)
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the three closure axioms. Isotonicity reduces to single-element
// steps: cl(X) <= cl(X + v) for all X, v, which is equivalent by chaining.
inline AxiomReport verify_axioms(const ClosureOp& cl) {
  constexpr std::size_t kMaxWitnesses = 16;
  AxiomReport report;
  auto add = [&report](const char* axiom, VertexSet x, VertexSet y) {
    if (report.violations.size() < kMaxWitnesses)
      report.violations.push_back({axiom, x, y});
  };
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next()) {
    VertexSet x = s.get();
    if (!x.subset_of(cl(x))) add("extensive", x, VertexSet());
    for (int v : cl.ground() - x)
      if (!cl(x).subset_of(cl(x.with(v)))) add("isotone", x, x.with(v));
    if (cl(cl(x)) != cl(x)) add("idempotent", x, cl(x));
  }
  return report;
}

struct PropertyCheck {
  bool ok = true;
  std::string detail;
};

// The four standard consequences of the axioms: closure as the least closed
// superset, intersection-closedness, cl(X u Y) = cl(cl(X) u cl(Y)), and
// X <= cl(Y) iff cl(X) <= cl(Y). Quadratic in the table, so capped at n <= 12.
inline PropertyCheck verify_derived_properties(const ClosureOp& cl) {
  if (cl.ground_size() > 12)
    throw DomainError("derived-property check enumerates subset pairs; n <= 12 only");
  auto fail = [](const std::string& what) { return PropertyCheck{false, what}; };

  std::vector<std::uint32_t> closed;
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next())
    if (cl.closed(s.get())) closed.push_back(s.get().bits());

  for (auto s = subsets_of(cl.ground()); !s.done(); s.next()) {
    VertexSet x = s.get();
    std::uint32_t meet = cl.ground().bits();
    for (std::uint32_t c : closed)
      if ((x.bits() & ~c) == 0) meet &= c;
    if (meet != cl(x).bits())
      return fail("closure is not the least closed superset of " +
                  std::to_string(x.bits()));
  }
  for (std::uint32_t a : closed)
    for (std::uint32_t b : closed)
      if (!cl.closed(VertexSet(a & b)))
        return fail("closed sets not intersection-closed: " + std::to_string(a) +
                    " & " + std::to_string(b));
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next())
    for (auto t = subsets_of(cl.ground()); !t.done(); t.next()) {
      VertexSet x = s.get(), y = t.get();
      if (cl(x | y) != cl(cl(x) | cl(y)))
        return fail("cl(X u Y) != cl(cl(X) u cl(Y))");
      if (x.subset_of(cl(y)) != cl(x).subset_of(cl(y)))
        return fail("X <= cl(Y) iff cl(X) <= cl(Y) fails");
    }
  return {};
}

// Mac Lane-Steinitz exchange: for v outside cl(X), anything newly spanned by
// adding v spans v back.
inline bool is_matroid(const ClosureOp& cl) {
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next()) {
    VertexSet x = s.get();
    for (int v : cl.ground() - cl(x)) {
      VertexSet gained = cl(x.with(v)) - cl(x);
      for (int u : gained.without(v))
        if (!cl(x.with(u)).contains(v)) return false;
    }
  }
  return true;
}

// Pointwise order: cl1(X) <= cl2(X) for every X.
inline bool leq(const ClosureOp& cl1, const ClosureOp& cl2) {
  if (cl1.ground_size() != cl2.ground_size())
    throw DomainError("cannot compare operators on different ground sets");
  for (auto s = subsets_of(cl1.ground()); !s.done(); s.next())
    if (!cl1(s.get()).subset_of(cl2(s.get()))) return false;
  return true;
}

namespace detail {

// Position maps for compressing V \ drop onto {0, ..., n'-1}, order kept.
struct Compression {
  std::vector<int> to_new;   // old index -> new, -1 when dropped
  std::vector<int> to_old;   // new index -> old
  VertexSet kept;

  Compression(int n, VertexSet drop) : to_new(n, -1), kept(VertexSet::full(n) - drop) {
    for (int v : kept) {
      to_new[v] = static_cast<int>(to_old.size());
      to_old.push_back(v);
    }
  }
  std::uint32_t compress(VertexSet x) const {
    std::uint32_t out = 0;
    for (int v : x & kept) out |= 1u << to_new[v];
    return out;
  }
  VertexSet expand(std::uint32_t bits) const {
    VertexSet out;
    for (int i = 0; i < static_cast<int>(to_old.size()); ++i)
      if ((bits >> i) & 1u) out |= VertexSet::single(to_old[i]);
    return out;
  }
};

}  // namespace detail

// Deletion cl \ V2: restriction of closures to V1 = V - V2, relabeled onto
// {0, ..., |V1|-1} in increasing vertex order.
inline ClosureOp deletion(const ClosureOp& cl, VertexSet v2) {
  detail::Compression c(cl.ground_size(), v2);
  const std::size_t size = std::size_t{1} << c.to_old.size();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x)
    table[x] = c.compress(cl(c.expand(x)));
  return ClosureOp(static_cast<int>(c.to_old.size()), std::move(table));
}

// Contraction cl / V2: close together with V2, then discard it. Same
// relabeling as deletion.
inline ClosureOp contraction(const ClosureOp& cl, VertexSet v2) {
  detail::Compression c(cl.ground_size(), v2);
  const std::size_t size = std::size_t{1} << c.to_old.size();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x)
    table[x] = c.compress(cl(c.expand(x) | v2));
  return ClosureOp(static_cast<int>(c.to_old.size()), std::move(table));
}

namespace detail {

inline void check_union_sizes(const ClosureOp& cl1, const ClosureOp& cl2) {
  if (cl1.ground_size() + cl2.ground_size() > ClosureOp::kMaxGround)
    throw DomainError("union ground set exceeds 16");
}

}  // namespace detail

// Disjoint union: the parts never interact. Ground sets are placed side by
// side, cl1 on {0..n1-1}, cl2 shifted up by n1 (same for the other unions).
inline ClosureOp cl_disjoint_union(const ClosureOp& cl1, const ClosureOp& cl2) {
  detail::check_union_sizes(cl1, cl2);
  const int n1 = cl1.ground_size(), n2 = cl2.ground_size();
  const std::size_t size = std::size_t{1} << (n1 + n2);
  const std::uint32_t low = VertexSet::full(n1).bits();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    VertexSet x1(x & low), x2(x >> n1);
    table[x] = cl1(x1).bits() | (cl2(x2).bits() << n1);
  }
  return ClosureOp(n1 + n2, std::move(table));
}

// One-way union: the second part only unlocks once the first part is spanned.
inline ClosureOp cl_unidirectional_union(const ClosureOp& cl1, const ClosureOp& cl2) {
  detail::check_union_sizes(cl1, cl2);
  const int n1 = cl1.ground_size(), n2 = cl2.ground_size();
  const std::size_t size = std::size_t{1} << (n1 + n2);
  const std::uint32_t low = VertexSet::full(n1).bits();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    VertexSet x1(x & low), x2(x >> n1);
    if (cl1(x1) == VertexSet(low))
      table[x] = low | (cl2(x2).bits() << n1);
    else
      table[x] = cl1(x1).bits() | (x2.bits() << n1);
  }
  return ClosureOp(n1 + n2, std::move(table));
}

// Two-way union: each part unlocks only when the other is fully present.
inline ClosureOp cl_bidirectional_union(const ClosureOp& cl1, const ClosureOp& cl2) {
  detail::check_union_sizes(cl1, cl2);
  const int n1 = cl1.ground_size(), n2 = cl2.ground_size();
  const std::size_t size = std::size_t{1} << (n1 + n2);
  const std::uint32_t low = VertexSet::full(n1).bits();
  const std::uint32_t high = VertexSet::full(n2).bits();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    VertexSet x1(x & low), x2(x >> n1);
    if (x1 == VertexSet(low))
      table[x] = low | (cl2(x2).bits() << n1);
    else if (x2 == VertexSet(high))
      table[x] = cl1(x1).bits() | (high << n1);
    else
      table[x] = x;
  }
  return ClosureOp(n1 + n2, std::move(table));
}

// V2 is weak when deleting and contracting it agree, i.e. the rest of the
// ground set never needs V2 to span anything outside V2. Only nonempty
// proper subsets qualify.
inline bool is_weak(const ClosureOp& cl, VertexSet v2) {
  if (v2.empty() || v2 == cl.ground() || !v2.subset_of(cl.ground())) return false;
  for (auto s = subsets_of(cl.ground() - v2); !s.done(); s.next()) {
    VertexSet x = s.get();
    if ((cl(x) - v2) != (cl(x | v2) - v2)) return false;
  }
  return true;
}

// Union of all weak sets (itself weak; empty when the operator is connected).
inline VertexSet largest_weak_set(const ClosureOp& cl) {
  VertexSet out;
  const std::uint32_t all = cl.ground().bits();
  for (std::uint32_t x = 1; x < all; ++x) {
    VertexSet v2(x);
    if (v2.subset_of(out)) continue;
    if (is_weak(cl, v2)) out |= v2;
  }
  return out;
}

// Two vertices are entangled when neither spans the other yet their closures
// meet. Separable operators admit the parallel-class simplification below.
inline bool is_separable(const ClosureOp& cl) {
  const int n = cl.ground_size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VertexSet ca = cl(VertexSet::single(a)), cb = cl(VertexSet::single(b));
      if (!ca.contains(b) && !cb.contains(a) && ca.intersects(cb)) return false;
    }
  return true;
}

struct SimplifyResult {
  ClosureOp reduced;              // operator on the representatives
  std::vector<int> vertex_map;    // old vertex -> new index, -1 for loops
  VertexSet loops;                // cl(empty) in the original labels
  std::vector<int> representatives;  // new index -> old vertex
};

// Removes the loops cl(empty) (a weak set, so contraction equals deletion
// there), then collapses each parallel class cl(v) onto one representative.
// Solvability is preserved by both steps. Fails on non-separable operators.
inline SimplifyResult simplify(const ClosureOp& cl) {
  VertexSet loops = cl(VertexSet());
  ClosureOp base = contraction(cl, loops);
  if (!is_separable(base)) throw DomainError("operator is not separable");

  detail::Compression drop_loops(cl.ground_size(), loops);
  const int nb = base.ground_size();

  // Greedy representatives: largest singleton closure first. Separability
  // makes the chosen classes disjoint, and every vertex lands in one.
  std::vector<int> order(nb);
  for (int i = 0; i < nb; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&base](int a, int b) {
    int ca = base(VertexSet::single(a)).count();
    int cb = base(VertexSet::single(b)).count();
    return ca != cb ? ca > cb : a < b;
  });
  std::vector<int> rep_of(nb, -1);
  std::vector<int> reps;
  for (int v : order) {
    if (rep_of[v] >= 0) continue;
    reps.push_back(v);
    for (int u : base(VertexSet::single(v)))
      if (rep_of[u] < 0) rep_of[u] = v;
  }
  std::sort(reps.begin(), reps.end());

  VertexSet reps_mask;
  for (int v : reps) reps_mask |= VertexSet::single(v);
  detail::Compression keep(nb, VertexSet::full(nb) - reps_mask);

  const std::size_t size = std::size_t{1} << reps.size();
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x)
    table[x] = keep.compress(base(keep.expand(x)));

  SimplifyResult out{ClosureOp(static_cast<int>(reps.size()), std::move(table)),
                     std::vector<int>(cl.ground_size(), -1), loops, {}};
  for (int v : reps) out.representatives.push_back(drop_loops.to_old[v]);
  for (int v = 0; v < cl.ground_size(); ++v) {
    if (loops.contains(v)) continue;
    int in_base = drop_loops.to_new[v];
    out.vertex_map[v] = keep.to_new[rep_of[in_base]];
  }
  return out;
}

// Degree of v: size of a smallest set that spans v from outside (0 when v is
// a loop or is never spanned).
inline int degree(const ClosureOp& cl, int v) {
  int best = cl.ground_size() + 1;
  for (auto s = subsets_of(cl.ground().without(v)); !s.done(); s.next())
    if (cl(s.get()).contains(v)) best = std::min(best, s.get().count());
  return best > cl.ground_size() ? 0 : best;
}

inline int min_degree(const ClosureOp& cl) {
  int best = cl.ground_size() + 1;
  for (int v = 0; v < cl.ground_size(); ++v) best = std::min(best, degree(cl, v));
  return best > cl.ground_size() ? 0 : best;
}

// Closure girth: size of a smallest X whose removal breaks spanning,
// cl(V - X) != V; n + 1 when even removing everything still spans (rank 0).
inline int closure_girth(const ClosureOp& cl) {
  int best = cl.ground_size() + 1;
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next()) {
    VertexSet x = s.get();
    if (cl(cl.ground() - x) != cl.ground()) best = std::min(best, x.count());
  }
  return best;
}

// k-fold blow-up: vertex v becomes the class [v] = {vk, ..., vk+k-1}.
// A class joins the closure only when the underlying vertex is spanned by
// the fully-present classes.
inline ClosureOp blowup_cl(const ClosureOp& cl, int k) {
  if (k < 1) throw DomainError("blow-up factor must be positive");
  const int n = cl.ground_size();
  if (n * k > ClosureOp::kMaxGround)
    throw DomainError("blown-up ground set exceeds 16");
  const std::uint32_t block = (k >= 32) ? ~0u : (1u << k) - 1;
  const std::size_t size = std::size_t{1} << (n * k);
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    VertexSet base_set;
    for (int v = 0; v < n; ++v)
      if (((x >> (v * k)) & block) == block) base_set |= VertexSet::single(v);
    std::uint32_t out = x;
    for (int v : cl(base_set)) out |= block << (v * k);
    table[x] = out;
  }
  return ClosureOp(n * k, std::move(table));
}

// Matroid-style rank of a subset: smallest basis of its closure.
inline int subset_rank(const ClosureOp& cl, VertexSet x) {
  const std::uint32_t target = cl(x).bits();
  int best = cl.ground_size() + 1;
  for (auto s = subsets_of(cl.ground()); !s.done(); s.next())
    if (cl(s.get()).bits() == target) best = std::min(best, s.get().count());
  return best;
}

// Relabels the ground set: vertex v becomes perm[v].
inline ClosureOp relabel(const ClosureOp& cl, const std::vector<int>& perm) {
  const int n = cl.ground_size();
  if (static_cast<int>(perm.size()) != n)
    throw DomainError("permutation size mismatch");
  auto apply = [&perm](std::uint32_t bits) {
    std::uint32_t out = 0;
    for (int v : VertexSet(bits)) out |= 1u << perm[v];
    return out;
  };
  std::vector<int> inv(n, -1);
  for (int v = 0; v < n; ++v) {
    if (perm[v] < 0 || perm[v] >= n || inv[perm[v]] != -1)
      throw DomainError("not a permutation");
    inv[perm[v]] = v;
  }
  auto unapply = [&inv](std::uint32_t bits) {
    std::uint32_t out = 0;
    for (int v : VertexSet(bits)) out |= 1u << inv[v];
    return out;
  };
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x)
    table[x] = apply(cl.table()[unapply(x)]);
  return ClosureOp(n, std::move(table));
}

// Text format: first line "closure <n>", then one "<subset-hex> <image-hex>"
// line per subset in increasing subset order. Round-trips exactly.
inline void write_closure(std::ostream& os, const ClosureOp& cl) {
  os << "closure " << cl.ground_size() << "\n";
  os << std::hex;
  for (std::size_t x = 0; x < cl.table().size(); ++x)
    os << x << " " << cl.table()[x] << "\n";
  os << std::dec;
}

inline std::string to_text(const ClosureOp& cl) {
  std::ostringstream os;
  write_closure(os, cl);
  return os.str();
}

inline ClosureOp parse_closure(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<std::uint32_t> table;
  std::size_t expected = 0;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (n < 0) {
      if (first != "closure")
        throw ParseError("line " + std::to_string(lineno) + ": expected 'closure <n>'");
      if (!(ls >> n) || n < 0 || n > ClosureOp::kMaxGround)
        throw ParseError("line " + std::to_string(lineno) + ": bad ground size");
      expected = std::size_t{1} << n;
      table.reserve(expected);
      continue;
    }
    std::istringstream ts(line);
    std::uint64_t subset, image;
    ts >> std::hex >> subset >> image;
    if (!ts)
      throw ParseError("line " + std::to_string(lineno) + ": expected '<subset> <image>' in hex");
    if (subset != table.size())
      throw ParseError("line " + std::to_string(lineno) + ": subsets must appear in increasing order");
    if (table.size() >= expected)
      throw ParseError("line " + std::to_string(lineno) + ": too many table rows");
    if (image >= expected)
      throw ParseError("line " + std::to_string(lineno) + ": image out of range");
    table.push_back(static_cast<std::uint32_t>(image));
  }
  if (n < 0) throw ParseError("missing 'closure <n>' header");
  if (table.size() != expected)
    throw ParseError("closure table has " + std::to_string(table.size()) +
                     " rows, expected " + std::to_string(expected));
  return ClosureOp(n, std::move(table));
}

inline ClosureOp parse_closure(const std::string& text) {
  std::istringstream is(text);
  return parse_closure(is);
}

}  // namespace closol
