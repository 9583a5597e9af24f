#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <utility>
#include <vector>

#include "closol/closure.hpp"
#include "closol/coding.hpp"
#include "closol/errors.hpp"

namespace closol {

// Simple undirected graph as a packed adjacency matrix.
class BitGraph {
 public:
  explicit BitGraph(std::size_t size)
      : size_(size), words_((size + 63) / 64), bits_(size_ * words_, 0) {}

  std::size_t size() const { return size_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t x) const { return bits_.data() + x * words_; }

  void add_edge(std::size_t x, std::size_t y) {
    if (x == y) throw DomainError("graph has no self-loops");
    bits_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64);
    bits_[y * words_ + x / 64] |= std::uint64_t{1} << (x % 64);
  }

  bool adjacent(std::size_t x, std::size_t y) const {
    return bits_[x * words_ + y / 64] >> (y % 64) & 1;
  }

  std::size_t degree(std::size_t x) const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(row(x)[w]);
    return total;
  }

  bool operator==(const BitGraph& other) const = default;

 private:
  std::size_t size_, words_;
  std::vector<std::uint64_t> bits_;

  friend class SolvGraph;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool bit_test(const Bits& b, std::size_t i) { return b[i / 64] >> (i % 64) & 1; }
inline void bit_set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
inline void bit_clear(Bits& b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

inline int bits_count(const Bits& b) {
  int total = 0;
  for (std::uint64_t w : b) total += std::popcount(w);
  return total;
}

inline bool bits_intersect(const Bits& b, const std::uint64_t* other) {
  for (std::size_t w = 0; w < b.size(); ++w)
    if (b[w] & other[w]) return true;
  return false;
}

// Keeps only indices strictly above `limit`.
inline void bits_clear_through(Bits& b, std::size_t limit) {
  for (std::size_t w = 0; w <= limit / 64 && w < b.size(); ++w)
    b[w] &= w < limit / 64 ? 0 : ~((std::uint64_t{2} << (limit % 64)) - 1);
}

}  // namespace detail

// Solvability graph of a closure operator over an alphabet of size q: the
// vertices are the q^n words and two words are adjacent exactly when their
// agreement set is not closed. Adjacency stays available as a predicate up
// to q^n <= 2^20; the matrix (needed by the exact solvers) is materialized
// when q^n <= 4096.
class SolvGraph {
 public:
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kMaxMaterialized = 4096;

  SolvGraph(ClosureOp cl, int q, int jobs = 1) : cl_(std::move(cl)), q_(q) {
    if (q < 2) throw DomainError("alphabet size must be at least 2");
    size_ = 1;
    for (int v = 0; v < cl_.ground_size(); ++v) {
      size_ *= static_cast<std::uint64_t>(q);
      if (size_ > kMaxSize) throw DomainError("solvability graph exceeds 2^20 words");
    }
    if (size_ <= kMaxMaterialized) materialize(jobs < 1 ? 1 : jobs);
  }

  const ClosureOp& closure() const { return cl_; }
  int alphabet() const { return q_; }
  std::uint64_t size() const { return size_; }
  bool materialized() const { return matrix_.has_value(); }

  const BitGraph& matrix() const {
    if (!matrix_) throw DomainError("graph too large to materialize");
    return *matrix_;
  }

  bool adjacent(std::uint64_t x, std::uint64_t y) const {
    if (x == y) return false;
    return !cl_.closed(agreement_set(x, y, cl_.ground_size(), q_));
  }

 private:
  ClosureOp cl_;
  int q_;
  std::uint64_t size_;
  std::optional<BitGraph> matrix_;

  void materialize(int jobs) {
    matrix_.emplace(static_cast<std::size_t>(size_));
    BitGraph& g = *matrix_;
    auto fill_rows = [this, &g](std::uint64_t from, std::uint64_t to) {
      for (std::uint64_t x = from; x < to; ++x)
        for (std::uint64_t y = 0; y < size_; ++y)
          if (adjacent(x, y))
            g.bits_[x * g.words_ + y / 64] |= std::uint64_t{1} << (y % 64);
    };
    if (jobs <= 1 || size_ < 256) {
      fill_rows(0, size_);
      return;
    }
    std::vector<std::future<void>> tasks;
    const std::uint64_t chunk = (size_ + jobs - 1) / jobs;
    for (std::uint64_t from = 0; from < size_; from += chunk)
      tasks.push_back(std::async(std::launch::async, fill_rows, from,
                                 std::min(from + chunk, size_)));
    for (auto& t : tasks) t.get();
  }
};

namespace detail {

// Exact maximum independent set by branch and bound: include-first on a
// fixed degree-descending order, pruned by a greedy clique cover of the
// remaining candidates.
class MisSolver {
 public:
  explicit MisSolver(const BitGraph& g) : g_(g), order_(g.size()) {
    for (std::size_t v = 0; v < g.size(); ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&g](std::size_t a, std::size_t b) {
      return g.degree(a) > g.degree(b);
    });
  }

  int solve(Bits candidates) {
    best_ = 0;
    target_ = -1;
    expand(std::move(candidates), 0);
    return best_;
  }

  // True when `candidates` contains an independent set of size `target`.
  bool reaches(Bits candidates, int target) {
    if (target <= 0) return true;
    best_ = target - 1;
    target_ = target;
    expand(std::move(candidates), 0);
    return best_ >= target;
  }

 private:
  const BitGraph& g_;
  std::vector<std::size_t> order_;
  int best_ = 0;
  int target_ = -1;

  // Greedy clique cover of the candidates: its size bounds the independent
  // set from above, and the founder of the last clique is the branch vertex.
  std::pair<int, std::size_t> clique_cover(const Bits& candidates) const {
    std::vector<Bits> cliques;
    std::size_t last_founder = g_.size();
    for (std::size_t v : order_) {
      if (!bit_test(candidates, v)) continue;
      bool placed = false;
      for (Bits& clique : cliques) {
        bool inside = true;
        for (std::size_t w = 0; w < clique.size(); ++w)
          if (clique[w] & ~g_.row(v)[w]) {
            inside = false;
            break;
          }
        if (inside) {
          bit_set(clique, v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques.emplace_back(g_.words(), 0);
        bit_set(cliques.back(), v);
        last_founder = v;
      }
    }
    return {static_cast<int>(cliques.size()), last_founder};
  }

  void expand(Bits candidates, int chosen) {
    for (;;) {
      if (target_ > 0 && best_ >= target_) return;
      int remaining = bits_count(candidates);
      if (remaining == 0) {
        best_ = std::max(best_, chosen);
        return;
      }
      if (chosen + remaining <= best_) return;
      auto [bound, v] = clique_cover(candidates);
      if (chosen + bound <= best_) return;
      Bits included(candidates);
      for (std::size_t w = 0; w < included.size(); ++w)
        included[w] &= ~g_.row(v)[w];
      bit_clear(included, v);
      expand(std::move(included), chosen + 1);
      bit_clear(candidates, v);
    }
  }
};

inline Bits all_vertices(const BitGraph& g) {
  Bits out(g.words(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) bit_set(out, v);
  return out;
}

}  // namespace detail

// Exact independence number; requires the materialized matrix. Word
// translation is an automorphism of every solvability graph, so some
// maximum independent set contains word 0; the search starts there.
inline int alpha(const SolvGraph& g) {
  const BitGraph& m = g.matrix();
  detail::MisSolver solver(m);
  detail::Bits candidates = detail::all_vertices(m);
  for (std::size_t w = 0; w < candidates.size(); ++w) candidates[w] &= ~m.row(0)[w];
  detail::bit_clear(candidates, 0);
  return 1 + solver.solve(std::move(candidates));
}

// Lexicographically smallest maximum independent set, as ascending words.
inline std::vector<std::uint64_t> max_independent_set(const SolvGraph& g) {
  const BitGraph& m = g.matrix();
  detail::MisSolver solver(m);
  detail::Bits candidates = detail::all_vertices(m);
  int need = alpha(g);
  std::vector<std::uint64_t> out;
  out.reserve(need);
  for (std::size_t v = 0; v < m.size() && need > 0; ++v) {
    if (!detail::bit_test(candidates, v)) continue;
    detail::Bits trial(candidates);
    for (std::size_t w = 0; w < trial.size(); ++w) trial[w] &= ~m.row(v)[w];
    detail::bits_clear_through(trial, v);
    if (need == 1 || solver.reaches(trial, need - 1)) {
      out.push_back(v);
      candidates = std::move(trial);
      --need;
    } else {
      detail::bit_clear(candidates, v);
    }
  }
  return out;
}

// Guessing number as the exact pair (alpha, q); value() = log_q alpha.
struct GuessingNumber {
  long long alpha;
  int q;
  double value() const { return std::log(static_cast<double>(alpha)) / std::log(q); }
};

inline GuessingNumber guessing_number(const ClosureOp& cl, int q, int jobs = 1) {
  SolvGraph g(cl, q, jobs);
  return {alpha(g), q};
}

// Solvability decision: solvable iff alpha reaches q^rank. On success the
// canonical maximum independent set is returned along with the coding
// function built from it.
struct SolveDecision {
  bool solvable;
  long long alpha;
  long long target;
  std::vector<std::uint64_t> witness;
  std::optional<CodingFunction> certificate;
};

inline SolveDecision is_solvable(const ClosureOp& cl, int q,
                                 bool want_certificate = true, int jobs = 1) {
  SolvGraph g(cl, q, jobs);
  SolveDecision out{false, alpha(g),
                    static_cast<long long>(power(q, cl.rank())), {}, {}};
  out.solvable = out.alpha == out.target;
  if (out.solvable && want_certificate) {
    out.witness = max_independent_set(g);
    out.certificate = coding_function_from_words(out.witness, cl, q);
  }
  return out;
}

// Greedy coloring in degree-descending order; returns (count, colors).
inline std::pair<int, std::vector<int>> greedy_coloring(const BitGraph& g) {
  std::vector<std::size_t> order(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
    return g.degree(a) > g.degree(b);
  });
  std::vector<int> color(g.size(), -1);
  std::vector<detail::Bits> classes;
  for (std::size_t v : order) {
    std::size_t c = 0;
    while (c < classes.size() && detail::bits_intersect(classes[c], g.row(v))) ++c;
    if (c == classes.size()) classes.emplace_back(g.words(), 0);
    detail::bit_set(classes[c], v);
    color[v] = static_cast<int>(c);
  }
  return {static_cast<int>(classes.size()), std::move(color)};
}

inline bool proper_coloring(const BitGraph& g, const std::vector<int>& color) {
  if (color.size() != g.size()) return false;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = x + 1; y < g.size(); ++y)
      if (g.adjacent(x, y) && color[x] == color[y]) return false;
  return true;
}

// Coset coloring: translates a full independent set (q^rank words) by every
// assignment to the non-basis coordinates, yielding q^(n-rank) classes that
// partition the word space.
struct CosetColoring {
  std::vector<int> color;
  std::uint64_t classes;
  VertexSet basis;
};

inline CosetColoring coset_coloring(const std::vector<std::uint64_t>& words,
                                    const ClosureOp& cl, int q) {
  const int n = cl.ground_size();
  const int r = cl.rank();
  if (words.size() != power(q, r))
    throw DomainError("coset coloring needs a maximum independent set of size q^rank");
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (!cl.closed(agreement_set(words[i], words[j], n, q)))
        throw DomainError("words are not pairwise independent");
  VertexSet basis;
  for (std::uint32_t mask = 0;; ++mask) {
    if (mask >= (std::uint32_t{1} << n))
      throw DomainError("operator has no basis of its rank");
    if (std::popcount(mask) == r && cl(VertexSet(mask)) == cl.ground()) {
      basis = VertexSet(mask);
      break;
    }
  }
  std::vector<int> free_coords;
  for (int v = 0; v < n; ++v)
    if (!basis.contains(v)) free_coords.push_back(v);
  // Words of a maximum independent set project injectively onto any basis.
  {
    std::vector<std::uint64_t> projections;
    for (std::uint64_t x : words) {
      std::uint64_t p = 0;
      for (int v : basis) p = p * q + word_digit(x, v, q);
      projections.push_back(p);
    }
    std::sort(projections.begin(), projections.end());
    if (std::adjacent_find(projections.begin(), projections.end()) != projections.end())
      throw DomainError("words collide on the basis; the set is not independent");
  }
  const std::uint64_t classes = power(q, static_cast<int>(free_coords.size()));
  const std::uint64_t space = power(q, n);
  std::vector<int> color(space, -1);
  for (std::uint64_t w = 0; w < classes; ++w) {
    for (std::uint64_t x : words) {
      std::vector<int> digits(n);
      for (int v = 0; v < n; ++v) digits[v] = word_digit(x, v, q);
      std::uint64_t rest = w;
      for (int v : free_coords) {
        digits[v] = (digits[v] + static_cast<int>(rest % q)) % q;
        rest /= q;
      }
      std::uint64_t shifted = encode_word(digits, q);
      if (color[shifted] != -1)
        throw DomainError("coset translates overlap; the set is not independent");
      color[shifted] = static_cast<int>(w);
    }
  }
  return {std::move(color), classes, basis};
}

namespace detail {

// Exact coloring feasibility test with at most `limit` colors.
class ChiSolver {
 public:
  ChiSolver(const BitGraph& g, int limit) : g_(g), limit_(limit), order_(g.size()) {
    for (std::size_t v = 0; v < g.size(); ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&g](std::size_t a, std::size_t b) {
      return g.degree(a) > g.degree(b);
    });
    classes_.assign(limit, Bits(g.words(), 0));
  }

  bool colorable() { return assign(0, 0); }

 private:
  const BitGraph& g_;
  int limit_;
  std::vector<std::size_t> order_;
  std::vector<Bits> classes_;

  bool assign(std::size_t idx, int used) {
    if (idx == order_.size()) return true;
    std::size_t v = order_[idx];
    int cap = std::min(used + 1, limit_);
    for (int c = 0; c < cap; ++c) {
      if (bits_intersect(classes_[c], g_.row(v))) continue;
      bit_set(classes_[c], v);
      if (assign(idx + 1, std::max(used, c + 1))) return true;
      bit_clear(classes_[c], v);
    }
    return false;
  }
};

}  // namespace detail

// Exact chromatic number. Lower bound: ceil(size / alpha). Upper bounds:
// greedy, plus the verified coset coloring when the operator is solvable.
// The gap, if any, is closed by exact search (limited to 512 vertices).
inline int chi(const SolvGraph& g) {
  if (g.size() > 512)
    throw DomainError("exact chromatic number limited to 512 vertices");
  const BitGraph& m = g.matrix();
  const int a = alpha(g);
  const int lb = static_cast<int>((g.size() + a - 1) / a);
  int ub = greedy_coloring(m).first;
  if (static_cast<std::uint64_t>(a) == power(g.alphabet(), g.closure().rank())) {
    CosetColoring coset = coset_coloring(max_independent_set(g), g.closure(), g.alphabet());
    if (proper_coloring(m, coset.color))
      ub = std::min(ub, static_cast<int>(coset.classes));
  }
  for (int k = lb; k < ub; ++k)
    if (detail::ChiSolver(m, k).colorable()) return k;
  return ub;
}

// Index coding number as the exact pair (chi, q); value() = log_q chi.
struct IndexNumber {
  long long chi;
  int q;
  double value() const { return std::log(static_cast<double>(chi)) / std::log(q); }
};

inline IndexNumber index_number(const ClosureOp& cl, int q, int jobs = 1) {
  SolvGraph g(cl, q, jobs);
  return {chi(g), q};
}

// Largest code of length n and minimum distance d over q symbols, by exact
// independence search (words at distance below d conflict).
inline long long max_code(int n, int d, int q) {
  if (n < 1 || d < 1) throw DomainError("code length and distance must be positive");
  if (d > n) return 1;
  return alpha(SolvGraph(uniform(n - d + 1, n), q));
}

// Graph products on concatenated words: pair (x1, x2) becomes x1 + x2 * N1,
// matching the low-bits-first layout of the closure unions.

inline BitGraph conormal_product(const BitGraph& a, const BitGraph& b) {
  BitGraph out(a.size() * b.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y) {
      std::size_t x1 = x % a.size(), x2 = x / a.size();
      std::size_t y1 = y % a.size(), y2 = y / a.size();
      if (a.adjacent(x1, y1) || b.adjacent(x2, y2)) out.add_edge(x, y);
    }
  return out;
}

inline BitGraph lexicographic_product(const BitGraph& a, const BitGraph& b) {
  BitGraph out(a.size() * b.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y) {
      std::size_t x1 = x % a.size(), x2 = x / a.size();
      std::size_t y1 = y % a.size(), y2 = y / a.size();
      if (a.adjacent(x1, y1) || (x1 == y1 && b.adjacent(x2, y2))) out.add_edge(x, y);
    }
  return out;
}

inline BitGraph cartesian_product(const BitGraph& a, const BitGraph& b) {
  BitGraph out(a.size() * b.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y) {
      std::size_t x1 = x % a.size(), x2 = x / a.size();
      std::size_t y1 = y % a.size(), y2 = y / a.size();
      if ((x1 == y1 && b.adjacent(x2, y2)) || (x2 == y2 && a.adjacent(x1, y1)))
        out.add_edge(x, y);
    }
  return out;
}

// Checks that the solvability graph of each union of cl1 and cl2 equals the
// matching product of the factor graphs, and reports the alpha arithmetic.
struct ProductCheck {
  bool disjoint_ok, unidirectional_ok, bidirectional_ok;
  long long alpha_left, alpha_right;
  long long alpha_disjoint, alpha_unidirectional, alpha_bidirectional;
};

inline ProductCheck product_check(const ClosureOp& cl1, const ClosureOp& cl2,
                                  int q, int jobs = 1) {
  SolvGraph g1(cl1, q, jobs), g2(cl2, q, jobs);
  const BitGraph &m1 = g1.matrix(), &m2 = g2.matrix();
  if (g1.size() * g2.size() > SolvGraph::kMaxMaterialized)
    throw DomainError("product graph exceeds 4096 vertices");
  SolvGraph dis(cl_disjoint_union(cl1, cl2), q, jobs);
  SolvGraph uni(cl_unidirectional_union(cl1, cl2), q, jobs);
  SolvGraph bid(cl_bidirectional_union(cl1, cl2), q, jobs);
  return {dis.matrix() == conormal_product(m1, m2),
          uni.matrix() == lexicographic_product(m1, m2),
          bid.matrix() == cartesian_product(m1, m2),
          alpha(g1),
          alpha(g2),
          alpha(dis),
          alpha(uni),
          alpha(bid)};
}

}  // namespace closol
