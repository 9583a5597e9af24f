#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "closol/closure.hpp"
#include "closol/errors.hpp"
#include "closol/partition.hpp"
#include "closol/vertex_set.hpp"

namespace closol {

// Words of A^n are encoded little-endian in base q: digit v is the symbol of
// vertex v, and the encoded value is sum_v digit_v * q^v.

inline std::uint64_t power(int q, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= static_cast<std::uint64_t>(q);
  return out;
}

inline int word_digit(std::uint64_t word, int v, int q) {
  return static_cast<int>(word / power(q, v) % static_cast<std::uint64_t>(q));
}

inline std::uint64_t encode_word(const std::vector<int>& digits, int q) {
  std::uint64_t out = 0;
  for (std::size_t v = digits.size(); v-- > 0;)
    out = out * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(digits[v]);
  return out;
}

// Coordinates where two words agree.
inline VertexSet agreement_set(std::uint64_t x, std::uint64_t y, int n, int q) {
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    if (x % q == y % q) out |= VertexSet::single(v);
    x /= q;
    y /= q;
  }
  return out;
}

// An n-tuple of partitions of the message base {0, ..., q^r - 1}, carried as
// explicit symbol assignments: vertex v sends symbols_[v][e] on message e.
// At most q parts per vertex is built into the representation.
class CodingFunction {
 public:
  CodingFunction(int n, int q, int r, std::vector<std::vector<int>> symbols)
      : n_(n), q_(q), r_(r), symbols_(std::move(symbols)) {
    if (n < 1 || n > ClosureOp::kMaxGround)
      throw DomainError("coding function needs between 1 and 16 vertices");
    if (q < 2) throw DomainError("alphabet size must be at least 2");
    if (r < 0 || r > n) throw DomainError("rank out of range");
    const std::uint64_t base = power(q, r);
    if (base > (std::uint64_t{1} << 20))
      throw DomainError("message base exceeds 2^20");
    if (symbols_.size() != static_cast<std::size_t>(n))
      throw DomainError("coding function needs one partition per vertex");
    for (const auto& row : symbols_) {
      if (row.size() != base)
        throw DomainError("partition size differs from the message base");
      for (int s : row)
        if (s < 0 || s >= q) throw DomainError("symbol out of alphabet range");
    }
  }

  int order() const { return n_; }
  int alphabet() const { return q_; }
  int rank() const { return r_; }
  int base_size() const { return static_cast<int>(power(q_, r_)); }
  int symbol(int v, int message) const { return symbols_[v][message]; }
  const std::vector<int>& symbols(int v) const { return symbols_[v]; }
  Partition partition_of(int v) const { return kernel(symbols_[v]); }

  bool operator==(const CodingFunction& other) const = default;

 private:
  int n_, q_, r_;
  std::vector<std::vector<int>> symbols_;
};

// Table of all 2^n joined partitions f_X, entry X = join of the parts over X.
inline std::vector<Partition> joint_partitions(const CodingFunction& f) {
  const int n = f.order();
  if (static_cast<std::uint64_t>(f.base_size()) << n > (std::uint64_t{1} << 26))
    throw DomainError("joint partition table too large");
  std::vector<Partition> table;
  table.reserve(std::size_t{1} << n);
  table.push_back(Partition::universal(f.base_size()));
  for (std::uint32_t x = 1; x < (std::uint32_t{1} << n); ++x) {
    int v = VertexSet(x).lowest();
    table.push_back(join(table[x & (x - 1)], f.partition_of(v)));
  }
  return table;
}

// f is a coding function of cl when its message space is A^rank(cl) and
// f_X = f_{cl(X)} for every subset X.
inline bool is_coding_function(const CodingFunction& f, const ClosureOp& cl) {
  if (f.order() != cl.ground_size())
    throw DomainError("coding function and operator sizes differ");
  if (f.rank() != cl.rank()) return false;
  auto table = joint_partitions(f);
  for (std::uint32_t x = 0; x < table.size(); ++x)
    if (table[x] != table[cl(VertexSet(x)).bits()]) return false;
  return true;
}

// The operator cl_f(X) = {v : f_{X u v} = f_X}; the finest one f respects.
inline ClosureOp induced_closure(const CodingFunction& f) {
  const int n = f.order();
  auto table = joint_partitions(f);
  std::vector<std::uint32_t> closure(table.size());
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    std::uint32_t out = x;
    for (int v = 0; v < n; ++v)
      if (!(x >> v & 1) && table[x | (1u << v)] == table[x]) out |= 1u << v;
    closure[x] = out;
  }
  return ClosureOp(n, std::move(closure));
}

// Words indexing nonempty parts of f_V: one word per message, duplicates
// removed, ascending.
inline std::vector<std::uint64_t> image(const CodingFunction& f) {
  std::vector<std::uint64_t> words;
  words.reserve(f.base_size());
  std::vector<int> digits(f.order());
  for (int e = 0; e < f.base_size(); ++e) {
    for (int v = 0; v < f.order(); ++v) digits[v] = f.symbol(v, e);
    words.push_back(encode_word(digits, f.alphabet()));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

// Builds a coding function whose image is exactly `words`: messages are
// lumped into |words| parts (0, 1, ..., with the tail in the last part) and
// each vertex reads off its digit of the part's word. Requires the words to
// be pairwise compatible: every agreement set closed under cl.
inline CodingFunction coding_function_from_words(
    const std::vector<std::uint64_t>& words, const ClosureOp& cl, int q) {
  const int n = cl.ground_size();
  const int r = cl.rank();
  if (q < 2) throw DomainError("alphabet size must be at least 2");
  if (words.empty()) throw DomainError("word list is empty");
  const std::uint64_t space = power(q, n);
  for (std::uint64_t w : words)
    if (w >= space) throw DomainError("word out of range");
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (words[i] == words[j])
        throw DomainError("duplicate word " + std::to_string(words[i]));
      if (!cl.closed(agreement_set(words[i], words[j], n, q)))
        throw DomainError("words " + std::to_string(words[i]) + " and " +
                          std::to_string(words[j]) +
                          " are adjacent: their agreement set is not closed");
    }
  const std::uint64_t base = power(q, r);
  if (words.size() > base)
    throw DomainError("more words than messages");
  const int k = static_cast<int>(words.size());
  std::vector<std::vector<int>> symbols(n, std::vector<int>(base));
  for (std::uint64_t e = 0; e < base; ++e) {
    std::uint64_t word = words[std::min<std::uint64_t>(e, k - 1)];
    for (int v = 0; v < n; ++v) symbols[v][e] = word_digit(word, v, q);
  }
  return CodingFunction(n, q, r, std::move(symbols));
}

// Text format: header `coding <n> <q> <r>`, then one line per vertex with
// q^r symbols. Blank lines and # comments are skipped.
inline void write_coding(std::ostream& os, const CodingFunction& f) {
  os << "coding " << f.order() << ' ' << f.alphabet() << ' ' << f.rank() << '\n';
  for (int v = 0; v < f.order(); ++v) {
    for (int e = 0; e < f.base_size(); ++e)
      os << (e ? " " : "") << f.symbol(v, e);
    os << '\n';
  }
}

inline std::string to_text(const CodingFunction& f) {
  std::ostringstream os;
  write_coding(os, f);
  return os.str();
}

inline CodingFunction parse_coding(std::istream& is) {
  std::string line;
  auto next_line = [&is, &line]() {
    while (std::getline(is, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty coding function input");
  std::istringstream header(line);
  std::string tag;
  int n = 0, q = 0, r = 0;
  if (!(header >> tag >> n >> q >> r) || tag != "coding")
    throw ParseError("expected header 'coding <n> <q> <r>'");
  if (n < 1 || n > ClosureOp::kMaxGround || q < 2 || r < 0 || r > n)
    throw ParseError("coding function header out of range");
  const std::uint64_t base = power(q, r);
  std::vector<std::vector<int>> symbols(n, std::vector<int>(base));
  for (int v = 0; v < n; ++v) {
    if (!next_line()) throw ParseError("missing partition line for vertex " +
                                       std::to_string(v));
    std::istringstream row(line);
    for (std::uint64_t e = 0; e < base; ++e)
      if (!(row >> symbols[v][e]))
        throw ParseError("short partition line for vertex " + std::to_string(v));
    std::string extra;
    if (row >> extra) throw ParseError("trailing data on partition line");
  }
  try {
    return CodingFunction(n, q, r, std::move(symbols));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

inline CodingFunction parse_coding(const std::string& text) {
  std::istringstream is(text);
  return parse_coding(is);
}

}  // namespace closol
