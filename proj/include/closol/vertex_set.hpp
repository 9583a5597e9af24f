#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace closol {

// Subset of a vertex ground set {0, ..., n-1}, n <= 24, stored as a bitmask.
// Doubles as the index into tabulated closure operators.
class VertexSet {
 public:
  static constexpr int kMaxVertices = 24;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 32 ? ~0u : (1u << n) - 1);
  }
  static constexpr VertexSet single(int v) { return VertexSet(1u << v); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr VertexSet with(int v) const { return VertexSet(bits_ | (1u << v)); }
  constexpr VertexSet without(int v) const { return VertexSet(bits_ & ~(1u << v)); }

  // Smallest element; only meaningful when nonempty.
  constexpr int lowest() const { return std::countr_zero(bits_); }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) {
    return VertexSet(a.bits_ | b.bits_);
  }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) {
    return VertexSet(a.bits_ & b.bits_);
  }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) {
    return VertexSet(a.bits_ & ~b.bits_);
  }
  friend constexpr VertexSet operator^(VertexSet a, VertexSet b) {
    return VertexSet(a.bits_ ^ b.bits_);
  }
  constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
  constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;

  // Iterates over elements in increasing order.
  class iterator {
   public:
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    friend constexpr bool operator==(iterator a, iterator b) = default;
   private:
    std::uint32_t rest_;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for (int v : *this) out.push_back(v);
    return out;
  }

 private:
  std::uint32_t bits_ = 0;
};

// Enumerates the subsets of `space` in decreasing bitmask order, `space`
// itself first, empty set last. Usage:
//   for (auto s = subsets_of(space); !s.done(); s.next()) use(s.get());
class SubsetRange {
 public:
  constexpr explicit SubsetRange(VertexSet space)
      : space_(space.bits()), cur_(space.bits()), done_(false) {}
  constexpr bool done() const { return done_; }
  constexpr VertexSet get() const { return VertexSet(cur_); }
  constexpr void next() {
    if (cur_ == 0) { done_ = true; return; }
    cur_ = (cur_ - 1) & space_;
  }
 private:
  std::uint32_t space_, cur_;
  bool done_;
};

inline constexpr SubsetRange subsets_of(VertexSet space) { return SubsetRange(space); }

}  // namespace closol
