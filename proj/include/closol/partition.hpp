#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "closol/errors.hpp"

namespace closol {

// Partition of the base set {0, ..., m-1} in canonical form: part ids are
// assigned by first occurrence, so two partitions are equal exactly when
// their label vectors are.
class Partition {
 public:
  explicit Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw DomainError("partition base set must be nonempty");
    std::vector<int> firsts;
    for (int& label : labels_) {
      int id = -1;
      for (std::size_t p = 0; p < firsts.size(); ++p)
        if (firsts[p] == label) {
          id = static_cast<int>(p);
          break;
        }
      if (id < 0) {
        firsts.push_back(label);
        id = static_cast<int>(firsts.size()) - 1;
      }
      label = id;
    }
    parts_ = static_cast<int>(firsts.size());
  }

  static Partition equality(int m) {
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = i;
    return Partition(std::move(labels));
  }

  static Partition universal(int m) { return Partition(std::vector<int>(m, 0)); }

  int base_size() const { return static_cast<int>(labels_.size()); }
  int part_count() const { return parts_; }
  const std::vector<int>& labels() const { return labels_; }
  int label_of(int element) const { return labels_[element]; }

  std::vector<int> part_sizes() const {
    std::vector<int> sizes(parts_, 0);
    for (int label : labels_) ++sizes[label];
    return sizes;
  }

  bool operator==(const Partition& other) const = default;

 private:
  std::vector<int> labels_;
  int parts_ = 0;
};

// Kernel of a function given by its value list: elements with equal values
// share a part.
inline Partition kernel(const std::vector<int>& values) { return Partition(values); }

// Common refinement: parts are the nonempty pairwise intersections.
inline Partition join(const Partition& f, const Partition& g) {
  if (f.base_size() != g.base_size())
    throw DomainError("partition base sets differ");
  std::vector<int> labels(f.base_size());
  for (int i = 0; i < f.base_size(); ++i)
    labels[i] = f.label_of(i) * g.part_count() + g.label_of(i);
  return Partition(std::move(labels));
}

// True when every part of `fine` lies inside one part of `coarse`.
inline bool refines(const Partition& fine, const Partition& coarse) {
  if (fine.base_size() != coarse.base_size())
    throw DomainError("partition base sets differ");
  std::vector<int> image(fine.part_count(), -1);
  for (int i = 0; i < fine.base_size(); ++i) {
    int& target = image[fine.label_of(i)];
    if (target < 0) target = coarse.label_of(i);
    else if (target != coarse.label_of(i)) return false;
  }
  return true;
}

// Entropy r - q^{-r} * sum |P| log_q |P| of a partition of a base of size
// q^r; ranges over [0, r] and hits r only for the equality partition. The
// log terms are integers whenever every part size is a power of q.
inline double entropy(const Partition& f, int q) {
  if (q < 2) throw DomainError("alphabet size must be at least 2");
  const int m = f.base_size();
  int r = 0;
  long long power = 1;
  while (power < m) {
    power *= q;
    ++r;
  }
  if (power != m)
    throw DomainError("partition base size is not a power of the alphabet size");
  double total = 0;
  for (int size : f.part_sizes()) {
    int exponent = 0;
    long long p = 1;
    while (p < size) {
      p *= q;
      ++exponent;
    }
    total += p == size ? size * static_cast<double>(exponent)
                       : size * std::log(size) / std::log(q);
  }
  return r - total / m;
}

}  // namespace closol
