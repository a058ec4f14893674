#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcoh {

// A nonempty subset of {0,...,n}: one vertex of the chart quiver of P^n.
// Arrows run v -> w exactly when v is a subset of w.
class Vertex {
  uint32_t mask_;
  int n_;

 public:
  Vertex(uint32_t mask, int n) : mask_(mask), n_(n) {
    if (n < 0 || n > 20) throw std::invalid_argument("vertex: n out of range");
    if (mask == 0) throw std::invalid_argument("vertex: empty subset");
    if (mask >= (1u << (n + 1))) throw std::invalid_argument("vertex: member exceeds n");
  }

  static Vertex of(std::initializer_list<int> members, int n) {
    uint32_t m = 0;
    for (int i : members) m |= (1u << i);
    return Vertex(m, n);
  }

  static Vertex full(int n) { return Vertex((1u << (n + 1)) - 1, n); }
  static Vertex single(int i, int n) { return Vertex(1u << i, n); }

  uint32_t mask() const { return mask_; }
  int n() const { return n_; }
  int card() const { return __builtin_popcount(mask_); }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool subset_of(Vertex w) const { return (mask_ & ~w.mask_) == 0; }
  Vertex unite(Vertex w) const { return Vertex(mask_ | w.mask_, n_); }
  int min_member() const { return __builtin_ctz(mask_); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i <= n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  bool operator==(const Vertex& o) const { return mask_ == o.mask_ && n_ == o.n_; }
  bool operator!=(const Vertex& o) const { return !(*this == o); }

  // Canonical order: by cardinality, then lexicographic on the sorted member
  // lists. This is the order vertices(n) emits and every table is printed in.
  bool operator<(const Vertex& o) const {
    if (card() != o.card()) return card() < o.card();
    return members() < o.members();
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int i : members()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

  friend std::ostream& operator<<(std::ostream& os, const Vertex& v) { return os << v.str(); }
};

// All 2^{n+1} - 1 vertices in canonical order.
inline std::vector<Vertex> vertices(int n) {
  if (n < 0) throw std::invalid_argument("vertices: n must be >= 0");
  std::vector<Vertex> out;
  for (uint32_t m = 1; m < (1u << (n + 1)); ++m) out.push_back(Vertex(m, n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcoh
