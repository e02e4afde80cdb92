#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "parkfrozen/rng.hpp"

namespace parkfrozen {

enum class Color : uint8_t { white = 0, blue = 1 };

struct UnionReport {
  enum Kind { merged, cycle_closed } kind;
  int32_t root_a = -1; // surviving root for merged, component root for cycle_closed
  int32_t root_b = -1; // absorbed root for merged
};

// Union-find multigraph substrate over n vertices. Tracks per root: component
// size, color (white/frozen-blue), cycle flag and edge count. Union by size
// with path compression; metadata lives at roots only. Vertices are 0-based
// here, 1-based at the external interfaces.
class ComponentTable {
public:
  explicit ComponentTable(int64_t n) {
    if (n < 1) throw std::invalid_argument("ComponentTable: n must be >= 1");
    if (n > 0x7FFFFFFF) throw std::invalid_argument("ComponentTable: n too large");
    n_ = static_cast<int32_t>(n);
    parent_.resize(n_);
    size_.assign(n_, 1);
    edges_.assign(n_, 0);
    color_.assign(n_, Color::white);
    has_cycle_.assign(n_, 0);
    for (int32_t v = 0; v < n_; ++v) parent_[v] = v;
  }

  int32_t n() const { return n_; }

  int32_t find(int32_t v) const {
    check(v);
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  int32_t size_of(int32_t v) const { return size_[find(v)]; }
  int64_t edges_of(int32_t v) const { return edges_[find(v)]; }
  Color color_of(int32_t v) const { return color_[find(v)]; }
  bool has_cycle(int32_t v) const { return has_cycle_[find(v)] != 0; }
  int64_t surplus_of(int32_t v) const {
    int32_t r = find(v);
    return edges_[r] - size_[r] + 1;
  }

  void set_color(int32_t v, Color c) { color_[find(v)] = c; }

  // Process one edge: merge the two components or record a closed cycle.
  UnionReport union_or_cycle(const OrientedEdge& e) {
    int32_t a = find(e.tail);
    int32_t b = find(e.head);
    if (a == b) {
      has_cycle_[a] = 1;
      edges_[a] += 1;
      return {UnionReport::cycle_closed, a, -1};
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    edges_[a] += edges_[b] + 1;
    has_cycle_[a] = static_cast<uint8_t>(has_cycle_[a] | has_cycle_[b]);
    if (color_[a] == Color::blue || color_[b] == Color::blue) color_[a] = Color::blue;
    return {UnionReport::merged, a, b};
  }

  enum class Filter { all, white, blue };

  // Non-increasing component sizes matching the filter.
  std::vector<int32_t> component_size_vector(Filter f = Filter::all) const {
    std::vector<int32_t> out;
    for (int32_t v = 0; v < n_; ++v) {
      if (find(v) != v) continue;
      if (f == Filter::white && color_[v] != Color::white) continue;
      if (f == Filter::blue && color_[v] != Color::blue) continue;
      out.push_back(size_[v]);
    }
    std::sort(out.begin(), out.end(), std::greater<int32_t>());
    return out;
  }

  int32_t component_count() const {
    int32_t c = 0;
    for (int32_t v = 0; v < n_; ++v) c += (find(v) == v);
    return c;
  }

private:
  void check(int32_t v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("ComponentTable: vertex out of range");
  }

  int32_t n_ = 0;
  mutable std::vector<int32_t> parent_;
  std::vector<int32_t> size_;
  std::vector<int64_t> edges_;
  std::vector<Color> color_;
  std::vector<uint8_t> has_cycle_;
};

} // namespace parkfrozen
