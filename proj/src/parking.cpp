#include "parkfrozen/parking.hpp"

#include <algorithm>
#include <stdexcept>

namespace parkfrozen {

RootedTree RootedTree::from_parents(std::vector<int32_t> parents) {
  RootedTree t;
  t.n = static_cast<int32_t>(parents.size());
  t.parent = std::move(parents);
  for (int32_t v = 0; v < t.n; ++v) {
    if (t.parent[v] < 0) {
      if (t.root >= 0) throw std::invalid_argument("RootedTree: several roots");
      t.root = v;
    }
  }
  if (t.root < 0) throw std::invalid_argument("RootedTree: no root");
  if (!t.valid()) throw std::invalid_argument("RootedTree: parent links are not a tree");
  return t;
}

bool RootedTree::valid() const {
  if (n <= 0 || root < 0 || root >= n || parent[root] != -1) return false;
  // Every vertex must reach the root without cycling.
  std::vector<uint8_t> state(n, 0); // 0 unseen, 1 in progress, 2 ok
  for (int32_t v = 0; v < n; ++v) {
    int32_t u = v;
    std::vector<int32_t> path;
    while (state[u] == 0 && u != root) {
      state[u] = 1;
      path.push_back(u);
      u = parent[u];
      if (u < 0 || u >= n) return false;
      if (state[u] == 1) return false;
    }
    for (int32_t w : path) state[w] = 2;
  }
  return true;
}

int64_t ParkingOutcome::parked_count() const {
  int64_t c = 0;
  for (int32_t o : occupant) c += (o != 0);
  return c;
}

ParkingOutcome park_sequence(const RootedTree& tree, const std::vector<int32_t>& arrivals,
                             TraversalLog* log) {
  ParkingOutcome out;
  out.occupant.assign(tree.n, 0);
  out.flux.assign(tree.n, 0);
  if (log != nullptr && log->enabled) log->edges_per_car.assign(arrivals.size(), {});

  for (size_t i = 0; i < arrivals.size(); ++i) {
    int32_t car = static_cast<int32_t>(i) + 1;
    int32_t v = arrivals[i];
    if (v < 0 || v >= tree.n) throw std::out_of_range("park_sequence: arrival out of range");
    while (out.occupant[v] != 0) {
      if (v == tree.root) {
        v = -1; // exits through the root
        break;
      }
      out.flux[v] += 1;
      out.total_distance += 1;
      if (log != nullptr && log->enabled) log->edges_per_car[i].push_back(v);
      v = tree.parent[v];
    }
    if (v < 0) {
      out.unparked.push_back(car);
    } else {
      out.occupant[v] = car;
    }
  }
  return out;
}

ParkingOutcome park_on_mapping(const Mapping& map, const std::vector<int32_t>& arrivals) {
  ParkingOutcome out;
  out.occupant.assign(map.n, 0);
  out.flux.assign(map.n, 0);

  for (size_t i = 0; i < arrivals.size(); ++i) {
    int32_t car = static_cast<int32_t>(i) + 1;
    int32_t v = arrivals[i];
    if (v < 0 || v >= map.n) throw std::out_of_range("park_on_mapping: arrival out of range");
    int32_t steps = 0;
    std::vector<int32_t> trail;
    while (out.occupant[v] != 0) {
      if (++steps > map.n) { // endless loop
        v = -1;
        break;
      }
      trail.push_back(v);
      v = map.target[v];
    }
    if (v < 0) {
      out.unparked.push_back(car);
    } else {
      out.occupant[v] = car;
      for (int32_t w : trail) out.flux[w] += 1;
      out.total_distance += static_cast<int64_t>(trail.size());
    }
  }
  return out;
}

namespace {

// Small scratch union-find for decompositions.
struct MiniDsu {
  std::vector<int32_t> parent;
  explicit MiniDsu(int32_t n) : parent(n) {
    for (int32_t i = 0; i < n; ++i) parent[i] = i;
  }
  int32_t find(int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int32_t a, int32_t b) { parent[find(a)] = find(b); }
};

} // namespace

ComponentDecomposition decompose(const RootedTree& tree, const ParkingOutcome& outcome,
                                 ComponentKind kind) {
  if (static_cast<int32_t>(outcome.occupant.size()) != tree.n)
    throw std::domain_error("decompose: outcome does not match tree");

  MiniDsu dsu(tree.n);
  for (int32_t v = 0; v < tree.n; ++v) {
    if (v == tree.root) continue;
    bool keep = false;
    switch (kind) {
      case ComponentKind::strong: keep = outcome.flux[v] > 0; break;
      case ComponentKind::full: keep = outcome.occupant[v] != 0 && outcome.occupant[tree.parent[v]] != 0; break;
      case ComponentKind::near: keep = outcome.occupant[v] != 0; break;
    }
    if (keep) dsu.unite(v, tree.parent[v]);
  }

  ComponentDecomposition d;
  d.kind = kind;
  d.comp_id.assign(tree.n, -1);
  for (int32_t v = 0; v < tree.n; ++v) {
    int32_t r = dsu.find(v);
    if (d.comp_id[r] < 0) {
      d.comp_id[r] = static_cast<int32_t>(d.components.size());
      d.components.emplace_back();
      d.cars_per_component.push_back(0);
    }
    d.comp_id[v] = d.comp_id[r];
    d.components[d.comp_id[v]].push_back(v);
    if (outcome.occupant[v] != 0) d.cars_per_component[d.comp_id[v]] += 1;
  }
  d.root_component = d.comp_id[tree.root];

  bool exits = !outcome.unparked.empty();
  if (kind == ComponentKind::near) {
    d.root_component_is_blue = outcome.occupant[tree.root] != 0;
  } else {
    d.root_component_is_blue = exits;
  }
  return d;
}

std::vector<int32_t> ComponentDecomposition::sizes_descending() const {
  std::vector<int32_t> s;
  s.reserve(components.size());
  for (const auto& c : components) s.push_back(static_cast<int32_t>(c.size()));
  std::sort(s.begin(), s.end(), std::greater<int32_t>());
  return s;
}

int32_t BitypeTree::disk_count() const {
  int32_t c = 0;
  for (const auto& nd : nodes) c += nd.is_disk;
  return c;
}

int32_t BitypeTree::square_count() const {
  return static_cast<int32_t>(nodes.size()) - disk_count();
}

std::vector<int32_t> BitypeTree::square_degrees() const {
  std::vector<int32_t> out;
  for (const auto& nd : nodes)
    if (!nd.is_disk) out.push_back(static_cast<int32_t>(nd.children.size()));
  return out;
}

BitypeTree bitype_decompose(const RootedTree& tree, const ParkingOutcome& outcome) {
  // Input must be a nearly parked tree: root free, everyone else parked.
  if (!outcome.unparked.empty() || outcome.occupant[tree.root] != 0)
    throw std::domain_error("bitype_decompose: input is not nearly parked");
  for (int32_t v = 0; v < tree.n; ++v)
    if (v != tree.root && outcome.occupant[v] == 0)
      throw std::domain_error("bitype_decompose: input is not nearly parked");

  ComponentDecomposition strong = decompose(tree, outcome, ComponentKind::strong);

  std::vector<std::vector<int32_t>> children(tree.n);
  for (int32_t v = 0; v < tree.n; ++v)
    if (v != tree.root) children[tree.parent[v]].push_back(v);

  BitypeTree bt;
  bt.nodes.push_back({true, tree.root, {}});

  // Walk disks; each zero-flux child edge attaches the child's whole strong
  // component as a square, whose children are that component's vertices.
  std::vector<std::pair<int32_t, int32_t>> stack; // (vertex, bitype node index)
  stack.emplace_back(tree.root, 0);
  while (!stack.empty()) {
    auto [v, node_idx] = stack.back();
    stack.pop_back();
    for (int32_t c : children[v]) {
      if (outcome.flux[c] > 0) continue; // same strong component, not a new square
      int32_t comp = strong.comp_id[c];
      int32_t sq = static_cast<int32_t>(bt.nodes.size());
      bt.nodes.push_back({false, comp, {}});
      bt.nodes[node_idx].children.push_back(sq);
      for (int32_t w : strong.components[comp]) {
        int32_t dk = static_cast<int32_t>(bt.nodes.size());
        bt.nodes.push_back({true, w, {}});
        bt.nodes[sq].children.push_back(dk);
        stack.emplace_back(w, dk);
      }
    }
  }
  return bt;
}

} // namespace parkfrozen
