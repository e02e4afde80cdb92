#include "parkfrozen/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parkfrozen/frozen.hpp"

namespace parkfrozen {

std::vector<std::pair<int32_t, int32_t>> uniform_unrooted_tree_edges(int32_t k, Rng& rng) {
  std::vector<std::pair<int32_t, int32_t>> edges;
  if (k <= 1) return edges;
  if (k == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<int32_t> prufer(k - 2);
  for (auto& x : prufer) x = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(k)));

  std::vector<int32_t> degree(k, 1);
  for (int32_t x : prufer) degree[x] += 1;
  int32_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int32_t leaf = ptr;
  for (int32_t x : prufer) {
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, k - 1);
  return edges;
}

RootedTree uniform_rooted_tree(int32_t n, Rng& rng) {
  auto edges = uniform_unrooted_tree_edges(n, rng);
  int32_t root = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(n)));
  std::vector<std::vector<int32_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int32_t> parent(n, -1);
  std::vector<int32_t> stack = {root};
  std::vector<uint8_t> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int32_t v = stack.back();
    stack.pop_back();
    for (int32_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  RootedTree t;
  t.n = n;
  t.root = root;
  t.parent = std::move(parent);
  return t;
}

// ---- InstructionSet -----------------------------------------------------------

InstructionSet::InstructionSet(int32_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("InstructionSet: n must be >= 1");
  target_.assign(n, -2);
  parent_.resize(n);
  size_.assign(n, 1);
  members_.resize(n);
  for (int32_t v = 0; v < n; ++v) {
    parent_[v] = v;
    members_[v] = {v};
  }
}

int32_t InstructionSet::find(int32_t v) const {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

int32_t InstructionSet::comp_root(int32_t v) const { return find(v); }
int32_t InstructionSet::comp_size(int32_t v) const { return size_[find(v)]; }

bool InstructionSet::is_blue(int32_t v) const {
  return blue_root_ >= 0 && find(v) == blue_root_;
}

int32_t InstructionSet::blue_size() const {
  return blue_root_ >= 0 ? size_[blue_root_] : 0;
}

int32_t InstructionSet::drive(int32_t v) const {
  while (true) {
    int32_t t = target_[v];
    if (t == -2) return v;
    if (t == -1) return -1;
    v = t;
  }
}

void InstructionSet::add_instruction(int32_t v, int32_t t) {
  if (target_[v] != -2) throw std::logic_error("add_instruction: target already revealed");
  target_[v] = t;
  revealed_count_ += 1;
  if (t == -1) {
    if (blue_root_ >= 0) throw std::logic_error("add_instruction: root revealed twice");
    blue_root_ = find(v);
    return;
  }
  int32_t a = find(v), b = find(t);
  if (a == b) throw std::logic_error("add_instruction: instruction closes a cycle");
  bool blue = (a == blue_root_) || (b == blue_root_);
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
  members_[b].clear();
  members_[b].shrink_to_fit();
  if (blue) blue_root_ = a;
}

const std::vector<int32_t>& InstructionSet::blue_members() const {
  if (blue_root_ < 0) throw std::logic_error("blue_members: no blue tree yet");
  return members_[blue_root_];
}

RootedTree InstructionSet::to_tree() const {
  if (!complete()) throw std::logic_error("to_tree: exploration incomplete");
  std::vector<int32_t> parent(n_);
  for (int32_t v = 0; v < n_; ++v) parent[v] = (target_[v] == -1) ? -1 : target_[v];
  return RootedTree::from_parents(std::move(parent));
}

int32_t peel_step(InstructionSet& s, int32_t v, Rng& rng) {
  if (s.target(v) != -2 || s.is_blue(v))
    throw std::domain_error("peel_step: vertex is not a peelable white root");
  const int32_t n = s.n();
  int32_t w = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(n)));
  int32_t target;
  if (!s.has_blue()) {
    // A uniform vertex inside v's own tree stands for the root marker: that
    // event has probability k/n and the rest is uniform outside, as required.
    target = (s.comp_root(w) == s.comp_root(v)) ? -1 : w;
  } else {
    if (s.comp_root(w) == s.comp_root(v) || s.is_blue(w)) {
      // probability (l + k)/n in total: give the mass to a uniform blue vertex
      const auto& blue = s.blue_members();
      target = blue[rng.next_below(static_cast<uint32_t>(blue.size()))];
    } else {
      target = w;
    }
  }
  s.add_instruction(v, target);
  return target;
}

// ---- Coupled construction -------------------------------------------------

namespace {

// Mapping-side state: targets plus a union-find with a cycle flag.
struct MappingState {
  explicit MappingState(int32_t n) : target(n, -2), parent(n), size(n, 1), cyc(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::vector<int32_t> target;
  std::vector<int32_t> parent;
  std::vector<int32_t> size;
  std::vector<uint8_t> cyc;

  int32_t find(int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void add(int32_t v, int32_t t) {
    target[v] = t;
    int32_t a = find(v), b = find(t);
    if (a == b) {
      cyc[a] = 1;
      return;
    }
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    cyc[a] |= cyc[b];
  }
  int32_t drive(int32_t v, int32_t n) {
    // a component with an oriented cycle has no free vertex: endless loop
    if (cyc[find(v)]) return -1;
    int32_t steps = 0;
    while (target[v] >= 0) {
      v = target[v];
      if (++steps > n) return -1; // unreachable guard
    }
    return v;
  }
};

} // namespace

static CoupledRun couple_run(CoupleKind kind, int64_t n, uint64_t seed, int64_t m_max) {
  CoupledRun run;
  run.kind = kind;
  run.n = n;
  run.m = m_max;
  run.seed = seed;
  run.spots.reserve(m_max);
  run.step_target.reserve(m_max);

  EdgeStream stream(n, seed);
  Rng blue_rng(seed, 9); // redirection randomness, independent of the stream
  FrozenState frozen(n);
  InstructionSet instr(kind == CoupleKind::tree ? static_cast<int32_t>(n) : 1);
  MappingState map_state(kind == CoupleKind::mapping ? static_cast<int32_t>(n) : 1);

  for (int64_t m = 1; m <= m_max; ++m) {
    OrientedEdge e = stream.next();
    int64_t discarded_before = frozen.discarded;
    frozen_step(frozen, e, 0.0);
    if (frozen.discarded > discarded_before) run.discarded.push_back(m);

    int32_t spot = (kind == CoupleKind::tree)
                       ? instr.drive(e.tail)
                       : map_state.drive(e.tail, static_cast<int32_t>(n));
    run.spots.push_back(spot);
    if (spot < 0) {
      run.unparked.push_back(static_cast<int32_t>(m));
      run.step_target.push_back(-2);
      continue;
    }

    int32_t target;
    if (kind == CoupleKind::mapping) {
      target = e.head; // sigma(zeta_m) = Y_m
      map_state.add(spot, target);
    } else {
      if (instr.comp_root(e.head) == instr.comp_root(spot)) {
        // the raw target would close a cycle: reveal the root, or redirect
        // to a uniform vertex of the blue tree
        if (!instr.has_blue()) {
          target = -1;
        } else {
          const auto& blue = instr.blue_members();
          target = blue[blue_rng.next_below(static_cast<uint32_t>(blue.size()))];
        }
      } else {
        target = e.head;
      }
      instr.add_instruction(spot, target);
    }
    run.step_target.push_back(target);
  }

  if (kind == CoupleKind::tree) {
    run.final_target.assign(static_cast<size_t>(n), -2);
    for (int32_t v = 0; v < static_cast<int32_t>(n); ++v) run.final_target[v] = instr.target(v);
    run.complete = instr.complete();
  } else {
    run.final_target = map_state.target;
    run.complete = std::none_of(run.final_target.begin(), run.final_target.end(),
                                [](int32_t t) { return t == -2; });
  }
  return run;
}

CoupledRun couple_mapping(int64_t n, uint64_t seed, int64_t m_max) {
  return couple_run(CoupleKind::mapping, n, seed, m_max);
}

CoupledRun couple_tree(int64_t n, uint64_t seed, int64_t m_max) {
  return couple_run(CoupleKind::tree, n, seed, m_max);
}

RootedTree couple_tree_until_complete(int64_t n, uint64_t seed, int64_t safety_cap) {
  if (safety_cap <= 0)
    safety_cap = 256 * n * (static_cast<int64_t>(std::log(static_cast<double>(n) + 1.0)) + 2) + 4096;

  EdgeStream stream(n, seed);
  Rng blue_rng(seed, 9);
  InstructionSet instr(static_cast<int32_t>(n));
  for (int64_t m = 1; m <= safety_cap && !instr.complete(); ++m) {
    OrientedEdge e = stream.next();
    int32_t spot = instr.drive(e.tail);
    if (spot < 0) continue;
    int32_t target;
    if (instr.comp_root(e.head) == instr.comp_root(spot)) {
      if (!instr.has_blue()) {
        target = -1;
      } else {
        const auto& blue = instr.blue_members();
        target = blue[blue_rng.next_below(static_cast<uint32_t>(blue.size()))];
      }
    } else {
      target = e.head;
    }
    instr.add_instruction(spot, target);
  }
  if (!instr.complete())
    throw std::length_error("couple_tree_until_complete: safety cap reached");
  return instr.to_tree();
}

// ---- Verification ----------------------------------------------------------

namespace {

struct VerifySide {
  explicit VerifySide(int32_t n) : parent(n), size(n, 1), blue(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::vector<int32_t> parent;
  std::vector<int32_t> size;
  std::vector<uint8_t> blue; // flag lives at roots

  int32_t find(int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool is_blue(int32_t v) { return blue[find(v)] != 0; }
  void mark_blue(int32_t v) { blue[find(v)] = 1; }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    blue[a] |= blue[b];
  }
  // canonical class label per vertex: blue components lumped when asked
  std::vector<int32_t> canonical(bool lump_blue) {
    int32_t n = static_cast<int32_t>(parent.size());
    std::vector<int32_t> min_of(n, -1), out(n);
    for (int32_t v = 0; v < n; ++v) {
      int32_t r = find(v);
      if (min_of[r] < 0) min_of[r] = v;
    }
    for (int32_t v = 0; v < n; ++v) {
      int32_t r = find(v);
      out[v] = (lump_blue && blue[r]) ? n : min_of[r];
    }
    return out;
  }
};

} // namespace

CouplingReport verify_coupling(const CoupledRun& run) {
  const int32_t n = static_cast<int32_t>(run.n);
  const bool tree_kind = run.kind == CoupleKind::tree;
  EdgeStream stream(run.n, run.seed);
  FrozenState frozen(run.n);
  VerifySide pside(n);     // parking-side components, rebuilt from the record
  std::vector<int32_t> ptarget(n, -2);
  std::vector<int32_t> unparked_replay;
  std::vector<int64_t> discarded_replay;

  CouplingReport rep;
  auto fail = [&](int64_t m, const std::string& why) {
    rep.ok = false;
    rep.first_failing_m = m;
    rep.diff = why;
    return rep;
  };

  const int64_t checkpoint = std::max<int64_t>(1, run.m / 8);
  for (int64_t m = 1; m <= run.m; ++m) {
    OrientedEdge e = stream.next();
    // --- frozen side
    bool x_blue = frozen.table.color_of(e.tail) == Color::blue;
    bool y_blue = frozen.table.color_of(e.head) == Color::blue;
    bool same_comp = frozen.table.find(e.tail) == frozen.table.find(e.head);
    int32_t fx_size = frozen.table.size_of(e.tail);
    int32_t fy_size = frozen.table.size_of(e.head);
    frozen_step(frozen, e, 0.0);
    bool dropped = (x_blue && y_blue) || (x_blue && !y_blue);
    if (dropped) discarded_replay.push_back(m);

    // --- parking side, from the record
    int32_t spot = run.spots[m - 1];
    int32_t target = run.step_target[m - 1];

    if (dropped != (spot < 0))
      return fail(m, dropped ? "F drops the edge but the car parks"
                             : "car exits but F keeps the edge");
    if (spot < 0) {
      unparked_replay.push_back(static_cast<int32_t>(m));
      if (!pside.is_blue(e.tail))
        return fail(m, "car exits from a component that is not blue on the parking side");
      continue;
    }

    // the car parked: X must be white on both sides, spots stay in X's component
    if (x_blue) return fail(m, "internal: kept edge with blue tail");
    if (pside.is_blue(e.tail)) return fail(m, "parking side believes the arrival is blue");
    if (pside.find(spot) != pside.find(e.tail))
      return fail(m, "recorded spot lies outside the arrival component");
    if (ptarget[spot] != -2) return fail(m, "recorded spot already occupied");
    if (pside.size[pside.find(e.tail)] != fx_size)
      return fail(m, "component of the arrival differs in size between the two sides");

    if (!x_blue && !y_blue && !same_comp) {
      // white-white merge
      if (target != e.head) return fail(m, "expected a plain merge instruction");
      if (pside.is_blue(e.head)) return fail(m, "parking side believes the head is blue");
      if (pside.size[pside.find(e.head)] != fy_size)
        return fail(m, "component of the head differs in size between the two sides");
      ptarget[spot] = target;
      pside.unite(spot, target);
    } else if (!x_blue && !y_blue && same_comp) {
      // cycle: F freezes the component; the record must reveal the root or
      // redirect into the blue tree (tree kind), or close the loop (mapping).
      if (tree_kind) {
        if (target == -1) {
          if (pside.is_blue(e.tail)) return fail(m, "root revealed twice");
          bool any_blue = false;
          for (int32_t v = 0; v < n && !any_blue; ++v) any_blue = pside.is_blue(v);
          if (any_blue) return fail(m, "root marker while a blue tree already exists");
          ptarget[spot] = -1;
          pside.mark_blue(e.tail);
        } else {
          if (!pside.is_blue(target)) return fail(m, "redirection target is not blue");
          ptarget[spot] = target;
          pside.unite(spot, target);
        }
      } else {
        if (target != e.head) return fail(m, "mapping record must keep the raw target");
        ptarget[spot] = target;
        pside.mark_blue(e.tail); // closes an oriented cycle: surplus component
      }
    } else {
      // mixed kept offer: white -> blue
      if (y_blue && !x_blue) {
        if (target != e.head) return fail(m, "expected the raw target toward the freezer");
        if (!pside.is_blue(e.head)) return fail(m, "head is frozen in F but not on the parking side");
        ptarget[spot] = target;
        pside.unite(spot, target);
      } else {
        return fail(m, "internal: unexpected kept case");
      }
    }

    if (m % checkpoint == 0 || m == run.m) {
      // exact partition comparison
      std::vector<int32_t> fmin(n, -1), fclass(n);
      for (int32_t v = 0; v < n; ++v) {
        int32_t r = frozen.table.find(v);
        if (fmin[r] < 0) fmin[r] = v;
      }
      for (int32_t v = 0; v < n; ++v) {
        int32_t r = frozen.table.find(v);
        bool b = frozen.table.color_of(v) == Color::blue;
        fclass[v] = (tree_kind && b) ? n : fmin[r];
      }
      std::vector<int32_t> pclass = pside.canonical(tree_kind);
      for (int32_t v = 0; v < n; ++v) {
        if (fclass[v] != pclass[v])
          return fail(m, "component partitions differ at vertex " + std::to_string(v + 1));
        bool fb = frozen.table.color_of(v) == Color::blue;
        if (fb != pside.is_blue(v))
          return fail(m, "blue sets differ at vertex " + std::to_string(v + 1));
      }
    }
  }

  if (unparked_replay != run.unparked)
    return fail(run.m, "recorded unparked car indices differ from the replay");
  if (discarded_replay != run.discarded)
    return fail(run.m, "recorded discarded edge indices differ from the replay");
  if (run.unparked.size() != run.discarded.size())
    return fail(run.m, "discarded and unparked index sets have different sizes");
  for (size_t i = 0; i < run.unparked.size(); ++i) {
    if (static_cast<int64_t>(run.unparked[i]) != run.discarded[i])
      return fail(run.m, "discarded and unparked index sets differ");
  }
  return rep;
}

// ---- Nearly parked sampler --------------------------------------------------

NearlyParkedSample nearly_parked_from_labeled_tree(int32_t N, const std::vector<int32_t>& tails,
                                                   const std::vector<int32_t>& heads,
                                                   TraversalLog* log) {
  if (static_cast<int32_t>(tails.size()) != N - 1 || heads.size() != tails.size())
    throw std::invalid_argument("nearly_parked_from_labeled_tree: need N-1 oriented edges");

  NearlyParkedSample s;
  s.tails = tails;
  s.heads = heads;
  s.arrivals = tails;
  if (log != nullptr && log->enabled) log->edges_per_car.assign(N - 1, {});

  std::vector<int32_t> target(N, -2);
  ParkingOutcome out;
  out.occupant.assign(N, 0);
  out.flux.assign(N, 0);

  for (int32_t i = 1; i <= N - 1; ++i) {
    int32_t v = tails[i - 1];
    while (target[v] != -2) {
      out.flux[v] += 1;
      out.total_distance += 1;
      if (log != nullptr && log->enabled) log->edges_per_car[i - 1].push_back(v);
      v = target[v];
    }
    out.occupant[v] = i;
    target[v] = heads[i - 1]; // redirection of the i-th edge starts at the spot
  }

  int32_t root = -1;
  for (int32_t v = 0; v < N; ++v)
    if (target[v] == -2) {
      if (root >= 0) throw std::logic_error("nearly_parked_from_labeled_tree: two free vertices");
      root = v;
    }
  std::vector<int32_t> parent(N);
  for (int32_t v = 0; v < N; ++v) parent[v] = (v == root) ? -1 : target[v];
  s.tree = RootedTree::from_parents(std::move(parent));
  s.outcome = std::move(out);
  return s;
}

NearlyParkedSample sample_nearly_parked(int32_t N, uint64_t seed) {
  if (N < 1) throw std::invalid_argument("sample_nearly_parked: N must be >= 1");
  Rng rng(seed, 11);
  auto edges = uniform_unrooted_tree_edges(N, rng);

  // uniform labeling: shuffle the edge slots, then orient each by a fair coin
  std::vector<int32_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  for (int32_t i = static_cast<int32_t>(order.size()) - 1; i > 0; --i) {
    int32_t j = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  std::vector<int32_t> tails(edges.size()), heads(edges.size());
  for (size_t l = 0; l < edges.size(); ++l) {
    auto [a, b] = edges[order[l]];
    if (rng.next_bit()) std::swap(a, b);
    tails[l] = a;
    heads[l] = b;
  }
  return nearly_parked_from_labeled_tree(N, tails, heads);
}

// ---- Record predicate --------------------------------------------------------

bool car_passes_edge(int32_t N, const std::vector<int32_t>& tails,
                     const std::vector<int32_t>& heads, int32_t i, int32_t j) {
  if (!(1 <= i && i < j && j <= N - 1)) throw std::domain_error("car_passes_edge: need 1 <= i < j <= N-1");

  std::vector<std::vector<std::pair<int32_t, int32_t>>> adj(N); // (neighbor, label)
  for (int32_t l = 1; l <= N - 1; ++l) {
    adj[tails[l - 1]].emplace_back(heads[l - 1], l);
    adj[heads[l - 1]].emplace_back(tails[l - 1], l);
  }

  auto bfs = [&](int32_t src, std::vector<int32_t>& par, std::vector<int32_t>& dist) {
    par.assign(N, -1);
    dist.assign(N, -1);
    std::vector<int32_t> queue = {src};
    dist[src] = 0;
    for (size_t q = 0; q < queue.size(); ++q) {
      int32_t v = queue[q];
      for (auto [w, l] : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          par[w] = v;
          queue.push_back(w);
        }
      }
    }
  };

  // the longest of the four endpoint-to-endpoint paths contains both edges
  int32_t ai = tails[i - 1], bi = heads[i - 1];
  int32_t aj = tails[j - 1], bj = heads[j - 1];
  std::vector<int32_t> par_a, dist_a, par_b, dist_b;
  bfs(ai, par_a, dist_a);
  bfs(bi, par_b, dist_b);
  int32_t best = -1, x = -1, y = -1;
  for (auto [xx, da, pa] : {std::tuple{ai, &dist_a, &par_a}, std::tuple{bi, &dist_b, &par_b}}) {
    for (int32_t yy : {aj, bj}) {
      int32_t d = (*da)[yy];
      if (d > best) {
        best = d;
        x = xx;
        y = yy;
      }
      (void)pa;
    }
  }
  const std::vector<int32_t>& par = (x == ai) ? par_a : par_b;

  std::vector<int32_t> path; // vertices y .. x, reversed below
  for (int32_t v = y; v != -1; v = par[v]) path.push_back(v);
  std::reverse(path.begin(), path.end()); // now x = v_0 .. y = v_s

  auto label_of = [&](int32_t u, int32_t v) {
    for (auto [w, l] : adj[u])
      if (w == v) return l;
    return -1;
  };
  const int32_t s = static_cast<int32_t>(path.size()) - 1;
  std::vector<int32_t> labels(s + 1, 0); // labels[t] for t = 1..s
  for (int32_t t = 1; t <= s; ++t) labels[t] = label_of(path[t - 1], path[t]);
  if (labels[1] != i || labels[s] != j)
    throw std::logic_error("car_passes_edge: path extraction failed");

  // ascending records of labels[1..s]
  int32_t maxrec = labels[1];
  std::vector<int32_t> record_pos = {1};
  for (int32_t t = 2; t <= s; ++t) {
    if (labels[t] > maxrec) {
      maxrec = labels[t];
      record_pos.push_back(t);
    }
  }
  if (maxrec != j) return false; // j must be the maximal record

  // records before j point away from edge j (toward v_0); edge j points away
  // from edge i (toward v_s)
  for (size_t r = 0; r + 1 < record_pos.size(); ++r) {
    int32_t t = record_pos[r];
    int32_t l = labels[t];
    if (!(tails[l - 1] == path[t] && heads[l - 1] == path[t - 1])) return false;
  }
  return tails[j - 1] == path[s - 1] && heads[j - 1] == path[s];
}

// ---- Condensation statistics (declared in parking.hpp) ------------------------

CondensationSummary condensation_stats(int32_t N, int64_t samples, uint64_t seed) {
  CondensationSummary sum;
  sum.samples = samples;
  std::vector<double> mf_fracs;
  mf_fracs.reserve(samples);
  double acc_mf = 0.0, acc_ms = 0.0, acc2_mf = 0.0, acc2_ms = 0.0;

  for (int64_t rep = 0; rep < samples; ++rep) {
    NearlyParkedSample s = sample_nearly_parked(N, replica_seed(seed, rep));
    const RootedTree& t = s.tree;

    // subtree sizes by processing vertices farthest-first
    std::vector<int32_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int32_t> depth(N, 0);
    {
      std::vector<std::vector<int32_t>> children(N);
      for (int32_t v = 0; v < N; ++v)
        if (v != t.root) children[t.parent[v]].push_back(v);
      std::vector<int32_t> stack = {t.root};
      std::vector<int32_t> topo;
      while (!stack.empty()) {
        int32_t v = stack.back();
        stack.pop_back();
        topo.push_back(v);
        for (int32_t c : children[v]) {
          depth[c] = depth[v] + 1;
          stack.push_back(c);
        }
      }
      std::vector<int64_t> size(N, 1);
      for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        if (*it != t.root) size[t.parent[*it]] += size[*it];
      // largest and second largest fully parked tree above the root
      int64_t mf1 = 0, mf2 = 0;
      for (int32_t c : children[t.root]) {
        if (size[c] >= mf1) {
          mf2 = mf1;
          mf1 = size[c];
        } else if (size[c] > mf2) {
          mf2 = size[c];
        }
      }
      double f1 = static_cast<double>(mf1) / N;
      mf_fracs.push_back(f1);
      acc_mf += f1;
      acc2_mf += static_cast<double>(mf2) / N;
    }

    // largest strong component
    {
      ComponentDecomposition strong = decompose(t, s.outcome, ComponentKind::strong);
      int64_t ms1 = 0, ms2 = 0;
      for (const auto& comp : strong.components) {
        int64_t sz = static_cast<int64_t>(comp.size());
        if (sz >= ms1) {
          ms2 = ms1;
          ms1 = sz;
        } else if (sz > ms2) {
          ms2 = sz;
        }
      }
      acc_ms += static_cast<double>(ms1) / N;
      acc2_ms += static_cast<double>(ms2) / N;
    }
  }

  sum.mean_mf_fraction = acc_mf / samples;
  sum.mean_ms_fraction = acc_ms / samples;
  sum.mean_second_mf = acc2_mf / samples;
  sum.mean_second_ms = acc2_ms / samples;
  std::sort(mf_fracs.begin(), mf_fracs.end());
  sum.q10_mf = mf_fracs[static_cast<size_t>(0.10 * (samples - 1))];
  sum.q90_mf = mf_fracs[static_cast<size_t>(0.90 * (samples - 1))];
  return sum;
}

} // namespace parkfrozen
