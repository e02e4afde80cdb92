#include "parkfrozen/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "parkfrozen/airy.hpp"
#include "parkfrozen/coupling.hpp"
#include "parkfrozen/enumeration.hpp"
#include "parkfrozen/experiment.hpp"
#include "parkfrozen/frozen.hpp"
#include "parkfrozen/mulaw.hpp"
#include "parkfrozen/numerics.hpp"
#include "parkfrozen/parking.hpp"

namespace parkfrozen {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& s) {
    if (ok) detail = s;
    ok = false;
  }
  void require(bool cond, const std::string& s) {
    if (!cond) fail(s);
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

// Run fn(i) for i in [0, count) on the worker pool.
void parallel_for(int64_t count, const std::function<void(int64_t)>& fn) {
  int workers = std::min<int64_t>(thread_count(), count);
  if (workers <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        int64_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

// ---------- criterion 1: oracle equality ------------------------------------

Check criterion_oracles(bool quick) {
  Check c;
  int32_t forest_n = quick ? 5 : 7;
  for (int32_t n = 1; n <= forest_n && c.ok; ++n)
    for (int32_t m = 0; m <= n - 1 && c.ok; ++m)
      c.require(count_forests(n, m) == brute_force_forests(n, m),
                "forest count mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m));

  int32_t park_n = quick ? 4 : 5;
  for (int32_t n = 1; n <= park_n && c.ok; ++n) {
    for (int32_t m = 0; m <= n - 1 && c.ok; ++m) {
      ParkingFilter root_free;
      root_free.root_empty = true;
      c.require(pf_root(n, m) == brute_force_parking(n, m, root_free),
                "pf_root mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m));
      ParkingFilter all;
      all.all_park = true;
      c.require(pf(n, m) == brute_force_parking(n, m, all),
                "pf mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
    ParkingFilter all;
    all.all_park = true;
    c.require(pf_full(n) == brute_force_parking(n, n, all),
              "pf_full mismatch at n=" + std::to_string(n));
    for (int32_t p = 0; p <= 2 && c.ok; ++p) {
      ParkingFilter strong;
      strong.all_edges_flux = true;
      strong.exits_exactly = p;
      c.require(sp_flux(n, p) == brute_force_parking(n, n + p, strong),
                "sp_flux mismatch at n=" + std::to_string(n) + " p=" + std::to_string(p));
    }
    c.require(sp(n) == sp_flux(n, 0), "sp(n) != sp_flux(n, 0) at n=" + std::to_string(n));
  }
  if (c.ok) c.detail = "forest counts to n=" + std::to_string(forest_n) +
                       ", parking counts to n=" + std::to_string(park_n) + ", all exact";
  return c;
}

// ---------- criterion 2: closed forms ---------------------------------------

Check criterion_closed_forms(bool quick) {
  Check c;
  int32_t order = quick ? 12 : 20;
  for (int64_t n = 1; n <= order && c.ok; ++n) {
    c.require(sp(n) == factorial(static_cast<uint64_t>(2 * n - 2)),
              "sp closed form fails at n=" + std::to_string(n));
    BigCount expect = pow_uint(BigCount(2), static_cast<uint64_t>(n - 1)) *
                      factorial(static_cast<uint64_t>(n - 1)) *
                      pow_uint(BigCount(static_cast<long>(n)),
                               static_cast<uint64_t>(std::max<int64_t>(n - 2, 0)));
    c.require(pf_root(n, n - 1) == expect,
              "nearly-parked closed form fails at n=" + std::to_string(n));
  }
  if (c.ok) {
    IdentityReport rep = series_identities(order);
    c.require(rep.ok, rep.first_failure);
  }
  if (c.ok) c.detail = "closed forms and series identities exact to order " + std::to_string(order);
  return c;
}

// ---------- criterion 3: acyclicity and root flux -----------------------------

Check criterion_acyclicity(bool quick) {
  Check c;
  (void)quick;
  for (int64_t n = 1; n <= 5 && c.ok; ++n) {
    for (int64_t m = 0; m <= n && c.ok; ++m) {
      BigRat lhs(pf(n, m), pow_uint(BigCount(static_cast<long>(n)), static_cast<uint64_t>(n - 1 + m)));
      lhs *= BigRat(BigCount(static_cast<long>(n - m)), BigCount(static_cast<long>(n)));
      lhs.canonicalize();
      BigRat rhs(0);
      if (m <= n - 1) {
        rhs = BigRat(count_forests(n, m) * factorial(static_cast<uint64_t>(m)) *
                         pow_uint(BigCount(2), static_cast<uint64_t>(m)),
                     pow_uint(BigCount(static_cast<long>(n)), static_cast<uint64_t>(2 * m)));
        rhs.canonicalize();
      }
      c.require(lhs == rhs,
                "complete-parking/acyclicity identity fails at n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
    }
  }
  // conditional root occupation, via the brute-force oracle
  for (int32_t n = 1; n <= 4 && c.ok; ++n) {
    for (int32_t m = 0; m <= n - 1 && c.ok; ++m) {
      ParkingFilter all, root_free;
      all.all_park = true;
      root_free.root_empty = true;
      BigRat cond(brute_force_parking(n, m, root_free), brute_force_parking(n, m, all));
      cond.canonicalize();
      BigRat expect(BigCount(static_cast<long>(n - m)), BigCount(static_cast<long>(n)));
      expect.canonicalize();
      c.require(cond == expect, "root-occupation probability fails at n=" + std::to_string(n) +
                                    " m=" + std::to_string(m));
    }
  }
  if (c.ok) c.detail = "both identities exact (n <= 5 resp. n <= 4, all m)";
  return c;
}

// ---------- criterion 4: coupling determinism ---------------------------------

Check criterion_coupling(bool quick) {
  Check c;
  std::vector<int64_t> sizes = quick ? std::vector<int64_t>{50, 500}
                                     : std::vector<int64_t>{50, 500, 5000};
  int64_t seeds = quick ? 10 : 100;
  std::mutex mu;
  for (int64_t n : sizes) {
    int64_t m = (12 * n) / 10;
    parallel_for(seeds, [&](int64_t s) {
      uint64_t seed = replica_seed(1234, static_cast<uint64_t>(n * 1000 + s));
      for (CoupleKind kind : {CoupleKind::tree, CoupleKind::mapping}) {
        CoupledRun run = (kind == CoupleKind::tree) ? couple_tree(n, seed, m)
                                                    : couple_mapping(n, seed, m);
        CouplingReport rep = verify_coupling(run);
        if (!rep.ok) {
          std::lock_guard<std::mutex> lock(mu);
          c.fail("verification failed at n=" + std::to_string(n) + " seed#" + std::to_string(s) +
                 " m=" + std::to_string(rep.first_failing_m) + ": " + rep.diff);
        }
      }
    });
    if (!c.ok) break;
  }
  if (c.ok)
    c.detail = std::to_string(seeds) + " seeds per size, tree and mapping couplings, every step";
  return c;
}

// ---------- criterion 5: exhaustive uniformity --------------------------------

// Exact distribution of the constructed tree T_n by absorbing exits: the state
// never changes when a car exits, so arrivals are uniform over the white
// vertices, and the revealed target follows the peeling kernel exactly.
void enum_tree_dist(int32_t n, std::vector<int32_t>& target, const BigRat& weight,
                    std::map<std::vector<int32_t>, BigRat>& dist, int32_t pinned_first) {
  int32_t revealed = 0;
  for (int32_t v = 0; v < n; ++v) revealed += (target[v] != -2);
  if (revealed == n) {
    dist[target] += weight;
    return;
  }
  // components via a throwaway union-find (n <= 3 here)
  std::vector<int32_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int32_t(int32_t)> find = [&](int32_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (int32_t v = 0; v < n; ++v)
    if (target[v] >= 0) root[find(v)] = find(target[v]);
  int32_t blue_root = -1;
  for (int32_t v = 0; v < n; ++v)
    if (target[v] == -1) blue_root = find(v);
  std::vector<int32_t> blue_members;
  if (blue_root >= 0)
    for (int32_t v = 0; v < n; ++v)
      if (find(v) == blue_root) blue_members.push_back(v);
  int32_t white = n - static_cast<int32_t>(blue_members.size());

  auto drive = [&](int32_t v) {
    while (target[v] >= 0) v = target[v];
    return v; // reaches a free vertex; blue vertices never enter here
  };

  for (int32_t x = 0; x < n; ++x) {
    if (blue_root >= 0 && find(x) == blue_root) continue; // exits, absorbed
    if (pinned_first >= 0 && revealed == 0 && x != pinned_first) continue;
    BigRat wx = weight;
    if (!(pinned_first >= 0 && revealed == 0)) wx /= BigRat(static_cast<long>(white));
    int32_t spot = drive(x);
    for (int32_t y = 0; y < n; ++y) {
      BigRat wy = wx / BigRat(static_cast<long>(n));
      if (find(y) == find(spot)) {
        if (blue_root < 0) {
          target[spot] = -1;
          enum_tree_dist(n, target, wy, dist, pinned_first);
          target[spot] = -2;
        } else {
          BigRat wu = wy / BigRat(static_cast<long>(blue_members.size()));
          for (int32_t u : blue_members) {
            target[spot] = u;
            enum_tree_dist(n, target, wu, dist, pinned_first);
            target[spot] = -2;
          }
        }
      } else {
        target[spot] = y;
        enum_tree_dist(n, target, wy, dist, pinned_first);
        target[spot] = -2;
      }
    }
  }
}

// Exact distribution of the constructed mapping M_n; cars landing on a
// component that already carries an oriented cycle exit without effect.
void enum_mapping_dist(int32_t n, std::vector<int32_t>& target, const BigRat& weight,
                       std::map<std::vector<int32_t>, BigRat>& dist) {
  int32_t revealed = 0;
  for (int32_t v = 0; v < n; ++v) revealed += (target[v] != -2);
  if (revealed == n) {
    dist[target] += weight;
    return;
  }
  std::vector<int32_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int32_t(int32_t)> find = [&](int32_t v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (int32_t v = 0; v < n; ++v)
    if (target[v] >= 0) root[find(v)] = find(target[v]);
  // a component is parkable iff it still has a free vertex
  std::vector<int8_t> comp_free(n, 0);
  for (int32_t v = 0; v < n; ++v)
    if (target[v] == -2) comp_free[find(v)] = 1;
  int32_t parkable = 0;
  for (int32_t v = 0; v < n; ++v) parkable += comp_free[find(v)];

  auto drive = [&](int32_t v) {
    while (target[v] >= 0) v = target[v];
    return v;
  };

  for (int32_t x = 0; x < n; ++x) {
    if (!comp_free[find(x)]) continue; // endless loop, absorbed
    BigRat wx = weight / BigRat(static_cast<long>(parkable));
    int32_t spot = drive(x);
    for (int32_t y = 0; y < n; ++y) {
      target[spot] = y;
      enum_mapping_dist(n, target, wx / BigRat(static_cast<long>(n)), dist);
      target[spot] = -2;
    }
  }
}

Check criterion_uniformity(bool quick) {
  Check c;
  (void)quick;
  // T_n uniform over n^{n-1} rooted trees, n = 2, 3
  for (int32_t n = 2; n <= 3 && c.ok; ++n) {
    std::vector<int32_t> target(n, -2);
    std::map<std::vector<int32_t>, BigRat> dist;
    enum_tree_dist(n, target, BigRat(1), dist, -1);
    BigCount total = pow_uint(BigCount(n), static_cast<uint64_t>(n - 1));
    c.require(dist.size() == static_cast<size_t>(total.get_si()),
              "tree construction misses outcomes at n=" + std::to_string(n));
    BigRat want(BigCount(1), total);
    want.canonicalize();
    BigRat mass(0);
    for (auto& [t, w] : dist) {
      if (w != want) c.fail("tree distribution not uniform at n=" + std::to_string(n));
      mass += w;
    }
    c.require(mass == BigRat(1), "tree distribution does not sum to 1");
    // independence slice: condition on the first arrival
    for (int32_t x = 0; x < n && c.ok; ++x) {
      std::map<std::vector<int32_t>, BigRat> dx;
      std::vector<int32_t> t2(n, -2);
      enum_tree_dist(n, t2, BigRat(1), dx, x);
      for (auto& [t, w] : dx)
        if (w != want) c.fail("tree law depends on the first arrival at n=" + std::to_string(n));
    }
  }
  // M_n uniform over n^n mappings, n = 2, 3
  for (int32_t n = 2; n <= 3 && c.ok; ++n) {
    std::vector<int32_t> target(n, -2);
    std::map<std::vector<int32_t>, BigRat> dist;
    enum_mapping_dist(n, target, BigRat(1), dist);
    BigCount total = pow_uint(BigCount(n), static_cast<uint64_t>(n));
    c.require(dist.size() == static_cast<size_t>(total.get_si()),
              "mapping construction misses outcomes at n=" + std::to_string(n));
    BigRat want(BigCount(1), total);
    want.canonicalize();
    for (auto& [t, w] : dist)
      if (w != want) c.fail("mapping distribution not uniform at n=" + std::to_string(n));
  }
  // nearly parked sampler: the 24 equiprobable inputs at N = 3 hit the 24
  // nearly parked configurations bijectively (and 2 at N = 2)
  for (int32_t N = 2; N <= 3 && c.ok; ++N) {
    std::vector<std::vector<std::pair<int32_t, int32_t>>> trees;
    if (N == 2) {
      trees = {{{0, 1}}};
    } else {
      trees = {{{0, 1}, {0, 2}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 2}}};
    }
    std::map<std::pair<std::vector<int32_t>, std::vector<int32_t>>, int> seen;
    int inputs = 0;
    std::vector<int32_t> perm(N - 1);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (const auto& edges : trees) {
        for (int32_t mask = 0; mask < (1 << (N - 1)); ++mask) {
          std::vector<int32_t> tails(N - 1), heads(N - 1);
          for (int32_t l = 0; l < N - 1; ++l) {
            auto [a, b] = edges[perm[l]];
            if (mask & (1 << l)) std::swap(a, b);
            tails[l] = a;
            heads[l] = b;
          }
          NearlyParkedSample s = nearly_parked_from_labeled_tree(N, tails, heads);
          seen[{s.tree.parent, s.arrivals}] += 1;
          ++inputs;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // brute-force list of nearly parked configurations of size N
    int64_t expected = 0;
    {
      ParkingFilter root_free;
      root_free.root_empty = true;
      expected = brute_force_parking(N, N - 1, root_free).get_si();
    }
    c.require(static_cast<int64_t>(seen.size()) == expected && inputs == expected,
              "nearly parked sampler is not a bijection at N=" + std::to_string(N));
    for (auto& [k, cnt] : seen)
      if (cnt != 1) c.fail("nearly parked sampler repeats an outcome at N=" + std::to_string(N));
  }
  if (c.ok) c.detail = "exact uniform distributions for T_n, M_n (n <= 3) and P_N (N <= 3)";
  return c;
}

// ---------- criterion 6: free forest property ---------------------------------

Check criterion_free_forest(bool quick) {
  Check c;
  (void)quick;
  const int32_t n = 3;
  for (int32_t m = 1; m <= 3 && c.ok; ++m) {
    // key: (white count, white edges) -> canonical white forest -> count
    std::map<std::pair<int32_t, int32_t>, std::map<std::vector<std::pair<int32_t, int32_t>>, int64_t>>
        groups;
    int64_t total = 1;
    for (int32_t i = 0; i < 2 * m; ++i) total *= n;
    for (int64_t code = 0; code < total; ++code) {
      int64_t q = code;
      FrozenState st(n);
      std::vector<std::pair<int32_t, int32_t>> kept;
      for (int32_t i = 1; i <= m; ++i) {
        OrientedEdge e;
        e.tail = static_cast<int32_t>(q % n);
        q /= n;
        e.head = static_cast<int32_t>(q % n);
        q /= n;
        e.index = i;
        int64_t kept_before = st.kept_edges;
        frozen_step(st, e, 0.0);
        if (st.kept_edges > kept_before) kept.emplace_back(e.tail, e.head);
      }
      // white part: kept edges whose endpoints stayed white
      std::vector<int32_t> whites;
      for (int32_t v = 0; v < n; ++v)
        if (st.table.color_of(v) == Color::white) whites.push_back(v);
      std::vector<int32_t> relabel(n, -1);
      for (size_t i = 0; i < whites.size(); ++i) relabel[whites[i]] = static_cast<int32_t>(i);
      std::vector<std::pair<int32_t, int32_t>> wedges;
      for (auto [a, b] : kept) {
        if (relabel[a] >= 0 && relabel[b] >= 0) {
          int32_t x = relabel[a], y = relabel[b];
          wedges.emplace_back(std::min(x, y), std::max(x, y));
        }
      }
      std::sort(wedges.begin(), wedges.end());
      groups[{static_cast<int32_t>(whites.size()), static_cast<int32_t>(wedges.size())}][wedges] += 1;
    }
    for (auto& [key, forests] : groups) {
      auto [nw, ew] = key;
      // every forest in F(nw, ew) appears, all with the same count
      BigCount expect_count = (nw == 0) ? BigCount(ew == 0 ? 1 : 0) : count_forests(nw, ew);
      c.require(static_cast<int64_t>(forests.size()) == expect_count.get_si(),
                "conditioned white forests do not exhaust the forest family (m=" +
                    std::to_string(m) + ")");
      int64_t first = forests.begin()->second;
      for (auto& [f, cnt] : forests)
        if (cnt != first)
          c.fail("conditioned white forest law is not uniform (m=" + std::to_string(m) + ")");
    }
  }
  if (c.ok) c.detail = "all 9^m oriented sequences enumerated for m <= 3, conditional laws uniform";
  return c;
}

// ---------- criterion 7: abelian property -------------------------------------

Check criterion_abelian(bool quick) {
  Check c;
  const int32_t n = 200;
  int64_t instances = quick ? 100 : 1000;
  std::mutex mu;
  parallel_for(instances, [&](int64_t inst) {
    Rng rng(replica_seed(777, inst), 3);
    RootedTree tree = uniform_rooted_tree(n, rng);
    int32_t m = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(12 * n / 10 + 1)));
    std::vector<int32_t> arrivals(m);
    for (auto& a : arrivals) a = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(n)));
    ParkingOutcome base = park_sequence(tree, arrivals);
    std::vector<int32_t> base_spots;
    for (int32_t v = 0; v < n; ++v)
      if (base.occupant[v] != 0) base_spots.push_back(v);
    for (int32_t rep = 0; rep < 5; ++rep) {
      auto shuffled = arrivals;
      for (int32_t i = m - 1; i > 0; --i) {
        int32_t j = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(i + 1)));
        std::swap(shuffled[i], shuffled[j]);
      }
      ParkingOutcome out = park_sequence(tree, shuffled);
      std::vector<int32_t> spots;
      for (int32_t v = 0; v < n; ++v)
        if (out.occupant[v] != 0) spots.push_back(v);
      if (out.flux != base.flux || spots != base_spots ||
          out.unparked.size() != base.unparked.size()) {
        std::lock_guard<std::mutex> lock(mu);
        c.fail("permuting arrivals changed the outcome (instance " + std::to_string(inst) + ")");
      }
    }
  });
  if (c.ok)
    c.detail = std::to_string(instances) + " instances x 5 permutations, flux and spots invariant";
  return c;
}

// ---------- criterion 8: local limit ------------------------------------------

Check criterion_local_limit(bool quick) {
  Check c;
  const int64_t n = quick ? 2000 : 5000;
  const double n23 = std::cbrt(static_cast<double>(n) * static_cast<double>(n));
  std::string measured;
  for (double lam : {-1.0, 0.0, 1.0}) {
    int64_t m = critical_window_m(n, lam);
    double lam_eff = (2.0 * static_cast<double>(m) - n) / n23;
    WalkPmfResult w = walk_pmf(n - m, n);
    double ratio = n23 * w.value / airy_p1(lam_eff);
    measured += "ratio(" + format_double(lam) + ")=" + format_double(ratio) + " ";
    c.require(std::fabs(ratio - 1.0) <= 0.05,
              "local-limit band exceeded at lambda=" + format_double(lam) + ": ratio " +
                  format_double(ratio) + " (the walk value is exact; the finite-size " +
                  "deviation of the n=" + std::to_string(n) + " lattice walk from p1 is ~6% at " +
                  "|lambda| = 1 and the 5% band cannot hold there)");
  }
  double mass = airy_p1_total_mass();
  measured += "p1 mass=" + format_double(mass) + " ";
  c.require(std::fabs(mass - 1.0) <= 1e-6, "p1 does not integrate to 1 (got " + format_double(mass) + ")");
  {
    double left = airy_p1(-6.0);
    double left_asym = std::sqrt(6.0 / (2.0 * M_PI)) * std::exp(-216.0 / 6.0);
    c.require(std::fabs(left / left_asym - 1.0) <= 0.02, "left tail of p1 off at -6");
    double right = airy_p1(20.0);
    double right_asym = std::pow(20.0, -2.5) / std::sqrt(2.0 * M_PI);
    c.require(std::fabs(right / right_asym - 1.0) <= 0.02, "right tail of p1 off at 20");
  }
  c.detail = measured + "(n=" + std::to_string(n) + ")" + (c.ok ? "" : "; " + c.detail);
  return c;
}

// ---------- criterion 9: bridge identity ---------------------------------------

Check criterion_bridge(bool quick) {
  Check c;
  const int64_t n_max = quick ? 60 : 200;
  double worst = 0.0;
  for (int64_t n = 1; n <= n_max && c.ok; ++n) {
    // build all P(S_{n-m} = n) for this n in one sequential sweep
    WalkPmfTable table(static_cast<int32_t>(n), n);
    for (int64_t m = 0; m <= n - 1; ++m) {
      int64_t steps = n - m;
      long double lhs = table.prob(static_cast<int32_t>(steps), n);
      long double log_rhs = static_cast<long double>(steps) * std::log(2.0L) +
                            lgammal(static_cast<long double>(steps) + 1.0L) -
                            static_cast<long double>(n) -
                            lgammal(static_cast<long double>(n) + 1.0L);
      // + log #F(n, m)
      BigCount forests = count_forests(n, m);
      long exp2 = 0;
      double mant = mpz_get_d_2exp(&exp2, forests.get_mpz_t());
      log_rhs += std::log(static_cast<long double>(mant)) +
                 static_cast<long double>(exp2) * std::log(2.0L);
      long double rhs = std::exp(log_rhs);
      double rel = static_cast<double>(std::fabs(lhs / rhs - 1.0L));
      worst = std::max(worst, rel);
      if (rel > 1e-12) {
        c.fail("bridge identity off at n=" + std::to_string(n) + " m=" + std::to_string(m) +
               " (rel " + format_double(rel) + ")");
      }
    }
  }
  if (c.ok)
    c.detail = "worst relative error " + format_double(worst) + " over n <= " + std::to_string(n_max);
  return c;
}

// ---------- criterion 10: expectation formulas ---------------------------------

Check criterion_expectations(bool quick) {
  Check c;
  // exact vs brute force, N <= 5
  for (int32_t N = 1; N <= 5 && c.ok; ++N) {
    const int32_t cars = N - 1;
    int64_t arr_total = 1;
    for (int32_t i = 0; i < cars; ++i) arr_total *= N;
    BigCount configs(0);
    BigCount height_sum(0), flux_sum(0);
    // enumerate rooted trees via the brute-force helper's conventions
    for (int32_t root = 0; root < N; ++root) {
      std::vector<int32_t> parent(N, 0);
      parent[root] = -1;
      // odometer over parent choices of non-root vertices
      while (true) {
        bool valid = true;
        {
          for (int32_t v = 0; v < N && valid; ++v) {
            int32_t u = v, steps = 0;
            while (u != root && steps <= N) {
              u = parent[u];
              ++steps;
              if (u < 0 || u >= N) { valid = false; break; }
            }
            if (steps > N) valid = false;
          }
        }
        if (valid) {
          RootedTree t;
          t.n = N;
          t.root = root;
          t.parent = parent;
          std::vector<int32_t> depth(N, 0);
          // depths via repeated walking (N tiny)
          for (int32_t v = 0; v < N; ++v) {
            int32_t u = v, d = 0;
            while (u != root) {
              u = parent[u];
              ++d;
            }
            depth[v] = d;
          }
          std::vector<int32_t> arrivals(cars, 0);
          for (int64_t code = 0; code < arr_total; ++code) {
            int64_t q = code;
            for (int32_t i = 0; i < cars; ++i) {
              arrivals[i] = static_cast<int32_t>(q % N);
              q /= N;
            }
            ParkingOutcome out = park_sequence(t, arrivals);
            if (!out.unparked.empty() || out.occupant[t.root] != 0) continue;
            configs += 1;
            int64_t h = 0;
            for (int32_t v = 0; v < N; ++v) h += depth[v];
            height_sum += BigCount(static_cast<long>(h));
            flux_sum += BigCount(static_cast<long>(out.total_distance));
          }
        }
        int32_t pos = N - 1;
        while (pos >= 0) {
          if (pos == root) { --pos; continue; }
          if (++parent[pos] < N) break;
          parent[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    BigRat mh(height_sum, configs * BigCount(N));
    mh.canonicalize();
    BigRat mf(flux_sum, configs);
    mf.canonicalize();
    c.require(mh == mean_height_exact(N), "mean height mismatch at N=" + std::to_string(N));
    c.require(mf == mean_total_distance_exact(N),
              "mean total distance mismatch at N=" + std::to_string(N));
  }

  // Monte Carlo at N = 100
  if (c.ok) {
    const int32_t N = 100;
    const int64_t samples = quick ? 1000 : 10000;
    double acc_h = 0.0, acc2_h = 0.0, acc_f = 0.0, acc2_f = 0.0;
    for (int64_t r = 0; r < samples; ++r) {
      NearlyParkedSample s = sample_nearly_parked(N, replica_seed(4242, r));
      std::vector<int32_t> depth(N, 0);
      std::vector<std::vector<int32_t>> children(N);
      for (int32_t v = 0; v < N; ++v)
        if (v != s.tree.root) children[s.tree.parent[v]].push_back(v);
      std::vector<int32_t> stack = {s.tree.root};
      int64_t hsum = 0;
      while (!stack.empty()) {
        int32_t v = stack.back();
        stack.pop_back();
        hsum += depth[v];
        for (int32_t w : children[v]) {
          depth[w] = depth[v] + 1;
          stack.push_back(w);
        }
      }
      double h = static_cast<double>(hsum) / N;
      double f = static_cast<double>(s.outcome.total_distance);
      acc_h += h;
      acc2_h += h * h;
      acc_f += f;
      acc2_f += f * f;
    }
    double mh = acc_h / samples, mf = acc_f / samples;
    double se_h = std::sqrt((acc2_h / samples - mh * mh) / samples);
    double se_f = std::sqrt((acc2_f / samples - mf * mf) / samples);
    double eh = mean_height_exact(N).get_d();
    double ef = mean_total_distance_exact(N).get_d();
    c.require(std::fabs(mh - eh) <= 3.0 * se_h,
              "Monte Carlo mean height off: " + format_double(mh) + " vs " + format_double(eh));
    c.require(std::fabs(mf - ef) <= 3.0 * se_f,
              "Monte Carlo total distance off: " + format_double(mf) + " vs " + format_double(ef));
  }

  // asymptotic ratios at N = 1e5
  if (c.ok) {
    const int64_t N = quick ? 10000 : 100000;
    double nh = mean_height_value(N);
    double nf = mean_total_distance_value(N);
    double ch = std::tgamma(0.75) / (std::pow(2.0, 0.25) * std::sqrt(M_PI));
    double cd = std::tgamma(0.25) / (std::pow(2.0, 1.25) * std::sqrt(M_PI));
    double cd_true = std::tgamma(0.25) / (std::pow(2.0, 1.75) * std::sqrt(M_PI));
    double rh = nh / (ch * std::pow(static_cast<double>(N), 0.75));
    double rf = nf / (cd * std::pow(static_cast<double>(N), 1.25));
    double rf_true = nf / (cd_true * std::pow(static_cast<double>(N), 1.25));
    c.require(std::fabs(rh - 1.0) <= 0.05,
              "height ratio to the N^{3/4} law off: " + format_double(rh));
    c.require(std::fabs(rf - 1.0) <= 0.05,
              "distance ratio to the target constant is " + format_double(rf) +
                  "; the exact sum (checked against brute force) grows with the 2^{7/4} " +
                  "normalization, against which the ratio is " + format_double(rf_true) +
                  ", so the quoted 2^{5/4} target is unattainable");
    c.detail = "exact to N=5, MC at N=100 within 3 sigma, height ratio " + format_double(rh) +
               ", distance ratio " + format_double(rf) + " (vs 2^{7/4} normalization: " +
               format_double(rf_true) + ") at N=" + std::to_string(N) +
               (c.ok ? "" : "; " + c.detail);
  }
  return c;
}

// ---------- criterion 11: scaling exponents -------------------------------------

Check criterion_scaling(bool quick) {
  Check c;
  std::vector<int64_t> sizes = quick ? std::vector<int64_t>{1000, 10000, 100000}
                                     : std::vector<int64_t>{10000, 100000, 1000000};
  const int64_t replicas = quick ? 50 : 200;
  std::vector<double> med_c1, med_d;
  for (int64_t n : sizes) {
    std::vector<double> c1s(replicas), ds(replicas);
    double n23 = std::cbrt(static_cast<double>(n) * static_cast<double>(n));
    double n13 = std::cbrt(static_cast<double>(n));
    parallel_for(replicas, [&](int64_t r) {
      FrozenTrajectory traj =
          run_frozen(n, 0, 0.5, replica_seed(31337, static_cast<uint64_t>(n + r)), {0.0});
      const FrozenSnapshot& snap = traj.snapshots.front();
      c1s[r] = snap.white_sizes.empty() ? 0.0 : snap.white_sizes.front() / n23;
      ds[r] = static_cast<double>(snap.discarded) / n13;
    });
    med_c1.push_back(median(c1s));
    med_d.push_back(median(ds));
  }
  auto spread = [](const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    return (hi - lo) / lo;
  };
  double s1 = spread(med_c1), s2 = spread(med_d);
  c.require(s1 <= 0.25, "largest-white-component medians vary by " + format_double(s1));
  c.require(s2 <= 0.25,
            "discarded-count medians vary by " + format_double(s2) + " (medians " +
                format_double(med_d[0]) + ", " + format_double(med_d[1]) + ", " +
                format_double(med_d[2]) + "); the median count at the smallest size is a " +
                "small integer, so this statistic moves by 30-50% across seed choices and " +
                "the 25% band is not attainable at these sizes");

  CondensationSummary cond =
      condensation_stats(quick ? 1000 : 10000, quick ? 100 : 500, 90210);
  c.require(cond.mean_mf_fraction >= 0.95,
            "largest full component mean fraction " + format_double(cond.mean_mf_fraction));
  c.require(cond.mean_ms_fraction >= 0.45 && cond.mean_ms_fraction <= 0.55,
            "largest strong component mean fraction " + format_double(cond.mean_ms_fraction));
  c.detail = "median spreads " + format_double(s1) + " / " + format_double(s2) +
             ", condensation fractions " + format_double(cond.mean_mf_fraction) + " / " +
             format_double(cond.mean_ms_fraction) + (c.ok ? "" : "; " + c.detail);
  return c;
}

// ---------- criterion 12: kernel agreement --------------------------------------

Check criterion_kernel(bool quick) {
  Check c;
  const int64_t n = quick ? 10000 : 100000;
  const int64_t replicas = 2000;
  JumpDensityComparison cmp = empirical_jump_density(n, 0.5, 2024, replicas, -0.5, 0.5,
                                                     {0.1, 0.4, 0.7, 1.0});
  std::string measured = "bins";
  for (size_t b = 0; b + 1 < cmp.bin_edges.size(); ++b) {
    double rel = std::fabs(cmp.observed[b] / cmp.predicted[b] - 1.0);
    measured += " [" + format_double(cmp.bin_edges[b]) + "," + format_double(cmp.bin_edges[b + 1]) +
                "): obs=" + format_double(cmp.observed[b]) +
                " pred=" + format_double(cmp.predicted[b]);
    c.require(rel <= 0.20, "jump density off by " + format_double(rel) + " in bin " +
                               std::to_string(b));
  }

  // flux martingale: P(D increments | blue mass) = blue mass / n, 4 sigma bands
  {
    const int64_t fn = 2000;
    const int64_t freps = quick ? 1000 : 10000;
    const int64_t m_end = critical_window_m(fn, 2.0);
    const int32_t buckets = 32;
    std::vector<double> trials(buckets, 0.0), hits(buckets, 0.0), expect(buckets, 0.0),
        var(buckets, 0.0);
    std::mutex mu;
    parallel_for(freps, [&](int64_t r) {
      std::vector<double> ltr(buckets, 0.0), lh(buckets, 0.0), lex(buckets, 0.0), lv(buckets, 0.0);
      FrozenState st(fn);
      EdgeStream stream(fn, replica_seed(5150, r));
      for (int64_t m = 1; m <= m_end; ++m) {
        int64_t blue = st.frozen_mass;
        int64_t d0 = st.discarded;
        frozen_step(st, stream.next(), 0.0);
        if (blue == 0) continue;
        double p = static_cast<double>(blue) / fn;
        int32_t b = static_cast<int32_t>((static_cast<double>(blue) * buckets) / fn);
        if (b >= buckets) b = buckets - 1;
        ltr[b] += 1.0;
        lex[b] += p;
        lv[b] += p * (1.0 - p);
        if (st.discarded > d0) lh[b] += 1.0;
      }
      std::lock_guard<std::mutex> lock(mu);
      for (int32_t b = 0; b < buckets; ++b) {
        trials[b] += ltr[b];
        hits[b] += lh[b];
        expect[b] += lex[b];
        var[b] += lv[b];
      }
    });
    for (int32_t b = 0; b < buckets; ++b) {
      if (var[b] < 25.0) continue; // not enough mass for a 4 sigma band
      double dev = std::fabs(hits[b] - expect[b]);
      if (dev > 4.0 * std::sqrt(var[b]))
        c.fail("flux increment rate outside 4 sigma in bucket " + std::to_string(b));
    }
  }
  if (c.ok) c.detail = measured;
  return c;
}

} // namespace

AcceptanceReport run_acceptance(bool quick, std::ostream& log) {
  AcceptanceReport report;
  struct Entry {
    int id;
    const char* label;
    Check (*fn)(bool);
  };
  const Entry entries[] = {
      {1, "oracle equality (forest and parking counts)", &criterion_oracles},
      {2, "closed forms and series identities", &criterion_closed_forms},
      {3, "complete parking vs acyclicity, root occupation", &criterion_acyclicity},
      {4, "coupling determinism at every step", &criterion_coupling},
      {5, "exact uniformity of constructed objects", &criterion_uniformity},
      {6, "free forest property by full enumeration", &criterion_free_forest},
      {7, "abelian invariance of the parking outcome", &criterion_abelian},
      {8, "local limit and the stable density", &criterion_local_limit},
      {9, "walk-forest bridge identity", &criterion_bridge},
      {10, "height and distance expectations", &criterion_expectations},
      {11, "critical-window scaling exponents", &criterion_scaling},
      {12, "freezer jump kernel and flux rate", &criterion_kernel},
  };
  for (const Entry& e : entries) {
    auto t0 = Clock::now();
    Check c = e.fn(quick);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    CriterionOutcome out;
    out.id = e.id;
    out.label = e.label;
    out.pass = c.ok;
    out.measured = c.detail;
    out.seconds = secs;
    report.criteria.push_back(out);
    log << (c.ok ? "[PASS] " : "[FAIL] ") << "criterion " << e.id << ": " << e.label << " — "
        << c.detail << " (" << format_double(secs) << "s)\n"
        << std::flush;
  }
  report.notes.push_back(
      "note: the literal n^{n-m} prefactor sometimes quoted for root-free parking counts "
      "evaluates to n times the enumerated value at (n,m) = (2,1) and (3,2); the library uses "
      "the n^{n-m-1} normalization, which matches brute force everywhere.");
  report.notes.push_back(
      "note: the exact mean-total-distance sum (verified against brute force for N <= 5) grows "
      "like Gamma(1/4)/(2^{7/4} sqrt(pi)) N^{5/4}; its ratio to the commonly quoted 2^{5/4} "
      "normalization converges to 2^{-1/2} ~ 0.7071, not 1.");
  for (const auto& note : report.notes) log << note << "\n";
  return report;
}

} // namespace parkfrozen
